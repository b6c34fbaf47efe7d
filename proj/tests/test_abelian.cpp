#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tdc/abelian.hpp"
#include "tdc/fp_linalg.hpp"

using namespace tdc;

namespace {

IntMatrix mat(const std::vector<std::vector<long long>>& rows) {
    std::vector<std::vector<Int>> conv;
    for (const auto& r : rows) conv.emplace_back(r.begin(), r.end());
    return IntMatrix::from_rows(conv);
}

IntMatrix random_matrix(std::mt19937& rng, std::size_t max_dim, int span) {
    std::uniform_int_distribution<std::size_t> dim(0, max_dim);
    std::uniform_int_distribution<int> entry(-span, span);
    IntMatrix m(dim(rng), dim(rng));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = entry(rng);
    return m;
}

void check_snf_contract(const IntMatrix& a) {
    SmithDecomposition snf = smith_normal_form(a);
    REQUIRE(snf.u * snf.s * snf.v == a);
    REQUIRE(snf.u * snf.u_inv == IntMatrix::identity(a.rows()));
    REQUIRE(snf.v * snf.v_inv == IntMatrix::identity(a.cols()));
    Int det_u = determinant(snf.u);
    Int det_v = determinant(snf.v);
    REQUIRE((det_u == 1 || det_u == -1));
    REQUIRE((det_v == 1 || det_v == -1));
    REQUIRE(det_u == snf.det_u);
    REQUIRE(det_v == snf.det_v);
    auto d = snf.diagonal();
    bool seen_zero = false;
    for (std::size_t i = 0; i < d.size(); ++i) {
        REQUIRE(d[i] >= 0);
        if (d[i] == 0) seen_zero = true;
        else REQUIRE(!seen_zero);  // zeros come last
        if (i + 1 < d.size() && d[i + 1] != 0) {
            REQUIRE(d[i] != 0);
            REQUIRE(d[i + 1] % d[i] == 0);
        }
    }
}

// Random small complex pair d_out * d_in = 0 built through the kernel.
std::pair<IntMatrix, IntMatrix> random_complex_pair(std::mt19937& rng) {
    std::uniform_int_distribution<std::size_t> dim(0, 6);
    std::uniform_int_distribution<int> entry(-3, 3);
    IntMatrix d_out(dim(rng), dim(rng));
    for (std::size_t i = 0; i < d_out.rows(); ++i)
        for (std::size_t j = 0; j < d_out.cols(); ++j) d_out(i, j) = entry(rng);
    IntMatrix k = kernel_basis(d_out);
    IntMatrix coeffs(k.cols(), dim(rng));
    for (std::size_t i = 0; i < coeffs.rows(); ++i)
        for (std::size_t j = 0; j < coeffs.cols(); ++j) coeffs(i, j) = entry(rng);
    return {d_out, k * coeffs};
}

}  // namespace

TEST_CASE("smith normal form: identity") {
    auto snf = smith_normal_form(IntMatrix::identity(2));
    REQUIRE(snf.s == IntMatrix::identity(2));
}

TEST_CASE("smith normal form: single zero") {
    auto snf = smith_normal_form(mat({{0}}));
    REQUIRE(snf.s == mat({{0}}));
}

TEST_CASE("smith normal form: 2x2 with torsion") {
    IntMatrix a = mat({{2, 4}, {6, 8}});
    auto snf = smith_normal_form(a);
    // d1 = gcd of entries = 2, d1*d2 = |det| = 8
    REQUIRE(snf.s == mat({{2, 0}, {0, 4}}));
    REQUIRE(snf.u * snf.s * snf.v == a);
}

TEST_CASE("smith normal form: empty shapes") {
    check_snf_contract(IntMatrix::zero(0, 0));
    check_snf_contract(IntMatrix::zero(0, 3));
    check_snf_contract(IntMatrix::zero(3, 0));
}

TEST_CASE("smith normal form: contract on random small matrices") {
    std::mt19937 rng(20240811);
    for (int trial = 0; trial < 300; ++trial)
        check_snf_contract(random_matrix(rng, 6, 9));
}

TEST_CASE("cohomology_at: free module, no relations") {
    FgAbGroup g = cohomology_at(IntMatrix::zero(0, 3), IntMatrix::zero(3, 0));
    REQUIRE(g == FgAbGroup::free_of_rank(3));
    REQUIRE(g.to_string() == "Z^3");
}

TEST_CASE("cohomology_at: single torsion relation") {
    FgAbGroup g = cohomology_at(IntMatrix::zero(0, 1), mat({{2}}));
    REQUIRE(g == FgAbGroup::cyclic(2));
    REQUIRE(g.to_string() == "Z/2");
}

TEST_CASE("cohomology_at: twisted circle nerve degree 1") {
    // Three patches, twist (-1,-1,-1); degree-0 twisted coboundary rows
    // (delta n)(e) = eta(e) n_{d0 e} - n_{d1 e}.
    IntMatrix d0 = mat({{-1, -1, 0}, {0, -1, -1}, {-1, 0, -1}});
    FgAbGroup h1 = cohomology_at(IntMatrix::zero(0, 3), d0);
    REQUIRE(h1 == FgAbGroup::cyclic(2));
    FgAbGroup h0 = cohomology_at(d0, IntMatrix::zero(3, 0));
    REQUIRE(h0.is_trivial());
}

TEST_CASE("cohomology_at: rejects non-complexes") {
    REQUIRE_THROWS_AS(cohomology_at(mat({{1}}), mat({{1}})),
                      CompositionNotZero);
}

TEST_CASE("cohomology basis pairing") {
    // class_map applied to a representative returns that generator.
    std::mt19937 rng(7);
    for (int trial = 0; trial < 60; ++trial) {
        auto [d_out, d_in] = random_complex_pair(rng);
        CohomologyBasis basis = cohomology_basis(d_out, d_in);
        for (std::size_t j = 0; j < basis.group.gen_count(); ++j) {
            auto coords = basis.reduce(basis.representatives.column(j));
            for (std::size_t i = 0; i < coords.size(); ++i)
                REQUIRE(coords[i] == (i == j ? 1 : 0));
        }
    }
}

TEST_CASE("cohomology_at is isomorphism invariant") {
    std::mt19937 rng(20240812);
    std::uniform_int_distribution<int> coeff(-2, 2);
    for (int trial = 0; trial < 80; ++trial) {
        auto [d_out, d_in] = random_complex_pair(rng);
        FgAbGroup before = cohomology_at(d_out, d_in);
        // Random unimodular change of basis of the middle module, applied
        // consistently to both matrices: d_out' = d_out E, d_in' = E^-1 d_in.
        IntMatrix a = d_out, b = d_in;
        std::size_t n = a.cols();
        if (n >= 2) {
            std::uniform_int_distribution<std::size_t> pick(0, n - 1);
            for (int step = 0; step < 6; ++step) {
                std::size_t i = pick(rng), j = pick(rng);
                if (i == j) continue;
                Int q = coeff(rng);
                // col_j(a) += q * col_i(a); row_i(b) -= q * row_j(b)
                for (std::size_t r = 0; r < a.rows(); ++r)
                    a(r, j) += q * a(r, i);
                for (std::size_t c = 0; c < b.cols(); ++c)
                    b(i, c) -= q * b(j, c);
            }
        }
        REQUIRE(cohomology_at(a, b) == before);
    }
}

TEST_CASE("universal coefficient bookkeeping on random complexes") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        auto [d_out, d_in] = random_complex_pair(rng);
        FgAbGroup h = cohomology_at(d_out, d_in);
        FgAbGroup next = cohomology_at(
            IntMatrix::zero(0, d_out.rows()), d_out);  // coker(d_out)
        for (long long p : {2, 3, 5}) {
            if (h.torsion_order() % p != 0) continue;
            std::size_t dim_p =
                (d_out.cols() - fp_rank(FpMatrix::from_int(d_out, p))) -
                fp_rank(FpMatrix::from_int(d_in, p));
            std::size_t t_here = 0, t_next = 0;
            for (const Int& d : h.invariant_factors)
                if (d % p == 0) ++t_here;
            for (const Int& d : next.invariant_factors)
                if (d % p == 0) ++t_next;
            REQUIRE(dim_p == h.free_rank + t_here + t_next);
        }
    }
}

TEST_CASE("induced map: identity cochain map") {
    IntMatrix d0 = mat({{-1, -1, 0}, {0, -1, -1}, {-1, 0, -1}});
    MatrixComplex c({3, 3}, {d0});
    std::vector<IntMatrix> f = {IntMatrix::identity(3), IntMatrix::identity(3)};
    for (std::size_t k = 0; k <= 1; ++k) {
        GroupHom h = induced_map(f, c, c, k);
        REQUIRE(h.matrix == IntMatrix::identity(h.source.gen_count()));
    }
}

TEST_CASE("induced map: arc inclusion into the circle, degree 0") {
    // Untwisted circle nerve on three patches.
    IntMatrix circle_d0 = mat({{-1, 1, 0}, {0, -1, 1}, {1, 0, -1}});
    MatrixComplex circle({3, 3}, {circle_d0});
    // One arc: two patches and the overlap between them.
    IntMatrix arc_d0 = mat({{-1, 1}});
    MatrixComplex arc({2, 1}, {arc_d0});
    // Cochain restriction along the inclusion of the arc.
    std::vector<IntMatrix> f = {mat({{1, 0, 0}, {0, 1, 0}}), mat({{1, 0, 0}})};
    GroupHom h = induced_map(f, circle, arc, 0);
    REQUIRE(h.source == FgAbGroup::free_of_rank(1));
    REQUIRE(h.target == FgAbGroup::free_of_rank(1));
    REQUIRE(h.matrix == IntMatrix::identity(1));
}

TEST_CASE("induced map: rejects non chain maps") {
    IntMatrix circle_d0 = mat({{-1, 1, 0}, {0, -1, 1}, {1, 0, -1}});
    MatrixComplex circle({3, 3}, {circle_d0});
    std::vector<IntMatrix> bad = {IntMatrix::identity(3), mat({{1, 0, 0},
                                                               {0, 0, 1},
                                                               {0, 1, 0}})};
    REQUIRE_THROWS_AS(induced_map(bad, circle, circle, 0), NotAChainMap);
}

TEST_CASE("rationalization kills torsion: Z/2 -> 0") {
    // Free quotient of H^1 of the twisted circle: the finitely generated
    // shadow of the coefficient map into the rational model.
    IntMatrix d0 = mat({{-1, -1, 0}, {0, -1, -1}, {-1, 0, -1}});
    MatrixComplex c({3, 3}, {d0});
    GroupHom j = free_quotient_hom(c.cohomology(1));
    REQUIRE(j.source == FgAbGroup::cyclic(2));
    REQUIRE(j.target.is_trivial());
    REQUIRE(is_zero_hom(j));
}

TEST_CASE("exactness_check: surjective then zero") {
    GroupHom f = GroupHom::identity(FgAbGroup::free_of_rank(1));
    GroupHom g = GroupHom::zero(FgAbGroup::free_of_rank(1),
                                FgAbGroup::free_of_rank(1));
    REQUIRE(exactness_check(f, g));
}

TEST_CASE("exactness_check: 0 -> Z ->x2 Z -> Z/2 -> 0") {
    FgAbGroup z = FgAbGroup::free_of_rank(1);
    FgAbGroup z2 = FgAbGroup::cyclic(2);
    GroupHom times2(z, z, mat({{2}}));
    GroupHom quot(z, z2, mat({{1}}));
    REQUIRE(exactness_check(times2, quot));

    GroupHom times4(z, z, mat({{4}}));
    REQUIRE_FALSE(exactness_check(times4, quot));
}

TEST_CASE("exactness_check: rejects nonzero composition") {
    FgAbGroup z = FgAbGroup::free_of_rank(1);
    GroupHom id = GroupHom::identity(z);
    REQUIRE_THROWS_AS(exactness_check(id, id), CompositionNotZero);
}

TEST_CASE("subgroup machinery") {
    FgAbGroup g{1, {Int(4)}};  // Z/4 (+) Z (torsion generator first)
    REQUIRE(subgroup_type(g, torsion_subgroup_gens(g)) == FgAbGroup::cyclic(4));
    IntMatrix two_torsion = mat({{2}, {0}});
    REQUIRE(subgroup_type(g, two_torsion) == FgAbGroup::cyclic(2));
    REQUIRE_FALSE(subgroups_equal(g, torsion_subgroup_gens(g), two_torsion));
    REQUIRE(subgroups_equal(g, torsion_subgroup_gens(g),
                            mat({{3}, {0}})));  // 3 generates Z/4 too
}

TEST_CASE("integer solve and kernels") {
    IntMatrix a = mat({{2, 4}, {6, 8}});
    auto snf = smith_normal_form(a);
    auto sol = solve_integer(snf, {Int(6), Int(14)});
    REQUIRE(sol.has_value());
    auto back = a.apply(*sol);
    REQUIRE(back[0] == 6);
    REQUIRE(back[1] == 14);
    REQUIRE_FALSE(solve_integer(snf, {Int(1), Int(0)}).has_value());

    IntMatrix k = kernel_basis(mat({{1, 2, 3}}));
    REQUIRE(k.cols() == 2);
    REQUIRE((mat({{1, 2, 3}}) * k).is_zero());
}

TEST_CASE("rank over Q by fraction-free elimination") {
    REQUIRE(rank_over_q(mat({{2, 4}, {6, 8}})) == 2);
    REQUIRE(rank_over_q(mat({{1, 2}, {2, 4}})) == 1);
    REQUIRE(rank_over_q(IntMatrix::zero(3, 2)) == 0);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 120; ++trial) {
        IntMatrix a = random_matrix(rng, 6, 4);
        REQUIRE(rank_over_q(a) == smith_normal_form(a).rank());
    }
}

TEST_CASE("fp linear algebra basics") {
    REQUIRE(is_prime(2));
    REQUIRE(is_prime(5));
    REQUIRE_FALSE(is_prime(6));
    FpMatrix a = FpMatrix::from_int(mat({{2, 4}, {6, 8}}), 5);
    REQUIRE(fp_rank(a) == 2);
    REQUIRE(fp_rank(FpMatrix::from_int(mat({{2, 4}, {6, 8}}), 2)) == 0);
    REQUIRE(fp_rank(FpMatrix::from_int(mat({{2, 4}, {6, 9}}), 2)) == 1);

    FpMatrix k = fp_kernel_basis(FpMatrix::from_int(mat({{1, 1, 1}}), 3));
    REQUIRE(k.cols() == 2);
    auto sol = fp_solve(FpMatrix::from_int(mat({{1, 1}, {0, 1}}), 5), {3, 4});
    REQUIRE(sol.has_value());
    REQUIRE((*sol)[0] == 4);
    REQUIRE((*sol)[1] == 4);
}

TEST_CASE("fp cohomology of the mod-2 circle complex") {
    FpMatrix d0 = FpMatrix::from_int(mat({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}}), 2);
    FpCohomology h1(FpMatrix(2, 0, 3), d0);
    REQUIRE(h1.dimension() == 1);
    FpCohomology h0(d0, FpMatrix(2, 3, 0));
    REQUIRE(h0.dimension() == 1);
    // representative pairing
    auto coords = h1.reduce(h1.representatives().apply({1}));
    REQUIRE(coords == std::vector<long long>{1});
}
