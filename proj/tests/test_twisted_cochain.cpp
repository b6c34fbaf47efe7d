#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "tdc/twisted_cochain.hpp"

using namespace tdc;

namespace {

std::vector<FgAbGroup> z_groups(const DeltaSet& k, const TwistCocycle& eta) {
    CochainComplex cx(k, eta, CoefficientRing::z());
    std::vector<FgAbGroup> out;
    for (std::size_t deg = 0; deg <= k.dimension(); ++deg)
        out.push_back(cx.integral_cohomology(deg));
    return out;
}

std::vector<FgAbGroup> groups(const std::vector<std::string>& rendered) {
    std::vector<FgAbGroup> out;
    for (const std::string& s : rendered) {
        if (s == "0") out.push_back(FgAbGroup::trivial());
        else if (s == "Z") out.push_back(FgAbGroup::free_of_rank(1));
        else if (s == "Z/2") out.push_back(FgAbGroup::cyclic(2));
        else throw std::runtime_error("unknown group literal " + s);
    }
    return out;
}

TwistCocycle nontrivial_class(const DeltaSet& k) {
    return twist_classes_mod2(k)[1];
}

}  // namespace

TEST_CASE("coefficient rings") {
    REQUIRE(CoefficientRing::fp(5).to_string() == "fp:5");
    REQUIRE_THROWS_AS(CoefficientRing::fp(6), std::invalid_argument);
    REQUIRE(CoefficientRing::z().to_string() == "z");
}

TEST_CASE("trivial twist reproduces the plain simplicial coboundaries") {
    for (const DeltaSet& k : {circle_nerve(4), sphere2(), rp2(), rp3()}) {
        CochainComplex cx(k, TwistCocycle::trivial(k), CoefficientRing::z());
        std::vector<IntMatrix> plain = untwisted_coboundaries(k);
        for (std::size_t deg = 0; deg < plain.size(); ++deg)
            REQUIRE(cx.differential(deg) == plain[deg]);
    }
}

TEST_CASE("twisted degree-0 differential matches the transport convention") {
    // (delta n)(e) = eta(e) n_{d0 e} - n_{d1 e} on the three-patch circle.
    DeltaSet circle = circle_nerve(3);
    CochainComplex cx(circle, TwistCocycle({-1, -1, -1}), CoefficientRing::z());
    IntMatrix d0 = cx.differential(0);
    // Edge U0U1 has d0 = U1, d1 = U0: row (-1 at U1) - (+1 at U0).
    REQUIRE(d0(0, 1) == -1);
    REQUIRE(d0(0, 0) == -1);
    REQUIRE(d0(0, 2) == 0);
    REQUIRE(d0(1, 2) == -1);
    REQUIRE(d0(1, 1) == -1);
    REQUIRE(d0(2, 0) == -1);
    REQUIRE(d0(2, 2) == -1);
}

TEST_CASE("delta squared vanishes for every builder and twist class") {
    for (const DeltaSet& k :
         {point(), circle_nerve(3), annulus3(), sphere2(), rp2(), rp3()}) {
        for (const TwistCocycle& eta : twist_classes_mod2(k)) {
            CochainComplex cx(k, eta, CoefficientRing::z());
            for (std::size_t deg = 0; deg + 1 < k.dimension(); ++deg)
                REQUIRE((cx.differential(deg + 1) * cx.differential(deg))
                            .is_zero());
        }
    }
}

TEST_CASE("invalid twists are rejected at construction") {
    DeltaSet k = rp2();
    std::vector<int> vals(k.cell_count(1), 1);
    vals[0] = -1;
    REQUIRE_THROWS_AS(
        CochainComplex(k, TwistCocycle(std::move(vals)), CoefficientRing::z()),
        TwistInvalid);
}

TEST_CASE("untwisted cohomology of the builders matches the classics") {
    REQUIRE(z_groups(point(), TwistCocycle::trivial(point())) ==
            groups({"Z"}));
    REQUIRE(z_groups(annulus3(), TwistCocycle::trivial(annulus3())) ==
            groups({"Z", "Z"}));
    REQUIRE(z_groups(circle_nerve(6), TwistCocycle::trivial(circle_nerve(6))) ==
            groups({"Z", "Z"}));
    REQUIRE(z_groups(sphere2(), TwistCocycle::trivial(sphere2())) ==
            groups({"Z", "0", "Z"}));
    REQUIRE(z_groups(rp2(), TwistCocycle::trivial(rp2())) ==
            groups({"Z", "0", "Z/2"}));
    REQUIRE(z_groups(rp3(), TwistCocycle::trivial(rp3())) ==
            groups({"Z", "0", "Z/2", "Z"}));
}

TEST_CASE("twisted circle: H0 = 0, H1 = Z/2 over Z; both vanish over Q") {
    DeltaSet circle = circle_nerve(3);
    TwistCocycle mobius({-1, -1, -1});
    REQUIRE(z_groups(circle, mobius) == groups({"0", "Z/2"}));
    CochainComplex cq(circle, mobius, CoefficientRing::q());
    REQUIRE(cq.rational_dimension(0) == 0);
    REQUIRE(cq.rational_dimension(1) == 0);
}

TEST_CASE("twisted rp2: (0, Z/2, Z)") {
    DeltaSet k = rp2();
    REQUIRE(z_groups(k, nontrivial_class(k)) == groups({"0", "Z/2", "Z"}));
}

TEST_CASE("twisted rp3: (0, Z/2, 0, Z/2)") {
    DeltaSet k = rp3();
    REQUIRE(z_groups(k, nontrivial_class(k)) ==
            groups({"0", "Z/2", "0", "Z/2"}));
}

TEST_CASE("twisted sphere2 equals untwisted (only one class)") {
    DeltaSet k = sphere2();
    REQUIRE(z_groups(k, twist_classes_mod2(k)[0]) == groups({"Z", "0", "Z"}));
}

TEST_CASE("degrees beyond the dimension answer zero") {
    DeltaSet k = rp2();
    CochainComplex cx(k, TwistCocycle::trivial(k), CoefficientRing::z());
    REQUIRE(cx.integral_cohomology(3).is_trivial());
    REQUIRE(cx.rational_dimension(7) == 0);
    REQUIRE(cx.fp_dimension(2, 5) == 0);
}

TEST_CASE("rank over Z equals dimension over Q in every degree") {
    for (const DeltaSet& k : {circle_nerve(3), sphere2(), rp2(), rp3()}) {
        for (const TwistCocycle& eta : twist_classes_mod2(k)) {
            CochainComplex cx(k, eta, CoefficientRing::z());
            for (std::size_t deg = 0; deg <= k.dimension(); ++deg)
                REQUIRE(cx.integral_cohomology(deg).free_rank ==
                        cx.rational_dimension(deg));
        }
    }
}

TEST_CASE("Euler characteristic is twist independent") {
    for (const DeltaSet& k : {circle_nerve(5), sphere2(), rp2(), rp3()}) {
        long long cells = 0;
        for (std::size_t deg = 0; deg <= k.dimension(); ++deg)
            cells += (deg % 2 ? -1 : 1) *
                     static_cast<long long>(k.cell_count(deg));
        for (const TwistCocycle& eta : twist_classes_mod2(k)) {
            CochainComplex cx(k, eta, CoefficientRing::q());
            long long chi = 0;
            for (std::size_t deg = 0; deg <= k.dimension(); ++deg)
                chi += (deg % 2 ? -1 : 1) *
                       static_cast<long long>(cx.rational_dimension(deg));
            REQUIRE(chi == cells);
        }
    }
}

TEST_CASE("gauge invariance of twisted cohomology") {
    std::mt19937 rng(11);
    std::uniform_int_distribution<int> coin(0, 1);
    for (const DeltaSet& k : {circle_nerve(3), rp2()}) {
        for (const TwistCocycle& eta : twist_classes_mod2(k)) {
            for (int trial = 0; trial < 10; ++trial) {
                std::vector<int> s(k.cell_count(0));
                for (int& v : s) v = coin(rng) ? 1 : -1;
                TwistCocycle moved = gauge_transform(k, eta, s);
                REQUIRE(z_groups(k, moved) == z_groups(k, eta));
                CochainComplex a(k, eta, CoefficientRing::fp(3));
                CochainComplex b(k, moved, CoefficientRing::fp(3));
                for (std::size_t deg = 0; deg <= k.dimension(); ++deg)
                    REQUIRE(a.fp_dimension(3, deg) == b.fp_dimension(3, deg));
            }
        }
    }
}

TEST_CASE("fp dimensions of the twisted circle") {
    DeltaSet circle = circle_nerve(3);
    CochainComplex cx(circle, TwistCocycle({-1, -1, -1}),
                       CoefficientRing::fp(2));
    REQUIRE(cx.fp_dimension(2, 0) == 1);
    REQUIRE(cx.fp_dimension(2, 1) == 1);
    REQUIRE(cx.fp_dimension(3, 0) == 0);
    REQUIRE(cx.fp_dimension(3, 1) == 0);
}

TEST_CASE("rz model: point") {
    DivisibleDescriptor d =
        rz_cohomology(point(), TwistCocycle::trivial(point()), 0);
    REQUIRE(d.torus_rank == 1);
    REQUIRE(d.torsion.is_trivial());
    REQUIRE(d.to_string() == "R/Z");
}

TEST_CASE("rz model: twisted circle in degree 0") {
    DivisibleDescriptor d =
        rz_cohomology(circle_nerve(3), TwistCocycle({-1, -1, -1}), 0);
    REQUIRE(d.torus_rank == 0);
    REQUIRE(d.torsion == FgAbGroup::cyclic(2));
    REQUIRE(d.to_string() == "Z/2");
}

TEST_CASE("rz model: rp2 with w1 in degree 1") {
    DeltaSet k = rp2();
    DivisibleDescriptor d = rz_cohomology(k, nontrivial_class(k), 1);
    REQUIRE(d.torus_rank == 0);
    REQUIRE(d.torsion.is_trivial());  // Tor H^2 = Tor Z = 0
}

TEST_CASE("bockstein: trivial on the point") {
    GroupHom b = bockstein(point(), TwistCocycle::trivial(point()), 0);
    REQUIRE(b.source.is_trivial());
    REQUIRE(b.target.is_trivial());
}

TEST_CASE("bockstein: isomorphism Z/2 -> Z/2 on the twisted circle") {
    GroupHom b = bockstein(circle_nerve(3), TwistCocycle({-1, -1, -1}), 0);
    REQUIRE(b.source == FgAbGroup::cyclic(2));
    REQUIRE(b.target == FgAbGroup::cyclic(2));
    REQUIRE(b.matrix(0, 0) == 1);
    // image equals the torsion subgroup: here everything
    REQUIRE(exactness_check(b, free_quotient_hom(b.target)));
}

TEST_CASE("bockstein: rp2 with w1 at degree 1 has image Tor H^2 = 0") {
    DeltaSet k = rp2();
    GroupHom b = bockstein(k, nontrivial_class(k), 1);
    REQUIRE(b.source.is_trivial());
    REQUIRE(b.target == FgAbGroup::free_of_rank(1));
    // im(beta) = ker(j into the rational model) = torsion = 0
    REQUIRE(exactness_check(b, free_quotient_hom(b.target)));
}

TEST_CASE("bockstein image equals the torsion subgroup everywhere") {
    for (const DeltaSet& k : {circle_nerve(3), rp2(), rp3()}) {
        for (const TwistCocycle& eta : twist_classes_mod2(k)) {
            CochainComplex cx(k, eta, CoefficientRing::z());
            for (std::size_t deg = 0; deg <= k.dimension(); ++deg) {
                GroupHom b = bockstein(cx, deg);
                REQUIRE(exactness_check(b, free_quotient_hom(b.target)));
            }
        }
    }
}

TEST_CASE("lift failure on a non-torsion class") {
    // The generator of H^1 of the untwisted circle is not torsion; asking
    // for a primitive of 1 * generator must fail.
    DeltaSet circle = circle_nerve(3);
    CochainComplex cx(circle, TwistCocycle::trivial(circle),
                       CoefficientRing::z());
    std::vector<Int> gen = cx.basis(1).representatives.column(0);
    REQUIRE_THROWS_AS(bockstein_lift(cx, 0, gen, Int(1)), LiftFailure);
}

TEST_CASE("universal coefficients for the builders") {
    for (const DeltaSet& k : {circle_nerve(3), rp2(), rp3()}) {
        for (const TwistCocycle& eta : twist_classes_mod2(k)) {
            CochainComplex cx(k, eta, CoefficientRing::z());
            for (long long p : {2LL, 3LL, 5LL}) {
                for (std::size_t deg = 0; deg <= k.dimension(); ++deg) {
                    FgAbGroup here = cx.integral_cohomology(deg);
                    FgAbGroup up = cx.integral_cohomology(deg + 1);
                    std::size_t t_here = 0, t_up = 0;
                    for (const Int& d : here.invariant_factors)
                        if (d % p == 0) ++t_here;
                    for (const Int& d : up.invariant_factors)
                        if (d % p == 0) ++t_up;
                    REQUIRE(cx.fp_dimension(p, deg) ==
                            here.free_rank + t_here + t_up);
                }
            }
        }
    }
}
