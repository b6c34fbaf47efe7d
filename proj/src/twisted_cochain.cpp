#include "tdc/twisted_cochain.hpp"

#include <map>
#include <mutex>

#include "tdc/fp_linalg.hpp"

namespace tdc {

CoefficientRing CoefficientRing::fp(long long p) {
    if (!is_prime(p))
        throw std::invalid_argument("CoefficientRing: modulus " +
                                    std::to_string(p) + " is not prime");
    return {Kind::fp, p};
}

std::string CoefficientRing::to_string() const {
    switch (kind) {
        case Kind::z: return "z";
        case Kind::q: return "q";
        case Kind::fp: return "fp:" + std::to_string(p);
        case Kind::rz: return "rz";
    }
    return "?";
}

std::string DivisibleDescriptor::to_string() const {
    std::string out;
    if (!torsion.is_trivial()) out = torsion.to_string();
    if (torus_rank == 1) out += (out.empty() ? "" : " (+) ") + std::string("R/Z");
    else if (torus_rank > 1)
        out += (out.empty() ? "" : " (+) ") + std::string("(R/Z)^") +
               std::to_string(torus_rank);
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// Complex construction

struct CochainComplex::Core {
    DeltaSet domain;
    TwistCocycle twist;
    MatrixComplex mats;
    mutable std::mutex dim_mutex;
    mutable std::vector<std::optional<std::size_t>> q_dims;
    mutable std::map<long long, std::vector<std::optional<std::size_t>>> fp_dims;

    Core(DeltaSet d, TwistCocycle t, MatrixComplex m)
        : domain(std::move(d)), twist(std::move(t)), mats(std::move(m)) {}
};

namespace {

// Rows of delta_k indexed by (k+1)-cells; the d_0 face is transported
// along the leading 1-cell, the rest enter with alternating signs.
IntMatrix twisted_delta(const DeltaSet& k, const TwistCocycle& eta,
                        std::size_t degree) {
    IntMatrix m(k.cell_count(degree + 1), k.cell_count(degree));
    for (CellIndex c = 0; c < k.cell_count(degree + 1); ++c) {
        m(c, k.face(degree + 1, c, 0)) += eta.sign(k.long_edge(degree + 1, c));
        int sign = 1;
        for (std::size_t i = 1; i <= degree + 1; ++i) {
            sign = -sign;
            m(c, k.face(degree + 1, c, i)) += sign;
        }
    }
    return m;
}

std::vector<std::size_t> cell_dims(const DeltaSet& k) {
    std::vector<std::size_t> dims;
    for (std::size_t deg = 0; deg <= k.dimension(); ++deg)
        dims.push_back(k.cell_count(deg));
    return dims;
}

}  // namespace

CochainComplex::CochainComplex(const DeltaSet& k, const TwistCocycle& eta,
                               CoefficientRing ring)
    : ring_(ring) {
    if (!validate_twist(k, eta))
        throw TwistInvalid("twist violates the cocycle law on " + k.name());
    std::vector<IntMatrix> diffs;
    for (std::size_t deg = 0; deg + 1 <= k.dimension(); ++deg)
        diffs.push_back(twisted_delta(k, eta, deg));
    for (std::size_t deg = 0; deg + 1 < diffs.size(); ++deg)
        if (!(diffs[deg + 1] * diffs[deg]).is_zero())
            throw InternalDeltaSquaredNonzero(
                "twisted coboundary build failed d*d = 0 at degree " +
                std::to_string(deg));
    auto core = std::make_shared<Core>(
        k, eta, MatrixComplex(cell_dims(k), std::move(diffs)));
    core->q_dims.resize(k.dimension() + 1);
    core_ = std::move(core);
}

const DeltaSet& CochainComplex::domain() const { return core_->domain; }
const TwistCocycle& CochainComplex::twist() const { return core_->twist; }
std::size_t CochainComplex::top_degree() const { return core_->domain.dimension(); }
std::size_t CochainComplex::dim(std::size_t k) const {
    return core_->domain.cell_count(k);
}
IntMatrix CochainComplex::differential(std::size_t k) const {
    return core_->mats.differential_out(k);
}
const MatrixComplex& CochainComplex::matrices() const { return core_->mats; }

FgAbGroup CochainComplex::integral_cohomology(std::size_t k) const {
    if (k > top_degree()) return FgAbGroup::trivial();
    return core_->mats.cohomology(k);
}

const CohomologyBasis& CochainComplex::basis(std::size_t k) const {
    return core_->mats.basis(k);
}

std::size_t CochainComplex::rational_dimension(std::size_t k) const {
    if (k > top_degree()) return 0;
    {
        std::lock_guard<std::mutex> lock(core_->dim_mutex);
        if (core_->q_dims[k]) return *core_->q_dims[k];
    }
    std::size_t rank_out = rank_over_q(core_->mats.differential_out(k));
    std::size_t rank_in = rank_over_q(core_->mats.differential_in(k));
    std::size_t value = dim(k) - rank_out - rank_in;
    std::lock_guard<std::mutex> lock(core_->dim_mutex);
    core_->q_dims[k] = value;
    return value;
}

std::size_t CochainComplex::fp_dimension(long long p, std::size_t k) const {
    if (!is_prime(p))
        throw std::invalid_argument("fp_dimension: modulus is not prime");
    if (k > top_degree()) return 0;
    {
        std::lock_guard<std::mutex> lock(core_->dim_mutex);
        auto& slot = core_->fp_dims[p];
        if (slot.empty()) slot.resize(top_degree() + 1);
        if (slot[k]) return *slot[k];
    }
    std::size_t rank_out =
        fp_rank(FpMatrix::from_int(core_->mats.differential_out(k), p));
    std::size_t rank_in =
        fp_rank(FpMatrix::from_int(core_->mats.differential_in(k), p));
    std::size_t value = dim(k) - rank_out - rank_in;
    std::lock_guard<std::mutex> lock(core_->dim_mutex);
    core_->fp_dims[p][k] = value;
    return value;
}

CochainComplex coboundary_matrices(const DeltaSet& k, const TwistCocycle& eta,
                                   CoefficientRing ring) {
    return CochainComplex(k, eta, ring);
}

std::vector<IntMatrix> untwisted_coboundaries(const DeltaSet& k) {
    std::vector<IntMatrix> out;
    for (std::size_t deg = 0; deg + 1 <= k.dimension(); ++deg) {
        IntMatrix m(k.cell_count(deg + 1), k.cell_count(deg));
        for (CellIndex c = 0; c < k.cell_count(deg + 1); ++c) {
            int sign = 1;
            for (std::size_t i = 0; i <= deg + 1; ++i) {
                m(c, k.face(deg + 1, c, i)) += sign;
                sign = -sign;
            }
        }
        out.push_back(std::move(m));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cohomology dispatch

FgAbGroup twisted_cohomology_z(const CochainComplex& cx, std::size_t k) {
    return cx.integral_cohomology(k);
}

FgAbGroup twisted_cohomology_z(const DeltaSet& k, const TwistCocycle& eta,
                               std::size_t degree) {
    return CochainComplex(k, eta, CoefficientRing::z())
        .integral_cohomology(degree);
}

CohomologyValue twisted_cohomology(const CochainComplex& cx,
                                   std::size_t degree) {
    switch (cx.ring().kind) {
        case CoefficientRing::Kind::z:
            return cx.integral_cohomology(degree);
        case CoefficientRing::Kind::q:
            return cx.rational_dimension(degree);
        case CoefficientRing::Kind::fp:
            return cx.fp_dimension(cx.ring().p, degree);
        case CoefficientRing::Kind::rz:
            return rz_cohomology(cx, degree);
    }
    throw std::logic_error("twisted_cohomology: unreachable");
}

CohomologyValue twisted_cohomology(const DeltaSet& k, const TwistCocycle& eta,
                                   CoefficientRing ring, std::size_t degree) {
    return twisted_cohomology(CochainComplex(k, eta, ring), degree);
}

DivisibleDescriptor rz_cohomology(const CochainComplex& cx, std::size_t k) {
    DivisibleDescriptor d;
    d.torus_rank = cx.rational_dimension(k);
    d.torsion = cx.integral_cohomology(k + 1).torsion_part();
    return d;
}

DivisibleDescriptor rz_cohomology(const DeltaSet& k, const TwistCocycle& eta,
                                  std::size_t degree) {
    return rz_cohomology(CochainComplex(k, eta, CoefficientRing::rz()), degree);
}

// ---------------------------------------------------------------------------
// Bockstein

std::vector<Int> bockstein_lift(const CochainComplex& cx, std::size_t k,
                                const std::vector<Int>& cocycle,
                                const Int& order) {
    if (order <= 0) throw std::invalid_argument("bockstein_lift: order <= 0");
    std::vector<Int> rhs(cocycle.size());
    for (std::size_t i = 0; i < cocycle.size(); ++i) rhs[i] = order * cocycle[i];
    auto sol = solve_integer(cx.matrices().snf_out(k), rhs);
    if (!sol)
        throw LiftFailure(
            "class is not torsion of order " + order.str() +
            ": no integral primitive for order * cocycle at degree " +
            std::to_string(k));
    return *sol;
}

GroupHom bockstein(const CochainComplex& cx, std::size_t k) {
    // Source: torsion part of H^k(L/Z), presented by the rational lifts
    // w/d of the torsion generators of H^(k+1)(Z).
    const CohomologyBasis& up = cx.basis(k + 1);
    FgAbGroup source = up.group.torsion_part();
    FgAbGroup target = up.group;
    IntMatrix m(target.gen_count(), source.gen_count());
    for (std::size_t j = 0; j < source.torsion_count(); ++j) {
        const Int& order = up.orders[j];
        std::vector<Int> z = up.representatives.column(j);
        // The lift w solves delta w = order * z; the connecting value is
        // delta(w/order) = z, read off in the recorded basis.
        std::vector<Int> w = bockstein_lift(cx, k, z, order);
        std::vector<Int> dw = cx.matrices().differential_out(k).apply(w);
        for (std::size_t i = 0; i < dw.size(); ++i) {
            if (dw[i] % order != 0)
                throw LiftFailure("bockstein: lift not divisible by order");
            dw[i] /= order;
        }
        m.set_column(j, up.reduce(dw));
    }
    return GroupHom(std::move(source), std::move(target), std::move(m));
}

GroupHom bockstein(const DeltaSet& k, const TwistCocycle& eta,
                   std::size_t degree) {
    return bockstein(CochainComplex(k, eta, CoefficientRing::z()), degree);
}

}  // namespace tdc
