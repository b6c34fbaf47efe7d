#include "tdc/deligne.hpp"

namespace tdc {

std::string DeligneDescriptor::to_string() const {
    std::string out;
    if (!topological.is_trivial()) out = topological.to_string();
    if (forms) out += (out.empty() ? "" : " (+) ") + forms->label();
    return out.empty() ? "0" : out;
}

DeligneDescriptor deligne_group(const CochainComplex& cx, std::size_t n) {
    DeligneDescriptor d;
    d.degree = n;
    d.topological = cx.integral_cohomology(n);
    if (n == 0) {
        d.provenance = "degree 0: global sections of the twisted local system";
        if (!cx.twist().is_trivial())
            d.provenance +=
                "; a nontrivial twist admits no nonzero flat section, so "
                "the group vanishes and the untwisted identification with "
                "Z does not apply";
    } else {
        d.forms = FormsSummand{n - 1};
        d.provenance =
            "split normal form along the diagonal sequence "
            "H^" + std::to_string(n - 1) + "(Z) -> Forms(" +
            std::to_string(n - 1) + ") -> group -> H^" + std::to_string(n) +
            "(Z) -> 0; the forms token absorbs the period-lattice quotient";
    }
    return d;
}

DeligneDescriptor deligne_group(const DeltaSet& k, const TwistCocycle& eta,
                                std::size_t n) {
    return deligne_group(CochainComplex(k, eta, CoefficientRing::z()), n);
}

SheafCohomologyValue deligne_sheaf_cohomology(const CochainComplex& cx,
                                              std::size_t n, long long k) {
    if (k == 0)
        throw ZeroDegreeRequest(
            "degree-0 sheaf cohomology is the twisted differential group "
            "itself; use deligne_group");
    const long long total = static_cast<long long>(n) + k;
    if (k > 0) {
        if (total < 0 || total > static_cast<long long>(cx.top_degree()))
            return FgAbGroup::trivial();
        return cx.integral_cohomology(static_cast<std::size_t>(total));
    }
    const long long rz_degree = total - 1;
    if (rz_degree < 0) return DivisibleDescriptor{};
    return rz_cohomology(cx, static_cast<std::size_t>(rz_degree));
}

SheafCohomologyValue deligne_sheaf_cohomology(const DeltaSet& k,
                                              const TwistCocycle& eta,
                                              std::size_t n, long long degree) {
    return deligne_sheaf_cohomology(
        CochainComplex(k, eta, CoefficientRing::z()), n, degree);
}

DiamondReport diamond(const CochainComplex& cx, std::size_t n) {
    if (n < 1) throw std::invalid_argument("diamond: degree must be >= 1");
    DiamondReport r;
    r.degree = n;
    r.de_rham_below = cx.rational_dimension(n - 1);
    r.de_rham_at = cx.rational_dimension(n);
    r.rz_below = rz_cohomology(cx, n - 1);
    r.integral_at = cx.integral_cohomology(n);
    r.deligne_at = deligne_group(cx, n);
    r.connecting = bockstein(cx, n - 1);

    // The forgetful map is the projection onto the topological part; its
    // rationalization has rank the free rank.
    r.rank_curvature = r.integral_at.free_rank;
    r.topological_matches = r.deligne_at.topological == r.integral_at;

    // Bottom row of the diamond at the finitely generated level:
    // rz_below -> integral_at -> rational model; image of the connecting
    // map must be the kernel of rationalization, i.e. the torsion.
    GroupHom rationalize = free_quotient_hom(r.integral_at);
    r.bockstein_row_exact = exactness_check(r.connecting, rationalize);

    r.rank_matches = r.integral_at.free_rank == r.de_rham_at;
    r.torus_rank_matches = r.rz_below.torus_rank == r.de_rham_below;
    return r;
}

DiamondReport diamond(const DeltaSet& k, const TwistCocycle& eta,
                      std::size_t n) {
    return diamond(CochainComplex(k, eta, CoefficientRing::z()), n);
}

}  // namespace tdc
