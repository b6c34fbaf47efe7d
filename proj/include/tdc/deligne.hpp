#ifndef TDC_DELIGNE_HPP
#define TDC_DELIGNE_HPP

#include <optional>
#include <variant>

#include "tdc/twisted_cochain.hpp"

/**
 * Normal forms for twisted differential cohomology groups assembled from
 * the computable skeleton: a finitely generated topological part plus a
 * symbolic forms summand.  The forms summand is a token; it never
 * carries numeric content.
 */
namespace tdc {

/** Degree-0 requests belong to deligne_group, not the sheaf branches. */
class ZeroDegreeRequest : public std::invalid_argument {
  public:
    explicit ZeroDegreeRequest(const std::string& what)
        : std::invalid_argument(what) {}
};

/**
 * Token for the twisted-forms quotient in degree k (forms modulo the
 * image of the flat connection and the period lattice).
 */
struct FormsSummand {
    std::size_t degree = 0;

    std::string label() const {
        return "Forms(" + std::to_string(degree) + ")";
    }
    bool operator==(const FormsSummand& other) const = default;
};

/**
 * Split normal form of a degree-n twisted differential cohomology group:
 * topological part isomorphic to H^n of the twisted local system, plus a
 * forms token of degree n-1 (absent at n = 0).  Equality compares
 * degree, topological part, and forms presence; the provenance note is
 * bookkeeping only.
 */
struct DeligneDescriptor {
    std::size_t degree = 0;
    FgAbGroup topological;
    std::optional<FormsSummand> forms;
    std::string provenance;

    bool operator==(const DeligneDescriptor& other) const {
        return degree == other.degree && topological == other.topological &&
               forms == other.forms;
    }
    std::string to_string() const;
};

DeligneDescriptor deligne_group(const CochainComplex& cx, std::size_t n);
DeligneDescriptor deligne_group(const DeltaSet& k, const TwistCocycle& eta,
                                std::size_t n);

using SheafCohomologyValue = std::variant<FgAbGroup, DivisibleDescriptor>;

/**
 * Sheaf cohomology of the degree-n twisted differential complex away
 * from degree zero: H^(n+k) of the local system for k > 0, the
 * divisible-model group in total degree n+k-1 for k < 0.  Degrees
 * outside the complex answer zero; k = 0 throws ZeroDegreeRequest.
 */
SheafCohomologyValue deligne_sheaf_cohomology(const CochainComplex& cx,
                                              std::size_t n, long long k);
SheafCohomologyValue deligne_sheaf_cohomology(const DeltaSet& k,
                                              const TwistCocycle& eta,
                                              std::size_t n, long long degree);

/**
 * The computable corners of the degree-n diamond, the maps between them
 * at the finitely generated level, and the exactness flags.
 */
struct DiamondReport {
    std::size_t degree = 0;
    std::size_t de_rham_below = 0;  // dim over Q one degree down
    std::size_t de_rham_at = 0;     // dim over Q at the degree
    DivisibleDescriptor rz_below;   // divisible-model group one degree down
    FgAbGroup integral_at;          // twisted integral group at the degree
    DeligneDescriptor deligne_at;
    GroupHom connecting;            // torsion of rz_below into integral_at
    std::size_t rank_curvature = 0; // rank of the rationalized forgetful map

    bool topological_matches = false;  // forgetful map is the identity
    bool bockstein_row_exact = false;  // im(connecting) = ker(rationalize)
    bool rank_matches = false;         // rank integral = de Rham dimension
    bool torus_rank_matches = false;   // torus rank below = de Rham below

    bool passed() const {
        return topological_matches && bockstein_row_exact && rank_matches &&
               torus_rank_matches;
    }
};

DiamondReport diamond(const CochainComplex& cx, std::size_t n);
DiamondReport diamond(const DeltaSet& k, const TwistCocycle& eta,
                      std::size_t n);

}  // namespace tdc

#endif
