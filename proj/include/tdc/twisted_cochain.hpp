#ifndef TDC_TWISTED_COCHAIN_HPP
#define TDC_TWISTED_COCHAIN_HPP

#include <memory>
#include <variant>

#include "tdc/abelian.hpp"
#include "tdc/nerve.hpp"

/**
 * The eta-twisted cochain complex of a Delta-set and its cohomology over
 * the supported coefficient models: the twisted integer local system,
 * its rational companion, prime fields, and the divisible quotient
 * (the R/Z-model).
 */
namespace tdc {

/** Construction guard: the assembled differentials failed d*d = 0. */
class InternalDeltaSquaredNonzero : public std::logic_error {
  public:
    explicit InternalDeltaSquaredNonzero(const std::string& what)
        : std::logic_error(what) {}
};

/** The twist fails validation for the complex it is used on. */
class TwistInvalid : public std::runtime_error {
  public:
    explicit TwistInvalid(const std::string& what)
        : std::runtime_error(what) {}
};

/** A class asked to be lifted through the divisible quotient is not torsion. */
class LiftFailure : public std::runtime_error {
  public:
    explicit LiftFailure(const std::string& what)
        : std::runtime_error(what) {}
};

/**
 * Coefficient ring selector.  Z and Q are the twisted integer local
 * system and its rational model; Fp is a prime field; RZ is the
 * divisible quotient of the rational model by the integral one.
 */
struct CoefficientRing {
    enum class Kind { z, q, fp, rz };
    Kind kind = Kind::z;
    long long p = 0;

    static CoefficientRing z() { return {Kind::z, 0}; }
    static CoefficientRing q() { return {Kind::q, 0}; }
    static CoefficientRing fp(long long p);
    static CoefficientRing rz() { return {Kind::rz, 0}; }

    bool operator==(const CoefficientRing& other) const = default;
    std::string to_string() const;
};

struct CoefficientSystem {
    CoefficientRing ring;
    TwistCocycle twist;
};

/**
 * Normal form of a group of the shape (R/Z)^torus_rank + finite torsion.
 * The divisible circle factors are counted symbolically; the torsion
 * part is exact.
 */
struct DivisibleDescriptor {
    std::size_t torus_rank = 0;
    FgAbGroup torsion;  // free rank always 0

    bool is_zero() const { return torus_rank == 0 && torsion.is_trivial(); }
    bool operator==(const DivisibleDescriptor& other) const = default;
    std::string to_string() const;
};

/**
 * The twisted cochain complex of (K, eta).  The differential of a
 * k-cochain a on a (k+1)-cell s is
 *
 *   (delta a)(s) = eta(e01(s)) * a(d_0 s) + sum_{i=1..k+1} (-1)^i a(d_i s)
 *
 * where e01(s) = d_2 d_3 ... d_(k+1) s is the leading 1-cell.  The same
 * integer matrices serve every coefficient ring; the ring tag fixes the
 * arithmetic used on top of them.  Instances share an immutable core and
 * are cheap to copy and thread-safe.
 */
class CochainComplex {
  public:
    CochainComplex() = default;
    CochainComplex(const DeltaSet& k, const TwistCocycle& eta,
                   CoefficientRing ring);

    const DeltaSet& domain() const;
    const TwistCocycle& twist() const;
    const CoefficientRing& ring() const { return ring_; }
    std::size_t top_degree() const;
    std::size_t dim(std::size_t k) const;

    /** delta_k as an integer matrix (zero-row matrix at the top degree). */
    IntMatrix differential(std::size_t k) const;
    /** The underlying integer complex with its recorded generator bases. */
    const MatrixComplex& matrices() const;

    FgAbGroup integral_cohomology(std::size_t k) const;
    /** dim over Q, computed by fraction-free rank, independent of SNF. */
    std::size_t rational_dimension(std::size_t k) const;
    std::size_t fp_dimension(long long p, std::size_t k) const;
    const CohomologyBasis& basis(std::size_t k) const;

  private:
    struct Core;
    std::shared_ptr<const Core> core_;
    CoefficientRing ring_;
};

/** Build the twisted complex; TwistInvalid if the cocycle law fails. */
CochainComplex coboundary_matrices(const DeltaSet& k, const TwistCocycle& eta,
                                   CoefficientRing ring);

/**
 * Plain simplicial coboundaries (no twist transport), built by an
 * independent code path; the reference for trivial-twist reduction.
 */
std::vector<IntMatrix> untwisted_coboundaries(const DeltaSet& k);

using CohomologyValue = std::variant<FgAbGroup, std::size_t, DivisibleDescriptor>;

FgAbGroup twisted_cohomology_z(const CochainComplex& cx, std::size_t k);
FgAbGroup twisted_cohomology_z(const DeltaSet& k, const TwistCocycle& eta,
                               std::size_t degree);

/** Dispatch on the ring; Z yields FgAbGroup, Q/Fp a dimension, RZ a descriptor. */
CohomologyValue twisted_cohomology(const DeltaSet& k, const TwistCocycle& eta,
                                   CoefficientRing ring, std::size_t degree);
CohomologyValue twisted_cohomology(const CochainComplex& cx, std::size_t degree);

/**
 * H^k of the divisible quotient model: torus rank from the rational
 * dimension at k, torsion from the integral group one degree up.
 */
DivisibleDescriptor rz_cohomology(const CochainComplex& cx, std::size_t k);
DivisibleDescriptor rz_cohomology(const DeltaSet& k, const TwistCocycle& eta,
                                  std::size_t degree);

/**
 * Connecting homomorphism of 0 -> Z -> L -> L/Z -> 0 from the torsion
 * part of H^k(L/Z) to H^(k+1)(Z): lift a torsion class to a cochain with
 * denominator its order, apply the twisted differential, read off the
 * integral cocycle.  Its image is the torsion subgroup of H^(k+1).
 */
GroupHom bockstein(const CochainComplex& cx, std::size_t k);
GroupHom bockstein(const DeltaSet& k, const TwistCocycle& eta,
                   std::size_t degree);

/**
 * Solve delta w = order * z over the integers: the numerator of the
 * rational lift of a claimed-torsion class.  Throws LiftFailure when the
 * class is not torsion of the claimed order.
 */
std::vector<Int> bockstein_lift(const CochainComplex& cx, std::size_t k,
                                const std::vector<Int>& cocycle,
                                const Int& order);

}  // namespace tdc

#endif
