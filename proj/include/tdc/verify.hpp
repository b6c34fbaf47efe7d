#ifndef TDC_VERIFY_HPP
#define TDC_VERIFY_HPP

#include "tdc/deligne.hpp"

/**
 * Executable checks for the exact sequences and reductions the engine is
 * built on: Mayer-Vietoris over each computable coefficient system, the
 * diamond invariants, trivial-twist reduction, and brute-force oracles.
 * Every check is a pure function of its inputs returning a structured
 * report; a failing slot names the degree and the subgroups that differ.
 */
namespace tdc {

class NotACover : public std::runtime_error {
  public:
    explicit NotACover(const std::string& what) : std::runtime_error(what) {}
};

/** A cover of K by two face-closed subcomplexes with their intersection. */
struct MvDecomposition {
    DeltaSet k;
    SubComplex u, v, w;

    /** Throws NotACover unless every cell lies in u or v. */
    static MvDecomposition make(const DeltaSet& k, SubComplex u, SubComplex v);
    /** Closed star of a vertex against its complement; the combinatorial
     *  shape of a ball-versus-the-rest cover. */
    static MvDecomposition star_split(const DeltaSet& k, CellIndex vertex);
};

struct CheckLine {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct CheckReport {
    std::string title;
    std::vector<CheckLine> lines;

    void add(std::string name, bool pass, std::string detail = "");
    void merge(const CheckReport& other);
    bool passed() const;
    std::size_t failures() const;
};

/**
 * Builds the long exact sequence of the cover with restriction maps,
 * the difference map, and a cochain-level connecting map, then runs
 * the exactness test at every slot.  Supported rings: z (exact lattice
 * arithmetic), q and fp (rank bookkeeping over the field).
 */
CheckReport check_mv(const MvDecomposition& m, const TwistCocycle& eta,
                     CoefficientRing ring);

/** All diamond invariants at degree n, including Bockstein image = torsion. */
CheckReport check_diamond(const DeltaSet& k, const TwistCocycle& eta,
                          std::size_t n);
CheckReport check_diamond(const CochainComplex& cx, std::size_t n);

/**
 * The all-(+1) twist reproduces the untwisted cohomology computed by an
 * independent code path, in every degree up to n_max, over Z, Q and
 * small prime fields.
 */
CheckReport check_trivial_twist(const DeltaSet& k, std::size_t n_max);

/**
 * Brute-force cross-checks: universal-coefficient consistency over
 * F_2, F_3, F_5; Euler characteristic; gauge invariance under random
 * gauge transforms.  Requires a complex small enough for dense
 * arithmetic (at most 10^4 cells).
 */
CheckReport oracle_suite(const DeltaSet& k, const TwistCocycle& eta);

}  // namespace tdc

#endif
