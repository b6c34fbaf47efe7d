#ifndef TDC_ABELIAN_HPP
#define TDC_ABELIAN_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/**
 * Exact integer linear algebra: Smith normal form, finitely generated
 * abelian groups in invariant-factor normal form, and homomorphisms
 * between cohomology groups presented by integer matrix complexes.
 *
 * Everything here is arbitrary precision.  No floating point enters this
 * module; pivot growth during Smith reduction is absorbed by cpp_int.
 */
namespace tdc {

using Int = boost::multiprecision::cpp_int;

/** Thrown when a pair of maps that must compose to zero does not. */
class CompositionNotZero : public std::runtime_error {
  public:
    explicit CompositionNotZero(const std::string& what)
        : std::runtime_error(what) {}
};

/** Thrown when a cochain map fails to commute with the differentials. */
class NotAChainMap : public std::runtime_error {
  public:
    explicit NotAChainMap(const std::string& what)
        : std::runtime_error(what) {}
};

/**
 * Dense matrix of exact integers, row-major.  Zero rows or columns are
 * allowed everywhere; an empty matrix is a valid (and common) input.
 */
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> entries);

    /** Build from a nested initializer-style list of rows. */
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows);
    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols) {
        return IntMatrix(rows, cols);
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const Int& operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const IntMatrix& other) const;
    bool operator!=(const IntMatrix& other) const { return !(*this == other); }

    IntMatrix operator*(const IntMatrix& rhs) const;
    std::vector<Int> apply(const std::vector<Int>& x) const;
    IntMatrix transpose() const;
    IntMatrix negated() const;

    /** Columns [first, last) as a new matrix. */
    IntMatrix column_slice(std::size_t first, std::size_t last) const;
    /** Rows [first, last) as a new matrix. */
    IntMatrix row_slice(std::size_t first, std::size_t last) const;
    /** Horizontal concatenation [ this | rhs ]. */
    IntMatrix hcat(const IntMatrix& rhs) const;
    std::vector<Int> column(std::size_t c) const;
    void set_column(std::size_t c, const std::vector<Int>& v);

    std::string to_string() const;

  private:
    std::size_t rows_, cols_;
    std::vector<Int> data_;
};

/**
 * A = U * S * V with U, V unimodular and S diagonal, nonnegative,
 * divisibility-chained (d1 | d2 | ...), zeros trailing.  The inverses of
 * U and V are maintained during the reduction and cached here; they are
 * what every kernel/image/solve computation downstream actually uses.
 */
struct SmithDecomposition {
    IntMatrix u, s, v;
    IntMatrix u_inv, v_inv;
    int det_u = 1;  // tracked determinant of u, always +1 or -1
    int det_v = 1;
    std::size_t source_rows = 0;
    std::size_t source_cols = 0;

    std::size_t rank() const;
    std::vector<Int> diagonal() const;
};

/** Smith normal form.  S is uniquely determined by the input. */
SmithDecomposition smith_normal_form(const IntMatrix& a);

/**
 * Finitely generated abelian group in invariant-factor normal form:
 * Z^free_rank + Z/d1 + ... + Z/dt with each di >= 2 and di | d(i+1).
 * The form is unique, so isomorphism testing is field equality.
 */
struct FgAbGroup {
    std::size_t free_rank = 0;
    std::vector<Int> invariant_factors;

    static FgAbGroup trivial() { return FgAbGroup{}; }
    static FgAbGroup free_of_rank(std::size_t r) { return FgAbGroup{r, {}}; }
    static FgAbGroup cyclic(Int d);

    bool is_trivial() const {
        return free_rank == 0 && invariant_factors.empty();
    }
    std::size_t torsion_count() const { return invariant_factors.size(); }
    /** Total generator count: torsion generators first, then free. */
    std::size_t gen_count() const { return torsion_count() + free_rank; }
    Int torsion_order() const;
    /** The torsion subgroup as a group of its own. */
    FgAbGroup torsion_part() const { return FgAbGroup{0, invariant_factors}; }

    bool operator==(const FgAbGroup& other) const = default;

    /** Rendering normal form: "0", "Z", "Z^2 (+) Z/2 (+) Z/4", ... */
    std::string to_string() const;
};

/**
 * SNF-derived generator data for a cohomology group ker(d_out)/im(d_in).
 *
 * Generator order convention (used by every GroupHom in the project):
 * torsion generators first, in invariant-factor order, then free
 * generators.  `orders[i]` is the torsion order of generator i, or 0 for
 * a free generator.  The basis is deterministic within a session but not
 * across sessions; nothing downstream may rely on the concrete vectors,
 * only on the recorded maps.
 */
struct CohomologyBasis {
    FgAbGroup group;
    std::vector<Int> orders;
    /** cochain-space column per generator (cocycle representatives). */
    IntMatrix representatives;
    /** raw class coordinates of a cocycle: reduce() applies torsion mod. */
    IntMatrix class_map;

    /** Class coordinates of a cocycle (must lie in ker d_out). */
    std::vector<Int> reduce(const std::vector<Int>& cocycle) const;
    /** Normalize raw generator coordinates (torsion entries into [0,d)). */
    std::vector<Int> normalize_coords(const std::vector<Int>& coords) const;
};

/**
 * ker(d_out)/im(d_in) with full generator bookkeeping.
 * Requires d_out * d_in = 0; throws CompositionNotZero otherwise.
 */
CohomologyBasis cohomology_basis(const IntMatrix& d_out, const IntMatrix& d_in);

/** Normal-form presentation of ker(d_out)/im(d_in). */
FgAbGroup cohomology_at(const IntMatrix& d_out, const IntMatrix& d_in);

/**
 * A nonnegatively graded complex of free Z-modules presented by its
 * differential matrices d_k : C^k -> C^(k+1).  Queries beyond the top
 * degree are answered with zero modules.  Generator bases are computed
 * lazily, cached, and guarded by a mutex: values are immutable from the
 * caller's perspective and safe to share across threads.
 */
class MatrixComplex {
  public:
    MatrixComplex();
    /**
     * dims[k] is the rank of C^k; diffs[k] maps C^k -> C^(k+1) and must
     * have shape dims[k+1] x dims[k] (the top differential, into the zero
     * module, is implicit).  Consecutive differentials must compose to
     * zero; throws CompositionNotZero when they do not.
     */
    MatrixComplex(std::vector<std::size_t> dims, std::vector<IntMatrix> diffs);

    std::size_t top_degree() const;
    std::size_t dim(std::size_t k) const;
    /** d_k : C^k -> C^(k+1); a zero-row matrix at and above the top. */
    IntMatrix differential_out(std::size_t k) const;
    /** d_(k-1) : C^(k-1) -> C^k; a zero-column matrix at k = 0. */
    IntMatrix differential_in(std::size_t k) const;

    const CohomologyBasis& basis(std::size_t k) const;
    const SmithDecomposition& snf_out(std::size_t k) const;
    FgAbGroup cohomology(std::size_t k) const;

  private:
    struct Caches {
        std::mutex mutex;
        std::vector<std::optional<SmithDecomposition>> snf;
        std::vector<std::optional<CohomologyBasis>> basis;
    };
    std::vector<std::size_t> dims_;
    std::vector<IntMatrix> diffs_;
    std::unique_ptr<Caches> caches_;
};

/**
 * Homomorphism between groups in normal form.  Column j of `matrix` is
 * the image of source generator j in target generator coordinates
 * (convention: torsion generators first, then free).  Torsion target
 * coordinates are stored reduced into [0, d).
 *
 * Invariant: d * column(j) vanishes in the target whenever source
 * generator j has order d.
 */
struct GroupHom {
    FgAbGroup source;
    FgAbGroup target;
    IntMatrix matrix;

    GroupHom(FgAbGroup src, FgAbGroup tgt, IntMatrix m);
    static GroupHom zero(FgAbGroup src, FgAbGroup tgt);
    static GroupHom identity(FgAbGroup g);
};

/** g after f; throws std::invalid_argument on group mismatch. */
GroupHom compose(const GroupHom& g, const GroupHom& f);
bool is_zero_hom(const GroupHom& h);

/**
 * Map on degree-k cohomology induced by a cochain map.  f[j] carries
 * C^j(source) to C^j(target); commutation with the differentials is
 * checked at degrees k-1 and k and NotAChainMap is thrown on failure.
 */
GroupHom induced_map(const std::vector<IntMatrix>& f_cochain,
                     const MatrixComplex& source, const MatrixComplex& target,
                     std::size_t k);

/**
 * im(f) = ker(g) as subgroups of f.target, compared by exact integer
 * lattice arithmetic with torsion orders respected.  Requires
 * f.target == g.source and g of = 0 (throws CompositionNotZero).
 */
bool exactness_check(const GroupHom& f, const GroupHom& g);

/** Subgroups generated by the columns of a and b coincide in `ambient`. */
bool subgroups_equal(const FgAbGroup& ambient, const IntMatrix& gens_a,
                     const IntMatrix& gens_b);

/** Isomorphism type of the subgroup generated by the given columns. */
FgAbGroup subgroup_type(const FgAbGroup& ambient, const IntMatrix& gens);

/** Isomorphism types of im(h) in the target and ker(h) in the source. */
FgAbGroup hom_image_type(const GroupHom& h);
FgAbGroup hom_kernel_type(const GroupHom& h);

/** Projection of a group onto its free quotient Z^free_rank (kills torsion). */
GroupHom free_quotient_hom(const FgAbGroup& g);

/** Columns generating the torsion subgroup in generator coordinates. */
IntMatrix torsion_subgroup_gens(const FgAbGroup& g);

/** Basis of the integer kernel of a, as columns. */
IntMatrix kernel_basis(const IntMatrix& a);
IntMatrix kernel_basis(const SmithDecomposition& snf);

/** Integer solution of A x = b, if one exists. */
std::optional<std::vector<Int>> solve_integer(const SmithDecomposition& snf,
                                              const std::vector<Int>& b);

/** Rank over Q via fraction-free (Bareiss) elimination; no SNF involved. */
std::size_t rank_over_q(const IntMatrix& a);

/** Exact determinant (Bareiss); square input required. */
Int determinant(const IntMatrix& a);

}  // namespace tdc

#endif
