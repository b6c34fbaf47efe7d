#ifndef TDC_NERVE_HPP
#define TDC_NERVE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

/**
 * Combinatorial models of spaces: semi-simplicial sets (Delta-sets) for
 * good-cover nerves and triangulations, Z/2 twist cocycles on them, and
 * builders for the example spaces.  Everything is immutable after
 * construction and freely shareable across threads.
 */
namespace tdc {

class BrokenFaceReference : public std::runtime_error {
  public:
    explicit BrokenFaceReference(const std::string& what)
        : std::runtime_error(what) {}
};

class SimplicialIdentityViolation : public std::runtime_error {
  public:
    explicit SimplicialIdentityViolation(const std::string& what)
        : std::runtime_error(what) {}
};

class MissingEdgeValue : public std::runtime_error {
  public:
    explicit MissingEdgeValue(const std::string& what)
        : std::runtime_error(what) {}
};

class NotFaceClosed : public std::runtime_error {
  public:
    explicit NotFaceClosed(const std::string& what)
        : std::runtime_error(what) {}
};

using CellIndex = std::uint32_t;

/**
 * A Delta-set: cells per degree with ordered face maps d_0 ... d_k
 * satisfying d_i d_j = d_(j-1) d_i for i < j.  Cells are addressed by
 * (degree, index); every cell also carries a name used by the file
 * format.  A degree-k cell for k >= 1 stores k+1 face indices into
 * degree k-1, d_0 first.
 */
class DeltaSet {
  public:
    DeltaSet() = default;
    DeltaSet(std::string name,
             std::vector<std::vector<std::string>> cell_names,
             std::vector<std::vector<std::vector<CellIndex>>> faces);

    const std::string& name() const { return name_; }
    const std::string& description() const { return description_; }
    void set_description(std::string d) { description_ = std::move(d); }

    /** Top degree; a single point has dimension 0. */
    std::size_t dimension() const { return cells_.empty() ? 0 : cells_.size() - 1; }
    std::size_t cell_count(std::size_t k) const {
        return k < cells_.size() ? cells_[k].size() : 0;
    }
    const std::string& cell_name(std::size_t k, CellIndex c) const {
        return cells_[k][c];
    }
    std::optional<CellIndex> cell_index(std::size_t k,
                                        const std::string& name) const;

    CellIndex face(std::size_t k, CellIndex cell, std::size_t i) const {
        return faces_[k][cell][i];
    }
    const std::vector<CellIndex>& faces_of(std::size_t k, CellIndex cell) const {
        return faces_[k][cell];
    }

    /** Sorted set of 0-cells under iterated face maps. */
    std::vector<CellIndex> vertex_set(std::size_t k, CellIndex cell) const;
    /** The 1-cell d_2 d_3 ... d_k of a k-cell (k >= 1); the cell itself at k = 1. */
    CellIndex long_edge(std::size_t k, CellIndex cell) const;

  private:
    std::string name_;
    std::string description_;
    std::vector<std::vector<std::string>> cells_;
    std::vector<std::vector<std::vector<CellIndex>>> faces_;
};

struct ValidationReport {
    std::vector<std::size_t> counts;  // cells per degree
};

/**
 * Confirms reference integrity and the simplicial identities; returns
 * cell counts per degree.  Throws BrokenFaceReference or
 * SimplicialIdentityViolation.
 */
ValidationReport validate(const DeltaSet& k);

/**
 * {+1,-1} assignment on 1-cells.  The cocycle law on a 2-cell s reads
 * value(d_2 s) * value(d_0 s) = value(d_1 s).
 */
class TwistCocycle {
  public:
    TwistCocycle() = default;
    explicit TwistCocycle(std::vector<int> values);
    static TwistCocycle trivial(const DeltaSet& k);

    std::size_t size() const { return values_.size(); }
    int sign(CellIndex edge) const { return values_[edge]; }
    const std::vector<int>& values() const { return values_; }
    bool is_trivial() const;
    bool operator==(const TwistCocycle& other) const = default;

  private:
    std::vector<int> values_;
};

/**
 * True iff the twist assigns a sign to every 1-cell and satisfies the
 * cocycle law on every 2-cell.  Throws MissingEdgeValue when edges are
 * uncovered.
 */
bool validate_twist(const DeltaSet& k, const TwistCocycle& eta);

/**
 * One representative per class of H^1(K; Z/2), computed over the
 * two-element field.  The trivial class comes first as the all-(+1)
 * twist; 2^dim classes are returned.
 */
std::vector<TwistCocycle> twist_classes_mod2(const DeltaSet& k);

/** Conjugate a twist by a {+1,-1}-valued 0-cochain. */
TwistCocycle gauge_transform(const DeltaSet& k, const TwistCocycle& eta,
                             const std::vector<int>& s);

/** Do two twists differ by a gauge transform (mod-2 coboundary)? */
bool cohomologous_mod2(const DeltaSet& k, const TwistCocycle& a,
                       const TwistCocycle& b);

/**
 * A face-closed selection of cells of a parent Delta-set.  The selected
 * index lists are sorted; their order fixes the cell order of the
 * restricted complex.
 */
class SubComplex {
  public:
    SubComplex() = default;
    /** Verifies face closure; throws NotFaceClosed. */
    static SubComplex from_cells(const DeltaSet& parent,
                                 std::vector<std::vector<CellIndex>> selected);
    /** Face closure of a seed selection. */
    static SubComplex closure(const DeltaSet& parent,
                              std::vector<std::vector<CellIndex>> seed);
    static SubComplex full(const DeltaSet& parent);

    std::size_t degree_count() const { return selected_.size(); }
    const std::vector<CellIndex>& cells(std::size_t k) const;
    bool contains(std::size_t k, CellIndex c) const;
    std::size_t total_cells() const;

  private:
    std::vector<std::vector<CellIndex>> selected_;
    friend SubComplex intersect(const SubComplex& a, const SubComplex& b);
};

SubComplex intersect(const SubComplex& a, const SubComplex& b);
bool covers(const DeltaSet& k, const SubComplex& u, const SubComplex& v);

/** Closed star: all cells touching the vertex, face-closed. */
SubComplex closed_star(const DeltaSet& k, CellIndex vertex);
/** Cells whose vertex set avoids the vertex (already face-closed). */
SubComplex star_complement(const DeltaSet& k, CellIndex vertex);

struct Restriction {
    DeltaSet complex;
    TwistCocycle twist;
};

/** The sub-Delta-set with the twist restricted to surviving 1-cells. */
Restriction restrict_complex(const DeltaSet& k, const SubComplex& s,
                             const TwistCocycle& eta);

// Builders.  Every output passes validate(); untwisted cohomology of
// each is pinned to the classical values by the test suite.
DeltaSet point();
/** Nerve of m cyclically overlapping patches, m >= 3: m vertices, m edges. */
DeltaSet circle_nerve(std::size_t m);
/** The three-patch cover of the punctured plane: no triple overlaps. */
DeltaSet annulus3();
/** Boundary of the tetrahedron. */
DeltaSet sphere2();
/** Triangulated projective plane (antipodal quotient of the icosahedron). */
DeltaSet rp2();
/** Triangulated projective 3-space: antipodal quotient of the barycentric
 *  subdivision of the 16-cell boundary. */
DeltaSet rp3();

/**
 * Delta-set of a simplicial complex given by maximal simplices on
 * integer vertices; all faces are generated, cells are ordered
 * lexicographically by vertex tuple.
 */
DeltaSet from_maximal_simplices(std::string name,
                                const std::vector<std::vector<int>>& maximal,
                                const std::vector<std::string>& vertex_names = {});

}  // namespace tdc

#endif
