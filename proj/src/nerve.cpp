#include "tdc/nerve.hpp"

#include <algorithm>
#include <set>

#include "tdc/fp_linalg.hpp"

namespace tdc {

// ---------------------------------------------------------------------------
// DeltaSet

DeltaSet::DeltaSet(std::string name,
                   std::vector<std::vector<std::string>> cell_names,
                   std::vector<std::vector<std::vector<CellIndex>>> faces)
    : name_(std::move(name)), cells_(std::move(cell_names)),
      faces_(std::move(faces)) {
    if (faces_.size() != cells_.size())
        throw std::invalid_argument("DeltaSet: cells/faces degree mismatch");
    for (std::size_t k = 0; k < cells_.size(); ++k) {
        if (faces_[k].size() != cells_[k].size())
            throw std::invalid_argument("DeltaSet: cells/faces count mismatch");
        std::set<std::string> seen(cells_[k].begin(), cells_[k].end());
        if (seen.size() != cells_[k].size())
            throw std::invalid_argument("DeltaSet: duplicate cell name");
    }
}

std::optional<CellIndex> DeltaSet::cell_index(std::size_t k,
                                              const std::string& name) const {
    if (k >= cells_.size()) return std::nullopt;
    for (CellIndex c = 0; c < cells_[k].size(); ++c)
        if (cells_[k][c] == name) return c;
    return std::nullopt;
}

std::vector<CellIndex> DeltaSet::vertex_set(std::size_t k, CellIndex cell) const {
    std::set<CellIndex> frontier{cell};
    for (std::size_t deg = k; deg > 0; --deg) {
        std::set<CellIndex> next;
        for (CellIndex c : frontier)
            for (CellIndex f : faces_[deg][c]) next.insert(f);
        frontier = std::move(next);
    }
    return std::vector<CellIndex>(frontier.begin(), frontier.end());
}

CellIndex DeltaSet::long_edge(std::size_t k, CellIndex cell) const {
    CellIndex cur = cell;
    for (std::size_t deg = k; deg >= 2; --deg) cur = faces_[deg][cur][deg];
    return cur;
}

ValidationReport validate(const DeltaSet& k) {
    ValidationReport report;
    for (std::size_t deg = 0; deg <= k.dimension(); ++deg)
        report.counts.push_back(k.cell_count(deg));

    for (std::size_t deg = 1; deg <= k.dimension(); ++deg) {
        for (CellIndex c = 0; c < k.cell_count(deg); ++c) {
            const auto& fs = k.faces_of(deg, c);
            if (fs.size() != deg + 1)
                throw BrokenFaceReference(
                    "cell " + k.cell_name(deg, c) + " of degree " +
                    std::to_string(deg) + " lists " +
                    std::to_string(fs.size()) + " faces");
            for (CellIndex f : fs)
                if (f >= k.cell_count(deg - 1))
                    throw BrokenFaceReference(
                        "cell " + k.cell_name(deg, c) +
                        " references missing face index " + std::to_string(f));
        }
    }
    for (std::size_t deg = 2; deg <= k.dimension(); ++deg) {
        for (CellIndex c = 0; c < k.cell_count(deg); ++c) {
            for (std::size_t j = 1; j <= deg; ++j) {
                for (std::size_t i = 0; i < j; ++i) {
                    CellIndex lhs = k.face(deg - 1, k.face(deg, c, j), i);
                    CellIndex rhs = k.face(deg - 1, k.face(deg, c, i), j - 1);
                    if (lhs != rhs)
                        throw SimplicialIdentityViolation(
                            "d_" + std::to_string(i) + " d_" +
                            std::to_string(j) + " != d_" +
                            std::to_string(j - 1) + " d_" + std::to_string(i) +
                            " on cell " + k.cell_name(deg, c));
                }
            }
        }
    }
    return report;
}

// ---------------------------------------------------------------------------
// Twists

TwistCocycle::TwistCocycle(std::vector<int> values) : values_(std::move(values)) {
    for (int v : values_)
        if (v != 1 && v != -1)
            throw std::invalid_argument("TwistCocycle: values must be +1/-1");
}

TwistCocycle TwistCocycle::trivial(const DeltaSet& k) {
    return TwistCocycle(std::vector<int>(k.cell_count(1), 1));
}

bool TwistCocycle::is_trivial() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](int v) { return v == 1; });
}

bool validate_twist(const DeltaSet& k, const TwistCocycle& eta) {
    if (eta.size() != k.cell_count(1))
        throw MissingEdgeValue("twist covers " + std::to_string(eta.size()) +
                               " of " + std::to_string(k.cell_count(1)) +
                               " edges");
    for (CellIndex c = 0; c < k.cell_count(2); ++c) {
        int d0 = eta.sign(k.face(2, c, 0));
        int d1 = eta.sign(k.face(2, c, 1));
        int d2 = eta.sign(k.face(2, c, 2));
        if (d2 * d0 != d1) return false;
    }
    return true;
}

namespace {

// Mod-2 coboundary matrices of the underlying untwisted complex.
FpMatrix mod2_delta0(const DeltaSet& k) {
    FpMatrix m(2, k.cell_count(1), k.cell_count(0));
    for (CellIndex e = 0; e < k.cell_count(1); ++e) {
        m(e, k.face(1, e, 0)) ^= 1;
        m(e, k.face(1, e, 1)) ^= 1;
    }
    return m;
}

FpMatrix mod2_delta1(const DeltaSet& k) {
    FpMatrix m(2, k.cell_count(2), k.cell_count(1));
    for (CellIndex t = 0; t < k.cell_count(2); ++t)
        for (std::size_t i = 0; i <= 2; ++i) m(t, k.face(2, t, i)) ^= 1;
    return m;
}

}  // namespace

std::vector<TwistCocycle> twist_classes_mod2(const DeltaSet& k) {
    FpCohomology h1(mod2_delta1(k), mod2_delta0(k));
    const std::size_t b = h1.dimension();
    if (b > 16)
        throw std::runtime_error("twist_classes_mod2: too many classes (2^" +
                                 std::to_string(b) + ") to enumerate");
    const std::size_t n1 = k.cell_count(1);
    std::vector<TwistCocycle> classes;
    for (std::size_t mask = 0; mask < (std::size_t(1) << b); ++mask) {
        std::vector<int> vals(n1, 1);
        for (std::size_t bit = 0; bit < b; ++bit) {
            if (!(mask & (std::size_t(1) << bit))) continue;
            for (CellIndex e = 0; e < n1; ++e)
                if (h1.representatives()(e, bit)) vals[e] = -vals[e];
        }
        classes.emplace_back(std::move(vals));
    }
    return classes;
}

TwistCocycle gauge_transform(const DeltaSet& k, const TwistCocycle& eta,
                             const std::vector<int>& s) {
    if (s.size() != k.cell_count(0))
        throw std::invalid_argument("gauge_transform: one sign per vertex");
    for (int v : s)
        if (v != 1 && v != -1)
            throw std::invalid_argument("gauge_transform: signs must be +1/-1");
    std::vector<int> vals(k.cell_count(1));
    for (CellIndex e = 0; e < k.cell_count(1); ++e)
        vals[e] = s[k.face(1, e, 0)] * eta.sign(e) * s[k.face(1, e, 1)];
    return TwistCocycle(std::move(vals));
}

bool cohomologous_mod2(const DeltaSet& k, const TwistCocycle& a,
                       const TwistCocycle& b) {
    if (a.size() != k.cell_count(1) || b.size() != k.cell_count(1))
        throw MissingEdgeValue("cohomologous_mod2: twist size mismatch");
    std::vector<long long> diff(k.cell_count(1));
    for (CellIndex e = 0; e < k.cell_count(1); ++e)
        diff[e] = a.sign(e) == b.sign(e) ? 0 : 1;
    return fp_solve(mod2_delta0(k), diff).has_value();
}

// ---------------------------------------------------------------------------
// Subcomplexes

SubComplex SubComplex::from_cells(const DeltaSet& parent,
                                  std::vector<std::vector<CellIndex>> selected) {
    SubComplex s;
    s.selected_ = std::move(selected);
    s.selected_.resize(parent.dimension() + 1);
    for (std::size_t k = 0; k <= parent.dimension(); ++k) {
        auto& cells = s.selected_[k];
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        for (CellIndex c : cells)
            if (c >= parent.cell_count(k))
                throw std::invalid_argument("SubComplex: cell out of range");
    }
    for (std::size_t k = 1; k <= parent.dimension(); ++k)
        for (CellIndex c : s.selected_[k])
            for (CellIndex f : parent.faces_of(k, c))
                if (!s.contains(k - 1, f))
                    throw NotFaceClosed("face " + parent.cell_name(k - 1, f) +
                                        " of selected cell " +
                                        parent.cell_name(k, c) +
                                        " is not selected");
    return s;
}

SubComplex SubComplex::closure(const DeltaSet& parent,
                               std::vector<std::vector<CellIndex>> seed) {
    seed.resize(parent.dimension() + 1);
    for (std::size_t k = parent.dimension(); k >= 1; --k) {
        std::set<CellIndex> merged(seed[k - 1].begin(), seed[k - 1].end());
        for (CellIndex c : seed[k])
            for (CellIndex f : parent.faces_of(k, c)) merged.insert(f);
        seed[k - 1].assign(merged.begin(), merged.end());
    }
    return from_cells(parent, std::move(seed));
}

SubComplex SubComplex::full(const DeltaSet& parent) {
    std::vector<std::vector<CellIndex>> all(parent.dimension() + 1);
    for (std::size_t k = 0; k <= parent.dimension(); ++k)
        for (CellIndex c = 0; c < parent.cell_count(k); ++c)
            all[k].push_back(c);
    return from_cells(parent, std::move(all));
}

const std::vector<CellIndex>& SubComplex::cells(std::size_t k) const {
    static const std::vector<CellIndex> empty;
    return k < selected_.size() ? selected_[k] : empty;
}

bool SubComplex::contains(std::size_t k, CellIndex c) const {
    if (k >= selected_.size()) return false;
    return std::binary_search(selected_[k].begin(), selected_[k].end(), c);
}

std::size_t SubComplex::total_cells() const {
    std::size_t n = 0;
    for (const auto& cells : selected_) n += cells.size();
    return n;
}

SubComplex intersect(const SubComplex& a, const SubComplex& b) {
    // Intersection of face-closed selections is face-closed.
    SubComplex out;
    out.selected_.resize(std::max(a.degree_count(), b.degree_count()));
    for (std::size_t k = 0; k < out.selected_.size(); ++k)
        std::set_intersection(a.cells(k).begin(), a.cells(k).end(),
                              b.cells(k).begin(), b.cells(k).end(),
                              std::back_inserter(out.selected_[k]));
    return out;
}

bool covers(const DeltaSet& k, const SubComplex& u, const SubComplex& v) {
    for (std::size_t deg = 0; deg <= k.dimension(); ++deg)
        for (CellIndex c = 0; c < k.cell_count(deg); ++c)
            if (!u.contains(deg, c) && !v.contains(deg, c)) return false;
    return true;
}

SubComplex closed_star(const DeltaSet& k, CellIndex vertex) {
    std::vector<std::vector<CellIndex>> seed(k.dimension() + 1);
    for (std::size_t deg = 0; deg <= k.dimension(); ++deg)
        for (CellIndex c = 0; c < k.cell_count(deg); ++c) {
            auto verts = k.vertex_set(deg, c);
            if (std::binary_search(verts.begin(), verts.end(), vertex))
                seed[deg].push_back(c);
        }
    return SubComplex::closure(k, std::move(seed));
}

SubComplex star_complement(const DeltaSet& k, CellIndex vertex) {
    std::vector<std::vector<CellIndex>> sel(k.dimension() + 1);
    for (std::size_t deg = 0; deg <= k.dimension(); ++deg)
        for (CellIndex c = 0; c < k.cell_count(deg); ++c) {
            auto verts = k.vertex_set(deg, c);
            if (!std::binary_search(verts.begin(), verts.end(), vertex))
                sel[deg].push_back(c);
        }
    return SubComplex::from_cells(k, std::move(sel));
}

Restriction restrict_complex(const DeltaSet& k, const SubComplex& s,
                             const TwistCocycle& eta) {
    if (eta.size() != k.cell_count(1))
        throw MissingEdgeValue("restrict_complex: twist size mismatch");
    std::size_t top = 0;
    std::vector<std::vector<CellIndex>> sel;
    for (std::size_t deg = 0; deg <= k.dimension(); ++deg) {
        sel.push_back(s.cells(deg));
        if (!s.cells(deg).empty()) top = deg;
    }
    sel.resize(top + 1);
    SubComplex checked = SubComplex::from_cells(k, sel);

    std::vector<std::vector<CellIndex>> parent_to_sub(top + 1);
    std::vector<std::vector<std::string>> names(top + 1);
    for (std::size_t deg = 0; deg <= top; ++deg) {
        parent_to_sub[deg].assign(k.cell_count(deg), 0);
        for (std::size_t i = 0; i < checked.cells(deg).size(); ++i) {
            CellIndex parent_cell = checked.cells(deg)[i];
            parent_to_sub[deg][parent_cell] = static_cast<CellIndex>(i);
            names[deg].push_back(k.cell_name(deg, parent_cell));
        }
    }
    std::vector<std::vector<std::vector<CellIndex>>> faces(top + 1);
    for (std::size_t deg = 0; deg <= top; ++deg) {
        for (CellIndex parent_cell : checked.cells(deg)) {
            std::vector<CellIndex> fs;
            if (deg >= 1)
                for (CellIndex f : k.faces_of(deg, parent_cell))
                    fs.push_back(parent_to_sub[deg - 1][f]);
            faces[deg].push_back(std::move(fs));
        }
    }
    std::vector<int> twist_vals;
    if (top >= 1)
        for (CellIndex e : checked.cells(1)) twist_vals.push_back(eta.sign(e));

    Restriction out;
    out.complex = DeltaSet(k.name() + "|sub", std::move(names), std::move(faces));
    out.twist = TwistCocycle(std::move(twist_vals));
    return out;
}

// ---------------------------------------------------------------------------
// Builders

namespace {

using VertexTuple = std::vector<int>;

struct SimplicialTable {
    // simplices[k] sorted lexicographically; each tuple strictly increasing
    std::vector<std::vector<VertexTuple>> simplices;

    std::size_t index_of(std::size_t k, const VertexTuple& t) const {
        const auto& level = simplices[k];
        auto it = std::lower_bound(level.begin(), level.end(), t);
        if (it == level.end() || *it != t)
            throw std::logic_error("SimplicialTable: tuple not found");
        return static_cast<std::size_t>(it - level.begin());
    }
};

SimplicialTable build_table(const std::vector<VertexTuple>& maximal) {
    std::vector<std::set<VertexTuple>> levels;
    for (const VertexTuple& m : maximal) {
        VertexTuple s = m;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw std::invalid_argument("simplex with repeated vertex");
        const std::size_t n = s.size();
        if (levels.size() < n) levels.resize(n);
        for (std::size_t mask = 1; mask < (std::size_t(1) << n); ++mask) {
            VertexTuple sub;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (std::size_t(1) << i)) sub.push_back(s[i]);
            levels[sub.size() - 1].insert(sub);
        }
    }
    SimplicialTable table;
    for (auto& level : levels)
        table.simplices.emplace_back(level.begin(), level.end());
    return table;
}

std::string tuple_name(const VertexTuple& t,
                       const std::vector<std::string>& vertex_names) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ".";
        out += static_cast<std::size_t>(t[i]) < vertex_names.size()
                   ? vertex_names[t[i]]
                   : std::to_string(t[i]);
    }
    return out;
}

DeltaSet table_to_delta(std::string name, const SimplicialTable& table,
                        const std::vector<std::string>& vertex_names) {
    std::vector<std::vector<std::string>> names(table.simplices.size());
    std::vector<std::vector<std::vector<CellIndex>>> faces(
        table.simplices.size());
    for (std::size_t k = 0; k < table.simplices.size(); ++k) {
        for (const VertexTuple& t : table.simplices[k]) {
            names[k].push_back(tuple_name(t, vertex_names));
            std::vector<CellIndex> fs;
            if (k >= 1) {
                for (std::size_t i = 0; i <= k; ++i) {
                    VertexTuple sub = t;
                    sub.erase(sub.begin() + static_cast<long>(i));
                    fs.push_back(
                        static_cast<CellIndex>(table.index_of(k - 1, sub)));
                }
            }
            faces[k].push_back(std::move(fs));
        }
    }
    return DeltaSet(std::move(name), std::move(names), std::move(faces));
}

// Barycentric subdivision together with the involution induced on the
// barycenters by an involution of the vertices.  Barycentric vertices
// are numbered degree-major, which makes the induced involution monotone
// on every chain simplex (dimensions strictly increase along a chain).
struct BaryResult {
    SimplicialTable table;
    std::vector<int> involution;  // on barycentric vertices
};

BaryResult barycentric_with_involution(const SimplicialTable& in,
                                       const std::vector<int>& vertex_phi) {
    std::vector<std::size_t> offset(in.simplices.size() + 1, 0);
    for (std::size_t k = 0; k < in.simplices.size(); ++k)
        offset[k + 1] = offset[k] + in.simplices[k].size();

    std::vector<int> phi(offset.back());
    for (std::size_t k = 0; k < in.simplices.size(); ++k) {
        for (std::size_t i = 0; i < in.simplices[k].size(); ++i) {
            VertexTuple img;
            for (int v : in.simplices[k][i]) img.push_back(vertex_phi[v]);
            std::sort(img.begin(), img.end());
            phi[offset[k] + i] =
                static_cast<int>(offset[k] + in.index_of(k, img));
        }
    }

    // One maximal chain per (top simplex, permutation of its vertices).
    const std::size_t top = in.simplices.size() - 1;
    std::vector<VertexTuple> chains;
    for (std::size_t i = 0; i < in.simplices[top].size(); ++i) {
        const VertexTuple& verts = in.simplices[top][i];
        std::vector<std::size_t> perm(verts.size());
        for (std::size_t j = 0; j < perm.size(); ++j) perm[j] = j;
        do {
            VertexTuple chain;
            VertexTuple prefix;
            for (std::size_t j = 0; j < perm.size(); ++j) {
                prefix.push_back(verts[perm[j]]);
                VertexTuple sorted = prefix;
                std::sort(sorted.begin(), sorted.end());
                chain.push_back(
                    static_cast<int>(offset[j] + in.index_of(j, sorted)));
            }
            chains.push_back(std::move(chain));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return BaryResult{build_table(chains), std::move(phi)};
}

// Quotient of a simplicial table by a free involution that is monotone
// on every simplex.  Cells are orbit pairs; the face maps of the
// lexicographically smaller representative descend to the quotient.
DeltaSet quotient_by_involution(std::string name, const SimplicialTable& in,
                                const std::vector<int>& phi) {
    std::vector<std::vector<VertexTuple>> reps(in.simplices.size());
    for (std::size_t k = 0; k < in.simplices.size(); ++k) {
        for (const VertexTuple& t : in.simplices[k]) {
            VertexTuple img;
            for (int v : t) img.push_back(phi[v]);
            if (!std::is_sorted(img.begin(), img.end()))
                throw std::logic_error(
                    "quotient: involution is not monotone on a simplex");
            in.index_of(k, img);  // throws if the image is not a simplex
            if (img == t)
                throw std::logic_error("quotient: involution is not free");
            if (t < img) reps[k].push_back(t);
        }
    }
    SimplicialTable rep_table;
    rep_table.simplices = reps;

    auto orbit_index = [&](std::size_t k, const VertexTuple& t) -> CellIndex {
        VertexTuple img;
        for (int v : t) img.push_back(phi[v]);
        const VertexTuple& rep = t < img ? t : img;
        return static_cast<CellIndex>(rep_table.index_of(k, rep));
    };

    std::vector<std::vector<std::string>> names(reps.size());
    std::vector<std::vector<std::vector<CellIndex>>> faces(reps.size());
    for (std::size_t k = 0; k < reps.size(); ++k) {
        for (std::size_t i = 0; i < reps[k].size(); ++i) {
            names[k].push_back("q" + std::to_string(k) + "_" +
                               std::to_string(i));
            std::vector<CellIndex> fs;
            if (k >= 1) {
                for (std::size_t j = 0; j <= k; ++j) {
                    VertexTuple sub = reps[k][i];
                    sub.erase(sub.begin() + static_cast<long>(j));
                    fs.push_back(orbit_index(k - 1, sub));
                }
            }
            faces[k].push_back(std::move(fs));
        }
    }
    return DeltaSet(std::move(name), std::move(names), std::move(faces));
}

}  // namespace

DeltaSet from_maximal_simplices(std::string name,
                                const std::vector<std::vector<int>>& maximal,
                                const std::vector<std::string>& vertex_names) {
    return table_to_delta(std::move(name), build_table(maximal), vertex_names);
}

DeltaSet point() {
    DeltaSet k("point", {{"pt"}}, {{{}}});
    k.set_description("a single 0-cell");
    return k;
}

DeltaSet circle_nerve(std::size_t m) {
    if (m < 3)
        throw std::invalid_argument("circle_nerve: need at least 3 patches");
    std::vector<std::string> verts, edges;
    std::vector<std::vector<CellIndex>> vfaces, efaces;
    for (std::size_t i = 0; i < m; ++i) {
        verts.push_back("U" + std::to_string(i));
        vfaces.push_back({});
    }
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t j = (i + 1) % m;
        edges.push_back("U" + std::to_string(i) + "U" + std::to_string(j));
        efaces.push_back({static_cast<CellIndex>(j), static_cast<CellIndex>(i)});
    }
    DeltaSet k("circle" + std::to_string(m), {verts, edges}, {vfaces, efaces});
    k.set_description("nerve of " + std::to_string(m) +
                      " cyclically overlapping patches");
    return k;
}

DeltaSet annulus3() {
    DeltaSet k("annulus3", {{"U", "V", "W"}, {"UV", "VW", "WU"}},
               {{{}, {}, {}}, {{1, 0}, {2, 1}, {0, 2}}});
    k.set_description(
        "nerve of the three-patch cover of the punctured plane; "
        "no triple overlaps");
    return k;
}

DeltaSet sphere2() {
    DeltaSet k = from_maximal_simplices(
        "sphere2", {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    k.set_description("boundary of the tetrahedron");
    return k;
}

DeltaSet rp2() {
    DeltaSet k = from_maximal_simplices(
        "rp2", {{0, 1, 4}, {0, 1, 5}, {0, 2, 3}, {0, 2, 5}, {0, 3, 4},
                {1, 2, 3}, {1, 2, 4}, {1, 3, 5}, {2, 4, 5}, {3, 4, 5}});
    k.set_description(
        "six-vertex projective plane (antipodal quotient of the icosahedron)");
    return k;
}

DeltaSet rp3() {
    // 16-cell boundary: vertex 2i is +e_i, vertex 2i+1 is -e_i.
    std::vector<std::vector<int>> tets;
    for (int signs = 0; signs < 16; ++signs) {
        std::vector<int> tet;
        for (int axis = 0; axis < 4; ++axis)
            tet.push_back(2 * axis + ((signs >> axis) & 1));
        tets.push_back(tet);
    }
    std::vector<int> antipode(8);
    for (int v = 0; v < 8; ++v) antipode[v] = v ^ 1;

    BaryResult bary = barycentric_with_involution(build_table(tets), antipode);
    DeltaSet k = quotient_by_involution("rp3", bary.table, bary.involution);
    k.set_description(
        "projective 3-space: antipodal quotient of the barycentric "
        "subdivision of the 16-cell boundary");
    return k;
}

}  // namespace tdc
