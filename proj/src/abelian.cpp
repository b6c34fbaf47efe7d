#include "tdc/abelian.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace tdc {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

// Euclidean-style remainder into [0, m) for m > 0.
Int mod_floor(const Int& a, const Int& m) {
    Int r = a % m;
    if (r < 0) r += m;
    return r;
}

// Fraction-free elimination steps divide exactly; a nonzero remainder
// would mean corrupted arithmetic, so it is checked, not assumed.
Int exact_div(const Int& num, const Int& den) {
    Int q, r;
    boost::multiprecision::divide_qr(num, den, q, r);
    if (r != 0) throw std::logic_error("exact_div: inexact division");
    return q;
}

}  // namespace

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols,
                     std::vector<Int> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw std::invalid_argument("IntMatrix: entry count mismatch");
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.front().size();
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw std::invalid_argument("IntMatrix: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

bool IntMatrix::is_zero() const {
    for (const Int& x : data_)
        if (x != 0) return false;
    return true;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::operator==(const IntMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ &&
           data_ == other.data_;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw std::invalid_argument("IntMatrix: product shape mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Int& b = rhs(k, j);
                if (b != 0) out(i, j) += a * b;
            }
        }
    }
    return out;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
    if (x.size() != cols_)
        throw std::invalid_argument("IntMatrix: apply shape mismatch");
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if ((*this)(i, j) != 0 && x[j] != 0) out[i] += (*this)(i, j) * x[j];
    return out;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

IntMatrix IntMatrix::negated() const {
    IntMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < rows_ * cols_; ++i) out.data_[i] = -data_[i];
    return out;
}

IntMatrix IntMatrix::column_slice(std::size_t first, std::size_t last) const {
    IntMatrix out(rows_, last - first);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = first; j < last; ++j)
            out(i, j - first) = (*this)(i, j);
    return out;
}

IntMatrix IntMatrix::row_slice(std::size_t first, std::size_t last) const {
    IntMatrix out(last - first, cols_);
    for (std::size_t i = first; i < last; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(i - first, j) = (*this)(i, j);
    return out;
}

IntMatrix IntMatrix::hcat(const IntMatrix& rhs) const {
    if (rows_ != rhs.rows_)
        throw std::invalid_argument("IntMatrix: hcat shape mismatch");
    IntMatrix out(rows_, cols_ + rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) out(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < rhs.cols_; ++j)
            out(i, cols_ + j) = rhs(i, j);
    }
    return out;
}

std::vector<Int> IntMatrix::column(std::size_t c) const {
    std::vector<Int> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
    return out;
}

void IntMatrix::set_column(std::size_t c, const std::vector<Int>& v) {
    if (v.size() != rows_)
        throw std::invalid_argument("IntMatrix: set_column shape mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? " " : "") << (*this)(i, j);
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

// Reduction state keeping A = u * s * v while s is transformed, together
// with the inverses and determinant signs.
struct SnfState {
    IntMatrix s, u, u_inv, v, v_inv;
    int det_u = 1, det_v = 1;

    explicit SnfState(const IntMatrix& a)
        : s(a),
          u(IntMatrix::identity(a.rows())),
          u_inv(IntMatrix::identity(a.rows())),
          v(IntMatrix::identity(a.cols())),
          v_inv(IntMatrix::identity(a.cols())) {}

    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < s.cols(); ++c) std::swap(s(i, c), s(j, c));
        for (std::size_t r = 0; r < u.rows(); ++r) std::swap(u(r, i), u(r, j));
        for (std::size_t c = 0; c < u_inv.cols(); ++c)
            std::swap(u_inv(i, c), u_inv(j, c));
        det_u = -det_u;
    }
    // row j -= q * row i
    void row_submul(std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < s.cols(); ++c) s(j, c) -= q * s(i, c);
        for (std::size_t r = 0; r < u.rows(); ++r) u(r, i) += q * u(r, j);
        for (std::size_t c = 0; c < u_inv.cols(); ++c)
            u_inv(j, c) -= q * u_inv(i, c);
    }
    void row_negate(std::size_t i) {
        for (std::size_t c = 0; c < s.cols(); ++c) s(i, c) = -s(i, c);
        for (std::size_t r = 0; r < u.rows(); ++r) u(r, i) = -u(r, i);
        for (std::size_t c = 0; c < u_inv.cols(); ++c)
            u_inv(i, c) = -u_inv(i, c);
        det_u = -det_u;
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < s.rows(); ++r) std::swap(s(r, i), s(r, j));
        for (std::size_t c = 0; c < v.cols(); ++c) std::swap(v(i, c), v(j, c));
        for (std::size_t r = 0; r < v_inv.rows(); ++r)
            std::swap(v_inv(r, i), v_inv(r, j));
        det_v = -det_v;
    }
    // col j -= q * col i
    void col_submul(std::size_t i, std::size_t j, const Int& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < s.rows(); ++r) s(r, j) -= q * s(r, i);
        for (std::size_t c = 0; c < v.cols(); ++c) v(i, c) += q * v(j, c);
        for (std::size_t r = 0; r < v_inv.rows(); ++r)
            v_inv(r, j) -= q * v_inv(r, i);
    }
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& a) {
    const std::size_t m = a.rows(), n = a.cols();
    SnfState st(a);
    const std::size_t bound = std::min(m, n);

    for (std::size_t t = 0; t < bound; ++t) {
        // Locate the minimal nonzero entry of the trailing submatrix.
        bool found = false;
        std::size_t pi = t, pj = t;
        Int best;
        for (std::size_t i = t; i < m; ++i) {
            for (std::size_t j = t; j < n; ++j) {
                const Int& x = st.s(i, j);
                if (x == 0) continue;
                Int ax = abs_int(x);
                if (!found || ax < best) {
                    found = true;
                    best = ax;
                    pi = i;
                    pj = j;
                }
            }
        }
        if (!found) break;  // trailing submatrix is zero; zeros come last
        st.row_swap(t, pi);
        st.col_swap(t, pj);

        // Clear row t and column t; remainders become the new pivot.
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (st.s(i, t) == 0) continue;
                Int q = st.s(i, t) / st.s(t, t);
                st.row_submul(t, i, q);
                if (st.s(i, t) != 0) {
                    st.row_swap(t, i);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (st.s(t, j) == 0) continue;
                Int q = st.s(t, j) / st.s(t, t);
                st.col_submul(t, j, q);
                if (st.s(t, j) != 0) {
                    st.col_swap(t, j);
                    clean = false;
                }
            }
            if (!clean) continue;
            // Enforce the divisibility chain: absorb an offending entry
            // into row t and keep reducing.
            for (std::size_t i = t + 1; i < m && clean; ++i) {
                for (std::size_t j = t + 1; j < n && clean; ++j) {
                    if (st.s(i, j) % st.s(t, t) != 0) {
                        st.row_submul(i, t, Int(-1));  // row t += row i
                        clean = false;
                    }
                }
            }
        }
        if (st.s(t, t) < 0) st.row_negate(t);
    }

    SmithDecomposition out;
    out.u = std::move(st.u);
    out.s = std::move(st.s);
    out.v = std::move(st.v);
    out.u_inv = std::move(st.u_inv);
    out.v_inv = std::move(st.v_inv);
    out.det_u = st.det_u;
    out.det_v = st.det_v;
    out.source_rows = m;
    out.source_cols = n;
    return out;
}

std::size_t SmithDecomposition::rank() const {
    std::size_t r = 0;
    const std::size_t bound = std::min(s.rows(), s.cols());
    while (r < bound && s(r, r) != 0) ++r;
    return r;
}

std::vector<Int> SmithDecomposition::diagonal() const {
    const std::size_t bound = std::min(s.rows(), s.cols());
    std::vector<Int> d(bound);
    for (std::size_t i = 0; i < bound; ++i) d[i] = s(i, i);
    return d;
}

// ---------------------------------------------------------------------------
// FgAbGroup

FgAbGroup FgAbGroup::cyclic(Int d) {
    if (d < 0) d = -d;
    if (d == 0) return free_of_rank(1);
    if (d == 1) return trivial();
    return FgAbGroup{0, {std::move(d)}};
}

Int FgAbGroup::torsion_order() const {
    Int p = 1;
    for (const Int& d : invariant_factors) p *= d;
    return p;
}

std::string FgAbGroup::to_string() const {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    else if (free_rank > 1)
        parts.push_back("Z^" + std::to_string(free_rank));
    for (const Int& d : invariant_factors)
        parts.push_back("Z/" + d.str());
    if (parts.empty()) return "0";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out += " (+) " + parts[i];
    return out;
}

// ---------------------------------------------------------------------------
// Cohomology bases

std::vector<Int> CohomologyBasis::normalize_coords(
    const std::vector<Int>& coords) const {
    if (coords.size() != orders.size())
        throw std::invalid_argument("normalize_coords: size mismatch");
    std::vector<Int> out(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i)
        out[i] = orders[i] == 0 ? coords[i] : mod_floor(coords[i], orders[i]);
    return out;
}

std::vector<Int> CohomologyBasis::reduce(const std::vector<Int>& cocycle) const {
    return normalize_coords(class_map.apply(cocycle));
}

CohomologyBasis cohomology_basis(const IntMatrix& d_out, const IntMatrix& d_in) {
    if (d_out.cols() != d_in.rows())
        throw std::invalid_argument(
            "cohomology_basis: cols(d_out) != rows(d_in)");
    if (!(d_out * d_in).is_zero())
        throw CompositionNotZero("cohomology_basis: d_out * d_in != 0");

    const std::size_t n = d_out.cols();
    SmithDecomposition out_snf = smith_normal_form(d_out);
    const std::size_t r = out_snf.rank();
    const std::size_t z = n - r;  // nullity of d_out

    // Kernel basis: trailing columns of v_inv.  Kernel coordinates of a
    // cocycle x are the trailing rows of v * x.
    IntMatrix kernel = out_snf.v_inv.column_slice(r, n);
    IntMatrix kernel_coords = out_snf.v.row_slice(r, n);

    // Image of d_in expressed in kernel coordinates.  Its top r rows
    // vanish because d_out * d_in = 0 and the first r diagonal entries of
    // S are nonzero.
    IntMatrix y = (out_snf.v * d_in).row_slice(r, n);
    SmithDecomposition y_snf = smith_normal_form(y);
    const std::size_t yr = y_snf.rank();

    // Generator i of the quotient corresponds to column i of y_snf.u:
    // order d_i for i < yr (kept only when d_i >= 2), free beyond.
    std::vector<std::size_t> kept;
    std::vector<Int> orders;
    FgAbGroup group;
    for (std::size_t i = 0; i < yr; ++i) {
        const Int& d = y_snf.s(i, i);
        if (d == 1) continue;
        kept.push_back(i);
        orders.push_back(d);
        group.invariant_factors.push_back(d);
    }
    for (std::size_t i = yr; i < z; ++i) {
        kept.push_back(i);
        orders.push_back(0);
    }
    group.free_rank = z - yr;

    IntMatrix gen_kernel_coords(z, kept.size());
    for (std::size_t c = 0; c < kept.size(); ++c)
        for (std::size_t rrow = 0; rrow < z; ++rrow)
            gen_kernel_coords(rrow, c) = y_snf.u(rrow, kept[c]);

    IntMatrix class_rows(kept.size(), z);
    for (std::size_t rw = 0; rw < kept.size(); ++rw)
        for (std::size_t c = 0; c < z; ++c)
            class_rows(rw, c) = y_snf.u_inv(kept[rw], c);

    CohomologyBasis basis;
    basis.group = std::move(group);
    basis.orders = std::move(orders);
    basis.representatives = kernel * gen_kernel_coords;
    basis.class_map = class_rows * kernel_coords;

    // Deterministic orientation: leading entry of each representative
    // positive (negating a generator negates its class-map row).
    for (std::size_t j = 0; j < basis.representatives.cols(); ++j) {
        for (std::size_t i = 0; i < basis.representatives.rows(); ++i) {
            const Int& x = basis.representatives(i, j);
            if (x == 0) continue;
            if (x < 0) {
                for (std::size_t rr = 0; rr < basis.representatives.rows(); ++rr)
                    basis.representatives(rr, j) = -basis.representatives(rr, j);
                for (std::size_t cc = 0; cc < basis.class_map.cols(); ++cc)
                    basis.class_map(j, cc) = -basis.class_map(j, cc);
            }
            break;
        }
    }
    return basis;
}

FgAbGroup cohomology_at(const IntMatrix& d_out, const IntMatrix& d_in) {
    return cohomology_basis(d_out, d_in).group;
}

// ---------------------------------------------------------------------------
// MatrixComplex

MatrixComplex::MatrixComplex()
    : dims_{0}, caches_(std::make_unique<Caches>()) {
    caches_->snf.resize(1);
    caches_->basis.resize(1);
}

MatrixComplex::MatrixComplex(std::vector<std::size_t> dims,
                             std::vector<IntMatrix> diffs)
    : dims_(std::move(dims)), diffs_(std::move(diffs)),
      caches_(std::make_unique<Caches>()) {
    if (dims_.empty()) dims_.push_back(0);
    if (diffs_.size() + 1 != dims_.size())
        throw std::invalid_argument("MatrixComplex: need one differential "
                                    "per consecutive degree pair");
    for (std::size_t k = 0; k < diffs_.size(); ++k) {
        if (diffs_[k].rows() != dims_[k + 1] || diffs_[k].cols() != dims_[k])
            throw std::invalid_argument("MatrixComplex: differential shape");
        if (k > 0 && !(diffs_[k] * diffs_[k - 1]).is_zero())
            throw CompositionNotZero("MatrixComplex: d * d != 0 at degree " +
                                     std::to_string(k - 1));
    }
    caches_->snf.resize(dims_.size());
    caches_->basis.resize(dims_.size());
}

std::size_t MatrixComplex::top_degree() const { return dims_.size() - 1; }

std::size_t MatrixComplex::dim(std::size_t k) const {
    return k < dims_.size() ? dims_[k] : 0;
}

IntMatrix MatrixComplex::differential_out(std::size_t k) const {
    if (k < diffs_.size()) return diffs_[k];
    return IntMatrix::zero(dim(k + 1), dim(k));
}

IntMatrix MatrixComplex::differential_in(std::size_t k) const {
    if (k == 0) return IntMatrix::zero(dim(0), 0);
    return differential_out(k - 1);
}

namespace {

const SmithDecomposition& empty_snf() {
    static const SmithDecomposition snf = smith_normal_form(IntMatrix());
    return snf;
}

const CohomologyBasis& empty_basis() {
    static const CohomologyBasis basis =
        cohomology_basis(IntMatrix(), IntMatrix());
    return basis;
}

}  // namespace

const SmithDecomposition& MatrixComplex::snf_out(std::size_t k) const {
    if (k >= dims_.size()) return empty_snf();
    std::lock_guard<std::mutex> lock(caches_->mutex);
    if (!caches_->snf[k])
        caches_->snf[k] = smith_normal_form(differential_out(k));
    return *caches_->snf[k];
}

const CohomologyBasis& MatrixComplex::basis(std::size_t k) const {
    if (k >= dims_.size()) return empty_basis();
    std::lock_guard<std::mutex> lock(caches_->mutex);
    if (!caches_->basis[k])
        caches_->basis[k] = cohomology_basis(differential_out(k),
                                             differential_in(k));
    return *caches_->basis[k];
}

FgAbGroup MatrixComplex::cohomology(std::size_t k) const {
    return basis(k).group;
}

// ---------------------------------------------------------------------------
// GroupHom

namespace {

// Verify the torsion-respect invariant and reduce torsion coordinates.
IntMatrix normalize_hom_matrix(const FgAbGroup& src, const FgAbGroup& tgt,
                               IntMatrix m) {
    if (m.rows() != tgt.gen_count() || m.cols() != src.gen_count())
        throw std::invalid_argument("GroupHom: matrix shape mismatch");
    const std::size_t tt = tgt.torsion_count();
    for (std::size_t i = 0; i < tt; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = mod_floor(m(i, j), tgt.invariant_factors[i]);
    for (std::size_t j = 0; j < src.torsion_count(); ++j) {
        const Int& d = src.invariant_factors[j];
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Int scaled = d * m(i, j);
            bool ok = i < tt ? (scaled % tgt.invariant_factors[i] == 0)
                             : (scaled == 0);
            if (!ok)
                throw std::invalid_argument(
                    "GroupHom: image of torsion generator violates its order");
        }
    }
    return m;
}

}  // namespace

GroupHom::GroupHom(FgAbGroup src, FgAbGroup tgt, IntMatrix m)
    : source(std::move(src)), target(std::move(tgt)) {
    matrix = normalize_hom_matrix(source, target, std::move(m));
}

GroupHom GroupHom::zero(FgAbGroup src, FgAbGroup tgt) {
    IntMatrix m(tgt.gen_count(), src.gen_count());
    return GroupHom(std::move(src), std::move(tgt), std::move(m));
}

GroupHom GroupHom::identity(FgAbGroup g) {
    IntMatrix m = IntMatrix::identity(g.gen_count());
    FgAbGroup copy = g;
    return GroupHom(std::move(copy), std::move(g), std::move(m));
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
    if (!(f.target == g.source))
        throw std::invalid_argument("compose: middle groups differ");
    return GroupHom(f.source, g.target, g.matrix * f.matrix);
}

bool is_zero_hom(const GroupHom& h) {
    const std::size_t tt = h.target.torsion_count();
    for (std::size_t i = 0; i < h.matrix.rows(); ++i)
        for (std::size_t j = 0; j < h.matrix.cols(); ++j) {
            const Int& x = h.matrix(i, j);
            bool zero = i < tt ? (x % h.target.invariant_factors[i] == 0)
                               : (x == 0);
            if (!zero) return false;
        }
    return true;
}

GroupHom induced_map(const std::vector<IntMatrix>& f_cochain,
                     const MatrixComplex& source, const MatrixComplex& target,
                     std::size_t k) {
    auto f_at = [&](std::size_t j) -> IntMatrix {
        if (j < f_cochain.size()) return f_cochain[j];
        return IntMatrix::zero(target.dim(j), source.dim(j));
    };
    for (std::size_t j = (k == 0 ? 0 : k - 1); j <= k; ++j) {
        IntMatrix lhs = target.differential_out(j) * f_at(j);
        IntMatrix rhs = f_at(j + 1) * source.differential_out(j);
        if (lhs != rhs)
            throw NotAChainMap("induced_map: cochain map does not commute "
                               "with differentials at degree " +
                               std::to_string(j));
    }
    const CohomologyBasis& sb = source.basis(k);
    const CohomologyBasis& tb = target.basis(k);
    IntMatrix m(tb.group.gen_count(), sb.group.gen_count());
    for (std::size_t j = 0; j < sb.group.gen_count(); ++j) {
        std::vector<Int> y = f_at(k).apply(sb.representatives.column(j));
        m.set_column(j, tb.reduce(y));
    }
    return GroupHom(sb.group, tb.group, std::move(m));
}

// ---------------------------------------------------------------------------
// Subgroup lattices and exactness

namespace {

// Relation lattice of a presented group: one column d_i * e_i per torsion
// generator.
IntMatrix relation_columns(const FgAbGroup& g) {
    IntMatrix rel(g.gen_count(), g.torsion_count());
    for (std::size_t i = 0; i < g.torsion_count(); ++i)
        rel(i, i) = g.invariant_factors[i];
    return rel;
}

bool lattice_contains_all(const SmithDecomposition& snf, const IntMatrix& b) {
    for (std::size_t j = 0; j < b.cols(); ++j)
        if (!solve_integer(snf, b.column(j))) return false;
    return true;
}

}  // namespace

bool subgroups_equal(const FgAbGroup& ambient, const IntMatrix& gens_a,
                     const IntMatrix& gens_b) {
    if (gens_a.rows() != ambient.gen_count() ||
        gens_b.rows() != ambient.gen_count())
        throw std::invalid_argument("subgroups_equal: row count mismatch");
    IntMatrix rel = relation_columns(ambient);
    IntMatrix la = gens_a.hcat(rel);
    IntMatrix lb = gens_b.hcat(rel);
    SmithDecomposition sa = smith_normal_form(la);
    SmithDecomposition sb = smith_normal_form(lb);
    return lattice_contains_all(sa, lb) && lattice_contains_all(sb, la);
}

FgAbGroup subgroup_type(const FgAbGroup& ambient, const IntMatrix& gens) {
    IntMatrix rel = relation_columns(ambient);
    IntMatrix lat = gens.hcat(rel);
    SmithDecomposition snf = smith_normal_form(lat);
    const std::size_t r = snf.rank();
    // Lattice basis: first r columns of u scaled by the diagonal.
    IntMatrix basis(ambient.gen_count(), r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < ambient.gen_count(); ++i)
            basis(i, j) = snf.u(i, j) * snf.s(j, j);
    // Express the relations in basis coordinates and take the cokernel.
    SmithDecomposition basis_snf = smith_normal_form(basis);
    IntMatrix x(r, rel.cols());
    for (std::size_t j = 0; j < rel.cols(); ++j) {
        auto sol = solve_integer(basis_snf, rel.column(j));
        if (!sol)
            throw std::logic_error("subgroup_type: relation outside lattice");
        x.set_column(j, *sol);
    }
    return cohomology_at(IntMatrix::zero(0, r), x);
}

bool exactness_check(const GroupHom& f, const GroupHom& g) {
    if (!(f.target == g.source))
        throw std::invalid_argument("exactness_check: f.target != g.source");
    if (!is_zero_hom(compose(g, f)))
        throw CompositionNotZero("exactness_check: g o f != 0");

    const FgAbGroup& mid = f.target;
    const std::size_t n = mid.gen_count();
    IntMatrix rel_b = relation_columns(mid);

    // im(f) as a lattice in the generator coordinates of the middle group.
    IntMatrix image_lat = f.matrix.hcat(rel_b);

    // Preimage of ker(g): x with g(x) = 0, i.e. G x + R_C y = 0 solvable.
    IntMatrix rel_c = relation_columns(g.target);
    IntMatrix stacked = g.matrix.hcat(rel_c);
    IntMatrix full_kernel = kernel_basis(stacked);
    IntMatrix kernel_lat = full_kernel.row_slice(0, n).hcat(rel_b);

    SmithDecomposition si = smith_normal_form(image_lat);
    SmithDecomposition sk = smith_normal_form(kernel_lat);
    return lattice_contains_all(si, kernel_lat) &&
           lattice_contains_all(sk, image_lat);
}

FgAbGroup hom_image_type(const GroupHom& h) {
    return subgroup_type(h.target, h.matrix);
}

FgAbGroup hom_kernel_type(const GroupHom& h) {
    IntMatrix stacked = h.matrix.hcat(relation_columns(h.target));
    IntMatrix preimage =
        kernel_basis(stacked).row_slice(0, h.source.gen_count());
    return subgroup_type(h.source, preimage.hcat(relation_columns(h.source)));
}

GroupHom free_quotient_hom(const FgAbGroup& g) {
    FgAbGroup target = FgAbGroup::free_of_rank(g.free_rank);
    IntMatrix m(g.free_rank, g.gen_count());
    for (std::size_t i = 0; i < g.free_rank; ++i)
        m(i, g.torsion_count() + i) = 1;
    return GroupHom(g, std::move(target), std::move(m));
}

IntMatrix torsion_subgroup_gens(const FgAbGroup& g) {
    IntMatrix m(g.gen_count(), g.torsion_count());
    for (std::size_t i = 0; i < g.torsion_count(); ++i) m(i, i) = 1;
    return m;
}

// ---------------------------------------------------------------------------
// Linear algebra helpers

IntMatrix kernel_basis(const SmithDecomposition& snf) {
    return snf.v_inv.column_slice(snf.rank(), snf.source_cols);
}

IntMatrix kernel_basis(const IntMatrix& a) {
    return kernel_basis(smith_normal_form(a));
}

std::optional<std::vector<Int>> solve_integer(const SmithDecomposition& snf,
                                              const std::vector<Int>& b) {
    if (b.size() != snf.source_rows)
        throw std::invalid_argument("solve_integer: rhs size mismatch");
    std::vector<Int> c = snf.u_inv.apply(b);
    const std::size_t r = snf.rank();
    std::vector<Int> y(snf.source_cols);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < r) {
            if (c[i] % snf.s(i, i) != 0) return std::nullopt;
            y[i] = c[i] / snf.s(i, i);
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return snf.v_inv.apply(y);
}

std::size_t rank_over_q(const IntMatrix& a) {
    IntMatrix w = a;
    const std::size_t m = w.rows(), n = w.cols();
    std::size_t rank = 0;
    Int prev = 1;
    for (std::size_t col = 0; col < n && rank < m; ++col) {
        std::size_t pivot = rank;
        while (pivot < m && w(pivot, col) == 0) ++pivot;
        if (pivot == m) continue;
        if (pivot != rank)
            for (std::size_t j = 0; j < n; ++j)
                std::swap(w(pivot, j), w(rank, j));
        for (std::size_t i = rank + 1; i < m; ++i) {
            for (std::size_t j = col + 1; j < n; ++j)
                w(i, j) = exact_div(
                    w(i, j) * w(rank, col) - w(i, col) * w(rank, j), prev);
            w(i, col) = 0;
        }
        prev = w(rank, col);
        ++rank;
    }
    return rank;
}

Int determinant(const IntMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("determinant: square input required");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix w = a;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k < n - 1; ++k) {
        std::size_t pivot = k;
        while (pivot < n && w(pivot, k) == 0) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w(pivot, j), w(k, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                w(i, j) =
                    exact_div(w(i, j) * w(k, k) - w(i, k) * w(k, j), prev);
        prev = w(k, k);
    }
    return sign > 0 ? w(n - 1, n - 1) : Int(-w(n - 1, n - 1));
}

}  // namespace tdc
