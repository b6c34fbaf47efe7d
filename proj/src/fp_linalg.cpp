#include "tdc/fp_linalg.hpp"

#include <stdexcept>

namespace tdc {

namespace {

long long mod_pos(long long x, long long p) {
    long long r = x % p;
    return r < 0 ? r + p : r;
}

long long fp_inverse(long long a, long long p) {
    // extended Euclid; a nonzero mod p
    long long t = 0, new_t = 1, r = p, new_r = a % p;
    while (new_r != 0) {
        long long q = r / new_r;
        long long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw std::invalid_argument("fp_inverse: not invertible");
    return mod_pos(t, p);
}

struct Echelon {
    FpMatrix m;                       // row echelon, pivots normalized to 1
    std::vector<std::size_t> pivots;  // pivot column per pivot row
};

Echelon row_echelon(FpMatrix w) {
    const long long p = w.p();
    const std::size_t m = w.rows(), n = w.cols();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        while (piv < m && w(piv, col) == 0) ++piv;
        if (piv == m) continue;
        for (std::size_t j = 0; j < n; ++j) std::swap(w(piv, j), w(row, j));
        long long inv = fp_inverse(w(row, col), p);
        for (std::size_t j = col; j < n; ++j)
            w(row, j) = (w(row, j) * inv) % p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || w(i, col) == 0) continue;
            long long f = w(i, col);
            for (std::size_t j = col; j < n; ++j)
                w(i, j) = mod_pos(w(i, j) - f * w(row, j), p);
        }
        pivots.push_back(col);
        ++row;
    }
    return Echelon{std::move(w), std::move(pivots)};
}

}  // namespace

bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

FpMatrix::FpMatrix(long long p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {
    if (p < 2 || p >= (1LL << 31))
        throw std::invalid_argument("FpMatrix: modulus out of range");
}

FpMatrix FpMatrix::from_int(const IntMatrix& m, long long p) {
    FpMatrix out(p, m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            Int r = m(i, j) % p;
            if (r < 0) r += p;
            out(i, j) = r.convert_to<long long>();
        }
    return out;
}

FpMatrix FpMatrix::identity(long long p, std::size_t n) {
    FpMatrix out(p, n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
    return out;
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
    if (cols_ != rhs.rows_ || p_ != rhs.p_)
        throw std::invalid_argument("FpMatrix: product mismatch");
    FpMatrix out(p_, rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            long long a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) = (out(i, j) + a * rhs(k, j)) % p_;
        }
    return out;
}

std::vector<long long> FpMatrix::apply(const std::vector<long long>& x) const {
    if (x.size() != cols_)
        throw std::invalid_argument("FpMatrix: apply mismatch");
    std::vector<long long> out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            out[i] = (out[i] + (*this)(i, j) * mod_pos(x[j], p_)) % p_;
    return out;
}

bool FpMatrix::is_zero() const {
    for (long long x : a_)
        if (x != 0) return false;
    return true;
}

std::size_t fp_rank(FpMatrix a) { return row_echelon(std::move(a)).pivots.size(); }

FpMatrix fp_kernel_basis(const FpMatrix& a) {
    const long long p = a.p();
    const std::size_t n = a.cols();
    Echelon e = row_echelon(a);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : e.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    FpMatrix out(p, n, free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t f = free_cols[k];
        out(f, k) = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r)
            out(e.pivots[r], k) = mod_pos(-e.m(r, f), p);
    }
    return out;
}

std::optional<std::vector<long long>> fp_solve(const FpMatrix& a,
                                               const std::vector<long long>& b) {
    if (b.size() != a.rows())
        throw std::invalid_argument("fp_solve: rhs size mismatch");
    const long long p = a.p();
    FpMatrix aug(p, a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
        aug(i, a.cols()) = mod_pos(b[i], p);
    }
    Echelon e = row_echelon(std::move(aug));
    std::vector<long long> x(a.cols(), 0);
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == a.cols()) return std::nullopt;  // inconsistent
        x[e.pivots[r]] = e.m(r, a.cols());
    }
    return x;
}

FpCohomology::FpCohomology(const FpMatrix& d_out, const FpMatrix& d_in) {
    const long long p = d_out.p();
    if (d_out.cols() != d_in.rows())
        throw std::invalid_argument("FpCohomology: shape mismatch");
    const std::size_t n = d_out.cols();

    // Kernel basis vectors are free-column indicators, so kernel
    // coordinates of a cocycle are just its entries at the free columns.
    Echelon eo = row_echelon(d_out);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : eo.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    const std::size_t z = free_cols.size();

    FpMatrix kernel(p, n, z);
    for (std::size_t k = 0; k < z; ++k) {
        kernel(free_cols[k], k) = 1;
        for (std::size_t r = 0; r < eo.pivots.size(); ++r)
            kernel(eo.pivots[r], k) = mod_pos(-eo.m(r, free_cols[k]), p);
    }
    FpMatrix kernel_coords(p, z, n);
    for (std::size_t k = 0; k < z; ++k) kernel_coords(k, free_cols[k]) = 1;

    // Image of d_in in kernel coordinates, then a complement basis from
    // the non-pivot coordinates of its row space.
    FpMatrix y = kernel_coords * d_in;
    FpMatrix yt(p, y.cols(), z);
    for (std::size_t i = 0; i < z; ++i)
        for (std::size_t j = 0; j < y.cols(); ++j) yt(j, i) = y(i, j);
    Echelon ey = row_echelon(std::move(yt));
    std::vector<bool> captured(z, false);
    for (std::size_t c : ey.pivots) captured[c] = true;
    std::vector<std::size_t> rep_coords;
    for (std::size_t c = 0; c < z; ++c)
        if (!captured[c]) rep_coords.push_back(c);
    const std::size_t h = rep_coords.size();

    FpMatrix reps(p, n, h);
    for (std::size_t k = 0; k < h; ++k)
        for (std::size_t i = 0; i < n; ++i) reps(i, k) = kernel(i, rep_coords[k]);

    // Reduce kernel coordinates modulo the image row space (subtract
    // v[pivot] times the matching echelon row), then read off the
    // complement coordinates.
    FpMatrix m_reduce = FpMatrix::identity(p, z);
    for (std::size_t r = 0; r < ey.pivots.size(); ++r) {
        std::size_t pc = ey.pivots[r];
        for (std::size_t i = 0; i < z; ++i)
            m_reduce(i, pc) = mod_pos(m_reduce(i, pc) - ey.m(r, i), p);
    }
    FpMatrix select(p, h, z);
    for (std::size_t k = 0; k < h; ++k) select(k, rep_coords[k]) = 1;

    reps_ = std::move(reps);
    class_map_ = select * m_reduce * kernel_coords;
}

std::vector<long long> FpCohomology::reduce(
    const std::vector<long long>& cocycle) const {
    return class_map_.apply(cocycle);
}

}  // namespace tdc
