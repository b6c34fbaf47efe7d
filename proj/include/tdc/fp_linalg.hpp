#ifndef TDC_FP_LINALG_HPP
#define TDC_FP_LINALG_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "tdc/abelian.hpp"

/**
 * Dense Gaussian elimination over a prime field F_p (p < 2^31).  Field
 * coefficient cohomology never goes through Smith normal form; it is
 * plain elimination on the same integer matrices reduced mod p.
 */
namespace tdc {

bool is_prime(long long p);

class FpMatrix {
  public:
    FpMatrix() : p_(2), rows_(0), cols_(0) {}
    FpMatrix(long long p, std::size_t rows, std::size_t cols);
    static FpMatrix from_int(const IntMatrix& m, long long p);
    static FpMatrix identity(long long p, std::size_t n);

    long long p() const { return p_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    long long& operator()(std::size_t r, std::size_t c) {
        return a_[r * cols_ + c];
    }
    long long operator()(std::size_t r, std::size_t c) const {
        return a_[r * cols_ + c];
    }

    FpMatrix operator*(const FpMatrix& rhs) const;
    std::vector<long long> apply(const std::vector<long long>& x) const;
    bool is_zero() const;
    bool operator==(const FpMatrix& other) const = default;

  private:
    long long p_;
    std::size_t rows_, cols_;
    std::vector<long long> a_;
};

std::size_t fp_rank(FpMatrix a);
/** Kernel basis as columns; each basis vector marks one free column. */
FpMatrix fp_kernel_basis(const FpMatrix& a);
std::optional<std::vector<long long>> fp_solve(const FpMatrix& a,
                                               const std::vector<long long>& b);

/**
 * ker(d_out)/im(d_in) over F_p with generator bookkeeping, the field
 * counterpart of CohomologyBasis.
 */
class FpCohomology {
  public:
    FpCohomology(const FpMatrix& d_out, const FpMatrix& d_in);

    std::size_t dimension() const { return reps_.cols(); }
    const FpMatrix& representatives() const { return reps_; }
    /** Class coordinates of a cocycle (must lie in ker d_out). */
    std::vector<long long> reduce(const std::vector<long long>& cocycle) const;
    const FpMatrix& class_map() const { return class_map_; }

  private:
    FpMatrix reps_;
    FpMatrix class_map_;
};

}  // namespace tdc

#endif
