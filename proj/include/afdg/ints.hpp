#ifndef AFDG_INTS_HPP
#define AFDG_INTS_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace afdg {

using Int = boost::multiprecision::cpp_int;
using IntVector = std::vector<Int>;

/// Binomial coefficient with the combinatorial convention:
/// C(a, b) = 0 whenever b < 0 or b > a.
Int binomial(long a, long b);

Int pow2(std::size_t k);

std::string to_string(const IntVector& v);

/// Dense matrix of arbitrary-precision integers, row-major.
class IntMatrix {
public:
  IntMatrix() : rows_(0), cols_(0) {}
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> data);

  static IntMatrix identity(std::size_t n);
  /// Row-major initializer, e.g. from_rows({{1,0},{1,1}}).
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  IntVector column(std::size_t j) const;
  IntVector row_vector(std::size_t i) const;

  IntMatrix transposed() const;

  /// this * other (exact).
  IntMatrix mul(const IntMatrix& other) const;
  /// this * v (exact).
  IntVector mul_vec(const IntVector& v) const;

  /// Direct sum with the k-by-k identity appended on the diagonal.
  IntMatrix plus_identity_block(std::size_t k) const;

  /// Column rank over the rationals, computed with fraction-free
  /// (Bareiss) elimination.
  std::size_t rank() const;

  /// Exact, with a structural fast path: when every column owns a row
  /// whose only nonzero entry is in that column (splitting-type
  /// matrices), independence follows without elimination.
  bool full_column_rank() const;

  bool operator==(const IntMatrix& other) const = default;

  std::string to_string() const;

private:
  std::size_t rows_, cols_;
  std::vector<Int> data_;
};

IntVector vec_add(const IntVector& a, const IntVector& b);
IntVector vec_sub(const IntVector& a, const IntVector& b);
bool vec_is_zero(const IntVector& v);
bool vec_is_nonneg(const IntVector& v);

} // namespace afdg

#endif
