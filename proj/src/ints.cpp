#include "afdg/ints.hpp"

#include "afdg/errors.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace afdg {

Int binomial(long a, long b) {
  if (b < 0 || b > a) return 0;
  if (b > a - b) b = a - b;
  Int result = 1;
  for (long i = 1; i <= b; ++i) {
    result *= (a - b + i);
    result /= i; // exact: result is C(a-b+i, i) after each step
  }
  return result;
}

Int pow2(std::size_t k) {
  Int one = 1;
  return one << k;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ']';
  return os.str();
}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<Int> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw std::invalid_argument("IntMatrix: data size does not match shape");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows[0].size() : 0;
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    if (rows[i].size() != c)
      throw std::invalid_argument("IntMatrix: ragged rows");
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntVector IntMatrix::column(std::size_t j) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

IntVector IntMatrix::row_vector(std::size_t i) const {
  IntVector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = at(i, j);
  return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& other) const {
  if (cols_ != other.rows_)
    throw std::invalid_argument("IntMatrix::mul: shape mismatch");
  IntMatrix result(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j)
        result.at(i, j) += a * other.at(k, j);
    }
  return result;
}

IntVector IntMatrix::mul_vec(const IntVector& v) const {
  if (cols_ != v.size())
    throw std::invalid_argument("IntMatrix::mul_vec: shape mismatch");
  IntVector result(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j) == 0) continue;
      result[i] += at(i, j) * v[j];
    }
  return result;
}

IntMatrix IntMatrix::plus_identity_block(std::size_t k) const {
  IntMatrix m(rows_ + k, cols_ + k);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
  for (std::size_t i = 0; i < k; ++i) m.at(rows_ + i, cols_ + i) = 1;
  return m;
}

std::size_t IntMatrix::rank() const {
  // Bareiss fraction-free elimination; all divisions are exact.
  IntMatrix a = *this;
  std::size_t rank = 0;
  Int prev_pivot = 1;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t pivot = row;
    while (pivot < rows_ && a.at(pivot, col) == 0) ++pivot;
    if (pivot == rows_) continue;
    if (pivot != row)
      for (std::size_t j = 0; j < cols_; ++j)
        std::swap(a.at(pivot, j), a.at(row, j));
    for (std::size_t i = row + 1; i < rows_; ++i) {
      for (std::size_t j = col + 1; j < cols_; ++j)
        a.at(i, j) =
            (a.at(row, col) * a.at(i, j) - a.at(i, col) * a.at(row, j)) /
            prev_pivot;
      a.at(i, col) = 0;
    }
    prev_pivot = a.at(row, col);
    ++row;
    ++rank;
  }
  return rank;
}

bool IntMatrix::full_column_rank() const {
  if (cols_ > rows_) return false;
  std::vector<bool> witnessed(cols_, false);
  std::size_t found = 0;
  for (std::size_t i = 0; i < rows_ && found < cols_; ++i) {
    std::size_t nonzero_col = cols_;
    bool unique = false;
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j) == 0) continue;
      if (nonzero_col == cols_) {
        nonzero_col = j;
        unique = true;
      } else {
        unique = false;
        break;
      }
    }
    if (unique && nonzero_col != cols_ && !witnessed[nonzero_col]) {
      witnessed[nonzero_col] = true;
      ++found;
    }
  }
  if (found == cols_) return true;
  return rank() == cols_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < cols_; ++j) {
      if (j) os << ',';
      os << at(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IntVector vec_add(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("vec_add: length mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

IntVector vec_sub(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("vec_sub: length mismatch");
  IntVector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

bool vec_is_zero(const IntVector& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

bool vec_is_nonneg(const IntVector& v) {
  for (const Int& x : v)
    if (x < 0) return false;
  return true;
}

const char* errc_name(errc code) {
  switch (code) {
    case errc::level_out_of_range: return "LevelOutOfRange";
    case errc::vertex_out_of_range: return "VertexOutOfRange";
    case errc::depth_too_shallow: return "DepthTooShallow";
    case errc::diagram_mismatch: return "DiagramMismatch";
    case errc::invalid_diagram: return "InvalidDiagram";
    case errc::invalid_path: return "InvalidPath";
    case errc::conditions_violated: return "ConditionsViolated";
    case errc::basis_assumption_unverified: return "BasisAssumptionUnverified";
    case errc::level_unavailable: return "LevelUnavailable";
    case errc::index_out_of_range: return "IndexOutOfRange";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::divisibility_violated: return "DivisibilityViolated";
    case errc::undefined_on_cylinder: return "UndefinedOnCylinder";
    case errc::unknown_generator: return "UnknownGenerator";
    case errc::parse_error: return "ParseError";
    case errc::usage_error: return "UsageError";
  }
  return "Error";
}

} // namespace afdg
