#include "afdg/models.hpp"

#include <sstream>

namespace afdg {

Dyadic Dyadic::of(Int numerator, std::size_t exponent) {
  while (exponent > 0 && numerator % 2 == 0) {
    numerator /= 2;
    --exponent;
  }
  if (numerator == 0) exponent = 0;
  return Dyadic{std::move(numerator), exponent};
}

std::string Dyadic::to_string() const {
  std::ostringstream os;
  os << numerator;
  if (exponent > 0) os << "/" << pow2(exponent);
  return os.str();
}

XminFunction XminFunction::of(IntVector coefficients) {
  while (!coefficients.empty() && coefficients.back() == 0)
    coefficients.pop_back();
  return XminFunction{std::move(coefficients)};
}

IntVector XminFunction::padded(std::size_t length) const {
  if (coefficients.size() > length)
    raise(errc::length_mismatch, "function does not fit in " +
                                     std::to_string(length) + " coordinates");
  IntVector v = coefficients;
  v.resize(length);
  return v;
}

DiagramPtr make_car_diagram(std::size_t levels) {
  std::vector<IntMatrix> mats;
  for (std::size_t n = 0; n < levels; ++n) {
    IntMatrix m(1, 1);
    m.at(0, 0) = 2;
    mats.push_back(std::move(m));
  }
  return BratteliDiagram::make(std::move(mats));
}

DiagramPtr make_gicar_diagram(std::size_t levels) {
  std::vector<IntMatrix> mats;
  for (std::size_t n = 0; n < levels; ++n) {
    IntMatrix m(n + 1, n + 2);
    for (std::size_t i = 0; i <= n; ++i) {
      m.at(i, i) = 1;
      m.at(i, i + 1) = 1;
    }
    mats.push_back(std::move(m));
  }
  return BratteliDiagram::make(std::move(mats));
}

namespace {

DiagramPtr make_splitting_diagram(std::size_t levels, long multiplicity) {
  std::vector<IntMatrix> mats;
  std::size_t width = 1;
  for (std::size_t n = 0; n < levels; ++n) {
    IntMatrix m(width, 2 * width);
    for (std::size_t i = 0; i < width; ++i) {
      m.at(i, 2 * i) = multiplicity;
      m.at(i, 2 * i + 1) = multiplicity;
    }
    mats.push_back(std::move(m));
    width *= 2;
  }
  return BratteliDiagram::make(std::move(mats));
}

IntMatrix splitting_matrix(std::size_t level, long multiplicity) {
  std::size_t width = std::size_t{1} << level;
  IntMatrix c(2 * width, width);
  for (std::size_t i = 0; i < width; ++i) {
    c.at(2 * i, i) = multiplicity;
    c.at(2 * i + 1, i) = multiplicity;
  }
  return c;
}

} // namespace

DiagramPtr make_cantor_diagram(std::size_t levels) {
  return make_splitting_diagram(levels, 1);
}

DiagramPtr make_hybrid_diagram(std::size_t levels) {
  return make_splitting_diagram(levels, 2);
}

DirectLimitGroup car_group() {
  IntMatrix two(1, 1);
  two.at(0, 0) = 2;
  return DirectLimitGroup({two}, IntVector{1},
                          DirectLimitGroup::Extension::RepeatLast);
}

Dyadic car_value(const LimitElement& e) {
  if (e.vector.size() != 1)
    raise(errc::length_mismatch, "CAR elements have one coordinate");
  return Dyadic::of(e.vector[0], e.level);
}

DirectLimitGroup cantor_group(std::size_t levels) {
  std::vector<IntMatrix> mats;
  for (std::size_t n = 0; n < levels; ++n)
    mats.push_back(splitting_matrix(n, 1));
  return DirectLimitGroup(std::move(mats), IntVector{1});
}

namespace {

// Coarsest representation of a locally constant function given on the
// 2^n leaf cylinders: merge sibling pairs while they agree.
template <class Value>
std::vector<Value> coarsest(std::vector<Value> values) {
  bool merged = true;
  while (merged && values.size() > 1 && values.size() % 2 == 0) {
    merged = true;
    for (std::size_t i = 0; i + 1 < values.size(); i += 2)
      if (!(values[i] == values[i + 1])) {
        merged = false;
        break;
      }
    if (merged) {
      std::vector<Value> half;
      for (std::size_t i = 0; i < values.size(); i += 2)
        half.push_back(values[i]);
      values = std::move(half);
    }
  }
  return values;
}

} // namespace

IntVector cantor_value(const LimitElement& e) {
  return coarsest(e.vector);
}

DirectLimitGroup hybrid_group() {
  return DirectLimitGroup({splitting_matrix(0, 2)}, IntVector{1},
                          DirectLimitGroup::Extension::Callback,
                          [](std::size_t n) { return splitting_matrix(n, 2); });
}

std::vector<Dyadic> hybrid_value(const LimitElement& e) {
  std::vector<Dyadic> values;
  values.reserve(e.vector.size());
  for (const Int& a : e.vector) values.push_back(Dyadic::of(a, e.level));
  return coarsest(std::move(values));
}

DirectLimitGroup gicar_group() {
  auto step = [](std::size_t n) {
    IntMatrix c(n + 2, n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      c.at(i, i) = 1;
      c.at(i + 1, i) = 1;
    }
    return c;
  };
  return DirectLimitGroup({step(0)}, IntVector{1},
                          DirectLimitGroup::Extension::Callback, step);
}

IntMatrix gicar_step_matrix(std::size_t n) {
  IntMatrix m(n + 2, n + 2);
  for (std::size_t i = 0; i < n + 2; ++i) {
    m.at(i, i) = 1;
    if (i + 1 < n + 2) m.at(i + 1, i) = 1;
  }
  return m;
}

IntMatrix gicar_step_inverse(std::size_t n) {
  IntMatrix m(n + 2, n + 2);
  for (std::size_t i = 0; i < n + 2; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      m.at(i, j) = ((i - j) % 2 == 0) ? 1 : -1;
  return m;
}

IntMatrix gicar_basis_change(std::size_t n) {
  // [A_{0,1}^{-1} + I_{n-1}] ... [A_{n-2,n-1}^{-1} + I_1] A_{n-1,n}^{-1};
  // the empty product at n = 0 is the identity.
  if (n == 0) return IntMatrix::identity(1);
  IntMatrix a = gicar_step_inverse(0).plus_identity_block(n - 1);
  for (std::size_t k = 1; k < n; ++k)
    a = a.mul(gicar_step_inverse(k).plus_identity_block(n - 1 - k));
  return a;
}

IntVector gicar_binomial_column(std::size_t n, std::size_t r) {
  if (r < 1 || r > n + 1)
    raise(errc::index_out_of_range,
          "column " + std::to_string(r) + " of a size-" +
              std::to_string(n + 1) + " matrix");
  IntVector v(n + 1);
  for (std::size_t j = r; j <= n + 1; ++j) {
    Int c = binomial(static_cast<long>(n + 1 - r), static_cast<long>(j - r));
    v[j - 1] = ((j - r) % 2 == 0) ? c : -c;
  }
  return v;
}

XminFunction gicar_phi(std::size_t n, const IntVector& alpha) {
  if (alpha.size() != n + 1)
    raise(errc::length_mismatch,
          "phi at level " + std::to_string(n) + " expects " +
              std::to_string(n + 1) + " coordinates");
  return XminFunction::of(gicar_basis_change(n).mul_vec(alpha));
}

bool gicar_cone_member(std::size_t n, const IntVector& beta) {
  if (beta.size() != n + 1)
    raise(errc::length_mismatch,
          "cone test at level " + std::to_string(n) + " expects " +
              std::to_string(n + 1) + " coordinates");
  for (std::size_t k = 0; k <= n; ++k) {
    Int sum = 0;
    for (std::size_t l = 0; l <= k; ++l)
      sum += binomial(static_cast<long>(n - l), static_cast<long>(k - l)) *
             beta[l];
    if (sum < 0) return false;
  }
  return true;
}

IntVector gicar_recover_alpha(std::size_t n, const IntVector& beta) {
  if (beta.size() != n + 1)
    raise(errc::length_mismatch,
          "recovery at level " + std::to_string(n) + " expects " +
              std::to_string(n + 1) + " coordinates");
  IntVector alpha(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t l = 0; l <= k; ++l)
      alpha[k] += binomial(static_cast<long>(n - l), static_cast<long>(k - l)) *
                  beta[l];
  return alpha;
}

} // namespace afdg
