#include "fqkd/exact.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "fqkd/constants.hpp"
#include "fqkd/error.hpp"
#include "fqkd/quantum.hpp"

namespace fqkd {

// ---------------------------------------------------------------------------
// Fraction

Fraction::Fraction(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) {
    throw ContractViolation("fraction with zero denominator");
  }
  if (denominator < 0) {
    numerator = -numerator;
    denominator = -denominator;
  }
  const std::int64_t g = std::gcd(numerator, denominator);
  num_ = numerator / g;
  den_ = denominator / g;
}

std::string Fraction::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Fraction operator+(const Fraction& a, const Fraction& b) {
  const std::int64_t l = std::lcm(a.den_, b.den_);
  return Fraction(a.num_ * (l / a.den_) + b.num_ * (l / b.den_), l);
}

Fraction operator-(const Fraction& a, const Fraction& b) {
  return a + Fraction(-b.num_, b.den_);
}

Fraction operator*(const Fraction& a, const Fraction& b) {
  // Cross-reduce first to keep intermediates small.
  const std::int64_t g1 = std::gcd(a.num_, b.den_);
  const std::int64_t g2 = std::gcd(b.num_, a.den_);
  return Fraction((a.num_ / g1) * (b.num_ / g2), (a.den_ / g2) * (b.den_ / g1));
}

Fraction operator/(const Fraction& a, const Fraction& b) {
  if (b.num_ == 0) {
    throw ContractViolation("fraction division by zero");
  }
  return a * Fraction(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
  return (a.num_ * b.den_) <=> (b.num_ * a.den_);
}

// ---------------------------------------------------------------------------
// ExactState

namespace {

std::int64_t ipow(std::int64_t base, int exponent) {
  std::int64_t result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

}  // namespace

ExactState ExactState::mode(int dim, int k) {
  require_supported_dim(dim);
  if (k < 1 || k > dim) {
    throw ContractViolation("mode index outside [1, dim]");
  }
  ExactState state;
  state.dim = dim;
  state.numerators.assign(dim, GaussianInteger{});
  state.numerators[k - 1] = {1, 0};
  return state;
}

Fraction ExactState::probability(int k) const {
  return Fraction(numerators.at(k - 1).norm(), ipow(dim, scale_power));
}

std::complex<double> ExactState::amplitude(int k) const {
  const GaussianInteger g = numerators.at(k - 1);
  const double scale = std::pow(std::sqrt(static_cast<double>(dim)), -scale_power);
  return {static_cast<double>(g.re) * scale, static_cast<double>(g.im) * scale};
}

// ---------------------------------------------------------------------------
// ExactHalfTranslation

ExactHalfTranslation::ExactHalfTranslation(int dim) : dim_(dim), entries_(dim * dim) {
  const UnitaryMatrix& u = half_translation(dim);
  const double root = std::sqrt(static_cast<double>(dim));
  for (int r = 0; r < dim; ++r) {
    for (int c = 0; c < dim; ++c) {
      const Complex scaled = u(r, c) * root;
      const GaussianInteger g{std::llround(scaled.real()), std::llround(scaled.imag())};
      const Complex back{static_cast<double>(g.re), static_cast<double>(g.im)};
      if (std::abs(scaled - back) > kExactTolerance) {
        throw ContractViolation("half-translation is not a scaled Gaussian-integer matrix");
      }
      entries_[r * dim + c] = g;
    }
  }
}

const ExactHalfTranslation& ExactHalfTranslation::get(int dim) {
  static const ExactHalfTranslation qubit(2);
  static const ExactHalfTranslation ququart(4);
  require_supported_dim(dim);
  return dim == 2 ? qubit : ququart;
}

ExactState ExactHalfTranslation::apply(const ExactState& state) const {
  if (state.dim != dim_) {
    throw ContractViolation("exact apply: dimension mismatch");
  }
  ExactState out;
  out.dim = dim_;
  out.scale_power = state.scale_power + 1;
  out.numerators.assign(dim_, GaussianInteger{});
  for (int r = 0; r < dim_; ++r) {
    for (int c = 0; c < dim_; ++c) {
      out.numerators[r] = out.numerators[r] + entry(r, c) * state.numerators[c];
    }
  }
  return out;
}

ExactState ExactHalfTranslation::column(int k) const {
  return apply(ExactState::mode(dim_, k));
}

// ---------------------------------------------------------------------------
// Display

std::string describe_amplitude(GaussianInteger g, int dim, int scale_power) {
  if (g.re == 0 && g.im == 0) return "0";

  // sqrt(dim)^p = integer_part * sqrt(dim)^(odd ? 1 : 0), unless dim is a
  // perfect square.
  const auto root = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(dim))));
  std::int64_t den = 1;
  bool radical = false;
  if (root * root == dim) {
    den = ipow(root, scale_power);
  } else {
    den = ipow(dim, scale_power / 2);
    radical = (scale_power % 2) != 0;
  }
  const std::int64_t common = std::gcd(std::gcd(std::abs(g.re), std::abs(g.im)), den);
  const std::int64_t re = g.re / common;
  const std::int64_t im = g.im / common;
  den /= common;

  std::string numerator;
  if (im == 0) {
    numerator = std::to_string(re);
  } else if (re == 0) {
    numerator = im == 1 ? "i" : (im == -1 ? "-i" : std::to_string(im) + "i");
  } else {
    numerator = "(" + std::to_string(re) + (im > 0 ? "+" : "-") +
                (std::abs(im) == 1 ? "" : std::to_string(std::abs(im))) + "i)";
  }

  std::string denominator;
  if (radical) {
    const std::string sqrt_term = "sqrt(" + std::to_string(dim) + ")";
    denominator = den == 1 ? sqrt_term : std::to_string(den) + "*" + sqrt_term;
  } else if (den != 1) {
    denominator = std::to_string(den);
  }
  return denominator.empty() ? numerator : numerator + "/" + denominator;
}

}  // namespace fqkd
