#pragma once

// Exact arithmetic for attack enumeration.
//
// At the half-translation length both propagators are G / sqrt(d) with G a
// matrix of Gaussian integers, so every amplitude reachable by the protocol
// is a Gaussian integer times a power of 1/sqrt(d) and every Born weight is
// rational.

#include <compare>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace fqkd {

class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(std::int64_t numerator, std::int64_t denominator = 1);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// "3/8", "-1/2", "0", "1".
  std::string to_string() const;

  friend Fraction operator+(const Fraction& a, const Fraction& b);
  friend Fraction operator-(const Fraction& a, const Fraction& b);
  friend Fraction operator*(const Fraction& a, const Fraction& b);
  friend Fraction operator/(const Fraction& a, const Fraction& b);
  Fraction& operator+=(const Fraction& other) { return *this = *this + other; }
  Fraction& operator*=(const Fraction& other) { return *this = *this * other; }

  friend bool operator==(const Fraction&, const Fraction&) = default;
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

struct GaussianInteger {
  std::int64_t re = 0;
  std::int64_t im = 0;

  std::int64_t norm() const { return re * re + im * im; }

  friend GaussianInteger operator+(GaussianInteger a, GaussianInteger b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianInteger operator*(GaussianInteger a, GaussianInteger b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(GaussianInteger, GaussianInteger) = default;
};

/// Amplitude vector (g_1, ..., g_d) / sqrt(d)^scale_power.
struct ExactState {
  int dim = 2;
  std::vector<GaussianInteger> numerators;
  int scale_power = 0;

  static ExactState mode(int dim, int k);

  /// |g_k|^2 / d^scale_power for mode k (1-based).
  Fraction probability(int k) const;
  /// Decimal amplitude of mode k, for display and cross-checks.
  std::complex<double> amplitude(int k) const;
};

/// Gaussian-integer matrix G with half_translation(dim) = G / sqrt(dim).
///
/// G is recovered from the floating-point propagator and rejected unless
/// the recovery is exact to kExactTolerance.
class ExactHalfTranslation {
 public:
  static const ExactHalfTranslation& get(int dim);

  int dim() const { return dim_; }
  GaussianInteger entry(int row, int col) const { return entries_[row * dim_ + col]; }
  ExactState apply(const ExactState& state) const;
  /// Column k (1-based) as an exact state: the k-th phi-basis vector.
  ExactState column(int k) const;

 private:
  explicit ExactHalfTranslation(int dim);

  int dim_;
  std::vector<GaussianInteger> entries_;
};

/// Human-readable form of g / sqrt(d)^p: "1/2", "-i/2", "1/sqrt(2)", "0".
std::string describe_amplitude(GaussianInteger numerator, int dim, int scale_power);

}  // namespace fqkd
