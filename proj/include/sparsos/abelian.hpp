#pragma once

#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace sparsos {

using Complex = std::complex<double>;

/// An element of a product of cyclic groups, one coordinate per factor.
///
/// The groups handled here are self-dual, so the same type indexes both group
/// elements and characters.
struct GroupElement {
  std::vector<int> coords;

  auto operator<=>(const GroupElement&) const = default;
  bool operator==(const GroupElement&) const = default;
};

/// Exact phase k/L of a character value exp(2*pi*i*k/L), with 0 <= k < L.
struct Phase {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;

  bool operator==(const Phase&) const = default;
  Complex to_complex() const;
};

/// Z_{n_1} x ... x Z_{n_k}. Elements are enumerated in mixed-radix
/// lexicographic order: the first coordinate is the most significant digit.
class GroupSpec {
 public:
  static GroupSpec make(std::vector<int> moduli);

  const std::vector<int>& moduli() const { return moduli_; }
  std::size_t rank() const { return moduli_.size(); }
  std::size_t order() const { return order_; }
  /// lcm of the moduli; every phase is a multiple of 1/exponent().
  std::int64_t exponent() const { return exponent_; }

  bool contains(const GroupElement& g) const;
  GroupElement identity() const;
  GroupElement element(std::size_t canonical_index) const;
  std::size_t index_of(const GroupElement& g) const;
  /// Reduces arbitrary integer coordinates into range.
  GroupElement reduce(std::vector<int> coords) const;
  std::vector<GroupElement> elements() const;

  GroupElement mul(const GroupElement& a, const GroupElement& b) const;
  GroupElement inv(const GroupElement& a) const;

  // Index-level arithmetic for the hot loops (Gram matrices, averaging).
  std::size_t mul_index(std::size_t a, std::size_t b) const;
  std::size_t inv_index(std::size_t a) const;
  /// Index of inv(a) * b.
  std::size_t quotient_index(std::size_t a, std::size_t b) const;

  Phase phase(const GroupElement& chi, const GroupElement& x) const;
  Phase phase_index(std::size_t chi, std::size_t x) const;

  bool operator==(const GroupSpec& other) const { return moduli_ == other.moduli_; }

  std::string to_string() const;

 private:
  std::vector<int> moduli_;
  std::vector<std::int64_t> weights_;  // exponent / n_j
  std::size_t order_ = 1;
  std::int64_t exponent_ = 1;
};

GroupSpec make_group(std::vector<int> moduli);

/// exp(2*pi*i * sum_j chi_j x_j / n_j).
Complex char_eval(const GroupSpec& group, const GroupElement& chi, const GroupElement& x);
GroupElement char_mul(const GroupSpec& group, const GroupElement& a, const GroupElement& b);
GroupElement char_inv(const GroupSpec& group, const GroupElement& a);

/// exp(2*pi*i*k/L) with exact values at multiples of a quarter turn.
Complex unit_root(std::int64_t k, std::int64_t L);

/// A function on G stored through its (sparse) Fourier coefficients,
/// f(x) = sum_chi coeff(chi) chi(x).
class FourierFunction {
 public:
  explicit FourierFunction(GroupSpec group) : group_(std::move(group)) {}
  FourierFunction(GroupSpec group, std::map<GroupElement, Complex> coeffs);

  const GroupSpec& group() const { return group_; }
  const std::map<GroupElement, Complex>& coefficients() const { return coeffs_; }

  Complex coefficient(const GroupElement& chi) const;
  /// Overwrites a coefficient; zero values erase the entry.
  void set(const GroupElement& chi, Complex value);
  void add(const GroupElement& chi, Complex value);

  /// Dense coefficient vector in canonical order.
  std::vector<Complex> dense_coefficients() const;
  /// All |G| values in canonical order.
  std::vector<Complex> values() const;

  double max_coefficient_magnitude() const;
  bool operator==(const FourierFunction&) const = default;

 private:
  GroupSpec group_;
  std::map<GroupElement, Complex> coeffs_;
};

/// Relative drop tolerance applied by fourier_transform.
inline constexpr double kFourierDropTolerance = 1e-10;

FourierFunction fourier_transform(const GroupSpec& group, std::span<const Complex> values);
Complex evaluate(const FourierFunction& f, const GroupElement& x);
std::set<GroupElement> support(const FourierFunction& f, double tol = 0.0);
bool is_real(const FourierFunction& f, double tol = 1e-10);

struct GroupMinimum {
  double value;
  GroupElement argmin;
};

/// Exhaustive minimum of the real part; throws kNotReal unless is_real(f, tol).
GroupMinimum min_on_group(const FourierFunction& f, double tol = 1e-10);

/// Delta function at y: coefficient conj(chi(y))/|G| on every character.
FourierFunction delta_function(const GroupSpec& group, const GroupElement& y);

/// |h|^2 as a Fourier function (convolution of coefficients).
FourierFunction squared_modulus(const FourierFunction& h);

/// Pointwise product chi * h (shifts the coefficients by chi).
FourierFunction translate(const FourierFunction& h, const GroupElement& chi);

}  // namespace sparsos
