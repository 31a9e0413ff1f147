#include "sparsos/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sparsos/error.hpp"

namespace sparsos {

namespace {

int mod(std::int64_t a, int n) {
  auto r = static_cast<int>(a % n);
  return r < 0 ? r + n : r;
}

}  // namespace

Complex Phase::to_complex() const { return unit_root(numerator, denominator); }

Complex unit_root(std::int64_t k, std::int64_t L) {
  k %= L;
  if (k < 0) k += L;
  if ((4 * k) % L == 0) {
    switch ((4 * k) / L) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(L);
  return std::polar(1.0, angle);
}

GroupSpec GroupSpec::make(std::vector<int> moduli) {
  if (moduli.empty()) fail(ErrorKind::kInvalidSpec, "group needs at least one cyclic factor");
  GroupSpec g;
  std::int64_t exponent = 1;
  std::size_t order = 1;
  for (int n : moduli) {
    if (n < 1) fail(ErrorKind::kInvalidSpec, "modulus must be >= 1, got " + std::to_string(n));
    exponent = std::lcm(exponent, static_cast<std::int64_t>(n));
    order *= static_cast<std::size_t>(n);
  }
  g.moduli_ = std::move(moduli);
  g.order_ = order;
  g.exponent_ = exponent;
  g.weights_.reserve(g.moduli_.size());
  for (int n : g.moduli_) g.weights_.push_back(exponent / n);
  return g;
}

GroupSpec make_group(std::vector<int> moduli) { return GroupSpec::make(std::move(moduli)); }

bool GroupSpec::contains(const GroupElement& g) const {
  if (g.coords.size() != moduli_.size()) return false;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    if (g.coords[j] < 0 || g.coords[j] >= moduli_[j]) return false;
  }
  return true;
}

GroupElement GroupSpec::identity() const { return {std::vector<int>(moduli_.size(), 0)}; }

GroupElement GroupSpec::element(std::size_t canonical_index) const {
  std::vector<int> coords(moduli_.size());
  for (std::size_t j = moduli_.size(); j-- > 0;) {
    const auto n = static_cast<std::size_t>(moduli_[j]);
    coords[j] = static_cast<int>(canonical_index % n);
    canonical_index /= n;
  }
  return {std::move(coords)};
}

std::size_t GroupSpec::index_of(const GroupElement& g) const {
  std::size_t index = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    index = index * static_cast<std::size_t>(moduli_[j]) + static_cast<std::size_t>(g.coords[j]);
  }
  return index;
}

GroupElement GroupSpec::reduce(std::vector<int> coords) const {
  if (coords.size() != moduli_.size()) {
    fail(ErrorKind::kShape, "element has " + std::to_string(coords.size()) +
                                " coordinates, group has rank " + std::to_string(moduli_.size()));
  }
  for (std::size_t j = 0; j < coords.size(); ++j) coords[j] = mod(coords[j], moduli_[j]);
  return {std::move(coords)};
}

std::vector<GroupElement> GroupSpec::elements() const {
  std::vector<GroupElement> out;
  out.reserve(order_);
  for (std::size_t i = 0; i < order_; ++i) out.push_back(element(i));
  return out;
}

GroupElement GroupSpec::mul(const GroupElement& a, const GroupElement& b) const {
  std::vector<int> c(moduli_.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = (a.coords[j] + b.coords[j]) % moduli_[j];
  return {std::move(c)};
}

GroupElement GroupSpec::inv(const GroupElement& a) const {
  std::vector<int> c(moduli_.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = (moduli_[j] - a.coords[j]) % moduli_[j];
  return {std::move(c)};
}

std::size_t GroupSpec::mul_index(std::size_t a, std::size_t b) const {
  std::size_t result = 0;
  std::size_t place = 1;
  for (std::size_t j = moduli_.size(); j-- > 0;) {
    const auto n = static_cast<std::size_t>(moduli_[j]);
    result += ((a % n + b % n) % n) * place;
    a /= n;
    b /= n;
    place *= n;
  }
  return result;
}

std::size_t GroupSpec::inv_index(std::size_t a) const {
  std::size_t result = 0;
  std::size_t place = 1;
  for (std::size_t j = moduli_.size(); j-- > 0;) {
    const auto n = static_cast<std::size_t>(moduli_[j]);
    result += ((n - a % n) % n) * place;
    a /= n;
    place *= n;
  }
  return result;
}

std::size_t GroupSpec::quotient_index(std::size_t a, std::size_t b) const {
  std::size_t result = 0;
  std::size_t place = 1;
  for (std::size_t j = moduli_.size(); j-- > 0;) {
    const auto n = static_cast<std::size_t>(moduli_[j]);
    result += ((b % n + n - a % n) % n) * place;
    a /= n;
    b /= n;
    place *= n;
  }
  return result;
}

Phase GroupSpec::phase(const GroupElement& chi, const GroupElement& x) const {
  std::int64_t k = 0;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    k += (static_cast<std::int64_t>(chi.coords[j]) * x.coords[j] % moduli_[j]) * weights_[j];
  }
  return {k % exponent_, exponent_};
}

Phase GroupSpec::phase_index(std::size_t chi, std::size_t x) const {
  std::int64_t k = 0;
  for (std::size_t j = moduli_.size(); j-- > 0;) {
    const auto n = static_cast<std::size_t>(moduli_[j]);
    k += static_cast<std::int64_t>(((chi % n) * (x % n)) % n) * weights_[j];
    chi /= n;
    x /= n;
  }
  return {k % exponent_, exponent_};
}

std::string GroupSpec::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < moduli_.size(); ++j) {
    if (j > 0) out += "x";
    out += "Z" + std::to_string(moduli_[j]);
  }
  return out;
}

Complex char_eval(const GroupSpec& group, const GroupElement& chi, const GroupElement& x) {
  return group.phase(chi, x).to_complex();
}

GroupElement char_mul(const GroupSpec& group, const GroupElement& a, const GroupElement& b) {
  return group.mul(a, b);
}

GroupElement char_inv(const GroupSpec& group, const GroupElement& a) { return group.inv(a); }

FourierFunction::FourierFunction(GroupSpec group, std::map<GroupElement, Complex> coeffs)
    : group_(std::move(group)) {
  for (auto& [chi, c] : coeffs) {
    if (!group_.contains(chi)) fail(ErrorKind::kShape, "coefficient index outside the group");
    if (c != Complex{}) coeffs_.emplace(chi, c);
  }
}

Complex FourierFunction::coefficient(const GroupElement& chi) const {
  auto it = coeffs_.find(chi);
  return it == coeffs_.end() ? Complex{} : it->second;
}

void FourierFunction::set(const GroupElement& chi, Complex value) {
  if (!group_.contains(chi)) fail(ErrorKind::kShape, "coefficient index outside the group");
  if (value == Complex{}) {
    coeffs_.erase(chi);
  } else {
    coeffs_[chi] = value;
  }
}

void FourierFunction::add(const GroupElement& chi, Complex value) {
  set(chi, coefficient(chi) + value);
}

std::vector<Complex> FourierFunction::dense_coefficients() const {
  std::vector<Complex> dense(group_.order());
  for (const auto& [chi, c] : coeffs_) dense[group_.index_of(chi)] = c;
  return dense;
}

std::vector<Complex> FourierFunction::values() const {
  const std::size_t order = group_.order();
  std::vector<Complex> out(order);
  for (const auto& [chi, c] : coeffs_) {
    const std::size_t ci = group_.index_of(chi);
    for (std::size_t x = 0; x < order; ++x) out[x] += c * group_.phase_index(ci, x).to_complex();
  }
  return out;
}

double FourierFunction::max_coefficient_magnitude() const {
  double m = 0.0;
  for (const auto& [chi, c] : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

FourierFunction fourier_transform(const GroupSpec& group, std::span<const Complex> values) {
  const std::size_t order = group.order();
  if (values.size() != order) {
    fail(ErrorKind::kShape, "expected " + std::to_string(order) + " values, got " +
                                std::to_string(values.size()));
  }
  std::vector<Complex> dense(order);
  double largest = 0.0;
  for (std::size_t chi = 0; chi < order; ++chi) {
    Complex acc{};
    for (std::size_t x = 0; x < order; ++x) {
      acc += std::conj(group.phase_index(chi, x).to_complex()) * values[x];
    }
    dense[chi] = acc / static_cast<double>(order);
    largest = std::max(largest, std::abs(dense[chi]));
  }
  std::map<GroupElement, Complex> coeffs;
  const double cutoff = kFourierDropTolerance * largest;
  for (std::size_t chi = 0; chi < order; ++chi) {
    if (std::abs(dense[chi]) > cutoff) coeffs.emplace(group.element(chi), dense[chi]);
  }
  return FourierFunction(group, std::move(coeffs));
}

Complex evaluate(const FourierFunction& f, const GroupElement& x) {
  Complex acc{};
  for (const auto& [chi, c] : f.coefficients()) acc += c * char_eval(f.group(), chi, x);
  return acc;
}

std::set<GroupElement> support(const FourierFunction& f, double tol) {
  std::set<GroupElement> out;
  for (const auto& [chi, c] : f.coefficients()) {
    if (std::abs(c) > tol) out.insert(chi);
  }
  return out;
}

bool is_real(const FourierFunction& f, double tol) {
  const double scale = std::max(1.0, f.max_coefficient_magnitude());
  for (const auto& [chi, c] : f.coefficients()) {
    const Complex mirror = f.coefficient(f.group().inv(chi));
    if (std::abs(mirror - std::conj(c)) > tol * scale) return false;
  }
  return true;
}

GroupMinimum min_on_group(const FourierFunction& f, double tol) {
  if (!is_real(f, tol)) fail(ErrorKind::kNotReal, "function is not real-valued");
  const auto vals = f.values();
  std::size_t best = 0;
  for (std::size_t x = 1; x < vals.size(); ++x) {
    if (vals[x].real() < vals[best].real()) best = x;
  }
  return {vals[best].real(), f.group().element(best)};
}

FourierFunction delta_function(const GroupSpec& group, const GroupElement& y) {
  FourierFunction f(group);
  const double scale = 1.0 / static_cast<double>(group.order());
  for (const auto& chi : group.elements()) f.set(chi, std::conj(char_eval(group, chi, y)) * scale);
  return f;
}

FourierFunction squared_modulus(const FourierFunction& h) {
  // |h|^2 = h * conj(h); conj(h) has coefficient conj(c_chi) at chi^{-1}.
  const auto& group = h.group();
  FourierFunction out(group);
  for (const auto& [a, ca] : h.coefficients()) {
    for (const auto& [b, cb] : h.coefficients()) {
      out.add(group.mul(group.inv(a), b), std::conj(ca) * cb);
    }
  }
  return out;
}

FourierFunction translate(const FourierFunction& h, const GroupElement& chi) {
  const auto& group = h.group();
  std::map<GroupElement, Complex> shifted;
  for (const auto& [eta, c] : h.coefficients()) shifted.emplace(group.mul(chi, eta), c);
  return FourierFunction(group, std::move(shifted));
}

}  // namespace sparsos
