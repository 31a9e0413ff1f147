#include "sparsos/moments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <tuple>

#include "sparsos/error.hpp"

namespace sparsos {

namespace {

std::string element_string(const GroupElement& g) {
  std::string out = "(";
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(g.coords[i]);
  }
  return out + ")";
}

std::string element_compact(const GroupElement& g) {
  std::string out;
  for (std::size_t i = 0; i < g.coords.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(g.coords[i]);
  }
  return out;
}

std::string number(double v) {
  if (v == 0.0) v = 0.0;  // no "-0"
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Complex lookup(const MomentMap& y, const GroupElement& chi) {
  auto it = y.find(chi);
  if (it == y.end()) fail(ErrorKind::kIncompleteMoments, "missing moment y" + element_string(chi));
  return it->second;
}

int position_in(const std::vector<GroupElement>& sorted, const GroupElement& g) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), g);
  if (it == sorted.end() || *it != g) return -1;
  return static_cast<int>(it - sorted.begin());
}

}  // namespace

MomentVector moment_vertex(const GroupSpec& group, const std::set<GroupElement>& characters, const GroupElement& x) {
  if (!group.contains(x)) fail(ErrorKind::kShape, "point outside the group");
  MomentVector out;
  out.group = group;
  for (const auto& chi : characters) {
    if (!group.contains(chi)) fail(ErrorKind::kShape, "character outside the group");
    out.characters.push_back(chi);
    out.values.push_back(group.phase(chi, x).to_complex());
  }
  return out;
}

HermitianMatrix truncated_moment_matrix(const GroupSpec& group, const MomentMap& y, const std::vector<GroupElement>& t) {
  const auto n = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXcd m(n, n);
  double scale = 1.0;
  for (const auto& [chi, v] : y) scale = std::max(scale, std::abs(v));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const GroupElement idx = group.mul(group.inv(t[static_cast<std::size_t>(i)]), t[static_cast<std::size_t>(j)]);
      m(i, j) = lookup(y, idx);
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > kHermitianTolerance * scale) {
        fail(ErrorKind::kConsistency, "moments are not conjugate-symmetric");
      }
    }
  }
  return HermitianMatrix(t, std::move(m));
}

GroupElement verify_involution(const GroupSpec& group, const std::vector<GroupElement>& t, const std::vector<int>& image) {
  if (image.size() != t.size() || t.empty()) fail(ErrorKind::kInvolution, "involution must map T onto itself");
  const auto n = static_cast<int>(t.size());
  for (int i = 0; i < n; ++i) {
    const int j = image[static_cast<std::size_t>(i)];
    if (j < 0 || j >= n) fail(ErrorKind::kInvolution, "involution image out of range");
    if (image[static_cast<std::size_t>(j)] != i) fail(ErrorKind::kInvolution, "sigma is not an involution");
  }
  const GroupElement c = group.mul(t[0], t[static_cast<std::size_t>(image[0])]);
  for (int i = 1; i < n; ++i) {
    const auto& chi = t[static_cast<std::size_t>(i)];
    if (group.mul(chi, t[static_cast<std::size_t>(image[static_cast<std::size_t>(i)])]) != c) {
      fail(ErrorKind::kInvolution, "sigma(chi) chi is not constant at " + element_string(chi));
    }
  }
  return c;
}

std::optional<Involution> find_equalizing_involution(const GroupSpec& group, const std::vector<GroupElement>& t) {
  if (t.empty()) return std::nullopt;
  // c T^-1 = T forces c = chi * chi' for some pair, so c ∈ T·T.
  std::set<GroupElement> candidates;
  for (const auto& a : t) {
    for (const auto& b : t) candidates.insert(group.mul(a, b));
  }
  for (const auto& c : candidates) {
    Involution sigma{c, std::vector<int>(t.size())};
    bool ok = true;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const auto it = std::find(t.begin(), t.end(), group.mul(c, group.inv(t[i])));
      if (it == t.end()) {
        ok = false;
        break;
      }
      sigma.image[i] = static_cast<int>(it - t.begin());
    }
    if (ok) return sigma;
  }
  return std::nullopt;
}

std::pair<std::vector<GroupElement>, Involution> power_cycle_involution(const GroupSpec& base_group,
                                                                        const std::vector<GroupElement>& t,
                                                                        const Involution& sigma, int d) {
  if (base_group.rank() != 1) fail(ErrorKind::kInvalidParameter, "power_cycle_involution needs a cyclic group");
  if (d < 1) fail(ErrorKind::kInvalidParameter, "d must be positive");
  const GroupElement c = verify_involution(base_group, t, sigma.image);
  const int m = base_group.moduli()[0];
  const GroupSpec big = GroupSpec::make({m * d});
  std::vector<GroupElement> lifted;
  for (const auto& k : t) {
    for (int r = 0; r < d; ++r) lifted.push_back(big.reduce({d * k.coords[0] + r}));
  }
  std::sort(lifted.begin(), lifted.end());
  Involution out{big.reduce({d * c.coords[0] + d - 1}), std::vector<int>(lifted.size())};
  for (std::size_t i = 0; i < t.size(); ++i) {
    const int k = t[i].coords[0];
    const int sk = t[static_cast<std::size_t>(sigma.image[i])].coords[0];
    for (int r = 0; r < d; ++r) {
      const int from = position_in(lifted, big.reduce({d * k + r}));
      const int to = position_in(lifted, big.reduce({d * sk + d - r - 1}));
      out.image[static_cast<std::size_t>(from)] = to;
    }
  }
  if (verify_involution(big, lifted, out.image) != out.constant) {
    fail(ErrorKind::kConsistency, "lifted involution constant mismatch");
  }
  return {std::move(lifted), std::move(out)};
}

std::vector<GroupElement> LiftDescription::pins() const {
  std::vector<GroupElement> out{group.identity()};
  for (const auto& s : connection_set) out.push_back(s);
  std::sort(out.begin(), out.end());
  return out;
}

LiftDescription build_lift(const GroupSpec& group, const std::set<GroupElement>& connection_set, const ChordalCover& cover) {
  if (!(cover.group == group)) fail(ErrorKind::kConsistency, "cover lives on a different group");
  std::set<GroupElement> with_identity = connection_set;
  with_identity.insert(group.identity());
  std::set<GroupElement> cover_set = cover.connection_set;
  cover_set.insert(group.identity());
  if (with_identity != cover_set) fail(ErrorKind::kConsistency, "connection set does not match the cover");
  validate_cover(cover);

  LiftDescription lift;
  lift.group = group;
  for (const auto& s : connection_set) {
    if (s != group.identity()) lift.connection_set.insert(s);
  }
  lift.t.assign(cover.fourier_support.begin(), cover.fourier_support.end());
  std::set<GroupElement> vars;
  lift.matrix_map.assign(lift.t.size(), {});
  for (std::size_t i = 0; i < lift.t.size(); ++i) {
    for (const auto& b : lift.t) {
      GroupElement idx = group.mul(group.inv(lift.t[i]), b);
      vars.insert(idx);
      lift.matrix_map[i].push_back(std::move(idx));
    }
  }
  for (const auto& s : lift.connection_set) {
    if (!vars.contains(s)) fail(ErrorKind::kConsistency, "S not contained in T^-1 T");
  }
  lift.variables.assign(vars.begin(), vars.end());
  return lift;
}

LiftDescription real_lift(const LiftDescription& lift, const std::vector<int>& sigma) {
  LiftDescription out = lift;
  out.sigma_constant = verify_involution(lift.group, lift.t, sigma);
  out.sigma = sigma;
  out.mode = LiftMode::kReal;
  return out;
}

LiftDescription trigonometric_lift(int N, int d, LiftMode mode) {
  if (mode == LiftMode::kHermitian) {
    const auto cover = trigonometric_cover(N, d);
    return build_lift(cover.group, degree_set(N, d), cover);
  }
  // Divisibility and range errors come from the Hermitian cover.
  trigonometric_cover(N, d);
  const int m = N / d;
  ChordalCover base;
  if (m == 6 && d == 1) {
    base = hexagon_cover();
  } else if (m == 2) {
    base = power_cycle_cover(2, 1);
  } else {
    base = symmetrized(cycle_cover(m));
  }
  const std::vector<GroupElement> tb(base.fourier_support.begin(), base.fourier_support.end());
  const auto sigma = find_equalizing_involution(base.group, tb);
  if (!sigma) fail(ErrorKind::kInvolution, "symmetric base support without an involution");
  const auto [t_lifted, sigma_lifted] = power_cycle_involution(base.group, tb, *sigma, d);
  const auto cover = strong_product_cover(base, d);
  auto lift = build_lift(cover.group, degree_set(N, d), cover);
  if (lift.t != t_lifted) fail(ErrorKind::kConsistency, "lifted support differs from the product cover");
  return real_lift(lift, sigma_lifted.image);
}

LiftDescription cut_polytope_lift(int n, LiftMode mode) {
  const auto cover = halfcube_cover(n);
  auto lift = build_lift(cover.group, halfcube_connection_set(n), cover);
  if (mode == LiftMode::kHermitian) return lift;
  std::vector<int> identity(lift.size());
  for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
  return real_lift(lift, identity);
}

GroupElement representative(const GroupSpec& group, const GroupElement& chi) {
  return std::min(chi, group.inv(chi));
}

std::vector<RealUnknown> real_unknowns(const LiftDescription& lift) {
  const auto& g = lift.group;
  std::set<GroupElement> reps;
  for (const auto& v : lift.variables) reps.insert(representative(g, v));
  std::vector<RealUnknown> out;
  for (const auto& r : reps) {
    if (r != g.identity()) out.push_back({r, false});
  }
  for (const auto& r : reps) {
    if (g.inv(r) != r) out.push_back({r, true});
  }
  return out;
}

namespace {

struct UnknownIndex {
  std::map<RealUnknown, int> position;

  explicit UnknownIndex(const std::vector<RealUnknown>& unknowns) {
    for (std::size_t i = 0; i < unknowns.size(); ++i) position[unknowns[i]] = static_cast<int>(i);
  }

  // Re y_chi as an affine form; y_1 = 1.
  AffineForm re(const GroupSpec& g, const GroupElement& chi) const {
    AffineForm f;
    if (chi == g.identity()) {
      f.constant = 1.0;
      return f;
    }
    f.terms[position.at({representative(g, chi), false})] = 1.0;
    return f;
  }

  // Im y_chi; zero for self-inverse chi, sign flip on the conjugate.
  AffineForm im(const GroupSpec& g, const GroupElement& chi) const {
    AffineForm f;
    const GroupElement r = representative(g, chi);
    if (g.inv(r) == r) return f;
    f.terms[position.at({r, true})] = (r == chi) ? 1.0 : -1.0;
    return f;
  }
};

AffineForm combine(const AffineForm& a, double sa, const AffineForm& b, double sb) {
  AffineForm out;
  out.constant = sa * a.constant + sb * b.constant;
  for (const auto& [k, v] : a.terms) out.terms[k] += sa * v;
  for (const auto& [k, v] : b.terms) out.terms[k] += sb * v;
  std::erase_if(out.terms, [](const auto& kv) { return kv.second == 0.0; });
  return out;
}

}  // namespace

std::vector<std::vector<AffineForm>> symbolic_matrix(const LiftDescription& lift) {
  const auto unknowns = real_unknowns(lift);
  const UnknownIndex index(unknowns);
  const auto& g = lift.group;
  const std::size_t n = lift.size();
  if (lift.mode == LiftMode::kReal) {
    if (lift.sigma.size() != n) fail(ErrorKind::kInvolution, "real lift without an involution");
    std::vector<std::vector<AffineForm>> out(n, std::vector<AffineForm>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const GroupElement s_conj = g.inv(lift.t[static_cast<std::size_t>(lift.sigma[i])]);
      for (std::size_t j = 0; j < n; ++j) {
        const GroupElement b = g.mul(s_conj, lift.t[j]);
        out[i][j] = combine(index.re(g, lift.matrix_map[i][j]), 1.0, index.im(g, b), -1.0);
      }
    }
    return out;
  }
  std::vector<std::vector<AffineForm>> out(2 * n, std::vector<AffineForm>(2 * n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = lift.matrix_map[i][j];
      const AffineForm re = index.re(g, a);
      const AffineForm im = index.im(g, a);
      out[i][j] = re;
      out[n + i][n + j] = re;
      out[i][n + j] = im;
      out[n + i][j] = combine(im, -1.0, AffineForm{}, 0.0);
    }
  }
  return out;
}

std::vector<double> unknown_values(const LiftDescription& lift, const MomentMap& y) {
  std::vector<double> out;
  for (const auto& u : real_unknowns(lift)) {
    const Complex v = lookup(y, u.index);
    out.push_back(u.imaginary ? v.imag() : v.real());
  }
  return out;
}

Eigen::MatrixXd lift_matrix_at(const LiftDescription& lift, const MomentMap& y) {
  const auto forms = symbolic_matrix(lift);
  const auto x = unknown_values(lift, y);
  const auto n = static_cast<Eigen::Index>(forms.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& f = forms[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      double v = f.constant;
      for (const auto& [k, c] : f.terms) v += c * x[static_cast<std::size_t>(k)];
      m(i, j) = v;
    }
  }
  return m;
}

MomentMap moments_of_measure(const GroupSpec& group, const std::vector<double>& weights, const std::set<GroupElement>& indices) {
  if (weights.size() != group.order()) fail(ErrorKind::kMeasure, "one weight per group element expected");
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) fail(ErrorKind::kMeasure, "weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) fail(ErrorKind::kMeasure, "weights must sum to 1");
  MomentMap y;
  for (const auto& chi : indices) {
    if (!group.contains(chi)) fail(ErrorKind::kShape, "character outside the group");
    const std::size_t c = group.index_of(chi);
    Complex sum = 0.0;
    for (std::size_t x = 0; x < weights.size(); ++x) {
      if (weights[x] != 0.0) sum += weights[x] * group.phase_index(c, x).to_complex();
    }
    y[chi] = sum;
  }
  y[group.identity()] = 1.0;  // exact pin
  return y;
}

MomentMap feasible_point_from_measure(const LiftDescription& lift, const std::vector<double>& weights) {
  std::set<GroupElement> indices(lift.variables.begin(), lift.variables.end());
  indices.insert(lift.connection_set.begin(), lift.connection_set.end());
  indices.insert(lift.group.identity());
  return moments_of_measure(lift.group, weights, indices);
}

double pairing_check(const FourierFunction& f, const MomentMap& y) {
  Complex total = 0.0;
  for (const auto& [chi, c] : f.coefficients()) total += c * lookup(y, chi);
  return total.real();
}

HermitianMatrix complete_moment_matrix(const ChordalCover& cover, const MomentMap& y) {
  const auto& g = cover.group;
  const auto n = static_cast<Eigen::Index>(g.order());
  PartialMatrix x;
  x.labels = g.elements();
  x.values = Eigen::MatrixXcd::Zero(n, n);
  x.specified = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(n, n, false);
  const Complex one = lookup(y, g.identity());
  for (Eigen::Index i = 0; i < n; ++i) {
    x.values(i, i) = one.real();
    x.specified(i, i) = true;
  }
  // On a clique C translated by chi_C the entries are y at
  // conj(chi_C eta) chi_C eta' = conj(eta) eta'.
  for (const auto& [u, v] : cover.cover.edges()) {
    const auto ui = static_cast<std::size_t>(u);
    const auto vi = static_cast<std::size_t>(v);
    const Complex val = lookup(y, g.element(g.quotient_index(ui, vi)));
    x.values(u, v) = val;
    x.values(v, u) = std::conj(val);
    x.specified(u, v) = true;
    x.specified(v, u) = true;
  }
  return group_average(chordal_complete(x, cover.cover), g);
}

namespace {

// Column layout of an SDPA export.
struct SdpaLayout {
  std::vector<RealUnknown> unknowns;
  std::vector<int> column;                 // unknown -> SDPA variable (1-based) or 0 if substituted
  std::vector<double> pinned_value;        // value for substituted or paired unknowns
  std::vector<bool> pinned;
  bool paired = false;
  int identity_column = 0;                 // paired mode only
  int m = 0;
  std::vector<std::string> names;
};

SdpaLayout make_layout(const LiftDescription& lift, const SdpaOptions& options) {
  SdpaLayout L;
  L.unknowns = real_unknowns(lift);
  L.paired = options.paired_pins;
  const auto& g = lift.group;
  const std::size_t k = L.unknowns.size();
  L.column.assign(k, 0);
  L.pinned_value.assign(k, 0.0);
  L.pinned.assign(k, false);
  if (options.point) {
    for (const auto& s : lift.connection_set) {
      const GroupElement r = representative(g, s);
      Complex v;
      if (auto it = options.point->find(r); it != options.point->end()) {
        v = it->second;
      } else {
        v = std::conj(lookup(*options.point, g.inv(r)));
      }
      for (std::size_t i = 0; i < k; ++i) {
        if (L.unknowns[i].index != r) continue;
        L.pinned[i] = true;
        L.pinned_value[i] = L.unknowns[i].imaginary ? v.imag() : v.real();
      }
    }
  }
  auto name_of = [](const RealUnknown& u) {
    return std::string(u.imaginary ? "im[" : "re[") + element_compact(u.index) + "]";
  };
  if (L.paired) {
    L.identity_column = ++L.m;
    L.names.push_back("re[" + element_compact(g.identity()) + "]");
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (L.pinned[i] && !L.paired) continue;
    L.column[i] = ++L.m;
    L.names.push_back(name_of(L.unknowns[i]));
  }
  return L;
}

std::string mode_name(LiftMode mode) { return mode == LiftMode::kReal ? "real" : "hermitian"; }

}  // namespace

std::vector<std::string> sdpa_variable_names(const LiftDescription& lift, const SdpaOptions& options) {
  return make_layout(lift, options).names;
}

std::vector<double> sdpa_point(const LiftDescription& lift, const SdpaOptions& options, const MomentMap& y) {
  const SdpaLayout L = make_layout(lift, options);
  const auto values = unknown_values(lift, y);
  std::vector<double> x(static_cast<std::size_t>(L.m), 0.0);
  if (L.paired) x[static_cast<std::size_t>(L.identity_column - 1)] = lookup(y, lift.group.identity()).real();
  for (std::size_t i = 0; i < L.unknowns.size(); ++i) {
    if (L.column[i] > 0) x[static_cast<std::size_t>(L.column[i] - 1)] = values[i];
  }
  return x;
}

std::string export_sdpa(const LiftDescription& lift, const SdpaOptions& options) {
  if (lift.mode == LiftMode::kReal && lift.sigma.size() != lift.size()) {
    fail(ErrorKind::kExport, "real lift without a verified involution");
  }
  if (lift.t.empty()) fail(ErrorKind::kExport, "empty lift");
  const SdpaLayout L = make_layout(lift, options);
  const auto forms = symbolic_matrix(lift);
  const int n = static_cast<int>(forms.size());
  const auto& g = lift.group;

  // entries[k] : (block, i, j) -> value, k = 0 is F_0.
  std::vector<std::map<std::tuple<int, int, int>, double>> entries(static_cast<std::size_t>(L.m) + 1);
  auto put = [&](int k, int block, int i, int j, double v) {
    if (v == 0.0) return;
    entries[static_cast<std::size_t>(k)][{block, i, j}] += v;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const auto& f = forms[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      double constant = 0.0;
      if (L.paired) {
        put(L.identity_column, 1, i + 1, j + 1, f.constant);
      } else {
        constant += f.constant;
      }
      for (const auto& [u, c] : f.terms) {
        const auto ui = static_cast<std::size_t>(u);
        if (L.column[ui] > 0) {
          put(L.column[ui], 1, i + 1, j + 1, c);
        } else {
          constant += c * L.pinned_value[ui];
        }
      }
      put(0, 1, i + 1, j + 1, -constant);
    }
  }

  int pair_rows = 0;
  if (L.paired) {
    // x - v >= 0 and v - x >= 0 for every pinned variable.
    auto pin = [&](int column, double value) {
      ++pair_rows;
      put(column, 2, pair_rows, pair_rows, 1.0);
      put(0, 2, pair_rows, pair_rows, value);
      ++pair_rows;
      put(column, 2, pair_rows, pair_rows, -1.0);
      put(0, 2, pair_rows, pair_rows, -value);
    };
    pin(L.identity_column, 1.0);
    for (std::size_t i = 0; i < L.unknowns.size(); ++i) {
      if (L.pinned[i]) pin(L.column[i], L.pinned_value[i]);
    }
  }

  std::vector<double> c(static_cast<std::size_t>(L.m), 0.0);
  if (options.objective) {
    const UnknownIndex index(L.unknowns);
    if (!(options.objective->group() == g)) fail(ErrorKind::kExport, "objective lives on a different group");
    for (const auto& [chi, coef] : options.objective->coefficients()) {
      if (chi == g.identity()) {
        if (L.paired) c[static_cast<std::size_t>(L.identity_column - 1)] += coef.real();
        continue;
      }
      const GroupElement r = representative(g, chi);
      if (!index.position.contains({r, false})) {
        fail(ErrorKind::kExport, "objective uses y" + element_string(chi) + " outside T^-1 T");
      }
      // Re(coef * y) = Re coef Re y - Im coef Im y.
      const AffineForm re = index.re(g, chi);
      const AffineForm im = index.im(g, chi);
      for (const auto& [u, v] : re.terms) {
        const int col = L.column[static_cast<std::size_t>(u)];
        if (col > 0) c[static_cast<std::size_t>(col - 1)] += coef.real() * v;
      }
      for (const auto& [u, v] : im.terms) {
        const int col = L.column[static_cast<std::size_t>(u)];
        if (col > 0) c[static_cast<std::size_t>(col - 1)] -= coef.imag() * v;
      }
    }
  }

  std::ostringstream out;
  out << "* sparsos lift: group " << g.to_string() << ", |T| = " << lift.size() << ", mode " << mode_name(lift.mode)
      << ", pins " << (L.paired ? "paired" : "eliminated") << "\n";
  out << "* variables:";
  for (const auto& name : L.names) out << " " << name;
  out << "\n";
  out << L.m << "\n";
  out << (L.paired ? 2 : 1) << "\n";
  out << n;
  if (L.paired) out << " " << -pair_rows;
  out << "\n";
  for (std::size_t k = 0; k < c.size(); ++k) out << (k > 0 ? " " : "") << number(c[k]);
  out << "\n";
  for (std::size_t k = 0; k < entries.size(); ++k) {
    for (const auto& [key, v] : entries[k]) {
      if (v == 0.0) continue;
      const auto& [block, i, j] = key;
      out << k << " " << block << " " << i << " " << j << " " << number(v) << "\n";
    }
  }
  return out.str();
}

std::vector<Eigen::MatrixXd> SdpaProblem::slack(const std::vector<double>& x) const {
  if (static_cast<int>(x.size()) != m) fail(ErrorKind::kShape, "SDPA point has the wrong length");
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    Eigen::MatrixXd s = -matrices[0][b];
    for (int k = 1; k <= m; ++k) s += x[static_cast<std::size_t>(k - 1)] * matrices[static_cast<std::size_t>(k)][b];
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

[[noreturn]] void format_error(std::size_t line, const std::string& what) {
  fail(ErrorKind::kFormat, "SDPA line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

int parse_int(const std::string& tok, std::size_t line) {
  int v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) format_error(line, "expected an integer, got '" + tok + "'");
  return v;
}

double parse_double(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const char* begin = tok.data();
  if (!tok.empty() && tok[0] == '+') ++begin;
  const auto res = std::from_chars(begin, tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    format_error(line, "expected a finite number, got '" + tok + "'");
  }
  return v;
}

}  // namespace

SdpaProblem parse_sdpa(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      lines.push_back(line);
    }
  }
  std::size_t pos = 0;
  while (pos < lines.size() && !lines[pos].empty() && (lines[pos][0] == '"' || lines[pos][0] == '*')) ++pos;

  auto header = [&](const char* what) -> std::vector<std::string> {
    if (pos >= lines.size()) format_error(pos + 1, std::string("missing ") + what);
    return tokens_of(lines[pos++]);
  };

  SdpaProblem p;
  auto t = header("m");
  if (t.size() != 1) format_error(pos, "expected m alone on its line");
  p.m = parse_int(t[0], pos);
  if (p.m < 0) format_error(pos, "m must be nonnegative");

  t = header("nBlocks");
  if (t.size() != 1) format_error(pos, "expected nBlocks alone on its line");
  const int nblocks = parse_int(t[0], pos);
  if (nblocks < 1) format_error(pos, "nBlocks must be positive");

  t = header("block sizes");
  if (static_cast<int>(t.size()) != nblocks) format_error(pos, "expected " + std::to_string(nblocks) + " block sizes");
  for (const auto& tok : t) {
    const int s = parse_int(tok, pos);
    if (s == 0) format_error(pos, "block size must be nonzero");
    p.block_sizes.push_back(s);
  }

  t = header("objective vector");
  if (static_cast<int>(t.size()) != p.m) format_error(pos, "expected " + std::to_string(p.m) + " objective entries");
  for (const auto& tok : t) p.c.push_back(parse_double(tok, pos));

  p.matrices.assign(static_cast<std::size_t>(p.m) + 1, {});
  for (auto& blocks : p.matrices) {
    for (int s : p.block_sizes) blocks.push_back(Eigen::MatrixXd::Zero(std::abs(s), std::abs(s)));
  }
  std::set<std::tuple<int, int, int, int>> seen;
  for (; pos < lines.size(); ++pos) {
    const std::size_t lineno = pos + 1;
    t = tokens_of(lines[pos]);
    if (t.empty()) {
      if (pos + 1 == lines.size()) break;
      format_error(lineno, "blank line inside the entry list");
    }
    if (t.size() != 5) format_error(lineno, "expected 'matno blkno i j value'");
    const int k = parse_int(t[0], lineno);
    const int b = parse_int(t[1], lineno);
    const int i = parse_int(t[2], lineno);
    const int j = parse_int(t[3], lineno);
    const double v = parse_double(t[4], lineno);
    if (k < 0 || k > p.m) format_error(lineno, "matrix number out of range");
    if (b < 1 || b > nblocks) format_error(lineno, "block number out of range");
    const int size = p.block_sizes[static_cast<std::size_t>(b - 1)];
    if (i < 1 || j < 1 || i > std::abs(size) || j > std::abs(size)) format_error(lineno, "index out of range");
    if (i > j) format_error(lineno, "entry below the diagonal");
    if (size < 0 && i != j) format_error(lineno, "off-diagonal entry in a diagonal block");
    if (!seen.insert({k, b, i, j}).second) format_error(lineno, "duplicate entry");
    auto& mat = p.matrices[static_cast<std::size_t>(k)][static_cast<std::size_t>(b - 1)];
    mat(i - 1, j - 1) = v;
    mat(j - 1, i - 1) = v;
  }
  return p;
}

}  // namespace sparsos
