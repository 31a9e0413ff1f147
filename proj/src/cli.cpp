#include "sparsos/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "sparsos/certify.hpp"
#include "sparsos/covers.hpp"
#include "sparsos/error.hpp"
#include "sparsos/io.hpp"
#include "sparsos/moments.hpp"

namespace sparsos {

namespace {

constexpr double kDefaultVerifyTolerance = 1e-8;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kFormat, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) fail(ErrorKind::kFormat, "cannot write '" + path + "'");
  file << text;
}

double tolerance_from_env(double fallback) {
  const char* env = std::getenv("SPARSOS_TOL");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    fail(ErrorKind::kInvalidParameter, std::string("SPARSOS_TOL must be a positive number, got '") + env + "'");
  }
  return v;
}

std::string fixed(double v, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string element_list_text(const std::set<GroupElement>& elements, const GroupSpec& group) {
  std::vector<std::string> parts;
  if (group.rank() == 1) {
    // Signed representatives for cyclic groups, in increasing order.
    const int n = group.moduli()[0];
    std::vector<int> signed_values;
    for (const auto& g : elements) signed_values.push_back(2 * g.coords[0] > n ? g.coords[0] - n : g.coords[0]);
    std::sort(signed_values.begin(), signed_values.end());
    for (int v : signed_values) parts.push_back(std::to_string(v));
  } else {
    for (const auto& g : elements) {
      std::string p = "(";
      for (std::size_t i = 0; i < g.coords.size(); ++i) p += (i ? "," : "") + std::to_string(g.coords[i]);
      parts.push_back(p + ")");
    }
  }
  std::string out = "{";
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? ", " : "") + parts[i];
  return out + "}";
}

struct Options {
  std::string output;

  // cover
  int n = 0;
  int d = 1;
  std::string group;
  std::string support;

  // certify / verify
  std::string function;
  std::string cover;
  std::string certificate;
  bool autocover = false;
  bool real = false;
  double tol = 0.0;

  // lift
  std::string polytope;
  int big_n = 0;
  std::string format = "json";
  bool paired = false;

  // bench
  int max_d = 8;
};

int cover_cycle(const Options& o, std::ostream& out, std::ostream& err) {
  const ChordalCover c = trigonometric_cover(o.n, o.d);
  emit(dump_canonical(to_json(c)), o.output, out);
  const double bound = 3.0 * o.d * std::log2(static_cast<double>(o.n) / o.d);
  err << "|T| = " << c.fourier_support.size() << ", T = " << element_list_text(c.fourier_support, c.group)
      << ", bound 3d*log2(N/d) = " << fixed(bound, 2) << "\n";
  return kExitOk;
}

int cover_halfcube(const Options& o, std::ostream& out, std::ostream& err) {
  const ChordalCover c = halfcube_cover(o.n);
  emit(dump_canonical(to_json(c)), o.output, out);
  err << "|T| = " << c.fourier_support.size() << ", max degree " << (o.n + 1) / 2 << "\n";
  return kExitOk;
}

int cover_generic(const Options& o, std::ostream& out, std::ostream& err) {
  const GroupSpec g = parse_group_spec(o.group);
  std::set<GroupElement> s = support_from_json(parse_json(read_file(o.support)), g);
  s.insert(g.identity());
  const ChordalCover c = generic_cover(g, s);
  emit(dump_canonical(to_json(c)), o.output, out);
  err << "|T| = " << c.fourier_support.size() << ", cliques " << c.cliques.size() << "\n";
  return kExitOk;
}

int certify(const Options& o, std::ostream& out, std::ostream& err) {
  const FourierFunction f = function_from_json(parse_json(read_file(o.function)));
  ChordalCover c;
  if (o.autocover) {
    c = auto_cover(f.group(), support(f));
  } else {
    c = cover_from_json(parse_json(read_file(o.cover)));
    if (!(c.group == f.group())) fail(ErrorKind::kFormat, "cover and function live on different groups");
  }
  SosCertificate cert = sparse_sos(f, c);
  if (o.real) cert = real_certificate(cert);
  const double residual = verify_certificate(f, cert);
  emit(dump_canonical(to_json(cert, residual)), o.output, out);
  err << "support size " << cert.declared_support.size() << ", T = "
      << element_list_text(cert.declared_support, cert.group) << ", terms " << cert.terms.size() << ", residual "
      << residual << "\n";
  return kExitOk;
}

int verify(const Options& o, std::ostream& out) {
  const double tol = o.tol > 0.0 ? o.tol : tolerance_from_env(kDefaultVerifyTolerance);
  const FourierFunction f = function_from_json(parse_json(read_file(o.function)));
  const SosCertificate cert = certificate_from_json(parse_json(read_file(o.certificate)));
  if (!(cert.group == f.group())) {
    fail(ErrorKind::kFormat, "certificate is for " + cert.group.to_string() + ", function for " + f.group().to_string());
  }
  double residual = 0.0;
  try {
    residual = verify_certificate(f, cert);
  } catch (const Error& e) {
    out << "FAIL " << e.what() << "\n";
    return kExitMathematical;
  }
  const bool pass = residual <= tol;
  out << "max residual " << residual << "\n" << (pass ? "PASS" : "FAIL") << " (tol " << tol << ")\n";
  return pass ? kExitOk : kExitMathematical;
}

int lift(const Options& o, std::ostream& out, std::ostream& err) {
  const LiftMode mode = o.real ? LiftMode::kReal : LiftMode::kHermitian;
  LiftDescription l;
  if (o.polytope == "tc") {
    if (o.big_n < 3) fail(ErrorKind::kInvalidParameter, "--N must be at least 3");
    l = trigonometric_lift(o.big_n, o.d, mode);
  } else if (o.polytope == "cut") {
    if (o.n < 2 || o.n > 12) fail(ErrorKind::kInvalidParameter, "--n must be in [2, 12] for the cut polytope");
    l = cut_polytope_lift(o.n, mode);
  } else {
    if (o.group.empty() || o.support.empty() || o.cover.empty()) {
      fail(ErrorKind::kInvalidParameter, "custom lifts need --group, --support and --cover");
    }
    const GroupSpec g = parse_group_spec(o.group);
    const auto s = support_from_json(parse_json(read_file(o.support)), g);
    const ChordalCover c = cover_from_json(parse_json(read_file(o.cover)));
    l = build_lift(g, s, c);
    if (o.real) {
      const auto sigma = find_equalizing_involution(g, l.t);
      if (!sigma) {
        err << "error: T has no equalizing involution; no real lift of size |T|\n";
        return kExitMathematical;
      }
      l = real_lift(l, sigma->image);
    }
  }
  SdpaOptions sdpa;
  sdpa.paired_pins = o.paired;
  emit(o.format == "sdpa" ? export_sdpa(l, sdpa) : dump_canonical(to_json(l)), o.output, out);
  const std::size_t block = l.mode == LiftMode::kReal ? l.size() : 2 * l.size();
  err << (l.mode == LiftMode::kReal ? "real" : "hermitian") << " lift of size " << l.size() << " (SDPA block " << block
      << ")\n";
  if (o.polytope == "tc") {
    const double factor = o.real ? 4.0 : 3.0;
    const double bound = factor * o.d * std::log2(static_cast<double>(o.big_n) / o.d);
    err << "size " << l.size() << " vs bound " << (o.real ? 4 : 3) << "d*log2(N/d) = " << fixed(bound, 2) << " vs "
        << o.big_n << " vertices\n";
  }
  return kExitOk;
}

int bench(const Options& o, std::ostream& out, std::ostream& err) {
  out << std::left << std::setw(4) << "d" << std::setw(7) << "N" << std::setw(7) << "|T'|" << std::setw(12)
      << "3d*log2(d)" << std::setw(10) << "LP bound" << "ratio\n";
  for (int d = 1; d <= o.max_d; ++d) {
    const int n = d * d;
    if (d == 1) {
      out << std::setw(4) << d << std::setw(7) << n << "skipped: degenerate (N/d = 1)\n";
      continue;
    }
    const ChordalCover c = power_cycle_cover(n, d);
    const auto size = c.fourier_support.size();
    const int lp = std::min(n, (d + 1) * (d + 2) / 2);
    out << std::setw(4) << d << std::setw(7) << n << std::setw(7) << size << std::setw(12)
        << fixed(3.0 * d * std::log2(static_cast<double>(d)), 2) << std::setw(10) << lp
        << fixed(static_cast<double>(size) / lp, 3) << "\n";
  }
  err << "LP bound min(N, (d+1)(d+2)/2) is quoted, not computed\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse sum-of-squares certificates and PSD lifts on finite abelian groups", "sparsos"};
  app.require_subcommand(1);
  Options o;

  auto* cover = app.add_subcommand("cover", "Build a chordal cover and print it as JSON");
  cover->require_subcommand(1);
  auto* cover_cycle_cmd = cover->add_subcommand("cycle", "Cover of C_N^d on Z_N");
  cover_cycle_cmd->add_option("--n", o.n, "N")->required()->check(CLI::Range(3, 1 << 20));
  cover_cycle_cmd->add_option("--d", o.d, "d")->check(CLI::Range(1, 1 << 20));
  cover_cycle_cmd->add_option("--output,-o", o.output, "Output file");
  auto* cover_halfcube_cmd = cover->add_subcommand("halfcube", "Cover of the half-cube graph on Z_2^n");
  cover_halfcube_cmd->add_option("--n", o.n, "n")->required()->check(CLI::Range(2, 12));
  cover_halfcube_cmd->add_option("--output,-o", o.output, "Output file");
  auto* cover_generic_cmd = cover->add_subcommand("generic", "Min-fill cover with greedy translations");
  cover_generic_cmd->add_option("--group", o.group, "Group, e.g. Z6, Z2^4, Z4xZ3")->required();
  cover_generic_cmd->add_option("--support", o.support, "Connection set JSON")->required();
  cover_generic_cmd->add_option("--output,-o", o.output, "Output file");

  auto* cert = app.add_subcommand("certify", "Sparse SOS certificate of a nonnegative function");
  cert->add_option("--function", o.function, "Function JSON")->required();
  auto* cover_opt = cert->add_option("--cover", o.cover, "Cover JSON");
  auto* auto_opt = cert->add_flag("--auto", o.autocover, "Pick the cover from the support");
  cover_opt->excludes(auto_opt);
  cert->add_flag("--real", o.real, "Split terms into real and imaginary parts");
  cert->add_option("--output,-o", o.output, "Output file");

  auto* ver = app.add_subcommand("verify", "Check a certificate against a function");
  ver->add_option("--function", o.function, "Function JSON")->required();
  ver->add_option("--certificate", o.certificate, "Certificate JSON")->required();
  ver->add_option("--tol", o.tol, "Residual tolerance (default 1e-8 or SPARSOS_TOL)")->check(CLI::PositiveNumber);

  auto* lift_cmd = app.add_subcommand("lift", "PSD lift of a moment polytope");
  lift_cmd->add_option("--polytope", o.polytope, "tc, cut or custom")
      ->required()
      ->check(CLI::IsMember({"tc", "cut", "custom"}));
  lift_cmd->add_option("--N", o.big_n, "N for tc")->check(CLI::Range(3, 1 << 16));
  lift_cmd->add_option("--d", o.d, "d for tc")->check(CLI::Range(1, 1 << 16));
  lift_cmd->add_option("--n", o.n, "n for cut")->check(CLI::Range(2, 12));
  lift_cmd->add_option("--group", o.group, "Group for custom");
  lift_cmd->add_option("--support", o.support, "Connection set JSON for custom");
  lift_cmd->add_option("--cover", o.cover, "Cover JSON for custom");
  lift_cmd->add_flag("--real", o.real, "Real lift through an equalizing involution");
  lift_cmd->add_option("--format", o.format, "json or sdpa")->check(CLI::IsMember({"json", "sdpa"}));
  lift_cmd->add_flag("--paired-pins", o.paired, "Encode pins as paired inequalities in SDPA output");
  lift_cmd->add_option("--output,-o", o.output, "Output file");

  auto* bench_cmd = app.add_subcommand("bench", "Benchmarks");
  bench_cmd->require_subcommand(1);
  auto* sizes = bench_cmd->add_subcommand("sizes", "Lift size table for N = d^2");
  sizes->add_option("--max-d", o.max_d, "Largest d")->check(CLI::Range(1, 64));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (cert->parsed() && !o.autocover && o.cover.empty()) {
      fail(ErrorKind::kInvalidParameter, "certify needs --cover FILE or --auto");
    }
    if (lift_cmd->parsed()) {
      if (o.polytope == "tc" && o.big_n == 0) fail(ErrorKind::kInvalidParameter, "tc lifts need --N");
      if (o.polytope == "cut" && o.n == 0) fail(ErrorKind::kInvalidParameter, "cut lifts need --n");
    }
    if (cover_cycle_cmd->parsed()) return cover_cycle(o, out, err);
    if (cover_halfcube_cmd->parsed()) return cover_halfcube(o, out, err);
    if (cover_generic_cmd->parsed()) return cover_generic(o, out, err);
    if (cert->parsed()) return certify(o, out, err);
    if (ver->parsed()) return verify(o, out);
    if (lift_cmd->parsed()) return lift(o, out, err);
    if (sizes->parsed()) return bench(o, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_mathematical(e.kind()) ? kExitMathematical : kExitUsage;
  }
  err << "usage error: no command\n";
  return kExitUsage;
}

}  // namespace sparsos
