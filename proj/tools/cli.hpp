#pragma once

// Command-line front end. run() is usable in-process (the tests call it);
// main.cpp only forwards argv.

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "liouville/io/export.hpp"
#include "liouville/liouville.hpp"

namespace liouville::cli {

using io::Json;
using io::complex_json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNumerical = 3;

// "1.5", "1.5,0.3" (re,im) or "0.3i".
inline Complex parse_complex(const std::string& s, const char* name) {
  auto fail = [&] { return DomainError(std::string("cannot parse ") + name + " = '" + s + "' as a complex number"); };
  try {
    std::size_t used = 0;
    if (const auto comma = s.find(','); comma != std::string::npos) {
      const std::string re = s.substr(0, comma), im = s.substr(comma + 1);
      const double x = std::stod(re, &used);
      if (used != re.size()) throw fail();
      const double y = std::stod(im, &used);
      if (used != im.size()) throw fail();
      return {x, y};
    }
    if (!s.empty() && s.back() == 'i') {
      const std::string im = s.substr(0, s.size() - 1);
      const double y = std::stod(im, &used);
      if (used != im.size()) throw fail();
      return {0.0, y};
    }
    const double x = std::stod(s, &used);
    if (used != s.size()) throw fail();
    return {x, 0.0};
  } catch (const std::invalid_argument&) {
    throw fail();
  } catch (const std::out_of_range&) {
    throw fail();
  }
}

struct RunConfig {
  std::string command;
  double gamma = 1.0;
  double mu = 1.0;
  std::optional<double> mu_b;
  std::optional<std::string> theta;
  std::optional<double> mu_b2;
  std::string format = "json";
  std::string output;
  double rel_tol = 0.0;  // 0: command default
  double abs_tol = 0.0;

  std::string fn = "upsilon";
  std::string z = "0";
  std::string alpha = "1", alpha2 = "1", alpha3 = "1";
  std::string beta = "1", beta2 = "1";
  std::string convention = "printed";
  std::string kind = "annulus-1pt";
  std::string route = "orthonormalized";
  std::string normalization = "orthonormalized";
  std::optional<std::string> delta;
  std::optional<std::string> central_charge;
  double P = 1.0;
  std::optional<double> P2;
  std::optional<double> q;
  int level = 2;
  int N = 12;
  int n = 20;
  double b_phase = 0.0, b1_phase = 0.0, b2_phase = 0.0;
  bool derivative = false;
  bool coefficients = false;
  bool samples = false;
  double inner_tol = 0.0, outer_tol = 0.0;
};

namespace detail {

inline LiouvilleParams make_params(const RunConfig& c) {
  LiouvilleParams p;
  p.gamma = c.gamma;
  p.mu = c.mu;
  p.mu_boundary = c.mu_b;
  if (c.theta) p.theta_value = parse_complex(*c.theta, "theta");
  p.validate();
  return p;
}

inline std::optional<LiouvilleParams> second_params(const RunConfig& c, const LiouvilleParams& p) {
  if (!c.mu_b2) return std::nullopt;
  return LiouvilleParams::with_mu_boundary(p.gamma, p.mu, *c.mu_b2);
}

inline Json params_json(const LiouvilleParams& p, const RunConfig& c) {
  Json j{{"gamma", p.gamma}, {"mu", p.mu}, {"Q", p.Q()}, {"c_L", p.c_L()}, {"c_m", p.c_m()}};
  j["mu_boundary"] = p.mu_boundary ? Json(*p.mu_boundary) : Json(nullptr);
  j["theta"] = nullptr;
  if (p.has_boundary() && p.mu > 0.0) {
    try {
      j["theta"] = complex_json(p.theta());
      if (!p.mu_boundary) j["mu_boundary"] = p.boundary_cosmological_constant();
    } catch (const BranchError&) {
      j["theta_note"] = "branch junction";
    }
  } else if (p.theta_value) {
    j["theta"] = complex_json(*p.theta_value);
  }
  if (c.mu_b2) j["mu_boundary_2"] = *c.mu_b2;
  return j;
}

inline Complex parse_beta(const std::string& s, const LiouvilleParams& p, const char* name) {
  if (s == "gamma") return p.gamma;
  return parse_complex(s, name);
}

inline double real_beta(const std::string& s, const LiouvilleParams& p, const char* name) {
  const Complex b = parse_beta(s, p, name);
  if (b.imag() != 0.0) throw DomainError(std::string(name) + " must be real here");
  return b.real();
}

inline double require_q(const RunConfig& c) {
  if (!c.q) throw DomainError("--q is required");
  if (!(*c.q > 0.0 && *c.q < 1.0)) throw DomainError("q must lie in (0, 1)");
  return *c.q;
}

inline BlockKind parse_kind(const std::string& s) {
  for (BlockKind k : {BlockKind::Torus1pt, BlockKind::Torus2pt, BlockKind::Annulus1pt, BlockKind::Annulus2pt})
    if (s == to_string(k)) return k;
  throw DomainError("unknown block kind '" + s + "'");
}

inline Complex unit(double phase) { return std::polar(1.0, phase); }

struct Output {
  Json json;
  // Set when the command emits CSV instead of JSON.
  std::optional<std::string> csv;
};

inline Json bootstrap_json(const BootstrapResult& r) {
  return {{"value", complex_json(r.value)},
          {"P_max", r.P_max},
          {"error_estimate", r.quadrature_error},
          {"cut_value", r.cut_value},
          {"evaluations", r.evaluations},
          {"block_truncation", r.block_truncation},
          {"block_tail", r.block_tail}};
}

inline std::string samples_csv(const BootstrapResult& r, const Json& params) {
  std::vector<std::pair<std::string, std::string>> echo;
  for (const auto& [k, v] : params.items()) echo.emplace_back(k, v.dump());
  std::ostringstream os;
  io::write_samples_csv(os, r.integrand_samples, echo);
  return os.str();
}

inline BootstrapOptions bootstrap_options(const RunConfig& c, const LiouvilleParams& p) {
  BootstrapOptions o;
  if (c.rel_tol > 0.0) o.spec.rel_tol = c.rel_tol;
  if (c.abs_tol > 0.0) o.spec.abs_tol = c.abs_tol;
  o.spec.parallel = true;
  o.block_truncation = c.N;
  o.record_samples = c.samples || c.format == "csv";
  o.second_boundary = second_params(c, p);
  return o;
}

inline Output cmd_specialfn(const RunConfig& c, const LiouvilleParams& p) {
  Json in{{"fn", c.fn}};
  Json res;
  if (c.fn == "eta") {
    const double q = require_q(c);
    in["q"] = q;
    res["value"] = dedekind_eta(q);
    res["log_value"] = log_dedekind_eta(q);
  } else if (c.fn == "partitions") {
    if (c.n < 0 || c.n > 400) throw DomainError("--n must lie in [0, 400]");
    in["n"] = c.n;
    res["value"] = partition_counts(c.n);
  } else {
    const Complex z = parse_complex(c.z, "z");
    in["z"] = complex_json(z);
    LogValue v;
    if (c.fn == "gamma") v = {log_gamma(z), false};
    else if (c.fn == "double-gamma") v = {log_double_gamma(z, p), false};
    else if (c.fn == "double-sine") v = log_double_sine(z, p);
    else if (c.fn == "upsilon") v = log_upsilon(z, p);
    else if (c.fn == "l") v = log_l_ratio(z);
    else throw DomainError("unknown function '" + c.fn + "'");
    res["value"] = complex_json(v.value());
    res["log_value"] = v.zero ? Json(nullptr) : complex_json(v.log);
  }
  return {{{"inputs", in}, {"result", res}, {"conjectural", false}}, {}};
}

inline Output cmd_dozz(const RunConfig& c, const LiouvilleParams& p) {
  const Complex a1 = parse_complex(c.alpha, "alpha1"), a2 = parse_complex(c.alpha2, "alpha2"),
                a3 = parse_complex(c.alpha3, "alpha3");
  const LogValue v = log_dozz(a1, a2, a3, p);
  return {{{"inputs", {{"alpha1", complex_json(a1)}, {"alpha2", complex_json(a2)}, {"alpha3", complex_json(a3)}}},
           {"result", {{"value", complex_json(v.value())}, {"log_value", v.zero ? Json(nullptr) : complex_json(v.log)}}},
           {"conjectural", false}},
          {}};
}

inline Output cmd_reflection(const RunConfig& c, const LiouvilleParams& p) {
  const Complex a = parse_complex(c.alpha, "alpha");
  const Complex v = reflection(a, p);
  return {{{"inputs", {{"alpha", complex_json(a)}}},
           {"result", {{"value", complex_json(v)}, {"modulus", std::abs(v)}}},
           {"conjectural", false}},
          {}};
}

inline Output cmd_fzz(const RunConfig& c, const LiouvilleParams& p) {
  const Complex a = parse_complex(c.alpha, "alpha");
  const Complex v = c.derivative ? fzz_mu_b_derivative(a, p) : fzz_one_point(a, p);
  return {{{"inputs", {{"alpha", complex_json(a)}, {"derivative", c.derivative}}},
           {"result", {{"value", complex_json(v)}}},
           {"conjectural", false}},
          {}};
}

inline Output cmd_bulk_boundary(const RunConfig& c, const LiouvilleParams& p) {
  const Complex a = parse_complex(c.alpha, "alpha");
  const Complex b = parse_beta(c.beta, p, "beta");
  QuadratureSpec spec;
  if (c.rel_tol > 0.0) spec.rel_tol = c.rel_tol;
  if (c.abs_tol > 0.0) spec.abs_tol = c.abs_tol;
  BulkBoundaryResult r;
  if (c.convention == "printed")
    r = bulk_boundary_detailed(a, b, p, spec, HosomichiKernel::AsPrinted);
  else if (c.convention == "bootstrap")
    r = p.mu == 0.0 ? bulk_boundary_detailed(a, b, p, spec) : bulk_boundary_bootstrap(a, b, p, spec);
  else
    throw DomainError("--convention must be 'printed' or 'bootstrap'");
  return {{{"inputs", {{"alpha", complex_json(a)}, {"beta", complex_json(b)}, {"convention", c.convention}}},
           {"result",
            {{"value", complex_json(r.value)}, {"error_estimate", r.error}, {"t_max", r.t_max}, {"decay_rate", r.decay_rate}}},
           {"conjectural", p.mu > 0.0}},
          {}};
}

inline Complex spectrum_weight(const RunConfig& c, const LiouvilleParams& p) {
  if (c.delta) return parse_complex(*c.delta, "delta");
  return conformal_weight(Complex(p.Q(), c.P), p.Q());
}

inline Output cmd_gram(const RunConfig& c, const LiouvilleParams& p) {
  if (c.level < 0 || c.level > 20) throw DomainError("--level must lie in [0, 20]");
  const Complex delta = spectrum_weight(c, p);
  const Complex cc = c.central_charge ? parse_complex(*c.central_charge, "c") : Complex(p.c_L());
  const GramMatrix g = gram_matrix(c.level, delta, cc);
  return {{{"inputs", {{"level", c.level}, {"delta", complex_json(delta)}, {"c", complex_json(cc)}}},
           {"result",
            {{"basis", io::basis_json(c.level)},
             {"entries", io::matrix_json(g.entries)},
             {"determinant", complex_json(g.entries.determinant())},
             {"scaled_condition", jacobi_scaled_condition(g.entries)}}},
           {"conjectural", false}},
          {}};
}

inline Output cmd_block(const RunConfig& c, const LiouvilleParams& p) {
  const BlockKind kind = parse_kind(c.kind);
  if (c.N < 0 || c.N > 20) throw DomainError("--N must lie in [0, 20]");
  std::vector<Complex> weights{conformal_weight(parse_beta(c.beta, p, "beta"), p.Q())};
  if (is_two_point(kind)) weights.push_back(conformal_weight(parse_beta(c.beta2, p, "beta2"), p.Q()));
  std::vector<double> Ps{c.P};
  if (kind == BlockKind::Torus2pt && c.P2) Ps.push_back(*c.P2);
  for (double x : Ps)
    if (!(x > 0.0)) throw DomainError("--P must be > 0");
  BlockRoute route;
  if (c.route == "orthonormalized") route = BlockRoute::Orthonormalized;
  else if (c.route == "gram-inverse") route = BlockRoute::GramInverse;
  else throw DomainError("--route must be 'orthonormalized' or 'gram-inverse'");
  const BlockSeries s = block_series(kind, weights, Ps, p, c.N, route);

  Json in{{"kind", c.kind}, {"beta", c.beta}, {"P", c.P}, {"N", c.N}, {"route", c.route}};
  if (is_two_point(kind)) in["beta2"] = c.beta2;
  if (c.P2) in["P2"] = *c.P2;
  Json res = io::series_json(s);
  if (c.q) {
    const double q = require_q(c);
    in["q"] = q;
    in["b1b2_phase"] = c.b_phase;
    const BlockValue v = evaluate_block(s, q, unit(c.b_phase));
    res["value"] = complex_json(v.value);
    res["tail_bound"] = std::isfinite(v.tail_bound) ? Json(v.tail_bound) : Json(nullptr);
    res["growth_ratio"] = v.growth_ratio;
    res["tail_warning"] = v.tail_warning;
  }
  if (c.coefficients) {
    Json tables = Json::array();
    for (std::size_t i = 0; i < weights.size(); ++i) {
      const BlockCoefficients raw =
          raw_matrix_elements(weights[i], s.spectrum[0], s.central_charge, s.truncation, !is_two_point(kind));
      tables.push_back(io::coefficients_json(
          c.normalization == "raw" ? raw : orthonormalize(raw, gram_matrices(s.truncation, s.spectrum[0], s.central_charge))));
    }
    res["matrix_elements"] = std::move(tables);
  }
  Output out{{{"inputs", in}, {"result", res}, {"conjectural", false}}, {}};
  if (c.format == "csv") {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10);
    os << "n,m,re,im\n";
    for (int n = 0; n <= s.truncation; ++n)
      for (int m = 0; m <= s.truncation; ++m)
        if (is_two_point(kind) || n == m) os << n << "," << m << "," << s.coeffs(n, m).real() << "," << s.coeffs(n, m).imag() << "\n";
    out.csv = os.str();
  }
  return out;
}

inline Output bootstrap_output(const BootstrapResult& r, Json in, const RunConfig& c, const LiouvilleParams& p) {
  Json res = bootstrap_json(r);
  if (c.samples) {
    Json s = Json::array();
    for (const auto& [P, v] : r.integrand_samples) s.push_back({P, v.real(), v.imag()});
    res["integrand_samples"] = std::move(s);
  }
  Output out{{{"inputs", in}, {"result", res}, {"conjectural", r.conjectural}}, {}};
  if (c.format == "csv") {
    Json echo = params_json(p, c);
    for (const auto& [k, v] : in.items()) echo[k] = v;
    out.csv = samples_csv(r, echo);
  }
  return out;
}

inline Output cmd_bootstrap_2pt(const RunConfig& c, const LiouvilleParams& p) {
  const double q = require_q(c);
  const double b1 = real_beta(c.beta, p, "beta1"), b2 = real_beta(c.beta2, p, "beta2");
  const BootstrapResult r =
      two_point_bootstrap(b1, b2, unit(c.b1_phase), unit(c.b2_phase), q, p, bootstrap_options(c, p));
  return bootstrap_output(r,
                          {{"beta1", b1}, {"beta2", b2}, {"b1_phase", c.b1_phase}, {"b2_phase", c.b2_phase},
                           {"q", q}, {"N", c.N}},
                          c, p);
}

inline Output cmd_bootstrap_1pt(const RunConfig& c, const LiouvilleParams& p) {
  const double q = require_q(c);
  const double b1 = real_beta(c.beta, p, "beta1");
  const BootstrapResult r = one_point_bootstrap(b1, unit(c.b_phase), q, p, bootstrap_options(c, p));
  return bootstrap_output(r, {{"beta1", b1}, {"b_phase", c.b_phase}, {"q", q}, {"N", c.N}}, c, p);
}

inline Output cmd_bootstrap_gamma(const RunConfig& c, const LiouvilleParams& p) {
  const double q = require_q(c);
  const BootstrapResult r = gamma_insertion_bootstrap(q, p, bootstrap_options(c, p));
  return bootstrap_output(r, {{"q", q}}, c, p);
}

inline Output cmd_lqg(const RunConfig& c, const LiouvilleParams& p) {
  LqgOptions o;
  if (c.inner_tol > 0.0) o.inner.rel_tol = c.inner_tol;
  if (c.outer_tol > 0.0) o.outer.rel_tol = c.outer_tol;
  const PartitionFunctionResult r = lqg_partition(p, o);
  Json grid = Json::array();
  for (const auto& [q, v] : r.q_grid_report) grid.push_back({q, v});
  return {{{"inputs", {{"inner_tol", o.inner.rel_tol}, {"outer_tol", o.outer.rel_tol}, {"q_max", o.q_max}}},
           {"result",
            {{"value", r.value},
             {"error_estimate", r.quadrature_error},
             {"low_tail_bound", r.low_tail_bound},
             {"high_tail_bound", r.high_tail_bound},
             {"eta_exponent", r.eta_exponent},
             {"prefactor", r.prefactor},
             {"outer_evaluations", r.outer_evaluations},
             {"q_grid_report", grid}}},
           {"conjectural", false}},
          {}};
}

inline Json error_json(const std::string& kind, const std::string& message, int code) {
  return {{"schema", "1"}, {"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
}

}  // namespace detail

inline void add_options(CLI::App& app, RunConfig& c) {
  auto add_common = [&c](CLI::App* s) {
    s->add_option("--gamma", c.gamma, "coupling gamma in (0, 2)")->required();
    s->add_option("--mu", c.mu, "bulk cosmological constant (default 1)");
    s->add_option("--mu-b", c.mu_b, "boundary cosmological constant");
    s->add_option("--theta", c.theta, "FZZ parameter theta (re or re,im) instead of --mu-b");
    s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    s->add_option("-o,--output", c.output, "write to this file instead of stdout");
    s->add_option("--rel-tol", c.rel_tol, "relative tolerance of the main quadrature");
    s->add_option("--abs-tol", c.abs_tol, "absolute tolerance of the main quadrature");
  };
  auto* s = app.add_subcommand("specialfn", "Gamma, double Gamma, double sine, Upsilon, l, eta, partitions");
  add_common(s);
  s->add_option("--fn", c.fn, "gamma|double-gamma|double-sine|upsilon|l|eta|partitions");
  s->add_option("--z", c.z, "argument (re or re,im)");
  s->add_option("--q", c.q, "nome for eta");
  s->add_option("--n", c.n, "largest n for partitions");

  s = app.add_subcommand("dozz", "DOZZ structure constant");
  add_common(s);
  s->add_option("--alpha1", c.alpha);
  s->add_option("--alpha2", c.alpha2);
  s->add_option("--alpha3", c.alpha3);

  s = app.add_subcommand("reflection", "reflection coefficient R(alpha)");
  add_common(s);
  s->add_option("--alpha", c.alpha);

  s = app.add_subcommand("fzz", "bulk one-point function U_FZZ(alpha)");
  add_common(s);
  s->add_option("--alpha", c.alpha);
  s->add_flag("--derivative", c.derivative, "d/dmu_B instead of the value");

  s = app.add_subcommand("bulk-boundary", "bulk-boundary structure constant G(alpha, beta)");
  add_common(s);
  s->add_option("--alpha", c.alpha);
  s->add_option("--beta", c.beta, "number or 'gamma'");
  s->add_option("--convention", c.convention, "printed (formula as quoted) or bootstrap (normalized)");

  s = app.add_subcommand("gram", "Shapovalov form at one level");
  add_common(s);
  s->add_option("--level", c.level);
  s->add_option("--delta", c.delta, "highest weight (default Delta_{Q+iP})");
  s->add_option("--P", c.P);
  s->add_option("--c", c.central_charge, "central charge (default c_L)");

  s = app.add_subcommand("block", "conformal block coefficients and values");
  add_common(s);
  s->add_option("--kind", c.kind, "torus-1pt|torus-2pt|annulus-1pt|annulus-2pt");
  s->add_option("--beta", c.beta, "number or 'gamma'");
  s->add_option("--beta2", c.beta2, "second insertion for two-point kinds");
  s->add_option("--P", c.P);
  s->add_option("--P2", c.P2, "second spectrum momentum (torus-2pt)");
  s->add_option("--N", c.N, "truncation level");
  s->add_option("--q", c.q);
  s->add_option("--b-phase", c.b_phase, "arg(b1 b2) for two-point kinds");
  s->add_option("--route", c.route, "orthonormalized|gram-inverse");
  s->add_flag("--coefficients", c.coefficients, "include the matrix-element tables");
  s->add_option("--normalization", c.normalization, "raw|orthonormalized (tables)");

  auto add_bootstrap = [&c](CLI::App* s) {
    s->add_option("--q", c.q)->required();
    s->add_option("--N", c.N, "block truncation");
    s->add_option("--mu-b2", c.mu_b2, "boundary constant of the second boundary");
    s->add_flag("--samples", c.samples, "include integrand samples");
  };
  s = app.add_subcommand("bootstrap-2pt", "annulus with one insertion on each boundary");
  add_common(s);
  add_bootstrap(s);
  s->add_option("--beta1", c.beta, "number or 'gamma'");
  s->add_option("--beta2", c.beta2, "number or 'gamma'");
  s->add_option("--b1-phase", c.b1_phase);
  s->add_option("--b2-phase", c.b2_phase);

  s = app.add_subcommand("bootstrap-1pt", "annulus with one boundary insertion");
  add_common(s);
  add_bootstrap(s);
  s->add_option("--beta1", c.beta, "number or 'gamma'");
  s->add_option("--b-phase", c.b_phase);

  s = app.add_subcommand("bootstrap-gamma", "annulus with a gamma insertion (eta form)");
  add_common(s);
  add_bootstrap(s);

  s = app.add_subcommand("lqg", "annulus partition function of bosonic Liouville gravity");
  add_common(s);
  s->add_option("--inner-tol", c.inner_tol);
  s->add_option("--outer-tol", c.outer_tol);

  app.require_subcommand(1);
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Liouville boundary CFT numerics"};
  RunConfig c;
  add_options(app, c);
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << detail::error_json("UsageError", e.what(), kExitDomain).dump() << "\n";
    return kExitDomain;
  }
  c.command = app.get_subcommands().front()->get_name();

  using Handler = detail::Output (*)(const RunConfig&, const LiouvilleParams&);
  static const std::map<std::string, Handler> handlers{
      {"specialfn", detail::cmd_specialfn},         {"dozz", detail::cmd_dozz},
      {"reflection", detail::cmd_reflection},       {"fzz", detail::cmd_fzz},
      {"bulk-boundary", detail::cmd_bulk_boundary}, {"gram", detail::cmd_gram},
      {"block", detail::cmd_block},                 {"bootstrap-2pt", detail::cmd_bootstrap_2pt},
      {"bootstrap-1pt", detail::cmd_bootstrap_1pt}, {"bootstrap-gamma", detail::cmd_bootstrap_gamma},
      {"lqg", detail::cmd_lqg}};

  auto fail = [&](const std::string& kind, const std::string& msg, int code, Json extra = {}) {
    Json j = detail::error_json(kind, msg, code);
    if (!extra.is_null()) j["error"]["diagnostics"] = std::move(extra);
    err << j.dump() << "\n";
    return code;
  };

  try {
    const LiouvilleParams p = detail::make_params(c);
    detail::Output o = handlers.at(c.command)(c, p);
    std::string text;
    if (c.format == "csv") {
      if (!o.csv) throw DomainError("csv output is only available for block and bootstrap commands");
      text = *o.csv;
    } else {
      Json j{{"schema", "1"}, {"command", c.command}, {"params", detail::params_json(p, c)}};
      for (auto& [k, v] : o.json.items()) j[k] = v;
      text = j.dump(2) + "\n";
    }
    if (c.output.empty()) {
      out << text;
    } else {
      std::ofstream f(c.output, std::ios::binary);
      if (!f) throw DomainError("cannot open output file " + c.output);
      f << text;
    }
    return kExitOk;
  } catch (const NonConvergence& e) {
    return fail(e.kind(), e.what(), kExitNumerical,
                {{"error_estimate", e.error_estimate()}, {"subdivisions", e.subdivisions()}});
  } catch (const SingularGram& e) {
    return fail(e.kind(), e.what(), kExitNumerical, {{"condition", e.condition()}});
  } catch (const TailWarning& e) {
    return fail(e.kind(), e.what(), kExitNumerical, {{"growth_ratio", e.ratio()}});
  } catch (const PoleError& e) {
    return fail(e.kind(), e.what(), kExitDomain, {{"factor", e.factor()}});
  } catch (const Error& e) {
    return fail(e.kind(), e.what(), kExitDomain);
  } catch (const std::exception& e) {
    return fail("InternalError", e.what(), kExitInternal);
  }
}

}  // namespace liouville::cli
