#include "covres/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <stdexcept>

namespace covres {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t rand_index(std::uint64_t& state, std::uint64_t bound) {
  return splitmix64(state) % bound;
}

Perm5 random_even_perm5(std::uint64_t& state) {
  Perm5 p{0, 1, 2, 3, 4};
  for (int i = 4; i > 0; --i)
    std::swap(p[i], p[rand_index(state, i + 1)]);
  if (!perm5_is_even(p)) std::swap(p[0], p[1]);
  return p;
}

Perm6 random_even_perm6(std::uint64_t& state) {
  Perm6 p{0, 1, 2, 3, 4, 5};
  for (int i = 5; i > 0; --i)
    std::swap(p[i], p[rand_index(state, i + 1)]);
  if (!perm6_is_even(p)) std::swap(p[0], p[1]);
  return p;
}

// Fixed-width decimal rendering so identical runs emit identical bytes.
std::string fmt_float(const BigFloat& v, unsigned digits = 40) {
  return v.str(digits, std::ios_base::scientific);
}

std::string fmt_complex(const BigComplex& z, unsigned digits = 40) {
  return fmt_float(z.re, digits) + " " + fmt_float(z.im, digits);
}

void require_distinct(const std::vector<BigComplex>& roots, const BigFloat& tol,
                      const char* what) {
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (abs(roots[i] - roots[j]) < tol)
        throw std::domain_error(std::string(what) + ": repeated roots");
}

struct Timer {
  RunReport& report;
  std::string label;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  Timer(RunReport& r, std::string l) : report(r), label(std::move(l)) {}
  ~Timer() {
    const auto end = std::chrono::steady_clock::now();
    report.timings_seconds.emplace_back(
        label, std::chrono::duration<double>(end - start).count());
  }
};

void add_entry(RunReport& r, const std::string& key, const std::string& value) {
  r.entries.emplace_back(key, value);
}

void add_check(RunReport& r, const std::string& name, const BigFloat& value,
               const BigFloat& bound) {
  r.residuals.push_back({name, value, bound});
}

void echo_inputs(RunReport& report, const RunRequest& req) {
  add_entry(report, "pipeline", req.pipeline);
  add_entry(report, "precision-bits", std::to_string(req.config.precision_bits));
  add_entry(report, "eq-tolerance", fmt_float(req.config.eq_tolerance, 8));
  add_entry(report, "seed", std::to_string(req.seed));
  if (!req.roots.empty()) {
    add_entry(report, "input-roots", std::to_string(req.roots.size()));
    for (std::size_t i = 0; i < req.roots.size(); ++i)
      add_entry(report, "root" + std::to_string(i), fmt_complex(req.roots[i]));
  }
  if (!req.coefficients.empty()) {
    add_entry(report, "input-coefficients",
              std::to_string(req.coefficients.size()));
    for (std::size_t i = 0; i < req.coefficients.size(); ++i)
      add_entry(report, "coefficient" + std::to_string(i),
                fmt_complex(req.coefficients[i]));
  }
}

const IcosaContext& shared_icosa(const ToleranceConfig& cfg) {
  static const IcosaContext ctx = build_icosahedral_context(cfg);
  return ctx;
}

// The Valentiner generator set: from a verified cache when a cache directory
// is configured, otherwise derived on the fly.  A cache that fails
// re-verification is rejected and rebuilt from the derivation.
std::vector<LinearSubstitution> valentiner_generator_set(const RunRequest& req,
                                                         RunReport& report) {
  std::string dir = req.cache_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("COVRES_CACHE_DIR")) dir = env;
  }
  if (dir.empty()) return valentiner_generators(req.config);
  const std::string path = dir + "/valentiner_generators.txt";
  if (std::filesystem::exists(path)) {
    try {
      return load_group(path, req.config).generators;
    } catch (const std::exception& e) {
      report.timings_seconds.emplace_back(
          std::string("cache-rejected: ") + e.what(), 0.0);
    }
  }
  const auto gens = valentiner_generators(req.config);
  MatrixGroup bundle;
  bundle.elements = gens;
  bundle.generators = gens;
  try {
    std::filesystem::create_directories(dir);
    cache_group(path, bundle, 1080,
                {"Valentiner ternary generators: three integer collineations "
                 "plus the pencil-transport mixing substitution",
                 "re-derived and re-verified on every load"});
  } catch (const std::exception&) {
    // A read-only cache directory is not an error; just skip caching.
  }
  return gens;
}

const ValentinerContext& shared_valentiner(const RunRequest& req,
                                           RunReport& report) {
  static const ValentinerContext ctx = build_valentiner_context(
      valentiner_generator_set(req, report), req.config);
  return ctx;
}

void run_quintic(const RunRequest& req, RunReport& report) {
  const ToleranceConfig& cfg = req.config;
  const IcosaContext& ctx = [&] {
    Timer t(report, "icosahedral-context");
    return std::cref(shared_icosa(cfg));
  }()
                                .get();
  QuinticInstance inst;
  if (!req.roots.empty()) {
    if (req.roots.size() != 5)
      throw std::invalid_argument("quintic: expected 5 roots");
    inst = QuinticInstance::from_roots(req.roots);
  } else {
    if (req.coefficients.size() != 6)
      throw std::invalid_argument(
          "quintic: expected 6 ascending coefficients");
    std::vector<BigComplex> monic = req.coefficients;
    const BigComplex lead = monic.back();
    if (is_zero(lead)) throw std::invalid_argument("quintic: zero leading coefficient");
    for (auto& c : monic) c /= lead;
    inst = QuinticInstance::from_coefficients(monic, cfg);
  }
  require_distinct(inst.roots, boost::multiprecision::sqrt(cfg.eq_tolerance),
                   "quintic");

  Timer t(report, "quintic-reduction");
  const QuinticReduction red = reduce_quintic(inst, ctx);
  add_entry(report, "u-infinity", fmt_complex(red.u.u_infinity));
  for (int m = 0; m < 5; ++m)
    add_entry(report, "u" + std::to_string(m), fmt_complex(red.u.u[m]));
  add_entry(report, "A0", fmt_complex(red.quadratic.A0));
  add_entry(report, "A1", fmt_complex(red.quadratic.A1));
  add_entry(report, "A2", fmt_complex(red.quadratic.A2));
  add_entry(report, "x", fmt_complex(red.x));
  add_entry(report, "X", fmt_complex(red.X));

  // Syzygy residual of the context forms.
  {
    const HomogeneousForm syz = ctx.T * ctx.T + ctx.H_form * ctx.H_form * ctx.H_form -
                                BigComplex(1728) * ctx.f * ctx.f * ctx.f * ctx.f * ctx.f;
    const HomogeneousForm scale_form = ctx.T * ctx.T;
    add_check(report, "syzygy-residual", syz.max_abs() / scale_form.max_abs(),
              pow(BigFloat(2), -100));
  }

  // Generator equivariance: x(sigma z) matches the Moebius image of x(z).
  {
    BigFloat worst = 0;
    for (const Perm5& g : {ctx.gen_a, ctx.gen_b}) {
      const QuinticReduction moved = reduce_quintic(
          QuinticInstance::from_roots(perm5_apply(g, inst.roots)), ctx);
      const BigFloat d = abs(moved.x - ctx.moebius(g, red.x));
      if (d > worst) worst = d;
    }
    add_check(report, "generator-equivariance", worst, BigFloat(1e-20));
  }

  // X and the quadratic invariant across an even-permutation sweep.
  {
    std::uint64_t rng = req.seed ^ 0x5eed5ull;
    const BigComplex a_base = quadratic_discriminant(red.quadratic);
    BigFloat worst_x = 0, worst_a = 0;
    for (int t2 = 0; t2 < 20; ++t2) {
      const Perm5 sigma = random_even_perm5(rng);
      const QuinticReduction moved = reduce_quintic(
          QuinticInstance::from_roots(perm5_apply(sigma, inst.roots)), ctx);
      const BigFloat dx = abs(moved.X - red.X) /
                          std::max(BigFloat(1), abs(red.X));
      const BigFloat da = abs(quadratic_discriminant(moved.quadratic) - a_base);
      if (dx > worst_x) worst_x = dx;
      if (da > worst_a) worst_a = da;
    }
    add_check(report, "X-permutation-spread", worst_x, BigFloat(1e-20));
    add_check(report, "quadratic-invariant-spread", worst_a, BigFloat(1e-20));
  }
}

void run_sextic(const RunRequest& req, RunReport& report) {
  const ToleranceConfig& cfg = req.config;
  const ValentinerContext& ctx = [&] {
    Timer t(report, "valentiner-context");
    return std::cref(shared_valentiner(req, report));
  }()
                                     .get();
  SexticInstance inst;
  if (!req.roots.empty()) {
    if (req.roots.size() != 6)
      throw std::invalid_argument("sextic: expected 6 roots");
    inst = SexticInstance::from_roots(req.roots);
  } else {
    if (req.coefficients.size() != 7)
      throw std::invalid_argument("sextic: expected 7 ascending coefficients");
    std::vector<BigComplex> monic = req.coefficients;
    const BigComplex lead = monic.back();
    if (is_zero(lead)) throw std::invalid_argument("sextic: zero leading coefficient");
    for (auto& c : monic) c /= lead;
    inst = SexticInstance::from_coefficients(monic, cfg);
  }
  require_distinct(inst.roots, boost::multiprecision::sqrt(cfg.eq_tolerance),
                   "sextic");

  Timer t(report, "normalproblem-forward");
  const NormalproblemInstance out = normalproblem_forward(inst, ctx);
  for (int a = 3; a >= 0; --a)
    for (int b = 3 - a; b >= 0; --b)
      add_entry(report,
                "omega-" + std::to_string(a) + std::to_string(b) +
                    std::to_string(3 - a - b),
                fmt_complex(out.cubic.cubic.at(a, b)));
  for (int i = 0; i < 3; ++i)
    add_entry(report, "inflection-x" + std::to_string(i + 1),
              fmt_complex(out.inflection_point[i]));
  add_entry(report, "v", fmt_complex(out.v));
  add_entry(report, "w", fmt_complex(out.w));
  const Polynomial nu = nu_ninth_degree(inst, ctx);
  for (std::size_t i = 0; i < nu.size(); ++i)
    add_entry(report, "nu" + std::to_string(i), fmt_complex(nu[i]));
  report.branch_log = out.branch_log;

  // Residuals: the chosen point on both curves, omega equivariance on a
  // seeded sweep, and scalar independence of (v, w).
  {
    const HomogeneousForm hs = hessian_form(out.cubic.cubic);
    BigFloat worst = 0;
    const std::vector<BigComplex> p{out.inflection_point[0],
                                    out.inflection_point[1],
                                    out.inflection_point[2]};
    worst = abs(evaluate_form(out.cubic.cubic, p)) / out.cubic.cubic.max_abs();
    const BigFloat dh = abs(evaluate_form(hs, p)) / hs.max_abs();
    if (dh > worst) worst = dh;
    add_check(report, "inflection-residual", worst, BigFloat(1e-20));
  }
  {
    std::uint64_t rng = req.seed ^ 0x03E6Aull;
    BigFloat worst = 0;
    const BigFloat scale = out.cubic.cubic.max_abs();
    for (int t2 = 0; t2 < 3; ++t2) {
      const std::size_t idx = rand_index(rng, ctx.ternary_group.order());
      const LinearSubstitution& e = ctx.ternary_group.elements[idx];
      const Perm6& pi = ctx.conic_action[idx].perm;
      const CubicCovariant moved = omega_cubic(
          SexticInstance::from_roots(perm6_apply(pi, inst.roots)), ctx);
      const BigFloat d =
          (act_on_form(e, out.cubic.cubic) - moved.cubic).max_abs() / scale;
      if (d > worst) worst = d;
    }
    add_check(report, "omega-equivariance", worst, BigFloat(1e-20));
  }
  {
    const BigComplex j = omega3();
    const auto [v2, w2] = absolute_invariants(
        ctx, ProjectivePoint3{j * out.inflection_point[0],
                              j * out.inflection_point[1],
                              j * out.inflection_point[2]});
    add_check(report, "vw-scalar-residual",
              abs(v2 - out.v) + abs(w2 - out.w), BigFloat(1e-20));
  }
}

void run_icosa_solve(const RunRequest& req, RunReport& report) {
  if (req.roots.size() != 1)
    throw std::invalid_argument("icosa-solve: expected one value X");
  const IcosaContext& ctx = shared_icosa(req.config);
  const BigComplex X = req.roots[0];

  Timer t(report, "icosahedral-solve");
  const auto pts = solve_icosahedral(ctx, X, false, req.seed);
  add_entry(report, "solution-count", std::to_string(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i)
    add_entry(report, "point" + std::to_string(i),
              fmt_complex(pts[i].first) + " " + fmt_complex(pts[i].second));

  // Orbit property: the returned set is the projective orbit of any root.
  BigFloat worst = 0;
  for (const auto& cls : ctx.binary_group.projective_classes) {
    const LinearSubstitution& e = ctx.binary_group.elements[cls.front()];
    const ProjectivePoint2 img{
        e.at(0, 0) * pts[0].first + e.at(0, 1) * pts[0].second,
        e.at(1, 0) * pts[0].first + e.at(1, 1) * pts[0].second};
    BigFloat best = 2;
    for (const auto& p : pts) {
      const BigFloat d = chordal_distance(img, p);
      if (d < best) best = d;
    }
    if (best > worst) worst = best;
  }
  add_check(report, "orbit-residual", worst, BigFloat(1e-20));
}

void run_normalproblem_solve(const RunRequest& req, RunReport& report) {
  if (req.roots.size() != 2)
    throw std::invalid_argument("normalproblem-solve: expected values v, w");
  const ValentinerContext& ctx = shared_valentiner(req, report);
  const BigComplex v = req.roots[0], w = req.roots[1];
  const unsigned escalated = std::max(1024u, req.config.precision_bits);

  Timer t(report, "normalproblem-solve");
  const auto sols = solve_normalproblem(ctx, v, w, escalated);
  add_entry(report, "escalated-bits", std::to_string(escalated));
  add_entry(report, "solution-count", std::to_string(sols.size()));
  const std::size_t shown = std::min<std::size_t>(5, sols.size());
  for (std::size_t i = 0; i < shown; ++i)
    add_entry(report, "point" + std::to_string(i),
              fmt_complex(sols[i][0]) + " " + fmt_complex(sols[i][1]) + " " +
                  fmt_complex(sols[i][2]));

  // Every solution lies on both defining curves.
  ScopedPrecision guard(escalated);
  HomogeneousForm f5 = ctx.F;
  for (int i = 0; i < 4; ++i) f5 = f5 * ctx.F;
  const HomogeneousForm curve_a = ctx.Phi - v * f5;
  const HomogeneousForm curve_b = ctx.H6 - w * (ctx.F * ctx.F);
  BigFloat worst = 0;
  for (const auto& s : sols) {
    const std::vector<BigComplex> p{s[0], s[1], s[2]};
    const BigFloat da = abs(evaluate_form(curve_a, p)) / curve_a.max_abs();
    const BigFloat db = abs(evaluate_form(curve_b, p)) / curve_b.max_abs();
    if (da > worst) worst = da;
    if (db > worst) worst = db;
  }
  add_check(report, "curve-residual", worst, BigFloat(1e-20));
}

void run_verify(const RunRequest& req, RunReport& report) {
  const IcosaContext& ic = [&] {
    Timer t(report, "icosahedral-context");
    return std::cref(shared_icosa(req.config));
  }()
                               .get();
  const ValentinerContext& vc = [&] {
    Timer t(report, "valentiner-context");
    return std::cref(shared_valentiner(req, report));
  }()
                                    .get();

  add_entry(report, "binary-group-order", std::to_string(ic.binary_group.order()));
  add_entry(report, "binary-projective-order",
            std::to_string(ic.quotient.quotient_size));
  add_entry(report, "ternary-group-order",
            std::to_string(vc.ternary_group.order()));
  add_entry(report, "ternary-projective-order",
            std::to_string(vc.quotient.quotient_size));

  {
    const HomogeneousForm syz = ic.T * ic.T + ic.H_form * ic.H_form * ic.H_form -
                                BigComplex(1728) * ic.f * ic.f * ic.f * ic.f * ic.f;
    add_check(report, "syzygy-residual",
              syz.max_abs() / (ic.T * ic.T).max_abs(), pow(BigFloat(2), -100));
  }
  {
    BigFloat worst = 0;
    for (const auto& g : ic.binary_group.generators)
      for (const HomogeneousForm* form : {&ic.f, &ic.H_form, &ic.T}) {
        const BigFloat d =
            (act_on_form(g, *form) - *form).max_abs() / form->max_abs();
        if (d > worst) worst = d;
      }
    add_check(report, "icosahedral-form-invariance", worst,
              pow(BigFloat(2), -100));
  }
  {
    BigFloat worst = 0;
    for (int i = 0; i < 6; ++i) {
      std::array<BigComplex, 9> m;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m[r * 3 + c] = vc.conics.mat(i, r, c);
      const BigComplex det = m[0] * (m[4] * m[8] - m[5] * m[7]) -
                             m[1] * (m[3] * m[8] - m[5] * m[6]) +
                             m[2] * (m[3] * m[7] - m[4] * m[6]);
      const BigFloat d = abs(det - BigComplex(1));
      if (d > worst) worst = d;
    }
    add_check(report, "gerbaldi-determinant-residual", worst,
              pow(BigFloat(2), -100));
  }
  add_entry(report, "conic-permutation-elements",
            std::to_string(vc.conic_action.size()));
  {
    BigFloat worst = 0;
    for (const auto& g : vc.ternary_group.generators)
      for (const HomogeneousForm* form : {&vc.F, &vc.H6, &vc.Phi}) {
        const BigFloat d =
            (act_on_form(g, *form) - *form).max_abs() / form->max_abs();
        if (d > worst) worst = d;
      }
    add_check(report, "valentiner-invariant-residual", worst,
              pow(BigFloat(2), -80));
  }
}

}  // namespace

std::string RunReport::to_text() const {
  std::ostringstream out;
  out << "covres-report v1\n";
  for (const auto& [key, value] : entries) out << key << " " << value << "\n";
  out << "branch-log " << branch_log.size() << "\n";
  for (std::size_t i = 0; i < branch_log.size(); ++i)
    out << "branch" << i << " " << branch_log[i] << "\n";
  for (const auto& check : residuals)
    out << "check " << check.name << " value " << fmt_float(check.value, 8)
        << " bound " << fmt_float(check.bound, 8) << " "
        << (check.passed() ? "pass" : "FAIL") << "\n";
  out << "status " << status << "\n";
  if (!failed_check.empty()) out << "failed-check " << failed_check << "\n";
  return out.str();
}

RunReport run(const RunRequest& request) {
  static const std::vector<std::string> pipelines{
      "quintic", "sextic", "icosa-solve", "normalproblem-solve", "verify"};
  if (std::find(pipelines.begin(), pipelines.end(), request.pipeline) ==
      pipelines.end())
    throw std::invalid_argument("unknown pipeline: " + request.pipeline);
  if (!request.roots.empty() && !request.coefficients.empty())
    throw std::invalid_argument("give either roots or coefficients, not both");
  if (request.pipeline != "verify" && request.roots.empty() &&
      request.coefficients.empty())
    throw std::invalid_argument("pipeline needs --roots or --coeffs");

  set_working_precision_bits(request.config.precision_bits);
  RunReport report;
  echo_inputs(report, request);

  if (request.pipeline == "quintic") run_quintic(request, report);
  else if (request.pipeline == "sextic") run_sextic(request, report);
  else if (request.pipeline == "icosa-solve") run_icosa_solve(request, report);
  else if (request.pipeline == "normalproblem-solve")
    run_normalproblem_solve(request, report);
  else run_verify(request, report);

  for (const auto& check : report.residuals)
    if (!check.passed()) {
      report.status = "failed";
      report.failed_check = check.name;
      break;
    }
  return report;
}

BigComplex parse_complex_literal(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty complex literal");

  const bool has_i = s.back() == 'i' || s.back() == 'I';
  if (has_i) s.pop_back();

  // Split at the last top-level +/- (not a leading sign, not an exponent
  // sign).
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if (s[k] != '+' && s[k] != '-') continue;
    const char prev = s[k - 1];
    if (prev == 'e' || prev == 'E') continue;
    split = k;
    break;
  }

  auto parse_real = [](const std::string& part) -> BigFloat {
    if (part.empty() || part == "+") return BigFloat(1);
    if (part == "-") return BigFloat(-1);
    try {
      std::size_t used = 0;
      // Reject trailing garbage boost would not see.
      (void)std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument("trailing");
      return BigFloat(part);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad numeric literal: " + part);
    }
  };

  if (!has_i) {
    if (split != std::string::npos)
      throw std::invalid_argument("bad complex literal: " + text);
    return BigComplex(parse_real(s), BigFloat(0));
  }
  if (split == std::string::npos)
    return BigComplex(BigFloat(0), parse_real(s));
  return BigComplex(parse_real(s.substr(0, split)),
                    parse_real(s.substr(split)));
}

std::vector<BigComplex> parse_complex_list(const std::string& text) {
  std::vector<BigComplex> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) out.push_back(parse_complex_literal(item));
  if (out.empty()) throw std::invalid_argument("empty value list");
  return out;
}

CliResult run_cli(const std::vector<std::string>& args) {
  CLI::App app{"Klein quintic/sextic reduction pipelines"};
  std::string pipeline, roots_text, coeffs_text, cache_dir;
  unsigned precision_bits = 256;
  int tolerance_exp = -128;
  std::uint64_t seed = 1;
  app.add_option("--pipeline", pipeline,
                 "quintic | sextic | icosa-solve | normalproblem-solve | verify")
      ->required();
  app.add_option("--roots", roots_text, "comma-separated complex literals a+bi");
  app.add_option("--coeffs", coeffs_text,
                 "comma-separated ascending coefficients");
  app.add_option("--precision", precision_bits, "working precision in bits");
  app.add_option("--tolerance", tolerance_exp,
                 "comparison tolerance as a power of two (e.g. -128)");
  app.add_option("--seed", seed, "seed for the sweep permutations");
  app.add_option("--cache-dir", cache_dir,
                 "directory for the verified group cache");

  std::vector<std::string> argv_like = args;
  std::reverse(argv_like.begin(), argv_like.end());  // CLI11 parses reversed

  CliResult result;
  RunRequest request;
  try {
    app.parse(argv_like);
    request.pipeline = pipeline;
    if (!roots_text.empty()) request.roots = parse_complex_list(roots_text);
    if (!coeffs_text.empty())
      request.coefficients = parse_complex_list(coeffs_text);
    request.config = ToleranceConfig(precision_bits, tolerance_exp);
    request.seed = seed;
    request.cache_dir = cache_dir;
  } catch (const CLI::ParseError& e) {
    result.exit_code = 2;
    result.diagnostics = std::string("parse error: ") + e.what() + "\n";
    return result;
  } catch (const std::invalid_argument& e) {
    result.exit_code = 2;
    result.diagnostics = std::string("parse error: ") + e.what() + "\n";
    return result;
  }

  try {
    const RunReport report = run(request);
    result.output = report.to_text();
    result.exit_code = report.status == "ok" ? 0 : 1;
    std::ostringstream diag;
    for (const auto& [label, seconds] : report.timings_seconds)
      diag << "timing " << label << " " << seconds << "s\n";
    result.diagnostics = diag.str();
  } catch (const std::invalid_argument& e) {
    result.exit_code = 2;
    result.diagnostics = std::string("parse error: ") + e.what() + "\n";
  } catch (const std::exception& e) {
    const std::string what = e.what();
    const bool precision_exhausted =
        what.find("convergence") != std::string::npos ||
        what.find("precision") != std::string::npos;
    result.exit_code = precision_exhausted ? 4 : 3;
    std::ostringstream out;
    out << "covres-report v1\n";
    out << "pipeline " << request.pipeline << "\n";
    out << "status failed\n";
    out << "stage " << what << "\n";
    result.output = out.str();
    result.diagnostics = std::string("error: ") + what + "\n";
  }
  return result;
}

}  // namespace covres
