#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "dhilbert/identities.hpp"
#include "dhilbert/monte_carlo.hpp"
#include "dhilbert/poisson.hpp"
#include "dhilbert/quadrature.hpp"
#include "dhilbert/reports.hpp"
#include "dhilbert/signal_io.hpp"
#include "dhilbert/transforms.hpp"

using namespace dhilbert;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;
constexpr int exit_usage = 2;

constexpr const char* seed_env = "DHILBERT_SEED";

std::uint64_t default_seed() {
  if (const char* s = std::getenv(seed_env)) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(seed_env) + " is not an unsigned integer: '" + s + "'");
    }
  }
  return 1;
}

void emit(const json& report, const std::string& out) {
  if (out.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    write_report(out, report);
  }
}

// Signal source shared by the torus-only subcommands: a file, or random mean-zero data.
struct SignalSource {
  std::string path;
  std::size_t torus = 32;

  LatticeSignal load_or_random(std::mt19937_64& rng) const {
    if (path.empty()) return random_mean_zero_torus(torus, rng);
    const LatticeSignal s = load_signal(path);
    if (s.is_torus()) {
      if (s.size() != torus) {
        throw std::invalid_argument(path + ": torus size " + std::to_string(s.size()) + " differs from --torus " +
                                    std::to_string(torus));
      }
      return s;
    }
    return embed_in_torus(s, torus);
  }
};

// ---- apply ----

struct ApplyOptions {
  std::string op = "h";
  std::string in;
  std::string out;
  std::string report;
  std::string mode;
  site_t radius = default_out_radius;
  std::size_t torus = 0;
  double y = 1.0;
  std::size_t resolution = default_spectral_resolution;
};

bool is_kernel_op(SymbolTag t) {
  return t == SymbolTag::h_plus || t == SymbolTag::h_minus || t == SymbolTag::h_centered || t == SymbolTag::h_naive;
}

int run_apply(const ApplyOptions& o) {
  const SymbolTag tag = parse_symbol_tag(o.op);
  const OperatorSymbol op{tag, o.y};
  LatticeSignal f = load_signal(o.in);
  std::string mode = o.mode.empty() ? (f.is_torus() ? "torus" : "window") : o.mode;

  json report = {{"config",
                  {{"op", o.op}, {"in", o.in}, {"out", o.out}, {"mode", mode}, {"radius", o.radius}, {"y", o.y}}}};
  LatticeSignal result = f;
  if (mode == "torus") {
    if (!f.is_torus()) {
      if (o.torus < 2) throw std::invalid_argument("apply: --mode torus on a window file needs --torus N");
      f = embed_in_torus(f, o.torus);
    }
    result = apply_spectral_torus(f, op);
    report["config"]["torus"] = f.size();
  } else {
    if (f.is_torus()) throw std::invalid_argument("apply: " + o.in + " is a torus signal; use --mode torus");
    if (is_kernel_op(tag)) {
      const KernelResult k = apply_kernel(f, tag, o.radius);
      result = k.signal;
      report["tail_bound"] = k.tail_bound;
    } else {
      const SiteRange range{f.offset() - o.radius, f.last() + o.radius};
      result = apply_spectral_window(f, op, make_spectral_grid(o.resolution), range);
      report["config"]["resolution"] = o.resolution;
    }
  }
  report["output_sites"] = result.size();
  if (o.out.empty()) {
    format_signal(std::cout, result);
  } else {
    write_signal(o.out, result);
  }
  if (!o.report.empty()) write_report(o.report, report);
  return exit_ok;
}

// ---- verify ----

struct VerifyOptions {
  std::string suite = "all";
  std::size_t torus = 64;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::size_t samples = 10000;
  std::size_t support = 17;
  site_t radius = 32;
  std::size_t resolution = default_spectral_resolution;
  std::size_t truncation = 1000;
  site_t naive_radius = 64;
  double tol = identity_tolerance;
  double relation_tol = 1e-12;
  double kernel_tol = 1e-8;
  std::string out;
};

int run_verify(const VerifyOptions& o) {
  const bool all = o.suite == "all";
  json report = {{"config",
                  {{"suite", o.suite},
                   {"torus", o.torus},
                   {"trials", o.trials},
                   {"seed", o.seed},
                   {"samples", o.samples},
                   {"support", o.support},
                   {"radius", o.radius},
                   {"resolution", o.resolution},
                   {"truncation", o.truncation},
                   {"naive_radius", o.naive_radius},
                   {"tol", o.tol},
                   {"relation_tol", o.relation_tol},
                   {"kernel_tol", o.kernel_tol}}}};
  bool ok = true;
  if (all || o.suite == "algebra") {
    const IdentityReport r = identity_suite(o.torus, o.trials, o.seed);
    report["algebra"] = r;
    ok = ok && r.passed(o.tol);
  }
  if (all || o.suite == "defining") {
    const DefiningRelationReport r = defining_relation_check(o.samples, o.seed);
    report["defining"] = r;
    ok = ok && r.max_residual_plus <= o.relation_tol && r.max_residual_minus <= o.relation_tol;
  }
  if (all || o.suite == "kernel") {
    const KernelSpectralReport r = kernel_spectral_agreement(o.trials, o.support, o.radius, o.resolution, o.seed);
    report["kernel"] = r;
    ok = ok && r.max_abs_difference <= o.kernel_tol;
  }
  if (all || o.suite == "multiplier") {
    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> uni(0.02, 0.48);
    std::vector<double> xi;
    for (int i = 0; i < 4; ++i) xi.push_back(i % 2 == 0 ? uni(rng) : -uni(rng));
    const MultiplierKernelReport r = multiplier_kernel_consistency(xi, o.truncation);
    report["multiplier"] = r;
    // Cesaro means converge like 1/L; the raw partial sums oscillate with an O(1/L) envelope.
    ok = ok && r.max_cesaro_error <= 10.0 / static_cast<double>(o.truncation) && r.min_envelope_ratio >= 1.5;
  }
  if (all || o.suite == "naive") {
    const NaiveContrastReport r = naive_contrast(o.naive_radius);
    report["naive"] = r;
    ok = ok && r.anti_involution_defect > 0.1;
  }
  if (report.size() == 1) throw std::invalid_argument("verify: unknown suite '" + o.suite + "'");
  report["passed"] = ok;
  emit(report, o.out);
  return ok ? exit_ok : exit_failed;
}

// ---- extend / cr-check / lp-check / weak-check ----

struct GridOptions {
  SignalSource source;
  std::uint64_t seed = 1;
  std::size_t ny = 8;
  double ymin = 0.1;
  double ymax = 4.0;
  double tol = 1e-8;
  std::string out;
  std::string csv;
};

std::vector<double> y_levels(const GridOptions& o) {
  if (o.ny < 1 || !(o.ymin >= 0.0) || !(o.ymax >= o.ymin)) throw std::invalid_argument("need ny >= 1, 0 <= ymin <= ymax");
  std::vector<double> ys;
  for (std::size_t j = 0; j < o.ny; ++j) {
    ys.push_back(o.ny == 1 ? o.ymin : o.ymin + (o.ymax - o.ymin) * static_cast<double>(j) / static_cast<double>(o.ny - 1));
  }
  return ys;
}

json grid_config(const GridOptions& o) {
  return {{"signal", o.source.path}, {"torus", o.source.torus}, {"seed", o.seed}, {"ny", o.ny},
          {"ymin", o.ymin},          {"ymax", o.ymax},          {"tol", o.tol},   {"csv", o.csv}};
}

int run_extend(const GridOptions& o) {
  std::mt19937_64 rng(o.seed);
  const LatticeSignal f = o.source.load_or_random(rng);
  const HarmonicExtension u(f);
  const HarmonicExtension v(apply_spectral_torus(f, OperatorSymbol{SymbolTag::h_centered}));
  const std::vector<double> ys = y_levels(o);
  json report = {{"config", grid_config(o)}, {"torus", f.size()}, {"mean_zero", f.mean_zero()}};
  json slices = json::array();
  for (double y : ys) {
    double sup = 0.0;
    for (site_t x = 0; x < static_cast<site_t>(f.size()); ++x) sup = std::max(sup, std::abs(u.value(x, y)));
    slices.push_back({{"y", y}, {"sup_u", sup}});
  }
  report["slices"] = slices;
  if (!o.csv.empty()) {
    std::ofstream csv(o.csv);
    if (!csv) throw SignalFormatError(o.csv, 0, "cannot open for writing");
    csv.precision(17);
    csv << "x,y,u,v\n";
    for (double y : ys) {
      for (site_t x = 0; x < static_cast<site_t>(f.size()); ++x) {
        csv << x << ',' << y << ',' << u.value(x, y) << ',' << v.value(x, y) << '\n';
      }
    }
  }
  emit(report, o.out);
  return exit_ok;
}

int run_cr_check(const GridOptions& o) {
  std::mt19937_64 rng(o.seed);
  const LatticeSignal f = o.source.load_or_random(rng);
  std::vector<std::pair<site_t, double>> points;
  for (double y : y_levels(o)) {
    for (site_t x = 0; x < static_cast<site_t>(f.size()); x += std::max<site_t>(1, static_cast<site_t>(f.size()) / 16)) {
      points.emplace_back(x, y);
    }
  }
  const CauchyRiemannReport r = cauchy_riemann_residuals(f, points);
  const bool ok = r.passed(o.tol);
  emit({{"config", grid_config(o)}, {"residuals", r}, {"passed", ok}}, o.out);
  return ok ? exit_ok : exit_failed;
}

struct PairingOptions {
  SignalSource source;
  std::string signal2;
  std::size_t pairs = 10;
  std::uint64_t seed = 1;
  std::size_t nodes = YQuadrature::default_nodes;
  double tol_closed = 1e-12;
  double tol_numeric = 1e-6;
  std::string out;
};

int run_pairing_check(const PairingOptions& o, bool hilbert) {
  std::mt19937_64 rng(o.seed);
  const YQuadrature closed = YQuadrature::closed_form();
  const YQuadrature numeric = YQuadrature::numeric_for_torus(o.source.torus, o.nodes);
  const std::size_t count = o.source.path.empty() ? o.pairs : 1;
  json rows = json::array();
  double worst_closed = 0.0;
  double worst_numeric = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const LatticeSignal f = o.source.load_or_random(rng);
    const LatticeSignal g = o.signal2.empty() ? random_mean_zero_torus(f.size(), rng)
                                              : SignalSource{o.signal2, o.source.torus}.load_or_random(rng);
    const double ref =
        hilbert ? inner_product(apply_spectral_torus(f, OperatorSymbol{SymbolTag::h_centered}), g) : inner_product(f, g);
    const double scale = f.l2_norm() * g.l2_norm();
    const double c = hilbert ? hilbert_weak_pairing(f, g, closed) : littlewood_paley_pairing(f, g, closed);
    const double n = hilbert ? hilbert_weak_pairing(f, g, numeric) : littlewood_paley_pairing(f, g, numeric);
    // Relative to |f||g| so that near-orthogonal pairs do not blow up the ratio.
    const double rc = std::abs(c - ref) / scale;
    const double rn = std::abs(n - ref) / scale;
    worst_closed = std::max(worst_closed, rc);
    worst_numeric = std::max(worst_numeric, rn);
    json row = {{"reference", ref}, {"closed_form", c}, {"numeric", n}, {"closed_rel", rc}, {"numeric_rel", rn}};
    if (!hilbert) row["forms"] = littlewood_paley_forms(f, g, closed);
    rows.push_back(row);
  }
  const bool ok = worst_closed <= o.tol_closed && worst_numeric <= o.tol_numeric;
  json report = {{"config",
                  {{"signal", o.source.path},
                   {"signal2", o.signal2},
                   {"torus", o.source.torus},
                   {"pairs", count},
                   {"seed", o.seed},
                   {"nodes", o.nodes},
                   {"tol_closed", o.tol_closed},
                   {"tol_numeric", o.tol_numeric}}},
                 {"pairs", rows},
                 {"max_closed_rel", worst_closed},
                 {"max_numeric_rel", worst_numeric},
                 {"passed", ok}};
  emit(report, o.out);
  return ok ? exit_ok : exit_failed;
}

// ---- simulate / pair ----

struct McOptions {
  WalkConfig cfg;
  std::string signal;
  std::string signal2;
  bool tcap_set = false;
  double abs_tol = 0.01;
  double max_capped = 0.02;
  std::string out;
};

void add_walk_flags(CLI::App* sub, McOptions& o) {
  auto& c = o.cfg;
  sub->add_option("--torus", c.torus, "torus size N")->check(CLI::Range(2, 1 << 20));
  sub->add_option("--paths", c.paths, "number of paths R")->check(CLI::PositiveNumber);
  sub->add_option("--y0", c.y0, "start height");
  sub->add_option("--h0", c.h0, "near-boundary time step");
  sub->add_option("--alpha", c.step.alpha, "adaptive step factor, dt = clamp(max(h0, (alpha y)^2), dt_min, dt_max)");
  sub->add_option("--dt-min", c.step.dt_min, "smallest time step");
  sub->add_option("--dt-max", c.step.dt_max, "largest time step");
  sub->add_option("--tcap", c.t_cap, "time cap (default 50 y0^2)");
  sub->add_option("--seed", c.seed, std::string("master seed (default $") + seed_env + " or 1)");
  sub->add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
  sub->add_option("--out", o.out, "JSON report path (stdout if omitted)");
}

void finalize_walk(McOptions& o, CLI::App* sub) {
  if (sub->count("--tcap") == 0) o.cfg.t_cap = 50.0 * o.cfg.y0 * o.cfg.y0;
  o.cfg.validate();
}

int run_simulate(McOptions& o) {
  std::mt19937_64 rng(o.cfg.seed);
  const LatticeSignal f =
      o.signal.empty() ? centered_delta_torus(o.cfg.torus, 0) : SignalSource{o.signal, o.cfg.torus}.load_or_random(rng);
  const McEstimate est = run_monte_carlo(o.cfg, f);
  const LatticeSignal ref = apply_spectral_torus(f, OperatorSymbol{SymbolTag::h_centered});
  const ReconstructionVerdict v = evaluate_reconstruction(est, ref, o.abs_tol, o.max_capped);
  json report = est;
  report["config"]["signal"] = o.signal.empty() ? "delta_0 - 1/N" : o.signal;
  report["config"]["abs_tol"] = o.abs_tol;
  report["config"]["max_capped_fraction"] = o.max_capped;
  report["reference"] = signal_to_json(ref);
  report["finite_height_reference"] = signal_to_json(finite_height_hilbert(f, o.cfg.y0));
  report["hitting_uniformity"] = uniformity_chi_square(est);
  report["max_abs_z"] = v.max_abs_z;
  report["acceptance"] = v;
  emit(report, o.out);
  return v.passed() ? exit_ok : exit_failed;
}

int run_pair(McOptions& o) {
  std::mt19937_64 rng(o.cfg.seed);
  const LatticeSignal f = SignalSource{o.signal, o.cfg.torus}.load_or_random(rng);
  const LatticeSignal g = SignalSource{o.signal2, o.cfg.torus}.load_or_random(rng);
  const PairingEstimate p = pairing_mc(o.cfg, f, g);
  const double tol = 3.0 * p.se + p.bias_bound + o.abs_tol * f.l2_norm() * g.l2_norm();
  const bool ok = std::abs(p.estimate - p.reference) <= tol;
  json report = {{"config", o.cfg}, {"pairing", p}, {"tolerance", tol}, {"passed", ok}};
  report["config"]["signal"] = o.signal.empty() ? "random" : o.signal;
  report["config"]["signal2"] = o.signal2.empty() ? "random" : o.signal2;
  report["config"]["abs_tol"] = o.abs_tol;
  emit(report, o.out);
  return ok ? exit_ok : exit_failed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Hilbert transforms on Z and Z_N: kernels, multipliers, Poisson extension, Monte Carlo.\n"
               "Environment: " + std::string(seed_env) + " sets the default --seed."};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  try {
    seed = default_seed();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  }

  ApplyOptions apply;
  auto* s_apply = app.add_subcommand("apply", "apply an operator to a signal file");
  s_apply->add_option("--op", apply.op, "h+, h-, h, naive, d+, d-, d0, lap, sqrt-lap, s+, s-, poisson")->required();
  s_apply->add_option("--in", apply.in, "input CSV")->required();
  s_apply->add_option("--out", apply.out, "output CSV (stdout if omitted)");
  s_apply->add_option("--report", apply.report, "JSON report path");
  s_apply->add_option("--mode", apply.mode, "window or torus (default: the file's mode)")
      ->check(CLI::IsMember({"window", "torus"}));
  s_apply->add_option("--radius", apply.radius, "window mode: extra output sites on each side")->check(CLI::NonNegativeNumber);
  s_apply->add_option("--torus", apply.torus, "torus size when embedding a window file");
  s_apply->add_option("--y", apply.y, "height for --op poisson");
  s_apply->add_option("--resolution", apply.resolution, "window mode: frequency grid size for spectral ops");

  VerifyOptions verify;
  verify.seed = seed;
  auto* s_verify = app.add_subcommand("verify", "run identity suites");
  s_verify->add_option("--suite", verify.suite, "algebra, defining, kernel, multiplier, naive or all")
      ->check(CLI::IsMember({"algebra", "defining", "kernel", "multiplier", "naive", "all"}));
  s_verify->add_option("--torus", verify.torus, "torus size for the algebra suite");
  s_verify->add_option("--trials", verify.trials, "random signals per suite");
  s_verify->add_option("--seed", verify.seed, "seed");
  s_verify->add_option("--samples", verify.samples, "frequencies for the defining relation");
  s_verify->add_option("--support", verify.support, "max support for the kernel suite");
  s_verify->add_option("--radius", verify.radius, "output radius for the kernel suite");
  s_verify->add_option("--resolution", verify.resolution, "frequency grid for the kernel suite");
  s_verify->add_option("--truncation", verify.truncation, "partial-sum length for the multiplier suite");
  s_verify->add_option("--naive-radius", verify.naive_radius, "window radius for the naive suite");
  s_verify->add_option("--tol", verify.tol, "algebra tolerance");
  s_verify->add_option("--relation-tol", verify.relation_tol, "defining-relation tolerance");
  s_verify->add_option("--kernel-tol", verify.kernel_tol, "kernel/spectral tolerance");
  s_verify->add_option("--out", verify.out, "JSON report path (stdout if omitted)");

  auto add_grid = [&](CLI::App* sub, GridOptions& o) {
    o.seed = seed;
    sub->add_option("--signal", o.source.path, "signal CSV (random mean-zero if omitted)");
    sub->add_option("--torus", o.source.torus, "torus size")->check(CLI::Range(2, 1 << 20));
    sub->add_option("--seed", o.seed, "seed for random signals");
    sub->add_option("--ny", o.ny, "number of y levels");
    sub->add_option("--ymin", o.ymin, "lowest y");
    sub->add_option("--ymax", o.ymax, "highest y");
    sub->add_option("--out", o.out, "JSON report path (stdout if omitted)");
  };
  GridOptions extend;
  auto* s_extend = app.add_subcommand("extend", "tabulate the Poisson extension of f and of Hf");
  add_grid(s_extend, extend);
  s_extend->add_option("--csv", extend.csv, "grid CSV with columns x,y,u,v");

  GridOptions cr;
  auto* s_cr = app.add_subcommand("cr-check", "Cauchy-Riemann and harmonicity residuals");
  add_grid(s_cr, cr);
  s_cr->add_option("--tol", cr.tol, "relative tolerance (times ||f||_2)");

  auto add_pairing = [&](CLI::App* sub, PairingOptions& o) {
    o.seed = seed;
    sub->add_option("--signal", o.source.path, "first signal (random if omitted)");
    sub->add_option("--signal2", o.signal2, "second signal (random if omitted)");
    sub->add_option("--torus", o.source.torus, "torus size")->check(CLI::Range(2, 1 << 20));
    sub->add_option("--pairs", o.pairs, "random pairs");
    sub->add_option("--seed", o.seed, "seed");
    sub->add_option("--nodes", o.nodes, "Gauss-Legendre nodes of the numeric rule");
    sub->add_option("--tol-closed", o.tol_closed, "closed-form tolerance");
    sub->add_option("--tol-numeric", o.tol_numeric, "numeric-rule tolerance");
    sub->add_option("--out", o.out, "JSON report path (stdout if omitted)");
  };
  PairingOptions lp;
  auto* s_lp = app.add_subcommand("lp-check", "Littlewood-Paley pairing against (f, g)");
  add_pairing(s_lp, lp);
  PairingOptions weak;
  auto* s_weak = app.add_subcommand("weak-check", "rotated-gradient pairing against (Hf, g)");
  add_pairing(s_weak, weak);

  McOptions sim;
  sim.cfg.seed = seed;
  auto* s_sim = app.add_subcommand("simulate", "Monte Carlo reconstruction of Hf from hitting data");
  add_walk_flags(s_sim, sim);
  s_sim->add_option("--signal", sim.signal, "torus signal (default delta_0 - 1/N)");
  s_sim->add_option("--abs-tol", sim.abs_tol, "per-site absolute slack");
  s_sim->add_option("--max-capped", sim.max_capped, "largest acceptable capped fraction");

  McOptions pair;
  pair.cfg.seed = seed;
  pair.cfg.paths = 100000;
  auto* s_pair = app.add_subcommand("pair", "Monte Carlo estimate of (Hf, g)");
  add_walk_flags(s_pair, pair);
  s_pair->add_option("--signal", pair.signal, "f (random if omitted)");
  s_pair->add_option("--signal2", pair.signal2, "g (random if omitted)");
  s_pair->add_option("--abs-tol", pair.abs_tol, "slack in units of |f| |g|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (*s_apply) return run_apply(apply);
    if (*s_verify) return run_verify(verify);
    if (*s_extend) return run_extend(extend);
    if (*s_cr) return run_cr_check(cr);
    if (*s_lp) return run_pairing_check(lp, false);
    if (*s_weak) return run_pairing_check(weak, true);
    if (*s_sim) {
      finalize_walk(sim, s_sim);
      return run_simulate(sim);
    }
    if (*s_pair) {
      finalize_walk(pair, s_pair);
      return run_pair(pair);
    }
  } catch (const SignalFormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_failed;
  }
  return exit_usage;
}
