#include "dhilbert/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <boost/math/special_functions/gamma.hpp>

#include "dhilbert/transforms.hpp"

namespace dhilbert {

namespace {

constexpr std::size_t chunk_paths = 2048;
constexpr std::size_t max_diagnostics = 8;

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// Runs body(index, acc) for every path index, one accumulator per fixed-size
// chunk. The chunk layout does not depend on the worker count, so merging the
// returned accumulators in order gives the same floats for any number of workers.
template <class Acc, class Body>
std::vector<Acc> run_chunks(std::size_t paths, std::size_t workers, const Acc& proto, const Body& body) {
  const std::size_t chunks = (paths + chunk_paths - 1) / chunk_paths;
  std::vector<Acc> out(chunks, proto);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto worker = [&] {
    try {
      for (std::size_t c = next++; c < chunks; c = next++) {
        const std::size_t end = std::min(paths, (c + 1) * chunk_paths);
        for (std::size_t i = c * chunk_paths; i < end; ++i) body(static_cast<std::uint64_t>(i), out[c]);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next = chunks;
    }
  };

  const std::size_t w = std::min(workers, chunks);
  if (w <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(w);
    for (std::size_t i = 0; i < w; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);
  return out;
}

void require_mc_signal(const LatticeSignal& f, const WalkConfig& cfg, const char* who) {
  if (!f.is_torus() || f.size() != cfg.torus) {
    throw std::invalid_argument(std::string(who) + ": signal must be a torus of size " + std::to_string(cfg.torus));
  }
  if (!f.mean_zero()) throw std::invalid_argument(std::string(who) + ": signal must be mean-zero");
}

struct McAcc {
  std::vector<Tally> sites;
  std::size_t capped = 0;
  std::size_t aborted = 0;
  std::vector<std::string> diagnostics;
  Tally martingale;
  // Jump rate as a ratio estimator over paths.
  double jumps = 0.0, time = 0.0, jj = 0.0, tt = 0.0, jt = 0.0;

  void merge(const McAcc& o) {
    for (std::size_t i = 0; i < sites.size(); ++i) sites[i].merge(o.sites[i]);
    capped += o.capped;
    aborted += o.aborted;
    for (const auto& d : o.diagnostics) {
      if (diagnostics.size() < max_diagnostics) diagnostics.push_back(d);
    }
    martingale.merge(o.martingale);
    jumps += o.jumps;
    time += o.time;
    jj += o.jj;
    tt += o.tt;
    jt += o.jt;
  }
};

template <class Acc>
Acc merge_all(std::vector<Acc> parts, Acc total) {
  for (const auto& p : parts) total.merge(p);
  return total;
}

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  return 0.5 * (*mid + *std::max_element(v.begin(), mid));
}

}  // namespace

double Tally::variance() const {
  if (count < 2) return 0.0;
  const double n = static_cast<double>(count);
  const double m = sum / n;
  return std::max(0.0, (sum_sq - n * m * m) / (n - 1.0));
}

double Tally::standard_error() const { return count == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(count)); }

double McEstimate::median_se() const {
  std::vector<double> se;
  for (const auto& s : sites) se.push_back(s.se);
  return median_of(std::move(se));
}

McEstimate run_monte_carlo(const WalkConfig& cfg, const LatticeSignal& f) {
  const auto start = Clock::now();
  require_mc_signal(f, cfg, "run_monte_carlo");
  const WalkEngine engine(cfg, {f});

  McAcc proto;
  proto.sites.resize(cfg.torus);
  auto parts = run_chunks(cfg.paths, cfg.workers, proto, [&](std::uint64_t i, McAcc& acc) {
    const PathRecord r = engine.run(i);
    if (r.aborted) {
      ++acc.aborted;
      if (acc.diagnostics.size() < max_diagnostics) acc.diagnostics.push_back(r.diagnostic);
      return;
    }
    const double j = static_cast<double>(r.n_jumps);
    acc.jumps += j;
    acc.time += r.sim_time;
    acc.jj += j * j;
    acc.tt += r.sim_time * r.sim_time;
    acc.jt += j * r.sim_time;
    acc.martingale.add(r.m_final - r.m_initial);
    if (r.capped) {
      ++acc.capped;
      return;
    }
    acc.sites[static_cast<std::size_t>(r.x_end)].add(r.n_final);
  });
  const McAcc total = merge_all(std::move(parts), proto);

  McEstimate est;
  est.config = cfg;
  est.total_paths = cfg.paths;
  est.capped = total.capped;
  est.aborted = total.aborted;
  est.diagnostics = total.diagnostics;
  est.capped_fraction = static_cast<double>(total.capped) / static_cast<double>(cfg.paths);
  for (std::size_t x = 0; x < cfg.torus; ++x) {
    const Tally& t = total.sites[x];
    est.sites.push_back({static_cast<site_t>(x), t.count, t.mean(), t.variance(), t.standard_error()});
  }
  est.total_jumps = static_cast<std::size_t>(total.jumps);
  est.total_time = total.time;
  if (total.time > 0.0) {
    const double r = total.jumps / total.time;
    est.jump_rate = r;
    est.jump_rate_se = std::sqrt(std::max(0.0, total.jj - 2.0 * r * total.jt + r * r * total.tt)) / total.time;
  }
  est.martingale_mean = total.martingale.mean();
  est.martingale_se = total.martingale.standard_error();
  const LatticeSignal h = apply_spectral_torus(f, OperatorSymbol{SymbolTag::h_centered});
  est.start_height_bias = max_abs_difference(h, finite_height_hilbert(f, cfg.y0));
  est.wall_ms = elapsed_ms(start);
  if (est.capped_fraction > 0.5) {
    throw std::runtime_error("run_monte_carlo: " + std::to_string(total.capped) + " of " + std::to_string(cfg.paths) +
                             " paths capped; raise t_cap or lower y0");
  }
  return est;
}

LatticeSignal finite_height_hilbert(const LatticeSignal& f, double y0) {
  if (!f.is_torus()) throw std::invalid_argument("finite_height_hilbert: expects a torus signal");
  if (!(y0 > 0.0)) throw std::invalid_argument("finite_height_hilbert: y0 must be positive");
  std::vector<cplx> c = torus_spectrum(f);
  const std::size_t n = c.size();
  for (std::size_t k = 0; k < n; ++k) {
    const double xi = torus_frequency(k, n);
    const double a = eval_multiplier(SymbolTag::sqrt_neg_laplacian, xi).real();
    c[k] *= eval_multiplier(SymbolTag::h_centered, xi) * (1.0 - std::exp(-2.0 * a * y0));
  }
  return torus_from_spectrum(c);
}

std::vector<PairingEstimate> pairing_mc_batch(const WalkConfig& cfg,
                                              const std::vector<std::pair<LatticeSignal, LatticeSignal>>& pairs) {
  const auto start = Clock::now();
  if (pairs.empty()) throw std::invalid_argument("pairing_mc_batch: no pairs");
  std::vector<LatticeSignal> fields;
  for (const auto& [f, g] : pairs) {
    require_mc_signal(f, cfg, "pairing_mc");
    require_mc_signal(g, cfg, "pairing_mc");
    fields.push_back(f);
  }
  const WalkEngine engine(cfg, fields);
  const std::size_t p = pairs.size();
  const double scale = static_cast<double>(cfg.torus);

  struct Acc {
    std::vector<Tally> pairs;
    std::size_t capped = 0;
    std::size_t aborted = 0;
    void merge(const Acc& o) {
      for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i].merge(o.pairs[i]);
      capped += o.capped;
      aborted += o.aborted;
    }
  };
  Acc proto;
  proto.pairs.resize(p);
  auto parts = run_chunks(cfg.paths, cfg.workers, proto, [&](std::uint64_t i, Acc& acc) {
    std::vector<double> n(p);
    const PathRecord r = engine.run(i, n);
    if (r.aborted) {
      ++acc.aborted;
      return;
    }
    // TODO: complete capped paths with the conditional tail E[N_tau g(X_tau) | Z_tcap]
    // instead of dropping them; dropping biases the pairing toward 0 by ~1%.
    if (r.capped) {
      ++acc.capped;
      return;
    }
    for (std::size_t k = 0; k < p; ++k) acc.pairs[k].add(scale * n[k] * pairs[k].second.at(r.x_end));
  });
  const Acc total = merge_all(std::move(parts), proto);
  if (2 * total.capped > cfg.paths) throw std::runtime_error("pairing_mc: more than half of the paths capped");

  std::vector<PairingEstimate> out;
  for (std::size_t k = 0; k < p; ++k) {
    const auto& [f, g] = pairs[k];
    PairingEstimate e;
    e.estimate = total.pairs[k].mean();
    e.se = total.pairs[k].standard_error();
    e.reference = inner_product(apply_spectral_torus(f, OperatorSymbol{SymbolTag::h_centered}), g);
    e.finite_height_reference = inner_product(finite_height_hilbert(f, cfg.y0), g);
    e.bias_bound = std::abs(e.reference - e.finite_height_reference);
    e.paths_used = total.pairs[k].count;
    e.capped = total.capped;
    out.push_back(e);
  }
  const double ms = elapsed_ms(start);
  for (auto& e : out) e.wall_ms = ms;
  return out;
}

PairingEstimate pairing_mc(const WalkConfig& cfg, const LatticeSignal& f, const LatticeSignal& g) {
  return pairing_mc_batch(cfg, {{f, g}}).front();
}

OrthogonalityStat orthogonality_stat(const WalkConfig& cfg, const LatticeSignal& f) {
  const auto start = Clock::now();
  require_mc_signal(f, cfg, "orthogonality_stat");
  const WalkEngine engine(cfg, {f});
  struct Acc {
    Tally q;
    std::size_t nonzero = 0;
    double max_abs = 0.0;
    void merge(const Acc& o) {
      q.merge(o.q);
      nonzero += o.nonzero;
      max_abs = std::max(max_abs, o.max_abs);
    }
  };
  auto parts = run_chunks(cfg.paths, cfg.workers, Acc{}, [&](std::uint64_t i, Acc& acc) {
    const PathRecord r = engine.run(i);
    if (r.aborted) return;
    acc.q.add(r.realized_qcov_mn);
    if (std::abs(r.realized_qcov_mn) > 1e-6) ++acc.nonzero;
    acc.max_abs = std::max(acc.max_abs, std::abs(r.realized_qcov_mn));
  });
  const Acc total = merge_all(std::move(parts), Acc{});
  OrthogonalityStat s;
  s.mean_qcov = total.q.mean();
  s.se = total.q.standard_error();
  s.paths = total.q.count;
  s.nonzero_fraction = s.paths == 0 ? 0.0 : static_cast<double>(total.nonzero) / static_cast<double>(s.paths);
  s.max_abs = total.max_abs;
  s.wall_ms = elapsed_ms(start);
  return s;
}

CovariationCheckReport covariation_formula_check(const WalkConfig& cfg, const LatticeSignal& f,
                                                 const LatticeSignal& g, std::size_t n_paths) {
  require_mc_signal(f, cfg, "covariation_formula_check");
  require_mc_signal(g, cfg, "covariation_formula_check");
  WalkConfig c = cfg;
  c.paths = n_paths;
  const WalkEngine engine(c, {f, g});
  struct Acc {
    double direct = 0.0, formula = 0.0, max_residual = 0.0, max_jump_gap = 0.0, plus_diff = 0.0, literal_diff = 0.0;
    std::vector<double> rel_gaps;
    void merge(const Acc& o) {
      direct += o.direct;
      formula += o.formula;
      max_residual = std::max(max_residual, o.max_residual);
      max_jump_gap = std::max(max_jump_gap, o.max_jump_gap);
      plus_diff = std::max(plus_diff, o.plus_diff);
      literal_diff = std::max(literal_diff, o.literal_diff);
      rel_gaps.insert(rel_gaps.end(), o.rel_gaps.begin(), o.rel_gaps.end());
    }
  };
  auto parts = run_chunks(c.paths, c.workers, Acc{}, [&](std::uint64_t i, Acc& acc) {
    CovariationRecord cv;
    const PathRecord r = engine.run(i, {}, &cv);
    if (r.aborted) return;
    acc.direct += cv.mm_direct;
    acc.formula += cv.mm_formula;
    const double residual = std::abs(cv.mm_direct - cv.mm_formula);
    acc.max_residual = std::max(acc.max_residual, residual);
    if (cv.mm_formula != 0.0) acc.rel_gaps.push_back(residual / std::abs(cv.mm_formula));
    acc.max_jump_gap = std::max(acc.max_jump_gap, cv.mm_jump_gap);
    acc.plus_diff = std::max(acc.plus_diff, std::abs(cv.nm_jump_direct - cv.nm_jump_plus));
    acc.literal_diff = std::max(acc.literal_diff, std::abs(cv.nm_jump_direct - cv.nm_jump_literal));
  });
  const Acc total = merge_all(std::move(parts), Acc{});
  CovariationCheckReport rep;
  rep.paths = n_paths;
  rep.aggregate_direct = total.direct;
  rep.aggregate_formula = total.formula;
  rep.relative_gap = total.formula == 0.0 ? 0.0 : std::abs(total.direct - total.formula) / std::abs(total.formula);
  rep.median_path_relative_gap = median_of(total.rel_gaps);
  rep.max_path_residual = total.max_residual;
  rep.max_jump_gap = total.max_jump_gap;
  rep.nm_plus_max_abs_diff = total.plus_diff;
  rep.nm_literal_max_abs_diff = total.literal_diff;
  rep.consistent_variant = total.plus_diff <= total.literal_diff ? "plus" : "literal";
  return rep;
}

bool ItoOrderReport::passed(double lo, double hi) const {
  if (ratios.empty()) return false;
  return std::all_of(ratios.begin(), ratios.end(), [&](double r) { return r >= lo && r <= hi; });
}

ItoOrderReport ito_order_check(const WalkConfig& cfg, const LatticeSignal& f, const std::vector<double>& h0s) {
  require_mc_signal(f, cfg, "ito_order_check");
  ItoOrderReport rep;
  for (double h : h0s) {
    WalkConfig c = cfg;
    c.h0 = h;
    c.step.dt_min = std::min(c.step.dt_min, h);
    c.step.dt_max = std::max(c.step.dt_max, h);
    const WalkEngine engine(c, {f});
    struct Acc {
      std::vector<double> residuals;
      void merge(const Acc& o) { residuals.insert(residuals.end(), o.residuals.begin(), o.residuals.end()); }
    };
    auto parts = run_chunks(c.paths, c.workers, Acc{}, [&](std::uint64_t i, Acc& acc) {
      const PathRecord r = engine.run(i);
      if (!r.aborted) acc.residuals.push_back(std::abs(r.ito_residual));
    });
    Acc total = merge_all(std::move(parts), Acc{});
    rep.levels.push_back({h, median_of(std::move(total.residuals)), c.paths});
  }
  for (std::size_t i = 1; i < rep.levels.size(); ++i) {
    rep.ratios.push_back(rep.levels[i - 1].median_residual / rep.levels[i].median_residual);
  }
  return rep;
}

ReconstructionVerdict evaluate_reconstruction(const McEstimate& est, const LatticeSignal& reference, double abs_tol,
                                              double max_capped_fraction) {
  if (reference.size() != est.sites.size()) {
    throw std::invalid_argument("evaluate_reconstruction: reference size differs from the torus");
  }
  ReconstructionVerdict v;
  const std::size_t n = est.sites.size();
  v.sites_required = (7 * n + 7) / 8;
  for (const auto& s : est.sites) {
    const double err = std::abs(s.mean - reference.at(s.x));
    if (err <= 3.0 * s.se + abs_tol) ++v.sites_within;
    if (s.se > 0.0) v.max_abs_z = std::max(v.max_abs_z, err / s.se);
  }
  v.capped_ok = est.capped_fraction <= max_capped_fraction;
  v.jump_rate_ok = std::abs(est.jump_rate - WalkConfig::jump_rate) <= 3.0 * est.jump_rate_se;
  return v;
}

ChiSquare uniformity_chi_square(const McEstimate& est) {
  ChiSquare c;
  std::size_t total = 0;
  for (const auto& s : est.sites) total += s.count;
  if (total == 0 || est.sites.size() < 2) throw std::invalid_argument("uniformity_chi_square: no hits");
  const double expected = static_cast<double>(total) / static_cast<double>(est.sites.size());
  for (const auto& s : est.sites) {
    const double d = static_cast<double>(s.count) - expected;
    c.statistic += d * d / expected;
  }
  c.dof = est.sites.size() - 1;
  c.p_value = boost::math::gamma_q(0.5 * static_cast<double>(c.dof), 0.5 * c.statistic);
  return c;
}

}  // namespace dhilbert
