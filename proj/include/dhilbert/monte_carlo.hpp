#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dhilbert/signal.hpp"
#include "dhilbert/walk.hpp"

namespace dhilbert {

/// count / sum / sum of squares, merged associatively.
struct Tally {
  std::size_t count = 0;
  double sum = 0.0;
  double sum_sq = 0.0;

  void add(double v) {
    ++count;
    sum += v;
    sum_sq += v * v;
  }
  void merge(const Tally& o) {
    count += o.count;
    sum += o.sum;
    sum_sq += o.sum_sq;
  }
  double mean() const { return count == 0 ? 0.0 : sum / static_cast<double>(count); }
  /// Unbiased sample variance; 0 below two samples.
  double variance() const;
  double standard_error() const;
};

struct SiteEstimate {
  site_t x = 0;
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double se = 0.0;
};

/// Binned estimate of E[N^f_T | X_T = x] over the hitting site.
struct McEstimate {
  WalkConfig config;
  std::vector<SiteEstimate> sites;
  std::size_t total_paths = 0;
  std::size_t capped = 0;
  std::size_t aborted = 0;
  double capped_fraction = 0.0;
  std::vector<std::string> diagnostics;  // first few aborted paths
  std::size_t total_jumps = 0;
  double total_time = 0.0;
  double jump_rate = 0.0;
  double jump_rate_se = 0.0;
  double martingale_mean = 0.0;  // E[M_T - M_0]
  double martingale_se = 0.0;
  double start_height_bias = 0.0;  // max_x |Hf - H_{y0} f|
  double wall_ms = 0.0;

  double median_se() const;
};

/// Throws std::runtime_error when more than half of the paths are capped.
McEstimate run_monte_carlo(const WalkConfig& cfg, const LatticeSignal& f);

/// Exact mean of the estimator for a walk started at finite height y0:
/// the centered Hilbert multiplier times (1 - e^{-2 a(xi) y0}).
LatticeSignal finite_height_hilbert(const LatticeSignal& f, double y0);

struct PairingEstimate {
  double estimate = 0.0;
  double se = 0.0;
  double reference = 0.0;               // (Hf, g)
  double finite_height_reference = 0.0; // (H_{y0} f, g)
  double bias_bound = 0.0;              // |reference - finite_height_reference|
  std::size_t paths_used = 0;
  std::size_t capped = 0;
  double wall_ms = 0.0;
};

/// N * mean of n_final * g(x_end) over non-capped paths.
PairingEstimate pairing_mc(const WalkConfig& cfg, const LatticeSignal& f, const LatticeSignal& g);

/// Several pairs driven by the same paths.
std::vector<PairingEstimate> pairing_mc_batch(const WalkConfig& cfg,
                                              const std::vector<std::pair<LatticeSignal, LatticeSignal>>& pairs);

struct OrthogonalityStat {
  double mean_qcov = 0.0;
  double se = 0.0;
  std::size_t paths = 0;
  double nonzero_fraction = 0.0;  // share of paths with |[M,N]_T| > 1e-6
  double max_abs = 0.0;
  double wall_ms = 0.0;
};

/// Realized [M^f, N^f] at the stopping time; capped paths count (stopped at t_cap).
OrthogonalityStat orthogonality_stat(const WalkConfig& cfg, const LatticeSignal& f);

struct CovariationCheckReport {
  std::size_t paths = 0;
  double aggregate_direct = 0.0;   // sum over paths of realized dM^f dM^g
  double aggregate_formula = 0.0;  // sum over paths of the bracket display
  double relative_gap = 0.0;
  double median_path_relative_gap = 0.0;
  double max_path_residual = 0.0;        // max |direct - formula| per path
  double max_jump_gap = 0.0;             // single-jump |dM^f dM^g - formula|
  double nm_plus_max_abs_diff = 0.0;     // |sum dN^f dM^g - plus variant| per path
  double nm_literal_max_abs_diff = 0.0;  // |sum dN^f dM^g - literal variant| per path
  std::string consistent_variant;        // "plus" or "literal"
};

/// Pathwise comparison of [M^f, M^g] from increment products against its formula,
/// and of the two candidate jump terms of <N^f, M^g>.
CovariationCheckReport covariation_formula_check(const WalkConfig& cfg, const LatticeSignal& f,
                                                 const LatticeSignal& g, std::size_t n_paths);

struct ItoLevel {
  double h0 = 0.0;
  double median_residual = 0.0;
  std::size_t paths = 0;
};

struct ItoOrderReport {
  std::vector<ItoLevel> levels;
  std::vector<double> ratios;  // median(h) / median(h / 2)

  bool passed(double lo = 1.2, double hi = 1.8) const;
};

/// Median |Ito residual| at each h0 (dt_min lowered to h0 where needed).
ItoOrderReport ito_order_check(const WalkConfig& cfg, const LatticeSignal& f, const std::vector<double>& h0s);

struct ReconstructionVerdict {
  std::size_t sites_within = 0;
  std::size_t sites_required = 0;
  double max_abs_z = 0.0;
  bool capped_ok = false;
  bool jump_rate_ok = false;

  bool passed() const { return sites_within >= sites_required && capped_ok && jump_rate_ok; }
};

/// Site test |mean - reference| <= 3 se + abs_tol, required at ceil(7N/8) sites.
ReconstructionVerdict evaluate_reconstruction(const McEstimate& est, const LatticeSignal& reference,
                                              double abs_tol = 0.01, double max_capped_fraction = 0.02);

struct ChiSquare {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 0.0;
};

/// Pearson test of the hitting-site counts against the uniform law.
ChiSquare uniformity_chi_square(const McEstimate& est);

}  // namespace dhilbert
