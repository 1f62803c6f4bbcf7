#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dhilbert/poisson.hpp"
#include "dhilbert/signal.hpp"

namespace dhilbert {

/// Time-step control: dt(y) = clamp(max(h0, (alpha y)^2), dt_min, dt_max).
struct StepRule {
  double alpha = 0.1;
  double dt_min = 1e-4;
  double dt_max = 1.0;
};

/// Configuration of the background-noise walk Z_t = (Y_t, X_t) on (0, inf) x Z_N.
///
/// Y is a standard Brownian motion started at y0, X a compound Poisson process
/// with unit rate and fair +-1 steps. The path stops when Y reaches 0.
struct WalkConfig {
  std::size_t torus = 16;
  double y0 = 12.0;
  double h0 = 1e-3;
  StepRule step;
  double t_cap = 50.0 * 12.0 * 12.0;
  std::uint64_t seed = 1;
  std::size_t paths = 1000;
  std::size_t workers = 1;

  static constexpr double jump_rate = 1.0;

  /// Throws std::invalid_argument on the first violated precondition.
  void validate() const;
  double step_size(double y) const;
};

struct PathRecord {
  site_t x_start = 0;
  site_t x_end = 0;
  bool hit = false;
  bool capped = false;
  bool aborted = false;
  double n_final = 0.0;
  double m_final = 0.0;
  double m_initial = 0.0;
  double realized_qcov_mn = 0.0;  // [M^f, N^f] at the stopping time
  double ito_residual = 0.0;      // M_T - M_0 minus the discrete Ito expansion
  std::size_t n_jumps = 0;
  std::size_t n_steps = 0;
  double sim_time = 0.0;
  std::string diagnostic;
};

/// Pathwise covariation accumulators between the first two fields f and g.
struct CovariationRecord {
  double mm_direct = 0.0;   // sum dM^f dM^g over jumps + sum dy f dy g dt
  double mm_formula = 0.0;  // jump part from the (dX)+ d+f d+g + (dX)- d-f d-g display
  double mm_jump_gap = 0.0;       // max |dM^f dM^g - formula| over single jumps
  double nm_jump_direct = 0.0;    // sum dN^f dM^g over jumps
  double nm_jump_plus = 0.0;      // sum dy f ((dX)+ d+g + (dX)- d-g)
  double nm_jump_literal = 0.0;   // sum dy f ((dX)+ d-g + (dX)- d-g)
  double brownian_realized = 0.0;  // sum dM^f_c dM^g_c
  double brownian_compensator = 0.0;  // sum dy f dy g dt
};

/// Simulation engine for one or more fields driven by the same paths.
///
/// Field 0 is the primary f (M^f, N^f, Ito residual and [M^f, N^f]); every
/// field gets its own N at the stopping time. Fields must be mean-zero torus
/// signals of size cfg.torus.
class WalkEngine {
 public:
  WalkEngine(const WalkConfig& cfg, std::vector<LatticeSignal> fields);

  const WalkConfig& config() const { return cfg_; }
  std::size_t field_count() const { return fields_; }
  const LatticeSignal& field(std::size_t i) const { return signals_.at(i); }

  /// Runs path `index`. `n_finals`, when non-empty, receives N of every field.
  /// `cov` requires at least two fields.
  PathRecord run(std::uint64_t index, std::span<double> n_finals = {}, CovariationRecord* cov = nullptr) const;

 private:
  struct Eval;
  void evaluate(std::span<const double> e, std::size_t x, std::span<Eval> out) const;

  WalkConfig cfg_;
  std::size_t n_;
  std::size_t modes_;  // n/2 + 1 folded cosine modes
  std::size_t fields_;
  std::vector<LatticeSignal> signals_;
  std::vector<double> decay_;
  // [field][x][mode] tables for u, dy u, dyy u at unit exponential weights.
  std::vector<double> tab_u_;
  std::vector<double> tab_dy_;
  std::vector<double> tab_dyy_;
};

/// Single-field convenience wrapper.
PathRecord simulate_path(const WalkConfig& cfg, const HarmonicExtension& ext, std::uint64_t index);

}  // namespace dhilbert
