#include "dhilbert/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dhilbert/rng.hpp"
#include "dhilbert/transforms.hpp"

namespace dhilbert {

namespace {

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(std::string("WalkConfig: ") + message);
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void WalkConfig::validate() const {
  require(torus >= 2, "torus size must be >= 2");
  require(finite(y0) && y0 > 0.0, "y0 must be positive");
  require(finite(h0) && h0 > 0.0, "h0 must be positive");
  require(finite(step.alpha) && step.alpha >= 0.0, "alpha must be >= 0");
  require(finite(step.dt_min) && step.dt_min > 0.0, "dt_min must be positive");
  require(finite(step.dt_max) && step.dt_max >= step.dt_min, "dt_max must be >= dt_min");
  require(step.dt_min <= h0 && h0 <= step.dt_max, "need dt_min <= h0 <= dt_max");
  require(finite(t_cap) && t_cap > 0.0, "t_cap must be positive");
  require(paths >= 1, "paths must be >= 1");
  require(workers >= 1, "workers must be >= 1");
}

double WalkConfig::step_size(double y) const {
  const double ay = step.alpha * y;
  return std::clamp(std::max(h0, ay * ay), step.dt_min, step.dt_max);
}

struct WalkEngine::Eval {
  double um, u, up, uy, uyy;

  double d0() const { return 0.5 * (up - um); }
  double dplus() const { return up - u; }
  double dminus() const { return u - um; }
};

WalkEngine::WalkEngine(const WalkConfig& cfg, std::vector<LatticeSignal> fields)
    : cfg_(cfg), n_(cfg.torus), modes_(cfg.torus / 2 + 1), fields_(fields.size()), signals_(std::move(fields)) {
  cfg_.validate();
  if (fields_ == 0) throw std::invalid_argument("WalkEngine: at least one field required");
  for (const auto& f : signals_) {
    if (!f.is_torus() || f.size() != n_) throw std::invalid_argument("WalkEngine: fields must be torus signals of size cfg.torus");
    if (!f.mean_zero()) throw std::invalid_argument("WalkEngine: fields must be mean-zero");
  }

  decay_.resize(modes_);
  for (std::size_t j = 0; j < modes_; ++j) {
    decay_[j] = 2.0 * std::sin(std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_));
  }

  const std::size_t stride = n_ * modes_;
  tab_u_.assign(fields_ * stride, 0.0);
  tab_dy_.assign(fields_ * stride, 0.0);
  tab_dyy_.assign(fields_ * stride, 0.0);
  for (std::size_t i = 0; i < fields_; ++i) {
    const std::vector<cplx> c = torus_spectrum(signals_[i]);
    for (std::size_t x = 0; x < n_; ++x) {
      for (std::size_t j = 0; j < modes_; ++j) {
        // Modes j and n - j share the decay rate; for real f they add up to 2 Re.
        const double fold = (j == 0 || 2 * j == n_) ? 1.0 : 2.0;
        const double phase = 2.0 * std::numbers::pi * static_cast<double>((x * j) % n_) / static_cast<double>(n_);
        const double b = fold * (c[j] * std::polar(1.0, phase)).real() / static_cast<double>(n_);
        const std::size_t at = i * stride + x * modes_ + j;
        tab_u_[at] = b;
        tab_dy_[at] = -decay_[j] * b;
        tab_dyy_[at] = decay_[j] * decay_[j] * b;
      }
    }
  }
}

void WalkEngine::evaluate(std::span<const double> e, std::size_t x, std::span<Eval> out) const {
  const std::size_t xm = x == 0 ? n_ - 1 : x - 1;
  const std::size_t xp = x + 1 == n_ ? 0 : x + 1;
  const std::size_t stride = n_ * modes_;
  for (std::size_t i = 0; i < fields_; ++i) {
    const double* um = &tab_u_[i * stride + xm * modes_];
    const double* u = &tab_u_[i * stride + x * modes_];
    const double* up = &tab_u_[i * stride + xp * modes_];
    const double* uy = &tab_dy_[i * stride + x * modes_];
    const double* uyy = &tab_dyy_[i * stride + x * modes_];
    Eval r{0.0, 0.0, 0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < modes_; ++j) {
      r.um += um[j] * e[j];
      r.u += u[j] * e[j];
      r.up += up[j] * e[j];
      r.uy += uy[j] * e[j];
      r.uyy += uyy[j] * e[j];
    }
    out[i] = r;
  }
}

PathRecord WalkEngine::run(std::uint64_t index, std::span<double> n_finals, CovariationRecord* cov) const {
  if (!n_finals.empty() && n_finals.size() != fields_) {
    throw std::invalid_argument("WalkEngine::run: n_finals must hold one value per field");
  }
  if (cov != nullptr && fields_ < 2) throw std::invalid_argument("WalkEngine::run: covariation needs two fields");

  RngStream rng(cfg_.seed, index);
  std::vector<double> e(modes_);
  std::vector<Eval> ev(fields_);
  std::vector<double> n_acc(fields_, 0.0);
  CovariationRecord cv;

  auto set_height = [&](double y) {
    for (std::size_t j = 0; j < modes_; ++j) e[j] = std::exp(-decay_[j] * y);
  };

  PathRecord rec;
  std::size_t x = static_cast<std::size_t>(rng.below(n_));
  rec.x_start = static_cast<site_t>(x);
  double y = cfg_.y0;
  double t = 0.0;
  double next_jump = rng.exponential() / WalkConfig::jump_rate;
  double ito = 0.0;
  double qcov = 0.0;

  set_height(y);
  evaluate(e, x, ev);
  rec.m_initial = ev[0].u;

  while (true) {
    if (t >= cfg_.t_cap) {
      rec.capped = true;
      break;
    }
    const double t_end = std::min(t + cfg_.step_size(y), cfg_.t_cap);
    const bool jump_due = next_jump <= t_end;
    double h = (jump_due ? next_jump : t_end) - t;
    double dy = std::sqrt(h) * rng.normal();
    bool hit = false;
    if (y + dy <= 0.0) {
      h *= y / (y - (y + dy));
      dy = -y;
      hit = true;
    }

    // Brownian part, left-point sums.
    for (std::size_t i = 0; i < fields_; ++i) n_acc[i] -= ev[i].d0() * dy;
    ito += ev[0].uy * dy + 0.5 * ev[0].uyy * h;
    qcov += (ev[0].uy * dy) * (-ev[0].d0() * dy);
    if (cov != nullptr) {
      cv.brownian_realized += (ev[0].uy * dy) * (ev[1].uy * dy);
      cv.brownian_compensator += ev[0].uy * ev[1].uy * h;
    }
    t += h;
    y = hit ? 0.0 : y + dy;
    ++rec.n_steps;
    set_height(y);
    evaluate(e, x, ev);
    if (hit) {
      rec.hit = true;
      break;
    }

    if (jump_due) {
      const int eps = rng.sign();
      const Eval& f = ev[0];
      const double dm = eps > 0 ? f.dplus() : -f.dminus();
      for (std::size_t i = 0; i < fields_; ++i) n_acc[i] += ev[i].uy * eps;
      ito += dm;
      qcov += dm * (f.uy * eps);
      if (cov != nullptr) {
        const Eval& g = ev[1];
        const double dmg = eps > 0 ? g.dplus() : -g.dminus();
        const double formula = eps > 0 ? f.dplus() * g.dplus() : f.dminus() * g.dminus();
        cv.mm_direct += dm * dmg;
        cv.mm_formula += formula;
        cv.mm_jump_gap = std::max(cv.mm_jump_gap, std::abs(dm * dmg - formula));
        cv.nm_jump_direct += f.uy * eps * dmg;
        cv.nm_jump_plus += f.uy * (eps > 0 ? g.dplus() : g.dminus());
        cv.nm_jump_literal += f.uy * g.dminus();
      }
      x = eps > 0 ? (x + 1 == n_ ? 0 : x + 1) : (x == 0 ? n_ - 1 : x - 1);
      ++rec.n_jumps;
      next_jump += rng.exponential() / WalkConfig::jump_rate;
      evaluate(e, x, ev);
    }
  }

  rec.x_end = static_cast<site_t>(x);
  rec.sim_time = t;
  rec.m_final = ev[0].u;
  rec.n_final = n_acc[0];
  rec.realized_qcov_mn = qcov;
  rec.ito_residual = rec.m_final - rec.m_initial - ito;

  bool ok = finite(rec.m_final) && finite(rec.ito_residual) && finite(qcov);
  for (double v : n_acc) ok = ok && finite(v);
  if (!ok) {
    rec.aborted = true;
    rec.hit = false;
    rec.diagnostic = "non-finite accumulator on path " + std::to_string(index) + " at t=" + std::to_string(t) +
                     ", y=" + std::to_string(y);
  }
  if (!n_finals.empty()) std::copy(n_acc.begin(), n_acc.end(), n_finals.begin());
  if (cov != nullptr) {
    cv.mm_direct += cv.brownian_realized;
    cv.mm_formula += cv.brownian_compensator;
    *cov = cv;
  }
  return rec;
}

PathRecord simulate_path(const WalkConfig& cfg, const HarmonicExtension& ext, std::uint64_t index) {
  if (index >= cfg.paths) throw std::invalid_argument("simulate_path: index must be < cfg.paths");
  return WalkEngine(cfg, {ext.base()}).run(index);
}

}  // namespace dhilbert
