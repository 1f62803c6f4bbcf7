#include "dhilbert/reports.hpp"

namespace dhilbert {

json signal_to_json(const LatticeSignal& s) {
  json out = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.push_back({{"x", s.offset() + static_cast<site_t>(i)}, {"value", s.values()[i]}});
  }
  return out;
}

void to_json(json& j, const StepRule& r) { j = {{"alpha", r.alpha}, {"dt_min", r.dt_min}, {"dt_max", r.dt_max}}; }

void to_json(json& j, const WalkConfig& c) {
  j = {{"torus", c.torus}, {"y0", c.y0},     {"h0", c.h0},       {"step_rule", c.step},
       {"t_cap", c.t_cap}, {"rate", WalkConfig::jump_rate}, {"seed", c.seed}, {"paths", c.paths},
       {"workers", c.workers}};
}

void to_json(json& j, const IdentityReport& r) {
  j = {{"torus", r.n},
       {"trials", r.trials},
       {"seed", r.seed},
       {"adjoint_plus", r.adjoint_plus},
       {"adjoint_minus", r.adjoint_minus},
       {"inverse_pm", r.inverse_pm},
       {"inverse_mp", r.inverse_mp},
       {"isometry_plus", r.isometry_plus},
       {"isometry_minus", r.isometry_minus},
       {"centered_square", r.centered_square},
       {"square_plus", r.square_plus},
       {"square_minus", r.square_minus},
       {"square_plus_other_direction", r.square_plus_other},
       {"square_minus_other_direction", r.square_minus_other},
       {"square_plus_shift", r.square_plus_direction},
       {"square_minus_shift", r.square_minus_direction},
       {"square_orientation_consistent", r.square_orientation_consistent},
       {"oracle_radius", r.oracle_radius},
       {"oracle_square_plus_at_minus1", r.oracle_square_plus_at_minus1},
       {"oracle_square_plus_at_plus1", r.oracle_square_plus_at_plus1},
       {"oracle_square_plus_shift", r.oracle_square_plus_direction},
       {"passed", r.passed()}};
}

void to_json(json& j, const DefiningRelationReport& r) {
  j = {{"samples", r.samples},
       {"seed", r.seed},
       {"max_residual_plus", r.max_residual_plus},
       {"max_residual_minus", r.max_residual_minus},
       {"max_centered_closed_form", r.max_centered_closed_form}};
}

void to_json(json& j, const KernelSpectralReport& r) {
  j = {{"trials", r.trials},         {"max_support", r.max_support}, {"radius", r.radius},
       {"resolution", r.resolution}, {"seed", r.seed},               {"max_abs_difference", r.max_abs_difference}};
}

void to_json(json& j, const MultiplierKernelReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"xi", p.xi},
                   {"sign", p.sign == Sign::plus ? "+" : "-"},
                   {"cesaro_error", p.cesaro_error},
                   {"partial_error", p.partial_error},
                   {"envelope", p.envelope},
                   {"envelope_doubled", p.envelope_doubled},
                   {"envelope_ratio", p.envelope_ratio}});
  }
  j = {{"truncation", r.truncation},
       {"max_cesaro_error", r.max_cesaro_error},
       {"min_envelope_ratio", r.min_envelope_ratio},
       {"max_envelope_ratio", r.max_envelope_ratio},
       {"points", pts}};
}

void to_json(json& j, const NaiveContrastReport& r) {
  j = {{"radius", r.radius}, {"anti_involution_defect", r.anti_involution_defect}, {"norm_of_image", r.norm_of_image}};
}

void to_json(json& j, const CauchyRiemannReport& r) {
  j = {{"points", r.points},
       {"f_norm", r.f_norm},
       {"dy_vplus", r.dy_vplus},
       {"dy_vminus", r.dy_vminus},
       {"dminus_vplus", r.dminus_vplus},
       {"dplus_vminus", r.dplus_vminus},
       {"dy_centered", r.dy_centered},
       {"dx_centered", r.dx_centered},
       {"harmonicity", r.harmonicity},
       {"swapped_orientation", r.swapped_orientation},
       {"max_residual", r.max_residual()}};
}

void to_json(json& j, const LittlewoodPaleyForms& r) {
  j = {{"dy_form", r.dy_form},
       {"dplus_form", r.dplus_form},
       {"dminus_form", r.dminus_form},
       {"gradient_form", r.gradient_form},
       {"second_moment", r.second_moment}};
}

void to_json(json& j, const McEstimate& e) {
  json sites = json::array();
  for (const auto& s : e.sites) {
    sites.push_back({{"x", s.x}, {"mean", s.mean}, {"se", s.se}, {"count", s.count}, {"variance", s.variance}});
  }
  j = {{"config", e.config},
       {"estimate", sites},
       {"total_paths", e.total_paths},
       {"capped", e.capped},
       {"aborted", e.aborted},
       {"diagnostics", e.diagnostics},
       {"capped_fraction", e.capped_fraction},
       {"total_jumps", e.total_jumps},
       {"total_time", e.total_time},
       {"jumps_per_unit_time", e.jump_rate},
       {"jumps_per_unit_time_se", e.jump_rate_se},
       {"martingale_mean", e.martingale_mean},
       {"martingale_se", e.martingale_se},
       {"start_height_bias", e.start_height_bias},
       {"wall_ms", e.wall_ms}};
}

void to_json(json& j, const PairingEstimate& e) {
  j = {{"estimate", e.estimate},
       {"se", e.se},
       {"reference", e.reference},
       {"finite_height_reference", e.finite_height_reference},
       {"bias_bound", e.bias_bound},
       {"paths_used", e.paths_used},
       {"capped", e.capped},
       {"wall_ms", e.wall_ms}};
}

void to_json(json& j, const OrthogonalityStat& s) {
  j = {{"mean_qcov", s.mean_qcov}, {"se", s.se},           {"paths", s.paths},
       {"nonzero_fraction", s.nonzero_fraction}, {"max_abs", s.max_abs}, {"wall_ms", s.wall_ms}};
}

void to_json(json& j, const CovariationCheckReport& r) {
  j = {{"paths", r.paths},
       {"aggregate_direct", r.aggregate_direct},
       {"aggregate_formula", r.aggregate_formula},
       {"relative_gap", r.relative_gap},
       {"median_path_relative_gap", r.median_path_relative_gap},
       {"max_path_residual", r.max_path_residual},
       {"max_jump_gap", r.max_jump_gap},
       {"nm_plus_max_abs_diff", r.nm_plus_max_abs_diff},
       {"nm_literal_max_abs_diff", r.nm_literal_max_abs_diff},
       {"consistent_variant", r.consistent_variant}};
}

void to_json(json& j, const ItoOrderReport& r) {
  json levels = json::array();
  for (const auto& l : r.levels) levels.push_back({{"h0", l.h0}, {"median_residual", l.median_residual}, {"paths", l.paths}});
  j = {{"levels", levels}, {"ratios", r.ratios}, {"passed", r.passed()}};
}

void to_json(json& j, const ReconstructionVerdict& v) {
  j = {{"sites_within", v.sites_within},
       {"sites_required", v.sites_required},
       {"max_abs_z", v.max_abs_z},
       {"capped_ok", v.capped_ok},
       {"jump_rate_ok", v.jump_rate_ok},
       {"passed", v.passed()}};
}

void to_json(json& j, const ChiSquare& c) {
  j = {{"statistic", c.statistic}, {"dof", c.dof}, {"p_value", c.p_value}};
}

}  // namespace dhilbert
