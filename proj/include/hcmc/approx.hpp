#pragma once

#include <cstdint>
#include <optional>

#include "hcmc/sketch.hpp"
#include "hcmc/trigpoly.hpp"

namespace hcmc {

enum class Variant { complex_basis, real_basis };

/// Full parameter set of one randomized approximation run: exact recovery
/// on the cross Q_[J], one shared Gaussian sketch of layers J+1..L.
struct ApproxPlan {
  SmoothnessParams params;  // p = 2 for the core algorithm
  int J = 0;
  int L = 0;
  std::uint64_t n0 = 0;      // |Q_[J]|, per-half information count
  std::uint64_t budget = 0;  // total n = 2*n0
  Variant variant = Variant::complex_basis;
  std::uint64_t seed = 0;
  bool degraded_budget = false;  // requested budget below 2*|Q_[0]|
};

struct TwoStageParams {
  std::size_t m = 0;   // m-term budget of the deterministic stage
  double s_aux = 0.0;  // auxiliary smoothness, in (1/2, r - 1/2)
  ApproxPlan plan;     // randomized stage; its weights are rebuilt from s_aux

  TwoStageParams(std::size_t m, double s_aux, ApproxPlan plan);
};

/// Midpoint of the admissible interval (1/2, r - 1/2); requires r > 1.
double default_s_aux(double r);

/// Extra outputs for tests and reports.
struct ApproxOutput {
  TrigPoly result;
  std::uint64_t info_exact = 0;   // coefficients read directly
  std::uint64_t info_random = 0;  // random functionals evaluated
  bool rank_flag = false;         // n0 >= sketched dimension; the sketch is no longer compressive
};

/// J from the budget, L from the default truncation rule
/// L = max(J+1, ceil(2rJ/(2r-1)) + d) unless overridden. Rejects r <= 1/2
/// (the embedding into L_inf needs r > 1/2).
ApproxPlan plan_from_budget(const SmoothnessParams& params, std::uint64_t n,
                            std::optional<int> L_override, std::uint64_t seed,
                            std::optional<int> J_override = std::nullopt);

/// Randomized linear approximation: coefficients on Q_[J] copied exactly,
/// layers J+1..L reconstructed through the Gaussian sketch with layer
/// weights 2^{+rj} in and 2^{-rj} out; layers beyond L dropped.
ApproxOutput approximate_detailed(const TrigPoly& f, const ApproxPlan& plan);
TrigPoly approximate(const TrigPoly& f, const ApproxPlan& plan);

/// Real-basis variant: one Gaussian deviate per sqrt(2)cos / sqrt(2)sin
/// basis function, output conjugate-symmetric. Input must satisfy
/// c_{-k} = conj(c_k) to 1e-12.
ApproxOutput approximate_real_detailed(const TrigPoly& f, const ApproxPlan& plan);
TrigPoly approximate_real(const TrigPoly& f, const ApproxPlan& plan);

/// Deterministic baseline: restriction to Q_[J*] with the largest J* such
/// that |Q_[J*]| <= n.
TrigPoly truncation_baseline(const TrigPoly& f, std::uint64_t n, const SmoothnessParams& params);

/// Best m-term restriction of f to its own support in the W_2^{s_aux}
/// norm: keep the m frequencies maximizing 2^{s_aux j(k)} |c_k|, ties
/// broken lexicographically on k.
TrigPoly m_term_projection(const TrigPoly& f, std::size_t m, double s_aux);

/// Two-stage method: h = m-term stage, then the randomized linear method
/// applied to the residual f - h with weights built from s_aux.
TrigPoly two_stage_approximate(const TrigPoly& f, const TwoStageParams& ts);

}  // namespace hcmc
