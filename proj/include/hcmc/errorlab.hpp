#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hcmc/approx.hpp"

namespace hcmc {

struct TestFunctionSpec {
  enum class Kind { random_ball, single_layer, flat_layer };
  Kind kind = Kind::random_ball;
  int d = 1;
  double r = 1.0;
  int max_layer = 4;  // support bound for random_ball, the layer itself otherwise
  std::uint64_t seed = 0;
};

/// Unit-norm test function, sobolev_norm_2(f, r) = 1 to 1e-12.
///   random_ball:  i.i.d. complex Gaussian coefficients on Q_[max_layer], normalized;
///   single_layer: one basis function psi_k, k uniform in layer max_layer;
///   flat_layer:   equal-magnitude coefficients filling layer max_layer.
TrigPoly sample_unit_ball(const TestFunctionSpec& spec);

struct MeanStderr {
  double mean = 0.0;
  double std_err = 0.0;  // sample sd / sqrt(R)
  std::size_t reps = 0;
};

enum class AlgorithmKind { mc_complex, mc_real, two_stage, truncation };

struct ErrorLabConfig {
  int oversampling = 4;
  GridOptions grid;
  int threads = 0;  // 0 = hardware concurrency; never changes results
};

/// Mean and standard error of ||f - A(f)||_inf over R replications with
/// derived seeds. Deterministic algorithms run once with stderr 0.
MeanStderr expected_error(AlgorithmKind kind, const TrigPoly& f, const ApproxPlan& plan, int R,
                          std::uint64_t master_seed, const ErrorLabConfig& cfg = {},
                          const TwoStageParams* ts = nullptr);

/// E || sum_{k in E} xi_k e^{2 pi i (k,.)} ||_{L_q} over i.i.d. real
/// standard Gaussian draws; q = inf uses the sup-norm estimator.
MeanStderr expected_sup_norm(const std::vector<FreqIndex>& E, double q, int R, std::uint64_t seed,
                             const ErrorLabConfig& cfg = {});

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual_rms = 0.0;
  std::string predictor;
};

enum class RatePredictor { raw_log, hyperbolic };

/// Least-squares line of log2(error) against log2(n) (raw_log) or
/// u_n = log2((log2 n)^{d-1} / n) (hyperbolic, where the main rate
/// appears as slope +r). Needs >= 3 points with positive errors.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points, RatePredictor predictor,
                 int d = 1);

struct BoundCheckReport {
  MeanStderr lhs;          // empirical expected error
  MeanStderr rhs;          // (2 sqrt 2 / sqrt n0) E||S xi||_inf ||a||_2
  double coeff_l2 = 0.0;   // ||a||_2 of the sketched basis coordinates
  double margin_sigmas = 0.0;  // (rhs - lhs) / combined stderr
  bool holds = false;          // lhs <= rhs + 4 combined stderr
};

/// Empirical check of the sketch error bound on the mid layers J+1..L.
BoundCheckReport bound_check(const ApproxPlan& plan, const TrigPoly& f, int R,
                             const ErrorLabConfig& cfg = {});

/// Deterministic parallel map: out[i] = fn(i), aggregation order fixed.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace hcmc
