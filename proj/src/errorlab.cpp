#include "hcmc/errorlab.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "hcmc/rng.hpp"

namespace hcmc {

namespace {

MeanStderr reduce(const std::vector<double>& samples) {
  MeanStderr ms;
  ms.reps = samples.size();
  if (samples.empty()) return ms;
  double sum = 0.0;
  for (double v : samples) sum += v;
  ms.mean = sum / static_cast<double>(samples.size());
  if (samples.size() >= 2) {
    double ss = 0.0;
    for (double v : samples) ss += (v - ms.mean) * (v - ms.mean);
    const double sd = std::sqrt(ss / static_cast<double>(samples.size() - 1));
    ms.std_err = sd / std::sqrt(static_cast<double>(samples.size()));
  }
  return ms;
}

TrigPoly run_algorithm(AlgorithmKind kind, const TrigPoly& f, ApproxPlan plan,
                       const TwoStageParams* ts) {
  switch (kind) {
    case AlgorithmKind::mc_complex:
      return approximate(f, plan);
    case AlgorithmKind::mc_real:
      return approximate_real(f, plan);
    case AlgorithmKind::two_stage: {
      if (!ts) throw std::invalid_argument("two_stage requires TwoStageParams");
      TwoStageParams local = *ts;
      local.plan.seed = plan.seed;
      return two_stage_approximate(f, local);
    }
    case AlgorithmKind::truncation:
      return truncation_baseline(f, plan.budget, plan.params);
  }
  throw std::logic_error("unknown algorithm kind");
}

}  // namespace

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  int nthreads = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  if (nthreads == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(nthreads));
  for (int t = 0; t < nthreads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

TrigPoly sample_unit_ball(const TestFunctionSpec& spec) {
  TrigPoly f(spec.d);
  switch (spec.kind) {
    case TestFunctionSpec::Kind::random_ball: {
      const auto freqs = cross(spec.d, spec.max_layer);
      std::uint64_t idx = 0;
      for (const auto& k : freqs) {
        f.set(k, Complex(gaussian_entry(spec.seed, 0, 2 * idx), gaussian_entry(spec.seed, 0, 2 * idx + 1)));
        ++idx;
      }
      break;
    }
    case TestFunctionSpec::Kind::single_layer: {
      const auto freqs = layer(spec.d, spec.max_layer);
      if (freqs.empty()) throw std::invalid_argument("empty layer");
      const auto pick = static_cast<std::size_t>(uniform_entry(spec.seed, 0) *
                                                 static_cast<double>(freqs.size()));
      f.set(freqs[std::min(pick, freqs.size() - 1)], 1.0);
      break;
    }
    case TestFunctionSpec::Kind::flat_layer: {
      const auto freqs = layer(spec.d, spec.max_layer);
      if (freqs.empty()) throw std::invalid_argument("empty layer");
      for (const auto& k : freqs) f.set(k, 1.0);
      break;
    }
  }
  const double norm = sobolev_norm_2(f, spec.r);
  f *= Complex(1.0 / norm);
  return f;
}

MeanStderr expected_error(AlgorithmKind kind, const TrigPoly& f, const ApproxPlan& plan, int R,
                          std::uint64_t master_seed, const ErrorLabConfig& cfg,
                          const TwoStageParams* ts) {
  if (R < 1) throw std::invalid_argument("replication count must be >= 1");
  const bool deterministic = kind == AlgorithmKind::truncation;
  const std::size_t reps = deterministic ? 1 : static_cast<std::size_t>(R);
  if (!deterministic && R < 2) throw std::invalid_argument("randomized estimates need R >= 2");

  std::vector<double> errs(reps);
  parallel_for(reps, cfg.threads, [&](std::size_t i) {
    ApproxPlan p = plan;
    p.seed = derive_seed(master_seed, "replication", i);
    const TrigPoly out = run_algorithm(kind, f, p, ts);
    errs[i] = sup_norm_estimate(f - out, cfg.oversampling, cfg.grid).value;
  });
  MeanStderr ms = reduce(errs);
  if (deterministic) ms.std_err = 0.0;
  return ms;
}

MeanStderr expected_sup_norm(const std::vector<FreqIndex>& E, double q, int R, std::uint64_t seed,
                             const ErrorLabConfig& cfg) {
  if (E.empty()) throw std::invalid_argument("frequency set must be nonempty");
  if (R < 2) throw std::invalid_argument("replication count must be >= 2");
  const int d = static_cast<int>(E.front().size());

  std::vector<double> norms(static_cast<std::size_t>(R));
  parallel_for(norms.size(), cfg.threads, [&](std::size_t rep) {
    const std::uint64_t rs = derive_seed(seed, "sampler", rep);
    TrigPoly g(d);
    std::uint64_t idx = 0;
    for (const auto& k : E) g.add(k, gaussian_entry(rs, 0, idx++));
    if (std::isinf(q)) {
      norms[rep] = sup_norm_estimate(g, cfg.oversampling, cfg.grid).value;
    } else {
      const int M = 2 * (2 * g.max_abs_freq() + 1);
      norms[rep] = lq_norm_estimate(g, q, M, cfg.grid).value;
    }
  });
  return reduce(norms);
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points, RatePredictor predictor,
                 int d) {
  if (points.size() < 3) throw std::invalid_argument("rate fit needs at least 3 points");
  const std::size_t n = points.size();
  Eigen::MatrixXd X(n, 2);
  Eigen::VectorXd y(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [budget, err] = points[i];
    if (!(err > 0.0)) throw std::invalid_argument("rate fit requires positive errors");
    const double ln = std::log2(budget);
    X(static_cast<Eigen::Index>(i), 0) = 1.0;
    X(static_cast<Eigen::Index>(i), 1) =
        predictor == RatePredictor::raw_log ? ln : std::log2(std::pow(ln, d - 1) / budget);
    y[static_cast<Eigen::Index>(i)] = std::log2(err);
  }
  const Eigen::Vector2d beta = X.colPivHouseholderQr().solve(y);
  RateFit fit;
  fit.intercept = beta[0];
  fit.slope = beta[1];
  fit.residual_rms = std::sqrt((X * beta - y).squaredNorm() / static_cast<double>(n));
  fit.predictor = predictor == RatePredictor::raw_log ? "log2(err) ~ a + b*log2(n)"
                                                      : "log2(err) ~ a + b*log2((log2 n)^(d-1)/n)";
  return fit;
}

BoundCheckReport bound_check(const ApproxPlan& plan, const TrigPoly& f, int R,
                             const ErrorLabConfig& cfg) {
  BoundCheckReport rep;
  rep.lhs = expected_error(AlgorithmKind::mc_complex, f, plan, R, plan.seed, cfg);

  // Right side of the sketch bound: (2 sqrt 2 / sqrt n0) E||S xi||_inf ||a||_2,
  // with S xi the 2^{-rj}-weighted Gaussian polynomial on layers J+1..L
  // and a the basis coordinates 2^{rj} c_k of f there.
  const auto columns = layer_range(plan.params.d, plan.J + 1, plan.L);
  double a2 = 0.0;
  for (const auto& [k, c] : f.coeffs()) {
    const int j = layer_of(k);
    if (j > plan.J && j <= plan.L) a2 += std::exp2(2.0 * plan.params.r * j) * std::norm(c);
  }
  rep.coeff_l2 = std::sqrt(a2);

  std::vector<double> norms(static_cast<std::size_t>(R));
  parallel_for(norms.size(), cfg.threads, [&](std::size_t i) {
    const std::uint64_t rs = derive_seed(plan.seed, "boundrhs", i);
    TrigPoly g(plan.params.d);
    std::uint64_t idx = 0;
    for (const auto& k : columns)
      g.add(k, std::exp2(-plan.params.r * layer_of(k)) * gaussian_entry(rs, 0, idx++));
    norms[i] = sup_norm_estimate(g, cfg.oversampling, cfg.grid).value;
  });
  const MeanStderr expnorm = reduce(norms);
  const double scale = 2.0 * std::numbers::sqrt2 / std::sqrt(static_cast<double>(plan.n0)) * rep.coeff_l2;
  rep.rhs.mean = scale * expnorm.mean;
  rep.rhs.std_err = scale * expnorm.std_err;
  rep.rhs.reps = expnorm.reps;

  const double combined = std::sqrt(rep.lhs.std_err * rep.lhs.std_err + rep.rhs.std_err * rep.rhs.std_err);
  rep.margin_sigmas = combined > 0.0 ? (rep.rhs.mean - rep.lhs.mean) / combined
                                     : (rep.rhs.mean >= rep.lhs.mean ? 1e9 : -1e9);
  rep.holds = rep.lhs.mean <= rep.rhs.mean + 4.0 * combined;
  return rep;
}

}  // namespace hcmc
