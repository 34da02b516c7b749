#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hcmc/errorlab.hpp"
#include "hcmc/rng.hpp"

using namespace hcmc;

TEST_CASE("sample_unit_ball normalization") {
  for (auto kind : {TestFunctionSpec::Kind::random_ball, TestFunctionSpec::Kind::single_layer,
                    TestFunctionSpec::Kind::flat_layer}) {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      TestFunctionSpec spec{kind, 2, 1.5, 3, seed};
      const TrigPoly f = sample_unit_ball(spec);
      CHECK(std::abs(sobolev_norm_2(f, 1.5) - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("single_layer is one basis function") {
  TestFunctionSpec spec{TestFunctionSpec::Kind::single_layer, 1, 2.0, 4, 9};
  const TrigPoly f = sample_unit_ball(spec);
  REQUIRE(f.support_size() == 1);
  const auto& [k, c] = *f.coeffs().begin();
  CHECK(layer_of(k) == 4);
  CHECK(std::abs(c) == doctest::Approx(std::exp2(-2.0 * 4)).epsilon(1e-12));
}

TEST_CASE("flat_layer sup-norm equals 2^{-rj} 2^{j/2}") {
  // all coefficients positive and equal, so the sup is attained at x = 0
  // and equals the coefficient l1 norm.
  const int j = 5;
  const double r = 1.0;
  TestFunctionSpec spec{TestFunctionSpec::Kind::flat_layer, 1, r, j, 0};
  const TrigPoly f = sample_unit_ball(spec);
  const double want = std::exp2(-r * j) * std::exp2(0.5 * j);
  CHECK(sup_norm_estimate(f).value == doctest::Approx(want).epsilon(1e-10));
  CHECK(coeff_l1_norm(f) == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("expected_error trivial cases") {
  const SmoothnessParams params{1, 1.0, 2.0};
  const auto plan = plan_from_budget(params, 2 * cross_size(1, 3), 6, 0);

  TrigPoly f(1);
  f.set({3}, 1.0);  // inside Q_[3]
  const auto trunc = expected_error(AlgorithmKind::truncation, f, plan, 8, 0);
  CHECK(trunc.mean == 0.0);
  CHECK(trunc.std_err == 0.0);
  CHECK(trunc.reps == 1);

  const auto mc = expected_error(AlgorithmKind::mc_complex, f, plan, 4, 0);
  CHECK(mc.mean <= 1e-12);
}

TEST_CASE("randomization beats truncation on a flat layer above J") {
  const SmoothnessParams params{1, 1.0, 2.0};
  const int J = 4;
  auto plan = plan_from_budget(params, 2 * cross_size(1, J), J + 1, 3);
  REQUIRE(plan.J == J);
  TestFunctionSpec spec{TestFunctionSpec::Kind::flat_layer, 1, 1.0, J + 1, 0};
  const TrigPoly f = sample_unit_ball(spec);

  const auto mc = expected_error(AlgorithmKind::mc_complex, f, plan, 48, 11);
  const auto trunc = expected_error(AlgorithmKind::truncation, f, plan, 1, 11);
  CHECK(trunc.mean == doctest::Approx(sup_norm_estimate(f).value).epsilon(1e-10));
  CHECK(mc.mean + 2 * mc.std_err < trunc.mean);
}

TEST_CASE("expected_error is bit-identical across thread counts and calls") {
  const SmoothnessParams params{1, 1.0, 2.0};
  const auto plan = plan_from_budget(params, 14, 5, 7);
  TestFunctionSpec spec{TestFunctionSpec::Kind::random_ball, 1, 1.0, 5, 1};
  const TrigPoly f = sample_unit_ball(spec);

  ErrorLabConfig c1, c8;
  c1.threads = 1;
  c8.threads = 8;
  const auto a = expected_error(AlgorithmKind::mc_complex, f, plan, 16, 5, c1);
  const auto b = expected_error(AlgorithmKind::mc_complex, f, plan, 16, 5, c8);
  const auto c = expected_error(AlgorithmKind::mc_complex, f, plan, 16, 5, c8);
  CHECK(a.mean == b.mean);
  CHECK(a.std_err == b.std_err);
  CHECK(b.mean == c.mean);
}

TEST_CASE("expected_sup_norm: constant term gives the half-normal mean") {
  const std::vector<FreqIndex> E{{0}};
  const auto ms = expected_sup_norm(E, std::numeric_limits<double>::infinity(), 10000, 3);
  const double want = std::sqrt(2.0 / std::numbers::pi);
  CHECK(std::abs(ms.mean - want) <= 4.0 * ms.std_err);
}

TEST_CASE("expected_sup_norm {-1,1} matches the max(|a|,|b|) reduction") {
  // sup_x |xi_{-1} e^{-i t} + xi_1 e^{i t}| = max(|xi_1 + xi_{-1}|, |xi_1 - xi_{-1}|)
  const std::vector<FreqIndex> E{{-1}, {1}};
  const auto ms = expected_sup_norm(E, std::numeric_limits<double>::infinity(), 20000, 8);

  double oracle = 0.0;
  const int n = 1'000'000;
  for (int i = 0; i < n; ++i) {
    const double x1 = gaussian_entry(123, 0, i);
    const double x2 = gaussian_entry(123, 1, i);
    oracle += std::max(std::abs(x1 + x2), std::abs(x1 - x2));
  }
  oracle /= n;
  // oracle se is ~0.5/sqrt(n), negligible next to ms.std_err
  CHECK(std::abs(ms.mean - oracle) <= 4.0 * ms.std_err + 0.005);
}

TEST_CASE("expected_sup_norm growth stays in a factor-2 band over layers") {
  double lo = 1e300, hi = 0.0, prev = 0.0;
  for (int j = 4; j <= 8; ++j) {
    const auto E = layer(1, j);
    const auto ms = expected_sup_norm(E, std::numeric_limits<double>::infinity(), 128, 17);
    const double ratio = ms.mean / std::sqrt(static_cast<double>(E.size()) *
                                             std::log2(std::exp2(j) - 1.0));
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    if (prev > 0.0) CHECK(ratio / prev <= std::sqrt((j + 1.0) / j) * 1.25);  // sub-sqrt(j) growth
    prev = ratio;
  }
  CHECK(hi / lo <= 2.0);
}

TEST_CASE("stderr shrinks like 1/sqrt(R)") {
  const std::vector<FreqIndex> E = layer(1, 4);
  double acc = 0.0;
  const int trials = 10;
  for (int t = 0; t < trials; ++t) {
    const auto small = expected_sup_norm(E, std::numeric_limits<double>::infinity(), 64,
                                         derive_seed(400, "sampler", t));
    const auto big = expected_sup_norm(E, std::numeric_limits<double>::infinity(), 128,
                                       derive_seed(400, "sampler", t));
    acc += big.std_err / small.std_err;
  }
  acc /= trials;
  CHECK(acc > 0.6);
  CHECK(acc < 0.85);
}

TEST_CASE("fit_rate recovers exact slopes") {
  std::vector<std::pair<double, double>> pts;
  for (int e = 4; e <= 10; ++e) {
    const double n = std::exp2(e);
    pts.emplace_back(n, 1.0 / (n * n));
  }
  auto fit = fit_rate(pts, RatePredictor::raw_log);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit.residual_rms <= 1e-12);

  pts.clear();
  const int d = 2;
  const double r = 1.0;
  for (int e = 4; e <= 10; ++e) {
    const double n = std::exp2(e);
    pts.emplace_back(n, 3.0 * std::pow(std::pow(std::log2(n), d - 1) / n, r));
  }
  fit = fit_rate(pts, RatePredictor::hyperbolic, d);
  CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.residual_rms <= 1e-12);

  CHECK_THROWS_AS(fit_rate({{2, 1}, {4, 1}}, RatePredictor::raw_log), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate({{2, 1}, {4, 0.0}, {8, 1}}, RatePredictor::raw_log),
                  std::invalid_argument);
}

TEST_CASE("bound_check holds on layer J+1 witnesses") {
  const SmoothnessParams params{1, 1.0, 2.0};
  auto plan = plan_from_budget(params, 2 * cross_size(1, 4), 6, 19);

  TrigPoly inside(1);
  inside.set({2}, 1.0);
  auto rep = bound_check(plan, inside, 16);
  CHECK(rep.lhs.mean <= 1e-12);
  CHECK(rep.holds);

  TestFunctionSpec flat{TestFunctionSpec::Kind::flat_layer, 1, 1.0, 5, 0};
  rep = bound_check(plan, sample_unit_ball(flat), 128);
  CHECK(rep.holds);
}

TEST_CASE("error never exceeds the coefficient l1 sanity ceiling") {
  const SmoothnessParams params{1, 1.0, 2.0};
  const auto plan = plan_from_budget(params, 14, 6, 23);
  TestFunctionSpec spec{TestFunctionSpec::Kind::random_ball, 1, 1.0, 6, 31};
  const TrigPoly f = sample_unit_ball(spec);
  const auto ms = expected_error(AlgorithmKind::mc_complex, f, plan, 16, 2);
  // crude ceiling: ||f||_1 plus the largest per-replication output l1 norm
  double worst_out = 0.0;
  for (int i = 0; i < 16; ++i) {
    ApproxPlan p = plan;
    p.seed = derive_seed(2, "replication", i);
    worst_out = std::max(worst_out, coeff_l1_norm(approximate(f, p)));
  }
  CHECK(ms.mean <= coeff_l1_norm(f) + worst_out);
}
