#include "hcmc/approx.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hcmc/rng.hpp"

namespace hcmc {

namespace {

void validate_plan(const ApproxPlan& plan) {
  if (plan.params.r <= 0.5)
    throw std::invalid_argument("smoothness r must exceed 1/2: the embedding of W_2^r into "
                                "L_inf fails otherwise");
  if (plan.J < 0 || plan.L < plan.J) throw std::invalid_argument("plan requires 0 <= J <= L");
}

bool is_canonical(const FreqIndex& k) {
  // Representative of the pair {k, -k}: first nonzero entry positive.
  for (int v : k) {
    if (v > 0) return true;
    if (v < 0) return false;
  }
  return true;  // k = 0
}

FreqIndex negate(const FreqIndex& k) {
  FreqIndex n(k.size());
  for (std::size_t l = 0; l < k.size(); ++l) n[l] = -k[l];
  return n;
}

void check_conjugate_symmetry(const TrigPoly& f) {
  for (const auto& [k, c] : f.coeffs()) {
    const Complex mirror = f.coeff(negate(k));
    if (std::abs(mirror - std::conj(c)) > 1e-12 * std::max(1.0, std::abs(c)))
      throw std::invalid_argument("input is not real-valued: c_{-k} != conj(c_k)");
  }
}

}  // namespace

TwoStageParams::TwoStageParams(std::size_t m_, double s_aux_, ApproxPlan plan_)
    : m(m_), s_aux(s_aux_), plan(std::move(plan_)) {
  const double r = plan.params.r;
  if (!(s_aux > 0.5 && s_aux < r - 0.5))
    throw std::invalid_argument("auxiliary smoothness must satisfy 1/2 < s_aux < r - 1/2; got s_aux=" +
                                std::to_string(s_aux) + " for r=" + std::to_string(r));
}

double default_s_aux(double r) {
  if (r <= 1.0) throw std::invalid_argument("two-stage method needs r > 1");
  return 0.5 * (0.5 + (r - 0.5));
}

ApproxPlan plan_from_budget(const SmoothnessParams& params, std::uint64_t n,
                            std::optional<int> L_override, std::uint64_t seed,
                            std::optional<int> J_override) {
  if (params.r <= 0.5)
    throw std::invalid_argument("smoothness r must exceed 1/2: the embedding of W_2^r into "
                                "L_inf fails otherwise");
  ApproxPlan plan;
  plan.params = params;
  plan.seed = seed;
  if (J_override) {
    plan.J = *J_override;
    if (plan.J < 0) throw std::invalid_argument("J must be >= 0");
  } else {
    const BudgetMatch bm = budget_to_J(params.d, n);
    plan.J = bm.J;
    plan.degraded_budget = bm.degraded;
  }
  plan.n0 = cross_size(params.d, plan.J);
  plan.budget = 2 * plan.n0;
  if (L_override) {
    plan.L = *L_override;
    if (plan.L < plan.J) throw std::invalid_argument("L must be >= J");
  } else {
    const double r = params.r;
    const int l_trunc = static_cast<int>(std::ceil(2.0 * r * plan.J / (2.0 * r - 1.0))) + params.d;
    plan.L = std::max(plan.J + 1, l_trunc);
  }
  return plan;
}

ApproxOutput approximate_detailed(const TrigPoly& f, const ApproxPlan& plan) {
  validate_plan(plan);
  if (f.dim() != plan.params.d) throw std::invalid_argument("function dimension does not match plan");
  const double r = plan.params.r;

  ApproxOutput out{TrigPoly(f.dim())};
  const LayerSplit sp = split_layers(f, plan.J, plan.L);
  out.result = sp.low;  // Q_[J] recovered exactly
  out.info_exact = plan.n0;
  out.info_random = plan.n0;

  const auto columns = layer_range(plan.params.d, plan.J + 1, plan.L);
  const std::size_t m = columns.size();
  out.rank_flag = plan.n0 >= m;

  if (sp.mid.coeffs().empty()) return out;  // all random functionals read zero

  // Basis coordinates: a_k = 2^{rj} c_k over the fixed column enumeration.
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m));
  std::vector<double> weight(m);
  for (std::size_t c = 0; c < m; ++c) {
    const int j = layer_of(columns[c]);
    weight[c] = std::exp2(r * j);
    a[static_cast<Eigen::Index>(c)] = weight[c] * sp.mid.coeff(columns[c]);
  }

  const GaussianEnsemble ens(static_cast<int>(plan.n0), static_cast<int>(m),
                             derive_seed(plan.seed, "ensemble", 0));
  const SketchResult sk = sketch_apply(ens, a);
  for (std::size_t c = 0; c < m; ++c)
    out.result.add(columns[c], sk.output_coeffs[static_cast<Eigen::Index>(c)] / weight[c]);
  return out;
}

TrigPoly approximate(const TrigPoly& f, const ApproxPlan& plan) {
  return approximate_detailed(f, plan).result;
}

ApproxOutput approximate_real_detailed(const TrigPoly& f, const ApproxPlan& plan) {
  validate_plan(plan);
  if (f.dim() != plan.params.d) throw std::invalid_argument("function dimension does not match plan");
  check_conjugate_symmetry(f);
  const double r = plan.params.r;
  constexpr double kSqrt2 = std::numbers::sqrt2;

  ApproxOutput out{TrigPoly(f.dim())};
  const LayerSplit sp = split_layers(f, plan.J, plan.L);
  out.result = sp.low;
  out.info_exact = plan.n0;
  out.info_random = plan.n0;

  // One cos and one sin basis function per {k, -k} pair; the canonical
  // member of each pair is kept in enumeration order. Layers j >= 1
  // never contain k = 0.
  std::vector<FreqIndex> reps;
  std::vector<double> w;
  for (const auto& k : layer_range(plan.params.d, plan.J + 1, plan.L)) {
    if (!is_canonical(k)) continue;
    reps.push_back(k);
    w.push_back(std::exp2(r * layer_of(k)));
  }
  const std::size_t pairs = reps.size();
  out.rank_flag = plan.n0 >= 2 * pairs;

  if (sp.mid.coeffs().empty()) return out;

  // Basis coordinates of f against sqrt(2)*2^{-rj} cos / sin:
  //   a_cos = sqrt(2) 2^{rj} Re c_k,   a_sin = -sqrt(2) 2^{rj} Im c_k.
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(2 * pairs));
  for (std::size_t c = 0; c < pairs; ++c) {
    const Complex ck = sp.mid.coeff(reps[c]);
    a[static_cast<Eigen::Index>(2 * c)] = kSqrt2 * w[c] * ck.real();
    a[static_cast<Eigen::Index>(2 * c + 1)] = -kSqrt2 * w[c] * ck.imag();
  }

  const GaussianEnsemble ens(static_cast<int>(plan.n0), static_cast<int>(2 * pairs),
                             derive_seed(plan.seed, "ensemble", 0));
  const SketchResult sk = sketch_apply(ens, a);
  for (std::size_t c = 0; c < pairs; ++c) {
    const double re = sk.output_coeffs[static_cast<Eigen::Index>(2 * c)].real() / (kSqrt2 * w[c]);
    const double im = -sk.output_coeffs[static_cast<Eigen::Index>(2 * c + 1)].real() / (kSqrt2 * w[c]);
    out.result.add(reps[c], Complex(re, im));
    out.result.add(negate(reps[c]), Complex(re, -im));
  }
  return out;
}

TrigPoly approximate_real(const TrigPoly& f, const ApproxPlan& plan) {
  return approximate_real_detailed(f, plan).result;
}

TrigPoly truncation_baseline(const TrigPoly& f, std::uint64_t n, const SmoothnessParams& params) {
  if (n < 1) throw std::invalid_argument("budget must be >= 1");
  if (f.dim() != params.d) throw std::invalid_argument("function dimension does not match params");
  int jstar = 0;
  while (true) {
    std::uint64_t next;
    try {
      next = cross_size(params.d, jstar + 1);
    } catch (const std::overflow_error&) {
      break;
    }
    if (next > n) break;
    ++jstar;
  }
  TrigPoly out(f.dim());
  for (const auto& [k, c] : f.coeffs())
    if (layer_of(k) <= jstar) out.set(k, c);
  return out;
}

TrigPoly m_term_projection(const TrigPoly& f, std::size_t m, double s_aux) {
  struct Entry {
    double score;
    const FreqIndex* k;
    Complex c;
  };
  std::vector<Entry> entries;
  entries.reserve(f.support_size());
  for (const auto& [k, c] : f.coeffs())
    entries.push_back({std::exp2(s_aux * layer_of(k)) * std::abs(c), &k, c});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score > b.score;
    return *a.k < *b.k;
  });
  TrigPoly out(f.dim());
  for (std::size_t i = 0; i < std::min(m, entries.size()); ++i) out.set(*entries[i].k, entries[i].c);
  return out;
}

TrigPoly two_stage_approximate(const TrigPoly& f, const TwoStageParams& ts) {
  const TrigPoly h = m_term_projection(f, ts.m, ts.s_aux);
  ApproxPlan stage = ts.plan;
  stage.params.r = ts.s_aux;  // the randomized stage targets W_2^{s_aux}
  return h + approximate(f - h, stage);
}

}  // namespace hcmc
