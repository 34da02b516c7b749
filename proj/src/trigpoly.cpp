#include "hcmc/trigpoly.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hcmc/rng.hpp"

namespace hcmc {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_key(int d, const FreqIndex& k) {
  if (static_cast<int>(k.size()) != d)
    throw std::invalid_argument("frequency dimension " + std::to_string(k.size()) +
                                " does not match polynomial dimension " + std::to_string(d));
}

std::uint64_t grid_total(int d, int M, const GridOptions& opts) {
  std::uint64_t total = 1;
  for (int l = 0; l < d; ++l) {
    if (total > opts.point_cap / static_cast<std::uint64_t>(M))
      throw std::length_error(
          "grid of " + std::to_string(M) + "^" + std::to_string(d) +
          " points exceeds the memory cap; use the random-sampling estimator instead");
    total *= static_cast<std::uint64_t>(M);
  }
  return total;
}

double random_sample_sup(const TrigPoly& f, const GridOptions& opts) {
  const int d = f.dim();
  Eigen::VectorXd x(d);
  double best = 0.0;
  for (int i = 0; i < opts.fallback_samples; ++i) {
    for (int l = 0; l < d; ++l)
      x[l] = uniform_entry(opts.fallback_seed, static_cast<std::uint64_t>(i) * d + l);
    best = std::max(best, std::abs(evaluate(f, x)));
  }
  return best;
}

}  // namespace

TrigPoly::TrigPoly(int d) : d_(d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
}

Complex TrigPoly::coeff(const FreqIndex& k) const {
  check_key(d_, k);
  auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex(0.0) : it->second;
}

void TrigPoly::set(const FreqIndex& k, Complex c) {
  check_key(d_, k);
  if (c == Complex(0.0))
    coeffs_.erase(k);
  else
    coeffs_[k] = c;
}

void TrigPoly::add(const FreqIndex& k, Complex c) {
  check_key(d_, k);
  auto [it, inserted] = coeffs_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == Complex(0.0)) coeffs_.erase(it);
  } else if (c == Complex(0.0)) {
    coeffs_.erase(it);
  }
}

int TrigPoly::max_abs_freq() const {
  int K = 0;
  for (const auto& [k, c] : coeffs_)
    for (int v : k) K = std::max(K, std::abs(v));
  return K;
}

TrigPoly& TrigPoly::operator+=(const TrigPoly& g) {
  check_key(d_, FreqIndex(g.dim(), 0));
  for (const auto& [k, c] : g.coeffs()) add(k, c);
  return *this;
}

TrigPoly& TrigPoly::operator-=(const TrigPoly& g) {
  check_key(d_, FreqIndex(g.dim(), 0));
  for (const auto& [k, c] : g.coeffs()) add(k, -c);
  return *this;
}

TrigPoly& TrigPoly::operator*=(Complex a) {
  if (a == Complex(0.0)) {
    *this = TrigPoly(d_);
    return *this;
  }
  for (auto& [k, c] : coeffs_) c *= a;
  return *this;
}

Complex evaluate(const TrigPoly& f, const Eigen::VectorXd& x) {
  if (x.size() != f.dim()) throw std::invalid_argument("evaluation point dimension mismatch");
  Complex sum = 0.0;
  for (const auto& [k, c] : f.coeffs()) {
    double phase = 0.0;
    for (int l = 0; l < f.dim(); ++l) phase += k[l] * x[l];
    sum += c * std::polar(1.0, kTwoPi * phase);
  }
  return sum;
}

Eigen::VectorXcd grid_values(const TrigPoly& f, int M, const GridOptions& opts) {
  if (M < 1) throw std::invalid_argument("grid resolution must be >= 1");
  const int d = f.dim();
  const std::uint64_t total = grid_total(d, M, opts);

  // Alias-fold the coefficients into an M^d array; sampling at m/M cannot
  // distinguish k from k mod M, and folding makes the finite DFT exact.
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(total));
  for (const auto& [k, c] : f.coeffs()) {
    std::uint64_t idx = 0;
    for (int l = 0; l < d; ++l) {
      const int kl = ((k[l] % M) + M) % M;
      idx = idx * M + static_cast<std::uint64_t>(kl);
    }
    a[static_cast<Eigen::Index>(idx)] += c;
  }

  // Unnormalized inverse DFT along each axis: v(m) = sum_t a(t) e^{+2pi i t m / M}.
  Eigen::FFT<double> fft;
  std::vector<Complex> line(M), out(M);
  std::uint64_t inner = total / static_cast<std::uint64_t>(M);  // stride of the current axis
  std::uint64_t outer = 1;
  for (int axis = 0; axis < d; ++axis) {
    for (std::uint64_t o = 0; o < outer; ++o) {
      for (std::uint64_t i = 0; i < inner; ++i) {
        const std::uint64_t base = o * inner * M + i;
        for (int t = 0; t < M; ++t) line[t] = a[static_cast<Eigen::Index>(base + t * inner)];
        fft.inv(out, line);
        for (int t = 0; t < M; ++t)
          a[static_cast<Eigen::Index>(base + t * inner)] = out[t] * static_cast<double>(M);
      }
    }
    outer *= static_cast<std::uint64_t>(M);
    inner /= static_cast<std::uint64_t>(M);
  }
  return a;
}

NormEstimate sup_norm_estimate(const TrigPoly& f, int oversampling, const GridOptions& opts) {
  if (oversampling < 2) throw std::invalid_argument("oversampling factor must be >= 2");
  NormEstimate est;
  if (f.coeffs().empty()) return est;
  // Round the resolution up to a power of two: at least sigma*(2K+1)
  // points per coordinate, and radix-2 transforms throughout.
  int M = 1;
  while (M < oversampling * (2 * f.max_abs_freq() + 1)) M *= 2;
  try {
    const Eigen::VectorXcd v = grid_values(f, M, opts);
    est.value = v.cwiseAbs().maxCoeff();
  } catch (const std::length_error&) {
    est.value = random_sample_sup(f, opts);
    est.sampled_fallback = true;
  }
  return est;
}

NormEstimate lq_norm_estimate(const TrigPoly& f, double q, int M, const GridOptions& opts) {
  if (!(q > 0.0)) throw std::invalid_argument("q must be positive and finite");
  NormEstimate est;
  if (f.coeffs().empty()) return est;
  const Eigen::VectorXcd v = grid_values(f, M, opts);
  const double mean = v.cwiseAbs().array().pow(q).mean();
  est.value = std::pow(mean, 1.0 / q);
  return est;
}

double sobolev_norm_2(const TrigPoly& f, double r) {
  double sum = 0.0;
  for (const auto& [k, c] : f.coeffs()) {
    const int j = layer_of(k);
    sum += std::exp2(2.0 * r * j) * std::norm(c);
  }
  return std::sqrt(sum);
}

NormEstimate sobolev_norm_numeric(const TrigPoly& f, const SmoothnessParams& params, int M,
                                  const GridOptions& opts) {
  if (!(params.p > 1.0) || !std::isfinite(params.p))
    throw std::invalid_argument("integrability p must lie in (1, inf)");
  NormEstimate est;
  if (f.coeffs().empty()) return est;

  // Group coefficients by dyadic block.
  std::map<MultiIndex, TrigPoly> blocks;
  for (const auto& [k, c] : f.coeffs()) {
    auto s = block_of(k);
    auto it = blocks.try_emplace(s, f.dim()).first;
    it->second.set(k, c);
  }

  const std::uint64_t total = grid_total(f.dim(), M, opts);
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(total));
  for (const auto& [s, part] : blocks) {
    const double w = std::exp2(2.0 * params.r * degree(s));
    sq += w * grid_values(part, M, opts).cwiseAbs2();
  }
  const double mean = sq.cwiseSqrt().array().pow(params.p).mean();
  est.value = std::pow(mean, 1.0 / params.p);
  return est;
}

LayerSplit split_layers(const TrigPoly& f, int J, int L) {
  if (J < 0 || L < J) throw std::invalid_argument("layer split requires 0 <= J <= L");
  LayerSplit sp{TrigPoly(f.dim()), TrigPoly(f.dim()), TrigPoly(f.dim())};
  for (const auto& [k, c] : f.coeffs()) {
    const int j = layer_of(k);
    (j <= J ? sp.low : j <= L ? sp.mid : sp.high).set(k, c);
  }
  return sp;
}

double coeff_l1_norm(const TrigPoly& f) {
  double s = 0.0;
  for (const auto& [k, c] : f.coeffs()) s += std::abs(c);
  return s;
}

double coeff_l2_norm(const TrigPoly& f) {
  double s = 0.0;
  for (const auto& [k, c] : f.coeffs()) s += std::norm(c);
  return std::sqrt(s);
}

}  // namespace hcmc
