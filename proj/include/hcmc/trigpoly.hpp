#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>

#include "hcmc/indexset.hpp"

namespace hcmc {

using Complex = std::complex<double>;

/// Sparse trigonometric polynomial on the d-torus,
/// f(x) = sum_k c_k exp(2 pi i (k,x)), keyed by frequency.
/// Zero coefficients are never stored.
class TrigPoly {
 public:
  using CoeffMap = std::map<FreqIndex, Complex>;

  explicit TrigPoly(int d);

  int dim() const { return d_; }
  const CoeffMap& coeffs() const { return coeffs_; }
  std::size_t support_size() const { return coeffs_.size(); }

  Complex coeff(const FreqIndex& k) const;
  void set(const FreqIndex& k, Complex c);
  void add(const FreqIndex& k, Complex c);

  /// Largest per-coordinate frequency magnitude, 0 for the zero polynomial.
  int max_abs_freq() const;

  TrigPoly& operator+=(const TrigPoly& g);
  TrigPoly& operator-=(const TrigPoly& g);
  TrigPoly& operator*=(Complex a);
  friend TrigPoly operator+(TrigPoly f, const TrigPoly& g) { return f += g; }
  friend TrigPoly operator-(TrigPoly f, const TrigPoly& g) { return f -= g; }
  friend TrigPoly operator*(Complex a, TrigPoly f) { return f *= a; }

  bool operator==(const TrigPoly&) const = default;

 private:
  int d_;
  CoeffMap coeffs_;
};

struct SmoothnessParams {
  int d = 1;
  double r = 1.0;   // smoothness, >= 0
  double p = 2.0;   // integrability, in (1, inf)
};

struct LayerSplit {
  TrigPoly low;   // layers 0..J
  TrigPoly mid;   // layers J+1..L
  TrigPoly high;  // layers > L
};

struct GridOptions {
  std::uint64_t point_cap = std::uint64_t(1) << 26;
  int fallback_samples = 1'000'000;
  std::uint64_t fallback_seed = 0x68636d63u;  // used only by the sampling estimator
};

struct NormEstimate {
  double value = 0.0;
  bool sampled_fallback = false;  // grid exceeded the cap, random sampling used
};

Complex evaluate(const TrigPoly& f, const Eigen::VectorXd& x);

/// Values at the tensor grid x = (m_1/M, ..., m_d/M), flattened with the
/// last coordinate fastest. Computed by zero-padded (alias-folded) FFT;
/// exact for any M >= 1. Throws std::length_error when M^d exceeds the cap.
Eigen::VectorXcd grid_values(const TrigPoly& f, int M, const GridOptions& opts = {});

/// Max modulus over a grid with M = sigma*(2K+1) points per coordinate
/// (K = max per-coordinate frequency). A lower bound on the true sup-norm.
/// Falls back to seeded random sampling beyond the grid cap.
NormEstimate sup_norm_estimate(const TrigPoly& f, int oversampling = 4, const GridOptions& opts = {});

/// (M^{-d} sum_grid |f|^q)^{1/q}; quadrature, not the exact integral.
NormEstimate lq_norm_estimate(const TrigPoly& f, double q, int M, const GridOptions& opts = {});

/// Exact W_2^r norm from coefficients, (sum_j 2^{2jr} sum_{k in Q_j} |c_k|^2)^{1/2}.
double sobolev_norm_2(const TrigPoly& f, double r);

/// L_p quadrature of the dyadic square function (sum_s 2^{2r|s|_1} |delta_s f|^2)^{1/2}.
NormEstimate sobolev_norm_numeric(const TrigPoly& f, const SmoothnessParams& params, int M,
                                  const GridOptions& opts = {});

/// Coefficient-exact partition by layer degree: j <= J, J < j <= L, j > L.
LayerSplit split_layers(const TrigPoly& f, int J, int L);

/// sum |c_k|, an upper bound on the sup-norm.
double coeff_l1_norm(const TrigPoly& f);

/// (sum |c_k|^2)^{1/2}.
double coeff_l2_norm(const TrigPoly& f);

}  // namespace hcmc
