#include "hcmc/sketch.hpp"

#include <stdexcept>
#include <string>

#include "hcmc/rng.hpp"

namespace hcmc {

GaussianEnsemble::GaussianEnsemble(int n, int m, std::uint64_t seed) : n_(n), m_(m), seed_(seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("ensemble dimensions must be >= 1");
}

double GaussianEnsemble::entry(int i, int j) const {
  return gaussian_entry(seed_, static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(j));
}

Eigen::VectorXd GaussianEnsemble::row(int i) const {
  Eigen::VectorXd r(m_);
  for (int j = 0; j < m_; ++j) r[j] = entry(i, j);
  return r;
}

Eigen::MatrixXd GaussianEnsemble::materialize(std::uint64_t entry_cap) const {
  const std::uint64_t total = static_cast<std::uint64_t>(n_) * static_cast<std::uint64_t>(m_);
  if (total > entry_cap)
    throw std::length_error("ensemble of " + std::to_string(total) + " entries exceeds the cap");
  Eigen::MatrixXd xi(n_, m_);
  for (int i = 0; i < n_; ++i) xi.row(i) = row(i).transpose();
  return xi;
}

GaussianEnsemble draw_ensemble(int n, int m, std::uint64_t seed) {
  return GaussianEnsemble(n, m, seed);
}

SketchResult sketch_apply(const GaussianEnsemble& ens, const Eigen::VectorXcd& a) {
  if (a.size() != ens.cols())
    throw std::invalid_argument("input length " + std::to_string(a.size()) +
                                " does not match ensemble columns " + std::to_string(ens.cols()));
  SketchResult res;
  res.rank_used = ens.rows();
  res.output_coeffs = Eigen::VectorXcd::Zero(ens.cols());
  // Fixed sequential summation order per row; results do not depend on
  // how callers parallelize over rows.
  for (int i = 0; i < ens.rows(); ++i) {
    const Eigen::VectorXd xi = ens.row(i);
    const Complex li = xi.cast<Complex>().dot(a);  // sum_j xi_ij a_j (real xi, no conjugation effect)
    res.output_coeffs += li * xi.cast<Complex>();
  }
  res.output_coeffs /= static_cast<double>(ens.rows());
  return res;
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> split_complex(const Eigen::VectorXcd& a) {
  return {a.real(), a.imag()};
}

}  // namespace hcmc
