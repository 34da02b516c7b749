#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "hcmc/trigpoly.hpp"

namespace hcmc {

/// Row-addressable matrix of i.i.d. standard normals, reproducible
/// bit-for-bit from (seed, n, m). Entries are generated on demand from a
/// counter-based hash, so the matrix is never required to fit in memory
/// at once.
class GaussianEnsemble {
 public:
  GaussianEnsemble(int n, int m, std::uint64_t seed);

  int rows() const { return n_; }
  int cols() const { return m_; }
  std::uint64_t seed() const { return seed_; }

  double entry(int i, int j) const;

  /// Row i as a dense vector.
  Eigen::VectorXd row(int i) const;

  /// Materialize the full matrix; guarded by a size cap.
  Eigen::MatrixXd materialize(std::uint64_t entry_cap = std::uint64_t(1) << 28) const;

 private:
  int n_;
  int m_;
  std::uint64_t seed_;
};

struct SketchResult {
  Eigen::VectorXcd output_coeffs;
  int rank_used = 0;
};

GaussianEnsemble draw_ensemble(int n, int m, std::uint64_t seed);

/// b = (1/n) Xi^T (Xi a), computed as two matrix-vector products. The map
/// has rank <= n and is unbiased for the identity over ensemble draws.
SketchResult sketch_apply(const GaussianEnsemble& ens, const Eigen::VectorXcd& a);

/// a = Re + i*Im, exactly.
std::pair<Eigen::VectorXd, Eigen::VectorXd> split_complex(const Eigen::VectorXcd& a);

}  // namespace hcmc
