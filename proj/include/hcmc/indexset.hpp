#pragma once

#include <cstdint>
#include <vector>

namespace hcmc {

/// Per-coordinate dyadic level, entries >= 0.
using MultiIndex = std::vector<int>;

/// Fourier frequency in Z^d.
using FreqIndex = std::vector<int>;

inline int degree(const MultiIndex& s) {
  int j = 0;
  for (int v : s) j += v;
  return j;
}

/// Cardinality summary of one hyperbolic layer.
struct LayerStats {
  int d = 0;
  int j = 0;
  std::uint64_t compositions = 0;   // |{s in N_0^d : |s|_1 = j}|
  std::uint64_t layer_size = 0;     // |Q_j| = compositions * 2^j
  std::uint64_t cumulative_size = 0;  // |Q_[j]|
};

struct BudgetMatch {
  int J = 0;
  bool degraded = false;  // n could not even afford 2*|Q_[0]|
};

/// All s in N_0^d with |s|_1 = j, lexicographically ascending.
std::vector<MultiIndex> compositions_of(int d, int j);

/// Exact composition count C(d+j-1, d-1); throws std::overflow_error on
/// 64-bit overflow.
std::uint64_t composition_count(int d, int j);

/// Dyadic block rho(s): all k with floor(2^{s_l-1}) <= |k_l| < 2^{s_l},
/// lexicographic in k. |rho(s)| = 2^{|s|_1}.
std::vector<FreqIndex> block(const MultiIndex& s);

/// Hyperbolic layer Q_j, ordered by (s, k) lexicographically.
std::vector<FreqIndex> layer(int d, int j);

/// Cumulative hyperbolic cross Q_[J] in (j, s, k) order.
std::vector<FreqIndex> cross(int d, int J);

/// Frequencies of layers lo..hi (inclusive) in (j, s, k) order.
/// This is the fixed column enumeration the Gaussian sketch refers to.
std::vector<FreqIndex> layer_range(int d, int lo, int hi);

/// The unique block containing k: s_l = 0 if k_l = 0 else floor(log2|k_l|)+1.
MultiIndex block_of(const FreqIndex& k);

/// Layer degree of k, |block_of(k)|_1.
int layer_of(const FreqIndex& k);

LayerStats layer_stats(int d, int j);

/// |Q_[J]| with overflow signalling.
std::uint64_t cross_size(int d, int J);

/// Largest J with 2*|Q_[J]| <= n. Requires n >= 2; a budget below
/// 2*|Q_[0]| = 2 cannot occur then, but the degraded flag covers callers
/// that lower the floor later.
BudgetMatch budget_to_J(int d, std::uint64_t n);

}  // namespace hcmc
