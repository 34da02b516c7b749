#include "hcmc/indexset.hpp"

#include <stdexcept>
#include <string>

namespace hcmc {

namespace {

void check_dim(int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1, got " + std::to_string(d));
}

void compositions_rec(int d, int j, MultiIndex& cur, std::vector<MultiIndex>& out) {
  if (d == 1) {
    cur.push_back(j);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int v = 0; v <= j; ++v) {
    cur.push_back(v);
    compositions_rec(d - 1, j - v, cur, out);
    cur.pop_back();
  }
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("layer cardinality overflows 64 bits");
  return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("layer cardinality overflows 64 bits");
  return r;
}

}  // namespace

std::vector<MultiIndex> compositions_of(int d, int j) {
  check_dim(d);
  if (j < 0) throw std::invalid_argument("layer degree must be >= 0");
  std::vector<MultiIndex> out;
  MultiIndex cur;
  cur.reserve(d);
  compositions_rec(d, j, cur, out);
  return out;
}

std::uint64_t composition_count(int d, int j) {
  check_dim(d);
  if (j < 0) throw std::invalid_argument("layer degree must be >= 0");
  // C(d+j-1, d-1), exact, with overflow checks.
  std::uint64_t num = 1;
  for (int i = 1; i <= d - 1; ++i) {
    num = checked_mul(num, static_cast<std::uint64_t>(j + i));
    num /= static_cast<std::uint64_t>(i);  // product of i consecutive integers is divisible by i!
  }
  return num;
}

std::vector<FreqIndex> block(const MultiIndex& s) {
  const int d = static_cast<int>(s.size());
  check_dim(d);
  // Per-coordinate admissible values in increasing order.
  std::vector<std::vector<int>> axes(d);
  for (int l = 0; l < d; ++l) {
    if (s[l] < 0) throw std::invalid_argument("multi-index entries must be >= 0");
    if (s[l] == 0) {
      axes[l] = {0};
    } else {
      const int lo = 1 << (s[l] - 1);  // floor(2^{s-1})
      const int hi = 1 << s[l];
      for (int v = -(hi - 1); v <= -lo; ++v) axes[l].push_back(v);
      for (int v = lo; v <= hi - 1; ++v) axes[l].push_back(v);
    }
  }
  std::vector<FreqIndex> out;
  out.reserve(std::uint64_t(1) << degree(s));
  FreqIndex k(d, 0);
  std::vector<std::size_t> idx(d, 0);
  for (;;) {
    for (int l = 0; l < d; ++l) k[l] = axes[l][idx[l]];
    out.push_back(k);
    int l = d - 1;
    while (l >= 0 && ++idx[l] == axes[l].size()) idx[l--] = 0;
    if (l < 0) break;
  }
  return out;
}

std::vector<FreqIndex> layer(int d, int j) {
  std::vector<FreqIndex> out;
  for (const auto& s : compositions_of(d, j)) {
    auto b = block(s);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::vector<FreqIndex> cross(int d, int J) { return layer_range(d, 0, J); }

std::vector<FreqIndex> layer_range(int d, int lo, int hi) {
  if (lo < 0 || hi < lo) throw std::invalid_argument("bad layer range");
  std::vector<FreqIndex> out;
  for (int j = lo; j <= hi; ++j) {
    auto lj = layer(d, j);
    out.insert(out.end(), lj.begin(), lj.end());
  }
  return out;
}

MultiIndex block_of(const FreqIndex& k) {
  check_dim(static_cast<int>(k.size()));
  MultiIndex s(k.size());
  for (std::size_t l = 0; l < k.size(); ++l) {
    const unsigned a = static_cast<unsigned>(k[l] < 0 ? -static_cast<long long>(k[l]) : k[l]);
    s[l] = a == 0 ? 0 : 32 - __builtin_clz(a);  // floor(log2 a) + 1
  }
  return s;
}

int layer_of(const FreqIndex& k) { return degree(block_of(k)); }

LayerStats layer_stats(int d, int j) {
  LayerStats st;
  st.d = d;
  st.j = j;
  st.compositions = composition_count(d, j);
  if (j >= 64) throw std::overflow_error("layer cardinality overflows 64 bits");
  st.layer_size = checked_mul(st.compositions, std::uint64_t(1) << j);
  st.cumulative_size = 0;
  for (int i = 0; i <= j; ++i)
    st.cumulative_size = checked_add(st.cumulative_size, checked_mul(composition_count(d, i), std::uint64_t(1) << i));
  return st;
}

std::uint64_t cross_size(int d, int J) { return layer_stats(d, J).cumulative_size; }

BudgetMatch budget_to_J(int d, std::uint64_t n) {
  check_dim(d);
  if (n < 2) throw std::invalid_argument("information budget must be >= 2");
  BudgetMatch m;
  if (2 * cross_size(d, 0) > n) {
    m.J = 0;
    m.degraded = true;
    return m;
  }
  int J = 0;
  while (true) {
    std::uint64_t next;
    try {
      next = cross_size(d, J + 1);
    } catch (const std::overflow_error&) {
      break;
    }
    if (next > n / 2 || 2 * next > n) break;
    ++J;
  }
  m.J = J;
  return m;
}

}  // namespace hcmc
