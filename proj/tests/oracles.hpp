#pragma once

// Independent reference computations used by the unit and acceptance suites.
// Nothing here calls into the library's ranking or metric code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Dense PageRank: solve (I - d * W^T) p = (1 - d) / n * 1 by Gaussian
// elimination with partial pivoting. W is the row-normalised weight matrix;
// all-zero rows are replaced by uniform 1/n rows.
inline std::vector<double> pagerank_linear_solve(const std::vector<double>& weights, std::size_t n, double d) {
  std::vector<double> w(weights);
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += w[i * n + j];
    for (std::size_t j = 0; j < n; ++j) w[i * n + j] = row > 0.0 ? w[i * n + j] / row : 1.0 / static_cast<double>(n);
  }
  // a = I - d * W^T, augmented with the right-hand side.
  std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - d * w[j * n + i];
    a[i][n] = (1.0 - d) / static_cast<double>(n);
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    }
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = a[i][n] / a[i][i];
  return p;
}

// LCS by enumerating every subsequence of the shorter list (bitmask) and
// checking it greedily against the longer one. Exponential; lengths <= 16.
inline std::size_t lcs_brute_force(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  const auto& s = a.size() <= b.size() ? a : b;
  const auto& t = a.size() <= b.size() ? b : a;
  std::size_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << s.size()); ++mask) {
    const auto len = static_cast<std::size_t>(__builtin_popcount(mask));
    if (len <= best) continue;
    std::size_t pos = 0;
    bool ok = true;
    for (std::size_t i = 0; i < s.size() && ok; ++i) {
      if (!(mask & (1u << i))) continue;
      while (pos < t.size() && t[pos] != s[i]) ++pos;
      if (pos == t.size()) ok = false;
      else ++pos;
    }
    if (ok) best = len;
  }
  return best;
}

// Clipped n-gram overlap by explicit counting maps.
inline std::size_t clipped_overlap(const std::vector<std::string>& c, const std::vector<std::string>& r, std::size_t n) {
  auto grams = [n](const std::vector<std::string>& toks) {
    std::map<std::vector<std::string>, std::size_t> m;
    for (std::size_t i = 0; i + n <= toks.size(); ++i) ++m[std::vector<std::string>(toks.begin() + i, toks.begin() + i + n)];
    return m;
  };
  const auto gc = grams(c);
  const auto gr = grams(r);
  std::size_t total = 0;
  for (const auto& [g, k] : gc) {
    auto it = gr.find(g);
    if (it != gr.end()) total += std::min(k, it->second);
  }
  return total;
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ' ') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// Spearman rank correlation with average ranks for ties.
inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += rx[i], my += ry[i];
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  return (sxx == 0 || syy == 0) ? 0.0 : sxy / std::sqrt(sxx * syy);
}

// Random symmetric nonnegative weights with a zero diagonal; roughly a third
// of the off-diagonal pairs are left unconnected.
inline std::vector<double> random_symmetric_graph(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  std::vector<double> w(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = weight(rng) < 0.33 ? 0.0 : weight(rng);
      w[i * n + j] = v;
      w[j * n + i] = v;
    }
  }
  return w;
}

}  // namespace oracle
