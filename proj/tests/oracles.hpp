#pragma once

// Reference implementations written independently of the library, used to
// cross-check it. Deliberately naive: quadratic ranking, long double sums,
// explicit enumeration.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace oracle {

inline std::vector<long double> ranks(const std::vector<double>& v) {
  std::vector<long double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    long double below = 0, equal = 0;
    for (double w : v) {
      if (w < v[i]) below += 1;
      if (w == v[i]) equal += 1;
    }
    r[i] = below + (equal + 1) / 2;
  }
  return r;
}

inline long double pearson(const std::vector<long double>& x, const std::vector<long double>& y) {
  const long double n = static_cast<long double>(x.size());
  long double mx = std::accumulate(x.begin(), x.end(), 0.0L) / n;
  long double my = std::accumulate(y.begin(), y.end(), 0.0L) / n;
  long double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  return static_cast<double>(pearson(ranks(x), ranks(y)));
}

/// Two-sided exact permutation p-value by permuting y over all n! orders.
inline double exhaustive_p(const std::vector<double>& x, const std::vector<double>& y) {
  const double observed = std::abs(spearman(x, y));
  std::vector<std::size_t> idx(y.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::size_t hits = 0, total = 0;
  do {
    std::vector<double> yp(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) yp[i] = y[idx[i]];
    if (std::abs(spearman(x, yp)) >= observed - 1e-12) ++hits;
    ++total;
  } while (std::next_permutation(idx.begin(), idx.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

/// Self-excluding bias straight from the definition.
inline double bias(const std::vector<std::vector<double>>& s, std::size_t i, std::size_t j) {
  long double others = 0;
  for (std::size_t k = 0; k < s.size(); ++k)
    if (k != i) others += s[k][j];
  return static_cast<double>(s[i][j] - others / static_cast<long double>(s.size() - 1));
}

/// Sample standard deviation with divisor n - 1.
inline double sample_std(const std::vector<double>& v) {
  long double m = 0;
  for (double x : v) m += x;
  m /= v.size();
  long double ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  return static_cast<double>(std::sqrt(ss / (v.size() - 1)));
}

}  // namespace oracle
