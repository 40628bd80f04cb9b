#include "revrec/stats.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "revrec/types.hpp"

namespace revrec {

namespace {

// Average ranks (1-based) with ties sharing the mean of covered ranks.
// Also accumulates sum(t^3 - t) over tie groups for variance correction.
std::vector<double> average_ranks(std::span<const double> original,
                                  double* tie_term) {
  std::vector<std::size_t> order(original.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return original[a] < original[b];
  });

  std::vector<double> ranks(original.size(), 0.0);
  *tie_term = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && original[order[j]] == original[order[i]]) ++j;
    double avg = (double(i + 1) + double(j)) / 2.0;
    for (std::size_t k = i; k < j; ++k) ranks[order[k]] = avg;
    double t = double(j - i);
    *tie_term += t * t * t - t;
    i = j;
  }
  return ranks;
}

double two_tailed_p(double z) {
  return std::min(1.0, std::erfc(std::abs(z) / std::sqrt(2.0)));
}

}  // namespace

StatTestResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b) {
  if (a.size() != b.size()) {
    throw Error("wilcoxon: samples must be paired (equal length)");
  }

  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    if (d != 0.0) diffs.push_back(d);
  }
  const std::size_t n = diffs.size();
  if (n < 6) {
    throw Error("wilcoxon: insufficient pairs (" + std::to_string(n) +
                " non-zero; need >= 6)");
  }

  std::vector<double> abs_diffs(n);
  for (std::size_t i = 0; i < n; ++i) abs_diffs[i] = std::abs(diffs[i]);

  double tie_term = 0.0;
  std::vector<double> ranks = average_ranks(abs_diffs, &tie_term);

  double w_plus = 0.0, w_minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    (diffs[i] > 0 ? w_plus : w_minus) += ranks[i];
  }
  const double w = std::min(w_plus, w_minus);

  const double nn = double(n);
  const double mean = nn * (nn + 1.0) / 4.0;
  const double variance =
      nn * (nn + 1.0) * (2.0 * nn + 1.0) / 24.0 - tie_term / 48.0;

  StatTestResult result;
  result.statistic = w;
  result.n_effective = int(2 * n);
  if (variance <= 0.0) {
    result.z_value = 0.0;
    result.p_two_tailed = 1.0;
    result.effect_size_r = 0.0;
    return result;
  }
  result.z_value = (w - mean) / std::sqrt(variance);
  result.p_two_tailed = two_tailed_p(result.z_value);
  result.effect_size_r =
      std::abs(result.z_value) / std::sqrt(double(result.n_effective));
  return result;
}

StatTestResult mann_whitney_u(std::span<const double> a,
                              std::span<const double> b) {
  if (a.size() < 3 || b.size() < 3) {
    throw Error("mann-whitney: need at least 3 observations per sample");
  }
  const std::size_t na = a.size(), nb = b.size();
  const std::size_t n = na + nb;

  std::vector<double> pooled;
  pooled.reserve(n);
  pooled.insert(pooled.end(), a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());

  double tie_term = 0.0;
  std::vector<double> ranks = average_ranks(pooled, &tie_term);

  double rank_sum_a = 0.0;
  for (std::size_t i = 0; i < na; ++i) rank_sum_a += ranks[i];

  const double u_a = rank_sum_a - double(na) * double(na + 1) / 2.0;
  const double u_b = double(na) * double(nb) - u_a;
  const double u = std::min(u_a, u_b);

  const double dn = double(n);
  const double mean = double(na) * double(nb) / 2.0;
  const double variance = double(na) * double(nb) / 12.0 *
                          ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));

  StatTestResult result;
  result.statistic = u;
  result.n_effective = int(2 * n);
  if (variance <= 0.0) {
    result.z_value = 0.0;
    result.p_two_tailed = 1.0;
    result.effect_size_r = 0.0;
    return result;
  }
  result.z_value = (u - mean) / std::sqrt(variance);
  result.p_two_tailed = two_tailed_p(result.z_value);
  result.effect_size_r =
      std::abs(result.z_value) / std::sqrt(double(result.n_effective));
  return result;
}

const char* to_string(EffectLabel label) {
  switch (label) {
    case EffectLabel::small:
      return "small";
    case EffectLabel::medium:
      return "medium";
    case EffectLabel::large:
      return "large";
  }
  return "?";
}

EffectLabel effect_size_label(double r) {
  if (r < 0.0) throw Error("effect size r cannot be negative");
  if (r <= 0.3) return EffectLabel::small;
  if (r <= 0.6) return EffectLabel::medium;
  return EffectLabel::large;
}

double bonferroni_threshold(double alpha, int comparisons) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error("alpha must lie in (0, 1)");
  }
  if (comparisons < 1) throw Error("comparisons must be >= 1");
  return alpha / double(comparisons);
}

}  // namespace revrec
