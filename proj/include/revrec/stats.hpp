#ifndef REVREC_STATS_HPP
#define REVREC_STATS_HPP

#include <span>
#include <string>

namespace revrec {

// Result of a rank-based two-sample test. n_effective is the N used in
// the effect size r = |Z| / sqrt(N), which doubles the case count
// (retained pairs for the paired test, total observations for the
// unpaired one).
struct StatTestResult {
  double statistic = 0.0;  // W = min(W+, W-) or U = min(Ua, Ub)
  double z_value = 0.0;
  double p_two_tailed = 1.0;
  double effect_size_r = 0.0;
  int n_effective = 0;
};

// Paired Wilcoxon signed-rank test with zero differences discarded,
// average ranks for ties, and a tie-corrected normal approximation
// (no continuity correction). Throws Error with fewer than 6 non-zero
// pairs or mismatched lengths.
StatTestResult wilcoxon_signed_rank(std::span<const double> a,
                                    std::span<const double> b);

// Unpaired Mann-Whitney U test, average ranks for ties, tie-corrected
// normal approximation. Requires at least 3 observations per sample.
StatTestResult mann_whitney_u(std::span<const double> a,
                              std::span<const double> b);

enum class EffectLabel { small, medium, large };

const char* to_string(EffectLabel label);

// Cohen's bands: small up to 0.3, medium up to 0.6, large above.
// Throws Error for negative r.
EffectLabel effect_size_label(double r);

// alpha / comparisons, validated.
double bonferroni_threshold(double alpha, int comparisons);

}  // namespace revrec

#endif  // REVREC_STATS_HPP
