#ifndef REVREC_BAYES_HPP
#define REVREC_BAYES_HPP

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "revrec/types.hpp"

namespace revrec {

// Smoothed per-reviewer count tables for one feature dimension. Counts
// are raw; smoothing is applied at query time. The vocabulary is global
// across reviewers so smoothed floors are comparable.
struct FeatureDimension {
  std::map<std::string, std::map<std::string, std::int64_t>> counts;
  std::map<std::string, std::int64_t> totals;  // reviewer -> sum of counts
  std::set<std::string> vocabulary;

  void add(const std::string& reviewer, const std::string& value) {
    ++counts[reviewer][value];
    ++totals[reviewer];
    vocabulary.insert(value);
  }

  // Log of the Laplace-smoothed conditional P(value | reviewer). The
  // vocabulary is extended by the query value when unseen, which keeps
  // the conditional a proper distribution that sums to one.
  double log_conditional(const std::string& reviewer, const std::string& value,
                         double alpha) const;
};

struct NBModel {
  double alpha = 1.0;
  bool use_subproject = false;
  std::map<std::string, std::int64_t> prior_counts;   // reviews participated
  std::map<std::string, std::int64_t> last_activity;  // latest timestamp_ms
  std::map<std::string, std::string> display_names;
  FeatureDimension file_dim;
  FeatureDimension owner_dim;
  FeatureDimension subproject_dim;

  bool empty() const { return prior_counts.empty(); }
};

// Counts every (reviewer, feature) observation over the past reviews.
// With use_subproject the sub-project name becomes a third dimension
// (the "+" variant). Empty input yields an empty model.
NBModel build_model(std::span<const ReviewRecord> past_reviews,
                    bool use_subproject, double alpha = 1.0);

// Unnormalized log posterior log P(r) + log P(file|r) + log P(owner|r)
// [+ log P(subproject|r)] for every model reviewer, returned sorted by
// posterior descending with the deterministic tie-break (latest activity,
// then id). All model reviewers always appear: smoothing keeps every
// conditional strictly positive.
std::vector<Identity> recom(const NBModel& model, const std::string& file_path,
                            const Identity& owner,
                            const std::string& subproject);

// Demotes reviewers with no activity inside the window.
struct RecencyPolicy {
  int window_months = 12;
  std::int64_t reference_time_ms = 0;
};

// Stable partition: active reviewers keep their relative order at the
// front, retired ones follow in their relative order. Never changes the
// multiset of reviewers.
RankedRecommendation remove_retired(const RankedRecommendation& candidates,
                                    const NBModel& model,
                                    const RecencyPolicy& policy);

// Full recommendation for a review: per-file recom() lists converted to
// positional points (list length minus position counter) and accumulated,
// then retired reviewers moved to the back. The review's owner never
// appears in the output.
RankedRecommendation nb_recommend(const NBModel& model,
                                  const ReviewRecord& new_review,
                                  const RecencyPolicy& policy);

}  // namespace revrec

#endif  // REVREC_BAYES_HPP
