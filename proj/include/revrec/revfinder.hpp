#ifndef REVREC_REVFINDER_HPP
#define REVREC_REVFINDER_HPP

#include <array>
#include <map>
#include <span>
#include <string>

#include "revrec/similarity.hpp"
#include "revrec/types.hpp"

namespace revrec {

// Per-kind accumulated similarity scores, keyed by reviewer id.
using ScoreMap = std::map<std::string, double>;

// Context used to order equal-score reviewers deterministically:
// latest review activity first, then lexicographic id.
struct TieBreak {
  std::map<std::string, std::int64_t> last_activity_ms;
  std::map<std::string, std::string> display_names;

  std::int64_t activity(const std::string& id) const;
  Identity identity(const std::string& id) const;
};

// Collects last-activity timestamps and display names from a history slice.
TieBreak tie_break_from_history(std::span<const ReviewRecord> history);

// Accumulates, for every reviewer of every past review p, the normalized
// pairwise similarity  sum(sim(f_new, f_past)) / (|files_new| * |files_p|)
// between the new review's files and p's files. When `prepend_subproject`
// is set, each record's sub_project is inserted as one extra leading
// component of every file path on both sides.
ScoreMap score_history(SimilarityKind kind, const ReviewRecord& new_review,
                       std::span<const ReviewRecord> history,
                       bool prepend_subproject = false);

// Borda count combination. Within each map, reviewers with positive score
// are ranked descending; the reviewer at 0-based position i among m scored
// reviewers earns m - i points, equal scores sharing the average of the
// positions they cover. Zero-score reviewers earn nothing. Reviewers whose
// combined total is zero are omitted from the output.
RankedRecommendation borda_combine(const std::array<ScoreMap, 4>& rankings,
                                   const TieBreak& ties = {});

struct RevFinderOptions {
  bool use_subproject = false;  // the "+" variant
};

// Full Code Reviewers Ranking Algorithm: the four similarity kinds scored
// over the history and Borda-combined. The new review's owner never
// appears in the output.
RankedRecommendation revfinder_recommend(const ReviewRecord& new_review,
                                         std::span<const ReviewRecord> history,
                                         const RevFinderOptions& options = {});

}  // namespace revrec

#endif  // REVREC_REVFINDER_HPP
