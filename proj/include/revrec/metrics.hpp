#ifndef REVREC_METRICS_HPP
#define REVREC_METRICS_HPP

#include <set>
#include <span>
#include <string>
#include <vector>

namespace revrec {

// One evaluated review: the recommendation that was produced for it and
// the reviewers who actually participated.
struct RecommendationOutcome {
  std::string review_ref;           // change_id
  std::vector<std::string> ranked;  // recommended reviewer ids, best first
  std::set<std::string> actual;     // sanitized actual reviewer ids
};

// Fraction of outcomes whose top k recommendations contain at least one
// actual reviewer. Throws Error on empty outcomes or k < 1.
double top_k_accuracy(std::span<const RecommendationOutcome> outcomes,
                      std::size_t k);

// Mean reciprocal rank of the best-placed actual reviewer (1-based);
// an outcome contributes 0 when no actual reviewer was recommended.
double mrr(std::span<const RecommendationOutcome> outcomes);

}  // namespace revrec

#endif  // REVREC_METRICS_HPP
