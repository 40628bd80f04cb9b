#include "revrec/metrics.hpp"

#include <algorithm>

#include "revrec/types.hpp"

namespace revrec {

double top_k_accuracy(std::span<const RecommendationOutcome> outcomes,
                      std::size_t k) {
  if (outcomes.empty()) throw Error("top-k accuracy of zero outcomes");
  if (k < 1) throw Error("k must be >= 1");

  std::size_t hits = 0;
  for (const RecommendationOutcome& o : outcomes) {
    std::size_t limit = std::min(k, o.ranked.size());
    for (std::size_t i = 0; i < limit; ++i) {
      if (o.actual.contains(o.ranked[i])) {
        ++hits;
        break;
      }
    }
  }
  return double(hits) / double(outcomes.size());
}

double mrr(std::span<const RecommendationOutcome> outcomes) {
  if (outcomes.empty()) throw Error("MRR of zero outcomes");

  double sum = 0.0;
  for (const RecommendationOutcome& o : outcomes) {
    for (std::size_t i = 0; i < o.ranked.size(); ++i) {
      if (o.actual.contains(o.ranked[i])) {
        sum += 1.0 / double(i + 1);
        break;
      }
    }
  }
  return sum / double(outcomes.size());
}

}  // namespace revrec
