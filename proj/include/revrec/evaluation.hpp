#ifndef REVREC_EVALUATION_HPP
#define REVREC_EVALUATION_HPP

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "revrec/metrics.hpp"
#include "revrec/types.hpp"

namespace revrec {

enum class Algorithm { revfinder, revfinder_plus, nb, nb_plus };

std::string to_string(Algorithm algo);
std::optional<Algorithm> parse_algorithm(const std::string& name);
bool uses_subproject(Algorithm algo);

// A recommender is fit once per iteration on the training prefix and then
// queried for every review of the test fold. Implementations must treat
// the history span as immutable and may be used from a single thread.
class Recommender {
 public:
  virtual ~Recommender() = default;
  virtual void fit(std::span<const ReviewRecord> history) = 0;
  virtual RankedRecommendation recommend(const ReviewRecord& review) = 0;
};

using RecommenderFactory = std::function<std::unique_ptr<Recommender>()>;

struct EvalConfig {
  std::size_t fold_count = 11;
  double alpha = 1.0;
  int recency_months = 12;
  std::vector<std::size_t> k_values = {1, 3, 5, 10};
  // Average per-iteration metrics (the paper's protocol) or pool all test
  // outcomes into one metric computation.
  bool pooled = false;
  // Threads used for the iterations of this one experiment.
  std::size_t iteration_jobs = 1;
};

RecommenderFactory make_recommender_factory(Algorithm algo,
                                            const EvalConfig& config);

struct IterationMetrics {
  std::vector<double> top_k;  // parallel to EvalConfig::k_values, in [0,1]
  double mrr = 0.0;
  std::size_t outcome_count = 0;
};

struct EvaluationReport {
  std::string project;
  std::string algorithm;
  std::vector<std::size_t> k_values;
  std::vector<IterationMetrics> per_iteration;  // iterations 1..fold_count-1
  IterationMetrics averaged;
};

struct IterationPlan {
  IndexRange train;
  IndexRange test;
};

// Iteration i trains on folds 1..i and tests on fold i+1.
std::vector<IterationPlan> iteration_plans(const FoldPlan& plan);

// The chronological fold experiment on a sanitized, sorted corpus.
// Throws Error when the corpus is too small, unsorted, contains records
// an earlier sanitize pass should have removed, when a sub-project
// variant is requested for a corpus without sub-projects, or when a fold
// boundary would leak a training key into the test fold.
EvaluationReport run_experiment(const ProjectCorpus& corpus, Algorithm algo,
                                const EvalConfig& config);

// Same protocol with a caller-supplied recommender (used by the property
// suites to drive reference recommenders through the real harness).
EvaluationReport run_experiment_with(const ProjectCorpus& corpus,
                                     const std::string& algorithm_name,
                                     const RecommenderFactory& factory,
                                     const EvalConfig& config);

}  // namespace revrec

#endif  // REVREC_EVALUATION_HPP
