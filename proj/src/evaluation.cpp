#include "revrec/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "revrec/bayes.hpp"
#include "revrec/corpus.hpp"
#include "revrec/revfinder.hpp"

namespace revrec {

namespace {

class RevFinderRecommender : public Recommender {
 public:
  explicit RevFinderRecommender(bool use_subproject)
      : options_{use_subproject} {}

  void fit(std::span<const ReviewRecord> history) override {
    history_ = history;
  }
  RankedRecommendation recommend(const ReviewRecord& review) override {
    return revfinder_recommend(review, history_, options_);
  }

 private:
  RevFinderOptions options_;
  std::span<const ReviewRecord> history_;
};

class NBRecommender : public Recommender {
 public:
  NBRecommender(bool use_subproject, double alpha, int recency_months)
      : use_subproject_(use_subproject),
        alpha_(alpha),
        recency_months_(recency_months) {}

  void fit(std::span<const ReviewRecord> history) override {
    model_ = build_model(history, use_subproject_, alpha_);
  }
  RankedRecommendation recommend(const ReviewRecord& review) override {
    RecencyPolicy policy{recency_months_, review.timestamp_ms};
    return nb_recommend(model_, review, policy);
  }

 private:
  bool use_subproject_;
  double alpha_;
  int recency_months_;
  NBModel model_;
};

void check_preconditions(const ProjectCorpus& corpus,
                         const EvalConfig& config) {
  if (corpus.records.size() < config.fold_count) {
    throw Error("project " + corpus.project_name + ": too few records (" +
                std::to_string(corpus.records.size()) + ") for " +
                std::to_string(config.fold_count) + " folds");
  }
  for (std::size_t i = 0; i + 1 < corpus.records.size(); ++i) {
    if (corpus.records[i + 1].order_key() < corpus.records[i].order_key()) {
      throw Error("project " + corpus.project_name +
                  ": corpus is not sorted chronologically");
    }
  }
  for (const ReviewRecord& rec : corpus.records) {
    if (rec.reviewers.empty() || rec.file_paths.empty()) {
      throw Error("project " + corpus.project_name +
                  ": corpus contains unsanitized records");
    }
  }
}

IterationMetrics compute_metrics(
    std::span<const RecommendationOutcome> outcomes,
    const std::vector<std::size_t>& k_values) {
  IterationMetrics m;
  m.outcome_count = outcomes.size();
  for (std::size_t k : k_values) m.top_k.push_back(top_k_accuracy(outcomes, k));
  m.mrr = mrr(outcomes);
  return m;
}

}  // namespace

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::revfinder:
      return "revfinder";
    case Algorithm::revfinder_plus:
      return "revfinder+";
    case Algorithm::nb:
      return "nb";
    case Algorithm::nb_plus:
      return "nb+";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(const std::string& name) {
  if (name == "revfinder") return Algorithm::revfinder;
  if (name == "revfinder+") return Algorithm::revfinder_plus;
  if (name == "nb") return Algorithm::nb;
  if (name == "nb+") return Algorithm::nb_plus;
  return std::nullopt;
}

bool uses_subproject(Algorithm algo) {
  return algo == Algorithm::revfinder_plus || algo == Algorithm::nb_plus;
}

RecommenderFactory make_recommender_factory(Algorithm algo,
                                            const EvalConfig& config) {
  const bool plus = uses_subproject(algo);
  if (algo == Algorithm::revfinder || algo == Algorithm::revfinder_plus) {
    return [plus] { return std::make_unique<RevFinderRecommender>(plus); };
  }
  const double alpha = config.alpha;
  const int months = config.recency_months;
  return [plus, alpha, months] {
    return std::make_unique<NBRecommender>(plus, alpha, months);
  };
}

std::vector<IterationPlan> iteration_plans(const FoldPlan& plan) {
  std::vector<IterationPlan> out;
  for (std::size_t i = 1; i < plan.folds.size(); ++i) {
    IterationPlan it;
    it.train = IndexRange{plan.folds.front().begin, plan.folds[i].begin};
    it.test = plan.folds[i];
    out.push_back(it);
  }
  return out;
}

EvaluationReport run_experiment(const ProjectCorpus& corpus, Algorithm algo,
                                const EvalConfig& config) {
  if (uses_subproject(algo) && corpus.kind == RepositoryKind::github) {
    throw Error("project " + corpus.project_name + ": algorithm " +
                to_string(algo) +
                " needs sub-projects, which github corpora do not have");
  }
  return run_experiment_with(corpus, to_string(algo),
                             make_recommender_factory(algo, config), config);
}

EvaluationReport run_experiment_with(const ProjectCorpus& corpus,
                                     const std::string& algorithm_name,
                                     const RecommenderFactory& factory,
                                     const EvalConfig& config) {
  check_preconditions(corpus, config);

  const FoldPlan folds = split_folds(corpus, config.fold_count);
  const std::vector<IterationPlan> plans = iteration_plans(folds);
  const std::span<const ReviewRecord> records{corpus.records};

  for (const IterationPlan& plan : plans) {
    const ReviewRecord& last_train = corpus.records[plan.train.end - 1];
    const ReviewRecord& first_test = corpus.records[plan.test.begin];
    if (!(last_train.order_key() < first_test.order_key())) {
      throw Error("project " + corpus.project_name +
                  ": fold boundary ties break the chronology (change " +
                  last_train.change_id + " / " + first_test.change_id + ")");
    }
  }

  std::vector<std::vector<RecommendationOutcome>> per_iteration_outcomes(
      plans.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= plans.size() || failed.load()) break;
      try {
        const IterationPlan& plan = plans[i];
        std::unique_ptr<Recommender> rec = factory();
        rec->fit(records.subspan(plan.train.begin, plan.train.size()));

        std::vector<RecommendationOutcome>& outcomes =
            per_iteration_outcomes[i];
        outcomes.reserve(plan.test.size());
        for (std::size_t r = plan.test.begin; r < plan.test.end; ++r) {
          const ReviewRecord& review = corpus.records[r];
          RankedRecommendation ranked = rec->recommend(review);
          RecommendationOutcome outcome;
          outcome.review_ref = review.change_id;
          for (const ScoredReviewer& entry : ranked.entries) {
            outcome.ranked.push_back(entry.reviewer.id);
          }
          for (const Identity& a : review.reviewers) {
            outcome.actual.insert(a.id);
          }
          outcomes.push_back(std::move(outcome));
        }
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        failed.store(true);
        if (failure.empty()) failure = e.what();
      }
    }
  };

  std::size_t jobs = std::max<std::size_t>(1, config.iteration_jobs);
  jobs = std::min(jobs, plans.size());
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }
  if (failed.load()) throw Error(failure);

  EvaluationReport report;
  report.project = corpus.project_name;
  report.algorithm = algorithm_name;
  report.k_values = config.k_values;
  for (const auto& outcomes : per_iteration_outcomes) {
    report.per_iteration.push_back(compute_metrics(outcomes, config.k_values));
  }

  if (config.pooled) {
    std::vector<RecommendationOutcome> pooled;
    for (auto& outcomes : per_iteration_outcomes) {
      pooled.insert(pooled.end(), outcomes.begin(), outcomes.end());
    }
    report.averaged = compute_metrics(pooled, config.k_values);
  } else {
    IterationMetrics avg;
    avg.top_k.assign(config.k_values.size(), 0.0);
    for (const IterationMetrics& m : report.per_iteration) {
      for (std::size_t j = 0; j < m.top_k.size(); ++j) {
        avg.top_k[j] += m.top_k[j];
      }
      avg.mrr += m.mrr;
      avg.outcome_count += m.outcome_count;
    }
    const double n = double(report.per_iteration.size());
    for (double& v : avg.top_k) v /= n;
    avg.mrr /= n;
    report.averaged = avg;
  }
  return report;
}

}  // namespace revrec
