#include "revrec/bayes.hpp"

#include <algorithm>
#include <cmath>

#include "revrec/time_util.hpp"

namespace revrec {

double FeatureDimension::log_conditional(const std::string& reviewer,
                                         const std::string& value,
                                         double alpha) const {
  std::int64_t count = 0;
  if (auto it = counts.find(reviewer); it != counts.end()) {
    if (auto vit = it->second.find(value); vit != it->second.end()) {
      count = vit->second;
    }
  }
  std::int64_t total = 0;
  if (auto it = totals.find(reviewer); it != totals.end()) total = it->second;

  std::size_t vocab = vocabulary.size();
  if (!vocabulary.contains(value)) ++vocab;

  return std::log(double(count) + alpha) -
         std::log(double(total) + alpha * double(vocab));
}

NBModel build_model(std::span<const ReviewRecord> past_reviews,
                    bool use_subproject, double alpha) {
  if (alpha <= 0.0) throw Error("smoothing alpha must be positive");

  NBModel model;
  model.alpha = alpha;
  model.use_subproject = use_subproject;

  for (const ReviewRecord& rec : past_reviews) {
    for (const Identity& r : rec.reviewers) {
      ++model.prior_counts[r.id];
      auto [it, inserted] =
          model.last_activity.emplace(r.id, rec.timestamp_ms);
      if (!inserted) it->second = std::max(it->second, rec.timestamp_ms);
      if (!r.display_name.empty()) model.display_names[r.id] = r.display_name;

      model.owner_dim.add(r.id, rec.owner.id);
      for (const std::string& path : rec.file_paths) {
        model.file_dim.add(r.id, path);
      }
      if (use_subproject) {
        model.subproject_dim.add(r.id, rec.sub_project);
      }
    }
  }
  return model;
}

std::vector<Identity> recom(const NBModel& model, const std::string& file_path,
                            const Identity& owner,
                            const std::string& subproject) {
  double prior_total = 0.0;
  for (const auto& [id, count] : model.prior_counts) {
    prior_total += double(count);
  }

  struct Scored {
    const std::string* id;
    double log_posterior;
    std::int64_t activity;
  };
  std::vector<Scored> scored;
  scored.reserve(model.prior_counts.size());

  for (const auto& [id, count] : model.prior_counts) {
    double lp = std::log(double(count) / prior_total);
    lp += model.file_dim.log_conditional(id, file_path, model.alpha);
    lp += model.owner_dim.log_conditional(id, owner.id, model.alpha);
    if (model.use_subproject) {
      lp += model.subproject_dim.log_conditional(id, subproject, model.alpha);
    }
    auto act = model.last_activity.find(id);
    scored.push_back(Scored{
        &id, lp,
        act == model.last_activity.end() ? std::int64_t{0} : act->second});
  }

  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.log_posterior != b.log_posterior) {
      return a.log_posterior > b.log_posterior;
    }
    if (a.activity != b.activity) return a.activity > b.activity;
    return *a.id < *b.id;
  });

  std::vector<Identity> out;
  out.reserve(scored.size());
  for (const Scored& s : scored) {
    auto name = model.display_names.find(*s.id);
    out.push_back(Identity{
        *s.id, name == model.display_names.end() ? "" : name->second});
  }
  return out;
}

RankedRecommendation remove_retired(const RankedRecommendation& candidates,
                                    const NBModel& model,
                                    const RecencyPolicy& policy) {
  if (policy.window_months < 1) throw Error("recency window must be >= 1");
  const std::int64_t cutoff =
      months_before_ms(policy.reference_time_ms, policy.window_months);

  RankedRecommendation active, retired;
  for (const ScoredReviewer& entry : candidates.entries) {
    auto it = model.last_activity.find(entry.reviewer.id);
    bool is_active =
        it != model.last_activity.end() && it->second >= cutoff;
    (is_active ? active : retired).entries.push_back(entry);
  }
  active.entries.insert(active.entries.end(), retired.entries.begin(),
                        retired.entries.end());
  return active;
}

RankedRecommendation nb_recommend(const NBModel& model,
                                  const ReviewRecord& new_review,
                                  const RecencyPolicy& policy) {
  if (new_review.file_paths.empty()) {
    throw Error("cannot recommend for a review with no files");
  }
  if (model.empty()) return {};

  std::map<std::string, double> scores;
  for (const std::string& path : new_review.file_paths) {
    std::vector<Identity> reviewers =
        recom(model, path, new_review.owner, new_review.sub_project);
    std::size_t score_count = 0;
    for (const Identity& r : reviewers) {
      ++score_count;
      scores[r.id] += double(reviewers.size() - score_count);
    }
  }

  struct Entry {
    std::string id;
    double score;
    std::int64_t activity;
  };
  std::vector<Entry> entries;
  entries.reserve(scores.size());
  for (const auto& [id, score] : scores) {
    auto it = model.last_activity.find(id);
    entries.push_back(Entry{
        id, score,
        it == model.last_activity.end() ? std::int64_t{0} : it->second});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.activity != b.activity) return a.activity > b.activity;
    return a.id < b.id;
  });

  RankedRecommendation ranked;
  for (const Entry& e : entries) {
    if (e.id == new_review.owner.id) continue;
    auto name = model.display_names.find(e.id);
    ranked.entries.push_back(ScoredReviewer{
        Identity{e.id, name == model.display_names.end() ? "" : name->second},
        e.score});
  }

  RecencyPolicy effective = policy;
  if (effective.reference_time_ms == 0) {
    effective.reference_time_ms = new_review.timestamp_ms;
  }
  return remove_retired(ranked, model, effective);
}

}  // namespace revrec
