#include "revrec/revfinder.hpp"

#include <algorithm>
#include <vector>

namespace revrec {

namespace {

using Components = std::vector<std::string>;

std::vector<Components> tokenize_files(const ReviewRecord& rec,
                                       bool prepend_subproject) {
  std::vector<Components> out;
  out.reserve(rec.file_paths.size());
  for (const std::string& path : rec.file_paths) {
    Components c = tokenize_path(path);
    if (prepend_subproject && !rec.sub_project.empty()) {
      c.insert(c.begin(), rec.sub_project);
    }
    out.push_back(std::move(c));
  }
  return out;
}

// Orders candidates by score descending with the deterministic tie-break.
std::vector<std::pair<std::string, double>> sorted_entries(
    const ScoreMap& scores, const TieBreak& ties) {
  std::vector<std::pair<std::string, double>> entries(scores.begin(),
                                                      scores.end());
  std::sort(entries.begin(), entries.end(),
            [&ties](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              std::int64_t ta = ties.activity(a.first);
              std::int64_t tb = ties.activity(b.first);
              if (ta != tb) return ta > tb;
              return a.first < b.first;
            });
  return entries;
}

}  // namespace

std::int64_t TieBreak::activity(const std::string& id) const {
  auto it = last_activity_ms.find(id);
  return it == last_activity_ms.end() ? std::int64_t{0} : it->second;
}

Identity TieBreak::identity(const std::string& id) const {
  auto it = display_names.find(id);
  return Identity{id, it == display_names.end() ? "" : it->second};
}

TieBreak tie_break_from_history(std::span<const ReviewRecord> history) {
  TieBreak ties;
  for (const ReviewRecord& rec : history) {
    for (const Identity& r : rec.reviewers) {
      auto [it, inserted] = ties.last_activity_ms.emplace(r.id,
                                                          rec.timestamp_ms);
      if (!inserted) it->second = std::max(it->second, rec.timestamp_ms);
      if (!r.display_name.empty()) ties.display_names[r.id] = r.display_name;
    }
  }
  return ties;
}

ScoreMap score_history(SimilarityKind kind, const ReviewRecord& new_review,
                       std::span<const ReviewRecord> history,
                       bool prepend_subproject) {
  ScoreMap scores;
  std::vector<Components> new_files =
      tokenize_files(new_review, prepend_subproject);

  for (const ReviewRecord& past : history) {
    std::vector<Components> past_files =
        tokenize_files(past, prepend_subproject);
    if (new_files.empty() || past_files.empty()) continue;

    double sum = 0.0;
    for (const Components& f_new : new_files) {
      if (f_new.empty()) continue;  // path like "///" tokenizes to nothing
      for (const Components& f_past : past_files) {
        if (f_past.empty()) continue;
        sum += path_similarity(kind, f_new, f_past);
      }
    }
    double contribution =
        sum / (double(new_files.size()) * double(past_files.size()));
    for (const Identity& r : past.reviewers) {
      scores[r.id] += contribution;
    }
  }
  return scores;
}

RankedRecommendation borda_combine(const std::array<ScoreMap, 4>& rankings,
                                   const TieBreak& ties) {
  ScoreMap totals;
  for (const ScoreMap& ranking : rankings) {
    std::vector<std::pair<std::string, double>> scored;
    for (const auto& [id, score] : ranking) {
      if (score > 0.0) scored.emplace_back(id, score);
    }
    std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });

    const std::size_t m = scored.size();
    std::size_t i = 0;
    while (i < m) {
      std::size_t j = i;
      while (j < m && scored[j].second == scored[i].second) ++j;
      // Positions i..j-1 share the average of the points they cover.
      double points = 0.0;
      for (std::size_t k = i; k < j; ++k) points += double(m - k);
      points /= double(j - i);
      for (std::size_t k = i; k < j; ++k) totals[scored[k].first] += points;
      i = j;
    }
  }

  for (auto it = totals.begin(); it != totals.end();) {
    it = (it->second <= 0.0) ? totals.erase(it) : std::next(it);
  }

  RankedRecommendation out;
  for (const auto& [id, points] : sorted_entries(totals, ties)) {
    out.entries.push_back(ScoredReviewer{ties.identity(id), points});
  }
  return out;
}

RankedRecommendation revfinder_recommend(const ReviewRecord& new_review,
                                         std::span<const ReviewRecord> history,
                                         const RevFinderOptions& options) {
  if (new_review.file_paths.empty()) {
    throw Error("cannot recommend for a review with no files");
  }

  std::array<ScoreMap, 4> rankings;
  for (std::size_t i = 0; i < kAllSimilarityKinds.size(); ++i) {
    rankings[i] = score_history(kAllSimilarityKinds[i], new_review, history,
                                options.use_subproject);
  }

  TieBreak ties = tie_break_from_history(history);
  RankedRecommendation combined = borda_combine(rankings, ties);

  RankedRecommendation out;
  for (ScoredReviewer& entry : combined.entries) {
    if (entry.reviewer.id == new_review.owner.id) continue;
    out.entries.push_back(std::move(entry));
  }
  return out;
}

}  // namespace revrec
