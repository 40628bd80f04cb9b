#ifndef REVREC_TYPES_HPP
#define REVREC_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace revrec {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A reviewer or owner account. Equality and ordering are by id only;
// display names may collide or be missing.
struct Identity {
  std::string id;
  std::string display_name;  // empty = absent

  friend bool operator==(const Identity& a, const Identity& b) {
    return a.id == b.id;
  }
  friend bool operator<(const Identity& a, const Identity& b) {
    return a.id < b.id;
  }
};

// One closed/merged pull request.
struct ReviewRecord {
  std::string sub_project;  // always "" for GitHub-origin records
  std::string change_id;
  std::int64_t change_number = 0;
  std::int64_t timestamp_ms = 0;  // UTC epoch milliseconds
  Identity owner;
  std::vector<Identity> reviewers;
  std::vector<std::string> file_paths;

  // Chronological ordering key; change_number breaks timestamp ties.
  std::pair<std::int64_t, std::int64_t> order_key() const {
    return {timestamp_ms, change_number};
  }
};

enum class RepositoryKind { gerrit, github };

std::string to_string(RepositoryKind kind);

// Review history of one project, chronologically ordered once sorted.
struct ProjectCorpus {
  std::string project_name;
  RepositoryKind kind = RepositoryKind::github;
  std::vector<ReviewRecord> records;
};

struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const { return end - begin; }
};

// Contiguous chronological partition of a corpus's record indices.
struct FoldPlan {
  std::size_t fold_count = 0;
  std::vector<IndexRange> folds;
};

struct ScoredReviewer {
  Identity reviewer;
  double score = 0.0;
};

// Output of a recommender: reviewers in recommendation order, best first.
struct RankedRecommendation {
  std::vector<ScoredReviewer> entries;

  bool empty() const { return entries.empty(); }
  std::size_t size() const { return entries.size(); }
};

}  // namespace revrec

#endif  // REVREC_TYPES_HPP
