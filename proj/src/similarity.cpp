#include "revrec/similarity.hpp"

#include <algorithm>

#include "revrec/types.hpp"

namespace revrec {

namespace {

std::size_t prefix_length(std::span<const std::string> a,
                          std::span<const std::string> b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[i] == b[i]) ++i;
  return i;
}

std::size_t suffix_length(std::span<const std::string> a,
                          std::span<const std::string> b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t i = 0;
  while (i < n && a[a.size() - 1 - i] == b[b.size() - 1 - i]) ++i;
  return i;
}

std::size_t substring_length(std::span<const std::string> a,
                             std::span<const std::string> b) {
  // row[j]: longest common run ending at a[i], b[j-1].
  std::vector<std::size_t> row(b.size() + 1, 0);
  std::size_t best = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t diag = 0;  // row[j-1] from the previous iteration of i
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = (a[i] == b[j - 1]) ? diag + 1 : 0;
      best = std::max(best, row[j]);
      diag = up;
    }
  }
  return best;
}

std::size_t subsequence_length(std::span<const std::string> a,
                               std::span<const std::string> b) {
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      row[j] = (a[i] == b[j - 1]) ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

const char* to_string(SimilarityKind kind) {
  switch (kind) {
    case SimilarityKind::longest_common_prefix:
      return "longest_common_prefix";
    case SimilarityKind::longest_common_suffix:
      return "longest_common_suffix";
    case SimilarityKind::longest_common_substring:
      return "longest_common_substring";
    case SimilarityKind::longest_common_subsequence:
      return "longest_common_subsequence";
  }
  return "?";
}

std::vector<std::string> tokenize_path(const std::string& path) {
  if (path.empty()) throw Error("cannot tokenize an empty path");
  std::vector<std::string> components;
  std::size_t start = 0;
  while (start <= path.size()) {
    std::size_t slash = path.find('/', start);
    if (slash == std::string::npos) slash = path.size();
    if (slash > start) components.push_back(path.substr(start, slash - start));
    start = slash + 1;
  }
  return components;
}

std::size_t common_length(SimilarityKind kind, std::span<const std::string> p1,
                          std::span<const std::string> p2) {
  switch (kind) {
    case SimilarityKind::longest_common_prefix:
      return prefix_length(p1, p2);
    case SimilarityKind::longest_common_suffix:
      return suffix_length(p1, p2);
    case SimilarityKind::longest_common_substring:
      return substring_length(p1, p2);
    case SimilarityKind::longest_common_subsequence:
      return subsequence_length(p1, p2);
  }
  return 0;
}

double path_similarity(SimilarityKind kind, std::span<const std::string> p1,
                       std::span<const std::string> p2) {
  if (p1.empty() || p2.empty()) {
    throw Error("path_similarity requires non-empty component lists");
  }
  return double(common_length(kind, p1, p2)) /
         double(std::max(p1.size(), p2.size()));
}

}  // namespace revrec
