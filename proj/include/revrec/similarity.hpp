#ifndef REVREC_SIMILARITY_HPP
#define REVREC_SIMILARITY_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

namespace revrec {

// The four string comparison techniques, applied to path component
// sequences rather than raw characters.
enum class SimilarityKind {
  longest_common_prefix,
  longest_common_suffix,
  longest_common_substring,
  longest_common_subsequence,
};

inline constexpr std::array<SimilarityKind, 4> kAllSimilarityKinds = {
    SimilarityKind::longest_common_prefix,
    SimilarityKind::longest_common_suffix,
    SimilarityKind::longest_common_substring,
    SimilarityKind::longest_common_subsequence,
};

const char* to_string(SimilarityKind kind);

// Splits on '/', dropping empty components. Throws Error on an empty path
// string ("/a//b/" -> {"a","b"}, "README" -> {"README"}).
std::vector<std::string> tokenize_path(const std::string& path);

// Unnormalized common length in components for the given technique.
std::size_t common_length(SimilarityKind kind,
                          std::span<const std::string> p1,
                          std::span<const std::string> p2);

// common_length / max(|p1|, |p2|), in [0,1]. Both lists must be non-empty.
double path_similarity(SimilarityKind kind, std::span<const std::string> p1,
                       std::span<const std::string> p2);

}  // namespace revrec

#endif  // REVREC_SIMILARITY_HPP
