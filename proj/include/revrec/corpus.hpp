#ifndef REVREC_CORPUS_HPP
#define REVREC_CORPUS_HPP

#include <filesystem>
#include <string>

#include "revrec/types.hpp"

namespace revrec {

// Reads one per-project corpus file: a JSON array of review objects.
// Key spellings from both this tool (snake_case) and the published
// dataset export (camelCase) are accepted; see README for the mapping.
// Records are returned in file order, neither sanitized nor sorted.
// The project name is the file stem; the repository kind is inferred:
// any record with a non-empty sub_project makes the corpus gerrit,
// otherwise github.
ProjectCorpus load_project(const std::filesystem::path& path);

// Writes the corpus in the canonical on-disk form (snake_case keys,
// integer millisecond timestamps, reviewers sorted by id). Output is
// byte-deterministic for a given corpus.
void save_project(const ProjectCorpus& corpus,
                  const std::filesystem::path& path);

// Drops the owner from each record's reviewer set, removes reviewers
// whose id contains "bot" (case-insensitive) for github corpora, dedupes
// reviewers and file paths, drops empty path strings, and removes records
// left with no reviewers or no files. Total and idempotent.
ProjectCorpus sanitize(const ProjectCorpus& corpus);

// Sorts records by (timestamp, change_number), stable for full ties.
ProjectCorpus sort_chronologically(const ProjectCorpus& corpus);

// Partitions [0, records) into `fold_count` contiguous chronological
// ranges whose sizes differ by at most one; the earliest folds take the
// remainder. Throws Error when the corpus has fewer records than folds.
FoldPlan split_folds(const ProjectCorpus& corpus, std::size_t fold_count = 11);

}  // namespace revrec

#endif  // REVREC_CORPUS_HPP
