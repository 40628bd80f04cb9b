#ifndef REVREC_MINER_HPP
#define REVREC_MINER_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "revrec/types.hpp"

namespace revrec {

struct MinerConfig {
  std::string base_url;         // e.g. https://api.github.com
  std::string project_or_repo;  // gerrit umbrella project / "owner/repo"
  std::string auth_token;       // empty = anonymous
  int page_size = 100;
  std::chrono::milliseconds request_timeout{30000};
  int max_retries = 3;
  std::chrono::milliseconds backoff_initial{1000};
  std::optional<std::int64_t> since_ms;  // keep records at or after
  std::optional<std::int64_t> until_ms;  // keep records strictly before
};

struct MineStats {
  std::size_t fetched = 0;
  std::size_t parse_errors_skipped = 0;
  std::size_t truncated_file_lists = 0;
};

// Fetches merged changes from a Gerrit server. Reviewers are the accounts
// with a positive Code-Review vote; the sub-project is the change's
// project name with the umbrella prefix stripped. Commit-message pseudo
// files are not part of the modified file list.
std::vector<ReviewRecord> mine_gerrit(const MinerConfig& config,
                                      MineStats* stats = nullptr,
                                      std::ostream* log = nullptr);

// Fetches closed pull requests from a GitHub repository. Reviewers are
// the union of issue-comment and review-comment authors; file lists are
// capped at 300 paths with a truncation note in the log.
std::vector<ReviewRecord> mine_github(const MinerConfig& config,
                                      MineStats* stats = nullptr,
                                      std::ostream* log = nullptr);

}  // namespace revrec

#endif  // REVREC_MINER_HPP
