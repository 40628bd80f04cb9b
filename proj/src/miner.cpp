#include "revrec/miner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "revrec/time_util.hpp"

namespace revrec {

namespace {

using json = nlohmann::json;

constexpr std::size_t kGithubFileCap = 300;

void log_line(std::ostream* log, const std::string& message) {
  if (log) *log << message << '\n';
}

httplib::Headers base_headers(const MinerConfig& config, bool github) {
  httplib::Headers headers{{"User-Agent", "revrec-miner"}};
  if (github) headers.emplace("Accept", "application/vnd.github+json");
  if (!config.auth_token.empty()) {
    headers.emplace("Authorization", "Bearer " + config.auth_token);
  }
  return headers;
}

std::int64_t header_int(const httplib::Response& res, const char* name) {
  std::string value = res.get_header_value(name);
  if (value.empty()) return -1;
  try {
    return std::stoll(value);
  } catch (const std::exception&) {
    return -1;
  }
}

// GET with retry/backoff; 403/429 responses that carry an exhausted
// rate-limit header wait for the advertised reset instead of burning a
// retry. Throws Error once retries are spent.
httplib::Result http_get(httplib::Client& client, const std::string& path,
                         const httplib::Headers& headers,
                         const MinerConfig& config, std::ostream* log) {
  auto backoff = config.backoff_initial;
  int attempt = 0;
  for (;;) {
    httplib::Result res = client.Get(path, headers);
    if (res) {
      if (res->status < 500 && res->status != 429) {
        bool limited = (res->status == 403 || res->status == 429) &&
                       header_int(*res, "X-RateLimit-Remaining") == 0;
        if (!limited) return res;
        std::int64_t reset_s = header_int(*res, "X-RateLimit-Reset");
        auto now = std::chrono::system_clock::now();
        auto wait = std::chrono::seconds(1);
        if (reset_s > 0) {
          auto reset_tp =
              std::chrono::system_clock::time_point(std::chrono::seconds(reset_s));
          if (reset_tp > now) {
            wait = std::chrono::duration_cast<std::chrono::seconds>(
                       reset_tp - now) +
                   std::chrono::seconds(1);
          } else {
            wait = std::chrono::seconds(0);
          }
        }
        wait = std::min(wait, std::chrono::seconds(120));
        log_line(log, "rate limited; waiting " +
                          std::to_string(wait.count()) + "s: " + path);
        std::this_thread::sleep_for(wait);
        continue;
      }
    }
    if (attempt >= config.max_retries) {
      std::string reason =
          res ? "HTTP " + std::to_string(res->status)
              : "connection error " + httplib::to_string(res.error());
      throw Error("request failed after " + std::to_string(attempt + 1) +
                  " attempts (" + reason + "): " + path);
    }
    log_line(log, "retrying (" + std::to_string(attempt + 1) + "/" +
                      std::to_string(config.max_retries) + "): " + path);
    std::this_thread::sleep_for(backoff);
    backoff *= 2;
    ++attempt;
  }
}

json parse_json_body(const std::string& body, const std::string& where) {
  // Gerrit prefixes JSON responses with an XSSI guard line.
  std::size_t start = 0;
  if (body.rfind(")]}'", 0) == 0) {
    start = body.find('\n');
    start = (start == std::string::npos) ? body.size() : start + 1;
  }
  try {
    return json::parse(body.begin() + std::ptrdiff_t(start), body.end());
  } catch (const json::exception& e) {
    throw Error("malformed response from " + where + ": " + e.what());
  }
}

bool within_window(const MinerConfig& config, std::int64_t timestamp_ms) {
  if (config.since_ms && timestamp_ms < *config.since_ms) return false;
  if (config.until_ms && timestamp_ms >= *config.until_ms) return false;
  return true;
}

Identity gerrit_account(const json& account) {
  Identity id;
  if (account.contains("_account_id")) {
    id.id = std::to_string(account["_account_id"].get<std::int64_t>());
  }
  if (account.contains("name") && account["name"].is_string()) {
    id.display_name = account["name"].get<std::string>();
    if (id.id.empty()) id.id = id.display_name;
  }
  if (id.id.empty()) throw Error("account without id");
  return id;
}

std::string gerrit_sub_project(const std::string& project,
                               const std::string& umbrella) {
  const std::string prefix = umbrella + "/";
  if (project.size() > prefix.size() && project.rfind(prefix, 0) == 0) {
    return project.substr(prefix.size());
  }
  return project;
}

ReviewRecord parse_gerrit_change(const json& change,
                                 const std::string& umbrella) {
  ReviewRecord rec;
  if (change.contains("project")) {
    rec.sub_project =
        gerrit_sub_project(change["project"].get<std::string>(), umbrella);
  }
  if (change.contains("change_id")) {
    rec.change_id = change["change_id"].get<std::string>();
  } else if (change.contains("id")) {
    rec.change_id = change["id"].get<std::string>();
  }
  rec.change_number = change.at("_number").get<std::int64_t>();

  std::string ts;
  for (const char* key : {"created", "submitted", "updated"}) {
    if (change.contains(key) && change[key].is_string()) {
      ts = change[key].get<std::string>();
      break;
    }
  }
  auto ms = parse_timestamp_ms(ts);
  if (!ms) throw Error("change " + std::to_string(rec.change_number) +
                       ": no parseable timestamp");
  rec.timestamp_ms = *ms;

  rec.owner = gerrit_account(change.at("owner"));

  // Everyone with a positive Code-Review vote counts as a reviewer.
  std::set<std::string> seen;
  if (change.contains("labels") && change["labels"].contains("Code-Review")) {
    const json& label = change["labels"]["Code-Review"];
    if (label.contains("all")) {
      for (const json& vote : label["all"]) {
        if (!vote.contains("value")) continue;
        if (vote["value"].get<std::int64_t>() < 1) continue;
        Identity reviewer = gerrit_account(vote);
        if (seen.insert(reviewer.id).second) {
          rec.reviewers.push_back(std::move(reviewer));
        }
      }
    }
  }

  if (change.contains("revisions") && change.contains("current_revision")) {
    const std::string rev = change["current_revision"].get<std::string>();
    const json& revisions = change["revisions"];
    if (revisions.contains(rev) && revisions[rev].contains("files")) {
      for (const auto& [path, info] : revisions[rev]["files"].items()) {
        (void)info;
        if (path == "/COMMIT_MSG" || path == "/MERGE_LIST") continue;
        rec.file_paths.push_back(path);
      }
      std::sort(rec.file_paths.begin(), rec.file_paths.end());
    }
  }
  return rec;
}

}  // namespace

std::vector<ReviewRecord> mine_gerrit(const MinerConfig& config,
                                      MineStats* stats, std::ostream* log) {
  if (config.page_size < 1) throw Error("page_size must be >= 1");
  httplib::Client client(config.base_url);
  client.set_read_timeout(config.request_timeout);
  client.set_connection_timeout(config.request_timeout);
  httplib::Headers headers = base_headers(config, /*github=*/false);

  MineStats local;
  std::vector<ReviewRecord> records;
  std::size_t offset = 0;
  bool more = true;
  while (more) {
    // `projects:` matches the umbrella project and everything beneath it.
    std::string path = "/changes/?q=status:merged+projects:" +
                       config.project_or_repo +
                       "&o=CURRENT_REVISION&o=CURRENT_FILES&o=DETAILED_LABELS" +
                       "&n=" + std::to_string(config.page_size) +
                       "&S=" + std::to_string(offset);
    httplib::Result res = http_get(client, path, headers, config, log);
    if (res->status != 200) {
      throw Error("gerrit query failed with HTTP " +
                  std::to_string(res->status));
    }
    json page = parse_json_body(res->body, path);
    if (!page.is_array()) throw Error("gerrit query returned a non-array");
    if (page.empty()) break;

    more = false;
    for (const json& change : page) {
      try {
        ReviewRecord rec = parse_gerrit_change(change, config.project_or_repo);
        ++local.fetched;
        if (within_window(config, rec.timestamp_ms)) {
          records.push_back(std::move(rec));
        }
      } catch (const std::exception& e) {
        ++local.parse_errors_skipped;
        log_line(log, std::string("skipping unparseable change: ") + e.what());
      }
    }
    if (page.back().contains("_more_changes") &&
        page.back()["_more_changes"].get<bool>()) {
      more = true;
    }
    offset += page.size();
  }

  log_line(log, "gerrit mining done: " + std::to_string(records.size()) +
                    " records, " + std::to_string(local.parse_errors_skipped) +
                    " changes skipped");
  if (stats) *stats = local;
  return records;
}

namespace {

std::set<std::string> fetch_comment_authors(httplib::Client& client,
                                            const std::string& path_prefix,
                                            const httplib::Headers& headers,
                                            const MinerConfig& config,
                                            std::ostream* log,
                                            std::vector<Identity>* out) {
  std::set<std::string> seen;
  for (int page = 1;; ++page) {
    std::string path = path_prefix +
                       "?per_page=" + std::to_string(config.page_size) +
                       "&page=" + std::to_string(page);
    httplib::Result res = http_get(client, path, headers, config, log);
    if (res->status != 200) {
      throw Error("comment listing failed with HTTP " +
                  std::to_string(res->status));
    }
    json body = parse_json_body(res->body, path);
    if (!body.is_array() || body.empty()) break;
    for (const json& comment : body) {
      if (!comment.contains("user") || comment["user"].is_null()) continue;
      const json& user = comment["user"];
      if (!user.contains("login")) continue;
      Identity reviewer{user["login"].get<std::string>(), ""};
      if (seen.insert(reviewer.id).second) out->push_back(std::move(reviewer));
    }
    if (body.size() < std::size_t(config.page_size)) break;
  }
  return seen;
}

std::vector<std::string> fetch_pr_files(httplib::Client& client,
                                        const std::string& repo, int number,
                                        const httplib::Headers& headers,
                                        const MinerConfig& config,
                                        std::ostream* log, bool* truncated) {
  std::vector<std::string> files;
  *truncated = false;
  for (int page = 1;; ++page) {
    std::string path = "/repos/" + repo + "/pulls/" + std::to_string(number) +
                       "/files?per_page=" + std::to_string(config.page_size) +
                       "&page=" + std::to_string(page);
    httplib::Result res = http_get(client, path, headers, config, log);
    if (res->status != 200) {
      throw Error("file listing failed with HTTP " +
                  std::to_string(res->status));
    }
    json body = parse_json_body(res->body, path);
    if (!body.is_array() || body.empty()) break;
    for (const json& file : body) {
      if (file.contains("filename")) {
        files.push_back(file["filename"].get<std::string>());
      }
    }
    if (files.size() > kGithubFileCap) break;
    if (body.size() < std::size_t(config.page_size)) break;
  }
  if (files.size() > kGithubFileCap) {
    files.resize(kGithubFileCap);
    *truncated = true;
  }
  return files;
}

}  // namespace

std::vector<ReviewRecord> mine_github(const MinerConfig& config,
                                      MineStats* stats, std::ostream* log) {
  if (config.page_size < 1) throw Error("page_size must be >= 1");
  httplib::Client client(config.base_url);
  client.set_read_timeout(config.request_timeout);
  client.set_connection_timeout(config.request_timeout);
  httplib::Headers headers = base_headers(config, /*github=*/true);
  const std::string& repo = config.project_or_repo;

  MineStats local;
  std::vector<ReviewRecord> records;
  for (int page = 1;; ++page) {
    std::string path = "/repos/" + repo +
                       "/pulls?state=closed&sort=created&direction=asc" +
                       "&per_page=" + std::to_string(config.page_size) +
                       "&page=" + std::to_string(page);
    httplib::Result res = http_get(client, path, headers, config, log);
    if (res->status != 200) {
      throw Error("pull request listing failed with HTTP " +
                  std::to_string(res->status));
    }
    json body = parse_json_body(res->body, path);
    if (!body.is_array() || body.empty()) break;

    for (const json& pr : body) {
      int number = 0;
      try {
        number = pr.at("number").get<int>();
        ReviewRecord rec;
        rec.sub_project = "";
        rec.change_id = repo + "#" + std::to_string(number);
        rec.change_number = number;
        auto ms = parse_timestamp_ms(pr.at("created_at").get<std::string>());
        if (!ms) throw Error("unparseable created_at");
        rec.timestamp_ms = *ms;
        if (!within_window(config, rec.timestamp_ms)) continue;

        const json& user = pr.at("user");
        rec.owner = Identity{user.at("login").get<std::string>(), ""};

        std::string num = std::to_string(number);
        fetch_comment_authors(client, "/repos/" + repo + "/issues/" + num +
                                          "/comments",
                              headers, config, log, &rec.reviewers);
        std::set<std::string> seen;
        for (const Identity& r : rec.reviewers) seen.insert(r.id);
        std::vector<Identity> review_comment_authors;
        fetch_comment_authors(client, "/repos/" + repo + "/pulls/" + num +
                                          "/comments",
                              headers, config, log, &review_comment_authors);
        for (Identity& r : review_comment_authors) {
          if (seen.insert(r.id).second) rec.reviewers.push_back(std::move(r));
        }

        bool truncated = false;
        rec.file_paths = fetch_pr_files(client, repo, number, headers, config,
                                        log, &truncated);
        if (truncated) {
          ++local.truncated_file_lists;
          log_line(log, "file list truncated to " +
                            std::to_string(kGithubFileCap) + " paths: PR #" +
                            num);
        }
        ++local.fetched;
        records.push_back(std::move(rec));
      } catch (const std::exception& e) {
        ++local.parse_errors_skipped;
        log_line(log, "skipping PR #" + std::to_string(number) + ": " +
                          e.what());
      }
    }
    if (body.size() < std::size_t(config.page_size)) break;
  }

  log_line(log, "github mining done: " + std::to_string(records.size()) +
                    " records, " + std::to_string(local.parse_errors_skipped) +
                    " PRs skipped, " +
                    std::to_string(local.truncated_file_lists) +
                    " file lists truncated");
  if (stats) *stats = local;
  return records;
}

}  // namespace revrec
