#include "revrec/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "revrec/time_util.hpp"

namespace revrec {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

const json* find_key(const json& obj, std::initializer_list<const char*> keys) {
  for (const char* k : keys) {
    auto it = obj.find(k);
    if (it != obj.end() && !it->is_null()) return &*it;
  }
  return nullptr;
}

std::string json_to_id(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  return {};
}

Identity parse_identity(const json& obj, const std::string& where) {
  if (obj.is_string()) {
    // Some exports store bare account names.
    std::string id = obj.get<std::string>();
    if (id.empty()) throw Error(where + ": empty identity");
    return Identity{id, ""};
  }
  if (!obj.is_object()) throw Error(where + ": identity is not an object");
  Identity out;
  if (const json* id = find_key(obj, {"id", "accountId", "account_id",
                                      "_account_id", "login", "username"})) {
    out.id = json_to_id(*id);
  }
  if (const json* name =
          find_key(obj, {"name", "displayName", "display_name"})) {
    if (name->is_string()) out.display_name = name->get<std::string>();
  }
  if (out.id.empty()) {
    // Fall back to the display name when the export carries no account id.
    out.id = out.display_name;
  }
  if (out.id.empty()) throw Error(where + ": identity has no id");
  return out;
}

std::int64_t parse_timestamp_field(const json& v, const std::string& where) {
  if (v.is_number_integer()) return normalize_epoch_ms(v.get<std::int64_t>());
  if (v.is_number_unsigned()) {
    return normalize_epoch_ms(std::int64_t(v.get<std::uint64_t>()));
  }
  if (v.is_number_float()) {
    return normalize_epoch_ms(std::int64_t(v.get<double>()));
  }
  if (v.is_string()) {
    auto ms = parse_timestamp_ms(v.get<std::string>());
    if (!ms) throw Error(where + ": unparseable timestamp '" +
                         v.get<std::string>() + "'");
    return *ms;
  }
  throw Error(where + ": timestamp is neither integer nor string");
}

ReviewRecord parse_record(const json& obj, std::size_t index) {
  const std::string where = "record " + std::to_string(index);
  if (!obj.is_object()) throw Error(where + ": not an object");

  ReviewRecord rec;
  if (const json* v = find_key(obj, {"sub_project", "subProject"})) {
    if (v->is_string()) rec.sub_project = v->get<std::string>();
  }
  if (const json* v = find_key(obj, {"change_id", "changeId"})) {
    if (v->is_string()) rec.change_id = v->get<std::string>();
  }
  if (const json* v = find_key(obj, {"change_number", "changeNumber"})) {
    if (!v->is_number()) throw Error(where + ": change_number is not a number");
    rec.change_number = v->get<std::int64_t>();
    if (rec.change_number < 0) {
      throw Error(where + ": change_number is negative");
    }
  }

  const json* ts = find_key(obj, {"timestamp"});
  if (!ts) throw Error(where + ": missing 'timestamp'");
  rec.timestamp_ms = parse_timestamp_field(*ts, where);

  const json* owner = find_key(obj, {"owner"});
  if (!owner) throw Error(where + ": missing 'owner'");
  rec.owner = parse_identity(*owner, where + " owner");

  const json* reviewers = find_key(obj, {"reviewers"});
  if (!reviewers) throw Error(where + ": missing 'reviewers'");
  if (!reviewers->is_array()) throw Error(where + ": 'reviewers' not an array");
  for (const json& r : *reviewers) {
    rec.reviewers.push_back(parse_identity(r, where + " reviewer"));
  }

  const json* files = find_key(obj, {"file_paths", "filePaths", "files"});
  if (!files) throw Error(where + ": missing 'file_paths'");
  if (!files->is_array()) throw Error(where + ": 'file_paths' not an array");
  for (const json& f : *files) {
    if (!f.is_string()) throw Error(where + ": file path is not a string");
    rec.file_paths.push_back(f.get<std::string>());
  }
  return rec;
}

bool id_contains_bot(const std::string& id) {
  auto lower = [](char c) { return char(std::tolower(unsigned char(c))); };
  const std::string needle = "bot";
  if (id.size() < needle.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= id.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (lower(id[i + j]) != needle[j]) {
        hit = false;
        break;
      }
    }
    if (hit) return true;
  }
  return false;
}

}  // namespace

std::string to_string(RepositoryKind kind) {
  return kind == RepositoryKind::gerrit ? "gerrit" : "github";
}

ProjectCorpus load_project(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file: " + path.string());

  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw Error("malformed corpus file " + path.string() + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw Error("corpus file " + path.string() + " is not a JSON array");
  }

  ProjectCorpus corpus;
  corpus.project_name = path.stem().string();
  corpus.records.reserve(doc.size());
  for (std::size_t i = 0; i < doc.size(); ++i) {
    try {
      corpus.records.push_back(parse_record(doc[i], i));
    } catch (const Error&) {
      throw;
    } catch (const json::exception& e) {
      throw Error("record " + std::to_string(i) + ": " + e.what());
    }
  }

  corpus.kind = RepositoryKind::github;
  for (const ReviewRecord& rec : corpus.records) {
    if (!rec.sub_project.empty()) {
      corpus.kind = RepositoryKind::gerrit;
      break;
    }
  }
  return corpus;
}

void save_project(const ProjectCorpus& corpus,
                  const std::filesystem::path& path) {
  ordered_json doc = ordered_json::array();
  for (const ReviewRecord& rec : corpus.records) {
    ordered_json obj;
    obj["sub_project"] = rec.sub_project;
    obj["change_id"] = rec.change_id;
    obj["change_number"] = rec.change_number;
    obj["timestamp"] = rec.timestamp_ms;
    ordered_json owner;
    owner["id"] = rec.owner.id;
    if (!rec.owner.display_name.empty()) {
      owner["name"] = rec.owner.display_name;
    }
    obj["owner"] = std::move(owner);
    std::vector<Identity> reviewers = rec.reviewers;
    std::sort(reviewers.begin(), reviewers.end());
    ordered_json revs = ordered_json::array();
    for (const Identity& r : reviewers) {
      ordered_json jr;
      jr["id"] = r.id;
      if (!r.display_name.empty()) jr["name"] = r.display_name;
      revs.push_back(std::move(jr));
    }
    obj["reviewers"] = std::move(revs);
    obj["file_paths"] = rec.file_paths;
    doc.push_back(std::move(obj));
  }

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write corpus file: " + path.string());
  out << doc.dump(2) << '\n';
}

ProjectCorpus sanitize(const ProjectCorpus& corpus) {
  ProjectCorpus out;
  out.project_name = corpus.project_name;
  out.kind = corpus.kind;
  out.records.reserve(corpus.records.size());

  for (const ReviewRecord& rec : corpus.records) {
    ReviewRecord clean = rec;

    std::set<std::string> seen_ids;
    std::vector<Identity> reviewers;
    for (const Identity& r : clean.reviewers) {
      if (r.id == clean.owner.id) continue;
      if (corpus.kind == RepositoryKind::github && id_contains_bot(r.id)) {
        continue;
      }
      if (!seen_ids.insert(r.id).second) continue;
      reviewers.push_back(r);
    }
    clean.reviewers = std::move(reviewers);

    std::set<std::string> seen_paths;
    std::vector<std::string> paths;
    for (const std::string& p : clean.file_paths) {
      if (p.empty()) continue;
      if (!seen_paths.insert(p).second) continue;
      paths.push_back(p);
    }
    clean.file_paths = std::move(paths);

    if (clean.reviewers.empty() || clean.file_paths.empty()) continue;
    out.records.push_back(std::move(clean));
  }
  return out;
}

ProjectCorpus sort_chronologically(const ProjectCorpus& corpus) {
  ProjectCorpus out = corpus;
  std::stable_sort(out.records.begin(), out.records.end(),
                   [](const ReviewRecord& a, const ReviewRecord& b) {
                     return a.order_key() < b.order_key();
                   });
  return out;
}

FoldPlan split_folds(const ProjectCorpus& corpus, std::size_t fold_count) {
  if (fold_count == 0) throw Error("fold_count must be positive");
  const std::size_t n = corpus.records.size();
  if (n < fold_count) {
    std::ostringstream msg;
    msg << "too few records to split: " << n << " < " << fold_count;
    throw Error(msg.str());
  }

  FoldPlan plan;
  plan.fold_count = fold_count;
  const std::size_t base = n / fold_count;
  const std::size_t extra = n % fold_count;
  std::size_t begin = 0;
  for (std::size_t i = 0; i < fold_count; ++i) {
    std::size_t size = base + (i < extra ? 1 : 0);
    plan.folds.push_back(IndexRange{begin, begin + size});
    begin += size;
  }
  return plan;
}

}  // namespace revrec
