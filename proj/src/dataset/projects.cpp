// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#include "constat/dataset/projects.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "constat/support/text.hpp"

#define CPPHTTPLIB_NO_EXCEPTIONS
#include "httplib.h"
#include "json.hpp"

namespace constat::dataset {

namespace fs = std::filesystem;

namespace {

// Strips scheme/credentials from a URL-ish line; returns host + path.
std::optional<std::pair<std::string, std::string>> split_remote(
    std::string_view line) {
  std::string_view rest = line;
  bool remote = false;
  for (std::string_view scheme :
       {"https://", "http://", "git://", "ssh://"}) {
    if (starts_with(rest, scheme)) {
      rest.remove_prefix(scheme.size());
      remote = true;
      break;
    }
  }
  if (!remote && starts_with(rest, "git@")) {
    // scp-style: git@host:owner/name
    rest.remove_prefix(4);
    std::size_t colon = rest.find(':');
    if (colon == std::string_view::npos) return std::nullopt;
    std::string host(rest.substr(0, colon));
    std::string path(rest.substr(colon + 1));
    return std::make_pair(host, path);
  }
  if (!remote) return std::nullopt;
  std::size_t at = rest.find('@');
  std::size_t slash = rest.find('/');
  if (at != std::string_view::npos &&
      (slash == std::string_view::npos || at < slash)) {
    rest.remove_prefix(at + 1);
    slash = rest.find('/');
  }
  if (slash == std::string_view::npos) return std::nullopt;
  std::string host(rest.substr(0, slash));
  std::string path(rest.substr(slash + 1));
  return std::make_pair(host, path);
}

std::string normalize_repo_path(std::string_view path) {
  std::string out = to_lower(trim(path));
  while (ends_with(out, "/")) out.pop_back();
  if (ends_with(out, ".git")) out.resize(out.size() - 4);
  while (ends_with(out, "/")) out.pop_back();
  return out;
}

// project_id tokens may only contain [a-z0-9_.-].
std::string sanitize_id(std::string_view key) {
  std::string out;
  out.reserve(key.size());
  for (char c : key) {
    if (c == '/') {
      out += "__";
    } else if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_' ||
               c == '.' || c == '-') {
      out.push_back(c);
    } else {
      out.push_back('-');
    }
  }
  return out;
}

}  // namespace

std::optional<ProjectRef> make_project_ref(std::string_view line) {
  std::string_view trimmed = trim(line);
  if (trimmed.empty()) return std::nullopt;

  ProjectRef ref;
  ref.raw = std::string(trimmed);

  if (starts_with(trimmed, "file://")) {
    // Clonable local remote, mostly used by tests and mirrors.
    std::string key = normalize_repo_path(trimmed.substr(7));
    while (!key.empty() && key.front() == '/') key.erase(key.begin());
    if (key.empty()) return std::nullopt;
    ref.origin = ProjectRef::Origin::kRemote;
    ref.canonical_key = "file/" + key;
    ref.location = ref.raw;
    ref.project_id = sanitize_id(ref.canonical_key);
    return ref;
  }

  if (auto remote = split_remote(trimmed)) {
    std::string host = to_lower(remote->first);
    std::string repo = normalize_repo_path(remote->second);
    if (host.empty() || repo.empty()) return std::nullopt;
    ref.origin = ProjectRef::Origin::kRemote;
    ref.canonical_key = host + "/" + repo;
    ref.location = ref.raw;
  } else {
    ref.origin = ProjectRef::Origin::kLocal;
    std::string key = to_lower(trimmed);
    while (ends_with(key, "/") && key.size() > 1) key.pop_back();
    if (ends_with(key, ".git")) key.resize(key.size() - 4);
    while (!key.empty() && key.front() == '/') key.erase(key.begin());
    if (key.empty()) return std::nullopt;
    ref.canonical_key = key;
    ref.location = std::string(trimmed);
  }
  ref.project_id = sanitize_id(ref.canonical_key);
  return ref;
}

std::vector<ProjectRef> load_project_list(const std::string& path,
                                          std::vector<std::string>* diags) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("project list not found: " + path);
  }
  std::vector<ProjectRef> refs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    if (auto ref = make_project_ref(entry)) {
      refs.push_back(std::move(*ref));
    } else if (diags != nullptr) {
      diags->push_back(path + ":" + std::to_string(line_no) +
                       ": unusable project entry '" + std::string(entry) +
                       "'");
    }
  }
  return refs;
}

GithubLookupClient::GithubLookupClient(int timeout_seconds)
    : timeout_seconds_(timeout_seconds) {}

std::optional<std::string> GithubLookupClient::resolve(
    std::string_view host, std::string_view owner_name) {
  if (host != "github.com") return std::nullopt;
  httplib::Client client("https://api.github.com");
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);
  client.set_follow_location(true);
  auto res = client.Get("/repos/" + std::string(owner_name));
  if (!res || res->status != 200) return std::nullopt;
  auto body = nlohmann::json::parse(res->body, nullptr, false);
  if (body.is_discarded() || !body.contains("full_name") ||
      !body["full_name"].is_string()) {
    return std::nullopt;
  }
  return to_lower(body["full_name"].get<std::string>());
}

std::vector<ProjectRef> dedup(const std::vector<ProjectRef>& refs,
                              RepoLookupClient* lookup,
                              std::vector<std::string>* diags) {
  std::vector<ProjectRef> out;
  std::unordered_set<std::string> seen;
  for (const ProjectRef& ref : refs) {
    ProjectRef resolved = ref;
    if (lookup != nullptr && ref.origin == ProjectRef::Origin::kRemote) {
      std::size_t slash = ref.canonical_key.find('/');
      std::string host = ref.canonical_key.substr(0, slash);
      std::string owner_name = ref.canonical_key.substr(slash + 1);
      if (auto canonical = lookup->resolve(host, owner_name)) {
        resolved.canonical_key = host + "/" + normalize_repo_path(*canonical);
        resolved.project_id = sanitize_id(resolved.canonical_key);
      } else if (diags != nullptr) {
        diags->push_back("lookup failed for " + ref.canonical_key +
                         "; keeping offline key");
      }
    }
    if (seen.insert(resolved.canonical_key).second) {
      out.push_back(std::move(resolved));
    }
  }
  return out;
}

std::vector<Batch> make_batches(const std::vector<ProjectRef>& refs,
                                std::size_t batch_size) {
  if (batch_size == 0) {
    throw std::invalid_argument("batch size must be at least 1");
  }
  std::vector<Batch> batches;
  for (std::size_t start = 0; start < refs.size(); start += batch_size) {
    Batch batch;
    batch.index = batches.size();
    std::size_t end = std::min(start + batch_size, refs.size());
    batch.projects.assign(refs.begin() + static_cast<std::ptrdiff_t>(start),
                          refs.begin() + static_cast<std::ptrdiff_t>(end));
    batches.push_back(std::move(batch));
  }
  return batches;
}

std::optional<std::string> materialize(const ProjectRef& ref,
                                       const std::string& workdir,
                                       std::vector<std::string>* diags) {
  if (ref.origin == ProjectRef::Origin::kLocal) {
    return ref.location;
  }
  fs::path dest = fs::path(workdir) / ref.project_id;
  std::error_code ec;
  if (fs::exists(dest, ec)) {
    return dest.string();  // already materialized
  }
  fs::create_directories(workdir, ec);
  std::string command = "git clone --depth 1 --quiet -- '" + ref.location +
                        "' '" + dest.string() + "' >/dev/null 2>&1";
  int status = std::system(command.c_str());
  if (status != 0) {
    if (diags != nullptr) {
      diags->push_back("clone failed for " + ref.canonical_key);
    }
    fs::remove_all(dest, ec);
    return std::nullopt;
  }
  return dest.string();
}

}  // namespace constat::dataset
