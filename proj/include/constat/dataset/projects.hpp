// Copyright (c) 2026 The Constat Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CONSTAT_DATASET_PROJECTS_HPP
#define CONSTAT_DATASET_PROJECTS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace constat::dataset {

// One corpus member. `canonical_key` is the normalized identity used for
// deduplication: lowercase, no ".git" suffix, no trailing slash, and
// "host/owner/name" for remote URLs. `project_id` is the CSV-safe token
// derived from it ("/" becomes "__").
struct ProjectRef {
  enum class Origin { kRemote, kLocal };

  std::string raw;
  std::string canonical_key;
  Origin origin = Origin::kRemote;
  std::string location;  // clone URL for remote, directory path for local
  std::string project_id;
};

// An ordered slice of the deduplicated corpus. All batches except possibly
// the last hold exactly batch_size projects.
struct Batch {
  std::size_t index = 0;
  std::vector<ProjectRef> projects;
};

// Builds a ref from one input line: an http(s)/git URL, a scp-style
// git@host:owner/name, or a local path. Returns nullopt for lines that
// yield no usable identity.
std::optional<ProjectRef> make_project_ref(std::string_view line);

// Reads the project list: one entry per line, blank lines and '#' comments
// ignored, malformed lines diagnosed and skipped. Throws std::runtime_error
// if the file is missing.
std::vector<ProjectRef> load_project_list(const std::string& path,
                                          std::vector<std::string>* diags);

// Resolves "owner/name" to its canonical "owner/name" at the hosting
// service, following renames. Implementations: a real HTTP client and a
// test stub.
class RepoLookupClient {
 public:
  virtual ~RepoLookupClient() = default;
  virtual std::optional<std::string> resolve(std::string_view host,
                                             std::string_view owner_name) = 0;
};

// Queries the GitHub repository endpoint. Returns nullopt on any network
// or protocol failure; dedup then falls back to the offline key.
class GithubLookupClient final : public RepoLookupClient {
 public:
  explicit GithubLookupClient(int timeout_seconds = 10);
  std::optional<std::string> resolve(std::string_view host,
                                     std::string_view owner_name) override;

 private:
  int timeout_seconds_;
};

// Keeps the first ref per canonical key, preserving order. With a lookup
// client, remote keys are first replaced by their redirect-resolved
// identity so moved repositories collapse; lookup failures keep the offline
// key and emit a diagnostic, never dropping the project.
std::vector<ProjectRef> dedup(const std::vector<ProjectRef>& refs,
                              RepoLookupClient* lookup,
                              std::vector<std::string>* diags);

// Splits the corpus into consecutive batches of `batch_size`. Throws
// std::invalid_argument when batch_size is zero.
std::vector<Batch> make_batches(const std::vector<ProjectRef>& refs,
                                std::size_t batch_size);

// Ensures the project exists on disk under `workdir` and returns its root.
// Local refs are used in place; remote refs are shallow-cloned once, and an
// existing destination is reused (resume-friendly). Returns nullopt on
// clone failure.
std::optional<std::string> materialize(const ProjectRef& ref,
                                       const std::string& workdir,
                                       std::vector<std::string>* diags);

}  // namespace constat::dataset

#endif  // CONSTAT_DATASET_PROJECTS_HPP
