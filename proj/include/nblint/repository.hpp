#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nblint/manifests.hpp"
#include "nblint/result.hpp"

namespace nblint {

namespace fs = std::filesystem;

/// A scanned project root: notebook paths (sorted, repository-relative),
/// VCS presence, and parsed dependency manifests. Immutable after
/// discovery; safe to share across workers.
struct Repository {
  std::string root;
  std::vector<std::string> notebooks;
  bool has_vcs = false;
  std::vector<DependencyFile> dependency_files;
  std::vector<std::string> warnings;  // skipped directories, thin manifests
};

struct RepoError {
  std::string message;  // RootNotFound and friends
};

struct IoError {
  std::string message;
};

inline Result<std::string, IoError> read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return IoError{"cannot read " + p.generic_string()};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace detail {

inline bool is_hidden_name(const std::string& name) {
  return !name.empty() && name.front() == '.';
}

struct ManifestSpec {
  const char* filename;
  ManifestKind kind;
};

inline constexpr ManifestSpec kManifestFiles[] = {
    {"requirements.txt", ManifestKind::RequirementsText},
    {"environment.yml", ManifestKind::EnvironmentYaml},
    {"environment.yaml", ManifestKind::EnvironmentYaml},
    {"pyproject.toml", ManifestKind::ProjectManifest},
    {"setup.py", ManifestKind::ProjectManifest},
    {"Pipfile", ManifestKind::ProjectManifest},
};

}  // namespace detail

/// Walks `root` for "*.ipynb" files, skipping hidden directories and
/// ".ipynb_checkpoints"; detects ".git" and parses recognized dependency
/// manifests at the root. Unreadable subtrees are recorded, never fatal.
inline Result<Repository, RepoError> discover_repository(const fs::path& root) {
  std::error_code ec;
  if (!fs::exists(root, ec) || ec) {
    return RepoError{"root not found: " + root.generic_string()};
  }
  if (!fs::is_directory(root, ec) || ec) {
    return RepoError{"root is not a directory: " + root.generic_string()};
  }

  Repository repo;
  repo.root = root.generic_string();
  repo.has_vcs = fs::is_directory(root / ".git", ec);

  fs::recursive_directory_iterator it(root, fs::directory_options::skip_permission_denied, ec);
  if (ec) {
    repo.warnings.push_back("cannot enumerate " + root.generic_string() + ": " + ec.message());
    it = fs::recursive_directory_iterator();
  }
  for (auto end = fs::recursive_directory_iterator(); it != end; it.increment(ec)) {
    if (ec) {
      repo.warnings.push_back("directory walk interrupted: " + ec.message());
      break;
    }
    const fs::directory_entry& entry = *it;
    std::string name = entry.path().filename().generic_string();
    if (entry.is_directory(ec)) {
      if (detail::is_hidden_name(name) || name == ".ipynb_checkpoints") {
        it.disable_recursion_pending();
      }
      continue;
    }
    if (entry.is_regular_file(ec) && entry.path().extension() == ".ipynb") {
      repo.notebooks.push_back(fs::relative(entry.path(), root, ec).generic_string());
    }
  }
  std::sort(repo.notebooks.begin(), repo.notebooks.end());

  for (const auto& spec : detail::kManifestFiles) {
    fs::path candidate = root / spec.filename;
    if (!fs::is_regular_file(candidate, ec)) continue;
    DependencyFile dep;
    dep.path = spec.filename;
    dep.kind = spec.kind;
    auto content = read_file(candidate);
    if (!content.ok()) {
      repo.warnings.push_back(content.error().message);
    } else {
      auto parsed = parse_manifest(spec.kind, content.value());
      dep.declared_packages = std::move(parsed.packages);
      if (parsed.skipped_lines > 0) {
        repo.warnings.push_back(std::string(spec.filename) + ": skipped " +
                                std::to_string(parsed.skipped_lines) + " unparseable line(s)");
      }
      if (spec.kind == ManifestKind::ProjectManifest && dep.declared_packages.empty()) {
        repo.warnings.push_back(std::string(spec.filename) +
                                ": no dependency names could be extracted");
      }
    }
    repo.dependency_files.push_back(std::move(dep));
  }
  return repo;
}

/// Union of declared packages across every manifest in the repository.
inline std::set<std::string> declared_package_union(const Repository& repo) {
  std::set<std::string> all;
  for (const auto& dep : repo.dependency_files) {
    all.insert(dep.declared_packages.begin(), dep.declared_packages.end());
  }
  return all;
}

}  // namespace nblint
