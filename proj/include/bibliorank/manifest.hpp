#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace bibliorank {

struct FileDigest {
  std::string path;    // relative to the run's reference point
  std::string digest;  // 16 hex chars (FNV-1a 64)
};

// Content digests used to chain run manifests; not cryptographic, just
// stable for identical bytes.
std::string digest_bytes(const std::string& bytes);
std::string digest_file(const std::filesystem::path& path);
// Digest over (relative path, content) of every regular file, sorted.
std::string digest_directory(const std::filesystem::path& dir);

struct RunManifest {
  std::string command;
  std::vector<std::string> arguments;
  std::string corpus_digest;  // empty when the command reads no corpus dir
  std::vector<FileDigest> inputs;
  std::vector<FileDigest> outputs;
  std::string tool_version;
  std::string timestamp;  // ISO 8601 UTC, the only non-reproducible field
};

// Writes <command>.manifest.json into out_dir.
std::filesystem::path write_manifest(const RunManifest& manifest,
                                     const std::filesystem::path& out_dir);

}  // namespace bibliorank
