#include "bibliorank/manifest.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <ctime>

#include <json.hpp>

#include "bibliorank/csv.hpp"
#include "bibliorank/version.hpp"

namespace bibliorank {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

std::uint64_t fnv1a(std::uint64_t h, const std::string& bytes) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

std::string hex16(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string digest_bytes(const std::string& bytes) {
  return hex16(fnv1a(kFnvOffset, bytes));
}

std::string digest_file(const fs::path& path) {
  return digest_bytes(csv::read_file(path));
}

std::string digest_directory(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir))
    if (entry.is_regular_file()) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::uint64_t h = kFnvOffset;
  for (const fs::path& file : files) {
    h = fnv1a(h, fs::relative(file, dir).generic_string());
    h = fnv1a(h, std::string(1, '\0'));
    h = fnv1a(h, csv::read_file(file));
    h = fnv1a(h, std::string(1, '\0'));
  }
  return hex16(h);
}

std::filesystem::path write_manifest(const RunManifest& manifest,
                                     const fs::path& out_dir) {
  json j;
  j["command"] = manifest.command;
  j["arguments"] = manifest.arguments;
  if (!manifest.corpus_digest.empty()) j["corpus_digest"] = manifest.corpus_digest;
  json inputs = json::array();
  for (const FileDigest& fd : manifest.inputs)
    inputs.push_back({{"path", fd.path}, {"digest", fd.digest}});
  j["inputs"] = std::move(inputs);
  json outputs = json::array();
  for (const FileDigest& fd : manifest.outputs)
    outputs.push_back({{"path", fd.path}, {"digest", fd.digest}});
  j["outputs"] = std::move(outputs);
  j["tool_version"] = manifest.tool_version.empty() ? kVersion : manifest.tool_version;
  j["timestamp"] = manifest.timestamp;

  fs::path path = out_dir / (manifest.command + ".manifest.json");
  csv::write_file_atomic(path, j.dump(2) + "\n");
  return path;
}

}  // namespace bibliorank
