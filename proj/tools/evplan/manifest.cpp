#include "manifest.hpp"

#include <filesystem>

#include "evplan/io.hpp"
#include "evplan/version.hpp"

namespace evplan::cli {

void RunManifest::add_input(const std::string& name,
                            const std::string& content) {
  inputs_.emplace_back(name, content_digest(content));
}

void RunManifest::add_output(const std::string& name,
                             const std::string& content) {
  outputs_.emplace_back(name, content_digest(content));
}

std::string RunManifest::to_json() const {
  nlohmann::ordered_json doc;
  doc["tool"] = "evplan";
  doc["version"] = kVersion;
  doc["subcommand"] = subcommand_;
  doc["seed"] = seed_;
  doc["config"] = config_;
  doc["inputs"] = nlohmann::ordered_json::object();
  for (const auto& [name, digest] : inputs_) doc["inputs"][name] = digest;
  doc["outputs"] = nlohmann::ordered_json::object();
  for (const auto& [name, digest] : outputs_) doc["outputs"][name] = digest;
  double seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start_)
                       .count();
  doc["duration_seconds"] = seconds;
  return doc.dump(2) + "\n";
}

void write_output(RunManifest& manifest, const std::string& path,
                  const std::string& content) {
  write_file(path, content);
  manifest.add_output(std::filesystem::path(path).filename().string(), content);
}

std::string read_input(RunManifest& manifest, const std::string& path) {
  std::string content = read_file(path);
  manifest.add_input(std::filesystem::path(path).filename().string(), content);
  return content;
}

}  // namespace evplan::cli
