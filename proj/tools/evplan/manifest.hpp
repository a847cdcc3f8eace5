#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace evplan::cli {

// Provenance record written next to every command's outputs: resolved
// configuration, master seed, and content digests of inputs and outputs.
class RunManifest {
 public:
  RunManifest(std::string subcommand, std::uint64_t seed,
              nlohmann::ordered_json config)
      : subcommand_(std::move(subcommand)),
        seed_(seed),
        config_(std::move(config)),
        start_(std::chrono::steady_clock::now()) {}

  void add_input(const std::string& name, const std::string& content);
  void add_output(const std::string& name, const std::string& content);

  std::string to_json() const;

 private:
  std::string subcommand_;
  std::uint64_t seed_;
  nlohmann::ordered_json config_;
  std::chrono::steady_clock::time_point start_;
  std::vector<std::pair<std::string, std::string>> inputs_;
  std::vector<std::pair<std::string, std::string>> outputs_;
};

// Writes `content` to `path` and records its digest under the file's name.
void write_output(RunManifest& manifest, const std::string& path,
                  const std::string& content);

// Reads `path`, records its digest, and returns the content.
std::string read_input(RunManifest& manifest, const std::string& path);

}  // namespace evplan::cli
