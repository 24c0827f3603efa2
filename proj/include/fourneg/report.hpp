#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace fourneg {

inline constexpr const char* kVersion = "1.0.0";

struct Claim {
  std::string id;         // stable dotted identifier
  std::string title;      // short human label
  std::string verdict;    // "verified", "VIOLATED", "true", "present", a count, ...
  std::string statement;  // the property the verdict is about
  std::string witness;
  bool violation = false;
};

struct Section {
  std::string name;
  std::vector<Claim> claims;
  std::vector<std::string> lines;  // human listing
  nlohmann::ordered_json data = nlohmann::ordered_json::object();

  Claim& add(std::string id, std::string title, std::string verdict, std::string statement,
             std::string witness = "");
  // A theorem-level check: "verified", or "VIOLATED" counted as a violation.
  Claim& check(std::string id, std::string title, bool holds, std::string statement,
               std::string witness = "");
  // A computed fact, not a violation either way.
  Claim& fact(std::string id, std::string title, bool value, std::string statement,
              std::string witness = "");
  Claim& skipped(std::string id, std::string title, std::string reason);
};

std::string flag(bool b);

class Report {
 public:
  Report(std::string command, std::uint64_t digest)
      : command_(std::move(command)), digest_(digest) {}
  void set_digest(std::uint64_t digest) { digest_ = digest; }
  Section& section(std::string name);
  const std::deque<Section>& sections() const { return sections_; }
  std::size_t violations() const;
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;

 private:
  std::string command_;
  std::uint64_t digest_;
  std::deque<Section> sections_;  // stable references across section()
};

inline constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
std::uint64_t fnv1a(std::string_view data, std::uint64_t h = kFnvOffset);
std::string digest_string(std::uint64_t h);

}  // namespace fourneg
