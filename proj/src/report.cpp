#include "fourneg/report.hpp"

#include <cstdio>

namespace fourneg {

Claim& Section::add(std::string id, std::string title, std::string verdict, std::string statement,
                    std::string witness) {
  claims.push_back({std::move(id), std::move(title), std::move(verdict), std::move(statement),
                    std::move(witness), false});
  return claims.back();
}

Claim& Section::check(std::string id, std::string title, bool holds, std::string statement,
                      std::string witness) {
  Claim& c = add(std::move(id), std::move(title), holds ? "verified" : "VIOLATED",
                 std::move(statement), std::move(witness));
  c.violation = !holds;
  return c;
}

Claim& Section::fact(std::string id, std::string title, bool value, std::string statement,
                     std::string witness) {
  return add(std::move(id), std::move(title), flag(value), std::move(statement),
             std::move(witness));
}

Claim& Section::skipped(std::string id, std::string title, std::string reason) {
  return add(std::move(id), std::move(title), "skipped", "out of range for this input",
             std::move(reason));
}

std::string flag(bool b) { return b ? "true" : "false"; }

Section& Report::section(std::string name) {
  sections_.push_back({});
  sections_.back().name = std::move(name);
  return sections_.back();
}

std::size_t Report::violations() const {
  std::size_t n = 0;
  for (const Section& s : sections_)
    for (const Claim& c : s.claims) n += c.violation;
  return n;
}

nlohmann::ordered_json Report::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["input_digest"] = digest_string(digest_);
  j["version"] = kVersion;
  j["sections"] = nlohmann::ordered_json::array();
  for (const Section& s : sections_) {
    nlohmann::ordered_json js;
    js["name"] = s.name;
    js["claims"] = nlohmann::ordered_json::array();
    for (const Claim& c : s.claims) {
      nlohmann::ordered_json jc;
      jc["id"] = c.id;
      jc["title"] = c.title;
      jc["verdict"] = c.verdict;
      jc["statement"] = c.statement;
      if (!c.witness.empty()) jc["witness"] = c.witness;
      jc["violation"] = c.violation;
      js["claims"].push_back(std::move(jc));
    }
    js["data"] = s.data;
    j["sections"].push_back(std::move(js));
  }
  j["violations"] = violations();
  return j;
}

std::string Report::to_text() const {
  std::string out = "command: " + command_ + "\ninput digest: " + digest_string(digest_) + "\n";
  for (const Section& s : sections_) {
    out += "\n== " + s.name + " ==\n";
    for (const Claim& c : s.claims) {
      out += "  " + c.title + ": " + c.verdict + "  [" + c.id + "]";
      if (!c.witness.empty()) out += "  witness: " + c.witness;
      out += '\n';
    }
    for (const std::string& line : s.lines) out += "    " + line + '\n';
  }
  out += "\nviolations: " + std::to_string(violations()) + '\n';
  return out;
}

std::uint64_t fnv1a(std::string_view data, std::uint64_t h) {
  for (unsigned char c : data) h = (h ^ c) * 1099511628211ULL;
  return h;
}

std::string digest_string(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

}  // namespace fourneg
