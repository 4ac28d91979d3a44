#pragma once

// JSON serialization and Markdown rendering of sieve and design reports.
// JSON keeps 0-based point labels like design files; Markdown is for people
// and prints points 1-based.

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "psl4/sieve.hpp"
#include "psl4/verify.hpp"

namespace psl4 {

using Json = nlohmann::ordered_json;

template <class... Ts>
std::string cat(const Ts&... xs) {
  std::ostringstream os;
  (os << ... << xs);
  return os.str();
}

Json to_json(const Conditions& c);
Json to_json(const ParamCandidate& c);
Json to_json(const FiniteCheck& c);
Json to_json(const SieveReport& r);
Json to_json(const DesignReport& r);
DesignReport design_report_from_json(const Json& j);

std::string render_markdown(const SieveReport& r);
std::string render_markdown(const DesignReport& r);

// Shifts labels for display: {0, 5, 23} -> "{1, 6, 24}".
std::string one_based(const std::vector<Point>& pts);

// "8^3" style summary of an ascending length list: 2, 4^2, 8.
std::string length_summary(const std::vector<std::size_t>& lengths);

}  // namespace psl4
