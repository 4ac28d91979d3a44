#pragma once

// Sweeps over candidate base blocks: every orbit of length k of a list of
// subgroup classes is expanded to its block orbit and counted against the
// 4-subset orbit representatives.  Verdicts are checkpointed one file per
// candidate so an interrupted sweep resumes where it stopped.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "psl4/report.hpp"
#include "psl4/verify.hpp"

namespace psl4 {

enum class OpenCase { Psl761S4, Psl512D18 };

// Accepts "psl761-s4" and "psl512-d18".
OpenCase parse_open_case(std::string_view id);
std::string case_id(OpenCase c);

struct Candidate {
  std::size_t index = 0;            // 1-based position in the sweep
  std::uint32_t class_index = 0;    // 1-based subgroup class
  std::vector<Point> base_block;    // sorted
};

struct CandidateSet {
  GroupRef ctx;
  std::vector<SubgroupHandle> classes;
  std::size_t k = 0;
  std::vector<Candidate> candidates;
};

// Orbits of length k of each class, in class order then by least point.
CandidateSet candidates_of_length(GroupRef ctx, std::vector<SubgroupHandle> classes, std::size_t k);
CandidateSet open_case_candidates(OpenCase c);

struct CandidateVerdict {
  Candidate candidate;
  std::uint64_t stab_order = 0;        // |Stab_G(B)|
  DesignReport report;                  // from the full block orbit
  std::optional<bool> local_agrees;     // cross-check against the base-block formula
  bool resumed = false;                 // loaded from a checkpoint

  // The audit balances and the independent check, when run, agrees.
  bool definitive() const noexcept { return report.audit_ok() && local_agrees.value_or(true); }
};

struct ResolveOptions {
  int threads = 0;
  OrbitBudget budget;
  std::optional<std::filesystem::path> checkpoint_dir;
  std::optional<std::size_t> limit;  // fresh candidates to compute; resumed ones are free
  bool cross_check = true;
  std::function<void(const CandidateVerdict&, double seconds)> progress;
};

struct ResolveReport {
  std::string case_id;
  std::uint32_t q = 0;
  std::string subgroup;
  std::size_t k = 0;
  std::vector<std::vector<std::size_t>> class_orbit_lengths;
  std::size_t candidates = 0;
  std::optional<std::size_t> expected_candidates;  // count the source records, if any
  std::vector<CandidateVerdict> verdicts;

  bool complete() const noexcept { return verdicts.size() == candidates; }
  std::size_t designs() const;
  bool all_definitive() const;
};

ResolveReport resolve_candidates(const CandidateSet& set, std::string id, const ResolveOptions& opt);
ResolveReport resolve_open_case(OpenCase c, const ResolveOptions& opt);

Json to_json(const CandidateVerdict& v);
CandidateVerdict verdict_from_json(const Json& j);
Json to_json(const ResolveReport& r);
std::string render_markdown(const ResolveReport& r);

}  // namespace psl4
