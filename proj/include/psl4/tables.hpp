#pragma once

// Recomputes the recorded parameter tables and classification list and
// diffs them against the fixture in data/reference_tables.json.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "psl4/resolve.hpp"

namespace psl4 {

// Reads and sanity-checks the fixture (version 1).
Json load_fixture(const std::filesystem::path& path);
// PSL4_FIXTURE if set, else the copy in the source tree.
std::filesystem::path default_fixture_path();

struct ReproOptions {
  int threads = 0;
  OrbitBudget budget;
  bool include_open = false;  // run the resolver on the undecided rows too
};

struct RowResult {
  std::string table;  // "1", "2" or "theorems"
  int case_no = 0;
  std::string subgroup;
  std::uint64_t v = 0, k = 0, lambda = 0;
  std::vector<std::vector<std::size_t>> orbits_expected, orbits_computed;
  std::optional<std::size_t> designs_expected, designs_computed;
  std::size_t candidates = 0;
  std::optional<std::string> resolver;  // case id when excluded from the default run
  std::vector<std::string> diffs;       // mismatches; empty means the row matches
  std::vector<std::string> notes;       // recorded discrepancies that are not failures

  bool match() const noexcept { return diffs.empty(); }
};

struct ReproduceReport {
  std::string table;
  std::vector<RowResult> rows;
  bool match() const;
};

ReproduceReport reproduce_table1(const Json& fixture, const ReproOptions& opt = {});
ReproduceReport reproduce_table2(const Json& fixture, const ReproOptions& opt = {});
ReproduceReport reproduce_theorems(const Json& fixture, const ReproOptions& opt = {});

Json to_json(const ReproduceReport& r);
std::string render_markdown(const ReproduceReport& r);

}  // namespace psl4
