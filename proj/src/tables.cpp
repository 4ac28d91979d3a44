#include "psl4/tables.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>

#include "psl4/dickson.hpp"

#ifndef PSL4_SOURCE_DIR
#define PSL4_SOURCE_DIR "."
#endif

namespace psl4 {

namespace {

using Lists = std::vector<std::vector<std::size_t>>;

std::string lists_text(Lists lists) {
  std::string s;
  for (auto& l : lists) s += (s.empty() ? "" : "; ") + length_summary(l);
  return s.empty() ? "-" : s;
}

Lists sorted_lists(Lists l) {
  for (auto& x : l) std::sort(x.begin(), x.end());
  std::sort(l.begin(), l.end());
  return l;
}

Lists distinct(Lists l) {
  l = sorted_lists(std::move(l));
  l.erase(std::unique(l.begin(), l.end()), l.end());
  return l;
}

void compare_orbits(RowResult& row, bool distinct_only) {
  const auto want = distinct_only ? distinct(row.orbits_expected) : sorted_lists(row.orbits_expected);
  const auto got = distinct_only ? distinct(row.orbits_computed) : sorted_lists(row.orbits_computed);
  if (want != got)
    row.diffs.push_back(cat("orbit lengths: recorded ", lists_text(row.orbits_expected), ", computed ",
                            lists_text(row.orbits_computed)));
  else if (distinct_only && row.orbits_expected.size() != row.orbits_computed.size())
    row.notes.push_back(cat("recorded ", row.orbits_expected.size(), " orbit list(s); there are ",
                            row.orbits_computed.size(), " classes, all with the recorded lengths"));
}

// Orbit lists, candidate sweep and design count for one row.
void evaluate(RowResult& row, GroupRef G, std::vector<SubgroupHandle> classes, const Json& rec,
              const ReproOptions& opt) {
  for (const auto& H : classes) row.orbits_computed.push_back(orbit_lengths(H));
  compare_orbits(row, rec.value("lists_distinct_only", false));
  if (rec.contains("resolver")) {
    row.resolver = rec.at("resolver").get<std::string>();
    const auto recorded = rec.at("candidates").get<std::size_t>();
    std::size_t found = 0;
    for (const auto& l : row.orbits_computed) found += std::count(l.begin(), l.end(), row.k);
    row.candidates = found;
    if (found != recorded)
      row.notes.push_back(cat("recorded ", recorded, " candidate base blocks; the orbit lists give ", found));
    if (!opt.include_open) {
      row.notes.push_back("resolver required; excluded from the default run");
      return;
    }
  }
  auto set = candidates_of_length(G, std::move(classes), row.k);
  row.candidates = set.candidates.size();
  ResolveOptions ro;
  ro.threads = opt.threads;
  ro.budget = opt.budget;
  auto rep = resolve_candidates(set, cat("table", row.table, "-case", row.case_no), ro);
  if (!rep.all_definitive()) row.diffs.push_back("a candidate failed its counting audit or cross-check");
  std::size_t designs = 0;
  for (const auto& v : rep.verdicts) {
    if (!v.report.is_4_design) continue;
    ++designs;
    if (*v.report.lambda != row.lambda)
      row.diffs.push_back(cat("candidate ", v.candidate.index, " is a 4-design with lambda ", *v.report.lambda));
  }
  row.designs_computed = designs;
  if (row.designs_expected && *row.designs_expected != designs)
    row.diffs.push_back(cat("design count: recorded ", *row.designs_expected, ", computed ", designs));
}

RowResult base_row(const std::string& table, const Json& rec) {
  RowResult row;
  row.table = table;
  row.case_no = rec.at("case").get<int>();
  row.v = rec.at("v").get<std::uint64_t>();
  row.k = rec.at("k").get<std::uint64_t>();
  row.lambda = rec.at("lambda").get<std::uint64_t>();
  row.orbits_expected = rec.at("orbits").get<Lists>();
  if (!rec.at("designs").is_null()) row.designs_expected = rec.at("designs").get<std::size_t>();
  if (row.v != rec.at("q").get<std::uint64_t>() + 1) row.diffs.push_back("fixture: v != q + 1");
  return row;
}

}  // namespace

Json load_fixture(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open fixture " + path.string());
  auto j = Json::parse(in);
  if (j.value("version", 0) != 1) throw DomainError("fixture " + path.string() + ": unsupported version");
  for (const char* key : {"table1", "table2", "theorems"})
    if (!j.contains(key) || !j.at(key).is_array()) throw DomainError(cat("fixture: missing array '", key, "'"));
  return j;
}

std::filesystem::path default_fixture_path() {
  if (const char* env = std::getenv("PSL4_FIXTURE"); env && *env) return env;
  return std::filesystem::path(PSL4_SOURCE_DIR) / "data" / "reference_tables.json";
}

bool ReproduceReport::match() const {
  return std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.match(); });
}

ReproduceReport reproduce_table1(const Json& fixture, const ReproOptions& opt) {
  ReproduceReport rep{"1", {}};
  for (const auto& rec : fixture.at("table1")) {
    auto row = base_row("1", rec);
    row.subgroup = rec.at("group").get<std::string>();
    if (rec.contains("printed_k"))
      row.notes.push_back(cat("printed as (", row.v, ",", rec.at("printed_k").get<int>(), ",", row.lambda,
                              "); the parameters and orbit lengths force k = ", row.k));
    auto G = psl_group(rec.at("q").get<std::uint32_t>());
    evaluate(row, G, classes_of_order(G, rec.at("gb").get<std::uint64_t>()), rec, opt);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

ReproduceReport reproduce_table2(const Json& fixture, const ReproOptions& opt) {
  ReproduceReport rep{"2", {}};
  for (const auto& rec : fixture.at("table2")) {
    auto row = base_row("2", rec);
    row.subgroup = rec.at("subgroup").get<std::string>();
    auto G = psl_group(rec.at("q").get<std::uint32_t>());
    evaluate(row, G, build_family(G, FamilySpec::parse(row.subgroup)), rec, opt);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

ReproduceReport reproduce_theorems(const Json& fixture, const ReproOptions& opt) {
  ReproduceReport rep{"theorems", {}};
  int n = 0;
  for (const auto& rec : fixture.at("theorems")) {
    RowResult row;
    row.table = "theorems";
    row.case_no = ++n;
    row.subgroup = rec.at("subgroup").get<std::string>();
    row.v = rec.at("v").get<std::uint64_t>();
    row.k = rec.at("k").get<std::uint64_t>();
    row.lambda = rec.at("lambda").get<std::uint64_t>();
    const auto b = rec.at("b").get<std::uint64_t>();
    auto G = psl_group(rec.at("q").get<std::uint32_t>());
    auto classes = build_family(G, FamilySpec::parse(row.subgroup));
    for (const auto& H : classes) row.orbits_computed.push_back(orbit_lengths(H));
    const auto h_order = classes.front().order;
    auto set = candidates_of_length(G, std::move(classes), row.k);
    row.candidates = set.candidates.size();
    ResolveOptions ro;
    ro.threads = opt.threads;
    ro.budget = opt.budget;
    auto res = resolve_candidates(set, "theorem", ro);

    const auto ids = design_identities(row.v, row.k, row.lambda);
    if (!ids.admissible || ids.b != b)
      row.diffs.push_back(cat("identities give b = ", ids.b, (ids.admissible ? "" : " (not admissible)"), ", recorded ", b));
    if (G->order / h_order != b) row.diffs.push_back(cat("|G|/|G_B| = ", G->order / h_order, ", recorded b = ", b));
    std::size_t found = 0;
    for (const auto& v : res.verdicts) {
      const auto& r = v.report;
      if (r.is_4_design && *r.lambda == row.lambda && r.b == b && r.flag_transitive && v.definitive()) ++found;
    }
    row.designs_computed = found;
    if (found == 0)
      row.diffs.push_back(cat("no flag-transitive 4-(", row.v, ",", row.k, ",", row.lambda, ") design with b = ", b,
                              " among ", row.candidates, " candidate(s)"));
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

Json to_json(const ReproduceReport& r) {
  Json j = {{"table", r.table}, {"match", r.match()}};
  auto& rows = j["rows"] = Json::array();
  for (const auto& row : r.rows) {
    Json x = {{"case", row.case_no}, {"subgroup", row.subgroup}, {"v", row.v}, {"k", row.k}, {"lambda", row.lambda}};
    x["orbits_recorded"] = row.orbits_expected;
    x["orbits_computed"] = row.orbits_computed;
    x["designs_recorded"] = row.designs_expected ? Json(*row.designs_expected) : Json(nullptr);
    x["designs_computed"] = row.designs_computed ? Json(*row.designs_computed) : Json(nullptr);
    x["candidates"] = row.candidates;
    x["resolver"] = row.resolver ? Json(*row.resolver) : Json(nullptr);
    x["match"] = row.match();
    x["diffs"] = row.diffs;
    x["notes"] = row.notes;
    rows.push_back(std::move(x));
  }
  return j;
}

std::string render_markdown(const ReproduceReport& r) {
  std::ostringstream os;
  auto opt_num = [](const std::optional<std::size_t>& x) { return x ? std::to_string(*x) : std::string("?"); };
  os << "## Reproduction: " << (r.table == "theorems" ? std::string("classified designs") : "table " + r.table) << "\n\n";
  if (r.table == "theorems") {
    os << "| # | G_B | design | candidates | matching designs | status |\n|---|---|---|---|---|---|\n";
    for (const auto& row : r.rows)
      os << "| " << row.case_no << " | " << row.subgroup << " | 4-(" << row.v << "," << row.k << "," << row.lambda
         << ") | " << row.candidates << " | " << opt_num(row.designs_computed) << " | "
         << (row.match() ? "match" : "MISMATCH") << " |\n";
  } else {
    os << "| case | G_B | (v,k,lambda) | recorded lengths | computed lengths | recorded designs | computed designs | "
          "status |\n|---|---|---|---|---|---|---|---|\n";
    for (const auto& row : r.rows)
      os << "| " << row.case_no << " | " << row.subgroup << " | (" << row.v << "," << row.k << "," << row.lambda
         << ") | " << lists_text(row.orbits_expected) << " | " << lists_text(row.orbits_computed) << " | "
         << opt_num(row.designs_expected) << " | "
         << (row.designs_computed ? std::to_string(*row.designs_computed) : row.resolver ? "resolver required" : "?")
         << " | " << (row.match() ? "match" : "MISMATCH") << " |\n";
  }
  bool any = false;
  for (const auto& row : r.rows)
    for (const auto& [tag, list] : {std::pair{"diff", &row.diffs}, std::pair{"note", &row.notes}})
      for (const auto& s : *list) {
        if (!any) os << "\n";
        any = true;
        os << "- case " << row.case_no << " " << tag << ": " << s << "\n";
      }
  os << "\noverall: " << (r.match() ? "match" : "MISMATCH") << "\n";
  return os.str();
}

}  // namespace psl4
