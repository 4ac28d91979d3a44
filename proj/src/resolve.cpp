#include "psl4/resolve.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include "psl4/dickson.hpp"

namespace psl4 {

namespace {

std::filesystem::path checkpoint_path(const std::filesystem::path& dir, const std::string& id, std::size_t index) {
  return dir / id / cat("candidate-", index, ".json");
}

std::optional<CandidateVerdict> load_checkpoint(const std::filesystem::path& path, const Candidate& cand) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    auto v = verdict_from_json(Json::parse(in));
    if (v.candidate.index != cand.index || v.candidate.base_block != cand.base_block) return std::nullopt;
    v.resumed = true;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;  // torn or foreign file: recompute
  }
}

void save_checkpoint(const std::filesystem::path& path, const CandidateVerdict& v) {
  std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw DomainError("cannot write checkpoint " + tmp.string());
    out << to_json(v).dump(1) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

bool same_verdict(const DesignReport& a, const DesignReport& b) {
  if (a.is_4_design != b.is_4_design || a.lambda != b.lambda || a.lambda_profile.size() != b.lambda_profile.size())
    return false;
  for (std::size_t i = 0; i < a.lambda_profile.size(); ++i)
    if (a.lambda_profile[i].lambda != b.lambda_profile[i].lambda) return false;
  return true;
}

}  // namespace

OpenCase parse_open_case(std::string_view id) {
  if (id == "psl761-s4") return OpenCase::Psl761S4;
  if (id == "psl512-d18") return OpenCase::Psl512D18;
  throw DomainError(cat("unknown case '", id, "' (expected psl761-s4 or psl512-d18)"));
}

std::string case_id(OpenCase c) { return c == OpenCase::Psl761S4 ? "psl761-s4" : "psl512-d18"; }

CandidateSet candidates_of_length(GroupRef ctx, std::vector<SubgroupHandle> classes, std::size_t k) {
  CandidateSet set{ctx, std::move(classes), k, {}};
  for (std::size_t c = 0; c < set.classes.size(); ++c)
    for (auto& orbit : orbit_partition(set.classes[c]))
      if (orbit.size() == k)
        set.candidates.push_back({set.candidates.size() + 1, static_cast<std::uint32_t>(c + 1), std::move(orbit)});
  return set;
}

CandidateSet open_case_candidates(OpenCase c) {
  if (c == OpenCase::Psl761S4) {
    auto G = psl_group(761);
    return candidates_of_length(G, build_exceptional(G, Family::S4), 24);
  }
  auto G = psl_group(512);
  return candidates_of_length(G, dihedral_classes(G, 9), 18);
}

std::size_t ResolveReport::designs() const {
  return static_cast<std::size_t>(
      std::count_if(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.report.is_4_design; }));
}

bool ResolveReport::all_definitive() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const auto& v) { return v.definitive(); });
}

ResolveReport resolve_candidates(const CandidateSet& set, std::string id, const ResolveOptions& opt) {
  using clock = std::chrono::steady_clock;
  ResolveReport rep;
  rep.case_id = std::move(id);
  rep.q = set.ctx->q;
  rep.k = set.k;
  rep.candidates = set.candidates.size();
  if (!set.classes.empty()) rep.subgroup = set.classes.front().family.to_string();
  for (const auto& H : set.classes) rep.class_orbit_lengths.push_back(orbit_lengths(H));

  std::optional<FourSubsetOrbits> orbits;
  std::size_t fresh = 0;
  for (const auto& cand : set.candidates) {
    const auto start = clock::now();
    std::optional<CandidateVerdict> done;
    if (opt.checkpoint_dir) done = load_checkpoint(checkpoint_path(*opt.checkpoint_dir, rep.case_id, cand.index), cand);
    if (!done) {
      if (opt.limit && fresh >= *opt.limit) break;
      ++fresh;
      if (!orbits) orbits.emplace(set.ctx);
      CandidateVerdict v;
      v.candidate = cand;
      const auto& H = set.classes.at(cand.class_index - 1);
      {
        auto sys = block_orbit(set.ctx, cand.base_block, H, opt.budget);
        v.stab_order = sys.stab_order;
        v.report = verify_by_orbits(sys, *orbits, {opt.threads});
      }
      if (opt.cross_check) {
        auto local = verify_local(set.ctx, cand.base_block, v.report.b, *orbits);
        v.local_agrees = same_verdict(local, v.report);
      }
      if (opt.checkpoint_dir) save_checkpoint(checkpoint_path(*opt.checkpoint_dir, rep.case_id, cand.index), v);
      done = std::move(v);
    }
    if (opt.progress) opt.progress(*done, std::chrono::duration<double>(clock::now() - start).count());
    rep.verdicts.push_back(std::move(*done));
  }
  return rep;
}

ResolveReport resolve_open_case(OpenCase c, const ResolveOptions& opt) {
  auto rep = resolve_candidates(open_case_candidates(c), case_id(c), opt);
  // Candidate counts stated alongside the undecided cases in the source.
  rep.expected_candidates = c == OpenCase::Psl761S4 ? 64 : 28;
  return rep;
}

Json to_json(const CandidateVerdict& v) {
  Json j = {{"index", v.candidate.index},
            {"class", v.candidate.class_index},
            {"base_block", v.candidate.base_block},
            {"stab_order", v.stab_order},
            {"verdict", v.report.is_4_design ? "design" : "not a design"},
            {"definitive", v.definitive()}};
  j["local_agrees"] = v.local_agrees ? Json(*v.local_agrees) : Json(nullptr);
  j["report"] = to_json(v.report);
  return j;
}

CandidateVerdict verdict_from_json(const Json& j) {
  CandidateVerdict v;
  v.candidate.index = j.at("index").get<std::size_t>();
  v.candidate.class_index = j.at("class").get<std::uint32_t>();
  v.candidate.base_block = j.at("base_block").get<std::vector<Point>>();
  v.stab_order = j.at("stab_order").get<std::uint64_t>();
  if (!j.at("local_agrees").is_null()) v.local_agrees = j.at("local_agrees").get<bool>();
  v.report = design_report_from_json(j.at("report"));
  return v;
}

Json to_json(const ResolveReport& r) {
  Json j = {{"case", r.case_id}, {"q", r.q}, {"v", r.q + 1}, {"subgroup", r.subgroup}, {"k", r.k}};
  j["class_orbit_lengths"] = r.class_orbit_lengths;
  j["candidates"] = r.candidates;
  j["expected_candidates"] = r.expected_candidates ? Json(*r.expected_candidates) : Json(nullptr);
  j["processed"] = r.verdicts.size();
  j["complete"] = r.complete();
  j["designs"] = r.designs();
  j["all_definitive"] = r.all_definitive();
  auto& vs = j["verdicts"] = Json::array();
  for (const auto& v : r.verdicts) vs.push_back(to_json(v));
  return j;
}

std::string render_markdown(const ResolveReport& r) {
  std::ostringstream os;
  os << "## Resolver: " << r.case_id << "\n\n";
  os << "PSL(2," << r.q << ") on " << r.q + 1 << " points, G_B = " << r.subgroup << ", k = " << r.k << "\n\n";
  for (std::size_t c = 0; c < r.class_orbit_lengths.size(); ++c)
    os << "class " << c + 1 << " orbit lengths: " << length_summary(r.class_orbit_lengths[c]) << "\n";
  os << "\ncandidate base blocks: " << r.candidates;
  if (r.expected_candidates && *r.expected_candidates != r.candidates)
    os << " (the source states " << *r.expected_candidates << "; counted here: " << r.candidates << ")";
  os << "\nprocessed: " << r.verdicts.size() << (r.complete() ? " (complete)" : " (partial)") << "\n\n";
  os << "| # | class | b | \\|Stab(B)\\| | verdict | lambda values | audit | cross-check |\n";
  os << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& v : r.verdicts) {
    std::vector<std::uint64_t> ls;
    for (const auto& e : v.report.lambda_profile) ls.push_back(e.lambda);
    std::sort(ls.begin(), ls.end());
    ls.erase(std::unique(ls.begin(), ls.end()), ls.end());
    std::string lam;
    for (auto l : ls) lam += (lam.empty() ? "" : ",") + std::to_string(l);
    os << "| " << v.candidate.index << " | " << v.candidate.class_index << " | " << v.report.b << " | " << v.stab_order
       << " | " << (v.report.is_4_design ? "design" : "no") << " | " << lam << " | "
       << (v.report.audit_ok() ? "ok" : "FAILED") << " | "
       << (v.local_agrees ? (*v.local_agrees ? "agrees" : "DISAGREES") : "skipped") << " |\n";
  }
  os << "\noverall: " << r.designs() << " design(s) among " << r.verdicts.size() << " processed candidate(s)";
  if (!r.complete()) os << "; sweep incomplete, no overall verdict";
  os << "\n";
  return os.str();
}

}  // namespace psl4
