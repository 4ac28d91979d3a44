// psl4: command-line front end.  Point labels are 1-based in Markdown
// output and 0-based in JSON and design files.
//
// Exit codes: 0 success or match, 1 clean negative, 2 usage, 3 resource.

#include <omp.h>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "psl4/dickson.hpp"
#include "psl4/iso.hpp"
#include "psl4/tables.hpp"

using namespace psl4;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kResource = 3 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::uint32_t q = 0;
  std::string case_id;
  std::string sub;
  std::optional<std::uint32_t> class_index;
  std::string orbit = "all";
  std::string family = "all";
  std::string lambda;
  std::string proj = "both";
  std::string method = "auto";
  std::string table = "all";
  int threads = 0;
  double mem_gb = 4.0;
  std::string out;
  std::string format = "md";
  std::string checkpoint;
  std::optional<std::size_t> limit;
  bool full = false;
  bool include_open = false;
  std::string fixture;
  std::vector<std::string> files;

  Json to_json() const {
    Json j = {{"command", command}, {"format", format}, {"threads", threads}, {"mem_gb", mem_gb}};
    if (q) j["q"] = q;
    if (!case_id.empty()) j["case"] = case_id;
    if (!sub.empty()) j["sub"] = sub;
    if (class_index) j["class"] = *class_index;
    if (command == "verify" || command == "export") j["orbit"] = orbit, j["method"] = method;
    if (command == "sieve") j["family"] = family, j["lambda"] = lambda, j["proj"] = proj;
    if (command == "reproduce") j["table"] = table, j["include_open"] = include_open;
    if (command == "resolve") {
      j["full"] = full;
      j["limit"] = limit ? Json(*limit) : Json(nullptr);
    }
    if (!files.empty()) j["files"] = files;
    j["deterministic"] = true;
    return j;
  }

  OrbitBudget budget() const {
    return {static_cast<std::uint64_t>(mem_gb * static_cast<double>(std::uint64_t{1} << 30))};
  }
};

void emit_text(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out);
  if (!out) throw UsageError("cannot write " + cfg.out);
  out << text;
}

void emit(const RunConfig& cfg, const Json& result, const std::string& md) {
  if (cfg.format == "json") {
    Json doc = {{"config", cfg.to_json()}, {"result", result}};
    emit_text(cfg, doc.dump(2) + "\n");
  } else if (cfg.format == "md") {
    emit_text(cfg, "<!-- config: " + cfg.to_json().dump() + " -->\n" + md);
  } else {
    throw UsageError("--format " + cfg.format + " is not available for " + cfg.command);
  }
}

std::uint64_t parse_u64(std::string_view s) {
  std::uint64_t x = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw UsageError(cat("not a number: '", s, "'"));
  return x;
}

// "5..10", "5.." (unbounded) or "7".
std::pair<std::uint64_t, std::uint64_t> parse_lambda(const std::string& s, std::uint64_t lo, std::uint64_t hi) {
  if (s.empty()) return {lo, hi};
  if (auto dots = s.find(".."); dots != std::string::npos) {
    const auto a = parse_u64(std::string_view(s).substr(0, dots));
    const auto rest = std::string_view(s).substr(dots + 2);
    const auto b = rest.empty() ? 0 : parse_u64(rest);
    if (b && b < a) throw UsageError("--lambda: empty range " + s);
    return {a, b};
  }
  const auto a = parse_u64(s);
  return {a, a};
}

std::string cycles_one_based(const Perm& g) {
  std::string s;
  std::vector<char> seen(g.degree(), 0);
  for (std::size_t x = 0; x < g.degree(); ++x) {
    if (seen[x] || g[x] == x) continue;
    s += "(";
    for (std::size_t y = x; !seen[y]; y = g[y]) {
      seen[y] = 1;
      s += (s.back() == '(' ? "" : " ") + std::to_string(y + 1);
    }
    s += ")";
  }
  return s.empty() ? "()" : s;
}

std::string moebius_text(const MoebiusMap& m) {
  return cat("z -> (", m.a().index(), " z + ", m.b().index(), ") / (", m.c().index(), " z + ", m.d().index(), ")");
}

Json moebius_json(const MoebiusMap& m) {
  return Json::array({m.a().index(), m.b().index(), m.c().index(), m.d().index()});
}

GroupRef group_for(const RunConfig& cfg) {
  if (!cfg.q) throw UsageError(cfg.command + " needs --q");
  return psl_group(cfg.q);
}

std::vector<SubgroupHandle> subgroups_for(const RunConfig& cfg, const GroupRef& G) {
  if (cfg.sub.empty()) throw UsageError(cfg.command + " needs --sub");
  auto spec = FamilySpec::parse(cfg.sub);
  if (cfg.class_index) spec.class_index = cfg.class_index;
  if (spec.class_index) return {build(G, spec)};
  return build_family(G, spec);
}

// ---------------------------------------------------------------- sieve

int cmd_sieve(const RunConfig& cfg) {
  static const std::vector<std::string> all = {"exceptional", "subfield", "torus", "affine"};
  std::vector<std::string> which = cfg.family == "all" ? all : std::vector<std::string>{cfg.family};
  SubfieldProj proj = SubfieldProj::Both;
  if (cfg.proj == "psl") proj = SubfieldProj::PSL;
  else if (cfg.proj == "pgl") proj = SubfieldProj::PGL;
  else if (cfg.proj != "both") throw UsageError("--proj must be psl, pgl or both");

  std::vector<SieveReport> reports;
  for (const auto& f : which) {
    if (f == "exceptional") {
      auto [lo, hi] = parse_lambda(cfg.lambda, 5, 0);
      reports.push_back(sieve_exceptional(lo, hi));
    } else if (f == "subfield") {
      auto [lo, hi] = parse_lambda(cfg.lambda, 5, 0);
      reports.push_back(sieve_subfield(64, 8, lo, hi, proj));
    } else if (f == "torus") {
      auto [lo, hi] = parse_lambda(cfg.lambda, 5, 10);
      if (!hi) throw UsageError("the torus sieve needs a bounded --lambda range");
      reports.push_back(sieve_torus(lo, hi));
    } else if (f == "affine") {
      auto [lo, hi] = parse_lambda(cfg.lambda, 5, 10);
      if (!hi) throw UsageError("the affine sieve needs a bounded --lambda range");
      reports.push_back(sieve_affine(lo, hi));
    } else {
      throw UsageError("--family must be exceptional, subfield, torus, affine or all");
    }
  }
  Json arr = Json::array();
  std::string md;
  bool ok = true;
  for (const auto& r : reports) {
    arr.push_back(to_json(r));
    md += render_markdown(r) + "\n";
    ok = ok && r.audit();
  }
  emit(cfg, reports.size() == 1 ? arr[0] : arr, md);
  return ok ? kOk : kNegative;
}

// ---------------------------------------------------------------- group

int cmd_group(const RunConfig& cfg) {
  auto G = group_for(cfg);
  const std::uint64_t formula = std::uint64_t{G->q} * (std::uint64_t{G->q} * G->q - 1) / G->n;
  Json j = {{"q", G->q}, {"p", G->p}, {"f", G->f}, {"n", G->n}, {"v", G->v}, {"order", G->order},
            {"order_formula", formula}};
  auto& gens = j["generators"] = Json::array();
  std::ostringstream md;
  md << "## PSL(2," << G->q << ")\n\npoints: " << G->v << " (1.." << G->q << " are field elements 0.." << G->q - 1
     << ", " << G->v << " is infinity)\nn = " << G->n << "\norder: " << G->order << " (q(q^2-1)/n = " << formula
     << (G->order == formula ? ", equal" : ", DIFFERENT") << ")\n\ngenerators:\n";
  for (std::size_t i = 0; i < G->generator_maps.size(); ++i) {
    gens.push_back({{"moebius", moebius_json(G->generator_maps[i])}, {"images", G->generators[i].images()}});
    md << "- " << moebius_text(G->generator_maps[i]);
    if (G->v <= 64) md << "  " << cycles_one_based(G->generators[i]);
    md << "\n";
  }
  emit(cfg, j, md.str());
  return G->order == formula ? kOk : kNegative;
}

// ---------------------------------------------------------------- subgroup / orbits

int cmd_subgroup(const RunConfig& cfg, bool orbits_only) {
  auto G = group_for(cfg);
  auto classes = subgroups_for(cfg, G);
  Json arr = Json::array();
  std::ostringstream md;
  md << "## " << cfg.sub << " in PSL(2," << G->q << "): " << classes.size() << " class(es)\n\n";
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& H = classes[c];
    const auto parts = orbit_partition(H);
    std::vector<std::size_t> lens;
    for (const auto& o : parts) lens.push_back(o.size());
    std::sort(lens.begin(), lens.end());
    Json j = {{"family", H.family.to_string()}, {"order", H.order}, {"orbit_lengths", lens}, {"orbits", parts}};
    md << "### " << H.family.to_string() << "\n\norder " << H.order << "; orbit lengths " << length_summary(lens)
       << "\n";
    if (!orbits_only) {
      auto& gens = j["generators"] = Json::array();
      md << "\ngenerators:\n";
      for (const auto& g : H.generators) {
        auto m = perm_to_moebius(G->field, g);
        gens.push_back({{"moebius", m ? moebius_json(*m) : Json(nullptr)}, {"images", g.images()}});
        md << "- " << (m ? moebius_text(*m) : std::string("?"));
        if (G->v <= 128) md << "  " << cycles_one_based(g);
        md << "\n";
      }
      Json prof = Json::array();
      md << "\nelement orders:";
      for (auto [o, n] : element_order_profile(H)) {
        prof.push_back({o, n});
        md << " " << o << " (x" << n << ")";
      }
      j["element_orders"] = prof;
      md << "\n";
    } else {
      md << "\n";
      for (std::size_t i = 0; i < parts.size(); ++i)
        md << "- orbit " << i + 1 << " (length " << parts[i].size() << "): " << one_based(parts[i]) << "\n";
    }
    md << "\n";
    arr.push_back(std::move(j));
  }
  emit(cfg, arr, md.str());
  return kOk;
}

// ---------------------------------------------------------------- verify / export

struct Verified {
  std::uint32_t class_index;
  std::size_t orbit_index;
  std::vector<Point> base_block;
  BlockSystem sys;
  DesignReport report;
};

DesignReport run_method(const RunConfig& cfg, const BlockSystem& sys, const FourSubsetOrbits& orbits) {
  const DirectLimits lim;
  const bool direct_fits = sys.b() * binomial(sys.k(), 4) <= lim.max_incidences &&
                           binomial(sys.v(), 4) <= lim.max_subsets;
  std::string m = cfg.method;
  if (m == "auto") m = direct_fits ? "direct" : "orbit-reps";
  if (m == "direct") return verify_direct(sys, orbits, lim);
  if (m == "orbit-reps") return verify_by_orbits(sys, orbits, {cfg.threads});
  if (m == "local") {
    auto r = verify_local(sys.ctx, sys.base_block, sys.b(), orbits);
    r.flag_transitive = flag_transitive_check(sys);
    return r;
  }
  throw UsageError("--method must be auto, direct, orbit-reps or local");
}

std::vector<Verified> verify_selected(const RunConfig& cfg, const GroupRef& G) {
  auto classes = subgroups_for(cfg, G);
  std::optional<std::size_t> pick;
  if (cfg.orbit != "all") pick = parse_u64(cfg.orbit);
  FourSubsetOrbits orbits(G);
  std::vector<Verified> out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto parts = orbit_partition(classes[c]);
    if (pick && (*pick == 0 || *pick > parts.size()))
      throw UsageError(cat("--orbit ", *pick, " out of range: class ", c + 1, " has ", parts.size(), " orbits"));
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (pick ? i + 1 != *pick : (parts[i].size() < 5 || parts[i].size() >= G->v)) continue;
      auto sys = block_orbit(G, parts[i], classes[c], cfg.budget());
      auto rep = run_method(cfg, sys, orbits);
      out.push_back({static_cast<std::uint32_t>(c + 1), i + 1, parts[i], std::move(sys), std::move(rep)});
    }
  }
  return out;
}

int cmd_verify(const RunConfig& cfg) {
  auto G = group_for(cfg);
  RunConfig report_cfg = cfg;
  if (cfg.format == "dsn") {
    if (cfg.orbit == "all") throw UsageError("--format dsn needs a single --orbit");
    report_cfg.format = "md";
    report_cfg.out.clear();
  }
  auto results = verify_selected(cfg, G);
  if (cfg.format == "dsn" && results.size() > 1) throw UsageError("--format dsn needs a single class; pass --class");
  std::size_t designs = 0;
  Json arr = Json::array();
  std::ostringstream md;
  md << "## Verification in PSL(2," << G->q << ") of " << cfg.sub << "\n\n";
  for (const auto& r : results) {
    designs += r.report.is_4_design;
    Json j = {{"class", r.class_index}, {"orbit", r.orbit_index}, {"base_block", r.base_block},
              {"stab_order", r.sys.stab_order}, {"report", to_json(r.report)}};
    arr.push_back(std::move(j));
    md << "### class " << r.class_index << ", orbit " << r.orbit_index << ": " << one_based(r.base_block) << "\n\n"
       << "|Stab_G(B)| = " << r.sys.stab_order << "\n" << render_markdown(r.report) << "\n";
  }
  md << "designs: " << designs << " of " << results.size() << " candidate(s)\n";
  if (cfg.format == "dsn") {
    for (const auto& r : results)
      if (r.report.is_4_design) {
        auto d = DesignFile::from_blocks(r.sys.blocks, static_cast<std::uint32_t>(r.sys.k()), r.report.lambda);
        std::ostringstream os;
        d.write(os);
        emit_text(cfg, os.str());
      }
    std::cerr << md.str();
  } else {
    emit(report_cfg, arr, md.str());
  }
  return designs ? kOk : kNegative;
}

int cmd_export(const RunConfig& cfg) {
  if (cfg.orbit == "all") throw UsageError("export needs a single --orbit");
  auto G = group_for(cfg);
  auto results = verify_selected(cfg, G);
  if (results.size() != 1) throw UsageError("export: select one class with --class");
  const auto& r = results.front();
  auto d = DesignFile::from_blocks(r.sys.blocks, static_cast<std::uint32_t>(r.sys.k()), r.report.lambda);
  std::ostringstream os;
  d.write(os);
  emit_text(cfg, os.str());
  return kOk;
}

// ---------------------------------------------------------------- reproduce

int cmd_reproduce(const RunConfig& cfg) {
  const auto fixture = load_fixture(cfg.fixture.empty() ? default_fixture_path() : std::filesystem::path(cfg.fixture));
  ReproOptions opt{cfg.threads, cfg.budget(), cfg.include_open};
  std::vector<ReproduceReport> reps;
  if (cfg.table == "1" || cfg.table == "all") reps.push_back(reproduce_table1(fixture, opt));
  if (cfg.table == "2" || cfg.table == "all") reps.push_back(reproduce_table2(fixture, opt));
  if (cfg.table == "theorems" || cfg.table == "all") reps.push_back(reproduce_theorems(fixture, opt));
  if (reps.empty()) throw UsageError("--table must be 1, 2, theorems or all");
  Json arr = Json::array();
  std::string md;
  bool ok = true;
  for (const auto& r : reps) {
    arr.push_back(to_json(r));
    md += render_markdown(r) + "\n";
    ok = ok && r.match();
  }
  emit(cfg, reps.size() == 1 ? arr[0] : arr, md);
  return ok ? kOk : kNegative;
}

// ---------------------------------------------------------------- resolve

int cmd_resolve(const RunConfig& cfg) {
  if (cfg.case_id.empty()) throw UsageError("resolve needs --case psl761-s4 or --case psl512-d18");
  const auto c = parse_open_case(cfg.case_id);
  ResolveOptions opt;
  opt.threads = cfg.threads;
  opt.budget = cfg.budget();
  if (!cfg.checkpoint.empty()) opt.checkpoint_dir = cfg.checkpoint;
  opt.limit = cfg.limit;
  // The larger sweep runs one candidate unless asked for all of them.
  if (!opt.limit && !cfg.full && c == OpenCase::Psl761S4) opt.limit = 1;
  opt.progress = [](const CandidateVerdict& v, double secs) {
    std::cerr << "candidate " << v.candidate.index << ": " << (v.report.is_4_design ? "design" : "no design")
              << ", b = " << v.report.b << ", audit " << (v.report.audit_ok() ? "ok" : "FAILED")
              << (v.resumed ? " (checkpoint)" : "") << ", " << secs << " s\n";
  };
  auto rep = resolve_open_case(c, opt);
  emit(cfg, to_json(rep), render_markdown(rep));
  return rep.all_definitive() && !rep.verdicts.empty() ? kOk : kNegative;
}

// ---------------------------------------------------------------- iso

int cmd_iso(const RunConfig& cfg) {
  if (cfg.files.size() != 2) throw UsageError("iso needs two design files");
  const auto A = DesignFile::read(cfg.files[0]);
  const auto B = DesignFile::read(cfg.files[1]);
  const auto res = iso_test(A, B);
  Json j = {{"isomorphic", res.isomorphic}, {"nodes", res.nodes}};
  j["map"] = res.isomorphic ? Json(res.map) : Json(nullptr);
  std::ostringstream md;
  md << "## Isomorphism of " << cfg.files[0] << " and " << cfg.files[1] << "\n\n";
  if (res.isomorphic) {
    md << "isomorphic (bijection verified on every block):\n\n";
    for (std::size_t x = 0; x < res.map.size(); ++x) md << (x ? " " : "") << x + 1 << "->" << res.map[x] + 1;
    md << "\n";
  } else {
    md << "not isomorphic (exhaustive search, " << res.nodes << " nodes)\n";
  }
  emit(cfg, j, md.str());
  return res.isomorphic ? kOk : kNegative;
}

double default_mem_gb() {
  if (const char* env = std::getenv("PSL4_MEM_GB"); env && *env) {
    char* end = nullptr;
    const double x = std::strtod(env, &end);
    if (end && *end == '\0' && x > 0) return x;
    std::cerr << "ignoring PSL4_MEM_GB='" << env << "'\n";
  }
  return 4.0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flag-transitive 4-designs admitting PSL(2,q): sieves, verification and resolution"};
  app.require_subcommand(1);
  RunConfig cfg;
  cfg.mem_gb = default_mem_gb();

  auto common = [&](CLI::App* sub) {
    sub->add_option("--threads", cfg.threads, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--mem-gb", cfg.mem_gb, "memory budget in GiB (default PSL4_MEM_GB or 4)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--out", cfg.out, "output file (default stdout)");
    sub->add_option("--format", cfg.format, "json, md or dsn")->check(CLI::IsMember({"json", "md", "dsn"}));
  };
  auto group_opts = [&](CLI::App* sub, bool with_sub) {
    sub->add_option("--q", cfg.q, "field order")->required();
    if (with_sub) {
      sub->add_option("--sub", cfg.sub, "subgroup, e.g. \"D(8)\", \"ExC(13,6)\", S4, \"PSL(2)\"")->required();
      sub->add_option("--class", cfg.class_index, "1-based conjugacy class (default: all)")
          ->check(CLI::PositiveNumber);
    }
  };

  auto* sieve = app.add_subcommand("sieve", "parameter sieves");
  sieve->add_option("--family", cfg.family, "exceptional, subfield, torus, affine or all");
  sieve->add_option("--lambda", cfg.lambda, "lambda range, e.g. 5..10 or 5..");
  sieve->add_option("--proj", cfg.proj, "subfield sieve projectivity: psl, pgl or both");
  common(sieve);

  auto* group = app.add_subcommand("group", "construct PSL(2,q)");
  group_opts(group, false);
  common(group);

  auto* subgroup = app.add_subcommand("subgroup", "subgroup classes, generators and element orders");
  group_opts(subgroup, true);
  common(subgroup);

  auto* orbits = app.add_subcommand("orbits", "orbits of a subgroup on the projective line");
  group_opts(orbits, true);
  common(orbits);

  auto* verify = app.add_subcommand("verify", "build block orbits and test the 4-design property");
  group_opts(verify, true);
  verify->add_option("--orbit", cfg.orbit, "1-based orbit index or all");
  verify->add_option("--method", cfg.method, "auto, direct, orbit-reps or local");
  common(verify);

  auto* exp = app.add_subcommand("export", "write the block orbit of one base block as a design file");
  group_opts(exp, true);
  exp->add_option("--orbit", cfg.orbit, "1-based orbit index")->required();
  exp->add_option("--method", cfg.method, "verification method used to fill in lambda");
  common(exp);

  auto* repro = app.add_subcommand("reproduce", "recompute the recorded tables and diff them");
  repro->add_option("--table", cfg.table, "1, 2, theorems or all");
  repro->add_flag("--include-open", cfg.include_open, "also run the resolver on the undecided rows");
  repro->add_option("--fixture", cfg.fixture, "fixture file (default data/reference_tables.json)");
  common(repro);

  auto* resolve = app.add_subcommand("resolve", "decide the open cases candidate by candidate");
  resolve->add_option("--case", cfg.case_id, "psl761-s4 or psl512-d18")->required();
  resolve->add_option("--checkpoint", cfg.checkpoint, "directory for per-candidate checkpoints");
  resolve->add_option("--limit", cfg.limit, "fresh candidates to compute");
  resolve->add_flag("--full", cfg.full, "sweep every candidate (psl761-s4 defaults to one)");
  common(resolve);

  auto* iso = app.add_subcommand("iso", "isomorphism test of two design files");
  iso->add_option("files", cfg.files, "two design files")->required()->expected(2);
  common(iso);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
  try {
    if (cfg.command == "sieve") return cmd_sieve(cfg);
    if (cfg.command == "group") return cmd_group(cfg);
    if (cfg.command == "subgroup") return cmd_subgroup(cfg, false);
    if (cfg.command == "orbits") return cmd_subgroup(cfg, true);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "export") return cmd_export(cfg);
    if (cfg.command == "reproduce") return cmd_reproduce(cfg);
    if (cfg.command == "resolve") return cmd_resolve(cfg);
    if (cfg.command == "iso") return cmd_iso(cfg);
  } catch (const FamilyAbsent& e) {
    std::cerr << "no such subgroup: " << e.what() << "\n";
    return kNegative;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << " (partial: " << e.partial() << ")\n";
    return kResource;
  } catch (const UnsupportedError& e) {
    std::cerr << "unsupported size: " << e.what() << "\n";
    return kResource;
  } catch (const std::bad_alloc&) {
    std::cerr << "out of memory\n";
    return kResource;
  } catch (const Json::exception& e) {
    std::cerr << "invalid JSON: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
