#include "psl4/report.hpp"

#include <map>

namespace psl4 {

namespace {

Json four_set(const FourSet& T) { return Json::array({T[0], T[1], T[2], T[3]}); }

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

Json to_json(const Conditions& c) {
  return {{"lambda_identity", c.lambda_identity},
          {"q_identity", c.q_identity},
          {"k_divides_shift", c.k_divides_shift},
          {"k_divides_gcd", c.k_divides_gcd}};
}

Json to_json(const ParamCandidate& c) {
  Json j = {{"sieve", c.sieve}, {"family", c.spec.to_string()},
            {"q", c.q},         {"v", c.v},
            {"k", c.k},         {"lambda", c.lambda},
            {"gb", c.gb},       {"gxb", c.gxb},
            {"n", c.n},         {"b", c.b}};
  j["i"] = c.i ? Json(*c.i) : Json(nullptr);
  j["conditions"] = to_json(c.conditions);
  j["eliminated_by"] = c.eliminated_by ? Json(*c.eliminated_by) : Json(nullptr);
  return j;
}

Json to_json(const FiniteCheck& c) {
  return {{"name", c.name}, {"bound", c.bound}, {"cases", c.cases}, {"solutions", c.solutions}};
}

Json to_json(const SieveReport& r) {
  Json j = {{"sieve", r.sieve}, {"lambda_min", r.lambda_min}};
  j["lambda_max"] = r.lambda_max ? Json(r.lambda_max) : Json(nullptr);
  j["audit"] = r.audit();
  j["survivors"] = r.survivors().size();
  auto& cands = j["candidates"] = Json::array();
  for (const auto& c : r.candidates) cands.push_back(to_json(c));
  auto& rej = j["rejected"] = Json::array();
  for (const auto& c : r.rejected) rej.push_back(to_json(c));
  auto& checks = j["finite_checks"] = Json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return j;
}

Json to_json(const DesignReport& r) {
  Json j = {{"is_4_design", r.is_4_design}, {"t", 4}, {"v", r.v}, {"k", r.k}, {"b", r.b}, {"r", r.r}};
  j["lambda"] = r.lambda ? Json(*r.lambda) : Json(nullptr);
  j["flag_transitive"] = r.flag_transitive;
  j["method"] = r.method;
  j["counting_audit"] = {{"lhs", r.audit_lhs}, {"rhs", r.audit_rhs}, {"ok", r.audit_ok()}};
  auto& prof = j["lambda_profile"] = Json::array();
  for (const auto& e : r.lambda_profile)
    prof.push_back({{"T", four_set(e.T)}, {"orbit_size", e.orbit_size}, {"lambda", e.lambda}});
  return j;
}

DesignReport design_report_from_json(const Json& j) {
  DesignReport r;
  r.is_4_design = j.at("is_4_design").get<bool>();
  r.v = j.at("v").get<std::uint64_t>();
  r.k = j.at("k").get<std::uint64_t>();
  r.b = j.at("b").get<std::uint64_t>();
  r.r = j.at("r").get<std::uint64_t>();
  if (!j.at("lambda").is_null()) r.lambda = j.at("lambda").get<std::uint64_t>();
  r.flag_transitive = j.at("flag_transitive").get<bool>();
  r.method = j.at("method").get<std::string>();
  r.audit_lhs = j.at("counting_audit").at("lhs").get<std::uint64_t>();
  r.audit_rhs = j.at("counting_audit").at("rhs").get<std::uint64_t>();
  for (const auto& e : j.at("lambda_profile")) {
    ProfileEntry p;
    const auto& T = e.at("T");
    for (std::size_t i = 0; i < 4; ++i) p.T[i] = T.at(i).get<Point>();
    p.orbit_size = e.at("orbit_size").get<std::uint64_t>();
    p.lambda = e.at("lambda").get<std::uint64_t>();
    r.lambda_profile.push_back(p);
  }
  return r;
}

std::string render_markdown(const SieveReport& r) {
  std::ostringstream os;
  os << "## Sieve: " << r.sieve << "\n\n";
  os << "lambda range: " << r.lambda_min << ".." << (r.lambda_max ? std::to_string(r.lambda_max) : "unbounded")
     << "; emitted " << r.candidates.size() << ", surviving " << r.survivors().size()
     << "; audit " << (r.audit() ? "ok" : "FAILED") << "\n\n";
  auto table = [&](const std::vector<ParamCandidate>& rows) {
    os << "| family | q | v | k | lambda | \\|G_B\\| | \\|G_xB\\| | i | b | status |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|\n";
    for (const auto& c : rows)
      os << "| " << c.spec.to_string() << " | " << c.q << " | " << c.v << " | " << c.k << " | " << c.lambda << " | "
         << c.gb << " | " << c.gxb << " | " << (c.i ? std::to_string(*c.i) : "") << " | " << c.b << " | "
         << (c.eliminated_by ? *c.eliminated_by : "survives") << " |\n";
  };
  table(r.candidates);
  if (!r.rejected.empty()) {
    os << "\n### Rejected by subgroup order or size\n\n";
    table(r.rejected);
  }
  if (!r.checks.empty()) {
    os << "\n### Finite checks\n\n| branch | bound | cases | solutions |\n|---|---|---|---|\n";
    for (const auto& c : r.checks)
      os << "| " << c.name << " | " << c.bound << " | " << c.cases << " | " << c.solutions << " |\n";
  }
  return os.str();
}

std::string render_markdown(const DesignReport& r) {
  std::ostringstream os;
  os << "structure: v=" << r.v << " k=" << r.k << " b=" << r.b << "\n";
  if (r.is_4_design)
    os << "verdict: 4-(" << r.v << "," << r.k << "," << *r.lambda << ") design, r=" << r.r << "\n";
  else
    os << "verdict: not a 4-design\n";
  os << "flag-transitive: " << yes_no(r.flag_transitive) << "\n";
  os << "method: " << r.method << "\n";
  os << "counting audit: " << r.audit_lhs << " = " << r.audit_rhs << (r.audit_ok() ? " (ok)" : " (FAILED)") << "\n";
  std::map<std::uint64_t, std::uint64_t> hist;
  for (const auto& e : r.lambda_profile) hist[e.lambda] += e.orbit_size;
  os << "lambda profile over " << r.lambda_profile.size() << " 4-subset orbits:";
  for (auto [l, n] : hist) os << " " << l << " (x" << n << ")";
  os << "\n";
  return os.str();
}

std::string one_based(const std::vector<Point>& pts) {
  std::string s = "{";
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? ", " : "") + std::to_string(pts[i] + 1);
  return s + "}";
}

std::string length_summary(const std::vector<std::size_t>& lengths) {
  std::string s;
  for (std::size_t i = 0; i < lengths.size();) {
    std::size_t j = i;
    while (j < lengths.size() && lengths[j] == lengths[i]) ++j;
    if (!s.empty()) s += ", ";
    s += std::to_string(lengths[i]);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

}  // namespace psl4
