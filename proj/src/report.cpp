#include "blockarith/report.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <utility>

#include "blockarith/errors.hpp"

namespace blockarith {

namespace {

struct FindingsShape {
  std::string_view command;
  std::vector<std::string_view> required;
};

const std::array<FindingsShape, 8>& findings_shapes() {
  static const std::array<FindingsShape, 8> shapes = {{
      {"stats", {"n", "k", "P", "omega", "R", "Q", "factorization"}},
      {"scan", {"inequality", "records", "boundary_witnesses"}},
      {"ew", {"k", "n2max", "pairs"}},
      {"abc-check", {"triple"}},
      {"abc-enumerate", {"cmax", "quality_floor", "triples"}},
      {"lemma", {"k", "x", "gap", "predicted_leading", "ratio"}},
      {"verify", {"suite"}},
      {"lambda", {"n", "k", "m", "lambda"}},
  }};
  return shapes;
}

constexpr std::string_view kSchema = R"({
  "$schema": "http://json-schema.org/draft-07/schema#",
  "title": "blockarith run report",
  "type": "object",
  "required": ["schema_version", "tool", "version", "command", "params", "seed", "findings", "verdict"],
  "additionalProperties": false,
  "properties": {
    "schema_version": {"const": 1},
    "tool": {"const": "blockarith"},
    "version": {"type": "string"},
    "command": {"enum": ["stats", "scan", "ew", "abc-check", "abc-enumerate", "lemma", "verify", "lambda"]},
    "params": {"type": "object"},
    "seed": {"type": "integer", "minimum": 0},
    "wall_time_ms": {"type": "number", "minimum": 0},
    "findings": {"type": "object"},
    "verdict": {
      "type": "object",
      "required": ["status", "summary"],
      "additionalProperties": false,
      "properties": {"status": {"type": "string"}, "summary": {"type": "string"}}
    }
  },
  "allOf": [
    {"if": {"properties": {"command": {"const": "stats"}}},
     "then": {"properties": {"findings": {"required": ["n", "k", "P", "omega", "R", "Q", "factorization"]}}}},
    {"if": {"properties": {"command": {"const": "scan"}}},
     "then": {"properties": {"findings": {"required": ["inequality", "records", "boundary_witnesses"],
       "properties": {"records": {"type": "array", "items": {"type": "object",
         "required": ["inequality", "n", "k", "lhs", "rhs", "domain_ok"]}}}}}}},
    {"if": {"properties": {"command": {"const": "ew"}}},
     "then": {"properties": {"findings": {"required": ["k", "n2max", "pairs"],
       "properties": {"pairs": {"type": "array", "items": {"type": "object",
         "required": ["n1", "n2", "k", "witnesses"]}}}}}}},
    {"if": {"properties": {"command": {"const": "abc-check"}}},
     "then": {"properties": {"findings": {"required": ["triple"]}}}},
    {"if": {"properties": {"command": {"const": "abc-enumerate"}}},
     "then": {"properties": {"findings": {"required": ["cmax", "quality_floor", "triples"]}}}},
    {"if": {"properties": {"command": {"const": "lemma"}}},
     "then": {"properties": {"findings": {"required": ["k", "x", "gap", "predicted_leading", "ratio"]}}}},
    {"if": {"properties": {"command": {"const": "verify"}}},
     "then": {"properties": {"findings": {"required": ["suite"]}}}},
    {"if": {"properties": {"command": {"const": "lambda"}}},
     "then": {"properties": {"findings": {"required": ["n", "k", "m", "lambda"]}}}}
  ]
}
)";

std::string csv_escape(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

Json to_json(const Factorization& f) {
  Json arr = Json::array();
  for (const auto& pp : f.factors()) arr.push_back(Json::array({to_string(pp.prime), pp.exponent}));
  return arr;
}

Json to_json(const BlockStats& s) {
  Json q = Json::object();
  for (const auto& [m, v] : s.powerfree) q[std::to_string(m)] = to_string(v);
  return Json{{"n", to_string(s.n)}, {"k", s.k},           {"P", to_string(s.greatest_prime)},
              {"omega", s.omega},    {"R", to_string(s.radical)}, {"Q", q}};
}

Json to_json(const ExceptionRecord& r) {
  return Json{{"inequality", inequality_name(r.id)},
              {"n", r.n},
              {"k", r.k},
              {"lhs", r.lhs},
              {"rhs", r.rhs.str()},
              {"domain_ok", r.domain_ok}};
}

Json to_json(const BoundaryWitness& w) {
  return Json{{"n", w.n},           {"k", w.k},
              {"lhs", w.lhs},       {"rhs", w.rhs.str()},
              {"domain_ok", w.domain_ok}, {"satisfied", w.satisfied}};
}

Json to_json(const AbcTriple& t, Verdict baker, Verdict ls) {
  return Json{{"a", to_string(t.a)},
              {"b", to_string(t.b)},
              {"c", to_string(t.c)},
              {"radical", to_string(t.radical)},
              {"omega", t.omega},
              {"quality", t.quality()},
              {"degenerate", t.degenerate()},
              {"baker", verdict_name(baker)},
              {"ls", verdict_name(ls)}};
}

Json to_json(const SmallTriple& t) {
  return Json{{"a", std::to_string(t.a)},
              {"b", std::to_string(t.b)},
              {"c", std::to_string(t.c)},
              {"radical", std::to_string(t.radical)},
              {"omega", t.omega},
              {"degenerate", t.a == t.b}};
}

Json to_json(const EwPair& p) {
  Json w = Json::array();
  for (const auto& x : p.witnesses) w.push_back(Json::array({x.shift, x.radical_first, x.radical_second}));
  return Json{{"n1", p.n1}, {"n2", p.n2}, {"k", p.k}, {"witnesses", w}};
}

Json to_json(const GapResult& g) {
  return Json{{"k", g.k},
              {"x", to_string(g.x)},
              {"gap", to_string(g.gap)},
              {"predicted_leading", to_string(g.predicted_leading)},
              {"ratio", g.ratio.get_str(10)},
              {"ratio_approx", g.ratio.get_d()}};
}

Json to_json(const HansonReport& h) {
  Json j{{"rmax", h.rmax}, {"holds", h.holds}};
  j["first_failure"] = h.first_failure ? Json(*h.first_failure) : Json(nullptr);
  j["max_log_ratio"] = h.max_log_ratio;
  j["argmax_r"] = h.argmax_r;
  return j;
}

Json to_json(const KhodzaevReport& k) {
  Json j{{"n", to_string(k.n)}, {"kmax", k.kmax}};
  if (k.threshold) {
    j["threshold"] = *k.threshold;
    j["radical_at_threshold"] = to_string(k.radical_at_threshold);
    j["ratio_to_sqrt_n"] = k.ratio_to_sqrt_n;
  } else {
    j["threshold"] = nullptr;
    j["radical_at_threshold"] = nullptr;
    j["ratio_to_sqrt_n"] = nullptr;
  }
  return j;
}

Json to_json(const EwAbcChainReport& r) {
  Json j{{"n1", to_string(r.n1)},
         {"n2", to_string(r.n2)},
         {"identity_holds", r.identity_holds},
         {"hypothesis_holds", r.hypothesis_holds}};
  j["first_failing_shift"] = r.first_failing_shift ? Json(*r.first_failing_shift) : Json(nullptr);
  j["radical_n2_block"] = to_string(r.radical_n2_block);
  j["primes_divide_difference"] = r.primes_divide_difference;
  j["radical_below_difference"] = r.radical_below_difference;
  j["ls_inequality_holds"] = r.ls_inequality_holds;
  j["abc_counterexample"] = r.abc_counterexample;
  return j;
}

ExceptionRecord exception_record_from_json(const Json& j) {
  ExceptionRecord r;
  const auto id = parse_inequality(j.at("inequality").get<std::string>());
  if (!id) throw ValidationError("unknown inequality in record");
  r.id = *id;
  r.n = j.at("n").get<std::uint64_t>();
  r.k = j.at("k").get<std::uint32_t>();
  r.lhs = j.at("lhs").get<std::uint64_t>();
  const auto rhs = j.at("rhs").get<std::string>();
  const auto slash = rhs.find('/');
  if (slash == std::string::npos) {
    r.rhs = Rational::make(std::stoll(rhs), 1);
  } else {
    r.rhs = Rational::make(std::stoll(rhs.substr(0, slash)), std::stoll(rhs.substr(slash + 1)));
  }
  r.domain_ok = j.at("domain_ok").get<bool>();
  return r;
}

Json make_report(std::string_view command, Json params, std::uint64_t seed, Json findings, std::string_view status,
                 std::string summary) {
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["tool"] = kToolName;
  report["version"] = kToolVersion;
  report["command"] = command;
  report["params"] = std::move(params);
  report["seed"] = seed;
  report["findings"] = std::move(findings);
  report["verdict"] = Json{{"status", status}, {"summary", std::move(summary)}};
  return report;
}

std::vector<std::string> validate_report(const Json& report) {
  std::vector<std::string> errors;
  if (!report.is_object()) return {"report is not an object"};
  static const std::array<std::string_view, 9> allowed = {"schema_version", "tool",     "version",
                                                          "command",        "params",   "seed",
                                                          "findings",       "verdict",  "wall_time_ms"};
  for (const auto& [key, value] : report.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) errors.push_back("unexpected key " + key);
  }
  auto need = [&](std::string_view key, auto pred, std::string_view what) {
    const auto it = report.find(std::string(key));
    if (it == report.end()) {
      errors.push_back("missing " + std::string(key));
    } else if (!pred(*it)) {
      errors.push_back(std::string(key) + " must be " + std::string(what));
    }
  };
  need("schema_version", [](const Json& v) { return v.is_number_integer() && v.get<int>() == kSchemaVersion; },
       "the current schema version");
  need("tool", [](const Json& v) { return v.is_string() && v.get<std::string>() == kToolName; }, "\"blockarith\"");
  need("version", [](const Json& v) { return v.is_string(); }, "a string");
  need("params", [](const Json& v) { return v.is_object(); }, "an object");
  need("seed", [](const Json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); },
       "a nonnegative integer");
  need("findings", [](const Json& v) { return v.is_object(); }, "an object");
  need("verdict",
       [](const Json& v) {
         return v.is_object() && v.size() == 2 && v.contains("status") && v["status"].is_string() &&
                v.contains("summary") && v["summary"].is_string();
       },
       "an object with string status and summary");
  if (report.contains("wall_time_ms") && !(report["wall_time_ms"].is_number() && report["wall_time_ms"] >= 0)) {
    errors.push_back("wall_time_ms must be a nonnegative number");
  }

  const auto cmd = report.find("command");
  if (cmd == report.end() || !cmd->is_string()) {
    errors.push_back("missing command");
    return errors;
  }
  const auto name = cmd->get<std::string>();
  const auto& shapes = findings_shapes();
  const auto shape = std::find_if(shapes.begin(), shapes.end(), [&](const FindingsShape& s) { return s.command == name; });
  if (shape == shapes.end()) {
    errors.push_back("unknown command " + name);
    return errors;
  }
  if (report.contains("findings") && report["findings"].is_object()) {
    const Json& f = report["findings"];
    for (auto key : shape->required) {
      if (!f.contains(std::string(key))) errors.push_back("findings missing " + std::string(key));
    }
    if (name == "scan" && f.contains("records")) {
      if (!f["records"].is_array()) {
        errors.push_back("findings.records must be an array");
      } else {
        for (const auto& r : f["records"]) {
          for (auto key : {"inequality", "n", "k", "lhs", "rhs", "domain_ok"}) {
            if (!r.is_object() || !r.contains(key)) errors.push_back(std::string("record missing ") + key);
          }
        }
      }
    }
    if (name == "ew" && f.contains("pairs")) {
      if (!f["pairs"].is_array()) {
        errors.push_back("findings.pairs must be an array");
      } else {
        for (const auto& p : f["pairs"]) {
          for (auto key : {"n1", "n2", "k", "witnesses"}) {
            if (!p.is_object() || !p.contains(key)) errors.push_back(std::string("pair missing ") + key);
          }
        }
      }
    }
  }
  return errors;
}

std::string_view report_schema() { return kSchema; }

std::string csv_exceptions(std::span<const ExceptionRecord> records) {
  std::ostringstream out;
  out << "inequality,n,k,lhs,rhs,domain_ok\n";
  for (const auto& r : records) {
    out << inequality_name(r.id) << ',' << r.n << ',' << r.k << ',' << r.lhs << ',' << r.rhs.str() << ','
        << (r.domain_ok ? "true" : "false") << '\n';
  }
  return out.str();
}

std::string csv_ew_pairs(std::span<const EwPair> pairs) {
  std::ostringstream out;
  out << "n1,n2,k,radicals\n";
  for (const auto& p : pairs) {
    std::string rads;
    for (const auto& w : p.witnesses) {
      if (!rads.empty()) rads += ';';
      rads += std::to_string(w.radical_first);
    }
    out << p.n1 << ',' << p.n2 << ',' << p.k << ',' << csv_escape(rads) << '\n';
  }
  return out.str();
}

std::string csv_triples(std::span<const AbcTriple> triples, std::span<const Verdict> baker, std::span<const Verdict> ls) {
  std::ostringstream out;
  out << "a,b,c,radical,omega,quality,degenerate,baker,ls\n";
  for (std::size_t i = 0; i < triples.size(); ++i) {
    const auto& t = triples[i];
    out << to_string(t.a) << ',' << to_string(t.b) << ',' << to_string(t.c) << ',' << to_string(t.radical) << ','
        << t.omega << ',' << Json(t.quality()).dump() << ',' << (t.degenerate() ? "true" : "false") << ','
        << verdict_name(baker[i]) << ',' << verdict_name(ls[i]) << '\n';
  }
  return out.str();
}

}  // namespace blockarith
