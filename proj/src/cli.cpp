#include "blockarith/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "blockarith/abc.hpp"
#include "blockarith/block_stats.hpp"
#include "blockarith/errors.hpp"
#include "blockarith/ew.hpp"
#include "blockarith/primes.hpp"
#include "blockarith/report.hpp"
#include "blockarith/stirling.hpp"
#include "blockarith/verifiers.hpp"

namespace blockarith {

namespace {

constexpr int kCheckpointVersion = 1;

struct Outcome {
  Json report;
  int code = kExitOk;
  std::optional<std::string> csv;
};

BigInt parse_big_arg(const std::string& text, const char* name) {
  auto v = parse_bigint(text);
  if (!v) throw ValidationError(std::string("--") + name + " is not an integer: " + text);
  return *v;
}

void write_atomic(const std::string& path, const std::string& data) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot write " + tmp);
    f << data;
    if (!f.flush()) throw ValidationError("cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

double log_of(const BigInt& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp) * std::log(2.0);
}

std::string records_summary(std::size_t n, std::string_view what) {
  return std::to_string(n) + " " + std::string(what) + (n == 1 ? "" : "s");
}

// stats ---------------------------------------------------------------------

struct StatsArgs {
  std::string n;
  std::uint32_t k = 0;
  std::vector<unsigned> m;
};

Outcome do_stats(const StatsArgs& a, const FactorOptions& fo) {
  const BigInt n = parse_big_arg(a.n, "n");
  if (n < 1) throw DomainError("stats needs n >= 1");
  std::vector<unsigned> moduli = a.m;
  std::sort(moduli.begin(), moduli.end());
  moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
  const BlockStats s = block_stats(n, a.k, moduli, fo);
  Json findings = to_json(s);
  findings["factorization"] = to_json(block_factorization(n, a.k, fo));
  // Q_m(n,k) / n^(k - 1 - 1/(m-1)), reported without pass/fail
  Json ratios = Json::object();
  for (unsigned m : moduli) {
    const double e = static_cast<double>(a.k) - 1.0 - 1.0 / (m - 1.0);
    ratios[std::to_string(m)] = std::exp(log_of(s.powerfree.at(m)) - e * log_of(n));
  }
  findings["q_ratio"] = ratios;
  Json params{{"n", a.n}, {"k", a.k}, {"m", moduli}};
  return {make_report("stats", params, fo.seed, findings, "ok", "block statistics computed"), kExitOk, {}};
}

// scan ----------------------------------------------------------------------

struct ScanArgs {
  std::string ineq;
  std::uint32_t kmin = 3;
  std::uint32_t kmax = 0;
  std::uint64_t nmin = 1;
  std::uint64_t nmax = 0;
  std::string checkpoint;
  std::uint32_t checkpoint_every = 1;
  std::uint32_t band_size = 16;
};

Json scan_identity(const ScanArgs& a) {
  return Json{{"ineq", a.ineq}, {"kmin", a.kmin}, {"kmax", a.kmax}, {"nmin", a.nmin}, {"nmax", a.nmax}};
}

Json checkpoint_json(const ScanArgs& a, std::uint32_t completed_k, const std::vector<ExceptionRecord>& records) {
  Json recs = Json::array();
  for (const auto& r : records) recs.push_back(to_json(r));
  return Json{{"checkpoint_version", kCheckpointVersion},
              {"params", scan_identity(a)},
              {"completed_k", completed_k},
              {"records", recs}};
}

Outcome do_scan(const ScanArgs& a, unsigned workers, const FactorOptions& fo) {
  const auto id = parse_inequality(a.ineq);
  if (!id) throw ValidationError("unknown inequality " + a.ineq);
  ScanSpec spec;
  spec.id = *id;
  spec.kmin = a.kmin;
  spec.kmax = a.kmax;
  spec.nmin = a.nmin;
  spec.nmax = a.nmax;
  spec.workers = workers;
  spec.band_size = std::max<std::uint32_t>(1, a.band_size);

  std::vector<ExceptionRecord> records;
  if (!a.checkpoint.empty() && std::filesystem::exists(a.checkpoint)) {
    std::ifstream f(a.checkpoint);
    Json cp;
    try {
      cp = Json::parse(f);
    } catch (const Json::exception& e) {
      throw ValidationError("unreadable checkpoint " + a.checkpoint + ": " + e.what());
    }
    if (cp.value("checkpoint_version", 0) != kCheckpointVersion || cp.value("params", Json()) != scan_identity(a)) {
      throw ValidationError("checkpoint " + a.checkpoint + " was written for different parameters");
    }
    spec.resume_after_k = cp.at("completed_k").get<std::uint32_t>();
    for (const auto& r : cp.at("records")) records.push_back(exception_record_from_json(r));
  }

  std::uint32_t bands = 0;
  if (!a.checkpoint.empty()) {
    spec.on_band = [&](std::uint32_t last_k, const std::vector<ExceptionRecord>& band) {
      records.insert(records.end(), band.begin(), band.end());
      if (++bands % std::max<std::uint32_t>(1, a.checkpoint_every) == 0 || last_k == spec.kmax) {
        write_atomic(a.checkpoint, checkpoint_json(a, last_k, records).dump(1) + "\n");
      }
    };
    scan(spec);
  } else {
    records = scan(spec);
  }
  std::sort(records.begin(), records.end(), [](const ExceptionRecord& x, const ExceptionRecord& y) {
    return x.k != y.k ? x.k < y.k : x.n < y.n;
  });

  Json recs = Json::array();
  for (const auto& r : records) recs.push_back(to_json(r));
  Json wit = Json::array();
  for (const auto& w : boundary_witnesses(spec, fo)) wit.push_back(to_json(w));
  Json findings{{"inequality", a.ineq}, {"count", records.size()}, {"records", recs}, {"boundary_witnesses", wit}};
  Json params = scan_identity(a);
  params["workers"] = workers;
  const bool clean = records.empty();
  return {make_report("scan", params, fo.seed, findings, clean ? "holds" : "exceptions",
                      clean ? "no exceptions in range" : records_summary(records.size(), "exception")),
          kExitOk, csv_exceptions(records)};
}

// ew ------------------------------------------------------------------------

struct EwArgs {
  std::uint32_t k = 0;
  std::uint64_t max = 0;
  unsigned families = 0;
};

Outcome do_ew(const EwArgs& a, unsigned workers, const FactorOptions& fo) {
  const auto pairs = find_ew_pairs(a.k, a.max, workers);
  Json arr = Json::array();
  for (const auto& p : pairs) arr.push_back(to_json(p));
  Json findings{{"k", a.k}, {"n2max", a.max}, {"count", pairs.size()}, {"pairs", arr}};
  bool counterexample = false;
  if (a.k >= 3 && !pairs.empty()) {
    Json chains = Json::array();
    for (const auto& p : pairs) {
      const EwAbcChainReport r = ew_abc_chain(big(p.n1), big(p.n2), fo);
      counterexample = counterexample || r.abc_counterexample;
      chains.push_back(to_json(r));
    }
    findings["consequences"] = chains;
  }
  Json params{{"k", a.k}, {"max", a.max}, {"workers", workers}};
  bool families_ok = true;
  if (a.families > 0) {
    Json fam = Json::array();
    for (unsigned h = 2; h <= a.families; ++h) {
      EwPair p = ew_family(h, fo);
      const bool ok = std::all_of(p.witnesses.begin(), p.witnesses.end(),
                                  [](const EwWitness& w) { return w.radical_first == w.radical_second; });
      families_ok = families_ok && ok;
      Json j = to_json(p);
      j["h"] = h;
      j["verified"] = ok;
      fam.push_back(j);
    }
    findings["families"] = fam;
    params["families"] = a.families;
  }
  std::string summary = pairs.empty() ? "no pairs in range" : records_summary(pairs.size(), "pair") + " found";
  if (a.families > 0) summary += families_ok ? "; family verified" : "; family check failed";
  std::string status = pairs.empty() ? "empty" : "found";
  if (counterexample) {
    status = "abc-counterexample";
    summary = "pair contradicts the explicit abc conjecture; " + summary;
  }
  return {make_report("ew", params, fo.seed, findings, status, summary), kExitOk,
          csv_ew_pairs(pairs)};
}

// abc -----------------------------------------------------------------------

struct AbcCheckArgs {
  std::string a, b, c;
  unsigned max_bits = 4096;
  bool no_prefilter = false;
};

Outcome do_abc_check(const AbcCheckArgs& x, const FactorOptions& fo) {
  const AbcTriple t = make_triple(parse_big_arg(x.a, "a"), parse_big_arg(x.b, "b"), parse_big_arg(x.c, "c"), fo);
  if (x.max_bits < 2) throw ValidationError("--max-bits must be at least 2");
  PrecisionPolicy policy;
  policy.start_bits = std::min(policy.start_bits, x.max_bits);
  policy.max_bits = x.max_bits;
  policy.double_prefilter = !x.no_prefilter;
  const Verdict baker = check_baker(t, policy);
  const Verdict ls = check_ls(t);
  Json findings{{"triple", to_json(t, baker, ls)}, {"logarithm", "natural"}};
  Json params{{"a", x.a}, {"b", x.b}, {"c", x.c}, {"max_bits", policy.max_bits}, {"prefilter", !x.no_prefilter}};
  const std::string summary =
      "baker " + std::string(verdict_name(baker)) + ", ls " + std::string(verdict_name(ls));
  const std::string status = baker == Verdict::kUndecided ? "undecided"
                             : (baker == Verdict::kFails || ls == Verdict::kFails) ? "violations"
                                                                                   : "holds";
  return {make_report("abc-check", params, fo.seed, findings, status, summary),
          baker == Verdict::kUndecided ? kExitUndecided : kExitOk,
          {}};
}

struct AbcEnumArgs {
  std::uint64_t cmax = 0;
  std::string quality = "1";
  bool audit = false;
};

Json small_list(const std::vector<SmallTriple>& v) {
  Json arr = Json::array();
  for (const auto& t : v) arr.push_back(to_json(t));
  return arr;
}

Outcome do_abc_enumerate(const AbcEnumArgs& x, unsigned workers, const FactorOptions& fo) {
  const auto floor = parse_rational(x.quality);
  if (!floor || sgn(*floor) < 0) throw ValidationError("--quality must be a nonnegative rational: " + x.quality);
  const auto triples = enumerate_triples(x.cmax, *floor, workers);
  std::vector<Verdict> baker, ls;
  Json arr = Json::array();
  bool undecided = false;
  for (const auto& t : triples) {
    baker.push_back(check_baker(t));
    ls.push_back(check_ls(t));
    undecided = undecided || baker.back() == Verdict::kUndecided;
    arr.push_back(to_json(t, baker.back(), ls.back()));
  }
  Json findings{{"cmax", x.cmax},
                {"quality_floor", floor->get_str(10)},
                {"logarithm", "natural"},
                {"count", triples.size()},
                {"triples", arr}};
  Json params{{"cmax", x.cmax}, {"quality", x.quality}, {"audit", x.audit}, {"workers", workers}};
  std::string summary = records_summary(triples.size(), "triple") + " above the quality floor";
  if (x.audit) {
    const AbcAudit audit = audit_triples(x.cmax, {}, workers);
    findings["audit"] = Json{{"triples", audit.triples},
                             {"ls_failures", small_list(audit.ls_failures)},
                             {"baker_failures", small_list(audit.baker_failures)},
                             {"baker_undecided", small_list(audit.baker_undecided)}};
    undecided = undecided || !audit.baker_undecided.empty();
    summary += "; audit: " + std::to_string(audit.ls_failures.size()) + " ls, " +
               std::to_string(audit.baker_failures.size()) + " baker failures, " +
               std::to_string(audit.baker_undecided.size()) + " undecided";
  }
  return {make_report("abc-enumerate", params, fo.seed, findings, undecided ? "undecided" : "ok", summary),
          undecided ? kExitUndecided : kExitOk, csv_triples(triples, baker, ls)};
}

// lemma ---------------------------------------------------------------------

struct LemmaArgs {
  std::uint32_t k = 0;
  std::string x;
  std::uint32_t cap = kLemmaDefaultCap;
};

Outcome do_lemma(const LemmaArgs& a, const FactorOptions& fo) {
  const BigInt x = parse_big_arg(a.x, "x");
  const GapResult g = lemma_product_gap(x, a.k, a.cap);
  Json findings = to_json(g);
  std::string summary = "gap computed";
  if (a.k == 2 || a.k == 3) {
    const BigInt closed = a.k == 2 ? BigInt(-1) : BigInt(-2 * x - 3);
    findings["closed_form"] = to_string(closed);
    findings["matches_closed_form"] = g.gap == closed;
    summary = g.gap == closed ? "gap equals the closed form" : "gap differs from the closed form";
  }
  Json params{{"k", a.k}, {"x", a.x}, {"cap", a.cap}};
  return {make_report("lemma", params, fo.seed, findings, "ok", summary), kExitOk, {}};
}

// verify --------------------------------------------------------------------

struct VerifyArgs {
  std::string suite;
  std::uint64_t limit = 0;
  std::string n;
};

Outcome do_verify(const VerifyArgs& a, const FactorOptions& fo) {
  Json findings{{"suite", a.suite}, {"limit", a.limit}};
  Json params{{"suite", a.suite}, {"limit", a.limit}};
  std::string status = "holds";
  std::string summary;
  if (a.suite == "erdos-gcd") {
    if (a.limit < 2 || a.limit > 100000) throw DomainError("erdos-gcd needs 2 <= limit <= 100000");
    const PrimeTable table(a.limit);
    Json failures = Json::array();
    std::uint64_t equal = 0;
    for (std::uint32_t k = 2; k <= a.limit; ++k) {
      const auto [g, fact] = erdos_gcd_bound(k);
      const BigInt scaled = g * (table.is_prime(k) ? BigInt(k) : BigInt(1));
      if (g > fact || scaled != fact) failures.push_back(k);
      if (g == fact) ++equal;
    }
    findings["checked"] = a.limit - 1;
    findings["failures"] = failures;
    findings["equality_cases"] = equal;
    if (!failures.empty()) status = "fails";
    summary = failures.empty() ? "g_k <= k! with the prime factor identity for every k" : "bound fails";
  } else if (a.suite == "hanson") {
    const HansonReport h = hanson_check(a.limit);
    findings["result"] = to_json(h);
    if (!h.holds) status = "fails";
    summary = h.holds ? "primorial(r) < 3^r for every r in range" : "bound fails";
  } else if (a.suite == "stirling") {
    if (a.limit > kStirlingMax) throw ResourceLimitError("stirling suite supports limit <= " + std::to_string(kStirlingMax));
    Json failures = Json::array();
    std::uint64_t checked = 0;
    const auto n_max = static_cast<unsigned>(a.limit);
    std::vector<BigInt> prev;
    for (unsigned n = 0; n <= n_max; ++n) {
      std::vector<BigInt> row(n_max + 2);
      for (unsigned k = 0; k <= n_max + 1 && k <= kStirlingMax; ++k) row[k] = stirling2(n, k);
      auto fail = [&](const char* what, unsigned k) { failures.push_back(Json{{"n", n}, {"k", k}, {"check", what}}); };
      if (row[n] != 1) fail("diagonal", n);
      for (unsigned k = n + 1; k < row.size(); ++k) {
        if (row[k] != 0) fail("above diagonal", k);
      }
      if (n > 0) {
        for (unsigned k = 1; k <= n; ++k) {
          if (row[k] != BigInt(k) * prev[k] + prev[k - 1]) fail("recurrence", k);
        }
      }
      checked += row.size();
      prev = std::move(row);
    }
    findings["checked"] = checked;
    findings["failures"] = failures;
    if (!failures.empty()) status = "fails";
    summary = failures.empty() ? "diagonal, vanishing and recurrence checks pass" : "identity fails";
  } else if (a.suite == "khodzaev") {
    const BigInt n = parse_big_arg(a.n.empty() ? std::to_string(a.limit) : a.n, "n");
    if (a.limit > 100000) throw ResourceLimitError("khodzaev suite supports limit <= 100000");
    params["n"] = to_string(n);
    const KhodzaevReport r = khodzaev_threshold(n, static_cast<std::uint32_t>(a.limit), fo);
    findings["result"] = to_json(r);
    status = "diagnostic";
    summary = r.threshold ? "least k with R(n,k) < k^k is " + std::to_string(*r.threshold)
                          : "no k in range has R(n,k) < k^k";
  } else {
    throw ValidationError("unknown suite " + a.suite);
  }
  return {make_report("verify", params, fo.seed, findings, status, summary), kExitOk, {}};
}

// lambda --------------------------------------------------------------------

struct LambdaArgs {
  std::string n;
  std::uint32_t k = 0;
  unsigned m = 2;
};

Outcome do_lambda(const LambdaArgs& a, const FactorOptions& fo) {
  const BigInt n = parse_big_arg(a.n, "n");
  const BigInt v = lambda_m(n, a.k, a.m, fo);
  Json findings{{"n", a.n}, {"k", a.k}, {"m", a.m}, {"lambda", to_string(v)}};
  Json params{{"n", a.n}, {"k", a.k}, {"m", a.m}};
  return {make_report("lambda", params, fo.seed, findings, "ok", "lambda computed"), kExitOk, {}};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arithmetic of blocks of consecutive integers", "blockarith"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  unsigned workers = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string out_path;
  std::string format = "json";
  bool timing = false;
  app.add_option("--workers", workers, "Worker threads for scans")->check(CLI::Range(1u, 256u));
  app.add_option("--seed", seed, "Seed for Pollard rho");
  app.add_option("--out", out_path, "Write the report to this file");
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--timing", timing, "Include wall time in the report");

  StatsArgs stats_args;
  auto* stats = app.add_subcommand("stats", "P, omega, R and Q_m of a block")->fallthrough();
  stats->add_option("--n", stats_args.n, "First integer of the block")->required();
  stats->add_option("--k", stats_args.k, "Block length")->required();
  stats->add_option("--m", stats_args.m, "Powerfree moduli");

  ScanArgs scan_args;
  auto* scan_cmd = app.add_subcommand("scan", "Exceptions to an inequality over a rectangle")->fallthrough();
  scan_cmd->add_option("--ineq", scan_args.ineq, "Inequality name")->required();
  scan_cmd->add_option("--kmin", scan_args.kmin)->capture_default_str();
  scan_cmd->add_option("--kmax", scan_args.kmax)->required();
  scan_cmd->add_option("--nmin", scan_args.nmin)->capture_default_str();
  scan_cmd->add_option("--nmax", scan_args.nmax)->required();
  scan_cmd->add_option("--checkpoint", scan_args.checkpoint, "Checkpoint file for resumable scans");
  scan_cmd->add_option("--checkpoint-every", scan_args.checkpoint_every, "Bands between checkpoints")
      ->check(CLI::PositiveNumber);
  scan_cmd->add_option("--band-size", scan_args.band_size, "k values per band")->check(CLI::PositiveNumber);

  EwArgs ew_args;
  auto* ew = app.add_subcommand("ew", "Erdos-Woods pairs")->fallthrough();
  ew->add_option("--k", ew_args.k)->required();
  ew->add_option("--max", ew_args.max, "Largest n2")->required();
  ew->add_option("--families", ew_args.families, "Also verify the k = 2 family for 2 <= h <= H");

  auto* abc = app.add_subcommand("abc", "abc triples")->fallthrough()->require_subcommand(1);
  AbcCheckArgs check_args;
  auto* abc_check = abc->add_subcommand("check", "Check one triple")->fallthrough();
  abc_check->add_option("--a", check_args.a)->required();
  abc_check->add_option("--b", check_args.b)->required();
  abc_check->add_option("--c", check_args.c)->required();
  abc_check->add_option("--max-bits", check_args.max_bits, "Precision ceiling")->capture_default_str();
  abc_check->add_flag("--no-prefilter", check_args.no_prefilter, "Decide by interval arithmetic only");
  AbcEnumArgs enum_args;
  auto* abc_enum = abc->add_subcommand("enumerate", "Triples above a quality floor")->fallthrough();
  abc_enum->add_option("--cmax", enum_args.cmax)->required();
  abc_enum->add_option("--quality", enum_args.quality, "Quality floor, e.g. 1.4 or 7/5")->capture_default_str();
  abc_enum->add_flag("--audit", enum_args.audit, "Check every triple with c <= cmax");

  LemmaArgs lemma_args;
  auto* lemma = app.add_subcommand("lemma", "Alternating binomial product gap")->fallthrough();
  lemma->add_option("--k", lemma_args.k)->required();
  lemma->add_option("--x", lemma_args.x)->required();
  lemma->add_option("--cap", lemma_args.cap)->capture_default_str();

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand("verify", "Identity suites")->fallthrough();
  verify->add_option("--suite", verify_args.suite)
      ->required()
      ->check(CLI::IsMember({"erdos-gcd", "hanson", "stirling", "khodzaev"}));
  verify->add_option("--limit", verify_args.limit)->required();
  verify->add_option("--n", verify_args.n, "Block start for the khodzaev suite");

  LambdaArgs lambda_args;
  auto* lambda = app.add_subcommand("lambda", "Largest m-th powerfree part in a window")->fallthrough();
  lambda->add_option("--n", lambda_args.n)->required();
  lambda->add_option("--k", lambda_args.k)->required();
  lambda->add_option("--m", lambda_args.m)->capture_default_str();

  auto* schema = app.add_subcommand("schema", "Print the report JSON schema");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  if (schema->parsed()) {
    out << report_schema();
    return kExitOk;
  }

  FactorOptions fo;
  fo.seed = seed;
  const bool csv_capable = scan_cmd->parsed() || ew->parsed() || abc_enum->parsed();
  if (format == "csv" && !csv_capable) {
    err << "error: --format csv is available for scan, ew and abc enumerate only\n";
    return kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  Outcome result;
  try {
    if (stats->parsed()) result = do_stats(stats_args, fo);
    else if (scan_cmd->parsed()) result = do_scan(scan_args, workers, fo);
    else if (ew->parsed()) result = do_ew(ew_args, workers, fo);
    else if (abc_check->parsed()) result = do_abc_check(check_args, fo);
    else if (abc_enum->parsed()) result = do_abc_enumerate(enum_args, workers, fo);
    else if (lemma->parsed()) result = do_lemma(lemma_args, fo);
    else if (verify->parsed()) result = do_verify(verify_args, fo);
    else if (lambda->parsed()) result = do_lambda(lambda_args, fo);
  } catch (const ResourceLimitError& e) {
    err << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (timing) {
    result.report["wall_time_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
  }

  const auto problems = validate_report(result.report);
  if (!problems.empty()) {
    for (const auto& p : problems) err << "internal error: report " << p << '\n';
    return 1;
  }

  const std::string text = format == "csv" ? *result.csv : result.report.dump(2) + "\n";
  try {
    if (out_path.empty()) {
      out << text;
    } else {
      write_atomic(out_path, text);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return result.code;
}

}  // namespace blockarith
