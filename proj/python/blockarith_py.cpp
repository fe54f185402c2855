#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "blockarith/abc.hpp"
#include "blockarith/block_stats.hpp"
#include "blockarith/cli.hpp"
#include "blockarith/errors.hpp"
#include "blockarith/ew.hpp"
#include "blockarith/primes.hpp"
#include "blockarith/report.hpp"
#include "blockarith/stirling.hpp"
#include "blockarith/verifiers.hpp"

namespace py = pybind11;
namespace ba = blockarith;

namespace pybind11::detail {

template <>
struct type_caster<mpz_class> {
  PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));

  bool load(handle src, bool convert) {
    if (!src) return false;
    if (!PyLong_Check(src.ptr())) {
      if (!convert || !PyIndex_Check(src.ptr())) return false;
    }
    object as_int = reinterpret_steal<object>(PyNumber_Index(src.ptr()));
    if (!as_int) {
      PyErr_Clear();
      return false;
    }
    object text = reinterpret_steal<object>(PyObject_Str(as_int.ptr()));
    if (!text) {
      PyErr_Clear();
      return false;
    }
    return value.set_str(text.cast<std::string>(), 10) == 0;
  }

  static handle cast(const mpz_class& v, return_value_policy, handle) {
    const std::string s = v.get_str(10);
    return PyLong_FromString(s.c_str(), nullptr, 10);
  }
};

}  // namespace pybind11::detail

namespace {

py::object fraction(const ba::BigRational& q) {
  static py::object cls = py::module_::import("fractions").attr("Fraction");
  return cls(ba::BigInt(q.get_num()), ba::BigInt(q.get_den()));
}

py::object from_json(const ba::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

ba::Inequality inequality_arg(const std::string& name) {
  const auto id = ba::parse_inequality(name);
  if (!id) throw ba::ValidationError("unknown inequality " + name);
  return *id;
}

py::dict stats_dict(const ba::BlockStats& s) {
  py::dict q;
  for (const auto& [m, v] : s.powerfree) q[py::int_(m)] = v;
  py::dict d;
  d["n"] = s.n;
  d["k"] = s.k;
  d["P"] = s.greatest_prime;
  d["omega"] = s.omega;
  d["R"] = s.radical;
  d["Q"] = q;
  return d;
}

ba::FactorOptions seeded(std::uint64_t seed) {
  ba::FactorOptions fo;
  fo.seed = seed;
  return fo;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Arithmetic of blocks of consecutive integers";
  m.attr("__version__") = std::string(ba::kToolVersion);
  m.attr("DEFAULT_SEED") = ba::kDefaultSeed;

  auto& base = py::register_exception<ba::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ba::DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ba::ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<ba::OutOfTableError>(m, "OutOfTableError", base.ptr());
  auto& resource = py::register_exception<ba::ResourceLimitError>(m, "ResourceLimitError", base.ptr());
  py::register_exception<ba::MemoryBudgetError>(m, "MemoryBudgetError", resource.ptr());

  m.def("is_prime", [](const ba::BigInt& x) {
    if (x < 1) throw ba::DomainError("is_prime needs x >= 1");
    return ba::is_prime(x);
  }, py::arg("x"));

  m.def("factorize", [](const ba::BigInt& x, std::uint64_t seed) {
    std::vector<std::pair<ba::BigInt, std::uint32_t>> out;
    const ba::Factorization f = ba::factorize(x, seeded(seed));
    for (const auto& pp : f.factors()) out.emplace_back(pp.prime, pp.exponent);
    return out;
  }, py::arg("x"), py::arg("seed") = ba::kDefaultSeed);

  m.def("sieve_primes", [](std::uint64_t limit) {
    const ba::PrimeTable t(limit);
    return std::vector<std::uint32_t>(t.primes().begin(), t.primes().end());
  }, py::arg("limit"));
  m.def("prime_pi", [](std::uint64_t x) {
    if (x < 2) return std::uint64_t{0};
    return ba::PrimeTable(x).pi(x);
  }, py::arg("x"));
  m.def("primorial", &ba::primorial, py::arg("r"));
  m.def("legendre_vp", &ba::legendre_vp, py::arg("k"), py::arg("p"));
  m.def("stirling2", &ba::stirling2, py::arg("n"), py::arg("k"));

  m.def("block_stats", [](const ba::BigInt& n, std::uint32_t k, std::vector<unsigned> moduli, std::uint64_t seed) {
    return stats_dict(ba::block_stats(n, k, moduli, seeded(seed)));
  }, py::arg("n"), py::arg("k"), py::arg("moduli") = std::vector<unsigned>{}, py::arg("seed") = ba::kDefaultSeed);
  m.def("lambda_m", [](const ba::BigInt& n, std::uint32_t k, unsigned mm, std::uint64_t seed) {
    return ba::lambda_m(n, k, mm, seeded(seed));
  }, py::arg("n"), py::arg("k"), py::arg("m"), py::arg("seed") = ba::kDefaultSeed);

  m.def("inequalities", [] {
    std::vector<std::string> out;
    for (auto id : ba::all_inequalities()) out.emplace_back(ba::inequality_name(id));
    return out;
  });
  m.def("scan", [](const std::string& ineq, std::uint32_t kmin, std::uint32_t kmax, std::uint64_t nmin,
                   std::uint64_t nmax, unsigned workers) {
    ba::ScanSpec spec;
    spec.id = inequality_arg(ineq);
    spec.kmin = kmin;
    spec.kmax = kmax;
    spec.nmin = nmin;
    spec.nmax = nmax;
    spec.workers = workers;
    std::vector<ba::ExceptionRecord> records;
    {
      py::gil_scoped_release release;
      records = ba::scan(spec);
    }
    py::list out;
    for (const auto& r : records) out.append(from_json(ba::to_json(r)));
    return out;
  }, py::arg("ineq"), py::arg("kmin"), py::arg("kmax"), py::arg("nmin") = 1, py::arg("nmax"), py::arg("workers") = 1);

  m.def("erdos_gcd_bound", &ba::erdos_gcd_bound, py::arg("k"));
  m.def("hanson_check", [](std::uint64_t rmax) {
    ba::HansonReport h;
    {
      py::gil_scoped_release release;
      h = ba::hanson_check(rmax);
    }
    return from_json(ba::to_json(h));
  }, py::arg("rmax"));
  m.def("khodzaev_threshold", [](const ba::BigInt& n, std::uint32_t kmax) {
    return ba::khodzaev_threshold(n, kmax).threshold;
  }, py::arg("n"), py::arg("kmax"));

  m.def("find_ew_pairs", [](std::uint32_t k, std::uint64_t n2max, unsigned workers) {
    std::vector<ba::EwPair> pairs;
    {
      py::gil_scoped_release release;
      pairs = ba::find_ew_pairs(k, n2max, workers);
    }
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& p : pairs) out.emplace_back(p.n1, p.n2);
    return out;
  }, py::arg("k"), py::arg("n2max"), py::arg("workers") = 1);
  m.def("ew_family", [](unsigned h) {
    const auto p = ba::ew_family(h);
    return std::make_pair(p.n1, p.n2);
  }, py::arg("h"));
  m.def("verify_ew_pair", [](std::uint64_t n1, std::uint64_t n2, std::uint32_t k) {
    ba::EwPair p{n1, n2, k, {}};
    return ba::verify_ew_pair(p);
  }, py::arg("n1"), py::arg("n2"), py::arg("k"));
  m.def("ew_abc_chain", [](const ba::BigInt& n1, const ba::BigInt& n2) {
    return from_json(ba::to_json(ba::ew_abc_chain(n1, n2)));
  }, py::arg("n1"), py::arg("n2"));

  m.def("make_triple", [](const ba::BigInt& a, const ba::BigInt& b, const ba::BigInt& c) {
    const auto t = ba::make_triple(a, b, c);
    py::dict d;
    d["a"] = t.a;
    d["b"] = t.b;
    d["c"] = t.c;
    d["radical"] = t.radical;
    d["omega"] = t.omega;
    d["quality"] = t.quality();
    d["degenerate"] = t.degenerate();
    return d;
  }, py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("check_baker", [](const ba::BigInt& a, const ba::BigInt& b, const ba::BigInt& c) {
    return std::string(ba::verdict_name(ba::check_baker(ba::make_triple(a, b, c))));
  }, py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("check_ls", [](const ba::BigInt& a, const ba::BigInt& b, const ba::BigInt& c) {
    return std::string(ba::verdict_name(ba::check_ls(ba::make_triple(a, b, c))));
  }, py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("enumerate_triples", [](std::uint64_t cmax, const std::string& floor, unsigned workers) {
    const auto q = ba::parse_rational(floor);
    if (!q) throw ba::ValidationError("bad quality floor " + floor);
    std::vector<ba::AbcTriple> triples;
    {
      py::gil_scoped_release release;
      triples = ba::enumerate_triples(cmax, *q, workers);
    }
    std::vector<std::tuple<ba::BigInt, ba::BigInt, ba::BigInt>> out;
    for (const auto& t : triples) out.emplace_back(t.a, t.b, t.c);
    return out;
  }, py::arg("cmax"), py::arg("quality_floor") = "1", py::arg("workers") = 1);
  m.def("lemma_product_gap", [](const ba::BigInt& x, std::uint32_t k, std::uint32_t cap) {
    const auto g = ba::lemma_product_gap(x, k, cap);
    py::dict d;
    d["k"] = g.k;
    d["x"] = g.x;
    d["gap"] = g.gap;
    d["predicted_leading"] = g.predicted_leading;
    d["ratio"] = fraction(g.ratio);
    return d;
  }, py::arg("x"), py::arg("k"), py::arg("cap") = ba::kLemmaDefaultCap);

  m.def("run_cli", [](std::vector<std::string> args) {
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = ba::run(args, out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
  m.def("report_schema", [] { return std::string(ba::report_schema()); });
}
