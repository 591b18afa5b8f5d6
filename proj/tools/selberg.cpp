#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lsel/errors.hpp"
#include "lsel/identities.hpp"
#include "lsel/parallel.hpp"

using namespace lsel;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;
constexpr int kExitBudget = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<IdentityCase> cases;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string out_path;
  std::string format = "table";
  bool reproducible = false;
};

// ---- parsing helpers -------------------------------------------------------

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw InputError(where + ": unknown key '" + k + "'");
}

cplx complex_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw InputError(what + ": expected a number or [re, im]");
}

cplx complex_from_string(const std::string& s, const std::string& what) {
  try {
    const auto comma = s.find(',');
    if (comma == std::string::npos) return std::stod(s);
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    throw InputError(what + ": cannot parse '" + s + "'");
  }
}

template <class T>
T get_as(const json& j, const std::string& what) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw InputError(what + ": wrong type");
  }
}

LocalFieldDesc make_field(const std::string& kind, int p, int f, int d) {
  if (p < 2) throw InputError("field: p must be a prime >= 2");
  for (int k = 2; k * k <= p; ++k)
    if (p % k == 0) throw InputError("field: p = " + std::to_string(p) + " is not prime");
  if (kind == "Qp") return LocalFieldDesc::padic(p, f, d);
  if (kind == "Fq") return LocalFieldDesc::finite(p, f);
  if (kind == "C") return LocalFieldDesc::complex();
  throw InputError("field: expected Qp, Fq or C, got '" + kind + "'");
}

void apply_precision(EngineSettings& e, const json& j, const std::string& where) {
  reject_unknown(j, {"shells", "samples", "max_depth", "mc_depth", "gate", "mc"}, where);
  if (j.contains("shells")) e.shells = get_as<int>(j["shells"], where + ".shells");
  if (j.contains("samples")) e.samples = get_as<long>(j["samples"], where + ".samples");
  if (j.contains("max_depth")) e.max_depth = get_as<int>(j["max_depth"], where + ".max_depth");
  if (j.contains("mc_depth")) e.mc_depth = get_as<int>(j["mc_depth"], where + ".mc_depth");
  if (j.contains("gate")) e.gate = get_as<double>(j["gate"], where + ".gate");
  if (j.contains("mc")) e.mc = get_as<bool>(j["mc"], where + ".mc");
}

IdentityCase case_from_json(const json& j, const EngineSettings& defaults, std::uint64_t seed, size_t index) {
  const std::string where = "cases[" + std::to_string(index) + "]";
  reject_unknown(j,
                 {"case_id", "identity", "field", "p", "f", "d", "n", "a", "b", "c", "s", "G", "chi", "components",
                  "precision", "seed"},
                 where);
  IdentityCase c;
  c.engine = defaults;
  c.engine.seed = seed;
  if (!j.contains("identity")) throw InputError(where + ": missing 'identity'");
  try {
    c.identity = identity_from_name(get_as<std::string>(j["identity"], where + ".identity"));
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  }
  c.case_id = j.contains("case_id") ? get_as<std::string>(j["case_id"], where + ".case_id")
                                    : identity_name(c.identity) + "#" + std::to_string(index);
  const std::string kind = j.contains("field") ? get_as<std::string>(j["field"], where + ".field") : "Qp";
  const int p = j.contains("p") ? get_as<int>(j["p"], where + ".p") : (kind == "C" ? 2 : 0);
  const int f = j.contains("f") ? get_as<int>(j["f"], where + ".f") : 1;
  const int d = j.contains("d") ? get_as<int>(j["d"], where + ".d") : 0;
  if (kind != "C" && !j.contains("p")) throw InputError(where + ": missing 'p'");
  c.field = make_field(kind, p, f, d);
  if (j.contains("n")) c.n = get_as<int>(j["n"], where + ".n");
  if (j.contains("a")) c.a = complex_from_json(j["a"], where + ".a");
  if (j.contains("b")) c.b = complex_from_json(j["b"], where + ".b");
  if (j.contains("c")) c.c = complex_from_json(j["c"], where + ".c");
  if (j.contains("s")) c.s = complex_from_json(j["s"], where + ".s");
  if (j.contains("G")) c.G = get_as<std::vector<long>>(j["G"], where + ".G");
  if (j.contains("chi")) {
    const auto chi = get_as<std::vector<int>>(j["chi"], where + ".chi");
    if (chi.size() != 3) throw InputError(where + ".chi: expected three character indices");
    c.chi_a = chi[0];
    c.chi_b = chi[1];
    c.chi_c = chi[2];
  }
  if (j.contains("components")) {
    if (!j["components"].is_array()) throw InputError(where + ".components: expected an array");
    for (size_t i = 0; i < j["components"].size(); ++i) {
      const auto& cj = j["components"][i];
      const std::string w = where + ".components[" + std::to_string(i) + "]";
      reject_unknown(cj, {"degree", "s", "twist"}, w);
      TraceComponent comp;
      if (cj.contains("degree")) comp.degree = get_as<int>(cj["degree"], w + ".degree");
      if (cj.contains("s")) comp.s = complex_from_json(cj["s"], w + ".s");
      if (cj.contains("twist")) comp.twist = get_as<std::vector<long>>(cj["twist"], w + ".twist");
      c.components.push_back(comp);
    }
  }
  if (j.contains("precision")) apply_precision(c.engine, j["precision"], where + ".precision");
  if (j.contains("seed")) c.engine.seed = get_as<std::uint64_t>(j["seed"], where + ".seed");
  return c;
}

RunConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("config: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  reject_unknown(j, {"seed", "workers", "precision", "output", "cases"}, "config");
  RunConfig cfg;
  EngineSettings defaults;
  if (j.contains("seed")) cfg.seed = get_as<std::uint64_t>(j["seed"], "config.seed");
  if (j.contains("workers")) cfg.workers = get_as<int>(j["workers"], "config.workers");
  if (j.contains("precision")) apply_precision(defaults, j["precision"], "config.precision");
  if (j.contains("output")) {
    reject_unknown(j["output"], {"path", "format"}, "config.output");
    if (j["output"].contains("path")) cfg.out_path = get_as<std::string>(j["output"]["path"], "config.output.path");
    if (j["output"].contains("format")) cfg.format = get_as<std::string>(j["output"]["format"], "config.output.format");
  }
  if (!j.contains("cases") || !j["cases"].is_array() || j["cases"].empty())
    throw InputError("config: 'cases' must be a non-empty array");
  for (size_t i = 0; i < j["cases"].size(); ++i) cfg.cases.push_back(case_from_json(j["cases"][i], defaults, cfg.seed, i));
  return cfg;
}

// ---- reports ---------------------------------------------------------------

json params_json(const IdentityCase& c) {
  auto cj = [](cplx z) { return z.imag() == 0 ? json(z.real()) : json::array({z.real(), z.imag()}); };
  json p;
  p["field"] = c.field.name();
  switch (c.identity) {
    case IdentityId::kGammaIntegral:
      p["s"] = cj(c.s);
      break;
    case IdentityId::kBeta:
      p["a"] = cj(c.a);
      p["b"] = cj(c.b);
      break;
    case IdentityId::kGenBeta: {
      json comps = json::array();
      for (const auto& comp : c.components)
        comps.push_back({{"degree", comp.degree}, {"s", cj(comp.s)}, {"twist", comp.twist}});
      p["components"] = comps;
      break;
    }
    case IdentityId::kProp1:
      p["G"] = c.G;
      p["s"] = cj(c.s);
      break;
    case IdentityId::kProp2:
      p["G"] = c.G;
      p["a"] = cj(c.a);
      p["b"] = cj(c.b);
      p["c"] = cj(c.c);
      break;
    case IdentityId::kFfSelberg:
      p["n"] = c.n;
      p["chi"] = {c.chi_a, c.chi_b, c.chi_c};
      break;
    default:
      p["n"] = c.n;
      p["a"] = cj(c.a);
      p["b"] = cj(c.b);
      p["c"] = cj(c.c);
  }
  if (c.engine.samples > 0) p["samples"] = c.engine.samples;
  return p;
}

json record_json(const VerificationReport& r, bool reproducible) {
  json j;
  j["case_id"] = r.input.case_id;
  j["identity"] = identity_name(r.input.identity);
  j["backend"] = r.engine;
  j["params"] = params_json(r.input);
  j["lhs_re"] = r.lhs.value.real();
  j["lhs_im"] = r.lhs.value.imag();
  j["rhs_re"] = r.rhs.real();
  j["rhs_im"] = r.rhs.imag();
  j["cert_err"] = r.lhs.cert_err;
  j["tail"] = r.lhs.tail;
  j["mc_sigma"] = r.lhs.mc_sigma;
  j["sigma_dist"] = r.sigma_dist;
  j["abs_dev"] = r.abs_dev;
  j["pass"] = r.pass;
  j["seed"] = r.input.engine.seed;
  j["strata"] = r.lhs.strata;
  j["samples"] = r.lhs.samples;
  j["runtime_ms"] = reproducible ? 0.0 : std::round(r.runtime_ms * 1000) / 1000;
  j["notes"] = r.notes;
  return j;
}

std::string timestamp() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

std::string csv_field(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string render(const std::vector<VerificationReport>& reps, const RunConfig& cfg) {
  std::ostringstream os;
  if (cfg.format == "json") {
    json doc;
    if (!cfg.reproducible) doc["timestamp"] = timestamp();
    doc["records"] = json::array();
    for (const auto& r : reps) doc["records"].push_back(record_json(r, cfg.reproducible));
    os << doc.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    bool header = true;
    for (const auto& r : reps) {
      json rec = record_json(r, cfg.reproducible);
      if (header) {
        bool first = true;
        for (const auto& [k, v] : rec.items()) os << (first ? "" : ",") << k, first = false;
        os << "\n";
        header = false;
      }
      bool first = true;
      for (const auto& [k, v] : rec.items()) os << (first ? "" : ",") << csv_field(v), first = false;
      os << "\n";
    }
  } else {
    os << std::left << std::setw(44) << "case" << std::setw(20) << "backend" << std::right << std::setw(22) << "lhs"
       << std::setw(22) << "rhs" << std::setw(11) << "|dev|" << std::setw(11) << "budget" << "  result\n";
    for (const auto& r : reps) {
      std::ostringstream lhs, rhs;
      lhs << std::setprecision(12) << r.lhs.value.real();
      if (r.lhs.value.imag() != 0) lhs << std::showpos << r.lhs.value.imag() << "i";
      rhs << std::setprecision(12) << r.rhs.real();
      if (r.rhs.imag() != 0) rhs << std::showpos << r.rhs.imag() << "i";
      const double budget = r.lhs.cert_err + r.lhs.tail + r.input.engine.gate * r.lhs.mc_sigma + 1e-9;
      os << std::left << std::setw(44) << r.input.case_id.substr(0, 43) << std::setw(20) << r.engine << std::right
         << std::setw(22) << lhs.str() << std::setw(22) << rhs.str() << std::setw(11) << std::setprecision(2)
         << std::scientific << r.abs_dev << std::setw(11) << budget << std::defaultfloat << "  "
         << (r.pass ? "PASS" : "FAIL") << "\n";
    }
  }
  return os.str();
}

// ---- commands --------------------------------------------------------------

int run_verify(RunConfig cfg) {
  if (cfg.format != "json" && cfg.format != "csv" && cfg.format != "table")
    throw InputError("format: expected json, csv or table");
  // Validate every case before running any.
  for (const auto& c : cfg.cases) {
    try {
      check_region(c);
    } catch (const std::exception& e) {
      std::cerr << "case '" << c.case_id << "': " << e.what() << "\n";
      return kExitInput;
    }
  }
  const int workers = cfg.workers > 0 ? cfg.workers : default_workers();
  const bool nested = workers > 1 && cfg.cases.size() > 1;
  for (auto& c : cfg.cases)
    if (nested) c.engine.workers = 1;

  std::vector<VerificationReport> reps(cfg.cases.size());
  std::vector<std::string> errors(cfg.cases.size());
  std::vector<int> codes(cfg.cases.size(), 0);
  parallel_for(static_cast<long>(cfg.cases.size()), nested ? workers : 1, [&](long i) {
    const auto& c = cfg.cases[i];
    try {
      reps[i] = verify(c);
    } catch (const BudgetExceeded& e) {
      codes[i] = kExitBudget;
      errors[i] = e.what();
    } catch (const RegionViolation& e) {
      codes[i] = kExitInput;
      errors[i] = e.what();
    } catch (const PoleError& e) {
      codes[i] = kExitInput;
      errors[i] = e.what();
    } catch (const std::invalid_argument& e) {
      codes[i] = kExitInput;
      errors[i] = e.what();
    } catch (const std::exception& e) {
      reps[i].input = c;
      reps[i].engine = "error";
      reps[i].lhs.value = {NAN, NAN};
      reps[i].pass = false;
      reps[i].notes.push_back(e.what());
    }
  });
  int code = 0;
  for (size_t i = 0; i < codes.size(); ++i)
    if (codes[i]) {
      std::cerr << "case '" << cfg.cases[i].case_id << "': " << errors[i] << "\n";
      code = std::max(code, codes[i]);
    }
  if (code) return code;

  const std::string text = render(reps, cfg);
  if (cfg.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out_path);
    if (!out) throw InputError("cannot write '" + cfg.out_path + "'");
    out << text;
  }
  long failed = 0;
  for (const auto& r : reps) failed += !r.pass;
  std::cerr << reps.size() - failed << "/" << reps.size() << " cases pass\n";
  return failed ? kExitFail : 0;
}

int run_gamma(const LocalFieldDesc& field, const std::vector<std::string>& svals) {
  std::cout << std::left << std::setw(16) << "s" << std::setw(40) << "Gamma" << std::setw(40) << "rho"
            << std::setw(40) << (field.kind == LocalFieldDesc::Kind::kPadic ? "integral oracle" : "") << "\n";
  for (const auto& str : svals) {
    const cplx s = complex_from_string(str, "--s");
    const auto chi = QuasiCharacter::unramified(field, s);
    auto show = [](cplx z) {
      std::ostringstream os;
      os << std::setprecision(15) << z.real();
      if (z.imag() != 0) os << std::showpos << z.imag() << "i";
      return os.str();
    };
    std::cout << std::setw(16) << str;
    if (field.kind == LocalFieldDesc::Kind::kComplex) {
      const cplx g = gamma_complex(s);
      std::cout << std::setw(40) << show(g) << std::setw(40) << show(g) << "\n";
    } else {
      const cplx g = gamma_padic(field, chi);
      std::cout << std::setw(40) << show(g) << std::setw(40) << show(rho_padic(field, chi));
      if (s.real() > 0) std::cout << std::setw(40) << show(gamma_via_integral(field, chi));
      std::cout << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification of local-field Selberg integral identities"};
  app.require_subcommand(1);

  auto* verify_cmd = app.add_subcommand("verify", "Verify identities and write a report");
  std::string suite, config, identity, field_kind = "Qp", a, b, c, s, format, out;
  int p = 2, f = 1, n = 1, shells = 0, workers = 0;
  long samples = 0;
  std::uint64_t seed = 1;
  bool mc = false, reproducible = false;
  std::vector<long> G;
  std::vector<int> chi;
  std::vector<std::string> components;
  verify_cmd->add_option("--suite", suite, "Built-in suite")->check(CLI::IsMember({"desk"}));
  verify_cmd->add_option("--config", config, "JSON run configuration");
  verify_cmd->add_option("--identity", identity, "Single case: identity name");
  verify_cmd->add_option("--field", field_kind, "Qp, Fq or C")->check(CLI::IsMember({"Qp", "Fq", "C"}));
  verify_cmd->add_option("--p", p, "Residue characteristic");
  verify_cmd->add_option("--f", f, "Residue degree (Fq: q = p^f)");
  verify_cmd->add_option("--n", n, "Degree");
  verify_cmd->add_option("--a", a, "Exponent a (re or re,im)");
  verify_cmd->add_option("--b", b, "Exponent b");
  verify_cmd->add_option("--c", c, "Exponent c");
  verify_cmd->add_option("--s", s, "Exponent s");
  verify_cmd->add_option("--G", G, "Polynomial G, constant term first")->delimiter(',');
  verify_cmd->add_option("--chi", chi, "Character indices a,b,c over F_q")->delimiter(',')->expected(3);
  verify_cmd->add_option("--component", components, "Trace component degree:s[:twist,...] (repeatable)");
  verify_cmd->add_flag("--mc", mc, "Monte Carlo mode");
  verify_cmd->add_option("--samples", samples, "Monte Carlo samples");
  verify_cmd->add_option("--shells", shells, "Shells before the tail fit");
  verify_cmd->add_option("--seed", seed, "Seed");
  verify_cmd->add_option("--workers", workers, "Worker threads");
  verify_cmd->add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  verify_cmd->add_option("--out", out, "Report path");
  verify_cmd->add_flag("--reproducible", reproducible, "Omit wall-clock fields from the report");

  auto* gamma_cmd = app.add_subcommand("gamma", "Print Gamma and rho factors of |.|^s");
  std::string gfield = "Qp";
  int gp = 2, gf = 1, gd = 0;
  std::vector<std::string> gs;
  gamma_cmd->add_option("--field", gfield, "Qp or C")->check(CLI::IsMember({"Qp", "C"}));
  gamma_cmd->add_option("--p", gp, "Residue characteristic");
  gamma_cmd->add_option("--f", gf, "Residue degree");
  gamma_cmd->add_option("--d", gd, "Different exponent");
  gamma_cmd->add_option("--s", gs, "Exponent (re or re,im), repeatable")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*gamma_cmd) return run_gamma(make_field(gfield, gfield == "C" ? 2 : gp, gf, gd), gs);

    const int modes = !suite.empty() + !config.empty() + !identity.empty();
    if (modes != 1) throw InputError("verify: give exactly one of --suite, --config, --identity");
    RunConfig cfg;
    if (!config.empty()) {
      cfg = config_from_file(config);
    } else if (!suite.empty()) {
      cfg.cases = desk_suite();
      for (auto& k : cfg.cases) k.engine.seed = seed;
      cfg.seed = seed;
    } else {
      IdentityCase k;
      try {
        k.identity = identity_from_name(identity);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      k.field = make_field(field_kind, p, f, 0);
      k.n = n;
      if (!a.empty()) k.a = complex_from_string(a, "--a");
      if (!b.empty()) k.b = complex_from_string(b, "--b");
      if (!c.empty()) k.c = complex_from_string(c, "--c");
      if (!s.empty()) k.s = complex_from_string(s, "--s");
      k.G = G;
      if (chi.size() == 3) {
        k.chi_a = chi[0];
        k.chi_b = chi[1];
        k.chi_c = chi[2];
      }
      for (const auto& spec : components) {
        TraceComponent comp;
        std::stringstream ss(spec);
        std::string part;
        std::vector<std::string> parts;
        while (std::getline(ss, part, ':')) parts.push_back(part);
        if (parts.size() < 2 || parts.size() > 3) throw InputError("--component: expected degree:s[:twist]");
        try {
          comp.degree = std::stoi(parts[0]);
          comp.s = complex_from_string(parts[1], "--component s");
          if (parts.size() == 3) {
            std::stringstream ts(parts[2]);
            while (std::getline(ts, part, ',')) comp.twist.push_back(std::stol(part));
          }
        } catch (const std::logic_error&) {
          throw InputError("--component: cannot parse '" + spec + "'");
        }
        k.components.push_back(comp);
      }
      k.engine.mc = mc;
      k.engine.seed = seed;
      k.case_id = identity + " " + k.field.name();
      cfg.cases.push_back(k);
      cfg.seed = seed;
    }
    // command-line overrides
    for (auto& k : cfg.cases) {
      if (samples > 0) k.engine.samples = samples;
      if (shells > 0) k.engine.shells = shells;
      if (mc) k.engine.mc = true;
    }
    if (workers > 0) cfg.workers = workers;
    if (!format.empty()) cfg.format = format;
    if (!out.empty()) cfg.out_path = out;
    if (!cfg.out_path.empty() && format.empty() && cfg.format == "table") cfg.format = "json";
    cfg.reproducible = reproducible;
    return run_verify(std::move(cfg));
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const PoleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
}
