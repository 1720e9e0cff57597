#include "modrate/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "modrate/entropy.hpp"
#include "modrate/error.hpp"
#include "modrate/fourier.hpp"
#include "modrate/gallery.hpp"
#include "modrate/harness.hpp"
#include "modrate/modulus.hpp"
#include "modrate/schauder.hpp"
#include "modrate/serialize.hpp"
#include "modrate/step.hpp"

namespace modrate::cli {
namespace {

struct RunConfig {
  std::string command;
  std::string name;
  std::vector<std::string> params;
  std::string function_file;
  std::vector<std::string> p{"2"};
  unsigned n_max = 8;
  unsigned m_cap = 64;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string format = "json";
  std::string out;
  std::string config;

  std::string kind = "fourier";
  std::string basis = "trig";
  unsigned sup_grid = 0;
  std::size_t trials = 10000;
  std::size_t markov_trials = 1000;
  unsigned r_max = 2;
  unsigned random = 4;
  std::string cls = "interval";
  unsigned n = 0;
  unsigned mu = 0;
  unsigned r = 0;
  std::string length = "1";
  unsigned cells_log2 = 1;
  unsigned value_bits = 2;
};

struct Source {
  std::string name;
  ParamMap params;
  std::optional<GalleryEntry> entry;
  std::optional<PeriodicFunction> function;

  const PeriodicFunction& f() const { return entry ? entry->function : *function; }
};

class UsageError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

ParamMap parse_params(const std::vector<std::string>& raw) {
  ParamMap out;
  for (const std::string& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + kv + "'");
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

std::vector<double> parse_p_list(const std::vector<std::string>& raw) {
  std::vector<double> out;
  for (const std::string& item : raw) {
    std::stringstream ss(item);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (part.empty()) continue;
      out.push_back(Rational::parse(part).value());
    }
  }
  if (out.empty()) throw UsageError("--p needs at least one value");
  return out;
}

std::optional<Source> load_source(const RunConfig& rc) {
  if (!rc.function_file.empty()) {
    std::ifstream in(rc.function_file);
    if (!in) throw Error(ErrorCode::Io, "cannot read '" + rc.function_file + "'");
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::InvalidArgument, std::string("malformed function JSON: ") + e.what());
    }
    return Source{"file:" + rc.function_file, {}, std::nullopt, function_from_json(j)};
  }
  if (rc.name.empty()) return std::nullopt;
  const ParamMap params = parse_params(rc.params);
  return Source{rc.name, params, make_example(rc.name, params), std::nullopt};
}

Source require_source(const RunConfig& rc) {
  auto s = load_source(rc);
  if (!s) throw UsageError("a function is required: --name NAME [--param k=v] or --function FILE");
  return *s;
}

SearchConfig search_config(const RunConfig& rc) {
  SearchConfig cfg;
  cfg.n_max = rc.n_max;
  cfg.m_cap = rc.m_cap;
  if (const char* budget = std::getenv("MODRATE_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(budget, &end, 10);
    if (end == budget || *end != '\0') throw UsageError("MODRATE_BUDGET must be a positive integer");
    cfg.max_samples = static_cast<std::size_t>(v);
  }
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

Json source_json(const Source& s) {
  return {{"name", s.name}, {"params", s.params}};
}

void emit(const RunConfig& rc, const Json& j, const std::string& csv_text) {
  write_output(rc.format == "csv" ? csv_text : canonical_dump(j), rc.out);
}

std::vector<std::string> profile_row(const std::string& fn, const RateProfile& pr, const RateEntry& e) {
  return {fn, format_number(pr.p), pr.kind, std::to_string(e.n), std::to_string(e.m), to_string(e.kind)};
}

int cmd_profiles(const RunConfig& rc, bool modulus) {
  const Source src = require_source(rc);
  const SearchConfig cfg = search_config(rc);
  Json profiles = Json::array();
  std::vector<std::vector<std::string>> rows;
  const auto add = [&](RateProfile pr) {
    if (src.entry)
      for (const std::string& f : src.entry->flags)
        if (!pr.has_flag(f)) pr.flags.push_back(f);
    profiles.push_back(to_json(pr));
    for (const RateEntry& e : pr.entries) rows.push_back(profile_row(src.name, pr, e));
  };
  if (modulus && rc.sup_grid > 0) {
    if (!src.entry || !src.entry->interval) throw UsageError("--sup-grid needs a gallery function with an interval form");
    add(sup_modulus_on_grid(src.entry->interval, rc.sup_grid, rc.n_max));
  } else if (!modulus && (rc.kind == "degree" || (rc.kind == "basis" && rc.basis == "chebyshev"))) {
    if (rc.kind == "degree") {
      if (!src.entry || !src.entry->interval) throw UsageError("--kind degree needs a gallery function with an interval form");
      add(weierstrass_degree_rate(src.entry->interval, cfg));
    } else {
      add(b_rate(src.f(), chebyshev_basis(), cfg));
    }
  } else {
    for (double p : parse_p_list(rc.p)) {
      if (modulus) {
        add(lp_modulus(src.f(), p, cfg));
      } else if (rc.kind == "fourier") {
        add(fourier_rate(src.f(), p, cfg));
      } else if (rc.kind == "step") {
        add(step_rate(src.f(), p, cfg));
      } else if (rc.kind == "basis") {
        if (rc.basis == "trig") {
          add(b_rate(src.f(), trig_basis(p), cfg));
        } else if (rc.basis == "haar") {
          add(b_rate(src.f(), haar_basis(p), cfg));
        } else {
          throw UsageError("unknown basis '" + rc.basis + "'");
        }
      } else {
        throw UsageError("unknown rate kind '" + rc.kind + "'");
      }
    }
  }
  Json j = {{"command", rc.command}, {"function", source_json(src)}, {"profiles", profiles}};
  emit(rc, j, csv({"function", "p", "kind", "n", "m", "entry_kind"}, rows));
  return kOk;
}

std::vector<GalleryEntry> random_steps(std::uint64_t seed, unsigned count) {
  std::vector<GalleryEntry> out;
  for (unsigned i = 0; i < count; ++i) {
    std::mt19937_64 rng(split_seed(seed, 100, i));
    const auto unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    std::vector<Complex> v(std::size_t{1} << (rng() % 7));
    for (Complex& c : v) c = std::polar(std::sqrt(unit()), 2.0 * std::numbers::pi * unit());
    GalleryEntry e = make_example("constant");
    e.name = "random_step[" + std::to_string(i) + "]";
    e.params = {{"cells", std::to_string(v.size())}};
    e.oracles.clear();
    e.interval = nullptr;
    e.function = PeriodicFunction::step(std::move(v));
    out.push_back(std::move(e));
  }
  return out;
}

int cmd_verify(const RunConfig& rc) {
  const SearchConfig cfg = search_config(rc);
  const std::vector<double> ps = parse_p_list(rc.p);
  std::vector<GalleryEntry> corpus;
  bool single = false;
  if (auto src = load_source(rc)) {
    single = true;
    if (src->entry) {
      corpus.push_back(*src->entry);
    } else {
      GalleryEntry e = make_example("constant");
      e.name = src->name;
      e.oracles.clear();
      e.interval = nullptr;
      e.function = *src->function;
      corpus.push_back(std::move(e));
    }
  } else {
    corpus = equivalence_corpus();
    for (GalleryEntry& e : random_steps(rc.seed, rc.random)) corpus.push_back(std::move(e));
  }
  Json reports = Json::array();
  Json pooled = Json::array();
  Json scaling = Json::array();
  std::vector<std::vector<std::string>> rows;
  bool pass = true;
  for (double p : ps) {
    std::vector<EquivalenceReport> group;
    for (const GalleryEntry& e : corpus) {
      try {
        group.push_back(verify_equivalence(e, p, cfg));
      } catch (const Error& err) {
        if (err.code() != ErrorCode::InsufficientCertification) throw;
        reports.push_back({{"function", e.name}, {"p", p}, {"status", "insufficient"}});
        continue;
      }
      const EquivalenceReport& r = group.back();
      reports.push_back(to_json(r));
      pass = pass && r.pass();
      for (const FittedConstant& c : r.fits)
        rows.push_back({r.function, format_number(p), c.inequality, std::to_string(c.a), std::to_string(c.b), c.status});
    }
    if (!single) {
      Json fits = Json::array();
      for (const FittedConstant& c : fit_pooled(group)) {
        fits.push_back(to_json(c));
        pass = pass && c.status != "violation";
        rows.push_back({"corpus", format_number(p), c.inequality, std::to_string(c.a), std::to_string(c.b), c.status});
      }
      pooled.push_back({{"p", p}, {"fits", fits}});
    }
    for (const GalleryEntry& e : corpus) {
      if (!single && e.function.representation() == Representation::Analytic) continue;
      for (unsigned r = 1; r <= rc.r_max; ++r) {
        const ScalingReport s = verify_scaling(e, r, p, cfg);
        scaling.push_back(to_json(s));
        pass = pass && s.pass();
      }
    }
  }
  Json j = {{"command", "verify"}, {"seed", rc.seed}, {"n_max", rc.n_max}, {"reports", reports},
            {"pooled", pooled},    {"scaling", scaling}, {"pass", pass}};
  emit(rc, j, csv({"function", "p", "inequality", "a", "b", "status"}, rows));
  return pass ? kOk : kViolations;
}

int cmd_suite(const RunConfig& rc) {
  if (rc.trials == 0 || rc.markov_trials == 0) throw UsageError("trial counts must be positive");
  const auto ineq = inequality_suite(rc.seed, rc.trials, rc.threads);
  const auto jm = jackson_markov_suite(rc.seed, rc.markov_trials);
  Json a = Json::array();
  Json b = Json::array();
  std::vector<std::vector<std::string>> rows;
  bool pass = true;
  const auto row = [&](const InequalityReport& r) {
    rows.push_back({r.id, std::to_string(r.trials), format_number(r.max_relative_violation), format_number(r.tolerance),
                    r.pass ? "true" : "false"});
    pass = pass && r.pass;
  };
  for (const auto& r : ineq) {
    a.push_back(to_json(r));
    row(r);
  }
  for (const auto& r : jm) {
    b.push_back(to_json(r));
    row(r);
  }
  Json j = {{"command", "suite"}, {"seed", rc.seed}, {"inequalities", a}, {"jackson_markov", b}, {"pass", pass}};
  emit(rc, j, csv({"id", "trials", "max_relative_violation", "tolerance", "pass"}, rows));
  return pass ? kOk : kViolations;
}

int cmd_gallery(const RunConfig& rc) {
  if (rc.name.empty()) {
    Json list = Json::array();
    std::vector<std::vector<std::string>> rows;
    for (const ExampleInfo& e : list_examples()) {
      list.push_back({{"name", e.name}, {"params", e.params}, {"oracles", e.oracles}});
      rows.push_back({e.name, e.params, e.oracles});
    }
    emit(rc, {{"command", "gallery"}, {"examples", list}}, csv({"name", "params", "oracles"}, rows));
    return kOk;
  }
  const GalleryEntry e = make_example(rc.name, parse_params(rc.params));
  std::vector<std::vector<std::string>> rows;
  for (const OracleClaim& c : e.oracles)
    rows.push_back({e.name, c.quantity, c.p ? format_number(*c.p) : "inf", std::to_string(c.n_lo), std::to_string(c.n_hi),
                    c.formula, c.source});
  emit(rc, {{"command", "gallery"}, {"entry", to_json(e)}},
       csv({"name", "quantity", "p", "n_lo", "n_hi", "formula", "source"}, rows));
  return kOk;
}

int cmd_entropy(const RunConfig& rc) {
  ClassSpec spec;
  Json extra = Json::object();
  if (rc.cls == "interval") {
    spec.kind = IntervalClass{Rational::parse(rc.length).value()};
  } else if (rc.cls == "paths") {
    spec.kind = GridPathClass{rc.mu, rc.r};
    const mpz_class bound = path_count_bound(rc.mu, rc.r, rc.n);
    const std::uint64_t log_bound = ceil_log2(bound);
    extra = {{"mu", rc.mu},
             {"r", rc.r},
             {"path_count_bound", bound.get_str()},
             {"log_path_count_bound", log_bound},
             {"trend_ratio", static_cast<double>(log_bound) / std::ldexp(1.0, static_cast<int>(rc.mu))},
             {"label", "trend check only"}};
  } else if (rc.cls == "stepball") {
    StepBallClass c;
    c.cells_log2 = rc.cells_log2;
    c.r = rc.r;
    c.p = parse_p_list(rc.p).front();
    c.value_bits = rc.value_bits;
    c.mu.assign(rc.n + 1, rc.mu);
    spec.kind = c;
  } else {
    throw UsageError("unknown class '" + rc.cls + "'");
  }
  const CoverResult res = covering_number(spec, rc.n);
  Json j = to_json(res);
  j["command"] = "entropy";
  j["class"] = rc.cls;
  j["n"] = rc.n;
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
  emit(rc, j,
       csv({"class", "n", "count", "eta", "method"},
           {{rc.cls, std::to_string(rc.n), std::to_string(res.count), std::to_string(res.eta), to_string(res.method)}}));
  return kOk;
}

// Config keys mirror the long flags; flags given on the command line win.
void apply_config(RunConfig& rc, const CLI::App& sub) {
  if (rc.config.empty()) return;
  std::ifstream in(rc.config);
  if (!in) throw Error(ErrorCode::Io, "cannot read config '" + rc.config + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError(std::string("malformed config: ") + e.what());
  }
  const auto given = [&](const std::string& flag) { return sub.count(flag) > 0; };
  const auto str = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const Json& v = it.value();
      static const std::map<std::string, std::string> flag_of = {
          {"p", "--p"},           {"n_max", "--n-max"}, {"m_cap", "--m-cap"}, {"seed", "--seed"},
          {"threads", "--threads"}, {"format", "--format"}, {"out", "--out"},    {"name", "--name"},
          {"params", "--param"},  {"function", "--function"}};
      const auto f = flag_of.find(k);
      if (f == flag_of.end()) throw UsageError("unknown config key '" + k + "'");
      if (given(f->second)) continue;
      if (k == "p") {
        rc.p.clear();
        if (v.is_array()) {
          for (const Json& x : v) rc.p.push_back(str(x));
        } else {
          rc.p.push_back(str(v));
        }
      } else if (k == "n_max") {
        rc.n_max = v.get<unsigned>();
      } else if (k == "m_cap") {
        rc.m_cap = v.get<unsigned>();
      } else if (k == "seed") {
        rc.seed = v.get<std::uint64_t>();
      } else if (k == "threads") {
        rc.threads = v.get<unsigned>();
      } else if (k == "format") {
        rc.format = v.get<std::string>();
      } else if (k == "out") {
        rc.out = v.get<std::string>();
      } else if (k == "name") {
        rc.name = v.get<std::string>();
      } else if (k == "params") {
        rc.params.clear();
        for (auto p = v.begin(); p != v.end(); ++p) rc.params.push_back(p.key() + "=" + str(p.value()));
      } else {
        rc.function_file = v.get<std::string>();
      }
    }
  } catch (const Json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  if (rc.format != "json" && rc.format != "csv") throw UsageError("format must be json or csv");
}

void add_common(CLI::App* sub, RunConfig& rc) {
  sub->add_option("--name", rc.name, "gallery function name");
  sub->add_option("--param", rc.params, "gallery parameter key=value (repeatable)");
  sub->add_option("--function", rc.function_file, "JSON file with a step, trig or grid function");
  sub->add_option("--p", rc.p, "exponent(s), e.g. 2 or 3/2 or 3/2,2,3");
  sub->add_option("--n-max", rc.n_max, "largest precision index n");
  sub->add_option("--m-cap", rc.m_cap, "largest resolution index m");
  sub->add_option("--seed", rc.seed, "random seed");
  sub->add_option("--threads", rc.threads, "worker threads")->check(CLI::Range(1u, 256u));
  sub->add_option("--format", rc.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", rc.out, "output path (default: standard output)");
  sub->add_option("--config", rc.config, "JSON config mirroring the flags");
}

}  // namespace

int dispatch(int argc, const char* const* argv) {
  RunConfig rc;
  CLI::App app{"Binary moduli and approximation rates on the circle"};
  app.require_subcommand(1);
  CLI::App* modulus = app.add_subcommand("modulus", "binary L^p modulus profile");
  CLI::App* rate = app.add_subcommand("rate", "Fourier, step or basis rate profile");
  CLI::App* verify = app.add_subcommand("verify", "equivalence fits and scaling checks");
  CLI::App* suite = app.add_subcommand("suite", "randomized inequality suites");
  CLI::App* gallery = app.add_subcommand("gallery", "list or describe gallery functions");
  CLI::App* entropy = app.add_subcommand("entropy", "covering numbers of small classes");
  for (CLI::App* sub : {modulus, rate, verify, suite, gallery, entropy}) add_common(sub, rc);
  modulus->add_option("--sup-grid", rc.sup_grid, "sup-norm modulus on [0;1] from a 2^G grid")->check(CLI::Range(1u, 28u));
  rate->add_option("--kind", rc.kind, "fourier, step, basis or degree")
      ->check(CLI::IsMember({"fourier", "step", "basis", "degree"}));
  rate->add_option("--basis", rc.basis, "trig, haar or chebyshev")->check(CLI::IsMember({"trig", "haar", "chebyshev"}));
  verify->add_option("--r-max", rc.r_max, "largest scaling exponent r");
  verify->add_option("--random", rc.random, "random step functions added to the corpus");
  suite->add_option("--trials", rc.trials, "trials per inequality");
  suite->add_option("--markov-trials", rc.markov_trials, "random polynomials for the Markov check");
  entropy->add_option("--class", rc.cls, "interval, paths or stepball")
      ->check(CLI::IsMember({"interval", "paths", "stepball"}));
  entropy->add_option("--n", rc.n, "precision index");
  entropy->add_option("--mu", rc.mu, "modulus value mu(n)");
  entropy->add_option("--r", rc.r, "radius exponent r");
  entropy->add_option("--length", rc.length, "interval length");
  entropy->add_option("--cells-log2", rc.cells_log2, "step ball cells, log2");
  entropy->add_option("--value-bits", rc.value_bits, "step ball value grid bits");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    CLI::App* sub = app.get_subcommands().front();
    rc.command = sub->get_name();
    apply_config(rc, *sub);
    if (sub == modulus) return cmd_profiles(rc, true);
    if (sub == rate) return cmd_profiles(rc, false);
    if (sub == verify) return cmd_verify(rc);
    if (sub == suite) return cmd_suite(rc);
    if (sub == gallery) return cmd_gallery(rc);
    return cmd_entropy(rc);
  } catch (const UsageError& e) {
    std::cerr << "modrate: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "modrate: " << to_string(e.code()) << ": " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::InvalidArgument:
      case ErrorCode::UnknownExample:
      case ErrorCode::NonDyadicBreakpoint:
      case ErrorCode::BasisNormMismatch:
      case ErrorCode::GridShiftMismatch:
        return kUsage;
      default:
        return kBudget;
    }
  } catch (const std::exception& e) {
    std::cerr << "modrate: " << e.what() << "\n";
    return kBudget;
  }
}

}  // namespace modrate::cli
