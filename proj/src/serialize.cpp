#include "modrate/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "modrate/error.hpp"

namespace modrate {
namespace {

Json complex_json(Complex c) { return Json::array({c.real(), c.imag()}); }

Complex complex_from(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::InvalidArgument, "complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json number_json(double x) {
  if (std::isfinite(x)) return x;
  return format_number(x);
}

std::vector<Complex> complex_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array()) throw Error(ErrorCode::InvalidArgument, std::string("missing array '") + key + "'");
  std::vector<Complex> out;
  for (const Json& x : j[key]) out.push_back(complex_from(x));
  return out;
}

void dump(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        dump(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      const bool flat = std::all_of(j.begin(), j.end(), [](const Json& x) { return x.is_primitive(); });
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const Json& x : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        dump(x, out, depth + 1);
      }
      out += flat ? "]" : "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Json to_json(const RateProfile& profile) {
  Json entries = Json::array();
  for (const RateEntry& e : profile.entries) entries.push_back(Json::array({e.n, e.m, to_string(e.kind)}));
  return {{"kind", profile.kind},
          {"p", number_json(profile.p)},
          {"cap", profile.cap},
          {"entries", entries},
          {"flags", profile.flags}};
}

RateProfile profile_from_json(const Json& j) {
  RateProfile p;
  p.kind = j.at("kind").get<std::string>();
  const Json& pj = j.at("p");
  p.p = pj.is_string() ? std::stod(pj.get<std::string>()) : pj.get<double>();
  p.cap = j.value("cap", 64u);
  for (const Json& e : j.at("entries"))
    p.entries.push_back({e.at(0).get<unsigned>(), e.at(1).get<unsigned>(), entry_kind_from_string(e.at(2).get<std::string>())});
  if (j.contains("flags")) p.flags = j["flags"].get<std::vector<std::string>>();
  return p;
}

Json to_json(const PeriodicFunction& f) {
  if (const auto* s = f.as_step()) {
    Json v = Json::array();
    for (Complex c : s->values) v.push_back(complex_json(c));
    return {{"kind", "step"}, {"values", v}};
  }
  if (const auto* t = f.as_trig()) {
    Json terms = Json::array();
    for (const TrigTerm& term : t->terms) terms.push_back(Json::array({term.k, complex_json(term.c)}));
    return {{"kind", "trig"}, {"degree", t->degree}, {"terms", terms}};
  }
  if (const auto* g = f.as_grid()) {
    Json v = Json::array();
    for (Complex c : g->samples) v.push_back(complex_json(c));
    return {{"kind", "grid"}, {"samples", v}};
  }
  throw Error(ErrorCode::InvalidArgument, "analytic functions are not serializable");
}

PeriodicFunction function_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind")) throw Error(ErrorCode::InvalidArgument, "function JSON needs a 'kind'");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "step") return PeriodicFunction::step(complex_list(j, "values"));
  if (kind == "grid") return PeriodicFunction::grid(complex_list(j, "samples"));
  if (kind == "trig") {
    if (j.contains("coeffs")) return PeriodicFunction::trig_dense(complex_list(j, "coeffs"));
    std::vector<TrigTerm> terms;
    std::int64_t degree = 0;
    for (const Json& t : j.at("terms")) {
      terms.push_back({t.at(0).get<std::int64_t>(), complex_from(t.at(1))});
      degree = std::max(degree, std::abs(terms.back().k));
    }
    return PeriodicFunction::trig(j.value("degree", degree), std::move(terms));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown function kind '" + kind + "'");
}

Json to_json(const FittedConstant& c) {
  return {{"inequality", c.inequality}, {"status", c.status}, {"a", c.a}, {"b", c.b}, {"pairs", c.pairs}};
}

Json to_json(const EquivalenceReport& r) {
  Json fits = Json::array();
  for (const FittedConstant& f : r.fits) fits.push_back(to_json(f));
  Json violations = Json::array();
  for (const Violation& v : r.violations)
    violations.push_back({{"inequality", v.inequality}, {"n", v.n}, {"detail", v.detail}});
  return {{"function", r.function},
          {"p", number_json(r.p)},
          {"profiles", {{"mu", to_json(r.profiles.mu)}, {"sigma", to_json(r.profiles.sigma)}, {"phi", to_json(r.profiles.phi)}}},
          {"fits", fits},
          {"violations", violations},
          {"pass", r.pass()}};
}

Json to_json(const ScalingReport& r) {
  return {{"function", r.function}, {"r", r.r},           {"p", number_json(r.p)},
          {"compared", r.compared}, {"mismatches", r.mismatches}, {"pass", r.pass()}};
}

Json to_json(const InequalityReport& r) {
  Json j = {{"id", r.id},
            {"trials", r.trials},
            {"max_relative_violation", number_json(r.max_relative_violation)},
            {"tolerance", number_json(r.tolerance)},
            {"pass", r.pass},
            {"exact_trials", r.exact_trials},
            {"quadrature_trials", r.quadrature_trials}};
  if (r.fitted_constant) j["fitted_constant"] = number_json(*r.fitted_constant);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json to_json(const CoverResult& r) {
  return {{"count", r.count}, {"eta", r.eta}, {"method", to_string(r.method)}, {"elements", r.elements}, {"note", r.note}};
}

Json to_json(const GalleryEntry& e) {
  Json oracles = Json::array();
  for (const OracleClaim& c : e.oracles) {
    Json o = {{"quantity", c.quantity}, {"n_lo", c.n_lo}, {"n_hi", c.n_hi}, {"formula", c.formula}, {"source", c.source}};
    o["p"] = c.p ? number_json(*c.p) : Json("inf");
    oracles.push_back(o);
  }
  Json j = {{"name", e.name}, {"params", e.params}, {"oracles", oracles}, {"flags", e.flags}};
  if (e.function.representation() != Representation::Analytic) j["function"] = to_json(e.function);
  return j;
}

std::string canonical_dump(const Json& j) {
  std::string out;
  dump(j, out, 0);
  out += "\n";
  return out;
}

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  const auto field = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + "\"";
  };
  std::ostringstream out;
  const auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << field(r[i]);
    out << "\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out.str();
}

void write_output(const std::string& content, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw Error(ErrorCode::Io, "cannot write to standard output");
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::Io, "cannot open '" + path + "' for writing");
  f << content;
  f.close();
  if (!f) throw Error(ErrorCode::Io, "cannot write '" + path + "'");
}

}  // namespace modrate
