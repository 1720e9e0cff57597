#include "modrate/gallery.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "modrate/error.hpp"
#include "modrate/modulus.hpp"

namespace modrate {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

double pow2(int e) { return std::ldexp(1.0, e); }

// Least m with value(m) <= 2^-n; value must be nonincreasing in m.
unsigned least_m(const std::function<double(unsigned)>& value, unsigned n, unsigned cap = 62) {
  const double thr = pow2(-static_cast<int>(n)) * (1.0 + 1e-12);
  for (unsigned m = 0; m <= cap; ++m)
    if (value(m) <= thr) return m;
  return cap + 1;
}

std::int64_t parse_int(const ParamMap& params, const std::string& key, std::int64_t fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  const Rational r = Rational::parse(it->second);
  if (r.den != 1) throw Error(ErrorCode::InvalidArgument, "parameter '" + key + "' must be an integer");
  return r.num;
}

Rational parse_rational(const ParamMap& params, const std::string& key, Rational fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : Rational::parse(it->second);
}

void check_keys(const ParamMap& params, std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : params) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; }))
      throw Error(ErrorCode::InvalidArgument, "unknown parameter '" + k + "'");
  }
}

std::vector<double> norms_to_check() { return {1.5, 2.0, 3.0}; }

std::string fmt_p(double p) {
  if (p == 1.5) return "3/2";
  return std::to_string(static_cast<int>(p));
}

// Parseval tail sum_{|k| > 2^m} |c_k|^2 of a sparse polynomial.
std::function<double(unsigned)> parseval_tail(std::vector<TrigTerm> terms) {
  return [terms = std::move(terms)](unsigned m) {
    const double cut = pow2(static_cast<int>(std::min(m, 62u)));
    double s = 0.0;
    for (const TrigTerm& t : terms)
      if (std::fabs(static_cast<double>(t.k)) > cut) s += std::norm(t.c);
    return std::sqrt(s);
  };
}

OracleClaim rate_claim(std::string quantity, std::optional<double> p, unsigned n_lo, unsigned n_hi, std::string formula,
                       std::string source, std::function<double(unsigned)> residual) {
  OracleClaim c{std::move(quantity), p, n_lo, n_hi, std::move(formula), std::move(source), {}};
  c.value = [residual = std::move(residual)](unsigned n) { return static_cast<double>(least_m(residual, n)); };
  return c;
}

OracleClaim zero_claim(const std::string& quantity) {
  return {quantity, std::nullopt, 0, 64, "0", "closed form", [](unsigned) { return 0.0; }};
}

// Measure of cell j of K inside [a, b).
double overlap(const Rational& a, const Rational& b, std::size_t j, std::size_t K) {
  const double lo = std::max(a.value(), static_cast<double>(j) / static_cast<double>(K));
  const double hi = std::min(b.value(), static_cast<double>(j + 1) / static_cast<double>(K));
  return std::max(0.0, hi - lo) * static_cast<double>(K);
}

GalleryEntry make_constant(const ParamMap& params) {
  check_keys(params, {"c"});
  const double c = parse_rational(params, "c", {1, 1}).value();
  GalleryEntry e{"constant", params, PeriodicFunction::trig(0, {{0, c}}), {}, {}, [c](double) { return c; }};
  e.oracles = {zero_claim("modulus"), zero_claim("step"), zero_claim("fourier"), zero_claim("sup_modulus")};
  return e;
}

GalleryEntry make_harmonic(const ParamMap& params) {
  check_keys(params, {"k"});
  const std::int64_t k = parse_int(params, "k", 1);
  if (k == 0) return make_constant({});
  const double ak = std::fabs(static_cast<double>(k));
  GalleryEntry e{"harmonic", params, PeriodicFunction::trig(k < 0 ? -k : k, {{k, 1.0}}), {}, {}, {}};
  e.oracles.push_back({"diff_norm", std::nullopt, 0, 62, "2|sin(pi k 2^-n)|", "closed form",
                       [ak](unsigned n) { return 2.0 * std::fabs(std::sin(kPi * ak * pow2(-static_cast<int>(n)))); }});
  e.oracles.push_back(rate_claim("modulus", std::nullopt, 0, 40, "least m with 2 sin(pi min(|k| 2^-m, 1/2)) <= 2^-n",
                                 "closed form", [ak](unsigned m) {
                                   return 2.0 * std::sin(kPi * std::min(ak * pow2(-static_cast<int>(m)), 0.5));
                                 }));
  const double phi = static_cast<double>(ceil_log2(static_cast<std::uint64_t>(ak)));
  // ||e_k||_p = 1 already passes at n = 0.
  e.oracles.push_back({"fourier", std::nullopt, 0, 64, "0 at n = 0, ceil(log2 |k|) after", "closed form",
                       [phi](unsigned n) { return n == 0 ? 0.0 : phi; }});
  return e;
}

GalleryEntry make_indicator(const ParamMap& params) {
  check_keys(params, {"a", "b"});
  const Rational a = parse_rational(params, "a", {0, 1});
  const Rational b = parse_rational(params, "b", {1, 2});
  const auto sa = a.dyadic_scale();
  const auto sb = b.dyadic_scale();
  if (!sa || !sb) throw Error(ErrorCode::NonDyadicBreakpoint, "indicator endpoints must be dyadic rationals");
  if (!(a.value() >= 0.0 && a.value() < b.value() && b.value() <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "indicator needs 0 <= a < b <= 1");
  const unsigned s = std::max(*sa, *sb);
  if (s > 24) throw Error(ErrorCode::InvalidArgument, "indicator endpoints finer than 2^-24");
  const std::size_t K = std::size_t{1} << s;
  std::vector<Complex> v(K, 0.0);
  for (std::size_t j = 0; j < K; ++j) v[j] = overlap(a, b, j, K) > 0.5 ? 1.0 : 0.0;
  const double len = b.value() - a.value();
  const double da = a.value();
  const double db = b.value();
  GalleryEntry e{"indicator", params, PeriodicFunction::step(std::move(v)), {}, {}, [da, db](double x) {
                   return x >= da && x < db ? 1.0 : 0.0;
                 }};
  // |A delta (A + d)| = 2 min(d, len, 1 - len, 1 - d) for an arc A.
  const auto jump = [len](double d) { return 2.0 * std::min({d, len, 1.0 - len, 1.0 - d}); };
  for (double p : norms_to_check()) {
    e.oracles.push_back({"diff_norm", p, 0, 62, "(2 min(d, len, 1-len, 1-d))^(1/" + fmt_p(p) + ")", "closed form",
                         [jump, p](unsigned n) { return std::pow(jump(pow2(-static_cast<int>(n))), 1.0 / p); }});
    e.oracles.push_back(rate_claim("modulus", p, 0, 40, "least m with (2 min(2^-m, 1/2, len, 1-len))^(1/p) <= 2^-n",
                                   "closed form", [jump, p](unsigned m) {
                                     return std::pow(jump(std::min(pow2(-static_cast<int>(m)), 0.5)), 1.0 / p);
                                   }));
    // Best constant on a cell with a fraction t of ones leaves t(1-t)/(t^q + (1-t)^q)^(p-1), q = 1/(p-1).
    e.oracles.push_back(rate_claim("step", p, 0, 64, "per-cell two-value minimum", "closed form",
                                   [a, b, s, p](unsigned m) {
                                     if (m >= s) return 0.0;
                                     const std::size_t K = std::size_t{1} << m;
                                     const double q = 1.0 / (p - 1.0);
                                     double sum = 0.0;
                                     for (std::size_t j = 0; j < K; ++j) {
                                       const double t = overlap(a, b, j, K);
                                       if (t <= 0.0 || t >= 1.0) continue;
                                       sum += t * (1.0 - t) / std::pow(std::pow(t, q) + std::pow(1.0 - t, q), p - 1.0);
                                     }
                                     return std::pow(sum / static_cast<double>(K), 1.0 / p);
                                   }));
  }
  e.oracles.push_back(rate_claim("fourier", 2.0, 0, 8, "len(1-len) - sum_{0<|k|<=2^m} sin^2(pi k len)/(pi k)^2",
                                 "parseval tail", [len](unsigned m) {
                                   const std::size_t K = std::size_t{1} << std::min(m, 24u);
                                   double s = 0.0;
                                   for (std::size_t k = K; k >= 1; --k) {
                                     const double x = std::sin(kPi * static_cast<double>(k) * len) /
                                                      (kPi * static_cast<double>(k));
                                     s += 2.0 * x * x;
                                   }
                                   return std::sqrt(std::max(0.0, len * (1.0 - len) - s));
                                 }));
  return e;
}

GalleryEntry make_sawtooth(const ParamMap& params) {
  check_keys(params, {});
  AnalyticFunction a;
  a.evaluator = [](double t) { return Complex(t - 0.5, 0.0); };
  a.lipschitz = 1.0;
  a.singularities = {0.0};
  GalleryEntry e{"sawtooth", params, PeriodicFunction::analytic(std::move(a)), {}, {}, {}};
  e.oracles.push_back({"diff_norm", 2.0, 0, 62, "sqrt(d(1-d))", "closed form", [](unsigned n) {
                         const double d = pow2(-static_cast<int>(n));
                         return std::sqrt(d * (1.0 - d));
                       }});
  e.oracles.push_back(rate_claim("modulus", 2.0, 0, 8, "least m with sqrt(d(1-d)) <= 2^-n, d = min(2^-m, 1/2)",
                                 "closed form", [](unsigned m) {
                                   const double d = std::min(pow2(-static_cast<int>(m)), 0.5);
                                   return std::sqrt(d * (1.0 - d));
                                 }));
  e.oracles.push_back(rate_claim("fourier", 2.0, 0, 8, "1/12 - sum_{0<|k|<=2^m} 1/(2 pi k)^2", "parseval tail",
                                 [](unsigned m) {
                                   const std::size_t K = std::size_t{1} << std::min(m, 24u);
                                   double s = 0.0;
                                   for (std::size_t k = K; k >= 1; --k) {
                                     const double x = 2.0 * kPi * static_cast<double>(k);
                                     s += 2.0 / (x * x);
                                   }
                                   return std::sqrt(std::max(0.0, 1.0 / 12.0 - s));
                                 }));
  return e;
}

GalleryEntry make_holder(const ParamMap& params) {
  check_keys(params, {"alpha"});
  const double alpha = parse_rational(params, "alpha", {1, 2}).value();
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidArgument, "holder needs 0 < alpha <= 1");
  const auto g = [alpha](double t) { return std::pow(std::min(t, 1.0 - t), alpha); };
  AnalyticFunction a;
  a.evaluator = [g](double t) { return Complex(g(t), 0.0); };
  if (alpha == 1.0) a.lipschitz = 1.0;
  a.singularities = {0.0, 0.5};
  GalleryEntry e{"holder", params, PeriodicFunction::analytic(std::move(a)), {}, {"wrapped"}, g};
  e.oracles.push_back({"sup_modulus", std::nullopt, 0, 16, "ceil(n/alpha)", "closed form",
                       [alpha](unsigned n) { return std::ceil(static_cast<double>(n) / alpha - 1e-12); }});
  return e;
}

GalleryEntry make_log_h(const ParamMap& params) {
  check_keys(params, {});
  AnalyticFunction a;
  a.evaluator = [](double t) { return Complex(log_h(t), 0.0); };
  a.singularities = {0.0};
  GalleryEntry e{"log_h", params, PeriodicFunction::analytic(std::move(a)), {}, {"interval_only_sup_norm", "wrapped"},
                 [](double t) { return log_h(t); }};
  e.oracles.push_back({"sup_modulus", std::nullopt, 0, 4, "ceil((2^n - 1)/ln 2)", "closed form", [](unsigned n) {
                         return std::ceil((pow2(static_cast<int>(n)) - 1.0) / kLn2);
                       }});
  return e;
}

GalleryEntry make_log_h_iter(const ParamMap& params) {
  check_keys(params, {});
  AnalyticFunction a;
  a.evaluator = [](double t) { return Complex(log_h(log_h(t)), 0.0); };
  a.singularities = {0.0};
  GalleryEntry e{"log_h_iter", params, PeriodicFunction::analytic(std::move(a)),
                 {}, {"interval_only_sup_norm", "wrapped", "grid_oracle_only"}, [](double t) { return log_h(log_h(t)); }};
  e.oracles.push_back({"sup_modulus", std::nullopt, 0, 2, "ceil((e^(2^n - 1) - 1)/ln 2)", "dense grid", [](unsigned n) {
                         return std::ceil(std::expm1(pow2(static_cast<int>(n)) - 1.0) / kLn2);
                       }});
  return e;
}

GalleryEntry make_log_h_derivative(const ParamMap& params) {
  check_keys(params, {"t_min"});
  const double t_min = parse_rational(params, "t_min", {1, 1024}).value();
  if (!(t_min > 0.0 && t_min < 1.0)) throw Error(ErrorCode::InvalidArgument, "log_h_derivative needs 0 < t_min < 1");
  const auto g = [t_min](double t) {
    if (t < t_min) return 0.0;
    const double l = 1.0 - std::log(t);
    return 1.0 / (t * l * l);
  };
  AnalyticFunction a;
  a.evaluator = [g](double t) { return Complex(g(t), 0.0); };
  // |h''(t)| <= (t (1 - ln t))^-2, decreasing in t.
  const double w = t_min * (1.0 - std::log(t_min));
  a.lipschitz = 1.0 / (w * w);
  a.singularities = {0.0, t_min};
  GalleryEntry e{"log_h_derivative", params, PeriodicFunction::analytic(std::move(a)), {}, {"l1_only"}, g};
  e.oracles.push_back({"norm", 1.0, 0, 0, "1 - h(t_min)", "closed form", [t_min](unsigned) { return 1.0 - log_h(t_min); }});
  return e;
}

GalleryEntry make_lacunary(const ParamMap& params, bool doubly) {
  check_keys(params, {"J"});
  const std::int64_t J = parse_int(params, "J", doubly ? 5 : 24);
  const std::int64_t limit = doubly ? 5 : 62;
  if (J < 0 || J > limit)
    throw Error(ErrorCode::InvalidArgument, "J must be in 0.." + std::to_string(limit));
  std::vector<TrigTerm> terms;
  for (std::int64_t k = 0; k <= J; ++k) {
    const std::int64_t freq = doubly ? (std::int64_t{1} << (std::int64_t{1} << k)) : (std::int64_t{1} << k);
    terms.push_back({freq, pow2(-static_cast<int>(k))});
  }
  const std::int64_t degree = terms.back().k;
  GalleryEntry e{doubly ? "doubly_lacunary" : "lacunary", params, PeriodicFunction::trig(degree, terms), {}, {}, {}};
  if (!doubly) e.flags.push_back("fourier_rate_linear_not_exponential");
  e.oracles.push_back(rate_claim("fourier", 2.0, 0, doubly ? 5 : 10, "least m with sum_{2^k > 2^m} 4^-k <= 4^-n",
                                 "parseval tail", parseval_tail(terms)));
  return e;
}

GalleryEntry make_chebyshev(const ParamMap& params) {
  check_keys(params, {"D"});
  const std::int64_t D = parse_int(params, "D", 2);
  if (D < 0 || D > 4096) throw Error(ErrorCode::InvalidArgument, "D must be in 0..4096");
  const auto g = [D](double x) {
    return std::cos(static_cast<double>(D) * std::acos(std::clamp(2.0 * x - 1.0, -1.0, 1.0)));
  };
  AnalyticFunction a;
  a.evaluator = [g](double t) { return Complex(g(t), 0.0); };
  a.lipschitz = 2.0 * static_cast<double>(D * D);
  if (D % 2 == 1) a.singularities = {0.0};
  GalleryEntry e{"chebyshev_poly", params, PeriodicFunction::analytic(std::move(a)), {}, {"markov_witness"}, g};
  const double d2 = static_cast<double>(D * D);
  e.oracles.push_back({"markov", std::nullopt, 0, 0, "max |T_D'| on [-1,1] = D^2", "closed form",
                       [d2](unsigned) { return d2; }});
  return e;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  const auto fail = [&] { return Error(ErrorCode::InvalidArgument, "not a rational number: '" + text + "'"); };
  if (text.empty()) throw fail();
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    ++i;
  }
  const auto digits = [&](std::int64_t& out, std::int64_t& scale, bool fractional) {
    const std::size_t start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      if (out > (std::numeric_limits<std::int64_t>::max() - 9) / 10) throw fail();
      out = out * 10 + (text[i] - '0');
      if (fractional) {
        if (scale > std::numeric_limits<std::int64_t>::max() / 10) throw fail();
        scale *= 10;
      }
      ++i;
    }
    return i > start;
  };
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool any = digits(num, den, false);
  if (i < text.size() && text[i] == '.') {
    ++i;
    any = digits(num, den, true) || any;
  } else if (i < text.size() && text[i] == '/') {
    ++i;
    std::int64_t d = 0;
    std::int64_t unused = 1;
    if (!any || !digits(d, unused, false) || d == 0) throw fail();
    den = d;
  }
  if (!any || i != text.size()) throw fail();
  const std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return {negative ? -num : num, den};
}

std::optional<unsigned> Rational::dyadic_scale() const noexcept {
  if (den <= 0 || !std::has_single_bit(static_cast<std::uint64_t>(den))) return std::nullopt;
  return static_cast<unsigned>(std::countr_zero(static_cast<std::uint64_t>(den)));
}

const OracleClaim* GalleryEntry::oracle(const std::string& quantity) const {
  for (const OracleClaim& c : oracles)
    if (c.quantity == quantity) return &c;
  return nullptr;
}

bool GalleryEntry::has_flag(const std::string& f) const { return std::find(flags.begin(), flags.end(), f) != flags.end(); }

double log_h(double t) noexcept { return t <= 0.0 ? 0.0 : 1.0 / (1.0 - std::log(t)); }

GalleryEntry make_example(const std::string& name, const ParamMap& params) {
  if (name == "constant") return make_constant(params);
  if (name == "harmonic") return make_harmonic(params);
  if (name == "indicator") return make_indicator(params);
  if (name == "sawtooth") return make_sawtooth(params);
  if (name == "holder") return make_holder(params);
  if (name == "log_h") return make_log_h(params);
  if (name == "log_h_iter") return make_log_h_iter(params);
  if (name == "log_h_derivative") return make_log_h_derivative(params);
  if (name == "lacunary") return make_lacunary(params, false);
  if (name == "doubly_lacunary") return make_lacunary(params, true);
  if (name == "chebyshev_poly") return make_chebyshev(params);
  throw Error(ErrorCode::UnknownExample, "unknown example '" + name + "'");
}

std::vector<ExampleInfo> list_examples() {
  return {
      {"constant", "c=1", "modulus, step and fourier rates are 0"},
      {"harmonic", "k=1", "diff norm 2|sin(pi k d)|; fourier rate ceil(log2 |k|) for n >= 1"},
      {"indicator", "a=0 b=1/2 (dyadic)", "diff norm, modulus, step and L2 fourier rates in closed form"},
      {"sawtooth", "", "L2 diff norm sqrt(d(1-d)); L2 fourier tail"},
      {"holder", "alpha=1/2", "sup modulus ceil(n/alpha)"},
      {"log_h", "", "sup modulus ceil((2^n-1)/ln 2) on [0;1]"},
      {"log_h_iter", "", "sup modulus ceil((e^(2^n-1)-1)/ln 2), grid checked"},
      {"log_h_derivative", "t_min=1/1024", "L1 norm 1 - h(t_min)"},
      {"lacunary", "J=24", "L2 fourier rate from the Parseval tail"},
      {"doubly_lacunary", "J=5", "L2 fourier rate from the Parseval tail"},
      {"chebyshev_poly", "D=2", "Markov equality max |T_D'| = D^2"},
  };
}

}  // namespace modrate
