#include "modrate/multidim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "modrate/detail/fft.hpp"
#include "modrate/detail/sampled.hpp"
#include "modrate/detail/spectrum.hpp"
#include "modrate/error.hpp"
#include "modrate/step.hpp"

namespace modrate {
namespace {

constexpr double kPi = std::numbers::pi;

double pow2(int e) { return std::ldexp(1.0, e); }

struct Cells {
  std::size_t K = 0;
  const std::vector<Complex>* values = nullptr;
};

std::optional<Cells> cells_of(const PeriodicFunction2D& f) {
  if (const auto* s = f.as_step()) return Cells{s->K, &s->values};
  if (const auto* g = f.as_grid()) return Cells{std::size_t{1} << g->g, &g->samples};
  return std::nullopt;
}

std::size_t side(std::int64_t K) { return static_cast<std::size_t>(2 * K + 1); }

// D^p(a/K, b/K) for whole-cell shifts.
class ShiftTable {
 public:
  ShiftTable(const Cells& c, double p) : K_(c.K), e_(c.K * c.K, 0.0) {
    const std::size_t K = c.K;
    const auto& v = *c.values;
    const double inv = 1.0 / static_cast<double>(K * K);
    if (p == 2.0 && K >= 16) {
      std::vector<Complex> spec = v;
      detail::fft2(spec, K, K, -1);
      double energy = 0.0;
      for (Complex x : v) energy += std::norm(x);
      for (Complex& x : spec) x = std::norm(x);
      detail::fft2(spec, K, K, +1);
      for (std::size_t i = 0; i < K * K; ++i) {
        const double corr = spec[i].real() * inv;
        e_[i] = std::max(0.0, 2.0 * energy - 2.0 * corr) * inv;
      }
      e_[0] = 0.0;
      return;
    }
    const double work = static_cast<double>(K) * static_cast<double>(K) * static_cast<double>(K) * static_cast<double>(K);
    if (work > std::ldexp(1.0, 28)) throw Error(ErrorCode::BudgetExceeded, "2-D shift table above budget");
    for (std::size_t a = 0; a < K; ++a) {
      for (std::size_t b = 0; b < K; ++b) {
        double s = 0.0;
        for (std::size_t i = 0; i < K; ++i)
          for (std::size_t j = 0; j < K; ++j)
            s += std::pow(std::abs(v[i * K + j] - v[((i + a) % K) * K + (j + b) % K]), p);
        e_[a * K + b] = s * inv;
      }
    }
  }

  double at(std::int64_t a, std::int64_t b) const {
    const auto k = static_cast<std::int64_t>(K_);
    const auto ia = static_cast<std::size_t>(((a % k) + k) % k);
    const auto ib = static_cast<std::size_t>(((b % k) + k) % k);
    return e_[ia * K_ + ib];
  }

  // D^p is bilinear between whole-cell shifts.
  double interpolate(double x, double y) const {
    const double kx = x * static_cast<double>(K_);
    const double ky = y * static_cast<double>(K_);
    const double fa = std::floor(kx);
    const double fb = std::floor(ky);
    const double s = kx - fa;
    const double t = ky - fb;
    const auto a = static_cast<std::int64_t>(fa);
    const auto b = static_cast<std::int64_t>(fb);
    return (1 - s) * (1 - t) * at(a, b) + s * (1 - t) * at(a + 1, b) + (1 - s) * t * at(a, b + 1) +
           s * t * at(a + 1, b + 1);
  }

  // A bilinear function peaks at a corner of every sub-rectangle of the box.
  double sup(double w) const {
    std::vector<double> coords{-w, w};
    const double k = static_cast<double>(K_);
    for (auto j = static_cast<std::int64_t>(std::ceil(-w * k)); static_cast<double>(j) <= w * k; ++j)
      coords.push_back(static_cast<double>(j) / k);
    double best = 0.0;
    for (double x : coords)
      for (double y : coords) best = std::max(best, interpolate(x, y));
    return best;
  }

 private:
  std::size_t K_;
  std::vector<double> e_;
};

double trig_energy(const Trig2D& t, double w1, double w2) {
  double s = 0.0;
  const std::int64_t K = t.K;
  for (std::int64_t k1 = -K; k1 <= K; ++k1)
    for (std::int64_t k2 = -K; k2 <= K; ++k2)
      s += std::norm(t.at(k1, k2)) * (w1 * static_cast<double>(k1 * k1) + w2 * static_cast<double>(k2 * k2));
  return s;
}

// Samples of f on the N x N grid of cell midpoints.
std::vector<Complex> trig_on_grid(const Trig2D& t, std::size_t N, std::int64_t skip_radius) {
  std::vector<Complex> bins(N * N, 0.0);
  const auto n = static_cast<std::int64_t>(N);
  const double dn = static_cast<double>(N);
  for (std::int64_t k1 = -t.K; k1 <= t.K; ++k1) {
    for (std::int64_t k2 = -t.K; k2 <= t.K; ++k2) {
      if (std::max(std::abs(k1), std::abs(k2)) <= skip_radius) continue;
      const Complex c = t.at(k1, k2);
      if (c == Complex{}) continue;
      const Complex phase = std::polar(1.0, kPi * static_cast<double>(k1 + k2) / dn);
      bins[static_cast<std::size_t>(((k1 % n) + n) % n) * N + static_cast<std::size_t>(((k2 % n) + n) % n)] +=
          c * phase;
    }
  }
  detail::fft2(bins, N, N, +1);
  return bins;
}

double mean_power(const std::vector<Complex>& v, double p) {
  double s = 0.0;
  for (Complex x : v) s += std::pow(std::abs(x), p);
  return s / static_cast<double>(v.size());
}

NormEstimate shift_sup_impl(const PeriodicFunction2D& f, double p, unsigned m, std::optional<double> thr) {
  const double w = std::min(pow2(-static_cast<int>(std::min(m, 1000u))), 0.5);
  if (auto c = cells_of(f)) {
    const ShiftTable table(*c, p);
    return {std::pow(table.sup(w), 1.0 / p), 0.0, true};
  }
  const Trig2D& t = *f.as_trig();
  if (p != 2.0) {
    const std::size_t N = std::clamp<std::size_t>(detail::next_pow2(8 * side(t.K)), 64, 512);
    std::vector<Complex> samples = trig_on_grid(t, N, -1);
    const ShiftTable table({N, &samples}, p);
    return {std::pow(table.sup(w), 1.0 / p), 0.0, false};
  }
  // L^2 diff norm: sum |c_k|^2 4 sin^2(pi k.d), Lipschitz in d with ||d_x f|| + ||d_y f||.
  const double lip = 2.0 * kPi * (std::sqrt(trig_energy(t, 1.0, 0.0)) + std::sqrt(trig_energy(t, 0.0, 1.0)));
  const auto eval = [&](double d1, double d2) {
    double s = 0.0;
    for (std::int64_t k1 = -t.K; k1 <= t.K; ++k1)
      for (std::int64_t k2 = -t.K; k2 <= t.K; ++k2) {
        const double a = std::norm(t.at(k1, k2));
        if (a == 0.0) continue;
        const double sn = std::sin(kPi * (static_cast<double>(k1) * d1 + static_cast<double>(k2) * d2));
        s += 4.0 * a * sn * sn;
      }
    return std::sqrt(s);
  };
  NormEstimate best{0.0, 0.0, true};
  for (unsigned s = 4; s <= 9; ++s) {
    const std::size_t pts = (std::size_t{1} << s) + 1;
    const double h = 2.0 * w / static_cast<double>(pts - 1);
    double mx = 0.0;
    for (std::size_t i = 0; i < pts; ++i)
      for (std::size_t j = 0; j < pts; ++j) mx = std::max(mx, eval(-w + h * static_cast<double>(i), -w + h * static_cast<double>(j)));
    best = {mx, lip * h / 2.0, true};
    if (!thr || compare(best, *thr) != Verdict::Unknown) break;
  }
  return best;
}

std::size_t quadrature_side(std::size_t K, std::size_t target) {
  const std::size_t mult = detail::next_pow2((target + K - 1) / K);
  return K * std::max<std::size_t>(mult, 1);
}

}  // namespace

Complex Trig2D::at(std::int64_t k1, std::int64_t k2) const {
  if (std::abs(k1) > K || std::abs(k2) > K) return {};
  return coeffs[static_cast<std::size_t>(k1 + K) * side(K) + static_cast<std::size_t>(k2 + K)];
}

PeriodicFunction2D PeriodicFunction2D::step(std::size_t K, std::vector<Complex> values) {
  if (K == 0 || values.size() != K * K) throw Error(ErrorCode::InvalidArgument, "Step2D needs K*K values");
  return PeriodicFunction2D(Step2D{K, std::move(values)});
}

PeriodicFunction2D PeriodicFunction2D::trig(std::int64_t K, std::vector<Complex> coeffs) {
  if (K < 0 || coeffs.size() != side(K) * side(K)) throw Error(ErrorCode::InvalidArgument, "Trig2D needs (2K+1)^2 coefficients");
  return PeriodicFunction2D(Trig2D{K, std::move(coeffs)});
}

PeriodicFunction2D PeriodicFunction2D::grid(unsigned g, std::vector<Complex> samples) {
  if (g > 12 || samples.size() != (std::size_t{1} << (2 * g)))
    throw Error(ErrorCode::InvalidArgument, "Grid2D needs 4^g samples with g <= 12");
  return PeriodicFunction2D(Grid2D{g, std::move(samples)});
}

PeriodicFunction2D PeriodicFunction2D::tensor(const PeriodicFunction& g, const PeriodicFunction& h) {
  const auto* sg = g.as_step();
  const auto* sh = h.as_step();
  if (sg && sh) {
    const std::size_t K = std::lcm(sg->cells(), sh->cells());
    const StepFunction a = refine(*sg, K);
    const StepFunction b = refine(*sh, K);
    std::vector<Complex> v(K * K);
    for (std::size_t i = 0; i < K; ++i)
      for (std::size_t j = 0; j < K; ++j) v[i * K + j] = a.values[i] * b.values[j];
    return step(K, std::move(v));
  }
  const auto* tg = g.as_trig();
  const auto* th = h.as_trig();
  if (tg && th) {
    const std::int64_t K = std::max(tg->degree, th->degree);
    std::vector<Complex> c(side(K) * side(K), 0.0);
    for (const TrigTerm& x : tg->terms)
      for (const TrigTerm& y : th->terms)
        c[static_cast<std::size_t>(x.k + K) * side(K) + static_cast<std::size_t>(y.k + K)] = x.c * y.c;
    return trig(K, std::move(c));
  }
  throw Error(ErrorCode::InvalidArgument, "tensor needs two step functions or two trigonometric polynomials");
}

Trig2D fourier_coeffs_2d(const PeriodicFunction2D& f, std::int64_t M) {
  if (M < 0 || M > 2048) throw Error(ErrorCode::InvalidArgument, "cube radius must be in 0..2048");
  Trig2D out{M, std::vector<Complex>(side(M) * side(M), 0.0)};
  if (const auto* t = f.as_trig()) {
    for (std::int64_t k1 = -M; k1 <= M; ++k1)
      for (std::int64_t k2 = -M; k2 <= M; ++k2)
        out.coeffs[static_cast<std::size_t>(k1 + M) * side(M) + static_cast<std::size_t>(k2 + M)] = t->at(k1, k2);
    return out;
  }
  const Cells c = *cells_of(f);
  std::vector<Complex> dft = *c.values;
  detail::fft2(dft, c.K, c.K, -1);
  const auto K = static_cast<std::int64_t>(c.K);
  // Per-axis factor of one cell: (1 - e^{-2 pi i k / K}) / (2 pi i k), 1/K at k = 0.
  const auto g = [K](std::int64_t k) -> Complex {
    if (k == 0) return 1.0 / static_cast<double>(K);
    if (k % K == 0) return {};
    const double s = std::sin(kPi * static_cast<double>(k) / static_cast<double>(K));
    return std::polar(s / (kPi * static_cast<double>(k)), -kPi * static_cast<double>(k) / static_cast<double>(K));
  };
  for (std::int64_t k1 = -M; k1 <= M; ++k1)
    for (std::int64_t k2 = -M; k2 <= M; ++k2) {
      const auto r1 = static_cast<std::size_t>(((k1 % K) + K) % K);
      const auto r2 = static_cast<std::size_t>(((k2 % K) + K) % K);
      out.coeffs[static_cast<std::size_t>(k1 + M) * side(M) + static_cast<std::size_t>(k2 + M)] =
          dft[r1 * c.K + r2] * g(k1) * g(k2);
    }
  return out;
}

NormEstimate shift_sup_2d(const PeriodicFunction2D& f, double p, unsigned m, const SearchConfig&) {
  require_rate_p(p);
  return shift_sup_impl(f, p, m, std::nullopt);
}

NormEstimate fourier_residual_2d(const PeriodicFunction2D& f, double p, unsigned m, const SearchConfig& cfg) {
  require_rate_p(p);
  if (m > 40) throw Error(ErrorCode::BudgetExceeded, "cube radius beyond 2^40");
  const auto M = static_cast<std::int64_t>(1) << m;
  if (const auto* t = f.as_trig()) {
    if (M >= t->K) return {0.0, 0.0, true};
    if (p == 2.0) {
      double s = 0.0;
      for (std::int64_t k1 = -t->K; k1 <= t->K; ++k1)
        for (std::int64_t k2 = -t->K; k2 <= t->K; ++k2)
          if (std::max(std::abs(k1), std::abs(k2)) > M) s += std::norm(t->at(k1, k2));
      return {std::sqrt(s), 0.0, true};
    }
    const std::size_t N = detail::next_pow2(4 * side(t->K));
    if (N * N > cfg.max_samples) throw Error(ErrorCode::BudgetExceeded, "2-D quadrature above budget");
    return {std::pow(mean_power(trig_on_grid(*t, N, M), p), 1.0 / p), 0.0, false};
  }
  const Cells c = *cells_of(f);
  const auto K = static_cast<std::int64_t>(c.K);
  if (p == 2.0) {
    std::vector<Complex> dft = *c.values;
    detail::fft2(dft, c.K, c.K, -1);
    // Tail of |g_k|^2 over k = r (mod K), |k| > M; every residue class carries 1/K^2 in total.
    std::vector<double> tail(c.K, 0.0);
    for (std::int64_t r = 1; r < K; ++r) {
      const double s = std::sin(kPi * static_cast<double>(r) / static_cast<double>(K));
      tail[static_cast<std::size_t>(r)] =
          s * s / (kPi * kPi) * (detail::residue_tail(r, K, M) + detail::residue_tail(K - r, K, M));
    }
    const double B = 1.0 / static_cast<double>(K * K);
    double s = 0.0;
    for (std::size_t r1 = 0; r1 < c.K; ++r1)
      for (std::size_t r2 = 0; r2 < c.K; ++r2) {
        const double t1 = tail[r1];
        const double t2 = tail[r2];
        s += std::norm(dft[r1 * c.K + r2]) * (B * t2 + t1 * (B - t2));
      }
    return {std::sqrt(s), 0.0, true};
  }
  const std::size_t N = quadrature_side(c.K, 4 * side(M));
  if (N * N > cfg.max_samples) throw Error(ErrorCode::BudgetExceeded, "2-D quadrature above budget");
  std::vector<Complex> partial = trig_on_grid(fourier_coeffs_2d(f, M), N, -1);
  const std::size_t per = N / c.K;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) partial[i * N + j] = (*c.values)[(i / per) * c.K + j / per] - partial[i * N + j];
  return {std::pow(mean_power(partial, p), 1.0 / p), 0.0, false};
}

NormEstimate best_step_error_2d(const PeriodicFunction2D& f, double p, unsigned m) {
  require_rate_p(p);
  const auto c = cells_of(f);
  if (!c) throw Error(ErrorCode::InvalidArgument, "2-D step rate needs a cell representation");
  if (m > 20) throw Error(ErrorCode::BudgetExceeded, "cube count beyond 2^20 per axis");
  const std::size_t C = std::size_t{1} << m;
  if (C % c->K == 0) return {0.0, 0.0, true};
  const std::size_t L = std::lcm(C, c->K);
  if (L * L > (std::size_t{1} << 24)) throw Error(ErrorCode::BudgetExceeded, "2-D refinement above budget");
  const std::size_t per = L / C;
  const std::size_t fine = L / c->K;
  std::vector<Complex> block(per * per);
  double upper = 0.0;
  double lower = 0.0;
  for (std::size_t I = 0; I < C; ++I)
    for (std::size_t J = 0; J < C; ++J) {
      for (std::size_t i = 0; i < per; ++i)
        for (std::size_t j = 0; j < per; ++j) {
          const std::size_t x = (I * per + i) / fine;
          const std::size_t y = (J * per + j) / fine;
          block[i * per + j] = (*c->values)[x * c->K + y];
        }
      const detail::CellMinimum cm = detail::minimize_cell(block.data(), block.size(), p);
      upper += cm.upper;
      lower += cm.lower;
    }
  const double cells = static_cast<double>(C * C);
  const double hi = std::pow(upper / cells, 1.0 / p);
  const double lo = std::pow(lower / cells, 1.0 / p);
  return {hi, hi - lo, true};
}

RateProfile lp_modulus_2d(const PeriodicFunction2D& f, double p, const SearchConfig& cfg) {
  require_rate_p(p);
  detail::SearchOptions opt;
  opt.kind = "modulus";
  opt.p = p;
  RateProfile out = detail::search_profile([&](unsigned m, double thr) { return shift_sup_impl(f, p, m, thr); }, cfg, opt);
  out.flags.push_back("dim2");
  return out;
}

RateProfile fourier_rate_2d(const PeriodicFunction2D& f, double p, const SearchConfig& cfg) {
  require_rate_p(p);
  detail::SearchOptions opt;
  opt.kind = "fourier";
  opt.p = p;
  opt.monotone = p == 2.0;
  RateProfile out = detail::search_profile([&](unsigned m, double) { return fourier_residual_2d(f, p, m, cfg); }, cfg, opt);
  out.flags.push_back("dim2");
  return out;
}

RateProfile step_rate_2d(const PeriodicFunction2D& f, double p, const SearchConfig& cfg) {
  require_rate_p(p);
  if (!cells_of(f)) throw Error(ErrorCode::InvalidArgument, "2-D step rate needs a cell representation");
  detail::SearchOptions opt;
  opt.kind = "step";
  opt.p = p;
  RateProfile out = detail::search_profile([&](unsigned m, double) { return best_step_error_2d(f, p, m); }, cfg, opt);
  out.flags.push_back("dim2");
  return out;
}

}  // namespace modrate
