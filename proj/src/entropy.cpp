#include "modrate/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

#include "modrate/error.hpp"
#include "modrate/modulus.hpp"

namespace modrate {

const char* to_string(CoverMethod m) noexcept { return m == CoverMethod::Exact ? "exact" : "greedy_upper"; }

std::uint64_t eta_from_width(std::uint64_t width) noexcept { return ceil_log2(width); }

mpz_class path_count_bound(unsigned mu, unsigned r, unsigned n) {
  if (mu > 24 || r + n > 60) throw Error(ErrorCode::InvalidArgument, "path_count_bound arguments too large");
  mpz_class count = (mpz_class(1) << (r + n + 1)) + 1;
  mpz_class steps;
  mpz_ui_pow_ui(steps.get_mpz_t(), 3, (1ul << mu) - 1);
  return count * steps;
}

std::uint64_t ceil_log2(const mpz_class& x) {
  if (x <= 1) return 0;
  const mpz_class below = x - 1;
  return mpz_sizeinbase(below.get_mpz_t(), 2);
}

namespace {

using Bits = std::vector<std::uint64_t>;

std::size_t popcount_and(const Bits& a, const Bits& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size(); ++i) c += static_cast<std::size_t>(std::popcount(a[i] & b[i]));
  return c;
}

std::size_t popcount(const Bits& a) {
  std::size_t c = 0;
  for (std::uint64_t w : a) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool test(const Bits& a, std::size_t i) { return (a[i / 64] >> (i % 64)) & 1u; }

// Ball membership table from a symmetric predicate.
std::vector<Bits> tabulate(std::size_t count, const std::function<bool(std::size_t, std::size_t)>& within) {
  const std::size_t words = (count + 63) / 64;
  std::vector<Bits> adj(count, Bits(words, 0));
  for (std::size_t i = 0; i < count; ++i) {
    adj[i][i / 64] |= std::uint64_t{1} << (i % 64);
    for (std::size_t j = i + 1; j < count; ++j) {
      if (within(i, j)) {
        adj[i][j / 64] |= std::uint64_t{1} << (j % 64);
        adj[j][i / 64] |= std::uint64_t{1} << (i % 64);
      }
    }
  }
  return adj;
}

std::uint64_t greedy_cover(const std::vector<Bits>& adj) {
  const std::size_t count = adj.size();
  Bits uncovered((count + 63) / 64, 0);
  for (std::size_t i = 0; i < count; ++i) uncovered[i / 64] |= std::uint64_t{1} << (i % 64);
  std::uint64_t used = 0;
  while (popcount(uncovered) > 0) {
    std::size_t best = 0;
    std::size_t best_gain = 0;
    for (std::size_t c = 0; c < count; ++c) {
      const std::size_t gain = popcount_and(adj[c], uncovered);
      if (gain > best_gain) {
        best_gain = gain;
        best = c;
      }
    }
    for (std::size_t w = 0; w < uncovered.size(); ++w) uncovered[w] &= ~adj[best][w];
    ++used;
  }
  return used;
}

// Branch and bound over the centers covering the least-covered element.
class ExactCover {
 public:
  ExactCover(const std::vector<Bits>& adj, std::uint64_t upper, std::size_t node_budget)
      : adj_(adj), best_(upper), budget_(node_budget) {}

  bool run() {
    Bits all((adj_.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < adj_.size(); ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
    search(all, 0);
    return !exhausted_;
  }
  std::uint64_t best() const { return best_; }

 private:
  void search(const Bits& uncovered, std::uint64_t depth) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    const std::size_t left = popcount(uncovered);
    if (left == 0) {
      best_ = std::min(best_, depth);
      return;
    }
    std::size_t max_gain = 0;
    for (const Bits& a : adj_) max_gain = std::max(max_gain, popcount_and(a, uncovered));
    if (depth + (left + max_gain - 1) / max_gain >= best_) return;
    std::size_t pivot = 0;
    std::size_t fewest = adj_.size() + 1;
    for (std::size_t e = 0; e < adj_.size(); ++e) {
      if (!test(uncovered, e)) continue;
      const std::size_t c = popcount(adj_[e]);
      if (c < fewest) {
        fewest = c;
        pivot = e;
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> options;
    for (std::size_t c = 0; c < adj_.size(); ++c)
      if (test(adj_[pivot], c)) options.emplace_back(popcount_and(adj_[c], uncovered), c);
    std::sort(options.begin(), options.end(), [](auto a, auto b) { return a.first != b.first ? a.first > b.first : a.second < b.second; });
    for (const auto& [gain, c] : options) {
      Bits next = uncovered;
      for (std::size_t w = 0; w < next.size(); ++w) next[w] &= ~adj_[c][w];
      search(next, depth + 1);
      if (exhausted_) return;
    }
  }

  const std::vector<Bits>& adj_;
  std::uint64_t best_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  bool exhausted_ = false;
};

CoverResult cover_discrete(const std::vector<Bits>& adj, std::string note) {
  CoverResult out;
  out.elements = adj.size();
  out.count = greedy_cover(adj);
  out.method = CoverMethod::GreedyUpper;
  if (adj.size() <= 256) {
    ExactCover exact(adj, out.count, 2'000'000);
    if (exact.run()) {
      out.count = exact.best();
      out.method = CoverMethod::Exact;
    }
  }
  out.eta = eta_from_width(out.count);
  out.note = std::move(note);
  return out;
}

void check_pairwise(const ClassSpec& spec, std::size_t count) {
  if (count > spec.max_pairwise) throw Error(ErrorCode::BudgetExceeded, "class too large for pairwise ball tables");
}

CoverResult cover_interval(const IntervalClass& c, unsigned n) {
  if (!(c.length > 0.0)) throw Error(ErrorCode::InvalidArgument, "interval length must be positive");
  const double radius = std::ldexp(1.0, -static_cast<int>(n));
  // Leftmost-first placement is optimal on a line.
  std::uint64_t count = 1;
  for (double covered = 2.0 * radius; covered < c.length; covered += 2.0 * radius) ++count;
  CoverResult out;
  out.count = count;
  out.eta = eta_from_width(count);
  out.method = CoverMethod::Exact;
  out.note = "continuum interval, leftmost-first placement";
  return out;
}

CoverResult cover_paths(const ClassSpec& spec, const GridPathClass& c, unsigned n) {
  if (c.mu > 6 || c.r + n > 16) throw Error(ErrorCode::BudgetExceeded, "grid path class too large");
  const std::size_t points = std::size_t{1} << c.mu;
  const int R = 1 << (c.r + n);
  std::vector<int> flat;
  std::vector<int> path(points);
  std::size_t count = 0;
  const std::function<void(std::size_t)> walk = [&](std::size_t j) {
    if (j == points) {
      if (++count > spec.max_elements) throw Error(ErrorCode::BudgetExceeded, "grid path class above element budget");
      flat.insert(flat.end(), path.begin(), path.end());
      return;
    }
    for (int d = -1; d <= 1; ++d) {
      const int v = path[j - 1] + d;
      if (v < -R || v > R) continue;
      path[j] = v;
      walk(j + 1);
    }
  };
  for (int v0 = -R; v0 <= R; ++v0) {
    path[0] = v0;
    walk(1);
  }
  check_pairwise(spec, count);
  // Radius 2^-n is one grid unit.
  const auto adj = tabulate(count, [&](std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < points; ++j)
      if (std::abs(flat[a * points + j] - flat[b * points + j]) > 1) return false;
    return true;
  });
  return cover_discrete(adj, "internal centers; sup metric on grid points; trend check only");
}

CoverResult cover_step_ball(const ClassSpec& spec, const StepBallClass& c, unsigned n) {
  if (!(c.p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "step ball needs p >= 1");
  if (c.value_bits < n + 2) throw Error(ErrorCode::InvalidArgument, "value grid coarser than 2^-(n+2)");
  if (c.cells_log2 > 4 || c.r + c.value_bits > 16) throw Error(ErrorCode::BudgetExceeded, "step ball too large");
  const std::size_t K = std::size_t{1} << c.cells_log2;
  const int V = 1 << (c.r + c.value_bits);
  const double unit = std::ldexp(1.0, -static_cast<int>(c.value_bits));
  double raw = 1.0;
  for (std::size_t i = 0; i < K; ++i) raw *= 2.0 * V + 1.0;
  if (raw > 16.0 * static_cast<double>(spec.max_elements))
    throw Error(ErrorCode::BudgetExceeded, "step ball enumeration above budget");
  const double slack = 1.0 + 1e-12;
  const double norm_cap = std::pow(std::ldexp(1.0, static_cast<int>(c.r)), c.p) * slack;
  std::vector<double> flat;
  std::vector<int> idx(K, -V);
  std::vector<double> vals(K);
  std::size_t count = 0;
  for (;;) {
    double norm = 0.0;
    for (std::size_t i = 0; i < K; ++i) {
      vals[i] = idx[i] * unit;
      norm += std::pow(std::fabs(vals[i]), c.p);
    }
    bool keep = norm / static_cast<double>(K) <= norm_cap;
    if (keep && !c.mu.empty()) {
      // D^p(j/K) for shifts by whole cells; D^p is linear in between.
      std::vector<double> e(K / 2 + 1, 0.0);
      for (std::size_t j = 1; j <= K / 2; ++j) {
        for (std::size_t i = 0; i < K; ++i) e[j] += std::pow(std::fabs(vals[i] - vals[(i + j) % K]), c.p);
        e[j] /= static_cast<double>(K);
      }
      for (std::size_t k = 0; k < c.mu.size() && keep; ++k) {
        const double dmax = std::min(std::ldexp(1.0, -static_cast<int>(std::min(c.mu[k], 60u))), 0.5);
        const double x = dmax * static_cast<double>(K);
        const auto j0 = static_cast<std::size_t>(std::floor(x));
        double sup = 0.0;
        for (std::size_t j = 0; j <= std::min(j0, K / 2); ++j) sup = std::max(sup, e[j]);
        if (j0 < K / 2) sup = std::max(sup, e[j0] + (x - static_cast<double>(j0)) * (e[j0 + 1] - e[j0]));
        keep = sup <= std::pow(std::ldexp(1.0, -static_cast<int>(k)), c.p) * slack;
      }
    }
    if (keep) {
      if (++count > spec.max_elements) throw Error(ErrorCode::BudgetExceeded, "step ball above element budget");
      flat.insert(flat.end(), vals.begin(), vals.end());
    }
    std::size_t pos = 0;
    while (pos < K && idx[pos] == V) idx[pos++] = -V;
    if (pos == K) break;
    ++idx[pos];
  }
  check_pairwise(spec, count);
  const double radius_p = std::pow(std::ldexp(1.0, -static_cast<int>(n)), c.p) * slack;
  const auto adj = tabulate(count, [&](std::size_t a, std::size_t b) {
    double s = 0.0;
    for (std::size_t i = 0; i < K; ++i) s += std::pow(std::fabs(flat[a * K + i] - flat[b * K + i]), c.p);
    return s / static_cast<double>(K) <= radius_p;
  });
  return cover_discrete(adj, "internal centers; dyadic-valued step functions; trend check only");
}

}  // namespace

CoverResult covering_number(const ClassSpec& spec, unsigned n) {
  if (n > 30) throw Error(ErrorCode::InvalidArgument, "n above 30");
  if (const auto* c = std::get_if<IntervalClass>(&spec.kind)) return cover_interval(*c, n);
  if (const auto* c = std::get_if<GridPathClass>(&spec.kind)) return cover_paths(spec, *c, n);
  return cover_step_ball(spec, std::get<StepBallClass>(spec.kind), n);
}

}  // namespace modrate
