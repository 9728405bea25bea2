#include "bobench/stattests.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/students_t.hpp>

namespace bobench {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) {
  return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

std::vector<double> midranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    double r = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = r;
    i = j + 1;
  }
  return ranks;
}

namespace {

void check_samples(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("rank test: empty sample");
}

std::vector<double> pooled(std::span<const double> a, std::span<const double> b) {
  std::vector<double> pool(a.begin(), a.end());
  pool.insert(pool.end(), b.begin(), b.end());
  return pool;
}

double rank_sum_u(const std::vector<double>& ranks, std::size_t n_a) {
  double r = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(n_a), 0.0);
  double na = static_cast<double>(n_a);
  return r - na * (na + 1.0) / 2.0;
}

TestOutcome decide(TestOutcome out, double alpha) {
  if (out.p_a_greater < alpha) {
    out.direction = Direction::AGreater;
    out.p_one_sided = out.p_a_greater;
  } else if (out.p_b_greater < alpha) {
    out.direction = Direction::BGreater;
    out.p_one_sided = out.p_b_greater;
  } else {
    out.direction = Direction::NoDifference;
    out.p_one_sided = std::min(out.p_a_greater, out.p_b_greater);
  }
  return out;
}

}  // namespace

TestOutcome mann_whitney(std::span<const double> a, std::span<const double> b, double alpha) {
  check_samples(a, b);
  if (!(alpha > 0.0 && alpha <= 0.5)) throw std::invalid_argument("mann_whitney: alpha out of (0, 0.5]");
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double n = na + nb;

  std::vector<double> pool = pooled(a, b);
  std::vector<double> ranks = midranks(pool);

  TestOutcome out;
  out.u_a = rank_sum_u(ranks, a.size());
  out.u_b = na * nb - out.u_a;

  std::sort(pool.begin(), pool.end());
  double tie_sum = 0.0;
  for (std::size_t i = 0; i < pool.size();) {
    std::size_t j = i;
    while (j < pool.size() && pool[j] == pool[i]) ++j;
    double t = static_cast<double>(j - i);
    tie_sum += t * t * t - t;
    i = j;
  }
  double var = n > 1.0 ? na * nb / 12.0 * ((n + 1.0) - tie_sum / (n * (n - 1.0))) : 0.0;
  if (!(var > 0.0)) {
    out.p_a_greater = out.p_b_greater = out.p_one_sided = 0.5;
    out.direction = Direction::NoDifference;
    return out;
  }
  const double sd = std::sqrt(var);
  const double mean = na * nb / 2.0;
  out.p_a_greater = 1.0 - normal_cdf((out.u_a - mean - 0.5) / sd);
  out.p_b_greater = 1.0 - normal_cdf((out.u_b - mean - 0.5) / sd);
  return decide(out, alpha);
}

double mann_whitney_exact(std::span<const double> a, std::span<const double> b) {
  check_samples(a, b);
  const std::size_t na = a.size();
  const std::size_t n = na + b.size();
  if (n > 14) throw std::invalid_argument("mann_whitney_exact: at most 14 pooled values");

  std::vector<double> ranks = midranks(pooled(a, b));
  const double observed = rank_sum_u(ranks, na);
  const double offset = static_cast<double>(na) * (static_cast<double>(na) + 1.0) / 2.0;

  // Walk every n_a-subset of positions as a bitmask. Rank sums are multiples
  // of 0.5, so comparisons at a 1e-9 slack are exact.
  std::size_t total = 0;
  std::size_t at_least = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(std::popcount(mask)) != na) continue;
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) r += ranks[i];
    }
    ++total;
    if (r - offset >= observed - 1e-9) ++at_least;
  }
  return static_cast<double>(at_least) / static_cast<double>(total);
}

TestOutcome welch_t(std::span<const double> a, std::span<const double> b, double alpha) {
  if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("welch_t: need two values per sample");
  if (!(alpha > 0.0 && alpha <= 0.5)) throw std::invalid_argument("welch_t: alpha out of (0, 0.5]");
  auto moments = [](std::span<const double> s) {
    double m = std::accumulate(s.begin(), s.end(), 0.0) / static_cast<double>(s.size());
    double ss = 0.0;
    for (double v : s) ss += (v - m) * (v - m);
    return std::pair{m, ss / static_cast<double>(s.size() - 1)};
  };
  auto [ma, va] = moments(a);
  auto [mb, vb] = moments(b);
  const double qa = va / static_cast<double>(a.size());
  const double qb = vb / static_cast<double>(b.size());
  const double se2 = qa + qb;

  TestOutcome out;
  if (!(se2 > 0.0)) {
    if (ma == mb) return out;
    out.u_a = ma > mb ? INFINITY : -INFINITY;
    out.u_b = -out.u_a;
    out.p_a_greater = ma > mb ? 0.0 : 1.0;
    out.p_b_greater = 1.0 - out.p_a_greater;
    return decide(out, alpha);
  }
  const double t = (ma - mb) / std::sqrt(se2);
  const double df = se2 * se2 /
                    (qa * qa / static_cast<double>(a.size() - 1) +
                     qb * qb / static_cast<double>(b.size() - 1));
  boost::math::students_t dist(df);
  out.u_a = t;
  out.u_b = -t;
  out.p_a_greater = boost::math::cdf(boost::math::complement(dist, t));
  out.p_b_greater = boost::math::cdf(dist, t);
  return decide(out, alpha);
}

double family_wise_bound(double alpha, int m) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw std::invalid_argument("family_wise_bound: alpha out of [0, 1]");
  if (m < 2) throw std::invalid_argument("family_wise_bound: need at least two methods");
  const double pairs = static_cast<double>(m) * static_cast<double>(m - 1) / 2.0;
  return -std::expm1(pairs * std::log1p(-alpha));
}

}  // namespace bobench
