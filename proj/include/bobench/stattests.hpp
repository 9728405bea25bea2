#pragma once

#include <span>
#include <vector>

namespace bobench {

enum class Direction { AGreater, BGreater, NoDifference };

struct TestOutcome {
  Direction direction = Direction::NoDifference;
  double u_a = 0.0;
  double u_b = 0.0;
  double p_a_greater = 0.5;  // one-sided p for "a tends larger"
  double p_b_greater = 0.5;
  // p of the reported direction; for NoDifference the smaller of the two.
  double p_one_sided = 0.5;
  bool operator==(const TestOutcome&) const = default;
};

// Average ranks (1-based) of values, ties sharing the mean of their ranks.
std::vector<double> midranks(std::span<const double> values);

// One-sided Mann-Whitney U in both directions via the tie-corrected normal
// approximation with a 0.5 continuity correction. A fully tied pool has zero
// variance and yields NoDifference with p = 0.5.
TestOutcome mann_whitney(std::span<const double> a, std::span<const double> b, double alpha);

// Exact permutation p-value P(U_a >= observed U_a) over all C(N, n_a)
// relabelings, midranks under ties. Requires n_a + n_b <= 14.
double mann_whitney_exact(std::span<const double> a, std::span<const double> b);

// One-sided Welch t-test in both directions; same outcome shape with u_a/u_b
// holding the t statistic and its negation.
TestOutcome welch_t(std::span<const double> a, std::span<const double> b, double alpha);

// Upper bound 1 - (1 - alpha)^C(m,2) on the family-wise type I error.
double family_wise_bound(double alpha, int m);

double normal_cdf(double z);
double normal_pdf(double z);

}  // namespace bobench
