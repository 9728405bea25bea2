#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "bobench/errors.hpp"
#include "bobench/testfns.hpp"

namespace bobench {
namespace {

const Registry& reg() { return Registry::builtin(); }

std::vector<double> random_point(const TestFunction& fn, Rng& rng) {
  std::vector<double> x(fn.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(fn.domain.lower()[i], fn.domain.upper()[i]);
  return round_to_domain(fn, x);
}

TEST(DomainBox, RejectsInvalidBounds) {
  EXPECT_THROW(DomainBox({0.0}, {0.0}), std::invalid_argument);
  EXPECT_THROW(DomainBox({0.0, 1.0}, {1.0}), std::invalid_argument);
  EXPECT_THROW(DomainBox({}, {}), std::invalid_argument);
  EXPECT_THROW(DomainBox({0.0}, {1.0}, {1}), std::invalid_argument);
  // [0.2, 0.9] holds no integer.
  EXPECT_THROW(DomainBox({0.2}, {0.9}, {0}), std::invalid_argument);
}

TEST(Evaluate, SphereOptimum) {
  Rng rng(1);
  Evaluation e = evaluate(reg().at("sphere2"), std::vector<double>{0.0, 0.0}, rng);
  EXPECT_EQ(e.true_value, 0.0);
  EXPECT_EQ(e.observed_value, 0.0);
}

TEST(Evaluate, FloorQuadCorner) {
  Rng rng(1);
  Evaluation e = evaluate(reg().at("floor_quad"), std::vector<double>{10.0, 10.0}, rng);
  EXPECT_EQ(e.true_value, 200.0);
}

TEST(Evaluate, FloorQuadTakesEveryIntegerUpTo200) {
  const TestFunction& fn = reg().at("floor_quad");
  Rng rng(3);
  std::set<double> seen;
  for (int i = 0; i < 200; ++i) {
    // x^T x = i + 0.5 sits strictly inside level i.
    double c = std::sqrt((i + 0.5) / 2.0);
    seen.insert(evaluate(fn, std::vector<double>{c, c}, rng).true_value);
  }
  seen.insert(evaluate(fn, std::vector<double>{10.0, 10.0}, rng).true_value);
  EXPECT_EQ(seen.size(), 201u);
}

TEST(Evaluate, NoiseModel) {
  TestFunction fn{.id = "one", .domain = DomainBox::cube(1, 0.0, 1.0)};
  fn.objective = [](std::span<const double>) { return 1.0; };
  fn.noise_level = 0.01;
  fn.attributes = {Attribute::Noisy};
  Rng rng(42);
  Rng peek = rng;
  const double z = peek.normal();
  Evaluation e = evaluate(fn, std::vector<double>{0.5}, rng);
  EXPECT_EQ(e.noise_draw, z);
  EXPECT_EQ(e.observed_value, (1.0 + 0.01 * z) * 1.0);
  // Exactly one variate consumed.
  EXPECT_TRUE(rng == peek);
}

TEST(Evaluate, NoiseOfOneStandardDeviation) {
  // (1 + delta z) y with delta = .01, y = 1, z = 1.
  EXPECT_DOUBLE_EQ((1.0 + 0.01 * 1.0) * 1.0, 1.01);
}

TEST(Evaluate, NoiselessDrawsNothing) {
  Rng rng(7);
  Rng before = rng;
  evaluate(reg().at("sphere2"), std::vector<double>{1.0, 2.0}, rng);
  EXPECT_TRUE(rng == before);
}

TEST(Evaluate, Errors) {
  Rng rng(1);
  EXPECT_THROW(evaluate(reg().at("sphere2"), std::vector<double>{6.0, 0.0}, rng), DomainError);
  EXPECT_THROW(evaluate(reg().at("sphere2"), std::vector<double>{0.0}, rng), DomainError);
  EXPECT_THROW(evaluate(reg().at("sphere2"), std::vector<double>{NAN, 0.0}, rng), DomainError);
  EXPECT_THROW(evaluate(reg().at("int_sphere3"), std::vector<double>{1.5, 0.0, 0.0}, rng), ConstraintError);
  EXPECT_NO_THROW(evaluate(reg().at("int_sphere3"), std::vector<double>{1.0, 0.3, 0.0}, rng));
}

TEST(Evaluate, PureGivenRngState) {
  for (const auto& fn : reg().all()) {
    Rng a(99), b(99);
    Rng gen(5);
    auto x = random_point(fn, gen);
    Evaluation ea = evaluate(fn, x, a);
    Evaluation eb = evaluate(fn, x, b);
    EXPECT_EQ(ea.observed_value, eb.observed_value) << fn.id;
    EXPECT_EQ(ea.true_value, eb.true_value) << fn.id;
  }
}

TEST(RoundToDomain, Examples) {
  DomainBox box({-5.0, -5.0}, {5.0, 5.0}, {0});
  EXPECT_EQ(round_to_domain(box, std::vector<double>{2.4, 2.4}), (std::vector<double>{2.0, 2.4}));
  EXPECT_EQ(round_to_domain(box, std::vector<double>{8.0, 8.0}), (std::vector<double>{5.0, 5.0}));
  EXPECT_EQ(round_to_domain(box, std::vector<double>{-2.5, 0.0}), (std::vector<double>{-3.0, 0.0}));
  DomainBox plain = DomainBox::cube(3, 0.0, 1.0);
  std::vector<double> x{0.1, 0.5, 0.9};
  EXPECT_EQ(round_to_domain(plain, x), x);
  // Rounding never escapes the integer-feasible range.
  DomainBox odd({-0.5, 0.0}, {4.5, 1.0}, {0});
  EXPECT_EQ(round_to_domain(odd, std::vector<double>{4.5, 0.0})[0], 4.0);
  EXPECT_EQ(round_to_domain(odd, std::vector<double>{-0.5, 0.0})[0], 0.0);
}

TEST(Registry, Queries) {
  auto nonsmooth = reg().query({.attributes = {Attribute::Nonsmooth}});
  bool has_abs = false;
  for (auto* f : nonsmooth) has_abs = has_abs || f->id == "abs_sum3";
  EXPECT_TRUE(has_abs);

  for (auto* f : reg().query({.bucket = DimensionBucket::ThreeToFive})) {
    EXPECT_GE(f->dim(), 3u);
    EXPECT_LE(f->dim(), 5u);
  }
  auto all = reg().query({});
  ASSERT_EQ(all.size(), reg().all().size());
  for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LT(all[i - 1]->id, all[i]->id);

  auto both = reg().query({.attributes = {Attribute::Noisy, Attribute::Nonsmooth}});
  for (auto* f : both) EXPECT_TRUE(f->has(Attribute::Noisy) && f->has(Attribute::Nonsmooth));
  EXPECT_FALSE(both.empty());
}

TEST(Registry, Coverage) {
  for (Attribute a : kAllAttributes) {
    EXPECT_GE(reg().query({.attributes = {a}}).size(), 2u) << to_string(a);
  }
  for (auto b : {DimensionBucket::Two, DimensionBucket::ThreeToFive, DimensionBucket::SixToNine,
                 DimensionBucket::TenPlus}) {
    EXPECT_GE(reg().query({.bucket = b}).size(), 2u) << to_string(b);
  }
}

TEST(Registry, MetadataInvariants) {
  for (const auto& fn : reg().all()) {
    EXPECT_EQ(fn.noise_level > 0.0, fn.has(Attribute::Noisy)) << fn.id;
    if (fn.has(Attribute::Noisy)) {
      EXPECT_GE(fn.noise_level, 1e-3);
      EXPECT_LE(fn.noise_level, 1e-1);
    }
    if (fn.x_opt) {
      ASSERT_TRUE(fn.f_opt.has_value());
      ASSERT_TRUE(fn.domain.contains(*fn.x_opt)) << fn.id;
      EXPECT_NEAR(fn.objective(*fn.x_opt), *fn.f_opt, 1e-12) << fn.id;
      if (fn.has(Attribute::BoundaryOptimum)) {
        bool on_bound = false;
        for (std::size_t i = 0; i < fn.dim(); ++i) {
          on_bound = on_bound || (*fn.x_opt)[i] == fn.domain.lower()[i] || (*fn.x_opt)[i] == fn.domain.upper()[i];
        }
        EXPECT_TRUE(on_bound) << fn.id;
      } else {
        // Away from the midpoint unless the textbook form centers it.
        bool at_mid = true;
        for (std::size_t i = 0; i < fn.dim(); ++i) {
          at_mid = at_mid && (*fn.x_opt)[i] == 0.5 * (fn.domain.lower()[i] + fn.domain.upper()[i]);
        }
        if (fn.id.find("sphere2") == std::string::npos && fn.id.find("cosine") == std::string::npos) {
          EXPECT_FALSE(at_mid) << fn.id;
        }
      }
    }
  }
}

TEST(Registry, BoundsHoldUnderDenseSampling) {
  for (const auto& fn : reg().all()) {
    Rng rng(fnv1a(fn.id));
    double lo = INFINITY, hi = -INFINITY;
    for (int k = 0; k < 100000; ++k) {
      double v = fn.objective(random_point(fn, rng));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    EXPECT_GE(lo, fn.f_lb - 1e-9) << fn.id;
    if (fn.f_opt) {
      EXPECT_LE(hi, *fn.f_opt + 1e-9) << fn.id;
    }
  }
}

TEST(Registry, NoiseIsUnbiased) {
  for (const auto& fn : reg().query({.attributes = {Attribute::Noisy}})) {
    Rng gen(11);
    std::vector<double> x = random_point(*fn, gen);
    const double y = fn->objective(x);
    Rng rng(12);
    const int n = 100000;
    double sum = 0.0;
    for (int k = 0; k < n; ++k) sum += evaluate(*fn, x, rng).observed_value;
    const double se = std::abs(y) * fn->noise_level / std::sqrt(static_cast<double>(n));
    EXPECT_LE(std::abs(sum / n - y), 4.0 * se) << fn->id;
  }
}

TEST(Registry, ManifestListsEveryFunction) {
  std::string m = reg().manifest();
  for (const auto& fn : reg().all()) EXPECT_NE(m.find(fn.id), std::string::npos);
  EXPECT_NE(m.find("BoundaryOptimum,DiscreteValued"), std::string::npos);
}

}  // namespace
}  // namespace bobench
