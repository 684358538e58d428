//------------------------------------------------------------------------------
//
//   Copyright 2026 The frechet-features Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

using namespace frechet;

namespace {

std::vector<double> values_of(QuantileCurve const &c)
{
  return {c.values().begin(), c.values().end()};
}

}  // namespace

TEST(ProbGrid, MidpointLevels)
{
  auto const g = ProbGrid::midpoint(4);
  ASSERT_EQ(g.size(), 4u);
  EXPECT_DOUBLE_EQ(g[0], 0.125);
  EXPECT_DOUBLE_EQ(g[3], 0.875);
  EXPECT_EQ(g.scheme(), ProbGrid::Scheme::kMidpoint);
  EXPECT_EQ(ProbGrid::midpoint(kDefaultGridSize).size(), 512u);
}

TEST(ProbGrid, RejectsMalformedLevels)
{
  EXPECT_THROW(ProbGrid::midpoint(1), GridError);
  EXPECT_THROW(ProbGrid::from_levels({0.5, 0.25}), GridError);
  EXPECT_THROW(ProbGrid::from_levels({0.0, 0.5}), GridError);
  EXPECT_THROW(ProbGrid::from_levels({0.5, 1.0}), GridError);
  EXPECT_THROW(ProbGrid::from_levels({0.5, 0.5}), GridError);
}

TEST(ProbGrid, ExplicitLevelsMatchingMidpointAreRecognised)
{
  EXPECT_EQ(ProbGrid::from_levels({0.125, 0.375, 0.625, 0.875}).scheme(),
            ProbGrid::Scheme::kMidpoint);
  EXPECT_EQ(ProbGrid::from_levels({0.25, 0.5, 0.75}).scheme(), ProbGrid::Scheme::kExplicit);
}

TEST(GeneralizedInverse, StepExamples)
{
  auto const thirds = DiscreteDistribution({{1, 1.0 / 3}, {2, 1.0 / 3}, {3, 1.0 / 3}});
  EXPECT_EQ(generalized_inverse(thirds, 0.5), 2.0);

  auto const point = DiscreteDistribution({{7, 1.0}});
  for (double u : {1e-9, 0.3, 0.5, 0.999999})
  {
    EXPECT_EQ(generalized_inverse(point, u), 7.0);
  }

  auto const split = DiscreteDistribution({{0, 0.25}, {10, 0.75}});
  EXPECT_EQ(generalized_inverse(split, 0.25), 0.0);
  EXPECT_EQ(generalized_inverse(split, 0.2500001), 10.0);
}

TEST(GeneralizedInverse, RejectsLevelsOutsideOpenInterval)
{
  auto const d = DiscreteDistribution({{1, 1.0}});
  EXPECT_THROW(generalized_inverse(d, 0.0), DomainError);
  EXPECT_THROW(generalized_inverse(d, 1.0), DomainError);
  EXPECT_THROW(generalized_inverse(d, std::nan("")), DomainError);
}

TEST(GeneralizedInverse, ExactAtEqualWeightBoundaries)
{
  // k/n boundaries land on the k-th atom even when k/n is not representable.
  for (std::size_t n = 1; n <= 12; ++n)
  {
    std::vector<double> atoms(n);
    std::iota(atoms.begin(), atoms.end(), 0.0);
    auto const d = DiscreteDistribution::equal_weights(atoms);
    for (std::size_t k = 1; k < n; ++k)
    {
      EXPECT_EQ(generalized_inverse(d, static_cast<double>(k) / static_cast<double>(n)),
                static_cast<double>(k - 1))
          << "n=" << n << " k=" << k;
    }
  }
}

TEST(GeneralizedInverse, NondecreasingInLevel)
{
  auto rng = testkit::make_rng(11);
  for (int trial = 0; trial < 50; ++trial)
  {
    auto const d    = testkit::random_rational_distribution(rng, 6, 12);
    double     prev = -INFINITY;
    for (int k = 1; k < 1000; ++k)
    {
      double const x = generalized_inverse(d, k / 1000.0);
      EXPECT_GE(x, prev);
      prev = x;
    }
  }
}

TEST(DiscreteDistribution, NormalisesAndSorts)
{
  auto const d = DiscreteDistribution({{3, 2.0}, {1, 1.0}, {2, 1.0}});
  EXPECT_EQ(std::vector<double>(d.values().begin(), d.values().end()),
            (std::vector<double>{1, 2, 3}));
  EXPECT_DOUBLE_EQ(d.weights()[2], 0.5);
  EXPECT_THROW(DiscreteDistribution({{1, 0.0}}), ValidationError);
  EXPECT_THROW(DiscreteDistribution({{1, -1.0}}), ValidationError);
  EXPECT_THROW(DiscreteDistribution({}), DomainError);
}

TEST(CurveFromSamples, OrderStatistics)
{
  std::vector<double> const s{3, 1, 2};
  EXPECT_EQ(values_of(curve_from_samples(s, ProbGrid::midpoint(3))), (std::vector<double>{1, 2, 3}));

  std::vector<double> const one{5};
  auto const                c = curve_from_samples(one, ProbGrid::midpoint(7));
  EXPECT_TRUE(std::all_of(c.values().begin(), c.values().end(), [](double v) { return v == 5; }));

  std::vector<double> const two{0, 1};
  EXPECT_EQ(values_of(curve_from_samples(two, ProbGrid::midpoint(4))),
            (std::vector<double>{0, 0, 1, 1}));
}

TEST(CurveFromSamples, Errors)
{
  std::vector<double> const empty;
  EXPECT_THROW(curve_from_samples(empty, ProbGrid::midpoint(4)), DomainError);
  std::vector<double> const bad{1.0, INFINITY};
  EXPECT_THROW(curve_from_samples(bad, ProbGrid::midpoint(4)), DomainError);
  std::vector<double> const nan{std::nan("")};
  EXPECT_THROW(curve_from_samples(nan, ProbGrid::midpoint(4)), DomainError);
}

TEST(CurveFromSamples, PermutationInvariant)
{
  auto       rng  = testkit::make_rng(3);
  auto const grid = ProbGrid::midpoint(37);
  for (int trial = 0; trial < 50; ++trial)
  {
    std::vector<double> s(testkit::integer(rng, 1, 40));
    for (auto &x : s)
    {
      x = std::round(testkit::uniform(rng, -3, 3) * 2) / 2;
    }
    auto const before = curve_from_samples(s, grid);
    std::shuffle(s.begin(), s.end(), rng);
    EXPECT_EQ(values_of(before), values_of(curve_from_samples(s, grid)));
  }
}

TEST(CurveFromSamples, MonotoneAndEqualToSortedAtomsWhenGridMatches)
{
  auto rng = testkit::make_rng(5);
  for (std::size_t k = 2; k <= 40; ++k)
  {
    std::vector<double> s(k);
    for (auto &x : s)
    {
      x = testkit::uniform(rng, -10, 10);
    }
    auto const c = curve_from_samples(s, ProbGrid::midpoint(k));
    std::sort(s.begin(), s.end());
    EXPECT_EQ(values_of(c), s);
    EXPECT_TRUE(std::is_sorted(c.values().begin(), c.values().end()));
  }
}

TEST(CurveFromInverseTable, ValidationExamples)
{
  EXPECT_NO_THROW(curve_from_inverse_table({0.25, 0.5, 0.75}, {0, 1, 2}));
  try
  {
    curve_from_inverse_table({0.25, 0.5, 0.75}, {0, 2, 1});
    FAIL() << "expected a validation error";
  }
  catch (ValidationError const &e)
  {
    EXPECT_EQ(e.index(), 2u);
  }
  EXPECT_THROW(curve_from_inverse_table({0.5, 0.25}, {0, 1}), GridError);
  EXPECT_THROW(curve_from_inverse_table({0.25, 0.5}, {0, 1, 2}), SizeError);
  EXPECT_THROW(curve_from_inverse_table({0.25, 0.5}, {0, INFINITY}), ValidationError);
}

TEST(CurveFromDistribution, MatchesGeneralizedInverse)
{
  auto rng = testkit::make_rng(9);
  auto const grid = ProbGrid::midpoint(60);
  for (int trial = 0; trial < 30; ++trial)
  {
    auto const d = testkit::random_rational_distribution(rng, 5, 6);
    auto const c = curve_from_distribution(d, grid);
    for (std::size_t j = 0; j < grid.size(); ++j)
    {
      EXPECT_EQ(c[j], generalized_inverse(d, grid[j]));
    }
  }
}

TEST(QuantileCurve, SharedGridRequired)
{
  auto const a = QuantileCurve(ProbGrid::midpoint(4), {0, 1, 2, 3});
  auto const b = QuantileCurve(ProbGrid::midpoint(5), {0, 1, 2, 3, 4});
  EXPECT_THROW(require_same_grid(a.grid(), b.grid()), GridError);
  EXPECT_NO_THROW(require_same_grid(a.grid(), ProbGrid::midpoint(4)));
}
