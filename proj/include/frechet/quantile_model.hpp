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
#pragma once

// One-dimensional distributions represented by their generalized inverse
// (quantile function) sampled on a grid of probability levels.

#include "frechet/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <numeric>
#include <span>
#include <utility>
#include <vector>

namespace frechet {

/// Default number of probability levels.
inline constexpr std::size_t kDefaultGridSize = 512;

/// Strictly increasing probability levels inside (0, 1).
class ProbGrid
{
public:
  enum class Scheme
  {
    kMidpoint,
    kExplicit
  };

  /// Levels u_j = (j - 1/2) / m, j = 1..m.
  static ProbGrid midpoint(std::size_t m)
  {
    if (m < 2)
    {
      throw GridError("a probability grid needs at least 2 levels");
    }
    std::vector<double> levels(m);
    for (std::size_t j = 0; j < m; ++j)
    {
      levels[j] = midpoint_level(j, m);
    }
    return ProbGrid(std::move(levels), Scheme::kMidpoint);
  }

  /// Validates explicit levels. A list that reproduces the midpoint rule
  /// bit for bit is tagged as such.
  static ProbGrid from_levels(std::vector<double> levels)
  {
    if (levels.size() < 2)
    {
      throw GridError("a probability grid needs at least 2 levels");
    }
    for (std::size_t j = 0; j < levels.size(); ++j)
    {
      double const u = levels[j];
      if (!(u > 0.0 && u < 1.0))
      {
        throw GridError("probability level " + std::to_string(j) + " outside (0,1)");
      }
      if (j > 0 && !(levels[j - 1] < u))
      {
        throw GridError("probability levels not strictly increasing at index " +
                        std::to_string(j));
      }
    }
    bool is_midpoint = true;
    for (std::size_t j = 0; j < levels.size() && is_midpoint; ++j)
    {
      is_midpoint = levels[j] == midpoint_level(j, levels.size());
    }
    return ProbGrid(std::move(levels), is_midpoint ? Scheme::kMidpoint : Scheme::kExplicit);
  }

  std::size_t size() const noexcept
  {
    return levels_->size();
  }

  std::span<double const> levels() const noexcept
  {
    return *levels_;
  }

  double operator[](std::size_t j) const
  {
    return (*levels_)[j];
  }

  Scheme scheme() const noexcept
  {
    return scheme_;
  }

  friend bool operator==(ProbGrid const &a, ProbGrid const &b)
  {
    return a.levels_ == b.levels_ || *a.levels_ == *b.levels_;
  }

private:
  ProbGrid(std::vector<double> levels, Scheme scheme)
    : levels_(std::make_shared<std::vector<double> const>(std::move(levels)))
    , scheme_(scheme)
  {}

  static double midpoint_level(std::size_t j, std::size_t m)
  {
    return static_cast<double>(2 * j + 1) / static_cast<double>(2 * m);
  }

  std::shared_ptr<std::vector<double> const> levels_;
  Scheme                                     scheme_;
};

inline void require_same_grid(ProbGrid const &a, ProbGrid const &b)
{
  if (!(a == b))
  {
    throw GridError("objects are defined on different probability grids");
  }
}

/// Nondecreasing finite values of a generalized inverse CDF on a grid.
class QuantileCurve
{
public:
  /// Rejects (never repairs) non-finite or decreasing values.
  QuantileCurve(ProbGrid grid, std::vector<double> values)
    : grid_(std::move(grid))
    , values_(std::move(values))
  {
    if (values_.size() != grid_.size())
    {
      throw SizeError("curve has " + std::to_string(values_.size()) + " values for a grid of " +
                      std::to_string(grid_.size()) + " levels");
    }
    for (std::size_t j = 0; j < values_.size(); ++j)
    {
      if (!std::isfinite(values_[j]))
      {
        throw ValidationError("non-finite quantile value", j);
      }
      if (j > 0 && values_[j] < values_[j - 1])
      {
        throw ValidationError("quantile values decrease", j);
      }
    }
  }

  ProbGrid const &grid() const noexcept
  {
    return grid_;
  }

  std::span<double const> values() const noexcept
  {
    return values_;
  }

  std::size_t size() const noexcept
  {
    return values_.size();
  }

  double operator[](std::size_t j) const
  {
    return values_[j];
  }

  /// Curve of X + t.
  QuantileCurve shifted(double t) const
  {
    std::vector<double> v(values_);
    for (double &x : v)
    {
      x += t;
    }
    return {grid_, std::move(v)};
  }

private:
  ProbGrid            grid_;
  std::vector<double> values_;
};

namespace detail {

/// Smallest k in [1, n] with k/n >= u, evaluated in floating point so that
/// levels written as small-denominator fractions land on the exact step.
inline std::size_t equal_weight_rank(std::size_t n, double u)
{
  auto const nd = static_cast<double>(n);
  auto       k  = static_cast<std::size_t>(std::clamp(std::ceil(u * nd), 1.0, nd));
  while (k > 1 && static_cast<double>(k - 1) / nd >= u)
  {
    --k;
  }
  while (k < n && static_cast<double>(k) / nd < u)
  {
    ++k;
  }
  return k;
}

/// Index of inf{x : F(x) >= u} among `sorted` atoms with the given weights.
inline std::size_t weighted_lower_quantile_index(std::span<double const> weights, double u,
                                                 bool uniform)
{
  std::size_t const n = weights.size();
  if (uniform)
  {
    return equal_weight_rank(n, u) - 1;
  }
  double cumulative = 0.0;
  for (std::size_t k = 0; k < n; ++k)
  {
    cumulative += weights[k];
    if (cumulative >= u)
    {
      return k;
    }
  }
  return n - 1;
}

inline void require_probability(double u, char const *what)
{
  if (!(u > 0.0 && u < 1.0))
  {
    throw DomainError(std::string(what) + " must lie in the open interval (0,1)");
  }
}

}  // namespace detail

/// Finite-support distribution. Weights are normalised to sum to one and
/// atoms are kept sorted by value.
class DiscreteDistribution
{
public:
  struct Atom
  {
    double value;
    double weight;
  };

  explicit DiscreteDistribution(std::vector<Atom> atoms)
  {
    if (atoms.empty())
    {
      throw DomainError("a discrete distribution needs at least one atom");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < atoms.size(); ++k)
    {
      if (!std::isfinite(atoms[k].value))
      {
        throw ValidationError("non-finite atom value", k);
      }
      if (!(atoms[k].weight > 0.0) || !std::isfinite(atoms[k].weight))
      {
        throw ValidationError("atom weights must be strictly positive", k);
      }
      total += atoms[k].weight;
    }
    uniform_ = std::all_of(atoms.begin(), atoms.end(),
                           [&](Atom const &a) { return a.weight == atoms.front().weight; });
    std::stable_sort(atoms.begin(), atoms.end(),
                     [](Atom const &a, Atom const &b) { return a.value < b.value; });
    values_.reserve(atoms.size());
    weights_.reserve(atoms.size());
    for (auto const &a : atoms)
    {
      values_.push_back(a.value);
      weights_.push_back(uniform_ ? 1.0 / static_cast<double>(atoms.size()) : a.weight / total);
    }
  }

  static DiscreteDistribution equal_weights(std::span<double const> values)
  {
    std::vector<Atom> atoms;
    atoms.reserve(values.size());
    for (double v : values)
    {
      atoms.push_back({v, 1.0});
    }
    return DiscreteDistribution(std::move(atoms));
  }

  std::size_t size() const noexcept
  {
    return values_.size();
  }
  std::span<double const> values() const noexcept
  {
    return values_;
  }
  std::span<double const> weights() const noexcept
  {
    return weights_;
  }
  bool uniform() const noexcept
  {
    return uniform_;
  }

private:
  std::vector<double> values_;
  std::vector<double> weights_;
  bool                uniform_ = false;
};

/// inf{x : F(x) >= u} for the step CDF F of `dist` (left-continuous inverse).
inline double generalized_inverse(DiscreteDistribution const &dist, double u)
{
  detail::require_probability(u, "probability level");
  return dist.values()[detail::weighted_lower_quantile_index(dist.weights(), u, dist.uniform())];
}

/// Empirical quantile curve: no extrapolation, constant beyond the sample range.
inline QuantileCurve curve_from_samples(std::span<double const> samples, ProbGrid const &grid)
{
  if (samples.empty())
  {
    throw DomainError("cannot build a quantile curve from an empty sample");
  }
  for (std::size_t k = 0; k < samples.size(); ++k)
  {
    if (!std::isfinite(samples[k]))
    {
      throw DomainError("sample " + std::to_string(k) + " is not finite");
    }
  }
  auto const          dist = DiscreteDistribution::equal_weights(samples);
  std::vector<double> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
  {
    values[j] = generalized_inverse(dist, grid[j]);
  }
  return {grid, std::move(values)};
}

inline QuantileCurve curve_from_inverse_table(std::vector<double> levels, std::vector<double> values)
{
  if (levels.size() != values.size())
  {
    throw SizeError("levels and values differ in length");
  }
  return {ProbGrid::from_levels(std::move(levels)), std::move(values)};
}

/// Quantile curve of a discrete distribution on the given grid.
inline QuantileCurve curve_from_distribution(DiscreteDistribution const &dist, ProbGrid const &grid)
{
  std::vector<double> values(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j)
  {
    values[j] = generalized_inverse(dist, grid[j]);
  }
  return {grid, std::move(values)};
}

}  // namespace frechet
