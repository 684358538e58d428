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

// Random generators shared by the property tests.

#include "frechet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace frechet::testkit {

inline std::mt19937_64 make_rng(std::uint64_t seed)
{
  return std::mt19937_64(seed);
}

inline double uniform(std::mt19937_64 &rng, double lo, double hi)
{
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::size_t integer(std::mt19937_64 &rng, std::size_t lo, std::size_t hi)
{
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

/// Nondecreasing curve with random increments, occasionally flat.
inline QuantileCurve random_curve(ProbGrid const &grid, std::mt19937_64 &rng)
{
  std::vector<double> v(grid.size());
  double              x = uniform(rng, -5.0, 5.0);
  for (auto &value : v)
  {
    if (integer(rng, 0, 4) != 0)
    {
      x += uniform(rng, 0.0, 0.5);
    }
    value = x;
  }
  return QuantileCurve(grid, std::move(v));
}

inline Matrix random_ensemble_curves(ProbGrid const &grid, std::size_t n, std::mt19937_64 &rng)
{
  Matrix curves(n, grid.size());
  for (std::size_t k = 0; k < n; ++k)
  {
    auto const c = random_curve(grid, rng);
    std::copy(c.values().begin(), c.values().end(), curves.row(k).begin());
  }
  return curves;
}

/// Up to `max_atoms` atoms with weights a_k / D, D <= max_denominator.
inline DiscreteDistribution random_rational_distribution(std::mt19937_64 &rng,
                                                         std::size_t     max_atoms,
                                                         std::size_t     max_denominator)
{
  std::size_t const atoms = integer(rng, 1, max_atoms);
  std::size_t const denom = integer(rng, atoms, std::max(atoms, max_denominator));
  std::vector<std::size_t> numer(atoms, 1);
  for (std::size_t extra = denom - atoms; extra > 0; --extra)
  {
    ++numer[integer(rng, 0, atoms - 1)];
  }
  std::vector<DiscreteDistribution::Atom> out;
  for (std::size_t k = 0; k < atoms; ++k)
  {
    double const value = std::round(uniform(rng, -4.0, 4.0) * 4.0) / 4.0;
    out.push_back({value, static_cast<double>(numer[k]) / static_cast<double>(denom)});
  }
  return DiscreteDistribution(std::move(out));
}

inline std::vector<double> column(Matrix const &m, std::size_t j)
{
  std::vector<double> out(m.rows());
  for (std::size_t k = 0; k < m.rows(); ++k)
  {
    out[k] = m(k, j);
  }
  return out;
}

/// Grid size whose midpoint levels resolve every weight boundary of f and g.
inline std::size_t resolving_grid_size(DiscreteDistribution const &f, DiscreteDistribution const &g)
{
  auto denominator = [](DiscreteDistribution const &d) {
    std::int64_t l = 1;
    for (double w : d.weights())
    {
      for (std::int64_t q = 1; q <= 720; ++q)
      {
        if (std::abs(w * static_cast<double>(q) - std::round(w * static_cast<double>(q))) < 1e-9)
        {
          l = std::lcm(l, q);
          break;
        }
      }
    }
    return l;
  };
  auto const l = static_cast<std::size_t>(std::lcm(denominator(f), denominator(g)));
  return l < 2 ? 2 : l;
}

}  // namespace frechet::testkit
