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

// Transport costs between one-dimensional distributions. Under the rectangle
// property the optimal coupling is the quantile coupling, so the cost is the
// grid average of c(F^-(u), G^-(u)). A brute-force solver over the transport
// polytope is provided as an independent check at small scale.

#include "frechet/common.hpp"
#include "frechet/contrasts.hpp"
#include "frechet/quantile_model.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace frechet {

struct CostResult
{
  double                     value;
  ContrastSpec               contrast;
  std::size_t                grid_size;
  /// Set when the optional rectangle-property check failed.
  std::optional<std::string> warning;
};

struct CostOptions
{
  /// Run check_property_p before integrating. A failure is reported as a
  /// warning; the integral is still returned.
  bool check_property = false;
  /// Probe points for the check; empty means 25 points spanning both curves.
  std::vector<double> probe_grid;
};

/// Grid average of c(F^-(u_j), G^-(u_j)).
inline CostResult wasserstein_cost(QuantileCurve const &f, QuantileCurve const &g,
                                   ContrastSpec const &c, CostOptions const &options = {})
{
  require_same_grid(f.grid(), g.grid());
  CostResult result{0.0, c, f.size(), std::nullopt};
  if (options.check_property)
  {
    std::vector<double> probe = options.probe_grid;
    if (probe.empty())
    {
      double const lo = std::min(f[0], g[0]);
      double const hi = std::max(f[f.size() - 1], g[g.size() - 1]);
      probe           = linear_probe_grid(lo, hi == lo ? lo + 1.0 : hi);
    }
    auto const report = check_property_p(c, probe);
    if (!report.passes)
    {
      result.warning = "contrast " + c.name() +
                       " violates the rectangle property (worst increment " +
                       detail::format_double(report.worst_violation) +
                       "); the value is the quantile-coupling integral, not necessarily the "
                       "optimal transport cost";
    }
  }
  auto const fv = f.values();
  auto const gv = g.values();
  result.value  = pairwise_sum_of(0, fv.size(), [&](std::size_t j) { return c(fv[j], gv[j]); }) /
                 static_cast<double>(fv.size());
  return result;
}

/// (grid average of |F^- - G^-|^p)^(1/p).
inline double wasserstein_p(QuantileCurve const &f, QuantileCurve const &g, double p)
{
  if (!(p >= 1.0) || !std::isfinite(p))
  {
    throw DomainError("Wasserstein order p must be >= 1");
  }
  double const cost = wasserstein_cost(f, g, ContrastSpec::power(p)).value;
  if (p == 1.0)
  {
    return cost;
  }
  if (p == 2.0)
  {
    return std::sqrt(cost);
  }
  return std::pow(cost, 1.0 / p);
}

//------------------------------------------------------------------------------
// Brute-force oracle.
//------------------------------------------------------------------------------

inline constexpr std::size_t kBruteForceMaxAtoms = 12;

namespace detail {

/// Smallest D such that every weight is an integer multiple of 1/D.
inline std::int64_t common_denominator(std::span<double const> weights)
{
  constexpr std::int64_t kMaxDenominator = 5040;
  for (std::int64_t d = 1; d <= kMaxDenominator; ++d)
  {
    bool ok = true;
    for (double w : weights)
    {
      double const scaled = w * static_cast<double>(d);
      if (std::abs(scaled - std::round(scaled)) > 1e-9 * static_cast<double>(d))
      {
        ok = false;
        break;
      }
    }
    if (ok)
    {
      return d;
    }
  }
  throw DomainError("brute-force oracle needs weights that are ratios of small integers");
}

/// Exact minimum over the vertices of the transport polytope with integer
/// margins. Every vertex has a forest support, hence a line (row or column)
/// carrying a single positive cell, so it is reached by repeatedly picking a
/// cell, shipping min(row residual, column residual) through it and retiring
/// the exhausted line(s). The recursion enumerates all such choices and
/// memoises on the residual vector.
class VertexEnumerator
{
public:
  VertexEnumerator(std::vector<double> cost, std::size_t rows, std::size_t cols)
    : cost_(std::move(cost))
    , rows_(rows)
    , cols_(cols)
  {}

  double solve(std::vector<std::int64_t> &residual)
  {
    std::string key(reinterpret_cast<char const *>(residual.data()),
                    residual.size() * sizeof(std::int64_t));
    if (auto it = memo_.find(key); it != memo_.end())
    {
      return it->second;
    }
    double best       = std::numeric_limits<double>::infinity();
    bool   any_active = false;
    for (std::size_t i = 0; i < rows_; ++i)
    {
      if (residual[i] == 0)
      {
        continue;
      }
      for (std::size_t j = 0; j < cols_; ++j)
      {
        std::int64_t &col = residual[rows_ + j];
        if (col == 0)
        {
          continue;
        }
        any_active             = true;
        std::int64_t const amt = std::min(residual[i], col);
        residual[i] -= amt;
        col -= amt;
        double const value = static_cast<double>(amt) * cost_[i * cols_ + j] + solve(residual);
        residual[i] += amt;
        col += amt;
        best = std::min(best, value);
      }
    }
    if (!any_active)
    {
      best = 0.0;
    }
    memo_.emplace(std::move(key), best);
    return best;
  }

private:
  std::vector<double>                     cost_;
  std::size_t                             rows_;
  std::size_t                             cols_;
  std::unordered_map<std::string, double> memo_;
};

}  // namespace detail

/// Exact min over couplings pi of sum_kl pi_kl c(x_k, y_l), independent of the
/// quantile coupling. Limited to 12 atoms in total, with weights that are
/// ratios of small integers.
inline double brute_force_cost(DiscreteDistribution const &f, DiscreteDistribution const &g,
                               ContrastSpec const &c)
{
  if (f.size() + g.size() > kBruteForceMaxAtoms)
  {
    throw SizeError("brute-force oracle is limited to " + std::to_string(kBruteForceMaxAtoms) +
                    " atoms in total");
  }
  std::int64_t const df = detail::common_denominator(f.weights());
  std::int64_t const dg = detail::common_denominator(g.weights());
  std::int64_t const l  = std::lcm(df, dg);

  std::vector<std::int64_t> residual;
  residual.reserve(f.size() + g.size());
  for (double w : f.weights())
  {
    residual.push_back(std::llround(w * static_cast<double>(l)));
  }
  for (double w : g.weights())
  {
    residual.push_back(std::llround(w * static_cast<double>(l)));
  }

  std::int64_t const row_total = std::accumulate(residual.begin(), residual.begin() + static_cast<std::ptrdiff_t>(f.size()), std::int64_t{0});
  std::int64_t const col_total = std::accumulate(residual.begin() + static_cast<std::ptrdiff_t>(f.size()), residual.end(), std::int64_t{0});
  if (row_total != l || col_total != l)
  {
    throw DomainError("brute-force oracle: weights do not sum to one as exact fractions");
  }

  std::vector<double> cost(f.size() * g.size());
  for (std::size_t i = 0; i < f.size(); ++i)
  {
    for (std::size_t j = 0; j < g.size(); ++j)
    {
      cost[i * g.size() + j] = evaluate(c, f.values()[i], g.values()[j]);
    }
  }
  detail::VertexEnumerator solver(std::move(cost), f.size(), g.size());
  return solver.solve(residual) / static_cast<double>(l);
}

}  // namespace frechet
