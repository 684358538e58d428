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

// Features of a random CDF. For a contrast with the rectangle property the
// feature curve is obtained level by level: its quantile at u is the scalar
// feature of the column of ensemble quantiles at u.

#include "frechet/common.hpp"
#include "frechet/contrasts.hpp"
#include "frechet/quantile_model.hpp"
#include "frechet/transport_costs.hpp"

#include <cmath>
#include <optional>
#include <span>
#include <vector>

namespace frechet {

/// n quantile curves sharing one grid, with probability weights and an
/// optional n x d matrix of the inputs that produced each curve.
class CdfEnsemble
{
public:
  /// Empty `weights` means uniform. Weights may be zero (the curve then has no
  /// influence) but must be finite, nonnegative and sum to one.
  CdfEnsemble(ProbGrid grid, Matrix curves, std::vector<double> weights = {},
              std::optional<Matrix> inputs = std::nullopt)
    : grid_(std::move(grid))
    , curves_(std::move(curves))
    , weights_(std::move(weights))
    , inputs_(std::move(inputs))
  {
    std::size_t const n = curves_.rows();
    if (n == 0)
    {
      throw SizeError("an ensemble needs at least one curve");
    }
    if (curves_.cols() != grid_.size())
    {
      throw SizeError("ensemble curves have " + std::to_string(curves_.cols()) +
                      " values for a grid of " + std::to_string(grid_.size()) + " levels");
    }
    for (std::size_t k = 0; k < n; ++k)
    {
      auto const row = curves_.row(k);
      for (std::size_t j = 0; j < row.size(); ++j)
      {
        if (!std::isfinite(row[j]) || (j > 0 && row[j] < row[j - 1]))
        {
          throw ValidationError("ensemble curve " + std::to_string(k) +
                                    " is not a finite nondecreasing sequence",
                                k);
        }
      }
    }
    if (weights_.empty())
    {
      uniform_ = true;
      weights_.assign(n, 1.0 / static_cast<double>(n));
    }
    else
    {
      if (weights_.size() != n)
      {
        throw SizeError("ensemble weights and curves differ in count");
      }
      for (std::size_t k = 0; k < n; ++k)
      {
        if (!(weights_[k] >= 0.0) || !std::isfinite(weights_[k]))
        {
          throw ValidationError("ensemble weights must be finite and nonnegative", k);
        }
      }
      if (std::abs(pairwise_sum(weights_) - 1.0) > 1e-12)
      {
        throw DomainError("ensemble weights must sum to 1");
      }
      uniform_ = detail::all_equal(weights_);
    }
    if (inputs_ && inputs_->rows() != n)
    {
      throw SizeError("input matrix row count does not match the number of curves");
    }
  }

  ProbGrid const &grid() const noexcept
  {
    return grid_;
  }
  std::size_t size() const noexcept
  {
    return curves_.rows();
  }
  Matrix const &curves() const noexcept
  {
    return curves_;
  }
  std::span<double const> row(std::size_t k) const
  {
    return curves_.row(k);
  }
  QuantileCurve curve(std::size_t k) const
  {
    auto const r = curves_.row(k);
    return {grid_, std::vector<double>(r.begin(), r.end())};
  }
  std::span<double const> weights() const noexcept
  {
    return weights_;
  }
  bool uniform_weights() const noexcept
  {
    return uniform_;
  }
  std::optional<Matrix> const &inputs() const noexcept
  {
    return inputs_;
  }

  /// Curves [begin, end) with their weights renormalised (uniform stays uniform).
  CdfEnsemble slice(std::size_t begin, std::size_t end) const
  {
    if (begin >= end || end > size())
    {
      throw SizeError("invalid ensemble slice");
    }
    std::size_t const   m = grid_.size();
    std::vector<double> data(curves_.data().begin() + static_cast<std::ptrdiff_t>(begin * m),
                             curves_.data().begin() + static_cast<std::ptrdiff_t>(end * m));
    std::vector<double> w;
    if (!uniform_)
    {
      w.assign(weights_.begin() + static_cast<std::ptrdiff_t>(begin),
               weights_.begin() + static_cast<std::ptrdiff_t>(end));
      double const total = pairwise_sum(w);
      for (double &x : w)
      {
        x /= total;
      }
    }
    std::optional<Matrix> in;
    if (inputs_)
    {
      std::size_t const d = inputs_->cols();
      in = Matrix(end - begin, d,
                  std::vector<double>(inputs_->data().begin() + static_cast<std::ptrdiff_t>(begin * d),
                                      inputs_->data().begin() + static_cast<std::ptrdiff_t>(end * d)));
    }
    return CdfEnsemble(grid_, Matrix(end - begin, m, std::move(data)), std::move(w), std::move(in));
  }

private:
  ProbGrid              grid_;
  Matrix                curves_;
  std::vector<double>   weights_;
  std::optional<Matrix> inputs_;
  bool                  uniform_ = false;
};

struct FeatureCurve
{
  QuantileCurve curve;
  ContrastSpec  contrast;
  /// Whether isotonic repair changed the assembled values.
  bool repaired = false;
  /// Weighted mean over the ensemble of W_c(curve_k, feature).
  double expected_cost = 0.0;
};

/// L2 projection onto nondecreasing sequences (pool adjacent violators).
inline std::vector<double> isotonic_repair(std::span<double const> values)
{
  struct Block
  {
    double      mean;
    std::size_t count;
  };
  std::vector<Block> blocks;
  blocks.reserve(values.size());
  for (double v : values)
  {
    blocks.push_back({v, 1});
    while (blocks.size() > 1 && blocks[blocks.size() - 2].mean > blocks.back().mean)
    {
      Block const top = blocks.back();
      blocks.pop_back();
      Block &prev    = blocks.back();
      auto const tot = static_cast<double>(prev.count + top.count);
      prev.mean      = (prev.mean * static_cast<double>(prev.count) +
                   top.mean * static_cast<double>(top.count)) /
                  tot;
      prev.count += top.count;
    }
  }
  std::vector<double> out;
  out.reserve(values.size());
  for (auto const &b : blocks)
  {
    out.insert(out.end(), b.count, b.mean);
  }
  return out;
}

namespace detail {

inline bool is_nondecreasing(std::span<double const> v)
{
  for (std::size_t j = 1; j < v.size(); ++j)
  {
    if (v[j] < v[j - 1])
    {
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// c-contrasted feature of the ensemble, computed level by level.
///
/// Each grid level gets the scalar feature of its column (lower convention
/// for medians and quantiles). The assembled values are passed through
/// isotonic_repair only if rounding in an iterative search broke
/// monotonicity; `repaired` records whether that happened.
inline FeatureCurve frechet_feature(CdfEnsemble const &e, ContrastSpec const &c)
{
  if (c.kind() == ContrastSpec::Kind::kNegProduct)
  {
    throw NonCoerciveError("contrast -xy has no minimiser in its second argument");
  }
  std::size_t const       n = e.size();
  std::size_t const       m = e.grid().size();
  std::vector<double>     values(m);
  std::vector<double>     objective(m);
  std::span<double const> w = e.uniform_weights() ? std::span<double const>{} : e.weights();
  parallel_for(m, [&](std::size_t begin, std::size_t end) {
    std::vector<double> column(n);
    for (std::size_t j = begin; j < end; ++j)
    {
      for (std::size_t k = 0; k < n; ++k)
      {
        column[k] = e.curves()(k, j);
      }
      auto const fit = detail::fit_inplace(c, column, w);
      values[j]      = fit.argmin;
      objective[j]   = fit.objective;
    }
  });
  bool repaired = false;
  if (!detail::is_nondecreasing(values))
  {
    values   = isotonic_repair(values);
    repaired = true;
  }
  QuantileCurve curve(e.grid(), std::move(values));
  double        expected = 0.0;
  if (repaired)
  {
    // Repaired levels no longer sit at the column minimiser; recompute.
    parallel_for(m, [&](std::size_t begin, std::size_t end) {
      for (std::size_t j = begin; j < end; ++j)
      {
        double const theta = curve[j];
        objective[j]       = pairwise_sum_of(0, n, [&](std::size_t k) {
          return e.weights()[k] * c(e.curves()(k, j), theta);
        });
      }
    });
  }
  expected = pairwise_mean(objective);
  return {std::move(curve), c, repaired, expected};
}

/// Wasserstein-2 Frechet mean: the pointwise weighted mean of quantiles.
inline FeatureCurve frechet_mean(CdfEnsemble const &e)
{
  return frechet_feature(e, ContrastSpec::squared());
}

/// Pointwise lower alpha-quantile; alpha = 0.5 is the Frechet median.
inline FeatureCurve frechet_quantile(CdfEnsemble const &e, double alpha)
{
  return frechet_feature(e, ContrastSpec::pinball(alpha));
}

inline FeatureCurve frechet_median(CdfEnsemble const &e)
{
  return frechet_quantile(e, 0.5);
}

/// Weighted mean of W_c(curve_k, g) over the ensemble.
inline double expected_cost(CdfEnsemble const &e, QuantileCurve const &g, ContrastSpec const &c)
{
  require_same_grid(e.grid(), g.grid());
  std::vector<double> per_curve(e.size());
  for (std::size_t k = 0; k < e.size(); ++k)
  {
    auto const row = e.row(k);
    per_curve[k]   = e.weights()[k] * pairwise_sum_of(0, row.size(), [&](std::size_t j) {
                     return c(row[j], g[j]);
                   }) / static_cast<double>(row.size());
  }
  return pairwise_sum(per_curve);
}

/// Grid average of the weighted (population) variance of each quantile
/// column; equals the weighted mean of W2^2(curve_k, frechet_mean).
inline double ensemble_variance(CdfEnsemble const &e)
{
  if (e.size() < 2)
  {
    throw DegenerateError("ensemble variance needs at least 2 curves");
  }
  std::size_t const   n = e.size();
  std::size_t const   m = e.grid().size();
  auto const          w = e.weights();
  std::vector<double> column_var(m);
  parallel_for(m, [&](std::size_t begin, std::size_t end) {
    for (std::size_t j = begin; j < end; ++j)
    {
      double const mean =
          pairwise_sum_of(0, n, [&](std::size_t k) { return w[k] * e.curves()(k, j); });
      column_var[j] = pairwise_sum_of(0, n, [&](std::size_t k) {
        double const d = e.curves()(k, j) - mean;
        return w[k] * d * d;
      });
    }
  });
  return pairwise_mean(column_var);
}

}  // namespace frechet
