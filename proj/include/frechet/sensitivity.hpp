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

// Sensitivity indices of a scalar or CDF-valued code output with respect to
// one input X_i.
//
//   * Sobol indices Var(E[Y|X_i]) / Var(Y) are estimated with a pick-freeze
//     design: pairs of input rows that share column i and redraw the rest.
//     For CDF outputs the estimator runs on every quantile level and the
//     numerator and denominator are averaged over the grid.
//   * Contrast indices (min E c - E min E[c|X_i]) / min E c have no
//     pick-freeze identity for non-quadratic c and use a nested design:
//     n_outer draws of X_i, each with n_inner draws of the other inputs.
//
// Input ids are 1-based throughout this header, matching X_1..X_d.

#include "frechet/common.hpp"
#include "frechet/contrasts.hpp"
#include "frechet/frechet_features.hpp"
#include "frechet/harness/distributions.hpp"
#include "frechet/quantile_model.hpp"
#include "frechet/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace frechet {

enum class EstimatorMethod
{
  kPickFreeze,
  kNested,
  kClosedForm
};

inline std::string to_string(EstimatorMethod m)
{
  switch (m)
  {
  case EstimatorMethod::kPickFreeze:
    return "pick-freeze";
  case EstimatorMethod::kNested:
    return "nested";
  case EstimatorMethod::kClosedForm:
    return "closed-form";
  }
  return "unknown";
}

struct SensitivityResult
{
  /// Raw estimate, never clamped; negative values are diagnostic.
  double          index       = 0.0;
  double          numerator   = 0.0;
  double          denominator = 0.0;
  std::size_t     input_id    = 0;
  EstimatorMethod method      = EstimatorMethod::kPickFreeze;
  std::size_t     n_outer     = 0;
  std::size_t     n_inner     = 0;
  /// Sample standard deviation over replicates; NaN for a single design.
  double std_error = std::numeric_limits<double>::quiet_NaN();
  /// Index from each replicate, replicate 0 first (empty for a single design).
  std::vector<double> replicates;

  double clamped_index() const
  {
    return std::clamp(index, 0.0, 1.0);
  }

  double replicate_mean() const
  {
    return replicates.empty() ? index : pairwise_mean(replicates);
  }
};

namespace detail {

inline SensitivityResult make_result(double numerator, double denominator, std::size_t input_id,
                                     EstimatorMethod method, std::size_t n_outer,
                                     std::size_t n_inner)
{
  if (!(denominator > 0.0))
  {
    throw DegenerateError("sensitivity denominator vanished (output has no variability)");
  }
  SensitivityResult r;
  r.numerator   = numerator;
  r.denominator = denominator;
  r.index       = numerator / denominator;
  r.input_id    = input_id;
  r.method      = method;
  r.n_outer     = n_outer;
  r.n_inner     = n_inner;
  return r;
}

inline void require_input_id(std::size_t input_id, std::size_t dim)
{
  if (input_id < 1 || input_id > dim)
  {
    throw DomainError("input id " + std::to_string(input_id) + " outside 1.." +
                      std::to_string(dim));
  }
}

}  // namespace detail

//------------------------------------------------------------------------------
// Designs.
//------------------------------------------------------------------------------

/// Pick-freeze design for input `input_id`: `frozen_inputs` equals `inputs`
/// in that column and is redrawn independently elsewhere. `Output` is
/// std::vector<double> for scalar codes or CdfEnsemble for CDF codes.
template <typename Output>
struct PairedDesign
{
  std::size_t input_id = 0;
  Matrix      inputs;
  Matrix      frozen_inputs;
  Output      outputs;
  Output      frozen_outputs;
};

using ScalarPairedDesign = PairedDesign<std::vector<double>>;
using CdfPairedDesign    = PairedDesign<CdfEnsemble>;

/// Nested design: cell k holds rows [k * n_inner, (k + 1) * n_inner), all
/// sharing one draw of X_i with independent draws of the other inputs.
template <typename Output>
struct NestedDesign
{
  std::size_t input_id = 0;
  std::size_t n_outer  = 0;
  std::size_t n_inner  = 0;
  Matrix      inputs;
  Output      outputs;
};

using ScalarNestedDesign = NestedDesign<std::vector<double>>;
using CdfNestedDesign    = NestedDesign<CdfEnsemble>;

/// A stochastic code: independent input laws and a map from one input row to
/// `output_width` numbers (1 for scalar codes, the grid size for CDF codes).
/// `evaluate(row_index, x, out)` may throw ModelError naming row_index.
template <typename Evaluate>
struct Code
{
  std::vector<InputLaw> laws;
  std::size_t           output_width = 1;
  Evaluate              evaluate;

  std::size_t dim() const noexcept
  {
    return laws.size();
  }
};

template <typename Evaluate>
Code(std::vector<InputLaw>, std::size_t, Evaluate) -> Code<Evaluate>;

namespace detail {

template <typename Evaluate>
void evaluate_rows(Code<Evaluate> const &code, Matrix const &inputs, Matrix &outputs)
{
  parallel_for(inputs.rows(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k)
    {
      code.evaluate(k, inputs.row(k), outputs.row(k));
    }
  });
}

inline std::vector<double> column_vector(Matrix const &m)
{
  return {m.data().begin(), m.data().end()};
}

}  // namespace detail

/// Raw pick-freeze inputs and outputs; row k uses stream (seed, input_id, replicate, k).
template <typename Evaluate>
PairedDesign<Matrix> draw_paired(Code<Evaluate> const &code, std::size_t input_id, std::size_t n,
                                 std::uint64_t seed, std::size_t replicate)
{
  detail::require_input_id(input_id, code.dim());
  if (n < 2)
  {
    throw DesignError("pick-freeze design needs at least 2 pairs");
  }
  std::size_t const    d   = code.dim();
  std::size_t const    col = input_id - 1;
  PairedDesign<Matrix> design;
  design.input_id      = input_id;
  design.inputs        = Matrix(n, d);
  design.frozen_inputs = Matrix(n, d);
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k)
    {
      RngStream rng({seed, input_id, replicate, k});
      draw_inputs(code.laws, rng, design.inputs.row(k));
      draw_inputs(code.laws, rng, design.frozen_inputs.row(k));
      design.frozen_inputs(k, col) = design.inputs(k, col);
    }
  });
  design.outputs        = Matrix(n, code.output_width);
  design.frozen_outputs = Matrix(n, code.output_width);
  detail::evaluate_rows(code, design.inputs, design.outputs);
  detail::evaluate_rows(code, design.frozen_inputs, design.frozen_outputs);
  return design;
}

/// Raw nested inputs and outputs; cell k uses stream (seed, input_id, replicate, k).
template <typename Evaluate>
NestedDesign<Matrix> draw_nested(Code<Evaluate> const &code, std::size_t input_id,
                                 std::size_t n_outer, std::size_t n_inner, std::uint64_t seed,
                                 std::size_t replicate)
{
  detail::require_input_id(input_id, code.dim());
  if (n_outer < 2)
  {
    throw DesignError("nested design needs at least 2 outer draws");
  }
  if (n_inner < 2)
  {
    throw DesignError("nested design needs at least 2 inner draws per cell");
  }
  std::size_t const    d   = code.dim();
  std::size_t const    col = input_id - 1;
  NestedDesign<Matrix> design{input_id, n_outer, n_inner, Matrix(n_outer * n_inner, d), Matrix()};
  parallel_for(n_outer, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k)
    {
      RngStream    rng({seed, input_id, replicate, k});
      double const frozen = code.laws[col].sample(rng);
      for (std::size_t t = 0; t < n_inner; ++t)
      {
        auto row = design.inputs.row(k * n_inner + t);
        draw_inputs(code.laws, rng, row);
        row[col] = frozen;
      }
    }
  });
  design.outputs = Matrix(n_outer * n_inner, code.output_width);
  detail::evaluate_rows(code, design.inputs, design.outputs);
  return design;
}

template <typename Evaluate>
ScalarPairedDesign make_scalar_paired_design(Code<Evaluate> const &code, std::size_t input_id,
                                             std::size_t n, std::uint64_t seed,
                                             std::size_t replicate = 0)
{
  auto raw = draw_paired(code, input_id, n, seed, replicate);
  return {raw.input_id, std::move(raw.inputs), std::move(raw.frozen_inputs),
          detail::column_vector(raw.outputs), detail::column_vector(raw.frozen_outputs)};
}

template <typename Evaluate>
CdfPairedDesign make_cdf_paired_design(Code<Evaluate> const &code, ProbGrid const &grid,
                                       std::size_t input_id, std::size_t n, std::uint64_t seed,
                                       std::size_t replicate = 0)
{
  auto raw = draw_paired(code, input_id, n, seed, replicate);
  CdfEnsemble first(grid, std::move(raw.outputs), {}, raw.inputs);
  CdfEnsemble second(grid, std::move(raw.frozen_outputs), {}, raw.frozen_inputs);
  return {raw.input_id, std::move(raw.inputs), std::move(raw.frozen_inputs), std::move(first),
          std::move(second)};
}

template <typename Evaluate>
ScalarNestedDesign make_scalar_nested_design(Code<Evaluate> const &code, std::size_t input_id,
                                             std::size_t n_outer, std::size_t n_inner,
                                             std::uint64_t seed, std::size_t replicate = 0)
{
  auto raw = draw_nested(code, input_id, n_outer, n_inner, seed, replicate);
  return {raw.input_id, n_outer, n_inner, std::move(raw.inputs), detail::column_vector(raw.outputs)};
}

template <typename Evaluate>
CdfNestedDesign make_cdf_nested_design(Code<Evaluate> const &code, ProbGrid const &grid,
                                       std::size_t input_id, std::size_t n_outer,
                                       std::size_t n_inner, std::uint64_t seed,
                                       std::size_t replicate = 0)
{
  auto        raw = draw_nested(code, input_id, n_outer, n_inner, seed, replicate);
  CdfEnsemble ensemble(grid, std::move(raw.outputs), {}, raw.inputs);
  return {raw.input_id, n_outer, n_inner, std::move(raw.inputs), std::move(ensemble)};
}

/// Pick-freeze pairs read off a nested design: inner draws 2t and 2t+1 of
/// each cell share X_i and nothing else. An odd last draw is dropped.
inline CdfPairedDesign pick_freeze_from_nested(CdfNestedDesign const &nested)
{
  std::size_t const pairs_per_cell = nested.n_inner / 2;
  std::size_t const n              = nested.n_outer * pairs_per_cell;
  if (n < 2)
  {
    throw DesignError("nested design too small to extract pick-freeze pairs");
  }
  std::size_t const m = nested.outputs.grid().size();
  std::size_t const d = nested.inputs.cols();
  Matrix            a(n, m), b(n, m), xa(n, d), xb(n, d);
  for (std::size_t k = 0; k < nested.n_outer; ++k)
  {
    for (std::size_t t = 0; t < pairs_per_cell; ++t)
    {
      std::size_t const p  = k * pairs_per_cell + t;
      std::size_t const r0 = k * nested.n_inner + 2 * t;
      std::copy_n(nested.outputs.row(r0).begin(), m, a.row(p).begin());
      std::copy_n(nested.outputs.row(r0 + 1).begin(), m, b.row(p).begin());
      std::copy_n(nested.inputs.row(r0).begin(), d, xa.row(p).begin());
      std::copy_n(nested.inputs.row(r0 + 1).begin(), d, xb.row(p).begin());
    }
  }
  auto const &grid = nested.outputs.grid();
  return {nested.input_id, xa, xb, CdfEnsemble(grid, std::move(a), {}, xa),
          CdfEnsemble(grid, std::move(b), {}, xb)};
}

inline ScalarPairedDesign pick_freeze_from_nested(ScalarNestedDesign const &nested)
{
  std::size_t const pairs_per_cell = nested.n_inner / 2;
  std::size_t const n              = nested.n_outer * pairs_per_cell;
  if (n < 2)
  {
    throw DesignError("nested design too small to extract pick-freeze pairs");
  }
  std::size_t const   d = nested.inputs.cols();
  Matrix              xa(n, d), xb(n, d);
  std::vector<double> a(n), b(n);
  for (std::size_t k = 0; k < nested.n_outer; ++k)
  {
    for (std::size_t t = 0; t < pairs_per_cell; ++t)
    {
      std::size_t const p  = k * pairs_per_cell + t;
      std::size_t const r0 = k * nested.n_inner + 2 * t;
      a[p]                 = nested.outputs[r0];
      b[p]                 = nested.outputs[r0 + 1];
      std::copy_n(nested.inputs.row(r0).begin(), d, xa.row(p).begin());
      std::copy_n(nested.inputs.row(r0 + 1).begin(), d, xb.row(p).begin());
    }
  }
  return {nested.input_id, std::move(xa), std::move(xb), std::move(a), std::move(b)};
}

//------------------------------------------------------------------------------
// Estimators on a fixed design.
//------------------------------------------------------------------------------

namespace detail {

struct PickFreezeTerms
{
  double numerator;
  double denominator;
};

/// Constant outputs leave a rounding residue instead of a zero variance, so
/// they are detected by exact comparison.
inline bool all_rows_equal(Matrix const &a, Matrix const &b)
{
  auto const first = a.row(0);
  auto const same  = [&](Matrix const &m) {
    for (std::size_t k = 0; k < m.rows(); ++k)
    {
      if (!std::equal(first.begin(), first.end(), m.row(k).begin()))
      {
        return false;
      }
    }
    return true;
  };
  return same(a) && same(b);
}

inline bool all_rows_equal(Matrix const &a)
{
  return all_rows_equal(a, a);
}

/// numerator = mean(Y Y') - (pooled mean)^2, denominator = pooled variance.
inline PickFreezeTerms pick_freeze_terms(std::span<double const> y, std::span<double const> y2)
{
  std::size_t const n        = y.size();
  double const      cross    = pairwise_sum_of(0, n, [&](std::size_t k) { return y[k] * y2[k]; }) /
                       static_cast<double>(n);
  double const pooled_mean =
      (pairwise_sum(y) + pairwise_sum(y2)) / static_cast<double>(2 * n);
  double const pooled_var = (pairwise_sum_of(0, n,
                                             [&](std::size_t k) {
                                               double const a = y[k] - pooled_mean;
                                               double const b = y2[k] - pooled_mean;
                                               return a * a + b * b;
                                             })) /
                            static_cast<double>(2 * n);
  return {cross - pooled_mean * pooled_mean, pooled_var};
}

}  // namespace detail

inline SensitivityResult sobol_scalar(ScalarPairedDesign const &design)
{
  std::size_t const n = design.outputs.size();
  if (n < 2 || design.frozen_outputs.size() != n)
  {
    throw DesignError("pick-freeze design needs at least 2 complete pairs");
  }
  auto const terms = detail::pick_freeze_terms(design.outputs, design.frozen_outputs);
  if ((detail::all_equal(design.outputs) && detail::all_equal(design.frozen_outputs) &&
       design.outputs[0] == design.frozen_outputs[0]) || !(terms.denominator > 0.0))
  {
    throw DegenerateError("output variance is zero");
  }
  return detail::make_result(terms.numerator, terms.denominator, design.input_id,
                             EstimatorMethod::kPickFreeze, n, 1);
}

/// Pick-freeze numerator on each quantile level, averaged over the grid,
/// over the ensemble variance of the pooled 2n curves.
inline SensitivityResult sobol_cdf(CdfPairedDesign const &design)
{
  auto const &a = design.outputs;
  auto const &b = design.frozen_outputs;
  require_same_grid(a.grid(), b.grid());
  std::size_t const n = a.size();
  if (n < 2 || b.size() != n)
  {
    throw DesignError("pick-freeze design needs at least 2 complete pairs");
  }
  std::size_t const   m = a.grid().size();
  std::vector<double> numerators(m), variances(m);
  parallel_for(m, [&](std::size_t begin, std::size_t end) {
    std::vector<double> y(n), y2(n);
    for (std::size_t j = begin; j < end; ++j)
    {
      for (std::size_t k = 0; k < n; ++k)
      {
        y[k]  = a.curves()(k, j);
        y2[k] = b.curves()(k, j);
      }
      auto const terms = detail::pick_freeze_terms(y, y2);
      numerators[j]    = terms.numerator;
      variances[j]     = terms.denominator;
    }
  });
  double const denominator = pairwise_mean(variances);
  if (detail::all_rows_equal(a.curves(), b.curves()) || !(denominator > 0.0))
  {
    throw DegenerateError("total variance of the random CDF is zero");
  }
  return detail::make_result(pairwise_mean(numerators), denominator, design.input_id,
                             EstimatorMethod::kPickFreeze, n, 1);
}

/// (min E c(Y, .) - mean over cells of the cell minimum) / min E c(Y, .).
inline SensitivityResult contrast_index_scalar(ScalarNestedDesign const &design,
                                               ContrastSpec const &c)
{
  if (design.n_inner < 2)
  {
    throw DesignError("nested design cells need at least 2 inner draws");
  }
  if (design.outputs.size() != design.n_outer * design.n_inner || design.n_outer < 1)
  {
    throw DesignError("nested design output count does not match n_outer x n_inner");
  }
  double const        outer = fit_scalar_feature(c, design.outputs).objective;
  std::vector<double> cell_min(design.n_outer);
  parallel_for(design.n_outer, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k)
    {
      std::span<double const> cell(design.outputs.data() + k * design.n_inner, design.n_inner);
      cell_min[k] = fit_scalar_feature(c, cell).objective;
    }
  });
  if (detail::all_equal(design.outputs) || !(outer > 0.0))
  {
    throw DegenerateError("minimal expected contrast is zero (constant output)");
  }
  double const inner = pairwise_mean(cell_min);
  return detail::make_result(outer - inner, outer, design.input_id, EstimatorMethod::kNested,
                             design.n_outer, design.n_inner);
}

/// Contrast index of a random CDF. Global term: expected W_c cost to the
/// c-feature of the pooled ensemble. Conditional term: per cell, the expected
/// cost to the cell's own feature, averaged over cells. With Absolute this
/// is the median index.
inline SensitivityResult contrast_index_cdf(CdfNestedDesign const &design, ContrastSpec const &c)
{
  if (design.n_inner < 2)
  {
    throw DesignError("nested design cells need at least 2 inner draws");
  }
  if (design.outputs.size() != design.n_outer * design.n_inner || design.n_outer < 1)
  {
    throw DesignError("nested design curve count does not match n_outer x n_inner");
  }
  double const        outer = frechet_feature(design.outputs, c).expected_cost;
  std::vector<double> cell_cost(design.n_outer);
  for (std::size_t k = 0; k < design.n_outer; ++k)
  {
    auto const cell = design.outputs.slice(k * design.n_inner, (k + 1) * design.n_inner);
    cell_cost[k]    = frechet_feature(cell, c).expected_cost;
  }
  if (detail::all_rows_equal(design.outputs.curves()) || !(outer > 0.0))
  {
    throw DegenerateError("minimal expected cost is zero (the random CDF is constant)");
  }
  double const inner = pairwise_mean(cell_cost);
  return detail::make_result(outer - inner, outer, design.input_id, EstimatorMethod::kNested,
                             design.n_outer, design.n_inner);
}

//------------------------------------------------------------------------------
// Replicated estimators. Replicate r draws its design from streams keyed by
// (seed, input_id, r, .); the reported estimate is replicate 0 and std_error
// is the sample standard deviation over all replicates.
//------------------------------------------------------------------------------

inline constexpr std::size_t kDefaultReplicates = 20;
inline constexpr std::size_t kDefaultOuter      = 500;
inline constexpr std::size_t kDefaultInner      = 100;

template <typename Estimate>
SensitivityResult replicate_estimator(std::size_t replicates, Estimate const &estimate)
{
  if (replicates < 1)
  {
    throw DomainError("at least one replicate is required");
  }
  SensitivityResult first = estimate(std::size_t{0});
  first.replicates.push_back(first.index);
  for (std::size_t r = 1; r < replicates; ++r)
  {
    first.replicates.push_back(estimate(r).index);
  }
  if (replicates >= 2)
  {
    double const mean = pairwise_mean(first.replicates);
    double const ss   = pairwise_sum_of(0, replicates, [&](std::size_t r) {
      double const dlt = first.replicates[r] - mean;
      return dlt * dlt;
    });
    first.std_error   = std::sqrt(ss / static_cast<double>(replicates - 1));
  }
  return first;
}

template <typename Evaluate>
SensitivityResult estimate_sobol_scalar(Code<Evaluate> const &code, std::size_t input_id,
                                        std::size_t n, std::uint64_t seed,
                                        std::size_t replicates = kDefaultReplicates)
{
  return replicate_estimator(replicates, [&](std::size_t r) {
    return sobol_scalar(make_scalar_paired_design(code, input_id, n, seed, r));
  });
}

template <typename Evaluate>
SensitivityResult estimate_sobol_cdf(Code<Evaluate> const &code, ProbGrid const &grid,
                                     std::size_t input_id, std::size_t n, std::uint64_t seed,
                                     std::size_t replicates = kDefaultReplicates)
{
  return replicate_estimator(replicates, [&](std::size_t r) {
    return sobol_cdf(make_cdf_paired_design(code, grid, input_id, n, seed, r));
  });
}

template <typename Evaluate>
SensitivityResult estimate_contrast_index_scalar(Code<Evaluate> const &code, std::size_t input_id,
                                                 ContrastSpec const &c, std::size_t n_outer,
                                                 std::size_t n_inner, std::uint64_t seed,
                                                 std::size_t replicates = kDefaultReplicates)
{
  return replicate_estimator(replicates, [&](std::size_t r) {
    return contrast_index_scalar(
        make_scalar_nested_design(code, input_id, n_outer, n_inner, seed, r), c);
  });
}

template <typename Evaluate>
SensitivityResult estimate_contrast_index_cdf(Code<Evaluate> const &code, ProbGrid const &grid,
                                              std::size_t input_id, ContrastSpec const &c,
                                              std::size_t n_outer, std::size_t n_inner,
                                              std::uint64_t seed,
                                              std::size_t   replicates = kDefaultReplicates)
{
  return replicate_estimator(replicates, [&](std::size_t r) {
    return contrast_index_cdf(
        make_cdf_nested_design(code, grid, input_id, n_outer, n_inner, seed, r), c);
  });
}

/// Squared contrast index and pick-freeze Sobol index computed on the same
/// nested designs, replicate by replicate.
struct PairedIndexEstimates
{
  SensitivityResult contrast;
  SensitivityResult sobol;
};

template <typename Evaluate>
PairedIndexEstimates estimate_contrast_and_sobol_cdf(Code<Evaluate> const &code,
                                                     ProbGrid const &grid, std::size_t input_id,
                                                     ContrastSpec const &c, std::size_t n_outer,
                                                     std::size_t n_inner, std::uint64_t seed,
                                                     std::size_t replicates = kDefaultReplicates)
{
  std::vector<SensitivityResult> sobol_runs;
  auto contrast = replicate_estimator(replicates, [&](std::size_t r) {
    auto const design = make_cdf_nested_design(code, grid, input_id, n_outer, n_inner, seed, r);
    sobol_runs.push_back(sobol_cdf(pick_freeze_from_nested(design)));
    return contrast_index_cdf(design, c);
  });
  auto sobol = replicate_estimator(replicates, [&](std::size_t r) { return sobol_runs[r]; });
  return {std::move(contrast), std::move(sobol)};
}

//------------------------------------------------------------------------------
// Closed forms for the location-scale model Sigma * F0^-1(u) + M.
//------------------------------------------------------------------------------

struct LocationScaleMoments
{
  double var_scale           = 0.0;
  double var_location        = 0.0;
  double cov_scale_location  = 0.0;
  /// E xi = integral of F0^-1 over (0,1).
  double mean_xi = 0.0;
};

struct LocationScaleSobol
{
  double scale;
  double location;
  double denominator;
};

/// S_Sigma = (Var Sigma + 2 cov E xi) / D and S_M = (Var M + 2 cov E xi) / D
/// with D = Var Sigma + Var M + 2 cov E xi. The Var Sigma terms carry an
/// implicit factor E xi^2, so the values are exact for a standardised base
/// (E xi^2 = 1). No normalisation is applied: with cov != 0 the two need not
/// sum to one.
inline LocationScaleSobol location_scale_sobol(LocationScaleMoments const &m)
{
  double const cross       = 2.0 * m.cov_scale_location * m.mean_xi;
  double const denominator = m.var_scale + m.var_location + cross;
  if (!(denominator > 0.0))
  {
    throw DomainError("location-scale Sobol denominator must be positive");
  }
  return {(m.var_scale + cross) / denominator, (m.var_location + cross) / denominator,
          denominator};
}

/// Moments of the conditional expectations E[Sigma|X_i], E[M|X_i].
struct ConditionalMoments
{
  double var_scale          = 0.0;
  double var_location       = 0.0;
  double cov_scale_location = 0.0;
};

/// Index of X_i when Sigma and M depend on several inputs:
/// (Var E[Sigma|X_i] + 2 cov(E[Sigma|X_i], E[M|X_i]) E xi + Var E[M|X_i]) / D.
inline double location_scale_sobol_input(LocationScaleMoments const &total,
                                         ConditionalMoments const   &conditional)
{
  double const denominator =
      total.var_scale + total.var_location + 2.0 * total.cov_scale_location * total.mean_xi;
  if (!(denominator > 0.0))
  {
    throw DomainError("location-scale Sobol denominator must be positive");
  }
  return (conditional.var_scale + 2.0 * conditional.cov_scale_location * total.mean_xi +
          conditional.var_location) /
         denominator;
}

}  // namespace frechet
