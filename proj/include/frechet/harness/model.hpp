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

// Location-scale stochastic code: inputs X_1..X_d drive a location M(X) and a
// scale Sigma(X) > 0, and the output is the quantile curve
// Sigma * F0^-1(u) + M of the CDF F0((x - M) / Sigma).
//
// Model file keys (all top level):
//
//   base        "normal" | "uniform" | "exponential" | "tabulated:<csv>"
//               (csv columns: level, F0^-1(level); relative to the file)
//   M_map       expression in X1..Xd, default "0"
//   Sigma_map   expression in X1..Xd, default "1"  (also spelled "Σ_map")
//   input_laws  array of law strings, e.g. ["normal(0, 3)", "uniform(-1, 1)"]
//   n           number of curves, default 1000
//   grid_m      number of midpoint probability levels, default 512
//   seed        unsigned integer, default 42
//
// Environment variables are never consulted.

#include "frechet/common.hpp"
#include "frechet/frechet_features.hpp"
#include "frechet/harness/config.hpp"
#include "frechet/harness/distributions.hpp"
#include "frechet/harness/expression.hpp"
#include "frechet/io.hpp"
#include "frechet/quantile_model.hpp"
#include "frechet/rng.hpp"
#include "frechet/sensitivity.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace frechet {

class LocationScaleModel
{
public:
  LocationScaleModel(BaseDistribution base, Expression location, Expression scale,
                     std::vector<InputLaw> laws)
    : base_(std::move(base))
    , location_(std::move(location))
    , scale_(std::move(scale))
    , laws_(std::move(laws))
  {
    for (auto const *e : {&location_, &scale_})
    {
      if (e->max_input() > laws_.size())
      {
        throw ParseError("expression '" + e->source() + "' references X" +
                         std::to_string(e->max_input()) + " but only " +
                         std::to_string(laws_.size()) + " input law(s) are given");
      }
    }
  }

  BaseDistribution const &base() const noexcept
  {
    return base_;
  }
  Expression const &location() const noexcept
  {
    return location_;
  }
  Expression const &scale() const noexcept
  {
    return scale_;
  }
  std::vector<InputLaw> const &laws() const noexcept
  {
    return laws_;
  }
  std::size_t dim() const noexcept
  {
    return laws_.size();
  }

  /// The model as a stochastic code on `grid`, for the sensitivity estimators.
  auto code(ProbGrid const &grid) const
  {
    auto evaluate = [q = base_.quantiles(grid), location = location_, scale = scale_](
                        std::size_t row, std::span<double const> x, std::span<double> out) {
      double const sigma = scale(x);
      double const mu    = location(x);
      if (!(sigma > 0.0) || !std::isfinite(sigma))
      {
        throw ModelError("scale map output " + detail::format_double(sigma) +
                             " is not strictly positive",
                         row);
      }
      if (!std::isfinite(mu))
      {
        throw ModelError("location map output is not finite", row);
      }
      for (std::size_t j = 0; j < q.size(); ++j)
      {
        out[j] = sigma * q[j] + mu;
      }
    };
    return Code{laws_, grid.size(), std::move(evaluate)};
  }

private:
  BaseDistribution      base_;
  Expression            location_;
  Expression            scale_;
  std::vector<InputLaw> laws_;
};

/// A model file: the model plus its sampling settings.
struct ModelFile
{
  LocationScaleModel model;
  std::size_t        n      = 1000;
  std::size_t        grid_m = kDefaultGridSize;
  std::uint64_t      seed   = 42;
};

namespace detail {

inline BaseDistribution read_tabulated_base(std::filesystem::path const &path)
{
  auto in    = io::detail::open_in(path);
  auto table = io::detail::read_numeric_csv(in, true);
  std::vector<double> levels, values;
  for (auto const &row : table.rows)
  {
    if (row.size() != 2)
    {
      throw ParseError("tabulated base rows need exactly two columns (level, value)");
    }
    levels.push_back(row[0]);
    values.push_back(row[1]);
  }
  return BaseDistribution::tabulated(std::move(levels), std::move(values));
}

}  // namespace detail

/// Builds a model from parsed config. Relative tabulated-base paths resolve
/// against `directory`.
inline ModelFile model_from_config(Config const &cfg, std::filesystem::path const &directory = {})
{
  static constexpr char const *kKnown[] = {"base", "M_map", "Sigma_map", "Σ_map",
                                           "input_laws", "n", "grid_m", "seed"};
  for (auto const &[key, value] : cfg.values())
  {
    if (std::find(std::begin(kKnown), std::end(kKnown), key) == std::end(kKnown))
    {
      throw ParseError("line " + std::to_string(value.line) + ": unknown key '" + key + "'");
    }
  }
  if (cfg.contains("Sigma_map") && cfg.contains("Σ_map"))
  {
    throw ParseError("give either 'Sigma_map' or 'Σ_map', not both");
  }

  std::string const base_text = cfg.contains("base") ? cfg.string("base") : "normal";
  constexpr std::string_view kTabulated = "tabulated:";
  BaseDistribution base = std::string_view(base_text).substr(0, kTabulated.size()) == kTabulated
                              ? detail::read_tabulated_base(
                                    directory / base_text.substr(kTabulated.size()))
                              : BaseDistribution::parse(base_text);

  Expression location = Expression::parse(cfg.contains("M_map") ? cfg.string("M_map") : "0");
  std::string const scale_key = cfg.contains("Σ_map") ? "Σ_map" : "Sigma_map";
  Expression scale = Expression::parse(cfg.contains(scale_key) ? cfg.string(scale_key) : "1");

  std::vector<InputLaw> laws;
  if (cfg.contains("input_laws"))
  {
    for (auto const &text : cfg.strings("input_laws"))
    {
      laws.push_back(InputLaw::parse(text));
    }
  }

  ModelFile file{LocationScaleModel(std::move(base), std::move(location), std::move(scale),
                                    std::move(laws))};
  if (cfg.contains("n"))
  {
    file.n = cfg.unsigned_integer("n");
    if (file.n < 1)
    {
      throw ParseError("'n' must be at least 1");
    }
  }
  if (cfg.contains("grid_m"))
  {
    file.grid_m = cfg.unsigned_integer("grid_m");
  }
  if (cfg.contains("seed"))
  {
    file.seed = cfg.unsigned_integer("seed");
  }
  return file;
}

inline ModelFile load_model_file(std::filesystem::path const &path)
{
  auto in = io::detail::open_in(path);
  try
  {
    return model_from_config(Config::read(in), path.parent_path());
  }
  catch (ParseError const &e)
  {
    throw ParseError(path.string() + ": " + e.what());
  }
}

/// n curves Sigma_k * F0^-1(u_j) + M_k; row k draws its inputs from stream
/// (seed, 0, 0, k). The input matrix is attached to the ensemble.
inline CdfEnsemble sample_ensemble(LocationScaleModel const &model, std::size_t n,
                                   ProbGrid const &grid, std::uint64_t seed)
{
  if (n < 1)
  {
    throw DomainError("sample_ensemble needs n >= 1");
  }
  auto const code = model.code(grid);
  Matrix     inputs(n, model.dim());
  Matrix     curves(n, grid.size());
  parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t k = begin; k < end; ++k)
    {
      RngStream rng({seed, 0, 0, k});
      draw_inputs(model.laws(), rng, inputs.row(k));
      code.evaluate(k, inputs.row(k), curves.row(k));
    }
  });
  return CdfEnsemble(grid, std::move(curves), {}, std::move(inputs));
}

/// Grid quadrature of F0^-1, i.e. E xi for xi ~ F0.
inline double mean_xi(BaseDistribution const &base, ProbGrid const &grid)
{
  return pairwise_mean(base.quantiles(grid));
}

inline double mean_xi(LocationScaleModel const &model,
                      ProbGrid const &grid = ProbGrid::midpoint(kDefaultGridSize))
{
  return mean_xi(model.base(), grid);
}

}  // namespace frechet
