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

// Sampling laws for code inputs and base distributions F0 of the
// location-scale testbed. All sampling goes through inverse CDFs so a
// stream of uniforms fully determines the draws.

#include "frechet/common.hpp"
#include "frechet/contrasts.hpp"
#include "frechet/quantile_model.hpp"
#include "frechet/rng.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace frechet {

inline double standard_normal_quantile(double u)
{
  detail::require_probability(u, "normal quantile level");
  static boost::math::normal_distribution<double> const standard;
  return boost::math::quantile(standard, u);
}

namespace detail {

/// Splits "name(a, b, c)" into the name and its numeric arguments.
inline std::pair<std::string, std::vector<double>> parse_call(std::string_view text)
{
  text             = trim(text);
  auto const open  = text.find('(');
  if (open == std::string_view::npos)
  {
    return {std::string(text), {}};
  }
  if (text.back() != ')')
  {
    throw ParseError("missing ')' in '" + std::string(text) + "'");
  }
  std::string         name(trim(text.substr(0, open)));
  std::string_view    args = text.substr(open + 1, text.size() - open - 2);
  std::vector<double> values;
  while (!trim(args).empty())
  {
    auto const comma = args.find(',');
    values.push_back(parse_double(trim(args.substr(0, comma)), "law parameter"));
    if (comma == std::string_view::npos)
    {
      break;
    }
    args.remove_prefix(comma + 1);
  }
  return {std::move(name), std::move(values)};
}

}  // namespace detail

/// One-dimensional law of a code input.
class InputLaw
{
public:
  enum class Kind
  {
    kNormal,
    kUniform,
    kExponential,
    kDiscrete,
    kConstant
  };

  static InputLaw normal(double mean, double variance)
  {
    if (!(variance > 0.0) || !std::isfinite(variance) || !std::isfinite(mean))
    {
      throw DomainError("normal law needs a finite mean and a positive variance");
    }
    return InputLaw(Kind::kNormal, {mean, variance});
  }
  static InputLaw uniform(double a, double b)
  {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    {
      throw DomainError("uniform law needs finite bounds a < b");
    }
    return InputLaw(Kind::kUniform, {a, b});
  }
  static InputLaw exponential(double rate)
  {
    if (!(rate > 0.0) || !std::isfinite(rate))
    {
      throw DomainError("exponential law needs a positive rate");
    }
    return InputLaw(Kind::kExponential, {rate});
  }
  /// Equal-probability atoms.
  static InputLaw discrete(std::vector<double> values)
  {
    if (values.empty())
    {
      throw DomainError("discrete law needs at least one value");
    }
    std::sort(values.begin(), values.end());
    return InputLaw(Kind::kDiscrete, std::move(values));
  }
  static InputLaw constant(double value)
  {
    return InputLaw(Kind::kConstant, {value});
  }

  /// `normal(mean, variance)`, `uniform(a, b)`, `exponential(rate)`,
  /// `discrete(v1, v2, ...)` or `constant(v)`.
  static InputLaw parse(std::string_view text)
  {
    auto [name, args] = detail::parse_call(text);
    auto const arity  = [&](std::size_t k) {
      if (args.size() != k)
      {
        throw ParseError("law '" + name + "' takes " + std::to_string(k) + " parameter(s)");
      }
    };
    if (name == "normal")
    {
      arity(2);
      return normal(args[0], args[1]);
    }
    if (name == "uniform")
    {
      arity(2);
      return uniform(args[0], args[1]);
    }
    if (name == "exponential")
    {
      arity(1);
      return exponential(args[0]);
    }
    if (name == "discrete")
    {
      return discrete(std::move(args));
    }
    if (name == "constant")
    {
      arity(1);
      return constant(args[0]);
    }
    throw ParseError("unknown input law '" + std::string(text) + "'");
  }

  Kind kind() const noexcept
  {
    return kind_;
  }

  double quantile(double u) const
  {
    switch (kind_)
    {
    case Kind::kNormal:
      return params_[0] + std::sqrt(params_[1]) * standard_normal_quantile(u);
    case Kind::kUniform:
      return params_[0] + (params_[1] - params_[0]) * u;
    case Kind::kExponential:
      return -std::log1p(-u) / params_[0];
    case Kind::kDiscrete:
      return params_[detail::equal_weight_rank(params_.size(), u) - 1];
    case Kind::kConstant:
      return params_[0];
    }
    return 0.0;
  }

  double sample(RngStream &rng) const
  {
    return quantile(rng.uniform());
  }

  double mean() const
  {
    switch (kind_)
    {
    case Kind::kNormal:
      return params_[0];
    case Kind::kUniform:
      return 0.5 * (params_[0] + params_[1]);
    case Kind::kExponential:
      return 1.0 / params_[0];
    case Kind::kDiscrete:
      return pairwise_mean(params_);
    case Kind::kConstant:
      return params_[0];
    }
    return 0.0;
  }

  double variance() const
  {
    switch (kind_)
    {
    case Kind::kNormal:
      return params_[1];
    case Kind::kUniform:
      return (params_[1] - params_[0]) * (params_[1] - params_[0]) / 12.0;
    case Kind::kExponential:
      return 1.0 / (params_[0] * params_[0]);
    case Kind::kDiscrete:
    {
      double const mu = mean();
      return pairwise_sum_of(0, params_.size(),
                             [&](std::size_t k) { return (params_[k] - mu) * (params_[k] - mu); }) /
             static_cast<double>(params_.size());
    }
    case Kind::kConstant:
      return 0.0;
    }
    return 0.0;
  }

  std::string describe() const
  {
    static constexpr char const *kNames[] = {"normal", "uniform", "exponential", "discrete",
                                             "constant"};
    std::string out = kNames[static_cast<int>(kind_)];
    out += '(';
    for (std::size_t k = 0; k < params_.size(); ++k)
    {
      out += (k ? ", " : "") + detail::format_double(params_[k]);
    }
    return out + ')';
  }

private:
  InputLaw(Kind kind, std::vector<double> params)
    : kind_(kind)
    , params_(std::move(params))
  {}

  Kind                kind_;
  std::vector<double> params_;
};

/// Draws one input row, column by column, from independent laws.
inline void draw_inputs(std::span<InputLaw const> laws, RngStream &rng, std::span<double> row)
{
  for (std::size_t c = 0; c < laws.size(); ++c)
  {
    row[c] = laws[c].sample(rng);
  }
}

/// Strictly increasing, absolutely continuous base CDF F0, accessed through
/// its inverse.
class BaseDistribution
{
public:
  enum class Kind
  {
    kStandardNormal,
    kUniform,
    kExponential,
    kTabulated
  };

  static BaseDistribution standard_normal()
  {
    return BaseDistribution(Kind::kStandardNormal);
  }
  static BaseDistribution uniform()
  {
    return BaseDistribution(Kind::kUniform);
  }
  static BaseDistribution exponential()
  {
    return BaseDistribution(Kind::kExponential);
  }
  /// Inverse CDF tabulated at levels in (0,1); both columns strictly
  /// increasing. Interpolated linearly, extrapolated with the end slopes.
  static BaseDistribution tabulated(std::vector<double> levels, std::vector<double> values)
  {
    if (levels.size() != values.size() || levels.size() < 2)
    {
      throw SizeError("tabulated base needs matching level and value columns of length >= 2");
    }
    for (std::size_t k = 0; k < levels.size(); ++k)
    {
      if (!(levels[k] > 0.0 && levels[k] < 1.0) || !std::isfinite(values[k]))
      {
        throw ValidationError("tabulated base entry out of range", k);
      }
      if (k > 0 && !(levels[k - 1] < levels[k]))
      {
        throw ValidationError("tabulated base levels not strictly increasing", k);
      }
      if (k > 0 && !(values[k - 1] < values[k]))
      {
        throw ValidationError(
            "tabulated base inverse CDF not strictly increasing (step bases are not supported)", k);
      }
    }
    BaseDistribution b(Kind::kTabulated);
    b.levels_ = std::move(levels);
    b.values_ = std::move(values);
    return b;
  }

  /// `normal`, `uniform` or `exponential`.
  static BaseDistribution parse(std::string_view name)
  {
    name = detail::trim(name);
    if (name == "normal")
    {
      return standard_normal();
    }
    if (name == "uniform")
    {
      return uniform();
    }
    if (name == "exponential")
    {
      return exponential();
    }
    throw ParseError("unknown base distribution '" + std::string(name) + "'");
  }

  Kind kind() const noexcept
  {
    return kind_;
  }

  std::string name() const
  {
    switch (kind_)
    {
    case Kind::kStandardNormal:
      return "normal";
    case Kind::kUniform:
      return "uniform";
    case Kind::kExponential:
      return "exponential";
    case Kind::kTabulated:
      return "tabulated";
    }
    return "unknown";
  }

  double quantile(double u) const
  {
    detail::require_probability(u, "base quantile level");
    switch (kind_)
    {
    case Kind::kStandardNormal:
      return standard_normal_quantile(u);
    case Kind::kUniform:
      return u;
    case Kind::kExponential:
      return -std::log1p(-u);
    case Kind::kTabulated:
    {
      std::size_t k = 0;
      if (u >= levels_.back())
      {
        k = levels_.size() - 2;
      }
      else if (u > levels_.front())
      {
        k = static_cast<std::size_t>(std::upper_bound(levels_.begin(), levels_.end(), u) -
                                     levels_.begin()) -
            1;
      }
      double const slope = (values_[k + 1] - values_[k]) / (levels_[k + 1] - levels_[k]);
      return values_[k] + slope * (u - levels_[k]);
    }
    }
    return 0.0;
  }

  std::vector<double> quantiles(ProbGrid const &grid) const
  {
    std::vector<double> out(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
    {
      out[j] = quantile(grid[j]);
    }
    return out;
  }

private:
  explicit BaseDistribution(Kind kind)
    : kind_(kind)
  {}

  Kind                kind_;
  std::vector<double> levels_;
  std::vector<double> values_;
};

}  // namespace frechet
