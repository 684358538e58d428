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

// Contrast functions c(x, y), the rectangle ("negative measure") property
// checker, and the scalar feature argmin_theta E c(Y, theta).

#include "frechet/common.hpp"
#include "frechet/quantile_model.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace frechet {

namespace detail {

/// Shortest decimal text that parses back to the same double.
inline std::string format_double(double v)
{
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{})
  {
    throw Error("failed to format floating point value");
  }
  return std::string(buf.data(), end);
}

inline double parse_double(std::string_view text, char const *what)
{
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
  {
    text.remove_prefix(1);
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
  {
    text.remove_suffix(1);
  }
  if (!text.empty() && text.front() == '+')
  {
    text.remove_prefix(1);
  }
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty())
  {
    throw ParseError(std::string("cannot parse ") + what + " from '" + std::string(text) + "'");
  }
  return v;
}

}  // namespace detail

/// Sampled convex function C used as c(x, y) = C(x - y). Linear interpolation
/// between knots, linear extrapolation with the end slopes.
class ConvexTable
{
public:
  ConvexTable(std::vector<double> deltas, std::vector<double> values)
    : deltas_(std::move(deltas))
    , values_(std::move(values))
  {
    if (deltas_.size() != values_.size())
    {
      throw SizeError("tabulated contrast: delta and value columns differ in length");
    }
    if (deltas_.size() < 2)
    {
      throw DomainError("tabulated contrast needs at least 2 knots");
    }
    for (std::size_t k = 0; k < deltas_.size(); ++k)
    {
      if (!std::isfinite(deltas_[k]) || !std::isfinite(values_[k]))
      {
        throw ValidationError("tabulated contrast has a non-finite entry", k);
      }
      if (k > 0 && !(deltas_[k - 1] < deltas_[k]))
      {
        throw ValidationError("tabulated contrast deltas not strictly increasing", k);
      }
    }
    slopes_.resize(deltas_.size() - 1);
    for (std::size_t k = 0; k + 1 < deltas_.size(); ++k)
    {
      slopes_[k] = (values_[k + 1] - values_[k]) / (deltas_[k + 1] - deltas_[k]);
      if (k > 0)
      {
        double const scale = std::max({1.0, std::abs(slopes_[k]), std::abs(slopes_[k - 1])});
        if (slopes_[k] < slopes_[k - 1] - 1e-12 * scale)
        {
          throw ValidationError("tabulated contrast is not convex (slopes decrease)", k + 1);
        }
      }
    }
  }

  double operator()(double delta) const
  {
    std::size_t const last = deltas_.size() - 1;
    if (delta <= deltas_.front())
    {
      return values_.front() + slopes_.front() * (delta - deltas_.front());
    }
    if (delta >= deltas_[last])
    {
      return values_[last] + slopes_.back() * (delta - deltas_[last]);
    }
    auto const        it = std::upper_bound(deltas_.begin(), deltas_.end(), delta);
    std::size_t const k  = static_cast<std::size_t>(it - deltas_.begin()) - 1;
    return values_[k] + slopes_[k] * (delta - deltas_[k]);
  }

  std::span<double const> deltas() const noexcept
  {
    return deltas_;
  }
  std::span<double const> values() const noexcept
  {
    return values_;
  }

private:
  std::vector<double> deltas_;
  std::vector<double> values_;
  std::vector<double> slopes_;
};

/// A bivariate cost c(x, y) from one of the built-in families.
class ContrastSpec
{
public:
  enum class Kind
  {
    kSquared,
    kAbsolute,
    kPower,
    kPinball,
    kNegProduct,
    kTabulated
  };

  static ContrastSpec squared()
  {
    return ContrastSpec(Kind::kSquared, 2.0);
  }
  static ContrastSpec absolute()
  {
    return ContrastSpec(Kind::kAbsolute, 1.0);
  }
  static ContrastSpec power(double p)
  {
    if (!(p >= 1.0) || !std::isfinite(p))
    {
      throw DomainError("power contrast needs p >= 1");
    }
    return ContrastSpec(Kind::kPower, p);
  }
  static ContrastSpec pinball(double alpha)
  {
    detail::require_probability(alpha, "pinball level alpha");
    return ContrastSpec(Kind::kPinball, alpha);
  }
  /// c(x, y) = -x y. Satisfies the rectangle property but has no minimiser in y.
  static ContrastSpec neg_product()
  {
    return ContrastSpec(Kind::kNegProduct, 0.0);
  }
  static ContrastSpec tabulated(ConvexTable table)
  {
    ContrastSpec c(Kind::kTabulated, 0.0);
    c.table_ = std::make_shared<ConvexTable const>(std::move(table));
    return c;
  }

  /// Parses `squared`, `absolute`, `power:<p>`, `pinball:<alpha>` or
  /// `negproduct`. Tabulated contrasts are loaded from files (see io.hpp).
  static ContrastSpec parse(std::string_view text)
  {
    auto const  colon = text.find(':');
    auto const  head  = text.substr(0, colon);
    auto const  arg   = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
    auto const  needs_arg = [&](char const *name) {
      if (arg.empty())
      {
        throw ParseError(std::string("contrast '") + name + "' needs a parameter, e.g. " + name +
                         ":0.5");
      }
    };
    if (head == "squared" && arg.empty())
    {
      return squared();
    }
    if (head == "absolute" && arg.empty())
    {
      return absolute();
    }
    if (head == "negproduct" && arg.empty())
    {
      return neg_product();
    }
    if (head == "power")
    {
      needs_arg("power");
      return power(detail::parse_double(arg, "power exponent"));
    }
    if (head == "pinball")
    {
      needs_arg("pinball");
      return pinball(detail::parse_double(arg, "pinball level"));
    }
    throw ParseError("unknown contrast '" + std::string(text) + "'");
  }

  Kind kind() const noexcept
  {
    return kind_;
  }

  /// Exponent for kPower, alpha for kPinball.
  double parameter() const noexcept
  {
    return param_;
  }

  ConvexTable const *table() const noexcept
  {
    return table_.get();
  }

  /// Whether c(x, y) >= 0 everywhere.
  bool nonnegative() const noexcept
  {
    if (kind_ == Kind::kNegProduct)
    {
      return false;
    }
    if (kind_ == Kind::kTabulated)
    {
      // Convex piecewise-linear: minimum sits at a knot unless an end slope
      // points outward.
      auto const v = table_->values();
      auto const d = table_->deltas();
      double const left_slope  = (v[1] - v[0]) / (d[1] - d[0]);
      double const right_slope = (v[v.size() - 1] - v[v.size() - 2]) / (d[d.size() - 1] - d[d.size() - 2]);
      return left_slope <= 0.0 && right_slope >= 0.0 && *std::min_element(v.begin(), v.end()) >= 0.0;
    }
    return true;
  }

  std::string name() const
  {
    switch (kind_)
    {
    case Kind::kSquared:
      return "squared";
    case Kind::kAbsolute:
      return "absolute";
    case Kind::kPower:
      return "power:" + detail::format_double(param_);
    case Kind::kPinball:
      return "pinball:" + detail::format_double(param_);
    case Kind::kNegProduct:
      return "negproduct";
    case Kind::kTabulated:
      return "tabulated";
    }
    return "unknown";
  }

  /// c(x, y) without input checks; hot loops call this.
  double operator()(double x, double y) const
  {
    switch (kind_)
    {
    case Kind::kSquared:
      return (x - y) * (x - y);
    case Kind::kAbsolute:
      return std::abs(x - y);
    case Kind::kPower:
      return std::pow(std::abs(x - y), param_);
    case Kind::kPinball:
      return x < y ? (1.0 - param_) * (y - x) : param_ * (x - y);
    case Kind::kNegProduct:
      return -x * y;
    case Kind::kTabulated:
      return (*table_)(x - y);
    }
    return 0.0;
  }

private:
  ContrastSpec(Kind kind, double param)
    : kind_(kind)
    , param_(param)
  {}

  Kind                               kind_;
  double                             param_;
  std::shared_ptr<ConvexTable const> table_;
};

/// Checked evaluation of c(x, y).
inline double evaluate(ContrastSpec const &c, double x, double y)
{
  if (!std::isfinite(x) || !std::isfinite(y))
  {
    throw DomainError("contrast arguments must be finite");
  }
  return c(x, y);
}

//------------------------------------------------------------------------------
// Rectangle property: c(x',y') - c(x',y) - c(x,y') + c(x,y) <= 0 for x<=x', y<=y'.
//------------------------------------------------------------------------------

inline constexpr double kPropertyTolerance = 1e-9;

struct PropertyReport
{
  bool   passes          = false;
  double worst_violation = -std::numeric_limits<double>::infinity();
  /// (x, x', y, y') attaining worst_violation.
  std::array<double, 4> witness{};
};

/// Evaluates every rectangle increment on the probe grid. Works for any
/// callable cost, not only the built-in families.
template <typename Cost>
PropertyReport check_property_p(Cost const &cost, std::span<double const> probe_grid,
                                double tolerance = kPropertyTolerance)
{
  std::vector<double> pts(probe_grid.begin(), probe_grid.end());
  for (double p : pts)
  {
    if (!std::isfinite(p))
    {
      throw DomainError("probe grid contains a non-finite point");
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2)
  {
    throw DomainError("property check needs at least 2 distinct probe points");
  }
  std::size_t const   k = pts.size();
  std::vector<double> table(k * k);
  for (std::size_t a = 0; a < k; ++a)
  {
    for (std::size_t b = 0; b < k; ++b)
    {
      table[a * k + b] = cost(pts[a], pts[b]);
    }
  }
  PropertyReport report;
  for (std::size_t x0 = 0; x0 < k; ++x0)
  {
    for (std::size_t x1 = x0 + 1; x1 < k; ++x1)
    {
      for (std::size_t y0 = 0; y0 < k; ++y0)
      {
        for (std::size_t y1 = y0 + 1; y1 < k; ++y1)
        {
          double const inc = table[x1 * k + y1] - table[x1 * k + y0] - table[x0 * k + y1] +
                             table[x0 * k + y0];
          if (inc > report.worst_violation)
          {
            report.worst_violation = inc;
            report.witness         = {pts[x0], pts[x1], pts[y0], pts[y1]};
          }
        }
      }
    }
  }
  report.passes = report.worst_violation <= tolerance;
  return report;
}

/// `count` evenly spaced probe points spanning [lo, hi].
inline std::vector<double> linear_probe_grid(double lo, double hi, std::size_t count = 25)
{
  std::vector<double> pts(count);
  for (std::size_t k = 0; k < count; ++k)
  {
    pts[k] = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
  }
  return pts;
}

//------------------------------------------------------------------------------
// Scalar feature argmin_theta sum_k w_k c(x_k, theta).
//------------------------------------------------------------------------------

struct ScalarFit
{
  double argmin;
  /// Attained value of the weighted objective.
  double objective;
};

namespace detail {

inline double weighted_objective(ContrastSpec const &c, std::span<double const> x,
                                 std::span<double const> w, double theta)
{
  if (w.empty())
  {
    return pairwise_sum_of(0, x.size(), [&](std::size_t k) { return c(x[k], theta); }) /
           static_cast<double>(x.size());
  }
  return pairwise_sum_of(0, x.size(), [&](std::size_t k) { return w[k] * c(x[k], theta); });
}

/// Lower alpha-quantile of (x, w); `x` may be reordered, `w` empty means uniform.
inline double lower_quantile_inplace(std::span<double> x, std::span<double const> w, double alpha)
{
  std::size_t const n = x.size();
  if (w.empty())
  {
    std::size_t const k = equal_weight_rank(n, alpha) - 1;
    std::nth_element(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(k), x.end());
    return x[k];
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  double cumulative = 0.0;
  for (std::size_t r = 0; r < n; ++r)
  {
    cumulative += w[order[r]];
    if (cumulative >= alpha)
    {
      return x[order[r]];
    }
  }
  return x[order[n - 1]];
}

inline double golden_section(ContrastSpec const &c, std::span<double const> x,
                             std::span<double const> w)
{
  auto const [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
  double     a              = *lo_it;
  double     b              = *hi_it;
  if (a == b)
  {
    return a;
  }
  double const tol      = 1e-10 * ((b - a) + 1.0);
  double const inv_phi  = (std::sqrt(5.0) - 1.0) / 2.0;
  double       x1       = b - inv_phi * (b - a);
  double       x2       = a + inv_phi * (b - a);
  double       f1       = weighted_objective(c, x, w, x1);
  double       f2       = weighted_objective(c, x, w, x2);
  while (b - a > tol)
  {
    if (f1 <= f2)
    {
      b  = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = weighted_objective(c, x, w, x1);
    }
    else
    {
      a  = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = weighted_objective(c, x, w, x2);
    }
  }
  return 0.5 * (a + b);
}

/// Core of scalar_feature. `x` is scratch and may be reordered; `w` empty
/// means equal weights.
inline ScalarFit fit_inplace(ContrastSpec const &c, std::span<double> x, std::span<double const> w)
{
  if (x.empty())
  {
    throw DomainError("scalar feature of an empty sample");
  }
  using Kind = ContrastSpec::Kind;
  auto const quantile_fit = [&](double alpha) {
    double const q = lower_quantile_inplace(x, w, alpha);
    return ScalarFit{q, weighted_objective(c, x, w, q)};
  };
  switch (c.kind())
  {
  case Kind::kNegProduct:
    throw NonCoerciveError("contrast -xy has no minimiser in its second argument");
  case Kind::kSquared:
  {
    double const mean = w.empty() ? pairwise_mean(x)
                                  : pairwise_sum_of(0, x.size(), [&](std::size_t k) { return w[k] * x[k]; });
    return {mean, weighted_objective(c, x, w, mean)};
  }
  case Kind::kAbsolute:
    return quantile_fit(0.5);
  case Kind::kPinball:
    return quantile_fit(c.parameter());
  case Kind::kPower:
    if (c.parameter() == 1.0)
    {
      return quantile_fit(0.5);
    }
    if (c.parameter() == 2.0)
    {
      double const mean = w.empty() ? pairwise_mean(x)
                                    : pairwise_sum_of(0, x.size(), [&](std::size_t k) { return w[k] * x[k]; });
      return {mean, weighted_objective(c, x, w, mean)};
    }
    break;
  case Kind::kTabulated:
    break;
  }
  double const theta = golden_section(c, x, w);
  return {theta, weighted_objective(c, x, w, theta)};
}

inline void validate_weights(std::span<double const> weights, std::size_t n)
{
  if (weights.size() != n)
  {
    throw SizeError("weights and samples differ in length");
  }
  for (std::size_t k = 0; k < n; ++k)
  {
    if (!(weights[k] > 0.0) || !std::isfinite(weights[k]))
    {
      throw ValidationError("weights must be strictly positive", k);
    }
  }
  if (std::abs(pairwise_sum(weights) - 1.0) > 1e-9)
  {
    throw DomainError("weights must sum to 1");
  }
}

inline bool all_equal(std::span<double const> w)
{
  return std::all_of(w.begin(), w.end(), [&](double v) { return v == w.front(); });
}

}  // namespace detail

/// argmin and attained minimum of theta -> sum_k w_k c(x_k, theta).
///
/// Squared gives the weighted mean, Absolute the lower weighted median and
/// Pinball(alpha) the lower weighted alpha-quantile (generalized inverse).
/// Other convex contrasts use golden-section search on [min x, max x].
/// NegProduct throws NonCoerciveError.
inline ScalarFit fit_scalar_feature(ContrastSpec const &c, std::span<double const> samples,
                                    std::span<double const> weights = {})
{
  for (std::size_t k = 0; k < samples.size(); ++k)
  {
    if (!std::isfinite(samples[k]))
    {
      throw DomainError("sample " + std::to_string(k) + " is not finite");
    }
  }
  std::vector<double> scratch(samples.begin(), samples.end());
  if (!weights.empty())
  {
    detail::validate_weights(weights, samples.size());
    if (!detail::all_equal(weights))
    {
      return detail::fit_inplace(c, scratch, weights);
    }
  }
  return detail::fit_inplace(c, scratch, {});
}

inline double scalar_feature(ContrastSpec const &c, std::span<double const> samples,
                             std::span<double const> weights = {})
{
  return fit_scalar_feature(c, samples, weights).argmin;
}

}  // namespace frechet
