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

// End-to-end run on the reference location-scale model
//
//   F0 = N(0, 1),  M = X1 ~ N(0, 3),  Sigma = exp(X2), X2 ~ N(0, 0.1)
//
// writing features.csv, plot_data.csv and results.json into an output
// directory. Every number in those files is a deterministic function of the
// seed and the options.

#include "frechet/common.hpp"
#include "frechet/contrasts.hpp"
#include "frechet/frechet_features.hpp"
#include "frechet/harness/distributions.hpp"
#include "frechet/harness/expression.hpp"
#include "frechet/harness/model.hpp"
#include "frechet/io.hpp"
#include "frechet/quantile_model.hpp"
#include "frechet/sensitivity.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

namespace frechet {

struct DemoOptions
{
  std::size_t n          = 5000;
  std::size_t grid_m     = kDefaultGridSize;
  std::size_t pairs      = 2000;
  std::size_t replicates = kDefaultReplicates;
};

struct DemoCheck
{
  std::string name;
  double      value;
  double      tolerance;
  bool        passed;
  std::string description;
};

struct DemoReport
{
  std::vector<DemoCheck> checks;
  bool                   all_passed = true;
  nlohmann::ordered_json results;
};

/// M = X1 ~ N(0, 3) and Sigma = exp(X2) with X2 ~ N(0, 0.1).
inline LocationScaleModel reference_model()
{
  return LocationScaleModel(BaseDistribution::standard_normal(), Expression::parse("X1"),
                            Expression::parse("exp(X2)"),
                            {InputLaw::normal(0.0, 3.0), InputLaw::normal(0.0, 0.1)});
}

/// Same location law with Sigma fixed to 1.
inline LocationScaleModel reference_shift_model()
{
  return LocationScaleModel(BaseDistribution::standard_normal(), Expression::parse("X1"),
                            Expression::constant(1.0), {InputLaw::normal(0.0, 3.0)});
}

/// Moments of the reference model: for X2 ~ N(0, s2), E exp(X2) = exp(s2 / 2)
/// and Var exp(X2) = (exp(s2) - 1) exp(s2).
struct ReferenceMoments
{
  double mean_scale    = std::exp(0.05);
  double var_scale     = std::expm1(0.1) * std::exp(0.1);
  double mean_location = 0.0;
  double var_location  = 3.0;
  double median_location = 0.0;
};

namespace detail {

inline std::vector<double> column(Matrix const &m, std::size_t j)
{
  std::vector<double> out(m.rows());
  for (std::size_t k = 0; k < m.rows(); ++k)
  {
    out[k] = m(k, j);
  }
  return out;
}

inline double sample_std(std::span<double const> v)
{
  double const mean = pairwise_mean(v);
  double const ss   = pairwise_sum_of(0, v.size(), [&](std::size_t k) {
    return (v[k] - mean) * (v[k] - mean);
  });
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

inline nlohmann::ordered_json result_json(SensitivityResult const &r)
{
  nlohmann::ordered_json j;
  j["index"]          = r.index;
  j["numerator"]      = r.numerator;
  j["denominator"]    = r.denominator;
  j["std_error"]      = r.std_error;
  j["replicate_mean"] = r.replicate_mean();
  j["input_id"]       = r.input_id;
  j["method"]         = to_string(r.method);
  j["replicates"]     = r.replicates;
  return j;
}

}  // namespace detail

inline DemoReport run_demo(std::uint64_t seed, std::filesystem::path const &outdir,
                           DemoOptions const &options = {})
{
  ReferenceMoments const moments;
  ProbGrid const         grid  = ProbGrid::midpoint(options.grid_m);
  auto const             model = reference_model();
  auto const             q0    = model.base().quantiles(grid);
  std::size_t const      m     = grid.size();
  double const           root_n = std::sqrt(static_cast<double>(options.n));

  DemoReport report;
  auto add_check = [&](std::string name, double value, double tolerance, bool passed,
                       std::string description) {
    report.checks.push_back({std::move(name), value, tolerance, passed, std::move(description)});
    report.all_passed = report.all_passed && passed;
  };

  // Features of the reference ensemble.
  auto const ensemble = sample_ensemble(model, options.n, grid, seed);
  auto const mean     = frechet_mean(ensemble);
  auto const median   = frechet_median(ensemble);
  auto const q10      = frechet_quantile(ensemble, 0.1);
  auto const q90      = frechet_quantile(ensemble, 0.9);

  std::size_t mean_hits      = 0;
  double      median_mismatch = 0.0;
  bool        ordered         = true;
  for (std::size_t j = 0; j < m; ++j)
  {
    auto         col      = detail::column(ensemble.curves(), j);
    double const expected = moments.mean_scale * q0[j] + moments.mean_location;
    if (std::abs(mean.curve[j] - expected) <= 3.0 * detail::sample_std(col) / root_n)
    {
      ++mean_hits;
    }
    std::size_t const rank = detail::equal_weight_rank(col.size(), 0.5) - 1;
    std::nth_element(col.begin(), col.begin() + static_cast<std::ptrdiff_t>(rank), col.end());
    median_mismatch = std::max(median_mismatch, std::abs(median.curve[j] - col[rank]));
    ordered = ordered && q10.curve[j] <= median.curve[j] && median.curve[j] <= q90.curve[j];
  }
  double const mean_fraction = static_cast<double>(mean_hits) / static_cast<double>(m);
  add_check("mean_closed_form", mean_fraction, 0.99, mean_fraction >= 0.99,
            "fraction of levels where the mean feature is within 3 pointwise standard errors of "
            "E[Sigma] F0^-1(u) + E[M]");
  add_check("median_pointwise", median_mismatch, 0.0, median_mismatch == 0.0,
            "largest gap between the median feature and the lower median of each column");
  add_check("quantile_order", ordered ? 1.0 : 0.0, 1.0, ordered,
            "q0.1 <= median <= q0.9 at every level");

  // Sigma = 1: the median feature is F0^-1(u) + Med(M).
  auto const   shift_ensemble = sample_ensemble(reference_shift_model(), options.n, grid, seed);
  auto const   shift_median   = frechet_median(shift_ensemble);
  double const median_se =
      std::sqrt(std::numbers::pi / 2.0) * std::sqrt(moments.var_location) / root_n;
  std::size_t shift_hits = 0;
  for (std::size_t j = 0; j < m; ++j)
  {
    if (std::abs(shift_median.curve[j] - (q0[j] + moments.median_location)) <= 3.0 * median_se)
    {
      ++shift_hits;
    }
  }
  double const shift_fraction = static_cast<double>(shift_hits) / static_cast<double>(m);
  add_check("median_shift_closed_form", shift_fraction, 0.99, shift_fraction >= 0.99,
            "with Sigma = 1, fraction of levels where the median feature is within 3 asymptotic "
            "standard errors of F0^-1(u) + Med(M)");

  // Sobol indices of the two inputs against the closed form.
  double const xi     = mean_xi(model.base(), grid);
  auto const   closed = location_scale_sobol({moments.var_scale, moments.var_location, 0.0, xi});
  auto const   code   = model.code(grid);
  auto const   s_location =
      estimate_sobol_cdf(code, grid, 1, options.pairs, seed, options.replicates);
  auto const s_scale = estimate_sobol_cdf(code, grid, 2, options.pairs, seed, options.replicates);

  auto sobol_checks = [&](std::string const &label, SensitivityResult const &r, double target) {
    double const gap = std::abs(r.index - target);
    add_check("sobol_" + label + "_estimate", gap, 0.05, gap <= 0.05,
              "|estimate - closed form| for S_" + label);
    double const mean_gap = std::abs(r.replicate_mean() - target);
    add_check("sobol_" + label + "_replicates", mean_gap, 2.0 * r.std_error,
              mean_gap <= 2.0 * r.std_error,
              "|replicate mean - closed form| against 2 replicate standard deviations for S_" +
                  label);
  };
  sobol_checks("sigma", s_scale, closed.scale);
  sobol_checks("M", s_location, closed.location);

  // Files.
  std::filesystem::create_directories(outdir);
  {
    auto out = io::detail::open_out(outdir / "features.csv");
    out << "# rows: mean, median, q0.1, q0.9\n";
    Matrix rows(4, m);
    for (std::size_t j = 0; j < m; ++j)
    {
      rows(0, j) = mean.curve[j];
      rows(1, j) = median.curve[j];
      rows(2, j) = q10.curve[j];
      rows(3, j) = q90.curve[j];
    }
    io::write_ensemble_csv(out, grid, rows);
  }
  {
    auto out = io::detail::open_out(outdir / "plot_data.csv");
    out << "u,mean,median,q10,q90\n";
    for (std::size_t j = 0; j < m; ++j)
    {
      std::vector<double> const row{grid[j], mean.curve[j], median.curve[j], q10.curve[j],
                                    q90.curve[j]};
      io::detail::write_row(out, row);
    }
  }

  auto &j      = report.results;
  j["seed"]    = seed;
  j["n"]       = options.n;
  j["grid_m"]  = m;
  j["pairs"]   = options.pairs;
  j["replicates"] = options.replicates;
  j["model"]   = {{"base", model.base().name()},
                  {"M_map", model.location().source()},
                  {"Sigma_map", model.scale().source()},
                  {"input_laws", {model.laws()[0].describe(), model.laws()[1].describe()}}};
  j["closed_form"] = {{"E_sigma", moments.mean_scale},
                      {"var_sigma", moments.var_scale},
                      {"E_M", moments.mean_location},
                      {"var_M", moments.var_location},
                      {"mean_xi", xi},
                      {"S_sigma", closed.scale},
                      {"S_M", closed.location}};
  j["estimated"] = {{"S_sigma", detail::result_json(s_scale)},
                    {"S_M", detail::result_json(s_location)}};
  auto checks = nlohmann::ordered_json::array();
  for (auto const &c : report.checks)
  {
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed},
                      {"description", c.description}});
  }
  j["checks"]     = std::move(checks);
  j["all_passed"] = report.all_passed;
  {
    auto out = io::detail::open_out(outdir / "results.json");
    out << j.dump(2) << '\n';
  }
  return report;
}

}  // namespace frechet
