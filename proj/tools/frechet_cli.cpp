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

// Command-line front end. Every subcommand prints one JSON document on
// stdout; errors go to stderr with exit status 1.

#include "frechet.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

void emit(ordered_json const &j)
{
  std::cout << j.dump(2) << '\n';
}

ordered_json cost_json(frechet::CostResult const &r)
{
  ordered_json j{{"value", r.value}, {"contrast", r.contrast.name()}, {"grid_size", r.grid_size}};
  if (r.warning)
  {
    j["warning"] = *r.warning;
  }
  return j;
}

ordered_json index_json(frechet::SensitivityResult const &r, std::uint64_t seed)
{
  ordered_json seeds = ordered_json::array();
  for (std::size_t k = 0; k < r.replicates.size(); ++k)
  {
    seeds.push_back({{"seed", seed}, {"input_id", r.input_id}, {"replicate", k}});
  }
  return {{"index", r.index},
          {"numerator", r.numerator},
          {"denominator", r.denominator},
          {"std_error", r.std_error},
          {"method", frechet::to_string(r.method)},
          {"seeds", std::move(seeds)},
          {"input_id", r.input_id},
          {"n_outer", r.n_outer},
          {"n_inner", r.n_inner},
          {"replicates", r.replicates}};
}

std::vector<double> probe_points(std::string const &text)
{
  return text.empty() ? frechet::linear_probe_grid(-3.0, 3.0)
                      : frechet::io::parse_number_list(text);
}

struct ModelArgs
{
  std::string                  path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t>   grid_m;
};

constexpr char const *kContrastHelp =
    "squared | absolute | power:p | pinball:alpha | negproduct | tabulated:<csv>";

void add_model_args(CLI::App *cmd, ModelArgs &args)
{
  cmd->add_option("model", args.path, "Model file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--seed", args.seed, "Seed (default: the model file's seed)");
  cmd->add_option("--grid-m", args.grid_m, "Grid size (default: the model file's grid_m)");
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Wasserstein costs, Frechet features and sensitivity indices of random CDFs"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  // distance
  double      p = 2.0;
  std::string dist_a, dist_b;
  auto       *distance = app.add_subcommand("distance", "Wasserstein distance W_p between two curves");
  distance->add_option("--p", p, "Order p >= 1")->required();
  distance->add_option("curve_a", dist_a)->required()->check(CLI::ExistingFile);
  distance->add_option("curve_b", dist_b)->required()->check(CLI::ExistingFile);

  // cost
  std::string contrast_text = "squared";
  std::string cost_a, cost_b, probe_text;
  bool        check_p = false;
  auto       *cost    = app.add_subcommand("cost", "Transport cost W_c between two curves");
  cost->add_option("--contrast", contrast_text, kContrastHelp)->capture_default_str();
  cost->add_option("curve_a", cost_a)->required()->check(CLI::ExistingFile);
  cost->add_option("curve_b", cost_b)->required()->check(CLI::ExistingFile);
  cost->add_flag("--check-p", check_p, "Check the rectangle property and warn if it fails");
  cost->add_option("--probe-grid", probe_text, "Comma-separated probe points");

  // check-p
  auto *checkp = app.add_subcommand("check-p", "Check the rectangle property of a contrast");
  checkp->add_option("--contrast", contrast_text, kContrastHelp)->required();
  checkp->add_option("--probe-grid", probe_text, "Comma-separated probe points (default: 25 points on [-3, 3])");

  // feature
  std::string ensemble_path, inputs_path, feature_out;
  auto       *feature = app.add_subcommand("feature", "Frechet feature of an ensemble of curves");
  feature->add_option("--contrast", contrast_text, kContrastHelp)->capture_default_str();
  feature->add_option("ensemble", ensemble_path)->required()->check(CLI::ExistingFile);
  feature->add_option("--inputs", inputs_path, "Inputs sidecar CSV")->check(CLI::ExistingFile);
  feature->add_option("-o,--output", feature_out, "Write the feature curve CSV here");

  // variance
  auto *variance = app.add_subcommand("variance", "Ensemble variance E W_2^2(F, mean)");
  variance->add_option("ensemble", ensemble_path)->required()->check(CLI::ExistingFile);

  // sample
  ModelArgs                  sample_args;
  std::optional<std::size_t> sample_n;
  std::string                sample_out, sample_inputs_out;
  auto *sample = app.add_subcommand("sample", "Sample an ensemble from a model file");
  add_model_args(sample, sample_args);
  sample->add_option("--n", sample_n, "Number of curves (default: the model file's n)");
  sample->add_option("-o,--output", sample_out, "Ensemble CSV")->required();
  sample->add_option("--inputs-out", sample_inputs_out, "Also write the inputs sidecar CSV");

  // sobol
  ModelArgs                  sobol_args;
  std::optional<std::size_t> input_dim;
  std::size_t                index = 1, n_pairs = 2000, replicates = frechet::kDefaultReplicates;
  auto *sobol = app.add_subcommand("sobol", "Pick-freeze Sobol index of the Frechet mean");
  add_model_args(sobol, sobol_args);
  sobol->add_option("--input-dim", input_dim, "Expected number of inputs");
  sobol->add_option("--index", index, "Input index i (1-based)")->required();
  sobol->add_option("--n", n_pairs, "Pick-freeze pairs")->capture_default_str();
  sobol->add_option("--replicates", replicates, "Independent replicates")->capture_default_str();

  // contrast-index
  ModelArgs   ci_args;
  std::size_t n_outer = frechet::kDefaultOuter, n_inner = frechet::kDefaultInner;
  auto *contrast_index = app.add_subcommand("contrast-index", "Nested contrast index S_{i,c}");
  add_model_args(contrast_index, ci_args);
  contrast_index->add_option("--contrast", contrast_text, kContrastHelp)->capture_default_str();
  contrast_index->add_option("--index", index, "Input index i (1-based)")->required();
  contrast_index->add_option("--n-outer", n_outer, "Outer draws of X_i")->capture_default_str();
  contrast_index->add_option("--n-inner", n_inner, "Inner draws per outer draw")->capture_default_str();
  contrast_index->add_option("--replicates", replicates, "Independent replicates")->capture_default_str();

  // demo
  std::uint64_t        demo_seed = 42;
  std::string          demo_out  = "demo_out";
  frechet::DemoOptions demo_options;
  auto *demo = app.add_subcommand("demo", "End-to-end run on the reference location-scale model");
  demo->add_option("--seed", demo_seed, "Seed")->capture_default_str();
  demo->add_option("-o,--output", demo_out, "Output directory")->capture_default_str();
  demo->add_option("--n", demo_options.n, "Curves in the reference ensemble")->capture_default_str();
  demo->add_option("--grid-m", demo_options.grid_m, "Grid size")->capture_default_str();
  demo->add_option("--pairs", demo_options.pairs, "Pick-freeze pairs per Sobol index")->capture_default_str();
  demo->add_option("--replicates", demo_options.replicates, "Independent replicates")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  frechet::set_thread_count(threads);

  auto load_model = [](ModelArgs const &args) {
    auto file = frechet::load_model_file(args.path);
    if (args.seed)
    {
      file.seed = *args.seed;
    }
    if (args.grid_m)
    {
      file.grid_m = *args.grid_m;
    }
    return file;
  };

  try
  {
    if (*distance)
    {
      auto const a = frechet::io::read_curve_csv(dist_a);
      auto const b = frechet::io::read_curve_csv(dist_b);
      emit({{"value", frechet::wasserstein_p(a, b, p)},
            {"contrast", frechet::ContrastSpec::power(p).name()},
            {"grid_size", a.size()}});
    }
    else if (*cost)
    {
      auto const a = frechet::io::read_curve_csv(cost_a);
      auto const b = frechet::io::read_curve_csv(cost_b);
      auto const c = frechet::io::parse_contrast(contrast_text);
      frechet::CostOptions opts;
      opts.check_property = check_p;
      if (!probe_text.empty())
      {
        opts.probe_grid = frechet::io::parse_number_list(probe_text);
      }
      auto const r = frechet::wasserstein_cost(a, b, c, opts);
      if (r.warning)
      {
        std::cerr << "warning: " << *r.warning << '\n';
      }
      emit(cost_json(r));
    }
    else if (*checkp)
    {
      auto const c      = frechet::io::parse_contrast(contrast_text);
      auto const probe  = probe_points(probe_text);
      auto const report = frechet::check_property_p(c, probe);
      ordered_json j{{"contrast", c.name()},
                     {"passes", report.passes},
                     {"worst_violation", report.worst_violation},
                     {"probe_points", probe.size()}};
      if (!report.passes)
      {
        auto const &w = report.witness;
        j["witness"]  = {{"x", w[0]}, {"x_prime", w[1]}, {"y", w[2]}, {"y_prime", w[3]}};
      }
      emit(j);
    }
    else if (*feature)
    {
      std::optional<frechet::Matrix> inputs;
      if (!inputs_path.empty())
      {
        inputs = frechet::io::read_inputs_csv(inputs_path);
      }
      auto const e = frechet::io::read_ensemble(ensemble_path, std::move(inputs));
      auto const c = frechet::io::parse_contrast(contrast_text);
      auto const f = frechet::frechet_feature(e, c);
      if (!feature_out.empty())
      {
        auto out = frechet::io::detail::open_out(feature_out);
        frechet::io::write_curve_csv(out, f.curve);
      }
      emit({{"contrast", c.name()},
            {"grid_size", f.curve.size()},
            {"ensemble_size", e.size()},
            {"repaired", f.repaired},
            {"expected_cost", f.expected_cost}});
    }
    else if (*variance)
    {
      auto const e = frechet::io::read_ensemble(ensemble_path);
      emit({{"value", frechet::ensemble_variance(e)},
            {"grid_size", e.grid().size()},
            {"ensemble_size", e.size()}});
    }
    else if (*sample)
    {
      auto const file = load_model(sample_args);
      auto const n    = sample_n.value_or(file.n);
      auto const e    = frechet::sample_ensemble(file.model, n, frechet::ProbGrid::midpoint(file.grid_m),
                                                 file.seed);
      frechet::io::write_ensemble_csv(fs::path(sample_out), e);
      if (!sample_inputs_out.empty())
      {
        auto out = frechet::io::detail::open_out(sample_inputs_out);
        frechet::io::write_inputs_csv(out, *e.inputs());
      }
      emit({{"curves", n}, {"grid_size", file.grid_m}, {"seed", file.seed}, {"output", sample_out}});
    }
    else if (*sobol)
    {
      auto const file = load_model(sobol_args);
      if (input_dim && *input_dim != file.model.dim())
      {
        throw frechet::DesignError("--input-dim " + std::to_string(*input_dim) +
                                   " does not match the model's " +
                                   std::to_string(file.model.dim()) + " input(s)");
      }
      auto const grid = frechet::ProbGrid::midpoint(file.grid_m);
      auto const r    = frechet::estimate_sobol_cdf(file.model.code(grid), grid, index, n_pairs,
                                                    file.seed, replicates);
      emit(index_json(r, file.seed));
    }
    else if (*contrast_index)
    {
      auto const file = load_model(ci_args);
      auto const grid = frechet::ProbGrid::midpoint(file.grid_m);
      auto const c    = frechet::io::parse_contrast(contrast_text);
      auto const r    = frechet::estimate_contrast_index_cdf(file.model.code(grid), grid, index, c,
                                                             n_outer, n_inner, file.seed, replicates);
      auto j          = index_json(r, file.seed);
      j["contrast"]   = c.name();
      emit(j);
    }
    else if (*demo)
    {
      auto const report = frechet::run_demo(demo_seed, demo_out, demo_options);
      ordered_json checks = ordered_json::array();
      for (auto const &c : report.checks)
      {
        std::cerr << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << c.value
                  << "  tolerance=" << c.tolerance << '\n';
        checks.push_back({{"name", c.name}, {"passed", c.passed}});
      }
      emit({{"output", demo_out}, {"all_passed", report.all_passed}, {"checks", std::move(checks)}});
    }
  }
  catch (frechet::Error const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  catch (std::exception const &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
