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

// File formats.
//
// Ensemble CSV: the first row holds the m probability levels u_1..u_m, every
// following row is one quantile curve. Values are written as the shortest
// decimal that parses back to the same double, so write -> read is bit exact.
//
// Ensemble JSON: {"levels": [...], "curves": [[...], ...]} with an optional
// "weights" array.
//
// Inputs CSV: header X1,...,Xd then one row per curve.
//
// Tabulated contrast CSV: two columns (delta, C(delta)); an optional
// non-numeric header line is skipped.

#include "frechet/common.hpp"
#include "frechet/contrasts.hpp"
#include "frechet/frechet_features.hpp"
#include "frechet/quantile_model.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace frechet::io {

namespace detail {

inline std::vector<std::string_view> split_commas(std::string_view line)
{
  std::vector<std::string_view> out;
  while (true)
  {
    auto const comma = line.find(',');
    out.push_back(line.substr(0, comma));
    if (comma == std::string_view::npos)
    {
      break;
    }
    line.remove_prefix(comma + 1);
  }
  return out;
}

inline bool skippable(std::string_view line)
{
  auto const first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#';
}

/// Numeric rows of a CSV stream. A leading non-numeric row is returned in
/// `header` instead when `allow_header` is set.
struct CsvTable
{
  std::vector<std::string>         header;
  std::vector<std::vector<double>> rows;
};

inline CsvTable read_numeric_csv(std::istream &in, bool allow_header)
{
  CsvTable    table;
  std::string line;
  std::size_t line_no = 0;
  bool        first   = true;
  while (std::getline(in, line))
  {
    ++line_no;
    if (skippable(line))
    {
      continue;
    }
    auto const          fields = split_commas(line);
    std::vector<double> row;
    row.reserve(fields.size());
    try
    {
      for (auto f : fields)
      {
        row.push_back(frechet::detail::parse_double(f, "CSV field"));
      }
    }
    catch (ParseError const &e)
    {
      if (first && allow_header)
      {
        for (auto f : fields)
        {
          table.header.emplace_back(frechet::detail::trim(f));
        }
        first = false;
        continue;
      }
      throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
    }
    first = false;
    table.rows.push_back(std::move(row));
  }
  return table;
}

inline void write_row(std::ostream &out, std::span<double const> values)
{
  for (std::size_t j = 0; j < values.size(); ++j)
  {
    if (j)
    {
      out << ',';
    }
    out << frechet::detail::format_double(values[j]);
  }
  out << '\n';
}

inline std::ifstream open_in(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw Error("cannot open '" + path.string() + "' for reading");
  }
  return in;
}

inline std::ofstream open_out(std::filesystem::path const &path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw Error("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

}  // namespace detail

//------------------------------------------------------------------------------
// Ensemble CSV.
//------------------------------------------------------------------------------

inline void write_ensemble_csv(std::ostream &out, ProbGrid const &grid, Matrix const &curves)
{
  detail::write_row(out, grid.levels());
  for (std::size_t k = 0; k < curves.rows(); ++k)
  {
    detail::write_row(out, curves.row(k));
  }
}

inline void write_ensemble_csv(std::ostream &out, CdfEnsemble const &e)
{
  write_ensemble_csv(out, e.grid(), e.curves());
}

inline CdfEnsemble read_ensemble_csv(std::istream &in, std::optional<Matrix> inputs = std::nullopt)
{
  auto table = detail::read_numeric_csv(in, false);
  if (table.rows.size() < 2)
  {
    throw ParseError("ensemble CSV needs a level row and at least one curve row");
  }
  ProbGrid            grid = ProbGrid::from_levels(table.rows.front());
  std::size_t const   m    = grid.size();
  std::size_t const   n    = table.rows.size() - 1;
  std::vector<double> data;
  data.reserve(n * m);
  for (std::size_t k = 1; k <= n; ++k)
  {
    if (table.rows[k].size() != m)
    {
      throw ParseError("curve row " + std::to_string(k) + " has " +
                       std::to_string(table.rows[k].size()) + " values, expected " +
                       std::to_string(m));
    }
    data.insert(data.end(), table.rows[k].begin(), table.rows[k].end());
  }
  return CdfEnsemble(std::move(grid), Matrix(n, m, std::move(data)), {}, std::move(inputs));
}

inline CdfEnsemble read_ensemble_csv(std::filesystem::path const &path,
                                     std::optional<Matrix> inputs = std::nullopt)
{
  auto in = detail::open_in(path);
  return read_ensemble_csv(in, std::move(inputs));
}

inline void write_ensemble_csv(std::filesystem::path const &path, CdfEnsemble const &e)
{
  auto out = detail::open_out(path);
  write_ensemble_csv(out, e);
}

/// A single quantile curve stored in ensemble CSV format.
inline QuantileCurve read_curve_csv(std::filesystem::path const &path)
{
  auto const e = read_ensemble_csv(path);
  if (e.size() != 1)
  {
    throw ParseError("'" + path.string() + "' holds " + std::to_string(e.size()) +
                     " curves, expected exactly one");
  }
  return e.curve(0);
}

inline void write_curve_csv(std::ostream &out, QuantileCurve const &curve)
{
  detail::write_row(out, curve.grid().levels());
  detail::write_row(out, curve.values());
}

//------------------------------------------------------------------------------
// Inputs sidecar CSV.
//------------------------------------------------------------------------------

inline void write_inputs_csv(std::ostream &out, Matrix const &inputs)
{
  for (std::size_t c = 0; c < inputs.cols(); ++c)
  {
    out << (c ? "," : "") << 'X' << (c + 1);
  }
  out << '\n';
  for (std::size_t k = 0; k < inputs.rows(); ++k)
  {
    detail::write_row(out, inputs.row(k));
  }
}

inline Matrix read_inputs_csv(std::istream &in)
{
  auto table = detail::read_numeric_csv(in, true);
  if (table.rows.empty())
  {
    throw ParseError("inputs CSV has no rows");
  }
  std::size_t const   d = table.rows.front().size();
  std::vector<double> data;
  for (std::size_t k = 0; k < table.rows.size(); ++k)
  {
    if (table.rows[k].size() != d)
    {
      throw ParseError("inputs row " + std::to_string(k + 1) + " has a different column count");
    }
    data.insert(data.end(), table.rows[k].begin(), table.rows[k].end());
  }
  return Matrix(table.rows.size(), d, std::move(data));
}

inline Matrix read_inputs_csv(std::filesystem::path const &path)
{
  auto in = detail::open_in(path);
  return read_inputs_csv(in);
}

//------------------------------------------------------------------------------
// Ensemble JSON.
//------------------------------------------------------------------------------

inline nlohmann::json ensemble_to_json(CdfEnsemble const &e)
{
  nlohmann::json j;
  j["levels"] = std::vector<double>(e.grid().levels().begin(), e.grid().levels().end());
  auto curves = nlohmann::json::array();
  for (std::size_t k = 0; k < e.size(); ++k)
  {
    curves.push_back(std::vector<double>(e.row(k).begin(), e.row(k).end()));
  }
  j["curves"] = std::move(curves);
  if (!e.uniform_weights())
  {
    j["weights"] = std::vector<double>(e.weights().begin(), e.weights().end());
  }
  return j;
}

inline CdfEnsemble ensemble_from_json(nlohmann::json const &j)
{
  try
  {
    auto                levels = j.at("levels").get<std::vector<double>>();
    auto const         &curves = j.at("curves");
    ProbGrid            grid   = ProbGrid::from_levels(std::move(levels));
    std::size_t const   m      = grid.size();
    std::vector<double> data;
    for (auto const &c : curves)
    {
      auto row = c.get<std::vector<double>>();
      if (row.size() != m)
      {
        throw ParseError("JSON curve length does not match the number of levels");
      }
      data.insert(data.end(), row.begin(), row.end());
    }
    std::vector<double> weights;
    if (j.contains("weights"))
    {
      weights = j.at("weights").get<std::vector<double>>();
    }
    return CdfEnsemble(std::move(grid), Matrix(curves.size(), m, std::move(data)),
                       std::move(weights));
  }
  catch (nlohmann::json::exception const &e)
  {
    throw ParseError(std::string("malformed ensemble JSON: ") + e.what());
  }
}

inline void write_ensemble_json(std::ostream &out, CdfEnsemble const &e)
{
  out << ensemble_to_json(e).dump() << '\n';
}

inline CdfEnsemble read_ensemble_json(std::istream &in)
{
  try
  {
    return ensemble_from_json(nlohmann::json::parse(in));
  }
  catch (nlohmann::json::parse_error const &e)
  {
    throw ParseError(std::string("malformed ensemble JSON: ") + e.what());
  }
}

/// Reads `.json` files as ensemble JSON and everything else as ensemble CSV.
inline CdfEnsemble read_ensemble(std::filesystem::path const &path,
                                 std::optional<Matrix> inputs = std::nullopt)
{
  if (path.extension() == ".json")
  {
    auto in = detail::open_in(path);
    auto e  = read_ensemble_json(in);
    if (!inputs)
    {
      return e;
    }
    return CdfEnsemble(e.grid(), e.curves(),
                       e.uniform_weights() ? std::vector<double>{}
                                           : std::vector<double>(e.weights().begin(), e.weights().end()),
                       std::move(inputs));
  }
  return read_ensemble_csv(path, std::move(inputs));
}

//------------------------------------------------------------------------------
// Contrasts.
//------------------------------------------------------------------------------

inline ConvexTable read_convex_table_csv(std::istream &in)
{
  auto table = detail::read_numeric_csv(in, true);
  std::vector<double> deltas, values;
  for (std::size_t k = 0; k < table.rows.size(); ++k)
  {
    if (table.rows[k].size() != 2)
    {
      throw ParseError("tabulated contrast rows need exactly two columns (delta, C)");
    }
    deltas.push_back(table.rows[k][0]);
    values.push_back(table.rows[k][1]);
  }
  return ConvexTable(std::move(deltas), std::move(values));
}

/// ContrastSpec::parse plus `tabulated:<path to two-column CSV>`.
inline ContrastSpec parse_contrast(std::string_view text)
{
  constexpr std::string_view kTabulated = "tabulated:";
  if (text.substr(0, kTabulated.size()) == kTabulated)
  {
    auto in = detail::open_in(std::filesystem::path(std::string(text.substr(kTabulated.size()))));
    return ContrastSpec::tabulated(read_convex_table_csv(in));
  }
  return ContrastSpec::parse(text);
}

/// Comma-separated list of numbers, as used by --probe-grid.
inline std::vector<double> parse_number_list(std::string_view text)
{
  std::vector<double> out;
  for (auto f : detail::split_commas(text))
  {
    out.push_back(frechet::detail::parse_double(f, "number"));
  }
  return out;
}

}  // namespace frechet::io
