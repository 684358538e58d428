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
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <sstream>

using namespace frechet;

namespace {

CdfEnsemble awkward_ensemble()
{
  ProbGrid const grid = ProbGrid::midpoint(7);
  auto           rng  = testkit::make_rng(99);
  Matrix         curves(5, grid.size());
  for (std::size_t k = 0; k < 5; ++k)
  {
    double x = testkit::uniform(rng, -1e6, 1e6);
    for (std::size_t j = 0; j < grid.size(); ++j)
    {
      // Values without short decimal forms, subnormals and huge magnitudes.
      x += std::nextafter(testkit::uniform(rng, 0, 1) / 3.0, 1.0);
      curves(k, j) = x;
    }
  }
  curves(0, 0)                  = -1e300;
  std::vector<double> const odd = {0.0,     4.9e-324, 1e-310, 1.0 / 3.0, std::nextafter(1.0, 2.0),
                                   1e10 / 3, 1e300};
  std::copy(odd.begin(), odd.end(), curves.row(1).begin());
  return CdfEnsemble(grid, std::move(curves));
}

void expect_bit_equal(Matrix const &a, Matrix const &b)
{
  ASSERT_EQ(a.rows(), b.rows());
  ASSERT_EQ(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k)
  {
    for (std::size_t j = 0; j < a.cols(); ++j)
    {
      EXPECT_EQ(a(k, j), b(k, j)) << k << "," << j;
    }
  }
}

std::filesystem::path scratch(std::string const &name)
{
  auto dir = std::filesystem::temp_directory_path() / "frechet_io_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST(EnsembleCsv, RoundTripIsBitExact)
{
  auto const        e = awkward_ensemble();
  std::stringstream buffer;
  io::write_ensemble_csv(buffer, e);
  auto const back = io::read_ensemble_csv(buffer);
  EXPECT_EQ(std::vector<double>(back.grid().levels().begin(), back.grid().levels().end()),
            std::vector<double>(e.grid().levels().begin(), e.grid().levels().end()));
  expect_bit_equal(back.curves(), e.curves());
  EXPECT_EQ(back.grid().scheme(), ProbGrid::Scheme::kMidpoint);
}

TEST(EnsembleCsv, FileRoundTripWithInputs)
{
  auto const e    = awkward_ensemble();
  auto const path = scratch("ensemble.csv");
  io::write_ensemble_csv(path, e);
  Matrix inputs(5, 2);
  for (std::size_t k = 0; k < 5; ++k)
  {
    inputs(k, 0) = 0.1 * static_cast<double>(k);
    inputs(k, 1) = -1.0 / 3.0 * static_cast<double>(k);
  }
  std::stringstream sidecar;
  io::write_inputs_csv(sidecar, inputs);
  EXPECT_EQ(sidecar.str().substr(0, 6), "X1,X2\n");
  auto const inputs_back = io::read_inputs_csv(sidecar);
  expect_bit_equal(inputs_back, inputs);

  auto const back = io::read_ensemble(path, inputs_back);
  ASSERT_TRUE(back.inputs().has_value());
  expect_bit_equal(*back.inputs(), inputs);
  expect_bit_equal(back.curves(), e.curves());
}

TEST(EnsembleCsv, ParseErrors)
{
  std::stringstream only_levels("0.25,0.75\n");
  EXPECT_THROW(io::read_ensemble_csv(only_levels), ParseError);
  std::stringstream ragged("0.25,0.75\n1,2\n1\n");
  EXPECT_THROW(io::read_ensemble_csv(ragged), ParseError);
  std::stringstream junk("0.25,0.75\n1,abc\n");
  EXPECT_THROW(io::read_ensemble_csv(junk), ParseError);
  std::stringstream decreasing("0.25,0.75\n2,1\n");
  EXPECT_THROW(io::read_ensemble_csv(decreasing), ValidationError);
  EXPECT_THROW(io::read_ensemble_csv(std::filesystem::path("/nonexistent/x.csv")), Error);
}

TEST(EnsembleJson, RoundTripWithWeights)
{
  auto const  e = awkward_ensemble();
  CdfEnsemble weighted(e.grid(), e.curves(), {0.1, 0.2, 0.3, 0.25, 0.15});
  std::stringstream buffer;
  io::write_ensemble_json(buffer, weighted);
  auto const back = io::read_ensemble_json(buffer);
  expect_bit_equal(back.curves(), e.curves());
  ASSERT_EQ(back.weights().size(), 5u);
  for (std::size_t k = 0; k < 5; ++k)
  {
    EXPECT_EQ(back.weights()[k], weighted.weights()[k]);
  }

  auto const path = scratch("ensemble.json");
  {
    std::ofstream out(path);
    io::write_ensemble_json(out, e);
  }
  auto const from_file = io::read_ensemble(path);
  expect_bit_equal(from_file.curves(), e.curves());
  EXPECT_TRUE(from_file.uniform_weights());
}

TEST(EnsembleJson, Malformed)
{
  std::stringstream broken("{\"levels\": [0.5], \"curves\": [[1]");
  EXPECT_THROW(io::read_ensemble_json(broken), ParseError);
  std::stringstream missing("{\"levels\": [0.5]}");
  EXPECT_THROW(io::read_ensemble_json(missing), ParseError);
  std::stringstream wrong_len("{\"levels\": [0.25, 0.75], \"curves\": [[1]]}");
  EXPECT_THROW(io::read_ensemble_json(wrong_len), ParseError);
}

TEST(CurveCsv, SingleCurve)
{
  auto const        e = awkward_ensemble();
  std::stringstream buffer;
  io::write_curve_csv(buffer, e.curve(2));
  auto const path = scratch("curve.csv");
  {
    std::ofstream out(path);
    out << buffer.str();
  }
  auto const back = io::read_curve_csv(path);
  for (std::size_t j = 0; j < back.size(); ++j)
  {
    EXPECT_EQ(back[j], e.curve(2)[j]);
  }
  io::write_ensemble_csv(path, e);
  EXPECT_THROW(io::read_curve_csv(path), ParseError);
}

TEST(TabulatedContrast, ReadFromCsv)
{
  std::stringstream in("delta,C\n-2,4\n0,0\n1,1\n3,9\n");
  auto const        table = io::read_convex_table_csv(in);
  EXPECT_EQ(table(0.0), 0.0);
  EXPECT_DOUBLE_EQ(table(2.0), 5.0);
  EXPECT_DOUBLE_EQ(table(-1.0), 2.0);

  auto const path = scratch("table.csv");
  {
    std::ofstream out(path);
    out << "-1,1\n0,0\n1,1\n";
  }
  auto const c = io::parse_contrast("tabulated:" + path.string());
  EXPECT_EQ(c.kind(), ContrastSpec::Kind::kTabulated);
  EXPECT_DOUBLE_EQ(c(0.5, 0.0), 0.5);

  std::stringstream concave("-1,-1\n0,0\n1,-1\n");
  EXPECT_THROW(io::read_convex_table_csv(concave), ValidationError);
  std::stringstream three_cols("0,0,0\n1,1,1\n");
  EXPECT_THROW(io::read_convex_table_csv(three_cols), ParseError);
}

TEST(ParseNumberList, Examples)
{
  EXPECT_EQ(io::parse_number_list("1,2.5,-3"), (std::vector<double>{1, 2.5, -3}));
  EXPECT_EQ(io::parse_number_list(" 0.5 , 1e-3"), (std::vector<double>{0.5, 1e-3}));
  EXPECT_THROW(io::parse_number_list("1,,2"), ParseError);
  EXPECT_THROW(io::parse_number_list("1,x"), ParseError);
}
