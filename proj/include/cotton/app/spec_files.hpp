#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "cotton/chart.hpp"
#include "cotton/cotton_algebra.hpp"
#include "cotton/rational.hpp"

namespace cotton::app {

/// A metric spec file is a YAML mapping:
///
///   dim: 3
///   coords: [t, s, x]
///   mode: exact            # optional, exact or float
///   components:
///     t,t: x^3 + t*x
///     t,s: 1/2
///     x,x: 1
///
/// Unlisted component pairs are 0. "i,j" and "j,i" name the same entry and
/// may not both appear.
struct MetricSpec {
  PolynomialMetric metric;
  std::optional<std::string> mode;
};

MetricSpec parse_metric_spec(const std::string& text, const std::string& origin = "<string>");
MetricSpec load_metric_spec(const std::filesystem::path& path);
std::string write_metric_spec(const PolynomialMetric& metric);

/// A tensor spec file holds a 3x3 symmetric inner product and the
/// components T_ijk under 1-based labels "i,j,k"; unlisted components are 0.
/// Numbers are integers, p/q rationals or decimals (read exactly):
///
///   inner_product:
///     - [1, 0, 0]
///     - [0, 1, 0]
///     - [0, 0, -1]
///   tensor:
///     "1,2,1": 3
///     "2,1,1": -3
struct TensorSpec {
  Matrix<Rational> inner_product{3, 3, Rational{0}};
  Array27<Rational> tensor{};
};

TensorSpec parse_tensor_spec(const std::string& text, const std::string& origin = "<string>");
TensorSpec load_tensor_spec(const std::filesystem::path& path);
std::string write_tensor_spec(const TensorSpec& spec);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace cotton::app
