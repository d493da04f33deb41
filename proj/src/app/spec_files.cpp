#include "cotton/app/spec_files.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <set>
#include <sstream>

#include "cotton/errors.hpp"
#include "cotton/parser.hpp"

namespace cotton::app {
namespace {

YAML::Node load_yaml(const std::string& text, const std::string& origin) {
  try {
    YAML::Node root = YAML::Load(text);
    if (!root.IsMap()) throw InputError(origin + ": expected a mapping at the top level");
    return root;
  } catch (const YAML::Exception& e) {
    throw InputError(origin + ": " + e.what());
  }
}

std::string scalar_of(const YAML::Node& node, const std::string& what) {
  if (!node.IsScalar()) throw InputError(what + ": expected a scalar value");
  return node.Scalar();
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream in(text);
  while (std::getline(in, part, sep)) {
    const auto b = part.find_first_not_of(" \t");
    const auto e = part.find_last_not_of(" \t");
    parts.push_back(b == std::string::npos ? std::string{} : part.substr(b, e - b + 1));
  }
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

Rational number_of(const YAML::Node& node, const std::string& what) {
  const std::string text = scalar_of(node, what);
  try {
    return Rational::parse(text);
  } catch (const Error& e) {
    throw InputError(what + ": " + e.what());
  }
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

MetricSpec parse_metric_spec(const std::string& text, const std::string& origin) {
  const YAML::Node root = load_yaml(text, origin);
  for (const char* field : {"dim", "coords", "components"}) {
    if (!root[field]) throw InputError(origin + ": missing field '" + field + "'");
  }
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (key != "dim" && key != "coords" && key != "components" && key != "mode") {
      throw InputError(origin + ": unknown field '" + key + "'");
    }
  }

  long dim = 0;
  try {
    dim = root["dim"].as<long>();
  } catch (const YAML::Exception&) {
    throw InputError(origin + ": 'dim' must be an integer");
  }
  if (dim < 1) throw InputError(origin + ": 'dim' must be positive");

  const YAML::Node coords_node = root["coords"];
  if (!coords_node.IsSequence()) throw InputError(origin + ": 'coords' must be a list of names");
  std::vector<std::string> coords;
  for (const auto& c : coords_node) coords.push_back(scalar_of(c, origin + ": coordinate name"));
  if (coords.size() != static_cast<std::size_t>(dim)) {
    throw InputError(origin + ": 'dim' is " + std::to_string(dim) + " but " + std::to_string(coords.size()) +
                     " coordinates are listed");
  }
  std::set<std::string> seen;
  for (const auto& c : coords) {
    const bool identifier = !c.empty() && (std::isalpha(static_cast<unsigned char>(c[0])) || c[0] == '_');
    bool ok = identifier;
    for (char ch : c) ok = ok && (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_');
    if (!ok) throw InputError(origin + ": invalid coordinate name '" + c + "'");
    if (!seen.insert(c).second) throw InputError(origin + ": duplicate coordinate '" + c + "'");
  }

  std::optional<std::string> mode;
  if (root["mode"]) {
    mode = scalar_of(root["mode"], origin + ": mode");
    if (*mode != "exact" && *mode != "float") throw InputError(origin + ": mode must be exact or float");
  }

  const YAML::Node comps = root["components"];
  if (!comps.IsMap()) throw InputError(origin + ": 'components' must be a mapping");
  auto index_of = [&](const std::string& name, const std::string& key) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (coords[i] == name) return i;
    }
    throw InputError(origin + ": component '" + key + "' names unknown coordinate '" + name + "'");
  };
  std::map<std::pair<std::size_t, std::size_t>, Polynomial> components;
  for (const auto& kv : comps) {
    const std::string key = scalar_of(kv.first, origin + ": component key");
    const auto names = split(key, ',');
    if (names.size() != 2) throw InputError(origin + ": component key '" + key + "' must look like \"a,b\"");
    std::size_t i = index_of(names[0], key);
    std::size_t j = index_of(names[1], key);
    if (i > j) std::swap(i, j);
    const std::string source = scalar_of(kv.second, origin + ": component '" + key + "'");
    Polynomial p(coords);
    try {
      p = parse_expr(source, coords);
    } catch (const ParseError& e) {
      throw ParseError(origin + ": component '" + key + "' = \"" + source + "\": " +
                           std::string(e.what()).substr(0, std::string(e.what()).rfind(" at position")),
                       e.position());
    } catch (const InputError& e) {
      throw InputError(origin + ": component '" + key + "' = \"" + source + "\": " + e.what());
    }
    if (!components.emplace(std::make_pair(i, j), std::move(p)).second) {
      throw InputError(origin + ": component '" + key + "' is given twice");
    }
  }
  try {
    return MetricSpec{PolynomialMetric(coords, components), mode};
  } catch (const PreconditionError& e) {
    throw InputError(origin + ": " + e.what());
  }
}

MetricSpec load_metric_spec(const std::filesystem::path& path) {
  return parse_metric_spec(read_text_file(path), path.string());
}

std::string write_metric_spec(const PolynomialMetric& metric) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "dim" << YAML::Value << metric.dim();
  out << YAML::Key << "coords" << YAML::Value << YAML::Flow << metric.coords();
  out << YAML::Key << "components" << YAML::Value << YAML::BeginMap;
  for (std::size_t i = 0; i < metric.dim(); ++i) {
    for (std::size_t j = i; j < metric.dim(); ++j) {
      const Polynomial& p = metric.component(i, j);
      if (p.is_zero()) continue;
      out << YAML::Key << metric.coords()[i] + "," + metric.coords()[j] << YAML::Value << YAML::DoubleQuoted
          << p.to_string();
    }
  }
  out << YAML::EndMap << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

TensorSpec parse_tensor_spec(const std::string& text, const std::string& origin) {
  const YAML::Node root = load_yaml(text, origin);
  for (const char* field : {"inner_product", "tensor"}) {
    if (!root[field]) throw InputError(origin + ": missing field '" + field + "'");
  }
  for (const auto& kv : root) {
    const std::string key = kv.first.as<std::string>();
    if (key != "inner_product" && key != "tensor") throw InputError(origin + ": unknown field '" + key + "'");
  }

  TensorSpec spec;
  const YAML::Node ip = root["inner_product"];
  if (!ip.IsSequence() || ip.size() != 3) throw InputError(origin + ": 'inner_product' must be a 3x3 matrix");
  for (std::size_t i = 0; i < 3; ++i) {
    if (!ip[i].IsSequence() || ip[i].size() != 3) {
      throw InputError(origin + ": 'inner_product' must be a 3x3 matrix");
    }
    for (std::size_t j = 0; j < 3; ++j) {
      spec.inner_product(i, j) = number_of(ip[i][j], origin + ": inner_product entry");
    }
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (spec.inner_product(i, j) != spec.inner_product(j, i)) {
        throw InputError(origin + ": 'inner_product' is not symmetric");
      }
    }
  }

  const YAML::Node t = root["tensor"];
  if (!t.IsMap()) throw InputError(origin + ": 'tensor' must map \"i,j,k\" labels to numbers");
  std::set<std::size_t> given;
  for (const auto& kv : t) {
    const std::string key = scalar_of(kv.first, origin + ": tensor label");
    const auto parts = split(key, ',');
    if (parts.size() != 3) throw InputError(origin + ": tensor label '" + key + "' must look like \"i,j,k\"");
    std::array<std::size_t, 3> idx{};
    for (std::size_t a = 0; a < 3; ++a) {
      if (parts[a] != "1" && parts[a] != "2" && parts[a] != "3") {
        throw InputError(origin + ": tensor label '" + key + "' must use indices 1, 2, 3");
      }
      idx[a] = static_cast<std::size_t>(parts[a][0] - '1');
    }
    const std::size_t flat = idx27(idx[0], idx[1], idx[2]);
    if (!given.insert(flat).second) throw InputError(origin + ": tensor component '" + key + "' is given twice");
    spec.tensor[flat] = number_of(kv.second, origin + ": tensor component '" + key + "'");
  }
  return spec;
}

TensorSpec load_tensor_spec(const std::filesystem::path& path) {
  return parse_tensor_spec(read_text_file(path), path.string());
}

std::string write_tensor_spec(const TensorSpec& spec) {
  std::ostringstream out;
  out << "inner_product:\n";
  for (std::size_t i = 0; i < 3; ++i) {
    out << "  - [";
    for (std::size_t j = 0; j < 3; ++j) out << (j ? ", " : "") << spec.inner_product(i, j).to_string();
    out << "]\n";
  }
  out << "tensor:\n";
  bool any = false;
  for (std::size_t k = 0; k < 27; ++k) {
    if (spec.tensor[k].is_zero()) continue;
    any = true;
    out << "  \"" << k / 9 + 1 << "," << (k / 3) % 3 + 1 << "," << k % 3 + 1 << "\": " << spec.tensor[k].to_string()
        << "\n";
  }
  if (!any) return out.str().substr(0, out.str().size() - 1) + " {}\n";
  return out.str();
}

}  // namespace cotton::app
