#include "cotton/app/report.hpp"

#include <array>
#include <charconv>

namespace cotton::app {

std::string shortest(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string index_label(const std::vector<std::string>& coords, std::span<const std::size_t> idx) {
  bool short_names = true;
  for (const auto& c : coords) short_names = short_names && c.size() == 1;
  std::string out;
  if (short_names) {
    for (auto i : idx) out += coords[i];
    return out;
  }
  return "{" + index_key(coords, idx) + "}";
}

std::string index_key(const std::vector<std::string>& coords, std::span<const std::size_t> idx) {
  std::string out;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (a) out += ",";
    out += coords[idx[a]];
  }
  return out;
}

}  // namespace cotton::app
