#include "complex_io.hpp"

#include <json.hpp>

namespace morselink::alg {

using nlohmann::json;

std::string complex_to_json(const FilteredComplex& cx) {
  const Ring& ring = cx.ring();
  json out;
  out["dimension"] = cx.dimension();
  out["ring"] = ring.name();
  json gens = json::array();
  for (const Generator& g : cx.generators())
    gens.push_back({{"id", g.id}, {"degree", g.degree}, {"level", g.level}});
  out["generators"] = std::move(gens);

  json boundary = json::object();
  for (int k = 1; k <= cx.dimension(); ++k) {
    json entries = json::array();
    for (const std::string& col : cx.basis(k))
      for (const auto& [row, c] : cx.d(col).coeffs)
        entries.push_back({row, col, ring.str(c)});
    if (!entries.empty()) boundary[std::to_string(k)] = std::move(entries);
  }
  out["boundary"] = std::move(boundary);
  return out.dump(2);
}

FilteredComplex complex_from_json(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    fail(errc::parse_error, std::string("bad complex JSON: ") + e.what());
  }
  try {
    Ring ring = Ring::parse(in.at("ring").get<std::string>());
    int dimension = in.at("dimension").get<int>();
    std::vector<Generator> gens;
    for (const auto& g : in.at("generators"))
      gens.push_back(Generator{g.at("id").get<std::string>(), g.at("degree").get<int>(),
                               g.at("level").get<double>()});
    std::map<std::string, Chain> boundary;
    for (const auto& [_, entries] : in.at("boundary").items())
      for (const auto& e : entries) {
        const std::string row = e.at(0).get<std::string>();
        const std::string col = e.at(1).get<std::string>();
        Scalar c = ring.parse_scalar(e.at(2).get<std::string>());
        auto [it, inserted] = boundary.try_emplace(col);
        require(it->second.coeffs.emplace(row, c).second, errc::parse_error,
                "duplicate boundary entry " + row + " <- " + col);
      }
    return FilteredComplex::make(dimension, ring, std::move(gens), std::move(boundary));
  } catch (const json::exception& e) {
    fail(errc::parse_error, std::string("bad complex JSON: ") + e.what());
  }
}

}  // namespace morselink::alg
