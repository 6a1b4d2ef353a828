#include "fapsim/scenario_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

namespace fapsim {

using nlohmann::json;

namespace {

double number_at(const json& obj, const char* key, const std::string& path) {
  if (!obj.contains(key)) throw ValidationError(fmt::format("{}.{}: missing", path, key));
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ValidationError(fmt::format("{}.{}: expected a number", path, key));
  return v.get<double>();
}

}  // namespace

Scenario parse_scenario_json(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const auto upto = text.substr(0, std::min<std::size_t>(e.byte, text.size()));
    const auto line = 1 + std::count(upto.begin(), upto.end(), '\n');
    const auto last_nl = upto.rfind('\n');
    const auto column = last_nl == std::string_view::npos ? upto.size() : upto.size() - last_nl - 1;
    throw ValidationError(fmt::format("{}:{}:{}: malformed JSON ({})", source, line, column,
                                      e.what()));
  }
  if (!doc.is_object()) throw ValidationError(fmt::format("{}: expected a JSON object", source));

  Scenario s;
  if (!doc.contains("area") || !doc.at("area").is_object()) {
    throw ValidationError(fmt::format("{}: area: expected an object", source));
  }
  s.width = number_at(doc.at("area"), "width", source + ": area");
  s.height = number_at(doc.at("area"), "height", source + ": area");
  if (doc.contains("grid_res")) s.grid_res = number_at(doc, "grid_res", source + ":");
  if (doc.contains("seed")) {
    const auto& v = doc.at("seed");
    if (!v.is_number_unsigned()) {
      throw ValidationError(fmt::format("{}: seed: expected an unsigned integer", source));
    }
    s.seed = v.get<std::uint64_t>();
  }

  if (!doc.contains("gus") || !doc.at("gus").is_array()) {
    throw ValidationError(fmt::format("{}: gus: expected an array", source));
  }
  const auto& gus = doc.at("gus");
  for (std::size_t i = 0; i < gus.size(); ++i) {
    const auto path = fmt::format("{}: gus[{}]", source, i);
    if (!gus[i].is_object()) throw ValidationError(path + ": expected an object");
    GroundUser gu;
    gu.position = Vec3(number_at(gus[i], "x", path), number_at(gus[i], "y", path),
                       gus[i].contains("z") ? number_at(gus[i], "z", path) : 0.0);
    gu.offered_load = number_at(gus[i], "load_mbps", path);
    s.gus.push_back(gu);
  }

  try {
    s.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", source, e.what()));
  }
  return s;
}

Scenario parse_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError(fmt::format("cannot open scenario '{}'", path.string()));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario_json(text.str(), path.string());
}

std::string scenario_to_json(const Scenario& s) {
  json gus = json::array();
  for (const auto& gu : s.gus) {
    gus.push_back({{"x", gu.position.x()},
                   {"y", gu.position.y()},
                   {"z", gu.position.z()},
                   {"load_mbps", gu.offered_load}});
  }
  const json doc = {{"area", {{"width", s.width}, {"height", s.height}}},
                    {"gus", gus},
                    {"grid_res", s.grid_res},
                    {"seed", s.seed}};
  return doc.dump(2) + "\n";
}

void write_scenario_file(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(fmt::format("cannot write '{}'", path.string()));
  out << scenario_to_json(scenario);
}

}  // namespace fapsim
