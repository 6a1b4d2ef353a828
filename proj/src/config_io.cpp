#include "fapsim/config_io.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace fapsim {

using nlohmann::json;

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_number(const std::string& cell, const std::string& where) {
  std::istringstream in(cell);
  in.imbue(std::locale::classic());
  double value = 0.0;
  if (!(in >> value) || !(in >> std::ws).eof()) {
    throw ValidationError(fmt::format("{}: '{}' is not a number", where, cell));
  }
  return value;
}

// Copies obj[key] into `target` when present, with the key path in errors.
class Reader {
 public:
  Reader(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ValidationError(fmt::format("{}: expected an object", path_));
  }

  void number(const char* key, double& target) {
    seen_.push_back(key);
    if (!obj_.contains(key)) return;
    const auto& v = obj_.at(key);
    if (!v.is_number()) throw ValidationError(fmt::format("{}.{}: expected a number", path_, key));
    target = v.get<double>();
  }

  void integer(const char* key, int& target) {
    seen_.push_back(key);
    if (!obj_.contains(key)) return;
    const auto& v = obj_.at(key);
    if (!v.is_number_integer()) {
      throw ValidationError(fmt::format("{}.{}: expected an integer", path_, key));
    }
    target = v.get<int>();
  }

  void text(const char* key, std::string& target) {
    seen_.push_back(key);
    if (!obj_.contains(key)) return;
    const auto& v = obj_.at(key);
    if (!v.is_string()) throw ValidationError(fmt::format("{}.{}: expected a string", path_, key));
    target = v.get<std::string>();
  }

  void optional_number(const char* key, std::optional<double>& target) {
    seen_.push_back(key);
    if (!obj_.contains(key)) return;
    const auto& v = obj_.at(key);
    if (v.is_null()) {
      target.reset();
    } else if (v.is_number()) {
      target = v.get<double>();
    } else {
      throw ValidationError(fmt::format("{}.{}: expected a number or null", path_, key));
    }
  }

  void expect(const char* key) { seen_.push_back(key); }

  void reject_unknown() const {
    for (const auto& [key, _] : obj_.items()) {
      if (std::find(seen_.begin(), seen_.end(), key) == seen_.end()) {
        throw ValidationError(fmt::format("{}: unknown key '{}'", path_, key));
      }
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::vector<std::string> seen_;
};

}  // namespace

McsTable parse_mcs_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "mcs,min_snr_db,rate_mbps") {
    throw ValidationError(fmt::format("{}:1: expected header 'mcs,min_snr_db,rate_mbps'", source));
  }
  std::vector<McsEntry> entries;
  for (int line_no = 2; std::getline(in, line); ++line_no) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells;
    std::istringstream row(line);
    for (std::string cell; std::getline(row, cell, ',');) cells.push_back(trim(cell));
    const auto where = fmt::format("{}:{}", source, line_no);
    if (cells.size() != 3) {
      throw ValidationError(fmt::format("{}: expected 3 columns, got {}", where, cells.size()));
    }
    const double index = parse_number(cells[0], where);
    entries.push_back({static_cast<int>(index), parse_number(cells[1], where),
                       parse_number(cells[2], where)});
  }
  return McsTable(std::move(entries));
}

McsTable load_mcs_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open MCS table '{}'", path.string()));
  return parse_mcs_csv(in, path.string());
}

PlannerConfig config_from_json(const json& doc, const std::filesystem::path& base_dir) {
  PlannerConfig config;
  Reader top(doc, "config");

  if (doc.contains("rotary")) {
    auto& r = config.rotary;
    Reader in(doc.at("rotary"), "config.rotary");
    in.number("blade_profile_power_w", r.blade_profile_power);
    in.number("induced_power_w", r.induced_power);
    in.number("tip_speed_mps", r.tip_speed);
    in.number("induced_velocity_mps", r.induced_velocity);
    in.number("fuselage_drag_ratio", r.fuselage_drag_ratio);
    in.number("rotor_solidity", r.rotor_solidity);
    in.number("air_density_kgpm3", r.air_density);
    in.number("rotor_disc_area_m2", r.rotor_disc_area);
    in.number("gravity_mps2", r.gravity);
    in.number("weight_n", r.weight);
    in.number("rotor_radius_m", r.rotor_radius);
    in.number("blade_angular_velocity_radps", r.blade_angular_velocity);
    in.number("induced_power_correction", r.induced_power_correction);
    in.number("profile_drag_coefficient", r.profile_drag_coefficient);
    in.reject_unknown();
  }
  top.expect("rotary");

  if (doc.contains("fixed")) {
    auto& f = config.fixed;
    Reader in(doc.at("fixed"), "config.fixed");
    in.number("c1", f.c1);
    in.number("c2", f.c2);
    in.number("gravity_mps2", f.gravity);
    in.number("min_turn_radius_m", f.min_turn_radius);
    in.optional_number("mass_kg", f.mass);
    in.reject_unknown();
  }
  top.expect("fixed");

  if (doc.contains("link")) {
    auto& l = config.link;
    Reader in(doc.at("link"), "config.link");
    in.text("standard", l.standard);
    in.number("channel_bandwidth_mhz", l.channel_bandwidth_mhz);
    in.integer("channel", l.channel);
    in.number("frequency_mhz", l.frequency_mhz);
    in.number("guard_interval_ns", l.guard_interval_ns);
    in.number("tx_power_dbm", l.tx_power_dbm);
    in.number("noise_power_dbm", l.noise_power_dbm);
    in.number("snr_margin_db", l.snr_margin_db);
    in.reject_unknown();
  }
  top.expect("link");

  top.number("fap_altitude_m", config.fap_altitude);

  if (doc.contains("speed_bounds_mps")) {
    const auto& b = doc.at("speed_bounds_mps");
    if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
      throw ValidationError("config.speed_bounds_mps: expected [lower, upper]");
    }
    config.speeds = {b[0].get<double>(), b[1].get<double>()};
  }
  top.expect("speed_bounds_mps");

  std::string grouping = to_string(config.grouping);
  top.text("grouping", grouping);
  config.grouping = grouping_rule_from_string(grouping);

  if (doc.contains("mcs_table")) {
    const auto& t = doc.at("mcs_table");
    if (t.is_string()) {
      std::filesystem::path p = t.get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      config.mcs = load_mcs_table(p);
    } else if (t.is_array()) {
      std::vector<McsEntry> entries;
      for (std::size_t k = 0; k < t.size(); ++k) {
        const auto& e = t[k];
        if (!e.is_object() || !e.contains("mcs") || !e.contains("min_snr_db") ||
            !e.contains("rate_mbps")) {
          throw ValidationError(fmt::format("config.mcs_table[{}]: expected mcs, min_snr_db, "
                                            "rate_mbps",
                                            k));
        }
        entries.push_back({e.at("mcs").get<int>(), e.at("min_snr_db").get<double>(),
                           e.at("rate_mbps").get<double>()});
      }
      config.mcs = McsTable(std::move(entries));
    } else {
      throw ValidationError("config.mcs_table: expected a CSV path or an array");
    }
  }
  top.expect("mcs_table");
  top.reject_unknown();

  config.validate();
  return config;
}

PlannerConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open config '{}'", path.string()));
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
  return config_from_json(doc, path.parent_path());
}

json config_to_json(const PlannerConfig& c) {
  json mcs = json::array();
  for (const auto& e : c.mcs.entries()) {
    mcs.push_back({{"mcs", e.index}, {"min_snr_db", e.min_snr_db}, {"rate_mbps", e.rate_mbps}});
  }
  const auto& r = c.rotary;
  const auto& f = c.fixed;
  const auto& l = c.link;
  return {
      {"rotary",
       {{"blade_profile_power_w", r.blade_profile_power},
        {"induced_power_w", r.induced_power},
        {"tip_speed_mps", r.tip_speed},
        {"induced_velocity_mps", r.induced_velocity},
        {"fuselage_drag_ratio", r.fuselage_drag_ratio},
        {"rotor_solidity", r.rotor_solidity},
        {"air_density_kgpm3", r.air_density},
        {"rotor_disc_area_m2", r.rotor_disc_area},
        {"gravity_mps2", r.gravity},
        {"weight_n", r.weight},
        {"rotor_radius_m", r.rotor_radius},
        {"blade_angular_velocity_radps", r.blade_angular_velocity},
        {"induced_power_correction", r.induced_power_correction},
        {"profile_drag_coefficient", r.profile_drag_coefficient}}},
      {"fixed",
       {{"c1", f.c1},
        {"c2", f.c2},
        {"gravity_mps2", f.gravity},
        {"min_turn_radius_m", f.min_turn_radius},
        {"mass_kg", f.mass ? json(*f.mass) : json(nullptr)}}},
      {"link",
       {{"standard", l.standard},
        {"channel_bandwidth_mhz", l.channel_bandwidth_mhz},
        {"channel", l.channel},
        {"frequency_mhz", l.frequency_mhz},
        {"guard_interval_ns", l.guard_interval_ns},
        {"tx_power_dbm", l.tx_power_dbm},
        {"noise_power_dbm", l.noise_power_dbm},
        {"snr_margin_db", l.snr_margin_db}}},
      {"fap_altitude_m", c.fap_altitude},
      {"speed_bounds_mps", {c.speeds.lower, c.speeds.upper}},
      {"grouping", to_string(c.grouping)},
      {"mcs_table", mcs},
  };
}

}  // namespace fapsim
