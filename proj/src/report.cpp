#include "fapsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "fapsim/config_io.hpp"

namespace fapsim {

using nlohmann::json;

namespace {

double round6(double x) { return std::round(x * 1e6) / 1e6; }

json point(const Vec2& p) { return json::array({round6(p.x()), round6(p.y())}); }

json segment_json(const Segment& segment) {
  if (const auto* line = std::get_if<LineSegment>(&segment)) {
    return {{"type", "line"},
            {"start", point(line->start)},
            {"end", point(line->end)},
            {"speed_mps", round6(line->speed)}};
  }
  const auto& arc = std::get<ArcSegment>(segment);
  return {{"type", "arc"},
          {"center", point(arc.center)},
          {"radius_m", round6(arc.radius)},
          {"start_angle_rad", round6(arc.start_angle)},
          {"sweep_rad", round6(arc.sweep)},
          {"speed_mps", round6(arc.speed)}};
}

// Tightest arc of the loop; 0 for Hover.
double turn_radius(const Trajectory& t) {
  double r = 0.0;
  for (const auto& seg : t.segments) {
    if (const auto* arc = std::get_if<ArcSegment>(&seg)) {
      r = r == 0.0 ? arc->radius : std::min(r, arc->radius);
    }
  }
  return r;
}

json evaluation_json(const CandidateEvaluation& eval) {
  if (!eval.energy) return {{"feasible", false}, {"reason", eval.infeasible_reason}};
  json segments = json::array();
  for (const auto& s : eval.energy->segments) {
    segments.push_back({{"radius_m", s.radius.is_straight() ? json("inf")
                                                            : json(round6(s.radius.meters()))},
                        {"length_m", round6(s.length)},
                        {"speed_mps", round6(s.speed)},
                        {"power_w", round6(s.power)},
                        {"duration_s", round6(s.duration)}});
  }
  return {{"feasible", true},
          {"avg_power_w", round6(eval.energy->avg_power)},
          {"energy_kj_per_hour", round6(eval.energy->energy_per_hour / 1000.0)},
          {"lap_time_s", round6(eval.energy->lap_time)},
          {"segments", segments}};
}

json selection_json(const Selection& sel) {
  if (!sel.feasible()) return {{"feasible", false}};
  return {{"feasible", true},
          {"kind", to_string(sel.kind)},
          {"avg_power_w", round6(sel.avg_power)},
          {"energy_kj_per_hour", round6(sel.energy_per_hour / 1000.0)}};
}

void write_file(const std::filesystem::path& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(fmt::format("cannot write '{}'", path.string()));
  out << body;
  if (!out) throw IoError(fmt::format("failed writing '{}'", path.string()));
}

void prepare_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError(fmt::format("cannot create output directory '{}'", dir.string()));
  }
}

const char* bar_color(UavType type) { return type == UavType::Rotary ? "#1f77b4" : "#ff7f0e"; }

double nice_ceiling(double value) {
  if (!(value > 0.0)) return 1.0;
  const double magnitude = std::pow(10.0, std::floor(std::log10(value)));
  for (const double step : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (step * magnitude >= value) return step * magnitude;
  }
  return 10.0 * magnitude;
}

std::string uav_label(UavType type) { return type == UavType::Rotary ? "Rotary-wing" : "Fixed-wing"; }

}  // namespace

json run_report_json(const Scenario& scenario, const std::vector<FapPlan>& plans,
                     const PlannerConfig& config, const ReportOptions& options) {
  json faps = json::array();
  double totals[2] = {0.0, 0.0};
  bool feasible[2] = {true, true};
  for (std::size_t k = 0; k < plans.size(); ++k) {
    const auto& fap = plans[k];
    json loads = json::array();
    for (const auto i : fap.group) loads.push_back(scenario.gus[i].offered_load);

    json candidates = json::array();
    for (std::size_t c = 0; c < fap.rotary.size(); ++c) {
      const auto& traj = fap.rotary[c].trajectory;
      json geometry = json::array();
      for (const auto& seg : traj.segments) geometry.push_back(segment_json(seg));
      json entry = {{"kind", to_string(traj.kind)},
                    {"turn_radius_m", round6(turn_radius(traj))},
                    {"length_m", round6(traj.length())},
                    {"anchor", point(traj.anchor)},
                    {"segments", geometry}};
      for (const auto type : options.uav_types) {
        entry[to_string(type)] = evaluation_json(fap.evaluations(type)[c]);
      }
      candidates.push_back(entry);
    }

    json selection = json::object();
    for (const auto type : options.uav_types) {
      const auto& sel = fap.selection(type);
      selection[to_string(type)] = selection_json(sel);
      const int t = type == UavType::Rotary ? 0 : 1;
      if (sel.feasible()) {
        totals[t] += sel.energy_per_hour;
      } else {
        feasible[t] = false;
      }
    }

    json fap_json = {
        {"index", k},
        {"group", fap.group},
        {"loads_mbps", loads},
        {"target_mcs", fap.target_mcs.index},
        {"target_snr_db", fap.target_mcs.min_snr_db},
        {"target_rate_mbps", fap.target_mcs.rate_mbps},
        {"sphere_radius_m", round6(fap.sphere_radius)},
        {"placement",
         {{"position", json::array({round6(fap.placement_position.x()),
                                    round6(fap.placement_position.y()),
                                    round6(fap.placement_position.z())})},
          {"airtime", round6(fap.placement.airtime)}}},
        {"area_cells", fap.area.cell_count()},
        {"area_m2", round6(fap.area.area_m2())},
        {"circular_radius_m", round6(fap.circular_radius)},
        {"candidates", candidates},
        {"selection", selection},
    };
    if (fap.shape) {
      fap_json["centroid"] = point(fap.shape->centroid);
      fap_json["principal_axis"] = point(fap.shape->principal_axis);
      fap_json["min_boundary_distance_m"] = round6(fap.shape->min_dist);
    }
    faps.push_back(fap_json);
  }

  json summary = json::object();
  for (const auto type : options.uav_types) {
    const int t = type == UavType::Rotary ? 0 : 1;
    summary[to_string(type)] = feasible[t]
                                   ? json{{"feasible", true},
                                          {"energy_kj_per_hour", round6(totals[t] / 1000.0)}}
                                   : json{{"feasible", false}};
  }
  if (options.uav_types.size() == 2 && feasible[0] && feasible[1] && totals[0] > 0.0) {
    summary["percent_increase"] = round6(100.0 * (totals[1] - totals[0]) / totals[0]);
  }

  return {{"scenario",
           {{"area", {{"width", scenario.width}, {"height", scenario.height}}},
            {"gu_count", scenario.gus.size()},
            {"grid_res", scenario.grid_res},
            {"seed", scenario.seed}}},
          {"config", config_to_json(config)},
          {"faps", faps},
          {"summary", summary}};
}

std::string run_results_csv(const std::vector<FapPlan>& plans, const ReportOptions& options) {
  std::string csv = "fap,uav_type,trajectory,turn_radius_m,feasible,selected,avg_power_w,energy_kj_per_hour\n";
  for (std::size_t k = 0; k < plans.size(); ++k) {
    for (const auto type : options.uav_types) {
      const auto& evals = plans[k].evaluations(type);
      const auto& sel = plans[k].selection(type);
      for (std::size_t c = 0; c < evals.size(); ++c) {
        const auto& e = evals[c];
        const bool selected = sel.candidate && *sel.candidate == c;
        csv += fmt::format("{},{},{},{:.3f},{},{},", k, to_string(type), to_string(e.trajectory.kind),
                           turn_radius(e.trajectory), e.energy ? 1 : 0, selected ? 1 : 0);
        if (e.energy) {
          csv += fmt::format("{:.3f},{:.3f}\n", e.energy->avg_power,
                             e.energy->energy_per_hour / 1000.0);
        } else {
          csv += "infeasible,infeasible\n";
        }
      }
    }
  }
  return csv;
}

std::string energy_svg(const std::vector<FapPlan>& plans, const ReportOptions& options) {
  constexpr double width = 640, height = 400, left = 70, right = 20, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double peak = 0.0;
  for (const auto& fap : plans) {
    for (const auto type : options.uav_types) {
      const auto& sel = fap.selection(type);
      if (sel.feasible()) peak = std::max(peak, sel.energy_per_hour / 1000.0);
    }
  }
  const double y_max = nice_ceiling(peak * 1.1);

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{:.1f}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">Energy consumption per "
      "hour</text>\n",
      width, height, width / 2);
  for (int tick = 0; tick <= 5; ++tick) {
    const double value = y_max * tick / 5.0;
    const double y = top + plot_h - plot_h * tick / 5.0;
    svg += fmt::format(
        "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#ddd\"/>\n"
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.0f}</text>\n",
        left, y, left + plot_w, y, left - 6, y + 4, value);
  }
  svg += fmt::format(
      "<text transform=\"translate(18 {:.1f}) rotate(-90)\" text-anchor=\"middle\">Energy "
      "(kJ/h)</text>\n",
      top + plot_h / 2);

  const std::size_t groups = std::max<std::size_t>(plans.size(), 1);
  const double group_w = plot_w / double(groups);
  const double bar_w = group_w * 0.7 / double(std::max<std::size_t>(options.uav_types.size(), 1));
  for (std::size_t k = 0; k < plans.size(); ++k) {
    const double x0 = left + group_w * double(k) + group_w * 0.15;
    for (std::size_t t = 0; t < options.uav_types.size(); ++t) {
      const auto type = options.uav_types[t];
      const auto& sel = plans[k].selection(type);
      const double x = x0 + bar_w * double(t);
      if (!sel.feasible()) {
        svg += fmt::format(
            "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-size=\"10\">infeasible"
            "</text>\n",
            x + bar_w / 2, top + plot_h - 4);
        continue;
      }
      const double kj = sel.energy_per_hour / 1000.0;
      const double h = plot_h * kj / y_max;
      svg += fmt::format(
          "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"{}\"/>\n"
          "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-size=\"10\">{:.0f}</text>\n",
          x, top + plot_h - h, bar_w, h, bar_color(type), x + bar_w / 2, top + plot_h - h - 4,
          kj);
    }
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">FAP {}</text>\n",
                       left + group_w * (double(k) + 0.5), top + plot_h + 18, k);
  }
  svg += fmt::format("<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"black\"/>\n",
                     left, top + plot_h, left + plot_w, top + plot_h);
  for (std::size_t t = 0; t < options.uav_types.size(); ++t) {
    const double x = left + 150.0 * double(t);
    svg += fmt::format(
        "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"12\" height=\"12\" fill=\"{}\"/>\n"
        "<text x=\"{:.1f}\" y=\"{:.1f}\">{}</text>\n",
        x, height - 24, bar_color(options.uav_types[t]), x + 18, height - 14,
        uav_label(options.uav_types[t]));
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::filesystem::path> emit_report(const Scenario& scenario,
                                               const std::vector<FapPlan>& plans,
                                               const PlannerConfig& config,
                                               const std::filesystem::path& out_dir,
                                               const ReportOptions& options) {
  prepare_dir(out_dir);
  std::vector<std::filesystem::path> written;
  if (options.json) {
    written.push_back(out_dir / "report.json");
    write_file(written.back(), run_report_json(scenario, plans, config, options).dump(2) + "\n");
  }
  if (options.csv) {
    written.push_back(out_dir / "results.csv");
    write_file(written.back(), run_results_csv(plans, options));
  }
  if (options.svg) {
    written.push_back(out_dir / "energy.svg");
    write_file(written.back(), energy_svg(plans, options));
  }
  return written;
}

json batch_report_json(std::span<const BatchStats> batches) {
  json out = json::array();
  for (const auto& b : batches) {
    json pct = nullptr;
    if (b.percentiles) {
      const auto& p = *b.percentiles;
      pct = {{"p5", round6(p.p5)},
             {"p25", round6(p.p25)},
             {"p50", round6(p.p50)},
             {"p75", round6(p.p75)},
             {"p95", round6(p.p95)}};
    }
    out.push_back({{"gu_count", b.gu_count},
                   {"scenario_count", b.scenario_count},
                   {"seed", b.seed},
                   {"both_feasible", b.feasible_count},
                   {"fixed_infeasible", b.infeasible_fixed_count},
                   {"excluded", b.excluded_count},
                   {"fixed_infeasible_percent", round6(100.0 * b.infeasible_rate())},
                   {"percent_increase_percentiles", pct}});
  }
  return {{"batches", out}};
}

std::string batch_results_csv(std::span<const BatchStats> batches) {
  std::string csv =
      "gu_count,scenario,faps,status,rotary_kj_per_hour,fixed_kj_per_hour,percent_increase\n";
  for (const auto& b : batches) {
    for (const auto& o : b.outcomes) {
      csv += fmt::format("{},{},{},{},", b.gu_count, o.index, o.fap_count, to_string(o.status));
      if (o.status == OutcomeStatus::Excluded) {
        csv += ",,\n";
        continue;
      }
      csv += fmt::format("{:.3f},", o.rotary_energy_per_hour / 1000.0);
      if (o.percent_increase) {
        csv += fmt::format("{:.3f},{:.3f}\n", o.fixed_energy_per_hour / 1000.0, *o.percent_increase);
      } else {
        csv += "infeasible,\n";
      }
    }
  }
  return csv;
}

std::string increase_svg(std::span<const BatchStats> batches) {
  constexpr double width = 640, height = 400, left = 70, right = 20, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;
  double lo = 0.0, hi = 0.0;
  for (const auto& b : batches) {
    if (!b.percentiles) continue;
    lo = std::min(lo, b.percentiles->p5);
    hi = std::max(hi, b.percentiles->p95);
  }
  hi = nice_ceiling(hi * 1.1);
  lo = lo < 0.0 ? -nice_ceiling(-lo * 1.1) : 0.0;
  const auto y_of = [&](double v) { return top + plot_h - plot_h * (v - lo) / (hi - lo); };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{:.1f}\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">Fixed-wing energy "
      "increase over rotary-wing</text>\n",
      width, height, width / 2);
  for (int tick = 0; tick <= 5; ++tick) {
    const double value = lo + (hi - lo) * tick / 5.0;
    const double y = y_of(value);
    svg += fmt::format(
        "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#ddd\"/>\n"
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:.0f}%</text>\n",
        left, y, left + plot_w, y, left - 6, y + 4, value);
  }
  const std::size_t groups = std::max<std::size_t>(batches.size(), 1);
  const double group_w = plot_w / double(groups);
  for (std::size_t k = 0; k < batches.size(); ++k) {
    const double cx = left + group_w * (double(k) + 0.5);
    const double half = std::min(30.0, group_w * 0.3);
    svg += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{} GUs</text>\n", cx,
                       top + plot_h + 20, batches[k].gu_count);
    if (!batches[k].percentiles) continue;
    const auto& p = *batches[k].percentiles;
    svg += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"black\"/>\n"
        "<rect x=\"{3:.1f}\" y=\"{4:.1f}\" width=\"{5:.1f}\" height=\"{6:.1f}\" fill=\"#ff7f0e\" "
        "stroke=\"black\"/>\n"
        "<line x1=\"{3:.1f}\" y1=\"{7:.1f}\" x2=\"{8:.1f}\" y2=\"{7:.1f}\" stroke=\"black\" "
        "stroke-width=\"2\"/>\n",
        cx, y_of(p.p5), y_of(p.p95), cx - half, y_of(p.p75), 2 * half, y_of(p.p25) - y_of(p.p75),
        y_of(p.p50), cx + half);
  }
  svg += "</svg>\n";
  return svg;
}

std::vector<std::filesystem::path> emit_batch_report(std::span<const BatchStats> batches,
                                                     const std::filesystem::path& out_dir,
                                                     const ReportOptions& options) {
  prepare_dir(out_dir);
  std::vector<std::filesystem::path> written;
  if (options.json) {
    written.push_back(out_dir / "report.json");
    write_file(written.back(), batch_report_json(batches).dump(2) + "\n");
  }
  if (options.csv) {
    written.push_back(out_dir / "results.csv");
    write_file(written.back(), batch_results_csv(batches));
  }
  if (options.svg) {
    written.push_back(out_dir / "increase.svg");
    write_file(written.back(), increase_svg(batches));
  }
  return written;
}

}  // namespace fapsim
