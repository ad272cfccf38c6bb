#include "cli.h"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "texstitch/codec_dst.h"
#include "texstitch/native_plan.h"
#include "texstitch/preview_render.h"

namespace texstitch::cli {

namespace {

using nlohmann::json;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

// Assigns each present key of a config section through its setter.
class Section {
 public:
  Section(const json& doc, std::string name) : doc_(doc), name_(std::move(name)) {
    if (!doc_.is_object()) throw Error(ErrorCode::SyntaxError, "config section '" + name_ + "' must be an object");
  }

  Section& number(const std::string& key, double& target) {
    known_.push_back(key);
    if (doc_.contains(key)) {
      if (!doc_[key].is_number()) throw Error(ErrorCode::SyntaxError, name_ + "." + key + " must be a number");
      target = doc_[key].get<double>();
    }
    return *this;
  }

  Section& integer(const std::string& key, int& target) {
    known_.push_back(key);
    if (doc_.contains(key)) {
      if (!doc_[key].is_number_integer()) throw Error(ErrorCode::SyntaxError, name_ + "." + key + " must be an integer");
      target = doc_[key].get<int>();
    }
    return *this;
  }

  Section& text(const std::string& key, const std::function<void(const std::string&)>& apply) {
    known_.push_back(key);
    if (doc_.contains(key)) {
      if (!doc_[key].is_string()) throw Error(ErrorCode::SyntaxError, name_ + "." + key + " must be a string");
      apply(doc_[key].get<std::string>());
    }
    return *this;
  }

  void finish() const {
    for (const auto& [key, value] : doc_.items()) {
      if (std::find(known_.begin(), known_.end(), key) == known_.end())
        throw Error(ErrorCode::SyntaxError, "unknown config key '" + name_ + "." + key + "'");
    }
  }

 private:
  const json& doc_;
  std::string name_;
  std::vector<std::string> known_;
};

LabelOrientation orientation_from(const std::string& s) {
  if (s == "auto") return LabelOrientation::Auto;
  if (s == "horizontal") return LabelOrientation::Horizontal;
  if (s == "vertical") return LabelOrientation::Vertical;
  throw Error(ErrorCode::SyntaxError, "label_orientation must be auto, horizontal or vertical");
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string fixed(double v, int digits) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(digits);
  os << v;
  return os.str();
}

// Command-line overrides; an option counts only when given.
struct Overrides {
  double max_stitch = 0, min_stitch = 0, row_spacing = 0, fill_angle = 0, trim_threshold = 0;
  double hoop_width = 0, hoop_height = 0, speed = 0, text_min_height = 0;
  std::vector<std::pair<CLI::Option*, std::function<void(Settings&)>>> options;

  void add(CLI::App& app) {
    bind(app, "--max-stitch", max_stitch, "Longest normal stitch (mm)",
         [this](Settings& s) { s.options.planner.max_stitch_mm = max_stitch; });
    bind(app, "--min-stitch", min_stitch, "Shortest stitch kept (mm)",
         [this](Settings& s) { s.options.planner.min_stitch_mm = min_stitch; });
    bind(app, "--row-spacing", row_spacing, "Fill row spacing (mm)",
         [this](Settings& s) { s.options.planner.fill_row_spacing_mm = row_spacing; });
    bind(app, "--fill-angle", fill_angle, "Fill row angle (degrees)",
         [this](Settings& s) { s.options.planner.fill_angle_deg = fill_angle; });
    bind(app, "--trim-threshold", trim_threshold, "Moves longer than this are trimmed (mm)",
         [this](Settings& s) { s.options.planner.trim_threshold_mm = trim_threshold; });
    bind(app, "--hoop-width", hoop_width, "Hoop width (mm)",
         [this](Settings& s) { s.options.planner.hoop_width_mm = hoop_width; });
    bind(app, "--hoop-height", hoop_height, "Hoop height (mm)",
         [this](Settings& s) { s.options.planner.hoop_height_mm = hoop_height; });
    bind(app, "--speed", speed, "Machine speed (stitches per minute)",
         [this](Settings& s) { s.options.planner.machine_speed_spm = speed; });
    bind(app, "--text-min-height", text_min_height, "Smallest text lint accepts (mm)",
         [this](Settings& s) { s.options.lint.text_min_height_mm = text_min_height; });
  }

  void apply(Settings& s) const {
    for (const auto& [opt, fn] : options)
      if (opt->count() > 0) fn(s);
  }

 private:
  void bind(CLI::App& app, const std::string& flag, double& value, const std::string& help,
            std::function<void(Settings&)> fn) {
    options.emplace_back(app.add_option(flag, value, help), std::move(fn));
  }
};

struct SettingsFlags {
  std::string config;
  std::string icons;
  Overrides overrides;

  void add(CLI::App& app) {
    app.add_option("--config", config, "Configuration file (JSON)");
    app.add_option("--icons", icons, "Extra icon glyphs (JSON)");
    overrides.add(app);
  }

  Settings load() const {
    Settings s = load_settings(config.empty() ? std::nullopt : std::optional(config),
                               icons.empty() ? std::nullopt : std::optional(icons));
    overrides.apply(s);
    validate_params(s.options.planner);
    validate_thresholds(s.options.lint);
    return s;
  }
};

void print_stats(std::ostream& out, const StitchPlan& plan, double speed) {
  const PlanStats st = compute_stats(plan);
  out << "stitches " << st.stitch_count << " (normal " << st.normal_count << ", jumps " << st.jump_count
      << ", trims " << st.trim_count << ", colour changes " << st.color_change_count << ")\n";
  out << "blocks " << st.block_count << ", thread " << fixed(st.total_thread_length_mm, 1) << " mm\n";
  out << "bounds " << fixed(to_mm(st.bounds.x0), 1) << " " << fixed(to_mm(st.bounds.y0), 1) << " "
      << fixed(to_mm(st.bounds.x1), 1) << " " << fixed(to_mm(st.bounds.y1), 1) << " mm\n";
  out << "estimated " << fixed(estimated_minutes(st, speed), 1) << " min at " << fixed(speed, 0) << " spm\n";
}

int lint_exit(const LintReport& report, bool strict) {
  return strict && report.warning_count() > 0 ? kExitStrict : kExitOk;
}

}  // namespace

void apply_config(const json& config, Settings& settings, const std::string& base_dir) {
  if (!config.is_object()) throw Error(ErrorCode::SyntaxError, "config must be an object");
  for (const auto& [key, value] : config.items()) {
    if (key != "planner" && key != "lint" && key != "layout" && key != "icon_file" && key != "textures")
      throw Error(ErrorCode::SyntaxError, "unknown config key '" + key + "'");
  }
  CompileOptions& o = settings.options;
  if (config.contains("planner")) {
    Section(config["planner"], "planner")
        .number("max_stitch_mm", o.planner.max_stitch_mm)
        .number("min_stitch_mm", o.planner.min_stitch_mm)
        .number("fill_row_spacing_mm", o.planner.fill_row_spacing_mm)
        .number("fill_angle_deg", o.planner.fill_angle_deg)
        .number("trim_threshold_mm", o.planner.trim_threshold_mm)
        .number("hoop_width_mm", o.planner.hoop_width_mm)
        .number("hoop_height_mm", o.planner.hoop_height_mm)
        .number("machine_speed_spm", o.planner.machine_speed_spm)
        .finish();
  }
  if (config.contains("lint")) {
    Section(config["lint"], "lint")
        .integer("scatter_min_stitches", o.lint.scatter_min_stitches)
        .number("scatter_min_area_mm2", o.lint.scatter_min_area_mm2)
        .number("continuity_len_mm", o.lint.continuity_len_mm)
        .number("text_min_height_mm", o.lint.text_min_height_mm)
        .number("detail_merge_mm", o.lint.detail_merge_mm)
        .number("thread_width_mm", o.lint.thread_width_mm)
        .finish();
  }
  if (config.contains("layout")) {
    Section(config["layout"], "layout")
        .number("tick_length_mm", o.layout.tick_length_mm)
        .number("label_gap_mm", o.layout.label_gap_mm)
        .number("title_gap_mm", o.layout.title_gap_mm)
        .number("title_height_mm", o.layout.title_height_mm)
        .number("outline_margin_mm", o.outline_margin_mm)
        .text("label_orientation", [&o](const std::string& s) { o.layout.label_orientation = orientation_from(s); })
        .finish();
  }
  if (config.contains("icon_file")) {
    if (!config["icon_file"].is_string()) throw Error(ErrorCode::SyntaxError, "icon_file must be a string");
    const std::filesystem::path p = config["icon_file"].get<std::string>();
    settings.icons.load_file((p.is_absolute() ? p : std::filesystem::path(base_dir) / p).string());
    settings.textures = TextureLibrary::builtin(settings.icons);
  }
  if (config.contains("textures")) {
    const json& t = config["textures"];
    if (!t.is_object()) throw Error(ErrorCode::SyntaxError, "textures must be an object");
    for (const auto& [id, entry] : t.items()) settings.textures.add(id, TextureLibrary::parse_entry(entry, settings.icons));
  }
}

Settings load_settings(const std::optional<std::string>& config_path, const std::optional<std::string>& icon_path) {
  Settings s;
  json config = json::object();
  std::string base_dir = ".";
  if (config_path) {
    try {
      config = json::parse(read_text(*config_path));
    } catch (const json::parse_error& e) {
      throw Error(ErrorCode::SyntaxError, "config '" + *config_path + "': " + e.what());
    }
    base_dir = std::filesystem::path(*config_path).parent_path().string();
    if (base_dir.empty()) base_dir = ".";
  }
  // Icons first so that textures in the config can refer to them.
  if (icon_path) s.icons.load_file(*icon_path);
  s.textures = TextureLibrary::builtin(s.icons);
  apply_config(config, s, base_dir);
  return s;
}

PlanFormat format_for(const std::string& path, const std::string& forced) {
  if (!forced.empty()) {
    const std::string f = lower(forced);
    if (f == "dst") return PlanFormat::Dst;
    if (f == "plan" || f == "json") return PlanFormat::Native;
    throw Error(ErrorCode::SyntaxError, "unknown format '" + forced + "' (expected dst or plan)");
  }
  return lower(std::filesystem::path(path).extension().string()) == ".dst" ? PlanFormat::Dst : PlanFormat::Native;
}

StitchPlan read_plan_file(const std::string& path, PlanFormat format) {
  if (format == PlanFormat::Dst) return decode_dst(read_file_bytes(path));
  return read_native_plan(read_text(path));
}

void write_plan_file(const std::string& path, const StitchPlan& plan, PlanFormat format) {
  if (format == PlanFormat::Dst)
    write_file_bytes(path, encode_dst(plan));
  else
    write_text(path, write_native_plan(plan));
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Compile bar charts into machine embroidery stitch plans", "texstitch"};
  app.require_subcommand(1);

  // compile
  auto* compile = app.add_subcommand("compile", "Compile a chart spec into a stitch file");
  std::string spec_path, out_path, format, preview_path, density_path, lint_json;
  double cell_mm = 1.0;
  bool strict = false;
  SettingsFlags compile_flags;
  compile->add_option("spec", spec_path, "Chart spec (JSON)")->required();
  compile->add_option("-o,--output", out_path, "Output file (.dst or .plan.json)")->required();
  compile->add_option("--format", format, "Output format: dst or plan (default: by extension)");
  compile->add_option("--preview", preview_path, "Also write an SVG preview");
  compile->add_option("--density", density_path, "Also write an SVG density map");
  compile->add_option("--cell-mm", cell_mm, "Density map cell size (mm)");
  compile->add_option("--lint-json", lint_json, "Also write the lint report as JSON");
  compile->add_flag("--strict", strict, "Exit with status 2 when lint reports warnings");
  compile_flags.add(*compile);

  // lint
  auto* lint = app.add_subcommand("lint", "Check a chart spec for embroidery problems");
  std::string lint_spec;
  bool lint_as_json = false;
  bool lint_strict = false;
  SettingsFlags lint_flags;
  lint->add_option("spec", lint_spec, "Chart spec (JSON)")->required();
  lint->add_flag("--json", lint_as_json, "Print the report as JSON");
  lint->add_flag("--strict", lint_strict, "Exit with status 2 when lint reports warnings");
  lint_flags.add(*lint);

  // preview
  auto* preview = app.add_subcommand("preview", "Render a stitch file as SVG");
  std::string preview_in, preview_out, preview_format;
  bool no_jumps = false;
  bool show_points = false;
  double stroke_mm = SvgOptions{}.stroke_mm;
  double density_cell = 0.0;
  preview->add_option("input", preview_in, "Stitch file (.dst or native plan)")->required();
  preview->add_option("output", preview_out, "SVG file to write")->required();
  preview->add_option("--format", preview_format, "Input format: dst or plan (default: by extension)");
  preview->add_flag("--no-jumps", no_jumps, "Hide jump moves");
  preview->add_flag("--points", show_points, "Mark needle penetrations");
  preview->add_option("--stroke-mm", stroke_mm, "Thread width in the drawing (mm)");
  preview->add_option("--density", density_cell, "Draw a density map with this cell size (mm) instead");

  // stats
  auto* stats = app.add_subcommand("stats", "Print stitch statistics of a stitch file");
  std::string stats_in, stats_format;
  double stats_speed = PlannerParams{}.machine_speed_spm;
  bool stats_json = false;
  stats->add_option("input", stats_in, "Stitch file (.dst or native plan)")->required();
  stats->add_option("--format", stats_format, "Input format: dst or plan (default: by extension)");
  stats->add_option("--speed", stats_speed, "Machine speed (stitches per minute)");
  stats->add_flag("--json", stats_json, "Print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*compile) {
      const Settings settings = compile_flags.load();
      const ChartSpec spec = load_chart_spec(spec_path, settings.textures);
      const CompiledChart chart = compile_chart(spec, settings.textures, settings.options);
      write_plan_file(out_path, chart.plan, format_for(out_path, format));
      if (!preview_path.empty()) write_text(preview_path, render_svg(chart.plan));
      if (!density_path.empty()) write_text(density_path, density_svg(render_density(chart.plan, cell_mm)));
      if (!lint_json.empty()) write_text(lint_json, report_to_json(chart.lint).dump(2) + "\n");
      for (const auto& w : chart.warnings) err << "warning " << w.code << ": " << w.message << "\n";
      print_stats(out, chart.plan, settings.options.planner.machine_speed_spm);
      out << report_summary(chart.lint);
      return lint_exit(chart.lint, strict);
    }
    if (*lint) {
      const Settings settings = lint_flags.load();
      const ChartSpec spec = load_chart_spec(lint_spec, settings.textures);
      const CompiledChart chart = compile_chart(spec, settings.textures, settings.options);
      if (lint_as_json)
        out << report_to_json(chart.lint).dump(2) << "\n";
      else
        out << report_summary(chart.lint);
      return lint_exit(chart.lint, lint_strict);
    }
    if (*preview) {
      const StitchPlan plan = read_plan_file(preview_in, format_for(preview_in, preview_format));
      if (density_cell > 0.0) {
        write_text(preview_out, density_svg(render_density(plan, density_cell)));
      } else {
        SvgOptions opts;
        opts.show_jumps = !no_jumps;
        opts.show_points = show_points;
        opts.stroke_mm = stroke_mm;
        write_text(preview_out, render_svg(plan, opts));
      }
      return kExitOk;
    }
    if (*stats) {
      if (!(stats_speed > 0.0)) throw Error(ErrorCode::RangeError, "--speed must be positive");
      const PlanFormat fmt = format_for(stats_in, stats_format);
      const StitchPlan plan = read_plan_file(stats_in, fmt);
      const PlanStats st = compute_stats(plan);
      if (stats_json) {
        json doc{{"stitch_count", st.stitch_count},
                 {"normal_count", st.normal_count},
                 {"jump_count", st.jump_count},
                 {"trim_count", st.trim_count},
                 {"color_change_count", st.color_change_count},
                 {"block_count", st.block_count},
                 {"total_thread_length_mm", st.total_thread_length_mm},
                 {"bounds", {st.bounds.x0, st.bounds.y0, st.bounds.x1, st.bounds.y1}},
                 {"estimated_minutes", estimated_minutes(st, stats_speed)}};
        if (fmt == PlanFormat::Dst) doc["header_stitch_count"] = decode_dst_header(read_file_bytes(stats_in)).stitch_count;
        out << doc.dump(2) << "\n";
      } else {
        if (!plan.name.empty()) out << "name " << plan.name << "\n";
        print_stats(out, plan, stats_speed);
        if (fmt == PlanFormat::Dst)
          out << "header ST " << decode_dst_header(read_file_bytes(stats_in)).stitch_count << "\n";
      }
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace texstitch::cli
