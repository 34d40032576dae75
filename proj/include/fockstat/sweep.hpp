#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fockstat/husimi.hpp"
#include "fockstat/moments.hpp"
#include "fockstat/state.hpp"
#include "fockstat/table.hpp"
#include "fockstat/witnesses.hpp"

namespace fockstat {

/// What a sweep evaluates at each state point: one of the witnesses, the
/// diagonal moment <a^{dag l} a^l>, or a Husimi grid.
struct SweepTarget {
  enum class Kind { kWitness, kMoment, kQGrid };
  Kind kind = Kind::kWitness;
  WitnessKind witness = WitnessKind::kMandelQ;

  std::string name() const;
  /// Witness names plus "moment" and "qgrid".
  static SweepTarget parse(std::string_view text);
};

/// min..max inclusive in `steps` samples; steps == 1 samples only `min`.
struct ParamRange {
  double min = 0.0;
  double max = 0.0;
  int steps = 1;

  std::vector<double> values() const;
  static ParamRange single(double value) { return {value, value, 1}; }
  /// "x" or "a:b:steps".
  static ParamRange parse(std::string_view text);
};

struct SweepConfig {
  SweepTarget target;
  Family family = Family::kAdded;
  std::vector<int> photons{1};
  std::vector<int> fock{1};
  ParamRange alpha_mag{0.0, 5.0, 101};
  ParamRange alpha_phase = ParamRange::single(0.0);
  /// l values, Klyshko m values, or moment orders. Ignored by MandelQ and AgarwalTara.
  std::vector<int> orders{2};
  /// Plot scaling per order, reported in the `scale` column only.
  std::map<int, double> scale_by_order;
  std::optional<GridAxis> grid_re;
  std::optional<GridAxis> grid_im;
  SeriesControl ctrl;
  int threads = 1;
  std::filesystem::path output_path = "-";
  Format format = Format::kCsv;

  /// Throws UsageError on empty lists, steps < 1, or degenerate ranges.
  void validate() const;
};

/// Columns: witness, order, family, photons, n, alpha_mag, alpha_phase, value,
/// nonclassical, status, scale. Rows are in lexicographic order of
/// (order, photons, n, alpha_mag, alpha_phase). States that vanish get
/// status "degenerate" and an empty value. QGrid targets instead yield
/// family, photons, n, alpha_mag, alpha_phase, re, im, q.
Table run_sweep(const SweepConfig& config);

/// Table with columns re, im, q.
Table qgrid_table(const QGrid& grid);
nlohmann::ordered_json qgrid_metadata(const QGrid& grid, const StateSpec& spec, const SeriesControl& ctrl);

struct FigurePreset {
  std::string id;
  std::string description;
  SweepConfig config;
};

std::vector<std::string> preset_ids();
/// Throws UsageError for an unknown id.
FigurePreset figure_preset_config(std::string_view id);

struct FigureOutput {
  Table table;
  nlohmann::ordered_json metadata;
};

FigureOutput figure_preset(std::string_view id, int threads = 1);

}  // namespace fockstat
