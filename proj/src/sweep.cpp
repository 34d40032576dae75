#include "fockstat/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fockstat/errors.hpp"
#include "moment_table.hpp"

namespace fockstat {

std::string SweepTarget::name() const {
  switch (kind) {
    case Kind::kMoment: return "moment";
    case Kind::kQGrid: return "qgrid";
    case Kind::kWitness: break;
  }
  return std::string(to_string(witness));
}

SweepTarget SweepTarget::parse(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "moment") return {Kind::kMoment, WitnessKind::kMandelQ};
  if (lower == "qgrid") return {Kind::kQGrid, WitnessKind::kMandelQ};
  if (auto w = parse_witness(text)) return {Kind::kWitness, *w};
  throw UsageError("unknown witness '" + std::string(text) + "'");
}

std::vector<double> ParamRange::values() const {
  if (steps == 1) return {min};
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    // Pin the endpoints so the last sample is exactly `max`.
    out.push_back(i == steps - 1 ? max : min + (max - min) * i / (steps - 1));
  }
  return out;
}

namespace {

double parse_double(std::string_view text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw UsageError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

ParamRange ParamRange::parse(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return single(parse_double(parts[0]));
  if (parts.size() != 3) throw UsageError("range must be 'x' or 'min:max:steps', got '" + std::string(text) + "'");
  const double steps = parse_double(parts[2]);
  if (steps < 1 || steps != std::floor(steps)) throw UsageError("range steps must be a positive integer");
  return {parse_double(parts[0]), parse_double(parts[1]), static_cast<int>(steps)};
}

void SweepConfig::validate() const {
  auto check_range = [](const ParamRange& r, const char* what) {
    if (r.steps < 1) throw UsageError(std::string(what) + ": steps must be >= 1");
    if (!std::isfinite(r.min) || !std::isfinite(r.max)) throw UsageError(std::string(what) + ": non-finite bound");
    if (r.steps > 1 && !(r.max > r.min)) throw UsageError(std::string(what) + ": range is degenerate");
  };
  check_range(alpha_mag, "alpha-mag");
  check_range(alpha_phase, "alpha-phase");
  if (alpha_mag.min < 0.0) throw UsageError("alpha-mag must be non-negative");
  if (photons.empty() || fock.empty()) throw UsageError("photon and Fock lists must be non-empty");
  for (int v : photons) {
    if (v < 0) throw UsageError("photon counts must be non-negative");
  }
  for (int v : fock) {
    if (v < 0) throw UsageError("Fock indices must be non-negative");
  }
  const bool needs_order = target.kind == SweepTarget::Kind::kMoment ||
                           (target.kind == SweepTarget::Kind::kWitness && witness_has_order(target.witness));
  if (needs_order && orders.empty()) throw UsageError("this witness needs at least one order");
  if (threads < 1) throw UsageError("threads must be >= 1");
  try {
    ctrl.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

namespace {

struct Point {
  int photons;
  int fock;
  double mag;
  double phase;
};

// Runs body(i) for i in [0, count) on up to `threads` workers. The first
// exception in index order is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t count, int threads, Body body) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

Table run_qgrid_sweep(const SweepConfig& config, const std::vector<Point>& points) {
  Table table{{"family", "photons", "n", "alpha_mag", "alpha_phase", "re", "im", "q"}, {}};
  std::vector<std::vector<std::vector<Cell>>> blocks(points.size());
  parallel_for(points.size(), config.threads, [&](std::size_t i) {
    const Point& pt = points[i];
    const StateSpec spec{config.family, pt.photons, pt.fock, pt.mag, pt.phase};
    const QGrid grid = q_grid(spec, config.grid_re.value_or(default_axis(spec)),
                              config.grid_im.value_or(default_axis(spec)));
    for (int j = 0; j < grid.im.count; ++j) {
      for (int k = 0; k < grid.re.count; ++k) {
        blocks[i].push_back({std::string(to_string(config.family)), std::int64_t{pt.photons},
                             std::int64_t{pt.fock}, pt.mag, pt.phase, grid.re.at(k), grid.im.at(j),
                             grid.at(k, j)});
      }
    }
  });
  for (auto& block : blocks) {
    for (auto& row : block) table.rows.push_back(std::move(row));
  }
  return table;
}

}  // namespace

Table run_sweep(const SweepConfig& config) {
  config.validate();
  const auto photons = sorted_unique(config.photons);
  const auto fock = sorted_unique(config.fock);
  const auto mags = config.alpha_mag.values();
  const auto phases = config.alpha_phase.values();

  std::vector<Point> points;
  for (int u : photons) {
    for (int n : fock) {
      for (double mag : mags) {
        for (double phase : phases) points.push_back({u, n, mag, phase});
      }
    }
  }
  if (config.target.kind == SweepTarget::Kind::kQGrid) return run_qgrid_sweep(config, points);

  const bool has_order = config.target.kind == SweepTarget::Kind::kMoment ||
                         witness_has_order(config.target.witness);
  const std::vector<int> orders = has_order ? sorted_unique(config.orders) : std::vector<int>{0};

  struct Outcome {
    std::vector<double> values;  // one per order
    bool degenerate = false;
  };
  std::vector<Outcome> outcomes(points.size());
  parallel_for(points.size(), config.threads, [&](std::size_t i) {
    const Point& pt = points[i];
    const StateSpec spec{config.family, pt.photons, pt.fock, pt.mag, pt.phase};
    Outcome& out = outcomes[i];
    try {
      if (config.target.kind == SweepTarget::Kind::kMoment) {
        detail::MomentTable table(spec, config.ctrl);
        for (int l : orders) out.values.push_back(static_cast<double>(table.diagonal(l)));
      } else {
        WitnessEvaluator evaluator(spec, config.ctrl);
        for (int l : orders) out.values.push_back(evaluator.evaluate(config.target.witness, l).value);
      }
    } catch (const DegenerateStateError&) {
      out.degenerate = true;
      out.values.clear();
    }
  });

  Table table{{"witness", "order", "family", "photons", "n", "alpha_mag", "alpha_phase", "value",
               "nonclassical", "status", "scale"},
              {}};
  const std::string target_name = config.target.name();
  const std::string family_name(to_string(config.family));
  for (std::size_t k = 0; k < orders.size(); ++k) {
    const int order = orders[k];
    const auto scale_it = config.scale_by_order.find(order);
    const double scale = scale_it == config.scale_by_order.end() ? 1.0 : scale_it->second;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const Point& pt = points[i];
      const Outcome& out = outcomes[i];
      Cell value;
      bool nonclassical = false;
      if (!out.degenerate) {
        value = out.values[k];
        nonclassical = config.target.kind == SweepTarget::Kind::kWitness && out.values[k] < 0.0;
      }
      table.rows.push_back({target_name, std::int64_t{order}, family_name, std::int64_t{pt.photons},
                            std::int64_t{pt.fock}, pt.mag, pt.phase, value, nonclassical,
                            std::string(out.degenerate ? "degenerate" : "ok"), scale});
    }
  }
  return table;
}

Table qgrid_table(const QGrid& grid) {
  Table table{{"re", "im", "q"}, {}};
  table.rows.reserve(grid.values.size());
  for (int j = 0; j < grid.im.count; ++j) {
    for (int i = 0; i < grid.re.count; ++i) {
      table.rows.push_back({grid.re.at(i), grid.im.at(j), grid.at(i, j)});
    }
  }
  return table;
}

nlohmann::ordered_json qgrid_metadata(const QGrid& grid, const StateSpec& spec, const SeriesControl& ctrl) {
  nlohmann::ordered_json meta = base_metadata(ctrl);
  meta["state"] = {{"family", std::string(to_string(spec.family))},
                   {"photons", spec.photons},
                   {"n", spec.fock_n},
                   {"alpha_mag", spec.alpha_mag},
                   {"alpha_phase", spec.alpha_phase}};
  meta["grid"] = {{"re", {{"min", grid.re.min}, {"max", grid.re.max}, {"count", grid.re.count}}},
                  {"im", {{"min", grid.im.min}, {"max", grid.im.max}, {"count", grid.im.count}}},
                  {"cell_area", grid.cell_area()},
                  {"integral", grid.integral()}};
  return meta;
}

}  // namespace fockstat
