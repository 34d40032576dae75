#include <algorithm>
#include <cmath>
#include <numbers>

#include "fockstat/errors.hpp"
#include "fockstat/sweep.hpp"

namespace fockstat {

namespace {

// Displacement sweeps: |alpha| in [0, 5], 101 samples, theta = 0 unless the panel is about phase.
constexpr ParamRange kAlphaSweep{0.0, 5.0, 101};

SweepConfig witness_sweep(WitnessKind kind, Family family, std::vector<int> photons, std::vector<int> fock,
                          std::vector<int> orders = {}) {
  SweepConfig c;
  c.target = {SweepTarget::Kind::kWitness, kind};
  c.family = family;
  c.photons = std::move(photons);
  c.fock = std::move(fock);
  c.orders = orders.empty() ? std::vector<int>{0} : std::move(orders);
  c.alpha_mag = kAlphaSweep;
  return c;
}

// Six-panel layout shared by the antibunching, sub-Poissonian and squeezing
// figures: (a)/(d) order comparison, (b)/(e) photon count, (c)/(f) Fock index.
void add_six_panel(std::vector<FigurePreset>& out, const std::string& fig, WitnessKind kind,
                   std::vector<int> order_set, int single_order, std::map<int, double> scales,
                   const std::string& what) {
  const char* panels = "abcdef";
  for (int i = 0; i < 6; ++i) {
    const Family family = i < 3 ? Family::kAdded : Family::kSubtracted;
    const std::string fam = i < 3 ? "PADFS" : "PSDFS";
    SweepConfig c;
    std::string desc;
    switch (i % 3) {
      case 0:
        c = witness_sweep(kind, family, {1}, {1}, order_set);
        c.scale_by_order = scales;
        desc = what + " of " + fam + "(1, |1>) for several orders vs |alpha|";
        break;
      case 1:
        c = witness_sweep(kind, family, {1, 2, 3}, {1}, {single_order});
        desc = what + " of " + fam + " with 1-3 photons on |1> vs |alpha|";
        break;
      default:
        c = witness_sweep(kind, family, {1}, {1, 2, 3}, {single_order});
        desc = what + " of single-photon " + fam + " for n = 1..3 vs |alpha|";
        break;
    }
    out.push_back({fig + panels[i], desc, std::move(c)});
  }
}

std::vector<FigurePreset> all_presets() {
  std::vector<FigurePreset> out;
  using WK = WitnessKind;
  const Family add = Family::kAdded;
  const Family sub = Family::kSubtracted;

  out.push_back({"fig2a", "Mandel Q_M of PADFS, u = 1..4 on |1>", witness_sweep(WK::kMandelQ, add, {1, 2, 3, 4}, {1})});
  out.push_back({"fig2b", "Mandel Q_M of single-photon PADFS, n = 0..3", witness_sweep(WK::kMandelQ, add, {1}, {0, 1, 2, 3})});
  out.push_back({"fig2c", "Mandel Q_M of PSDFS, v = 1..4 on |1>", witness_sweep(WK::kMandelQ, sub, {1, 2, 3, 4}, {1})});
  out.push_back({"fig2d", "Mandel Q_M of single-photon PSDFS, n = 1..3", witness_sweep(WK::kMandelQ, sub, {1}, {1, 2, 3})});

  // Higher orders are deeper; the order-comparison panels carry per-order plot scales.
  add_six_panel(out, "fig3", WK::kAntibunching, {2, 3, 4}, 3, {{2, 1.0}, {3, 0.1}, {4, 0.01}},
                "Antibunching d(l-1)");
  add_six_panel(out, "fig4", WK::kHosps, {2, 3, 4, 5}, 4, {}, "Sub-Poissonian D_h(l-1)");
  add_six_panel(out, "fig5", WK::kHongMandel, {2, 4, 6}, 4, {}, "Hong-Mandel S(l)");

  const double qgrid_mag = std::sqrt(2.0);
  const double qgrid_phase = std::numbers::pi / 4;
  struct QPanel {
    const char* id;
    Family family;
    int photons;
    int fock;
  };
  for (const QPanel& p : {QPanel{"fig6a", add, 1, 1}, QPanel{"fig6b", add, 2, 1}, QPanel{"fig6c", add, 1, 2},
                          QPanel{"fig6d", sub, 1, 1}, QPanel{"fig6e", sub, 2, 1}, QPanel{"fig6f", sub, 1, 2}}) {
    SweepConfig c;
    c.target = {SweepTarget::Kind::kQGrid, WK::kMandelQ};
    c.family = p.family;
    c.photons = {p.photons};
    c.fock = {p.fock};
    c.alpha_mag = ParamRange::single(qgrid_mag);
    c.alpha_phase = ParamRange::single(qgrid_phase);
    const std::string state = std::string(p.family == add ? "PADFS(u=" : "PSDFS(v=") + std::to_string(p.photons) +
                              ", n=" + std::to_string(p.fock) + ")";
    out.push_back({p.id, "Husimi Q grid of " + state + ", alpha = sqrt(2) exp(i pi/4)", std::move(c)});
  }

  for (const auto& [id, family] : {std::pair{"fig7a", add}, std::pair{"fig7b", sub}}) {
    SweepConfig c = witness_sweep(WK::kHongMandel, family, {1}, {1}, {2, 4});
    c.alpha_mag = ParamRange::single(0.4);
    c.alpha_phase = {0.0, 2 * std::numbers::pi, 101};
    out.push_back({id, std::string("Hong-Mandel S(l) of ") + (family == add ? "PADFS" : "PSDFS") +
                           "(1, |1>) vs displacement phase at |alpha| = 0.4",
                   std::move(c)});
  }

  out.push_back({"fig8a", "Agarwal-Tara A3 of PADFS, u = 1..3 on |1>", witness_sweep(WK::kAgarwalTara, add, {1, 2, 3}, {1})});
  out.push_back({"fig8b", "Agarwal-Tara A3 of single-photon PADFS, n = 1..3", witness_sweep(WK::kAgarwalTara, add, {1}, {1, 2, 3})});
  out.push_back({"fig8c", "Agarwal-Tara A3 of PSDFS, v = 1..3 on |1>", witness_sweep(WK::kAgarwalTara, sub, {1, 2, 3}, {1})});
  out.push_back({"fig8d", "Agarwal-Tara A3 of single-photon PSDFS, n = 1..3", witness_sweep(WK::kAgarwalTara, sub, {1}, {1, 2, 3})});

  std::vector<int> klyshko_m(11);
  for (int m = 0; m <= 10; ++m) klyshko_m[static_cast<std::size_t>(m)] = m;
  struct KPanel {
    const char* id;
    Family family;
    std::vector<int> photons;
    std::vector<int> fock;
    const char* desc;
  };
  for (const KPanel& p : {KPanel{"fig9a", add, {0, 1, 2, 3}, {1}, "Klyshko B(m) of PADFS, u = 0..3 on |1>, alpha = 1"},
                          KPanel{"fig9b", add, {1}, {1, 2, 3}, "Klyshko B(m) of single-photon PADFS, n = 1..3, alpha = 1"},
                          KPanel{"fig9c", sub, {0, 1, 2, 3}, {1}, "Klyshko B(m) of PSDFS, v = 0..3 on |1>, alpha = 1"},
                          KPanel{"fig9d", sub, {1}, {1, 2, 3}, "Klyshko B(m) of single-photon PSDFS, n = 1..3, alpha = 1"}}) {
    SweepConfig c = witness_sweep(WK::kKlyshko, p.family, p.photons, p.fock, klyshko_m);
    c.alpha_mag = ParamRange::single(1.0);
    out.push_back({p.id, p.desc, std::move(c)});
  }
  return out;
}

}  // namespace

std::vector<std::string> preset_ids() {
  std::vector<std::string> ids;
  for (const auto& p : all_presets()) ids.push_back(p.id);
  return ids;
}

FigurePreset figure_preset_config(std::string_view id) {
  for (auto& p : all_presets()) {
    if (p.id == id) return p;
  }
  throw UsageError("unknown figure preset '" + std::string(id) + "'");
}

FigureOutput figure_preset(std::string_view id, int threads) {
  FigurePreset preset = figure_preset_config(id);
  preset.config.threads = threads;
  const SweepConfig& c = preset.config;
  if (c.target.kind == SweepTarget::Kind::kQGrid) {
    const StateSpec spec{c.family, c.photons.front(), c.fock.front(), c.alpha_mag.min, c.alpha_phase.min};
    const QGrid grid = q_grid(spec, c.grid_re.value_or(default_axis(spec)), c.grid_im.value_or(default_axis(spec)));
    auto meta = qgrid_metadata(grid, spec, c.ctrl);
    meta["preset"] = preset.id;
    meta["description"] = preset.description;
    return {qgrid_table(grid), std::move(meta)};
  }
  auto meta = base_metadata(c.ctrl);
  meta["preset"] = preset.id;
  meta["description"] = preset.description;
  return {run_sweep(c), std::move(meta)};
}

}  // namespace fockstat
