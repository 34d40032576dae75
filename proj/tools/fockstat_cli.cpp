#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fockstat/errors.hpp"
#include "fockstat/husimi.hpp"
#include "fockstat/moments.hpp"
#include "fockstat/selftest.hpp"
#include "fockstat/state.hpp"
#include "fockstat/sweep.hpp"
#include "fockstat/table.hpp"
#include "fockstat/witnesses.hpp"

namespace fs = fockstat;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSelftest = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;
constexpr int kExitIo = 4;

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    int value = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || res.ec != std::errc() || res.ptr != item.data() + item.size()) {
      throw fs::UsageError(std::string(what) + ": not an integer list: '" + text + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw fs::UsageError(std::string(what) + " is empty");
  return out;
}

int single_int(const std::string& text, const char* what) {
  const auto list = parse_int_list(text, what);
  if (list.size() != 1) throw fs::UsageError(std::string(what) + " takes a single value here");
  return list.front();
}

double single_value(const std::string& text, const char* what) {
  const auto range = fs::ParamRange::parse(text);
  if (range.steps != 1) throw fs::UsageError(std::string(what) + " takes a single value here");
  return range.min;
}

fs::GridAxis parse_axis(const std::string& text) {
  const auto range = fs::ParamRange::parse(text);
  if (range.steps < 2) throw fs::UsageError("grid axes need 'min:max:count' with count >= 2");
  return {range.min, range.max, range.steps};
}

// key=value lines become "--key value" tokens placed ahead of the real
// arguments; every option keeps its last occurrence, so the command line wins.
std::vector<std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fs::IoError("cannot read config file", path);
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw fs::UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(line.substr(0, eq));
    if (key.rfind("--", 0) == 0) key = key.substr(2);
    tokens.push_back("--" + key);
    tokens.push_back(trim(line.substr(eq + 1)));
  }
  return tokens;
}

struct StateFlags {
  std::string family = "padfs";
  std::string photons = "1";
  std::string fock = "1";
  std::string alpha_mag = "1";
  std::string alpha_phase = "0";

  void add(CLI::App* app, bool lists) {
    app->add_option("--family", family, "padfs or psdfs")->capture_default_str();
    app->add_option("--photons", photons, lists ? "photons added/subtracted, e.g. 1,2,3" : "photons added/subtracted")
        ->capture_default_str();
    app->add_option("--n", fock, lists ? "Fock indices, e.g. 0,1,2" : "Fock index")->capture_default_str();
    app->add_option("--alpha-mag", alpha_mag, lists ? "|alpha| as x or min:max:steps" : "|alpha|")
        ->capture_default_str();
    app->add_option("--alpha-phase", alpha_phase, lists ? "theta as x or min:max:steps" : "theta")
        ->capture_default_str();
  }

  fs::StateSpec spec() const {
    fs::StateSpec s{fs::parse_family(family), single_int(photons, "--photons"), single_int(fock, "--n"),
                    single_value(alpha_mag, "--alpha-mag"), single_value(alpha_phase, "--alpha-phase")};
    try {
      s.validate();
    } catch (const fs::DomainError& e) {
      throw fs::UsageError(e.what());
    }
    return s;
  }
};

struct OutputFlags {
  std::string out = "-";
  std::string format = "csv";

  void add(CLI::App* app) {
    app->add_option("--out", out, "output path, - for stdout")->capture_default_str();
    app->add_option("--format", format, "csv or json")->capture_default_str();
  }
};

struct SeriesFlags {
  double rel_tol = fs::SeriesControl{}.rel_tol;
  int max_terms = fs::SeriesControl{}.max_terms;

  void add(CLI::App* app) {
    app->add_option("--rel-tol", rel_tol, "series truncation tolerance")->capture_default_str();
    app->add_option("--max-terms", max_terms, "series term cap")->capture_default_str();
  }

  fs::SeriesControl control() const {
    fs::SeriesControl c;
    c.rel_tol = rel_tol;
    c.max_terms = max_terms;
    try {
      c.validate();
    } catch (const fs::DomainError& e) {
      throw fs::UsageError(e.what());
    }
    return c;
  }
};

nlohmann::ordered_json state_json(const fs::StateSpec& s) {
  return {{"family", std::string(fs::to_string(s.family))},
          {"photons", s.photons},
          {"n", s.fock_n},
          {"alpha_mag", s.alpha_mag},
          {"alpha_phase", s.alpha_phase}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Photon-added and photon-subtracted displaced Fock states: moments, witnesses, Husimi Q", "fockstat"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fs::kLibraryVersion));

  std::string config_path;
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "key=value file with the same keys as the flags");
  };

  // state
  StateFlags state_flags;
  OutputFlags state_out;
  int dim = 0;
  auto* state_cmd = app.add_subcommand("state", "amplitude vector in the truncated Fock basis");
  state_flags.add(state_cmd, false);
  state_out.add(state_cmd);
  state_cmd->add_option("--dim", dim, "basis dimension (default: automatic)");
  add_config(state_cmd);

  // moment
  StateFlags moment_flags;
  OutputFlags moment_out;
  SeriesFlags moment_series;
  std::string q_list = "1";
  std::string r_list = "1";
  auto* moment_cmd = app.add_subcommand("moment", "normal-ordered moments <a^{dag q} a^r> from the closed form");
  moment_flags.add(moment_cmd, false);
  moment_out.add(moment_cmd);
  moment_series.add(moment_cmd);
  moment_cmd->add_option("--q", q_list, "creation powers, e.g. 0,1,2")->capture_default_str();
  moment_cmd->add_option("--r", r_list, "annihilation powers")->capture_default_str();
  add_config(moment_cmd);

  // witness
  StateFlags sweep_flags;
  sweep_flags.alpha_mag = "0:5:101";
  OutputFlags sweep_out;
  SeriesFlags sweep_series;
  std::string witness = "MandelQ";
  std::string orders = "2";
  int sweep_threads = 1;
  auto* witness_cmd = app.add_subcommand("witness", "witness or diagonal-moment sweep over state parameters");
  sweep_flags.add(witness_cmd, true);
  sweep_out.add(witness_cmd);
  sweep_series.add(witness_cmd);
  witness_cmd->add_option("--witness", witness, "MandelQ, Antibunching, HOSPS, HongMandel, AgarwalTara, Klyshko or moment")
      ->capture_default_str();
  witness_cmd->add_option("--order", orders, "orders l (Klyshko: m), e.g. 2,3,4")->capture_default_str();
  witness_cmd->add_option("--threads", sweep_threads, "worker threads")->capture_default_str();
  add_config(witness_cmd);

  // qgrid
  StateFlags qgrid_flags;
  qgrid_flags.alpha_mag = "1.4142135623730951";
  qgrid_flags.alpha_phase = "0.7853981633974483";
  OutputFlags qgrid_out;
  SeriesFlags qgrid_series;
  std::string grid_text;
  bool show_min = false;
  auto* qgrid_cmd = app.add_subcommand("qgrid", "Husimi Q on a rectangular grid");
  qgrid_flags.add(qgrid_cmd, false);
  qgrid_out.add(qgrid_cmd);
  qgrid_series.add(qgrid_cmd);
  qgrid_cmd->add_option("--grid", grid_text, "re0:re1:n,im0:im1:n (default: +-(|alpha|+4), 121 points)");
  qgrid_cmd->add_flag("--min", show_min, "print the grid minimum to stderr");
  add_config(qgrid_cmd);

  // figure
  OutputFlags figure_out;
  std::string figure_id;
  bool list_figures = false;
  int figure_threads = 1;
  auto* figure_cmd = app.add_subcommand("figure", "figure-reproduction preset");
  figure_cmd->add_option("id", figure_id, "preset id, e.g. fig2a");
  figure_cmd->add_flag("--list", list_figures, "list preset ids");
  figure_cmd->add_option("--threads", figure_threads, "worker threads")->capture_default_str();
  figure_out.add(figure_cmd);
  add_config(figure_cmd);

  // selftest
  SeriesFlags selftest_series;
  auto* selftest_cmd = app.add_subcommand("selftest", "closed forms vs brute-force oracles over the test grid");
  selftest_series.add(selftest_cmd);
  add_config(selftest_cmd);

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    // Pull out --config and splice its tokens in right after the subcommand.
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      std::size_t width = 0;
      if (args[i] == "--config" && i + 1 < args.size()) {
        path = args[i + 1];
        width = 2;
      } else if (args[i].rfind("--config=", 0) == 0) {
        path = args[i].substr(9);
        width = 1;
      }
      if (width == 0) continue;
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + width));
      const auto tokens = read_config(path);
      const auto sub = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
        return a == "state" || a == "moment" || a == "witness" || a == "qgrid" || a == "figure" || a == "selftest";
      });
      const auto at = sub == args.end() ? args.begin() : sub + 1;
      args.insert(at, tokens.begin(), tokens.end());
      break;
    }
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const fs::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (state_cmd->parsed()) {
      const auto spec = state_flags.spec();
      const auto state = dim > 0 ? fs::build_state(spec, dim) : fs::build_state(spec);
      fs::Table table{{"k", "re", "im", "prob"}, {}};
      for (std::size_t k = 0; k < state.dim(); ++k) {
        table.rows.push_back({static_cast<std::int64_t>(k), state[k].real(), state[k].imag(), std::norm(state[k])});
      }
      auto meta = fs::base_metadata({});
      meta["state"] = state_json(spec);
      meta["dim"] = state.dim();
      meta["tail_bound"] = state.tail_bound();
      fs::emit(table, fs::parse_format(state_out.format), state_out.out, meta);
    } else if (moment_cmd->parsed()) {
      const auto spec = moment_flags.spec();
      const auto ctrl = moment_series.control();
      fs::Table table{{"q", "r", "re", "im", "terms_summed"}, {}};
      for (int q : parse_int_list(q_list, "--q")) {
        for (int r : parse_int_list(r_list, "--r")) {
          if (q < 0 || r < 0) throw fs::UsageError("--q and --r must be non-negative");
          const auto m = fs::moment_closed_form(spec, q, r, ctrl);
          table.rows.push_back({std::int64_t{q}, std::int64_t{r}, m.value.real(), m.value.imag(),
                                std::int64_t{m.terms_summed}});
        }
      }
      auto meta = fs::base_metadata(ctrl);
      meta["state"] = state_json(spec);
      meta["normalization"] = fs::normalization_constant(spec, ctrl);
      fs::emit(table, fs::parse_format(moment_out.format), moment_out.out, meta);
    } else if (witness_cmd->parsed()) {
      fs::SweepConfig config;
      config.target = fs::SweepTarget::parse(witness);
      if (config.target.kind == fs::SweepTarget::Kind::kQGrid) throw fs::UsageError("use the qgrid subcommand");
      config.family = fs::parse_family(sweep_flags.family);
      config.photons = parse_int_list(sweep_flags.photons, "--photons");
      config.fock = parse_int_list(sweep_flags.fock, "--n");
      config.alpha_mag = fs::ParamRange::parse(sweep_flags.alpha_mag);
      config.alpha_phase = fs::ParamRange::parse(sweep_flags.alpha_phase);
      config.orders = parse_int_list(orders, "--order");
      config.ctrl = sweep_series.control();
      config.threads = sweep_threads;
      const auto table = fs::run_sweep(config);
      fs::emit(table, fs::parse_format(sweep_out.format), sweep_out.out, fs::base_metadata(config.ctrl));
    } else if (qgrid_cmd->parsed()) {
      const auto spec = qgrid_flags.spec();
      const auto ctrl = qgrid_series.control();
      fs::GridAxis re = fs::default_axis(spec);
      fs::GridAxis im = re;
      if (!grid_text.empty()) {
        const auto comma = grid_text.find(',');
        if (comma == std::string::npos) throw fs::UsageError("--grid expects re0:re1:n,im0:im1:n");
        re = parse_axis(grid_text.substr(0, comma));
        im = parse_axis(grid_text.substr(comma + 1));
      }
      const auto grid = fs::q_grid(spec, re, im);
      if (show_min) {
        const auto m = fs::q_min_scan(grid);
        std::cerr << "min q " << m.q << " at beta = " << m.beta.real() << (m.beta.imag() < 0 ? " - " : " + ")
                  << std::abs(m.beta.imag()) << "i\n";
      }
      fs::emit(fs::qgrid_table(grid), fs::parse_format(qgrid_out.format), qgrid_out.out,
               fs::qgrid_metadata(grid, spec, ctrl));
    } else if (figure_cmd->parsed()) {
      if (list_figures) {
        for (const auto& id : fs::preset_ids()) {
          std::cout << id << "  " << fs::figure_preset_config(id).description << '\n';
        }
        return kExitOk;
      }
      if (figure_id.empty()) throw fs::UsageError("figure needs a preset id (see --list)");
      if (figure_threads < 1) throw fs::UsageError("threads must be >= 1");
      const auto result = fs::figure_preset(figure_id, figure_threads);
      fs::emit(result.table, fs::parse_format(figure_out.format), figure_out.out, result.metadata);
    } else if (selftest_cmd->parsed()) {
      const auto report = fs::run_selftest(selftest_series.control());
      fs::print_report(std::cout, report);
      return report.passed() ? kExitOk : kExitSelftest;
    }
  } catch (const fs::ConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (partial " << e.partial().real() << (e.partial().imag() < 0 ? " - " : " + ")
              << std::abs(e.partial().imag()) << "i after " << e.terms_summed() << " terms)\n";
    return kExitConvergence;
  } catch (const fs::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitOk;
}
