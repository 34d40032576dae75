#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <sys/wait.h>

#include "fockstat/errors.hpp"
#include "fockstat/sweep.hpp"

using namespace fockstat;
namespace fsys = std::filesystem;

namespace {

double number(const Cell& c) { return std::get<double>(c); }

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          field += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          field += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(field);
        field.clear();
      } else {
        field += c;
      }
    }
    fields.push_back(field);
    rows.push_back(fields);
  }
  return rows;
}

std::string slurp(const fsys::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FOCKSTAT_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fsys::path temp_path(const std::string& name) { return fsys::temp_directory_path() / ("fockstat_test_" + name); }

}  // namespace

TEST_CASE("ParamRange") {
  const auto r = ParamRange::parse("0:5:101");
  const auto v = r.values();
  CHECK(v.size() == 101);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 5.0);
  CHECK(v[50] == 2.5);
  CHECK(ParamRange::parse("0.25").values() == std::vector<double>{0.25});
  CHECK_THROWS_AS(ParamRange::parse("0:1"), UsageError);
  CHECK_THROWS_AS(ParamRange::parse("0:1:0"), UsageError);
  CHECK_THROWS_AS(ParamRange::parse("a:1:3"), UsageError);
}

TEST_CASE("SweepConfig validation") {
  SweepConfig c;
  CHECK_NOTHROW(c.validate());
  c.alpha_mag = {1.0, 1.0, 5};
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = {};
  c.photons.clear();
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = {};
  c.threads = 0;
  CHECK_THROWS_AS(c.validate(), UsageError);
  c = {};
  c.target = SweepTarget::parse("Antibunching");
  c.orders.clear();
  CHECK_THROWS_AS(c.validate(), UsageError);
  CHECK_THROWS_AS(SweepTarget::parse("nonsense"), UsageError);
}

TEST_CASE("Mandel sweep starts at -1 for added photons on |1>") {
  SweepConfig c;
  c.target = SweepTarget::parse("MandelQ");
  c.photons = {3, 1, 2};
  c.fock = {1};
  c.alpha_mag = {0.0, 5.0, 11};
  const Table t = run_sweep(c);
  CHECK(t.columns == std::vector<std::string>{"witness", "order", "family", "photons", "n", "alpha_mag",
                                               "alpha_phase", "value", "nonclassical", "status", "scale"});
  REQUIRE(t.rows.size() == 33);
  for (int u = 0; u < 3; ++u) {
    const auto& first = t.rows[static_cast<std::size_t>(u * 11)];
    CHECK(std::get<std::int64_t>(first[3]) == u + 1);
    CHECK(number(first[5]) == 0.0);
    CHECK(number(first[7]) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::get<bool>(first[8]));
  }
}

TEST_CASE("coherent antibunching sweep is flat zero") {
  SweepConfig c;
  c.target = SweepTarget::parse("Antibunching");
  c.photons = {0};
  c.fock = {0};
  c.orders = {3};
  const Table t = run_sweep(c);
  for (const auto& row : t.rows) CHECK(std::abs(number(row[7])) < 1e-9);
}

TEST_CASE("Klyshko sweep matches direct calls") {
  SweepConfig c;
  c.target = SweepTarget::parse("Klyshko");
  c.alpha_mag = ParamRange::single(1.0);
  c.orders = {0, 1, 2, 3, 4, 5, 6, 7, 8};
  const Table t = run_sweep(c);
  REQUIRE(t.rows.size() == 9);
  for (int m = 0; m <= 8; ++m) {
    const auto& row = t.rows[static_cast<std::size_t>(m)];
    CHECK(std::get<std::int64_t>(row[1]) == m);
    CHECK(number(row[7]) == klyshko_b(padfs(1, 1, 1.0), m).value);
  }
}

TEST_CASE("degenerate points are reported, not thrown") {
  SweepConfig c;
  c.target = SweepTarget::parse("MandelQ");
  c.family = Family::kSubtracted;
  c.photons = {2};
  c.fock = {1};
  c.alpha_mag = {0.0, 1.0, 3};
  const Table t = run_sweep(c);
  REQUIRE(t.rows.size() == 3);
  CHECK(std::holds_alternative<std::monostate>(t.rows[0][7]));
  CHECK(std::get<std::string>(t.rows[0][9]) == "degenerate");
  CHECK(std::get<std::string>(t.rows[1][9]) == "ok");
}

TEST_CASE("concurrency does not change the output") {
  SweepConfig c;
  c.target = SweepTarget::parse("HongMandel");
  c.family = Family::kSubtracted;
  c.photons = {1, 2};
  c.fock = {1, 2};
  c.orders = {2, 4};
  c.alpha_mag = {0.0, 2.0, 9};
  c.alpha_phase = {0.0, std::numbers::pi, 3};
  std::ostringstream serial;
  std::ostringstream parallel;
  write_csv(serial, run_sweep(c));
  c.threads = 4;
  write_csv(parallel, run_sweep(c));
  CHECK(serial.str() == parallel.str());
}

TEST_CASE("emit") {
  const Table empty{{"a", "b"}, {}};
  const auto path = temp_path("empty.csv");
  emit(empty, Format::kCsv, path, base_metadata({}));
  CHECK(slurp(path) == "a,b\n");

  const Table one{{"name", "x"}, {{std::string("has,comma \"q\""), 1.5}}};
  std::ostringstream csv;
  write_csv(csv, one);
  CHECK(csv.str() == "name,x\n\"has,comma \"\"q\"\"\",1.5\n");

  const auto jpath = temp_path("one.json");
  emit(one, Format::kJson, jpath, base_metadata({}));
  const auto doc = nlohmann::json::parse(slurp(jpath));
  CHECK(doc["metadata"]["library"] == "fockstat");
  CHECK(doc["metadata"]["series_control"]["rel_tol"] == 1e-15);
  REQUIRE(doc["rows"].size() == 1);
  CHECK(doc["rows"][0]["x"] == 1.5);

  CHECK_THROWS_AS(emit(one, Format::kCsv, "/nonexistent-dir/x.csv", {}), IoError);
  CHECK(parse_format("JSON") == Format::kJson);
  CHECK_THROWS_AS(parse_format("xml"), UsageError);
  fsys::remove(path);
  fsys::remove(jpath);
}

TEST_CASE("presets") {
  const auto ids = preset_ids();
  CHECK(ids.size() == 4 + 6 + 6 + 6 + 6 + 2 + 4 + 4);
  for (const auto& id : ids) CHECK_NOTHROW(figure_preset_config(id).config.validate());
  CHECK_THROWS_AS(figure_preset_config("fig1a"), UsageError);

  const auto fig2a = figure_preset_config("fig2a").config;
  CHECK(fig2a.photons == std::vector<int>{1, 2, 3, 4});
  CHECK(fig2a.fock == std::vector<int>{1});
  CHECK(fig2a.alpha_mag.min == 0.0);
  CHECK(fig2a.alpha_mag.max == 5.0);
  CHECK(fig2a.alpha_mag.steps == 101);

  const auto fig6a = figure_preset_config("fig6a").config;
  CHECK(fig6a.target.kind == SweepTarget::Kind::kQGrid);
  CHECK(fig6a.alpha_mag.min == doctest::Approx(std::sqrt(2.0)));
  CHECK(fig6a.alpha_phase.min == doctest::Approx(std::numbers::pi / 4));

  // scaling is reported beside the value, never folded in
  const auto fig3a = figure_preset("fig3a");
  const auto& t = fig3a.table;
  const auto order_col = t.column_index("order");
  const auto scale_col = t.column_index("scale");
  const auto value_col = t.column_index("value");
  for (const auto& row : t.rows) {
    const auto l = static_cast<int>(std::get<std::int64_t>(row[order_col]));
    CHECK(number(row[scale_col]) == std::pow(10.0, -(l - 2)));
    const double raw = antibunching_d(padfs(1, 1, number(row[t.column_index("alpha_mag")])), l).value;
    CHECK(number(row[value_col]) == raw);
  }
}

TEST_CASE("fig7b minimum sits at theta = 0 and pi") {
  const auto out = figure_preset("fig7b");
  const auto& t = out.table;
  for (int order : {2, 4}) {
    double best = INFINITY;
    for (const auto& row : t.rows) {
      if (std::get<std::int64_t>(row[1]) == order) best = std::min(best, number(row[7]));
    }
    std::vector<double> where;
    for (const auto& row : t.rows) {
      if (std::get<std::int64_t>(row[1]) == order && number(row[7]) <= best + 1e-12) where.push_back(number(row[6]));
    }
    for (double th : where) {
      const double k = th / std::numbers::pi;
      CHECK(std::abs(k - std::round(k)) < 1e-12);
    }
    CHECK(where.size() == 3);  // 0, pi, 2 pi
  }
}

TEST_CASE("fig2a csv round-trips") {
  const auto out = figure_preset("fig2a");
  std::ostringstream csv;
  write_csv(csv, out.table);
  const auto rows = parse_csv(csv.str());
  REQUIRE(rows.size() == out.table.rows.size() + 1);
  for (std::size_t i = 0; i < out.table.rows.size(); ++i) {
    const auto& row = out.table.rows[i];
    CHECK(std::stod(rows[i + 1][5]) == number(row[5]));
    CHECK(std::stod(rows[i + 1][7]) == number(row[7]));
  }
}

TEST_CASE("cli exit codes, determinism and config files") {
  CHECK(run_cli("--help") == 0);
  CHECK(run_cli("witness --witness MandelQ --photons 1,2 --alpha-mag 0:1:3") == 0);
  CHECK(run_cli("witness --witness Bogus") == 2);
  CHECK(run_cli("witness --alpha-mag 1:1:5") == 2);
  CHECK(run_cli("figure fig99") == 2);
  CHECK(run_cli("state --family padfs --photons 1 --n 1 --alpha-mag -1") == 2);
  CHECK(run_cli("moment --alpha-mag 8 --max-terms 50") == 3);
  CHECK(run_cli("figure fig2a --out /nonexistent-dir/out.csv") == 4);
  CHECK(run_cli("qgrid --grid -2:2:11,-2:2:11 --format json") == 0);

  const auto a = temp_path("a.csv");
  const auto b = temp_path("b.csv");
  CHECK(run_cli("figure fig4b --out " + a.string()) == 0);
  CHECK(run_cli("figure fig4b --threads 3 --out " + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());

  const auto cfg = temp_path("sweep.cfg");
  {
    std::ofstream out(cfg);
    out << "# sweep settings\nwitness = Klyshko\nalpha-mag = 1\norder = 0,1,2\nout = " << a.string() << "\n";
  }
  CHECK(run_cli("witness --config " + cfg.string() + " --order 3") == 0);
  const auto rows = parse_csv(slurp(a));
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "Klyshko");
  CHECK(rows[1][1] == "3");
  CHECK(run_cli("witness --config " + temp_path("missing.cfg").string()) == 4);
  fsys::remove(a);
  fsys::remove(b);
  fsys::remove(cfg);
}
