#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>

#include "cli_harness.hpp"
#include "csv.hpp"
#include "parsing.hpp"
#include "run_dir.hpp"
#include "svg_chart.hpp"
#include "lexlab/error.hpp"

using namespace lexlab;
using namespace lexlab::testing;
namespace fs = std::filesystem;

TEST_CASE("list parsing expands ranges and comma lists") {
  CHECK(cli::parse_number_list("1..4") == std::vector<double>{1, 2, 3, 4});
  CHECK(cli::parse_number_list("2,10,50") == std::vector<double>{2, 10, 50});
  CHECK(cli::parse_number_list("0.1..0.3:0.1") == std::vector<double>{0.1, 0.2, 0.3});
  CHECK(cli::parse_number_list("0.5") == std::vector<double>{0.5});
  CHECK(cli::parse_int_list("1..3,7") == std::vector<int>{1, 2, 3, 7});
  CHECK_THROWS_AS(cli::parse_number_list("a..b"), DomainError);
  CHECK_THROWS_AS(cli::parse_number_list("3..1"), DomainError);
  CHECK_THROWS_AS(cli::parse_number_list("1..3:0"), DomainError);
  CHECK_THROWS_AS(cli::parse_number_list(""), DomainError);
  CHECK_THROWS_AS(cli::parse_int_list("1.5"), DomainError);
}

TEST_CASE("csv round trip keeps shortest round-trip numbers") {
  TempDir tmp;
  cli::CsvTable t{{"a", "b"}, {{cli::format_number(0.1), cli::format_number(1.0 / 3.0)}}};
  cli::write_csv(tmp / "t.csv", t);
  const auto back = cli::read_csv(tmp / "t.csv");
  CHECK(back.header == t.header);
  CHECK(back.numeric_column("b")[0] == 1.0 / 3.0);
  CHECK(cli::format_number(0.1) == "0.1");
  CHECK_THROWS_AS(back.column("missing"), IngestionError);
}

TEST_CASE("svg chart renders one polyline per series and a legend") {
  cli::LineChart chart{"t", "x", "y", {{"one", {0, 1, 2}, {1, 2, 3}}, {"two", {0, 1}, {3, 1}}}, false};
  const auto svg = chart.render();
  CHECK(svg.rfind("<svg", 0) == 0);
  std::size_t polylines = 0;
  for (auto p = svg.find("<polyline"); p != std::string::npos; p = svg.find("<polyline", p + 1)) ++polylines;
  CHECK(polylines == 2);
  CHECK(svg.find(">one<") != std::string::npos);
  CHECK(svg.find(">two<") != std::string::npos);
  cli::LineChart empty{"empty", "x", "y", {}, false};
  CHECK(empty.render().find("</svg>") != std::string::npos);
}

TEST_CASE("run dir only publishes on commit") {
  TempDir tmp;
  const auto out = tmp / "run";
  {
    cli::RunDir dir(out);
    dir.write_text("a.txt", "x");
  }
  CHECK_FALSE(fs::exists(out));
  {
    cli::RunDir dir(out);
    dir.write_text(cli::kManifestName, "m");
    dir.write_text("a.txt", "x");
    dir.commit();
  }
  CHECK(slurp(out / "a.txt") == "x");
  const auto sums = slurp(out / "checksums.sha256");
  CHECK(sums == "2d711642b726b04401627ca9fbac32f5c8530fb1903cc4db02258717921a4881  a.txt\n");
  for (const auto& e : fs::directory_iterator(out)) CHECK(e.path().filename().string().rfind(".staging", 0) != 0);
}

TEST_CASE("slavi step table") {
  TempDir tmp;
  const auto r = run_cli({"slavi", "--kind", "step", "--x", "0.41", "--r", "1..10", "--out", (tmp / "o").string()});
  REQUIRE(r.code == 0);
  const auto t = cli::read_csv(tmp / "o" / "slavi.csv");
  CHECK(t.header == std::vector<std::string>{"r", "x", "value"});
  REQUIRE(t.rows.size() == 10);
  CHECK(t.numeric_column("value")[0] == doctest::Approx(0.295770808964877).epsilon(1e-14));
  CHECK(fs::exists(tmp / "o" / "slavi.svg"));
  CHECK(fs::exists(tmp / "o" / "manifest.ini"));
}

TEST_CASE("slavi step at x = 1 is identically zero") {
  TempDir tmp;
  REQUIRE(run_cli({"slavi", "--x", "1", "--r", "0..20", "--out", (tmp / "o").string()}).code == 0);
  for (double v : cli::read_csv(tmp / "o" / "slavi.csv").numeric_column("value")) CHECK(v == 0.0);
}

TEST_CASE("slavi ramp at r = 10") {
  TempDir tmp;
  REQUIRE(run_cli({"slavi", "--kind", "ramp", "--r", "10", "--out", (tmp / "o").string()}).code == 0);
  const auto v = cli::read_csv(tmp / "o" / "slavi.csv").numeric_column("value");
  REQUIRE(v.size() == 1);
  CHECK(v[0] == doctest::Approx(0.00999500600772612666633).epsilon(1e-14));
}

TEST_CASE("slavi tabulated function matches the step it reproduces") {
  TempDir tmp;
  REQUIRE(run_cli({"slavi", "--kind", "table", "--table", "0:0,0.5:0,0.5000001:1,1:1", "--r", "2", "--out",
                   (tmp / "o").string()})
              .code == 0);
  const auto v = cli::read_csv(tmp / "o" / "slavi.csv").numeric_column("value");
  CHECK(v[0] == doctest::Approx(0.11627207896741481).epsilon(1e-6));
}

TEST_CASE("slavi bounds and series outputs") {
  TempDir tmp;
  const auto r = run_cli({"slavi", "--x", "0,0.41", "--r", "1..100", "--bounds", "true", "--series", "5", "--out",
                          (tmp / "o").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("bounds hold") != std::string::npos);
  const auto b = cli::read_csv(tmp / "o" / "bounds.csv");
  CHECK(b.rows.size() == 200);
  for (double ok : b.numeric_column("ok")) CHECK(ok == 1.0);
  CHECK(cli::read_csv(tmp / "o" / "series.csv").rows.size() == 5);
}

TEST_CASE("invalid slavi grids are usage errors and leave nothing behind") {
  TempDir tmp;
  const auto out = (tmp / "o").string();
  CHECK(run_cli({"slavi", "--x", "1.5", "--out", out}).code == cli::kExitUsage);
  CHECK(run_cli({"slavi", "--r", "-1", "--out", out}).code == cli::kExitUsage);
  CHECK(run_cli({"slavi", "--r", "x..y", "--out", out}).code == cli::kExitUsage);
  CHECK(run_cli({"slavi", "--kind", "cubic", "--out", out}).code == cli::kExitUsage);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("unknown flags and missing subcommands fail fast") {
  CHECK(run_cli({"slavi", "--bogus"}).code == cli::kExitUsage);
  CHECK(run_cli({}).code == cli::kExitUsage);
  CHECK(run_cli({"refgame"}).code == cli::kExitUsage);
  const auto help = run_cli({"--help"});
  CHECK(help.code == cli::kExitOk);
  CHECK(help.out.find("emerge") != std::string::npos);
}

TEST_CASE("zipf fits exact power laws") {
  TempDir tmp;
  for (int alpha : {1, 2}) {
    cli::CsvTable t{{"rank", "frequency"}, {}};
    for (int r = 1; r <= 20; ++r) t.rows.push_back({std::to_string(r), cli::format_number(std::pow(r, -alpha))});
    cli::write_csv(tmp / "in.csv", t);
    const auto out = (tmp / ("o" + std::to_string(alpha))).string();
    const auto r = run_cli({"zipf", "--input", (tmp / "in.csv").string(), "--out", out});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("alpha=") != std::string::npos);
    CHECK(cli::read_csv(fs::path(out) / "zipf.csv").numeric_column("alpha")[0] ==
          doctest::Approx(alpha).epsilon(1e-12));
  }
}

TEST_CASE("zipf data errors exit with code 2") {
  TempDir tmp;
  cli::write_csv(tmp / "one.csv", {{"rank", "frequency"}, {{"1", "1"}}});
  CHECK(run_cli({"zipf", "--input", (tmp / "one.csv").string(), "--out", (tmp / "a").string()}).code ==
        cli::kExitData);
  cli::write_csv(tmp / "bad.csv", {{"rank", "frequency"}, {{"1", "abc"}, {"2", "1"}}});
  const auto r = run_cli({"zipf", "--input", (tmp / "bad.csv").string(), "--out", (tmp / "b").string()});
  CHECK(r.code == cli::kExitData);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(run_cli({"zipf", "--input", (tmp / "missing.csv").string(), "--out", (tmp / "c").string()}).code ==
        cli::kExitData);
  CHECK_FALSE(fs::exists(tmp / "a"));
  CHECK_FALSE(fs::exists(tmp / "b"));
}

TEST_CASE("emerge finds the 3x3 transition") {
  TempDir tmp;
  const auto r = run_cli({"emerge", "--n", "3", "--m", "3", "--method", "exhaustive", "--out", (tmp / "o").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out == "transition_lambda=0.475\n");
  const auto t = cli::read_csv(tmp / "o" / "emergence.csv");
  CHECK(t.header == std::vector<std::string>{"lambda", "omega_max", "mean_lexicon", "mean_mutual_info"});
  CHECK(t.rows.size() == 19);
  CHECK(fs::exists(tmp / "o" / "emergence_lexicon.svg"));
  CHECK(fs::exists(tmp / "o" / "emergence_mutual_info.svg"));
}

TEST_CASE("emerge single-point grid reports no transition") {
  TempDir tmp;
  const auto r = run_cli({"emerge", "--grid", "0.5", "--out", (tmp / "o").string()});
  REQUIRE(r.code == 0);
  CHECK(r.out == "no transition\n");
}

TEST_CASE("emerge over the guard without ga is a numeric error") {
  TempDir tmp;
  CHECK(run_cli({"emerge", "--n", "5", "--m", "5", "--out", (tmp / "o").string()}).code == cli::kExitNumeric);
  CHECK_FALSE(fs::exists(tmp / "o"));
  CHECK(run_cli({"emerge", "--n", "5", "--m", "5", "--method", "ga", "--generations", "50", "--grid", "0.5", "--out",
                 (tmp / "g").string()})
            .code == 0);
}

TEST_CASE("emerge ga is deterministic for a seed") {
  TempDir tmp;
  for (const char* o : {"a", "b"})
    REQUIRE(run_cli({"emerge", "--method", "ga", "--seed", "7", "--generations", "200", "--out", (tmp / o).string()})
                .code == 0);
  CHECK(slurp(tmp / "a" / "emergence.csv") == slurp(tmp / "b" / "emergence.csv"));
}

TEST_CASE("refgame train with zero episodes writes an empty trace") {
  TempDir tmp;
  const auto r = run_cli({"refgame", "train", "--episodes", "0", "--out", (tmp / "o").string()});
  REQUIRE(r.code == 0);
  CHECK(slurp(tmp / "o" / "trace.csv") == "episode,reward,rolling_accuracy\n");
}

TEST_CASE("refgame train writes parameters and embeddings that load back") {
  TempDir tmp;
  const auto o = tmp / "o";
  REQUIRE(run_cli({"refgame", "train", "--classes", "3", "--vocab", "3", "--dim", "6", "--pool", "5", "--episodes",
                   "20", "--save-params", "true", "--write-embeddings", "true", "--out", o.string()})
              .code == 0);
  CHECK(cli::read_csv(o / "trace.csv").rows.size() == 20);
  CHECK(slurp(o / "speaker.params").rfind("lexlab-params 1", 0) == 0);
  const auto o2 = tmp / "o2";
  REQUIRE(run_cli({"refgame", "train", "--classes", "3", "--vocab", "3", "--dim", "6", "--episodes", "20",
                   "--embeddings", (o / "embeddings.csv").string(), "--out", o2.string()})
              .code == 0);
}

TEST_CASE("refgame malformed inputs") {
  TempDir tmp;
  cli::write_csv(tmp / "emb.csv", {{"class", "dim0"}, {{"0", "1"}}});
  auto r = run_cli({"refgame", "train", "--embeddings", (tmp / "emb.csv").string(), "--out", (tmp / "a").string()});
  CHECK(r.code == cli::kExitData);
  CHECK(r.err.find("line") != std::string::npos);
  CHECK(run_cli({"refgame", "train", "--lambda", "1.5", "--out", (tmp / "b").string()}).code == cli::kExitUsage);
  CHECK(run_cli({"refgame", "train", "--vocab", "1", "--out", (tmp / "c").string()}).code == cli::kExitUsage);
  CHECK(run_cli({"refgame", "train", "--listener-input", "logits", "--out", (tmp / "d").string()}).code ==
        cli::kExitUsage);
  std::ofstream(tmp / "cfg.ini") << "refgame.train.episodes=notanumber\n";
  CHECK(run_cli({"--config", (tmp / "cfg.ini").string(), "refgame", "train", "--out", (tmp / "e").string()}).code ==
        cli::kExitUsage);
  for (const char* d : {"a", "b", "c", "d", "e"}) CHECK_FALSE(fs::exists(tmp / d));
}

TEST_CASE("refgame sweep-rank grows with vocabulary") {
  TempDir tmp;
  const auto r = run_cli({"refgame", "sweep-rank", "--vocab", "2,10,50", "--lambda", "0.5", "--seed", "1",
                          "--learning-rate", "0.2", "--out", (tmp / "o").string()});
  REQUIRE(r.code == 0);
  const auto t = cli::read_csv(tmp / "o" / "sweep.csv");
  CHECK(t.header == std::vector<std::string>{"param", "value", "final_accuracy_pct", "seed"});
  REQUIRE(t.rows.size() == 3);
  const auto acc = t.numeric_column("final_accuracy_pct");
  CHECK(acc[0] <= acc[1]);
  CHECK(acc[1] <= acc[2]);
  CHECK(fs::exists(tmp / "o" / "curves.svg"));
  CHECK(r.out.find("slope=") != std::string::npos);
}

TEST_CASE("refgame sweep-bias favours the listener-weighted end") {
  TempDir tmp;
  const auto r = run_cli({"refgame", "sweep-bias", "--lambda", "0.002,0.5", "--vocab", "10", "--seed", "1",
                          "--learning-rate", "0.2", "--out", (tmp / "o").string()});
  REQUIRE(r.code == 0);
  const auto acc = cli::read_csv(tmp / "o" / "sweep.csv").numeric_column("final_accuracy_pct");
  REQUIRE(acc.size() == 2);
  CHECK(acc[0] < acc[1]);
  const auto single = run_cli({"refgame", "sweep-bias", "--lambda", "0.5", "--episodes", "10", "--out",
                               (tmp / "s").string()});
  CHECK(single.out.find("slope=undefined") != std::string::npos);
}

TEST_CASE("sweep results do not depend on the number of jobs") {
  TempDir tmp;
  for (const char* jobs : {"1", "4"})
    REQUIRE(run_cli({"refgame", "sweep-rank", "--vocab", "2,5", "--repeats", "3", "--episodes", "50", "--jobs", jobs,
                     "--svg", "false", "--out", (tmp / jobs).string()})
                .code == 0);
  CHECK(slurp(tmp / "1" / "sweep.csv") == slurp(tmp / "4" / "sweep.csv"));
  CHECK(slurp(tmp / "1" / "curves.csv") == slurp(tmp / "4" / "curves.csv"));
}

TEST_CASE("manifest re-run reproduces outputs and flags override it") {
  TempDir tmp;
  const auto a = tmp / "a";
  REQUIRE(run_cli({"refgame", "train", "--classes", "4", "--vocab", "4", "--episodes", "60", "--seed", "9",
                   "--learning-rate", "0.1", "--out", a.string()})
              .code == 0);
  const auto manifest = slurp(a / "manifest.ini");
  CHECK(manifest.find("refgame.train.seed=9") != std::string::npos);
  CHECK(manifest.find("refgame.train.hidden=32") != std::string::npos);
  CHECK(manifest.find("slavi.") == std::string::npos);

  const auto b = tmp / "b";
  REQUIRE(run_cli({"--config", (a / "manifest.ini").string(), "refgame", "train", "--out", b.string()}).code == 0);
  CHECK(slurp(a / "trace.csv") == slurp(b / "trace.csv"));
  CHECK(slurp(a / "checksums.sha256") == slurp(b / "checksums.sha256"));

  const auto c = tmp / "c";
  REQUIRE(run_cli({"--config", (a / "manifest.ini").string(), "refgame", "train", "--seed", "10", "--out",
                   c.string()})
              .code == 0);
  CHECK(slurp(c / "manifest.ini").find("refgame.train.seed=10") != std::string::npos);
  CHECK(slurp(a / "trace.csv") != slurp(c / "trace.csv"));
}

TEST_CASE("output directory defaults from the environment") {
  TempDir tmp;
  const auto out = tmp / "env-out";
  ::setenv("LEXLAB_OUT_DIR", out.c_str(), 1);
  const auto r = run_cli({"slavi", "--r", "1"});
  ::unsetenv("LEXLAB_OUT_DIR");
  REQUIRE(r.code == 0);
  CHECK(fs::exists(out / "slavi.csv"));
}
