#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "ffb/io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("ffb_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::string& args) {
  const std::string cmd = std::string(FFB_BINARY_PATH) + " " + args + " 2>/dev/null >/dev/null";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) { return ffb::read_text_file(path); }

}  // namespace

TEST_CASE("g17 formatting round-trips doubles") {
  for (double v : {0.1, 1.0 / 3.0, 12345.678901234567, 1e-300, 0.0}) {
    const std::string s = ffb::fmt_g17(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("csv reader handles headers and rejects bad shapes") {
  TempDir dir;
  ffb::write_text_file(dir.file("a.csv"), "value\n1.5\n2.5\n");
  const auto col = ffb::read_csv_column(dir.file("a.csv"));
  CHECK(col == std::vector<double>{1.5, 2.5});

  ffb::write_text_file(dir.file("b.csv"), "1.0,2.0\n3.0,4.0\n");
  const auto cols = ffb::read_csv_columns(dir.file("b.csv"), 2);
  CHECK(cols[0] == std::vector<double>{1.0, 3.0});
  CHECK(cols[1] == std::vector<double>{2.0, 4.0});

  ffb::write_text_file(dir.file("c.csv"), "1.0\n2.0,3.0\n");
  CHECK_THROWS_AS(ffb::read_csv_columns(dir.file("c.csv"), 1), ffb::FormatError);
  ffb::write_text_file(dir.file("d.csv"), "x\ny\n1.0\n");
  CHECK_THROWS_AS(ffb::read_csv_column(dir.file("d.csv")), ffb::FormatError);
  CHECK_THROWS_AS(ffb::read_csv_column(dir.file("missing.csv")), ffb::IoError);
  ffb::write_text_file(dir.file("e.csv"), "nan\n");
  CHECK_THROWS_AS(ffb::read_csv_column(dir.file("e.csv")), ffb::FormatError);
}

TEST_CASE("json writer emits stable flat objects") {
  ffb::JsonWriter w;
  w.begin_object()
      .field("statistic", 0.5)
      .field("k", 0)
      .field("method", "h")
      .null_field("pvalue")
      .field("ok", true)
      .end_object();
  CHECK(w.str() ==
        "{\"statistic\":0.5,\"k\":0,\"method\":\"h\",\"pvalue\":null,\"ok\":true}");
  const json parsed = json::parse(w.str());
  CHECK(parsed["statistic"] == 0.5);
}

TEST_CASE("cli kstest matches the documented example") {
  TempDir dir;
  ffb::write_text_file(dir.file("x.csv"), "1\n3\n");
  ffb::write_text_file(dir.file("y.csv"), "2\n4\n");
  const int rc = run_cli("kstest --k 0 --method h --x " + dir.file("x.csv") + " --y " +
                         dir.file("y.csv") + " --out " + dir.file("out.json"));
  REQUIRE(rc == 0);
  const json out = json::parse(slurp(dir.file("out.json")));
  CHECK(out["statistic"].get<double>() == Catch::Approx(0.5));
  CHECK(out["k"] == 0);
  CHECK(out["method"] == "h");
  CHECK(out["pvalue"].is_null());
  CHECK(out["m"] == 2);
  CHECK(out["n"] == 2);
}

TEST_CASE("cli kstest p-values are reproducible byte for byte") {
  TempDir dir;
  ffb::write_text_file(dir.file("x.csv"), "0.1\n0.9\n0.4\n0.55\n0.77\n0.02\n");
  ffb::write_text_file(dir.file("y.csv"), "0.3\n0.6\n0.2\n0.85\n0.5\n0.11\n");
  const std::string args = "kstest --k 1 --method h --x " + dir.file("x.csv") + " --y " +
                           dir.file("y.csv") + " --permutations 99 --seed 5 --out ";
  REQUIRE(run_cli(args + dir.file("o1.json")) == 0);
  REQUIRE(run_cli(args + dir.file("o2.json")) == 0);
  CHECK(slurp(dir.file("o1.json")) == slurp(dir.file("o2.json")));
  const json out = json::parse(slurp(dir.file("o1.json")));
  CHECK(out["pvalue"].get<double>() > 0.0);
  CHECK(out["seed"] == 5);
}

TEST_CASE("cli trendfilter at lambda zero echoes the data") {
  TempDir dir;
  std::string data = "x,y\n";
  for (int i = 0; i < 12; ++i)
    data += ffb::fmt_g17(i * 0.1) + "," + ffb::fmt_g17(std::sin(i * 0.7)) + "\n";
  ffb::write_text_file(dir.file("data.csv"), data);
  const int rc = run_cli("trendfilter --k 2 --data " + dir.file("data.csv") +
                         " --lambda 0 --out " + dir.file("fit.csv"));
  REQUIRE(rc == 0);
  const auto cols = ffb::read_csv_columns(dir.file("fit.csv"), 3);
  CHECK(cols[1] == cols[2]);
}

TEST_CASE("cli transform roundtrip through files") {
  TempDir dir;
  std::string xs, ys;
  for (int i = 0; i < 16; ++i) {
    xs += ffb::fmt_g17(i + 0.25 * std::sin(i * 3.0)) + "\n";
    ys += ffb::fmt_g17(std::cos(i * 1.1)) + "\n";
  }
  ffb::write_text_file(dir.file("x.csv"), xs);
  ffb::write_text_file(dir.file("y.csv"), ys);
  REQUIRE(run_cli("transform --op hinv --k 3 --x " + dir.file("x.csv") + " --y " +
                  dir.file("y.csv") + " --out " + dir.file("z.csv")) == 0);
  REQUIRE(run_cli("transform --op h --k 3 --x " + dir.file("x.csv") + " --y " +
                  dir.file("z.csv") + " --out " + dir.file("back.csv")) == 0);
  const auto y = ffb::read_csv_column(dir.file("y.csv"));
  const auto back = ffb::read_csv_column(dir.file("back.csv"));
  for (std::size_t i = 0; i < y.size(); ++i)
    CHECK(back[i] == Catch::Approx(y[i]).epsilon(1e-9));
}

TEST_CASE("cli exit codes follow the contract") {
  TempDir dir;
  ffb::write_text_file(dir.file("x.csv"), "1\n2\n3\n");
  ffb::write_text_file(dir.file("tied.csv"), "1\n1\n");

  // usage: unknown option
  CHECK(run_cli("transform --bogus 1") == 2);
  // usage: missing required subcommand option
  CHECK(run_cli("kstest --k 0") == 2);
  // usage: both lambda and nlambda
  ffb::write_text_file(dir.file("d.csv"), "0,0\n1,1\n2,0\n3,1\n");
  CHECK(run_cli("trendfilter --k 1 --data " + dir.file("d.csv") +
                " --lambda 1 --nlambda 5 --out " + dir.file("o.csv")) == 2);
  // io: missing file
  CHECK(run_cli("transform --op h --k 0 --x " + dir.file("nope.csv") + " --y " +
                dir.file("x.csv") + " --out " + dir.file("o.csv")) == 3);
  // format/data: tied values under the reject policy
  CHECK(run_cli("kstest --k 0 --method h --x " + dir.file("tied.csv") + " --y " +
                dir.file("x.csv") + " --out " + dir.file("o.json")) == 3);
  // success for reference
  ffb::write_text_file(dir.file("y2.csv"), "4\n5\n6\n");
  CHECK(run_cli("kstest --k 0 --method h --x " + dir.file("x.csv") + " --y " +
                dir.file("y2.csv") + " --out " + dir.file("o.json")) == 0);
}

TEST_CASE("cli simulate maxgap writes csv and summary") {
  TempDir dir;
  ffb::write_text_file(dir.file("spec.json"),
                       "{\"n_list\":[100],\"trials\":20,\"seed\":4}\n");
  const int rc = run_cli("simulate maxgap --spec " + dir.file("spec.json") + " --out " +
                         dir.file("out"));
  REQUIRE(rc == 0);
  const std::string csv = slurp(dir.file("out") + "/maxgap.csv");
  CHECK(csv.find("n,trial,delta,bound,violation") == 0);
  const json summary = json::parse(slurp(dir.file("out") + "/maxgap_summary.json"));
  CHECK(summary["results"][0]["n"] == 100);
  CHECK(summary["results"][0]["trials"] == 20);

  // malformed spec -> format error
  ffb::write_text_file(dir.file("bad.json"), "{nope\n");
  CHECK(run_cli("simulate maxgap --spec " + dir.file("bad.json") + " --out " +
                dir.file("out2")) == 3);
}
