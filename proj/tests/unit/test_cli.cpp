#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qpipe/circuit.hpp"
#include "qpipe/cli.hpp"
#include "qpipe/errors.hpp"
#include "qpipe/image_io.hpp"

using namespace qpipe;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string path(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qpipe_cli_tests";
  fs::create_directories(dir);
  return (dir / name).string();
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("threshold and mode parsing") {
  CHECK(cli::parse_threshold("fixed:1e-3").resolve(4) == 1e-3);
  CHECK(cli::parse_threshold("dynamic").resolve(9) == doctest::Approx(0.025 / 512));
  const ThresholdPolicy d = cli::parse_threshold("dynamic:eta=0.05,w=2");
  CHECK(d.eta() == 0.05);
  CHECK(d.width() == 2.0);
  CHECK(cli::parse_threshold("dynamic:w=4").eta() == 0.025);
  CHECK_THROWS_AS(cli::parse_threshold("fixed:"), ArgumentError);
  CHECK_THROWS_AS(cli::parse_threshold("fixed:0.1x"), ArgumentError);
  CHECK_THROWS_AS(cli::parse_threshold("dynamic:k=1"), ArgumentError);
  CHECK_THROWS_AS(cli::parse_threshold("static"), ArgumentError);
  CHECK(cli::parse_mode("half") == MappingKind::HalfTurn);
  CHECK_THROWS_AS(cli::parse_mode("quarter"), ArgumentError);
}

TEST_CASE("gen is byte-for-byte reproducible") {
  for (const char* kind : {"levels", "uniform", "phantom-speckle", "ramp", "step"}) {
    CAPTURE(kind);
    const std::string a = path(std::string("gen_a_") + kind + ".csv");
    const std::string b = path(std::string("gen_b_") + kind + ".csv");
    REQUIRE(run({"gen", kind, "-o", a, "--seed", "7", "--width", "6", "--height", "5"}).code == 0);
    REQUIRE(run({"gen", kind, "-o", b, "--seed", "7", "--width", "6", "--height", "5"}).code == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(lines(slurp(a)) == 5);
  }
  const std::string pgm = path("speckle.pgm");
  REQUIRE(run({"gen", "phantom-speckle", "-o", pgm, "--width", "8", "--height", "8"}).code == 0);
  CHECK(slurp(pgm).rfind("P2\n8 8\n255\n", 0) == 0);
}

TEST_CASE("encode round-trips a quantized image") {
  const std::string img = path("enc.pgm");
  {
    std::ofstream f(img);
    f << "P2\n2 2\n255\n0 17\n128 255\n";
  }
  const std::string dump = path("enc.circuit");
  const Run r = run({"encode", img, "-q", "8", "--dump-circuit", dump});
  REQUIRE(r.code == 0);
  std::istringstream rows(r.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "x,row,col,decoded,retained_mass,annihilated");
  const double expected[] = {0, 17, 128, 255};
  for (std::size_t x = 0; x < 4; ++x) {
    REQUIRE(std::getline(rows, line));
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    REQUIRE(cols.size() == 6);
    CHECK(std::stoul(cols[0]) == x);
    CHECK(std::stoul(cols[1]) == x / 2);
    CHECK(std::stoul(cols[2]) == x % 2);
    CHECK(std::stod(cols[3]) == expected[x]);
    CHECK(std::stod(cols[4]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(cols[5] == "0");
  }
  CHECK_FALSE(std::getline(rows, line));
  const Circuit parsed = parse_circuit(slurp(dump), {8, 2});
  CHECK(count_gates(parsed).total > 0);
  CHECK(serialize(parsed) == slurp(dump));
}

TEST_CASE("encode 8x8 quantized at q=8 decodes exactly") {
  const std::string img = path("enc8.pgm");
  REQUIRE(run({"gen", "levels", "-o", img, "--levels", "256", "--seed", "3"}).code == 0);
  const std::string csv = path("enc8.csv");
  REQUIRE(run({"encode", img, "-o", csv, "--intensity-range", "256"}).code == 0);
  const Image src = io::read_image(img);
  std::istringstream in(slurp(csv));
  std::string line;
  std::getline(in, line);
  for (std::size_t x = 0; x < 64; ++x) {
    REQUIRE(std::getline(in, line));
    std::vector<std::string> cols;
    std::stringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
    CHECK(std::stod(cols[3]) == src.pixels[x]);
  }
}

TEST_CASE("qed") {
  const std::string img = path("qed.pgm");
  REQUIRE(run({"gen", "levels", "-o", img, "--seed", "11"}).code == 0);
  const std::string json = path("qed.json");
  const std::string prefix = path("qed_grad");
  const Run r = run({"qed", img, "--json", json, "--gradients", prefix});
  REQUIRE(r.code == 0);
  const std::string text = slurp(json);
  CHECK(text.find("\"mae\": 0.0") != std::string::npos);
  const auto doc = nlohmann::json::parse(text);
  CHECK(doc["config"]["intensity_range"] == 32.0);
  for (const char* d : {"horizontal", "vertical", "sobel"}) {
    CHECK(fs::exists(prefix + "_" + d + ".csv"));
    CHECK(lines(slurp(prefix + "_" + d + ".csv")) == 8);
  }

  const Run again = run({"qed", img});
  CHECK(again.out == text);

  SUBCASE("continuous sample has a small positive MAE") {
    const std::string cont = path("qed_cont.csv");
    REQUIRE(run({"gen", "uniform", "-o", cont, "--seed", "5"}).code == 0);
    const Run c = run({"qed", cont, "--intensity-range", "256", "--direction", "horizontal"});
    REQUIRE(c.code == 0);
    const double m = nlohmann::json::parse(c.out)["mae"].get<double>();
    CHECK(m > 0.0);
    CHECK(m < 1.0);
  }
}

TEST_CASE("complexity") {
  const Run r = run({"complexity"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out) == 1 + 255 * 4);
  CHECK(r.out.rfind("k,N,method,qubits,x_count,cp_count,total_gates,depth,is_estimate\n", 0) == 0);
}

TEST_CASE("threshold sweep") {
  const std::string img = path("sweep.csv");
  REQUIRE(run({"gen", "uniform", "-o", img, "--width", "5", "--height", "5", "--seed", "2"}).code == 0);
  const Run r = run({"threshold-sweep", img, "-q", "6", "--intensity-range", "256"});
  REQUIRE(r.code == 0);
  CHECK(lines(r.out) == 1 + 6 + 1);
  CHECK(r.out.rfind("threshold,label,mae,annihilated_count\n", 0) == 0);
  CHECK(r.out.find(",fixed:0.1,") != std::string::npos);
  CHECK(r.out.find(",dynamic:eta=0.025,w=1,") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"bogus"}).code == cli::kExitUsage);
  CHECK(run({"encode"}).code == cli::kExitUsage);
  CHECK(run({"--help"}).code == cli::kExitOk);

  const std::string img = path("codes.pgm");
  REQUIRE(run({"gen", "levels", "-o", img}).code == 0);
  CHECK(run({"encode", img, "--threshold", "nonsense"}).code == cli::kExitUsage);
  CHECK(run({"encode", img, "--mode", "sideways"}).code == cli::kExitUsage);
  CHECK(run({"encode", img, "--intensity-range", "4"}).code == cli::kExitUsage);

  const std::string out = path("capped.csv");
  fs::remove(out);
  const Run capped = run({"encode", img, "-o", out, "--qubit-cap", "10"});
  CHECK(capped.code == cli::kExitQubitCap);
  CHECK(capped.err.find("14") != std::string::npos);
  CHECK_FALSE(fs::exists(out));

  const std::string bad = path("bad.pgm");
  {
    std::ofstream f(bad);
    f << "P2\n2 2\n255\n1 2 3\n";
  }
  CHECK(run({"encode", bad}).code == cli::kExitUsage);
  CHECK(run({"encode", path("absent.pgm")}).code == cli::kExitFailure);
}

}
