#include "nillab/catalog/catalog.hpp"
#include "nillab/cli/cli.hpp"
#include "nillab/io/json_io.hpp"
#include "nillab/structure/structure.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace nillab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nillab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("nillab_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }
  fs::path dir_;
};

std::string line_with(const std::string& text, const std::string& prefix) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (line.rfind(prefix, 0) == 0) return line;
  return {};
}

}  // namespace

TEST(Json, RationalRoundTrip) {
  for (auto r : {Rational(0), Rational(-7, 3), Rational(BigInt("123456789012345678901234567890"), BigInt(7))})
    EXPECT_EQ(rational_from_json(to_json(r), "r"), r);
  EXPECT_EQ(rational_from_json(Json("5"), "r"), Rational(5));
  EXPECT_THROW(rational_from_json(Json(0.5), "r"), FormatError);
  EXPECT_THROW(rational_from_json(Json("1/0"), "r"), FormatError);
  EXPECT_THROW(rational_from_json(Json("x"), "r"), FormatError);
}

TEST(Json, ExtScalarRoundTrip) {
  auto ctx = make_symbols({"a", "b"});
  auto a = ExtScalar::symbol(ctx, "a"), b = ExtScalar::symbol(ctx, "b");
  ExtScalar p = a * a * b * ExtScalar(Rational(-3, 4)) + b + ExtScalar(Rational(2));
  EXPECT_EQ(ext_from_json(to_json(p, 2), ctx, "p"), p);
  EXPECT_EQ(ext_from_json(Json("1/3"), ctx, "p"), ExtScalar(Rational(1, 3)));
  EXPECT_THROW(ext_from_json(Json::parse(R"([{"monomial": [1], "coeff": "1"}])"), ctx, "p"), FormatError);
  EXPECT_THROW(ext_from_json(Json::parse(R"([{"monomial": [-1, 0], "coeff": "1"}])"), ctx, "p"), FormatError);
}

TEST(Json, CatalogSystemsRoundTrip) {
  for (const auto& e : catalog_list()) {
    auto sys = catalog_build(e.name, default_params(e.name));
    auto back = system_from_json(to_json(sys));
    EXPECT_EQ(to_json(back), to_json(sys)) << e.name;
    EXPECT_EQ(back.algebra().step(), sys.algebra().step());
    EXPECT_EQ(back.has_second_generator(), sys.has_second_generator());
    EXPECT_EQ(discrete_factor_subgroup(back).dim(), discrete_factor_subgroup(sys).dim()) << e.name;
    EXPECT_EQ(ergodicity_test(back).ergodic, ergodicity_test(sys).ergodic) << e.name;
  }
}

TEST_F(TempDir, SystemFileWithAlgebraPath) {
  write("h3.json", R"({"dim": 3, "brackets": [{"i": 1, "j": 2, "coeffs": [[3, "1"]]}]})");
  auto path = write("sys.json", R"({
    "algebra": "h3.json",
    "symbols": ["a"],
    "values": {"a": 0.4142135623730951},
    "translation": [[{"monomial": [1], "coeff": "1"}], "1/2", "0"]
  })");
  auto sys = load_system_file(path);
  EXPECT_EQ(sys.dim(), 3);
  EXPECT_TRUE(sys.automorphism().is_identity());
  EXPECT_NEAR(sys.numeric_translation()[0], 0.4142135623730951, 1e-15);
  EXPECT_NEAR(sys.numeric_translation()[1], 0.5, 1e-15);
  EXPECT_TRUE(ergodicity_test(sys).ergodic == false);
}

TEST_F(TempDir, MalformedFilesAreRejected) {
  EXPECT_THROW(load_system_file(dir_ / "missing.json"), FormatError);
  EXPECT_THROW(load_system_file(write("bad.json", "{not json")), FormatError);
  EXPECT_THROW(load_system_file(write("noalg.json", R"({"translation": ["0"]})")), FormatError);
  EXPECT_THROW(load_system_file(write("short.json", R"({"algebra": {"dim": 2}, "translation": ["0"]})")), FormatError);
  EXPECT_THROW(load_system_file(write("nosym.json",
                                      R"({"algebra": {"dim": 1}, "symbols": ["a"], "translation": ["0"]})")),
               FormatError);
  EXPECT_THROW(load_system_file(write("range.json",
                                      R"({"algebra": {"dim": 2, "brackets": [{"i": 1, "j": 3, "coeffs": []}]},
                                          "translation": ["0", "0"]})")),
               FormatError);
  EXPECT_ANY_THROW(load_system_file(write("upper.json", R"({"algebra": {"dim": 2},
      "automorphism": [["1", "1"], ["0", "1"]], "translation": ["0", "0"]})")));
}

TEST(Cli, CatalogListing) {
  auto r = cli({"catalog"});
  EXPECT_EQ(r.code, 0);
  for (const auto& e : catalog_list()) EXPECT_NE(r.out.find(e.name), std::string::npos);
}

TEST_F(TempDir, CatalogExportLoadsBack) {
  auto r = cli({"catalog", "--system", "heisenberg3", "--params", "alpha=1/3", "--out", (dir_ / "h.json").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  auto sys = load_system_file(dir_ / "h.json");
  EXPECT_EQ(sys.translation().coords[0], ExtScalar(Rational(1, 3)));
  auto s = cli({"structure", "--system", (dir_ / "h.json").string()});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(Json::parse(s.out)["ergodic"], false);
}

TEST(Cli, StructureReport) {
  auto r = cli({"structure", "--system", "heisenberg3", "--k", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["discrete_factor"]["dim"], 1);
  EXPECT_EQ(j["leibman"]["dim"], 3);
  EXPECT_EQ(j["ergodic"], true);
  EXPECT_EQ(j["J_equals_commutator_with_g"], true);
  EXPECT_EQ(j["factor_level"]["kernel"]["dim"], 1);
  auto skew = Json::parse(cli({"structure", "--system", "skew_torus_nonergodic"}).out);
  EXPECT_EQ(skew["witness"], Json::parse(R"(["1", "0"])"));
}

TEST(Cli, SpectrumReportsVerdict) {
  auto r = cli({"spectrum", "--system", "skew_torus_nonergodic", "--observable", "1,0:1", "--observable", "0,1:1",
                "--part", "complement", "--lags", "64", "--samples", "5000", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_with(r.out, "lag,re,im"), "lag,re,im");
  EXPECT_EQ(line_with(r.out, "# verdict="), "# verdict=lebesgue-like");
  EXPECT_EQ(line_with(r.out, "# seed="), "# seed=3");
  EXPECT_EQ(line_with(r.out, "0,"), "0,1,0");
  auto p = cli({"spectrum", "--system", "skew_torus_nonergodic", "--observable", "1,0:1", "--observable", "0,1:1",
                "--part", "projection", "--lags", "64", "--samples", "5000", "--seed", "3"});
  EXPECT_EQ(line_with(p.out, "# verdict="), "# verdict=discrete");
}

TEST(Cli, SpectrumIsReproducible) {
  std::vector<std::string> args{"spectrum", "--system", "heisenberg3", "--observable", "0,0,1:1",
                                "--lags", "16", "--samples", "3000", "--seed", "8"};
  EXPECT_EQ(cli(args).out, cli(args).out);
}

TEST_F(TempDir, JointSpectrumAndDensity) {
  auto r = cli({"spectrum", "--system", "z2_skew", "--observable", "0,1:1", "--joint", "--lags", "4", "--samples", "4000",
                "--seed", "1", "--grid", "16", "--density", (dir_ / "d.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_with(r.out, "# support_test="), "# support_test=pass");
  std::ifstream d(dir_ / "d.csv");
  std::string header;
  std::getline(d, header);
  EXPECT_EQ(header, "theta1,theta2,density");
}

TEST(Cli, Useminorm) {
  auto r = cli({"useminorm", "--system", "rot_torus", "--observable", "1:1", "--levels", "32,32", "--samples", "2000",
                "--seed", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_with(r.out, "s,"), "s,estimate,stability_delta");
  EXPECT_EQ(line_with(r.out, "2,").substr(0, 4), "2,1,");
}

TEST_F(TempDir, ConfigFillsUnsetOptions) {
  auto cfg = write("c.json", R"({"system": "rot_torus", "observables": ["1:1"], "lags": 64, "samples": 1000, "seed": 4,
                                 "params": {"alpha": "1/4"}})");
  auto r = cli({"spectrum", "--config", cfg.string(), "--lags", "70"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_with(r.out, "# K="), "# K=70");
  EXPECT_EQ(line_with(r.out, "# seed="), "# seed=4");
  // alpha = 1/4 from the config: c(1) = e(1/4) = i.
  double re = 0, im = 0;
  ASSERT_EQ(std::sscanf(line_with(r.out, "1,").c_str(), "1,%lf,%lf", &re, &im), 2);
  EXPECT_NEAR(re, 0.0, 1e-12);
  EXPECT_NEAR(im, 1.0, 1e-12);
  auto bad = write("bad.json", R"({"sytem": "rot_torus"})");
  EXPECT_EQ(cli({"spectrum", "--config", bad.string()}).code, 1);
}

TEST(Cli, ErrorsExitWithOne) {
  EXPECT_EQ(cli({}).code, 1);
  EXPECT_EQ(cli({"spectrum", "--system", "rot_torus", "--observable", "1:1"}).code, 1);  // no seed
  EXPECT_EQ(cli({"structure", "--system", "no_such_system"}).code, 1);
  EXPECT_EQ(cli({"structure", "--system", "rot_torus", "--params", "gamma=1"}).code, 1);
  EXPECT_EQ(cli({"spectrum", "--system", "rot_torus", "--observable", "1,2:1", "--seed", "1"}).code, 1);
  EXPECT_EQ(cli({"spectrum", "--system", "rot_torus", "--observable", "1:1", "--seed", "1", "--lags", "5000"}).code, 1);
  EXPECT_EQ(cli({"spectrum", "--system", "heisenberg3", "--observable", "1,0,0:1", "--seed", "1", "--joint"}).code, 1);
  auto r = cli({"structure", "--system", "no_such_system"});
  EXPECT_NE(r.err.find("no_such_system"), std::string::npos);
  EXPECT_EQ(cli({"--help"}).code, 0);
}
