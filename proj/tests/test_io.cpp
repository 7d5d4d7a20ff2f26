#include "gtest/gtest.h"

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "bjorth/errors.hpp"
#include "bjorth/matrix.hpp"
#include "bjorth/matrix_io.hpp"
#include "bjorth/rng.hpp"

namespace {

using namespace bjorth;
using nlohmann::json;

const char* const kCliPath = BJORTH_CLI_PATH;
const std::string kScratch = BJORTH_SCRATCH_DIR;

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(kCliPath) + " " + args + " 2>/dev/null";
  CmdResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return res;
  char buf[4096];
  while (std::fgets(buf, sizeof(buf), pipe) != nullptr) res.out += buf;
  const int rc = pclose(pipe);
  if (WIFEXITED(rc)) res.code = WEXITSTATUS(rc);
  return res;
}

// Writes the matrix into the scratch directory and returns the path.
std::string stage(const std::string& name, const Matrix& m) {
  std::filesystem::create_directories(kScratch);
  const std::string path = kScratch + "/" + name;
  write_matrix_file(path, m);
  return path;
}

std::string stage_text(const std::string& name, const std::string& text) {
  std::filesystem::create_directories(kScratch);
  const std::string path = kScratch + "/" + name;
  std::ofstream out(path);
  out << text;
  return path;
}

TEST(ParseComplex, AcceptsTheTokenGrammar) {
  EXPECT_EQ(parse_complex("1"), cd(1.0, 0.0));
  EXPECT_EQ(parse_complex("-2.5"), cd(-2.5, 0.0));
  EXPECT_EQ(parse_complex("3i"), cd(0.0, 3.0));
  EXPECT_EQ(parse_complex("-0.25i"), cd(0.0, -0.25));
  EXPECT_EQ(parse_complex("1+2i"), cd(1.0, 2.0));
  EXPECT_EQ(parse_complex("1-2i"), cd(1.0, -2.0));
  EXPECT_EQ(parse_complex("1e-3+2.5e2i"), cd(1e-3, 250.0));
  EXPECT_EQ(parse_complex("0"), cd(0.0, 0.0));
  EXPECT_EQ(parse_complex("0i"), cd(0.0, 0.0));
}

TEST(ParseComplex, RejectsMalformedTokens) {
  for (const char* bad : {"", "i", "1+", "1+i", "abc", "1.2.3", "nan", "inf",
                          "1x", "2i3", "+-1", "1+2i5"}) {
    EXPECT_THROW(parse_complex(bad), ParseError) << "token '" << bad << "'";
  }
}

TEST(FormatComplex, ProducesMinimalTokens) {
  EXPECT_EQ(format_complex(cd(1.0, 0.0)), "1");
  EXPECT_EQ(format_complex(cd(0.0, -2.0)), "-2i");
  EXPECT_EQ(format_complex(cd(0.0, 0.0)), "0");
  EXPECT_EQ(format_complex(cd(1.5, 2.0)), "1.5+2i");
  EXPECT_EQ(format_complex(cd(1.5, -2.0)), "1.5-2i");
}

TEST(MatrixRoundTrip, RandomMatricesSurviveExactly) {
  Rng rng(101);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t m = 1 + trial % 5;
    const std::size_t n = 1 + (trial / 5) % 5;
    Matrix a = rng.gaussian_matrix(m, n);
    a *= cd(std::pow(10.0, rng.uniform(-12.0, 12.0)), 0.0);
    const Matrix back = parse_matrix(format_matrix(a));
    ASSERT_EQ(back.rows(), m);
    ASSERT_EQ(back.cols(), n);
    EXPECT_TRUE(back == a) << "trial " << trial;
  }
}

TEST(MatrixRoundTrip, SpecialValues) {
  Matrix a(2, 2);
  a(0, 0) = cd(-0.0, 0.0);
  a(0, 1) = cd(1e-308, -1e-308);
  a(1, 0) = cd(0.0, 1.0);
  a(1, 1) = cd(-123456789.123456789, 3.0e300);
  const Matrix back = parse_matrix(format_matrix(a));
  EXPECT_TRUE(back == a);
  EXPECT_TRUE(std::signbit(back(0, 0).real()));
}

TEST(ParseMatrix, HeaderAndTokenCountAreEnforced) {
  EXPECT_NO_THROW(parse_matrix("2 2\n1 2\n3 4\n"));
  EXPECT_THROW(parse_matrix(""), ParseError);
  EXPECT_THROW(parse_matrix("2\n1 2\n"), ParseError);
  EXPECT_THROW(parse_matrix("0 2\n"), ParseError);
  EXPECT_THROW(parse_matrix("-1 2\n1 2\n"), ParseError);
  EXPECT_THROW(parse_matrix("2 2\n1 2\n3\n"), ParseError);
  EXPECT_THROW(parse_matrix("2 2\n1 2 5\n3 4\n"), ParseError);
  EXPECT_THROW(parse_matrix("2 2\n1 2\n"), ParseError);
  EXPECT_THROW(parse_matrix("2 2 9\n1 2\n3 4\n"), ParseError);
  EXPECT_THROW(parse_matrix("99999999 2\n"), ParseError);
  EXPECT_THROW(parse_matrix("2 2\n1 2\n3 frog\n"), ParseError);
}

TEST(ParseMatrixFile, MissingFileThrows) {
  EXPECT_THROW(parse_matrix_file(kScratch + "/does_not_exist.mat"), ParseError);
}

TEST(MatrixFileRoundTrip, WriteThenReadBack) {
  Rng rng(102);
  const Matrix a = rng.gaussian_matrix(3, 2);
  const std::string path = stage("roundtrip.mat", a);
  EXPECT_TRUE(parse_matrix_file(path) == a);
}

TEST(Cli, StrongCheckRejectsBalancedSignDiagonal) {
  const std::string x = stage("i2.mat", Matrix::identity(2));
  const std::string y = stage("sign2.mat", Matrix::diag({cd(-1.0, 0.0), cd(1.0, 0.0)}));
  const CmdResult res = run_cli("check strong " + x + " " + y);
  EXPECT_EQ(res.code, 1);
}

TEST(Cli, EpsStrongCheckAcceptsHalfProjector) {
  const std::string x = stage("i2.mat", Matrix::identity(2));
  const std::string y = stage("proj2.mat", Matrix::diag({cd(1.0, 0.0), cd(0.0, 0.0)}));
  const CmdResult res = run_cli("check eps-strong --eps 0.2 " + x + " " + y);
  EXPECT_EQ(res.code, 0);
}

TEST(Cli, ExactCheckAgainstZeroAccepts) {
  const std::string x = stage("i2.mat", Matrix::identity(2));
  const std::string z = stage("zero2.mat", Matrix(2, 2));
  EXPECT_EQ(run_cli("check exact " + x + " " + z).code, 0);
}

TEST(Cli, BjJsonReportCarriesWitness) {
  const std::string x = stage("i2.mat", Matrix::identity(2));
  const std::string y = stage("sign2.mat", Matrix::diag({cd(-1.0, 0.0), cd(1.0, 0.0)}));
  const CmdResult res = run_cli("check bj " + x + " " + y + " --json");
  EXPECT_EQ(res.code, 0);
  const json rep = json::parse(res.out);
  EXPECT_EQ(rep["relation"], "bj");
  EXPECT_EQ(rep["status"], "true");
  ASSERT_TRUE(rep.contains("witness"));
  EXPECT_EQ(rep["witness"]["vector"].size(), 2u);
  EXPECT_LE(rep["witness"]["residuals"]["normAttain"].get<double>(), 1e-6);
  EXPECT_LE(rep["witness"]["residuals"]["orthogonality"].get<double>(), 1e-6);
  EXPECT_DOUBLE_EQ(rep["config"]["witnessTol"].get<double>(), 1e-7);
  EXPECT_GE(rep["timingMs"].get<double>(), 0.0);
  EXPECT_TRUE(rep.contains("state"));
}

TEST(Cli, EpsReportEchoesEpsilon) {
  const std::string x = stage("i2.mat", Matrix::identity(2));
  const std::string y = stage("proj2.mat", Matrix::diag({cd(1.0, 0.0), cd(0.0, 0.0)}));
  const CmdResult res = run_cli("check eps " + x + " " + y + " --eps 0.2 --json");
  EXPECT_EQ(res.code, 1);
  const json rep = json::parse(res.out);
  EXPECT_EQ(rep["status"], "false");
  EXPECT_DOUBLE_EQ(rep["epsilon"].get<double>(), 0.2);
}

TEST(Cli, EpsilonFlagContract) {
  const std::string x = stage("i2.mat", Matrix::identity(2));
  const std::string y = stage("proj2.mat", Matrix::diag({cd(1.0, 0.0), cd(0.0, 0.0)}));
  EXPECT_EQ(run_cli("check eps " + x + " " + y).code, 64);
  EXPECT_EQ(run_cli("check eps-bj " + x + " " + y).code, 64);
  EXPECT_EQ(run_cli("check eps " + x + " " + y + " --eps 1.5").code, 64);
  EXPECT_EQ(run_cli("check eps-strong " + x + " " + y + " --eps 1.0").code, 64);
}

TEST(Cli, InputErrorsMapToDistinctCodes) {
  const std::string x = stage("i2.mat", Matrix::identity(2));
  const std::string y3 = stage("i3.mat", Matrix::identity(3));
  const std::string garbled = stage_text("garbled.mat", "2 2\n1 frog\n3 4\n");
  EXPECT_EQ(run_cli("check bj " + x + " " + y3).code, 65);
  EXPECT_EQ(run_cli("check bj " + x + " " + garbled).code, 64);
  EXPECT_EQ(run_cli("check bj " + x + " " + kScratch + "/missing.mat").code, 64);
  EXPECT_EQ(run_cli("check sideways " + x + " " + x).code, 64);
  EXPECT_EQ(run_cli("frobnicate").code, 64);
}

TEST(Cli, GammaReportsMinimizer) {
  const std::string t = stage("signdiag.mat", Matrix::diag({cd(1.0, 0.0), cd(-1.0, 0.0)}));
  const std::string s = stage("i2.mat", Matrix::identity(2));
  const CmdResult res = run_cli("gamma " + t + " " + s + " --json");
  EXPECT_EQ(res.code, 0);
  const json rep = json::parse(res.out);
  EXPECT_LE(std::abs(rep["gamma"][0].get<double>()), 1e-6);
  EXPECT_LE(std::abs(rep["gamma"][1].get<double>()), 1e-6);
  EXPECT_NEAR(rep["minValue"].get<double>(), 1.0, 1e-6);
  EXPECT_TRUE(rep["unique"].get<bool>());
  EXPECT_GE(rep["pythagoreanSlack"].get<double>(), -1e-9);
}

TEST(Cli, GammaZeroDirectionRejected) {
  const std::string t = stage("i2.mat", Matrix::identity(2));
  const std::string z = stage("zero2.mat", Matrix(2, 2));
  EXPECT_EQ(run_cli("gamma " + t + " " + z).code, 65);
}

TEST(Cli, SuiteRunsCleanAndIsReproducible) {
  const std::string args = "suite --dim 2 --trials 5 --seed 7 --json";
  const CmdResult a = run_cli(args);
  ASSERT_EQ(a.code, 0);
  json ra = json::parse(a.out);
  EXPECT_EQ(ra["parts"].size(), 12u);
  EXPECT_EQ(ra["totals"]["fail"].get<int>(), 0);
  EXPECT_GT(ra["totals"]["pass"].get<int>(), 0);

  const CmdResult b = run_cli(args);
  json rb = json::parse(b.out);
  ra.erase("timingMs");
  rb.erase("timingMs");
  EXPECT_EQ(ra.dump(), rb.dump());
}

TEST(Cli, SuiteWithNoTrialsSucceedsVacuously) {
  const CmdResult res = run_cli("suite --dim 2 --trials 0 --json");
  EXPECT_EQ(res.code, 0);
  const json rep = json::parse(res.out);
  EXPECT_EQ(rep["totals"]["fail"].get<int>(), 0);
}

TEST(Cli, DemoTracksTruncationFormulas) {
  const CmdResult res = run_cli("demo-l2 --N 2 --json");
  EXPECT_EQ(res.code, 0);
  const json rep = json::parse(res.out);
  EXPECT_NEAR(rep["norm"].get<double>(), 2.0 / 3.0, 1e-12);
  EXPECT_EQ(rep["status"], "true");
  EXPECT_NEAR(rep["gap"].get<double>(), 2.0 / 3.0 - 1.0 / 2.0, 1e-12);
  EXPECT_GE(rep["witnessOverlap"].get<double>(), 1.0 - 1e-9);

  const CmdResult big = run_cli("demo-l2 --N 50 --json");
  const json repBig = json::parse(big.out);
  EXPECT_NEAR(repBig["gap"].get<double>(), 50.0 / 51.0 - 49.0 / 50.0, 1e-12);
  EXPECT_LT(repBig["gap"].get<double>(), rep["gap"].get<double>());

  EXPECT_EQ(run_cli("demo-l2 --N 1").code, 64);
}

TEST(Cli, HumanReadableOutputMentionsStatus) {
  const std::string x = stage("i2.mat", Matrix::identity(2));
  const std::string y = stage("sign2.mat", Matrix::diag({cd(-1.0, 0.0), cd(1.0, 0.0)}));
  const CmdResult res = run_cli("check bj " + x + " " + y);
  EXPECT_EQ(res.code, 0);
  EXPECT_NE(res.out.find("status: true"), std::string::npos);
}

}  // namespace
