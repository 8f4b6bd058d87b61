#include <gtest/gtest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "toricsplit/cli.hpp"

using namespace toricsplit;

namespace {

const std::string kData = TORICSPLIT_DATA_DIR;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Cli, CheckAcceptsPresets) {
  for (const std::string fan : {"cp2", "cp3", "cp4", "cp5", "product:cp2,cp3"}) {
    const Outcome o = run_cli({"check", "--fan", fan});
    EXPECT_EQ(o.code, 0) << fan;
    EXPECT_EQ(lines(o.out).at(0), "smooth: yes, complete: yes, projective: yes");
  }
  EXPECT_EQ(run_cli({"check", kData + "/fans/cp5.json"}).code, 0);
}

TEST(Cli, CheckRejectsBadFans) {
  EXPECT_EQ(run_cli({"check", kData + "/fans/cp2_deleted_cone.json"}).code, 3);
  EXPECT_EQ(run_cli({"check", kData + "/fans/half_plane.json"}).code, 3);
  EXPECT_EQ(run_cli({"check", kData + "/fans/det2.json"}).code, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
  EXPECT_EQ(run_cli({"chi"}).code, 1);
  EXPECT_EQ(run_cli({"chi", "cp4", "--d", "0"}).code, 1);
  EXPECT_EQ(run_cli({"chi", "cp4", "--format", "xml"}).code, 1);
  EXPECT_EQ(run_cli({"chi", kData + "/fans/missing.json"}).code, 1);
  EXPECT_EQ(run_cli({"chi", "cp4", "--alpha", "1,2"}).code, 1);
  EXPECT_EQ(run_cli({"check", "cp2", "--fan", "cp3"}).code, 1);
}

TEST(Cli, ScalarCommands) {
  EXPECT_EQ(run_cli({"betti", "cp4"}).out, "1,0,1,0,1,0,1,0,1\n");
  EXPECT_EQ(run_cli({"chi", "cp4", "--d", "5"}).out, "-200\n");
  EXPECT_EQ(run_cli({"sign", "cp5", "--d", "3"}).out, "19\n");
  EXPECT_EQ(run_cli({"sign", "--fan", "cp5", "--alpha", "1,0,0,0,0,0", "--d", "3"}).out, "19\n");
  EXPECT_EQ(run_cli({"degree", "product:cp2,cp3"}).out, "10\n");
  EXPECT_EQ(run_cli({"chi", "cp5", "--alpha", "0,0,0,0,0,0"}).code, 4);
  EXPECT_EQ(run_cli({"sign", "cp4", "--d", "2"}).code, 5);
}

TEST(Cli, Gram) {
  const auto out = lines(run_cli({"gram", "product:cp2,cp3", "--d", "1"}).out);
  ASSERT_EQ(out.size(), 5u);
  EXPECT_EQ(out[0], "basis: x2^2,x2*x6,x6^2");
  EXPECT_EQ(out[1], "0 0 1");
  EXPECT_EQ(out[2], "0 1 1");
  EXPECT_EQ(out[3], "1 1 0");
  EXPECT_EQ(out[4], "signature: 2,1,0 (+1)");
}

TEST(Cli, HandlesEven) {
  const Outcome o = run_cli({"handles", kData + "/fans/cp5.json", "--alpha", "1,0,0,0,0,0", "--d", "3"});
  ASSERT_EQ(o.code, 0);
  const auto out = lines(o.out);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].rfind(cli::kEvenHeader, 0), 0u);
  EXPECT_EQ(out[1], "3,243,27,23,19,1,2,4/243,19/23,1,yes,0 (-)");
}

TEST(Cli, HandlesOdd) {
  auto out = lines(run_cli({"handles", "cp4", "--d", "5"}).out);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0], cli::kOddHandlesHeader);
  EXPECT_EQ(out[1], "5,625,-200,204,0,102,101,undetermined,,");
  out = lines(run_cli({"handles", "cp4", "--d", "5", "--kervaire", "0"}).out);
  EXPECT_EQ(out.at(1), "5,625,-200,204,0,102,101,0,102,0");
  out = lines(run_cli({"handles", "cp4", "--d", "5", "--kervaire", "1"}).out);
  EXPECT_EQ(out.at(1), "5,625,-200,204,0,102,101,1,101,2");
  EXPECT_EQ(run_cli({"handles", "cp4", "--d", "5", "--kervaire", "2"}).code, 1);
  EXPECT_EQ(run_cli({"handles", "cp3", "--d", "4"}).code, 5);
}

TEST(Cli, SweepFormat) {
  const Outcome o = run_cli({"sweep", "cp5", "--d-min", "1", "--d-max", "12"});
  ASSERT_EQ(o.code, 0);
  const auto out = lines(o.out);
  EXPECT_EQ(out.at(0), "d,degree,chi,b_n,sign_Y,sign_HnX,s_d,ratio_2s_deg,ratio_sign_bn");
  std::size_t rows = 0, summary = 0;
  for (std::size_t i = 1; i < out.size(); ++i) (out[i].rfind("# ", 0) == 0 ? summary : rows)++;
  EXPECT_EQ(rows, 12u);
  EXPECT_EQ(summary, 3u);
  EXPECT_EQ(out[3], "3,243,27,23,19,1,2,4/243,19/23");
  EXPECT_NE(o.out.find("2/15"), std::string::npos);
  EXPECT_NE(o.out.find("(n+1)! variant"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  const std::vector<std::string> args{"sweep", "product:cp2,cp3", "--d-min", "1", "--d-max", "6"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
  const std::vector<std::string> check{"check", kData + "/fans/half_plane.json", "--seed", "3"};
  EXPECT_EQ(run_cli(check).out, run_cli(check).out);
}

TEST(Cli, JsonOutput) {
  const auto doc = nlohmann::json::parse(run_cli({"handles", "cp5", "--d", "3", "--format", "json"}).out);
  EXPECT_EQ(doc.at("s_d"), "2");
  EXPECT_EQ(doc.at("sign_Y"), "19");
  const auto betti = nlohmann::json::parse(run_cli({"betti", "cp2", "--format", "json"}).out);
  EXPECT_EQ(betti.at("betti").size(), 5u);
  const auto sweep = nlohmann::json::parse(run_cli({"sweep", "cp5", "--d-min", "1", "--d-max", "3", "--format", "json"}).out);
  EXPECT_EQ(sweep.at("rows").size(), 3u);
  EXPECT_EQ(sweep.at("limits").size(), 3u);
}

TEST(Cli, LatticeSplit) {
  const Outcome o = run_cli({"lattice-split", kData + "/lattices/u_plus_e8.txt"});
  ASSERT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("planes: 1\n"), std::string::npos);
  EXPECT_NE(o.out.find("residual_signature: 8,0,0 (+8)"), std::string::npos);
  const Outcome f = run_cli({"lattice-split", kData + "/lattices/u_plus_e8.txt", "--sublattice",
                             kData + "/lattices/isotropic_line.txt"});
  EXPECT_EQ(f.code, 5);
  EXPECT_EQ(run_cli({"lattice-split", kData + "/lattices/odd_2_2.txt"}).code, 0);
}

TEST(Cli, Arf) {
  Outcome o = run_cli({"arf", kData + "/lattices/u_plus_u.txt", "--psi", "1,1,0,1"});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(lines(o.out).at(0), "arf: 1");
  o = run_cli({"arf", kData + "/lattices/u_plus_u.txt", "--psi", "1,1,1,1"});
  EXPECT_EQ(lines(o.out).at(0), "arf: 0");
  EXPECT_EQ(run_cli({"arf", kData + "/lattices/u_plus_u.txt", "--psi", "1,1"}).code, 1);
  EXPECT_EQ(run_cli({"arf", kData + "/lattices/odd_2_2.txt", "--psi", "0,0,0,0"}).code, 5);
}
