#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "sepscan/io.hpp"
#include "sepscan/states.hpp"

using namespace sepscan;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() / "sepscan_cli_test";
    std::filesystem::remove_all(dir_);
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string file(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_state(const std::string& name, const DensityMatrix& rho) const {
    write_json_file(file(name), density_to_json(rho));
    return file(name);
  }

  int run(const std::vector<std::string>& args, Json* report = nullptr) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run_args(args, out, err);
    last_err_ = err.str();
    if (report != nullptr && !out.str().empty()) *report = Json::parse(out.str());
    return code;
  }

  std::filesystem::path dir_;
  std::string last_err_;
};

}  // namespace

TEST_F(CliTest, TestCommandExitCodes) {
  Json r;
  EXPECT_EQ(run({"test", "--input", write_state("bell.json", bell())}, &r), 1);
  EXPECT_EQ(r["verdict"]["reason"], "ppt");
  EXPECT_EQ(r["verdict"]["exact"], true);
  EXPECT_EQ(run({"test", "--input", write_state("mm.json", maxmixed(2, 2))}, &r), 0);
  EXPECT_EQ(r["verdict"]["reason"], "frobenius_ball");
  EXPECT_TRUE(r["config"].contains("tolerances"));
}

TEST_F(CliTest, WitnessEmitsReparsableWitness) {
  Json r;
  const std::string w = file("witness.json");
  EXPECT_EQ(run({"witness", "--input", write_state("w9.json", werner(0.9)), "--delta", "0.05", "--net-cache",
                 file("cache"), "--witness-out", w},
                &r),
            1);
  ASSERT_TRUE(r.contains("witness"));
  const OperatorFile f = operator_from_json(read_json_file(w).at("operator"));
  EXPECT_EQ(f.m, 2);
  EXPECT_NEAR(f.a.trace(), 0.0, 1e-9);
  EXPECT_GT(r["witness"]["margin"].get<double>(), 0.0);
}

TEST_F(CliTest, MalformedInputIs64) {
  {
    std::ofstream out(file("bad.json"));
    out << "{\"m\": 2, \"n\": 2, \"matrix\": []}";
  }
  Json r;
  EXPECT_EQ(run({"test", "--input", file("bad.json")}, &r), 64);
  EXPECT_EQ(r["error"]["kind"], "input");
  EXPECT_EQ(run({"test", "--input", file("missing.json")}), 64);
  EXPECT_EQ(run({"frobnicate"}), 64);
  EXPECT_EQ(run({"witness", "--input", file("bad.json")}), 64);  // missing --delta
}

TEST_F(CliTest, InfeasibleConfigurationIs65) {
  write_json_file(file("k5.json"), graph_to_json(Graph::complete(5)));
  Json r;
  EXPECT_EQ(run({"gadget", "--graph", file("k5.json"), "--clique", "3", "--delta", "0.05", "--max-net-points", "10"},
                &r),
            65);
  EXPECT_EQ(r["error"]["kind"], "config");
}

TEST_F(CliTest, GadgetChain) {
  write_json_file(file("k3.json"), graph_to_json(Graph::complete(3)));
  Json r;
  EXPECT_EQ(run({"gadget", "--graph", file("k3.json"), "--clique", "3", "--delta", "0.05"}, &r), 0);
  EXPECT_EQ(r["kappa"], 3);
  EXPECT_EQ(r["chain"]["consistent"], true);
}

TEST_F(CliTest, SymextBell) {
  Json r;
  EXPECT_EQ(run({"symext", "--input", write_state("bell.json", bell()), "--delta", "0.5", "--kmax", "2", "--no-ppt"}, &r),
            1);
  EXPECT_EQ(r["steps"][0]["status"], "NoCertificate");
  EXPECT_EQ(r["config"]["ppt"], false);
}

TEST_F(CliTest, WoptAndNet) {
  write_json_file(file("op.json"), operator_to_json(bell().op(), 2, 2));
  Json r;
  EXPECT_EQ(run({"wopt", "--op", file("op.json"), "--delta", "0.1"}, &r), 0);
  EXPECT_NEAR(r["value"].get<double>(), 0.5, 0.2);
  EXPECT_EQ(run({"net", "--m", "2", "--delta", "0.5", "--verify", "500", "--output", file("net.json")}, &r), 0);
  EXPECT_EQ(r["coverage"]["pass"], true);
  const Json pts = read_json_file(file("net.json"));
  EXPECT_EQ(pts["points"].size(), r["points"].get<size_t>());
}

TEST_F(CliTest, QsepReduceThenVerify) {
  Json r;
  EXPECT_EQ(run({"state", "--name", "maxmixed", "--rational-bits", "20", "--output", file("rho.json")}, &r), 0);
  EXPECT_EQ(run({"qsep-reduce", "--input", file("rho.json"), "--delta", "1/2", "--output", file("inst.json")}, &r), 0);
  const QsepInstance inst = instance_from_json(read_json_file(file("inst.json")));
  // I/4 = sum over the four computational product states with weight 1/4.
  QsepCertificate cert{2, 2, {}};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      QVector va(2);
      QVector vb(2);
      va[static_cast<size_t>(a)] = QComplex(1);
      vb[static_cast<size_t>(b)] = QComplex(1);
      cert.terms.push_back({Rational(1, 4), va, vb});
    }
  while (cert.terms.size() < 16) cert.terms.push_back({Rational(0), QVector(2), QVector(2)});
  write_json_file(file("cert.json"), certificate_to_json(cert));
  EXPECT_EQ(run({"qsep-verify", "--instance", file("inst.json"), "--cert", file("cert.json")}, &r), 0);
  EXPECT_EQ(r["accepted"], true);
  EXPECT_EQ(r["distance_sq"]["num"], "0");
  (void)inst;
}

TEST_F(CliTest, DeterministicReportsModuloTimings) {
  const std::string in = write_state("pm.json", product_mixture(2, 2, 6, 3));
  Json a;
  Json b;
  EXPECT_EQ(run({"--seed", "5", "symext", "--input", in, "--delta", "2.0"}, &a), run({"--seed", "5", "symext", "--input", in, "--delta", "2.0"}, &b));
  a.erase("timings");
  b.erase("timings");
  EXPECT_EQ(a.dump(), b.dump());
}

TEST_F(CliTest, StateLibrary) {
  Json r;
  EXPECT_EQ(run({"state", "--name", "werner", "--w", "0.3"}, &r), 0);
  const DensityMatrix rho = density_from_json(r["state"]);
  EXPECT_EQ(rho.m(), 2);
  EXPECT_EQ(run({"state", "--name", "nonsense"}, &r), 64);
}
