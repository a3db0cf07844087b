#include "cli_app.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace hkit;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("hkit_cli_" + std::to_string(::getpid()));
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string write(const std::string& name, const std::string& text) {
        std::ofstream(dir_ / name) << text;
        return (dir_ / name).string();
    }

    fs::path dir_;
};

const char* kIsometry = R"({"relation":"n-inverse","n":3,
  "operands":{"S":{"dim":2,"entries":[[1,0],[1,1]]},"T":{"dim":2,"entries":[[1,1],[0,1]]}}})";

const char* kTensorProduct = R"({"relation":"n-inverse","delta":"tensor-product","n":2,
  "operands":{"S1":"s1.json","T1":{"dim":2,"entries":[["1/2",0],[0,"1/2"]]},
              "S2":{"dim":1,"entries":[[1]]},"T2":{"dim":1,"entries":[[2]]}}})";

} // namespace

TEST_F(CliTest, CheckHoldsAndFails) {
    auto m = write("iso.json", kIsometry);
    auto r = run({"check", m});
    EXPECT_EQ(r.code, 0) << r.err;
    auto j = Json::parse(r.out);
    EXPECT_TRUE(j["holds"].get<bool>());
    EXPECT_EQ(j["strict_order"], 3);
    EXPECT_EQ(j["residual_frobenius"], 0.0);

    auto f = run({"check", m, "--n", "2"});
    EXPECT_EQ(f.code, 1);
    auto k = Json::parse(f.out);
    EXPECT_FALSE(k["holds"].get<bool>());
    EXPECT_EQ(matrix_from_json(k["residual"]), (ExactMatrix{{0, 0}, {0, 2}}));
}

TEST_F(CliTest, SchemaAndParseErrorsExitTwo) {
    EXPECT_EQ(run({"check", write("bad.json", "{ not json")}).code, 2);
    EXPECT_EQ(run({"check", write("extra.json", R"({"relation":"helton","n":1,"operands":{"S":{"dim":1,"entries":[[1]]},"T":{"dim":1,"entries":[[1]]}},"bogus":1})")}).code, 2);
    EXPECT_EQ(run({"check", write("missing.json", R"({"relation":"helton","n":1,"operands":{"S":{"dim":1,"entries":[[1]]}}})")}).code, 2);
    EXPECT_EQ(run({"check", write("rel.json", R"({"relation":"foo","n":1,"operands":{}})")}).code, 2);
    EXPECT_EQ(run({"check", (dir_ / "absent.json").string()}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    auto r = run({"check", write("bad2.json", "{ not json")});
    EXPECT_TRUE(r.out.empty());
}

TEST_F(CliTest, SplitExitCodes) {
    write("s1.json", R"({"dim":2,"entries":[[1,1],[0,1]]})");
    auto m = write("tp.json", kTensorProduct);
    auto r = run({"split", m});
    ASSERT_EQ(r.code, 0) << r.err;
    auto w = Json::parse(r.out);
    EXPECT_EQ(w["lambda"], "2");
    EXPECT_EQ(w["l"], 2);
    EXPECT_EQ(w["m"], 1);
    EXPECT_EQ(w["verified"], "exact");

    auto ns = run({"split", m, "--n", "1"});
    EXPECT_EQ(ns.code, 1);
    EXPECT_TRUE(ns.out.empty());

    auto nodelta = run({"split", write("nd.json", kIsometry)});
    EXPECT_EQ(nodelta.code, 2);
}

TEST_F(CliTest, NumericWitnessExitsThree) {
    auto m = write("sqrt2.json", R"({"relation":"general:x*y^2-2","delta":"tensor-product","n":1,
      "operands":{"S1":{"dim":1,"entries":[[1]]},"T1":{"dim":1,"entries":[[1]]},
                  "S2":{"dim":1,"entries":[[2]]},"T2":{"dim":1,"entries":[[1]]}}})");
    auto r = run({"split", m});
    EXPECT_EQ(r.code, 3) << r.err;
    auto w = Json::parse(r.out);
    EXPECT_EQ(w["verified"], "numeric");
    EXPECT_TRUE(w["lambda"].is_object());
    EXPECT_LT(w["lambda"]["residual"].get<double>(), 1e-9);
    EXPECT_EQ(run({"split", m, "--numeric-fallback", "off"}).code, 4);
}

TEST_F(CliTest, Nsym2Manifest) {
    auto m = write("ns2.json", R"({"relation":"nsym2","n":3,
      "operands":{"T1":{"dim":2,"entries":[["1-i",2],[2,"-i"]]},"T2":{"dim":2,"entries":[["i",1],[0,"i"]]}}})");
    auto r = run({"split", m});
    ASSERT_EQ(r.code, 0) << r.err;
    auto w = Json::parse(r.out);
    EXPECT_EQ(w["lambda"], "i");
    EXPECT_EQ(w["relation"], "nsym2");
}

TEST_F(CliTest, ClassifyAndCertify) {
    auto c = run({"classify", "x*y-1"});
    ASSERT_EQ(c.code, 0);
    auto j = Json::parse(c.out);
    EXPECT_EQ(j["weights"], Json::array({1, -1}));
    EXPECT_EQ(j["degree"], 0);
    EXPECT_EQ(j["canonical_form"]["type"], "ProductForm");
    auto n = Json::parse(run({"classify", "x*y-x-1"}).out);
    EXPECT_FALSE(n["quasi_homogeneous"].get<bool>());
    EXPECT_EQ(run({"classify", "x*+"}).code, 2);

    auto cert = run({"certify", "x*y-1", "--delta", "tensor-product", "--lambda", "1"});
    ASSERT_EQ(cert.code, 0);
    auto k = Json::parse(cert.out);
    EXPECT_TRUE(k["verified"].get<bool>());
    EXPECT_EQ(k["f"], "x2*y2");
    EXPECT_EQ(run({"certify", "x*y-x-1", "--delta", "tensor-product"}).code, 2);
}

TEST_F(CliTest, GenerateBundleFeedsSplit) {
    auto g = run({"generate", "--relation", "n-inverse", "--delta", "perturb", "--l", "2", "--m", "2", "--lambda", "0",
                  "--out", (dir_ / "bundle").string()});
    ASSERT_EQ(g.code, 0) << g.err;
    auto s = run({"split", (dir_ / "bundle" / "manifest.json").string()});
    ASSERT_EQ(s.code, 0) << s.err;
    auto w = Json::parse(s.out);
    EXPECT_EQ(w["l"].get<int>() + w["m"].get<int>(), 4);
    std::ifstream in(dir_ / "bundle" / "expected.json");
    auto e = Json::parse(in);
    EXPECT_EQ(e["lambda"], "0");

    auto inline_manifest = run({"generate", "--relation", "nsym", "--l", "1", "--m", "3", "--lambda", "-1", "--seed", "4"});
    ASSERT_EQ(inline_manifest.code, 0) << inline_manifest.err;
    auto path = write("gen.json", inline_manifest.out);
    EXPECT_EQ(run({"split", path}).code, 0);
    EXPECT_EQ(run({"check", path}).code, 0);
}

TEST_F(CliTest, BinaryExitCodes) {
    auto m = write("iso.json", kIsometry);
    auto status = [&](const std::string& args) {
        int s = std::system((std::string(HKIT_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
        return WEXITSTATUS(s);
    };
    EXPECT_EQ(status("check " + m), 0);
    EXPECT_EQ(status("check " + m + " --n 2"), 1);
    EXPECT_EQ(status("check " + write("bad.json", "[")), 2);
}
