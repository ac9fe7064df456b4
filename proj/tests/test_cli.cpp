#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lacunary/cli.hpp"

using lacunary::io::Json;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args, const std::string& stdin_text = "") {
    args.insert(args.begin(), "lacunary");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    std::istringstream in(stdin_text);
    int code = lacunary::cli::main(static_cast<int>(argv.size()), argv.data(), out, err, in);
    return {code, out.str(), err.str()};
}

std::string sample(const char* name) { return std::string(LACUNARY_SAMPLES_DIR) + "/" + name; }

} // namespace

TEST(Cli, DecomposeSquare) {
    auto r = invoke({"decompose", "--input", sample("decompose_square.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    Json j = Json::parse(r.out);
    ASSERT_EQ(j["results"].size(), 1u);
    EXPECT_EQ(j["results"][0]["kind"], "proper");
    EXPECT_EQ(j["results"][0]["outer"]["terms"][0]["exp"], "2");
    EXPECT_EQ(j["results"][0]["inner"]["terms"].size(), 2u);
    EXPECT_EQ(j["results"][0]["inner"]["terms"][1]["exp"], "1");
    EXPECT_TRUE(j["decomposable"].get<bool>());
}

TEST(Cli, DecomposeHugeExponents) {
    auto r = invoke({"decompose", "-i", sample("decompose_lacunary.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    Json j = Json::parse(r.out);
    bool found = false;
    for (const auto& res : j["results"])
        found = found || (res["kind"] == "proper" && res["d"] == 3 && res["inner"]["terms"][0]["exp"] == "1000000000000");
    EXPECT_TRUE(found);
}

TEST(Cli, WronskianCheck) {
    auto r = invoke({"wronskian-check", "-i", sample("wronskian_one_y.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_TRUE(j["holds"].get<bool>());
    EXPECT_EQ(j["lhs"], 0);
    EXPECT_EQ(j["rhs"], 0);
    EXPECT_EQ(j["order_sum"]["total"], -2);

    auto s = invoke({"wronskian-check", "-i", sample("wronskian_explicit_s.json")});
    ASSERT_EQ(s.code, 0) << s.err;
    Json js = Json::parse(s.out);
    EXPECT_EQ(js["s_size"], 5);
    EXPECT_EQ(js["rhs"], 3);
}

TEST(Cli, ExpandModes) {
    Json p = Json::parse(invoke({"expand", "-i", sample("expand_pow.json")}).out);
    EXPECT_EQ(p["order"], 5);
    ASSERT_EQ(p["terms"].size(), 3u);
    EXPECT_EQ(p["terms"][2]["exp"], 4);
    EXPECT_EQ(p["terms"][2]["num"], "-1");
    EXPECT_EQ(p["terms"][2]["den"], "8");

    Json q = Json::parse(invoke({"expand", "-i", sample("expand_puiseux.json")}).out);
    EXPECT_EQ(q["coefficients"][1]["num"], "-1");
    EXPECT_EQ(q["coefficients"][1]["den"], "2");

    Json t = Json::parse(invoke({"expand", "-i", sample("expand_tilde_h.json")}).out);
    EXPECT_EQ(t["terms"].size(), 2u);

    Json d = Json::parse(invoke({"expand", "-i", sample("expand_delta_split.json")}).out);
    ASSERT_EQ(d["terms"].size(), 2u);
    EXPECT_EQ(d["terms"][1]["k"], 1);
    EXPECT_EQ(d["terms"][1]["exp"], 3);
}

TEST(Cli, EnumerateIsDeterministic) {
    auto a = invoke({"enumerate", "-i", sample("enumerate_221.json")});
    auto b = invoke({"enumerate", "-i", sample("enumerate_221.json")});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    Json j = Json::parse(a.out);
    EXPECT_EQ(j["schema_version"], lacunary::io::catalog_schema_version);
    EXPECT_EQ(j["entries"].size(), 22u);
    EXPECT_EQ(j["variables"], (Json{"m1", "m2", "n11", "n21"}));
}

TEST(Cli, EnumerateCapsAreFlags) {
    auto guarded = invoke({"enumerate", "-i", R"({"l":1,"ell":5,"B":1})"});
    EXPECT_EQ(guarded.code, 1);
    EXPECT_EQ(Json::parse(guarded.err)["error"]["code"], "size_guard");
    EXPECT_TRUE(guarded.out.empty());
    auto lifted = invoke({"enumerate", "-i", R"({"l":1,"ell":5,"B":1})", "--cap-ell", "5"});
    EXPECT_EQ(lifted.code, 0) << lifted.err;
}

TEST(Cli, CorollaryScan) {
    auto r = invoke({"corollary-scan", "-i", sample("corollary_121.json"), "--box", "8"});
    ASSERT_EQ(r.code, 0) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["box"], 8);
    EXPECT_TRUE(j["closure_holds"].get<bool>());
    auto m = invoke({"corollary-scan", "-i", sample("membership_121.json")});
    EXPECT_TRUE(Json::parse(m.out)["decomposable"].get<bool>());
}

TEST(Cli, ReadsStdinAndWritesFiles) {
    const std::string path = ::testing::TempDir() + "lacunary_cli_out.json";
    std::remove(path.c_str());
    std::ifstream src(sample("decompose_square.json"));
    std::string text((std::istreambuf_iterator<char>(src)), {});
    auto r = invoke({"decompose", "-o", path}, text);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream written(path);
    Json j = Json::parse(written);
    EXPECT_EQ(j["results"].size(), 1u);
    std::remove(path.c_str());
}

TEST(Cli, MalformedJsonIsUsageError) {
    auto r = invoke({"decompose", "-i", "{\"terms\": ["});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(Json::parse(r.err)["error"]["code"], "parse");
}

TEST(Cli, UnknownFieldsRejected) {
    auto r = invoke({"decompose", "-i", R"({"terms":[{"exp":"1","num":"1","den":"1","extra":0}]})"});
    EXPECT_EQ(r.code, 2);
    EXPECT_TRUE(r.out.empty());
    auto w = invoke({"wronskian-check", "-i", R"({"functions":[],"sigma":1})"});
    EXPECT_EQ(w.code, 2);
}

TEST(Cli, DomainErrorsAreStructured) {
    auto r = invoke({"wronskian-check", "-i",
                     R"({"functions":[{"num":{"terms":[{"exp":"1","num":"1"}]}},{"num":{"terms":[{"exp":"1","num":"2"}]}}]})"});
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(r.out.empty());
    Json e = Json::parse(r.err);
    EXPECT_EQ(e["error"]["code"], "dependence");
    auto text = invoke({"decompose", "-i", R"({"terms":[{"exp":"0","num":"3"}]})", "--text-errors"});
    EXPECT_EQ(text.code, 1);
    EXPECT_EQ(text.err.rfind("error (undefined_input)", 0), 0u);
    auto verbose = invoke({"decompose", "-i", R"({"terms":[{"exp":"0","num":"3"}]})", "-v"});
    EXPECT_NE(verbose.err.find("\nerror (undefined_input)"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"factor"}).code, 2);
    EXPECT_EQ(invoke({"decompose", "--budget-terms", "lots"}).code, 2);
    EXPECT_EQ(invoke({"decompose", "-i", "/nonexistent/input.json"}).code, 2);
    auto r = invoke({"expand", "-i", R"({"mode":"sideways"})"});
    EXPECT_EQ(r.code, 2);
}

TEST(Cli, TermBudgetFlag) {
    auto r = invoke({"expand", "-i", sample("expand_pow.json"), "--budget-terms", "1"});
    EXPECT_EQ(r.code, 1);
    EXPECT_EQ(Json::parse(r.err)["error"]["code"], "candidate_budget");
}
