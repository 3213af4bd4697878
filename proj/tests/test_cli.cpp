#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace lieid;
using lieid::cli::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "lieid");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
    args.push_back("--json");
    const auto r = run(std::move(args));
    return json::parse(r.out);
}

std::string write_temp(const std::string& name, const std::string& text) {
    const std::string path = testing::TempDir() + name;
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST(Cli, VerifyExamples) {
    auto r = run({"verify", "(x1 x2)(x3 x4) x5"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("identity: true"), std::string::npos);
    r = run({"verify", "x1 x2 x3", "--algebra", "sl2"});
    EXPECT_EQ(r.code, cli::kOk);
    r = run({"verify", "x1 x2"});
    EXPECT_EQ(r.code, cli::kCheckFailed);
    EXPECT_NE(r.out.find("identity: false"), std::string::npos);
}

TEST(Cli, VerifyErrorsHaveDistinctCodes) {
    EXPECT_EQ(run({"verify", "x1 +"}).code, cli::kInputError);
    EXPECT_EQ(run({"verify", "x1 x2", "--algebra", "gl3"}).code, cli::kInputError);
    EXPECT_EQ(run({"verify", "x1 x2 x3 x4 x5 x6 x7 x8 x9"}).code, cli::kCapExceeded);
    EXPECT_EQ(run({"verify", "x1 x2 x3 x4 x5", "--max-total-degree", "4"}).code, cli::kCapExceeded);
    set_degree_cap(detail::kDefaultDegreeCap);
    EXPECT_EQ(run({"frobnicate"}).code, cli::kInputError);
    EXPECT_EQ(run({}).code, cli::kInputError);
}

TEST(Cli, VerifyJsonPerComponent) {
    const auto j = run_json({"verify", "(x1 x2)(x3 x4) x5 + x1 x2"});
    EXPECT_EQ(j["command"], "verify");
    EXPECT_FALSE(j["identity"].get<bool>());
    ASSERT_EQ(j["components"].size(), 2u);
    EXPECT_FALSE(j["components"][0]["identity"].get<bool>());
    EXPECT_TRUE(j["components"][1]["identity"].get<bool>());
    EXPECT_TRUE(j.contains("elapsed_seconds"));
}

TEST(Cli, IdentitiesWithBasis) {
    const auto j = run_json({"identities", "--multidegree", "1,1,1,1", "--basis"});
    EXPECT_EQ(j["dimension"], 1);
    EXPECT_EQ(j["component_dimension"], 6);
    ASSERT_EQ(j["basis"].size(), 1u);
    const LiePoly b = expr::parse(j["basis"][0].get<std::string>());
    EXPECT_TRUE(equivalent(b, tideal::make_fn(4).poly));
    EXPECT_EQ(run({"identities", "--multidegree", "1,x"}).code, cli::kInputError);
    EXPECT_EQ(run({"identities", "--multidegree", "0,0"}).code, cli::kInputError);
}

TEST(Cli, Consequences) {
    const auto path = write_temp("cli_rel.gens", "# relation\npolarize: on\n(x1 x2)(x3 x4) x5\n");
    const auto j = run_json({"consequences", "--gens", path, "--multidegree", "1,1,1,1,1"});
    EXPECT_EQ(j["dimension"], 14);
    EXPECT_TRUE(j["contained_in_identities"].get<bool>());
    EXPECT_FALSE(j["equals_identities"].get<bool>());
    EXPECT_EQ(run({"consequences", "--gens", "/nonexistent.gens", "--multidegree", "1,1"}).code, cli::kInputError);
    const auto bad = write_temp("cli_bad.gens", "x1 x2\n(x1\n");
    const auto r = run({"consequences", "--gens", bad, "--multidegree", "1,1"});
    EXPECT_EQ(r.code, cli::kInputError);
    EXPECT_NE(r.err.find("line 2"), std::string::npos);
}

TEST(Cli, CheckTheorem) {
    const auto r = run({"check-theorem", "--max-total-degree", "5"});
    EXPECT_EQ(r.code, cli::kOk);
    EXPECT_NE(r.out.find("all components equal"), std::string::npos);
    const auto j = run_json({"check-theorem", "--max-total-degree", "4"});
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_EQ(j["components"].size(), 1u + 2u + 3u + 5u);
    EXPECT_EQ(run({"check-theorem", "--max-total-degree", "9"}).code, cli::kCapExceeded);
}

TEST(Cli, Lemmas) {
    const auto j = run_json({"lemmas", "--run", "LFid2"});
    EXPECT_TRUE(j["passed"].get<bool>());
    int nonmembership = 0;
    for (const auto& c : j["checks"])
        if (c["name"].get<std::string>().find("outside") != std::string::npos) ++nonmembership;
    EXPECT_EQ(nonmembership, 2);
    EXPECT_EQ(run({"lemmas", "--run", "L1e2,Lfact2"}).code, cli::kOk);
    EXPECT_EQ(run({"lemmas", "--run", "Nope"}).code, cli::kInputError);
}

TEST(Cli, Normalize) {
    auto r = run({"normalize", "x3 x1 x2 + x2 x3 x1 + x1 x2 x3"});
    EXPECT_EQ(r.out, "x1 x2 x3 + x2 x3 x1 + x3 x1 x2\n");
    r = run({"normalize", "x1 x2 + x1 x2"});
    EXPECT_EQ(r.out, "0\n");
    r = run({"normalize", "x0"});
    EXPECT_EQ(r.code, cli::kInputError);
    const auto j = run_json({"normalize", "((x1 x2) x3)"});
    EXPECT_EQ(j["normalized"], "x1 x2 x3");
}

TEST(Cli, JsonIsDeterministic) {
    auto strip = [](json j) {
        j.erase("elapsed_seconds");
        return j.dump();
    };
    const auto a = run_json({"identities", "--multidegree", "2,2,1", "--basis"});
    const auto b = run_json({"identities", "--multidegree", "2,2,1", "--basis"});
    EXPECT_EQ(strip(a), strip(b));
}
