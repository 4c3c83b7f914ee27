#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "cli.hpp"

namespace {

namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "reflbound");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int code = reflbound::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("reflbound_cli_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Cli, OrbifoldCrosscap)
{
    const auto r = run({"orbifold", "--symbol", "3x"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("supergroup (*6,2,2)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("index 4"), std::string::npos);
    EXPECT_NE(r.out.find("-2:1-> (6*) -2:1-> (*6,2,2)"), std::string::npos) << r.out;
}

TEST(Cli, OrbifoldJson)
{
    const auto r = run({"orbifold", "--symbol", "3*2", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["supergroup"], "(*4,3,2)");
    EXPECT_EQ(j["index"], 2);
    EXPECT_EQ(j["order"], 24);
    EXPECT_EQ(j["supergroup_order"], 48);
    EXPECT_EQ(j["verified"], true);
}

TEST(Cli, OrbifoldTrivialAndAll)
{
    EXPECT_EQ(run({"orbifold", "--symbol", ""}).code, 0);
    const auto all = run({"orbifold", "--all", "--max-order", "6", "--format", "csv"});
    EXPECT_EQ(all.code, 0);
    EXPECT_NE(all.out.find("x,1,2,*222,8,4"), std::string::npos) << all.out;
}

TEST(Cli, OrbifoldUsageErrors)
{
    EXPECT_EQ(run({"orbifold", "--symbol", "*237"}).code, 2);
    EXPECT_EQ(run({"orbifold", "--symbol", "**"}).code, 2);
    EXPECT_EQ(run({"orbifold"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
}

TEST(Cli, Chain)
{
    const auto r = run({"chain"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("631.65468167"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("= 64 pi^2"), std::string::npos) << r.out;

    const auto j = nlohmann::json::parse(run({"chain", "--format", "json"}).out);
    EXPECT_NEAR(j["vol_bound"].get<double>(), 631.654681669719, 1e-9);
    EXPECT_EQ(j["index_bound"], 4);
    EXPECT_DOUBLE_EQ(j["lambda_min"].get<double>(), 0.75);

    EXPECT_EQ(run({"chain", "--lambda-min", "0"}).code, 2);
    EXPECT_EQ(run({"chain", "--index-bound", "0"}).code, 2);
}

TEST(Cli, VerifyHatcher)
{
    const auto r = run({"verify-hatcher"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("all 16 discriminants pass"), std::string::npos);

    const auto tight = run({"verify-hatcher", "--cutoff", "0.01"});
    EXPECT_EQ(tight.code, 1);
    EXPECT_NE(tight.out.find("FAILED"), std::string::npos);
}

TEST(Cli, ScanCsvSchema)
{
    const auto r = run({"scan", "--min-disc", "-100", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    EXPECT_EQ(header, "d,h,w,L2,L2_err,zeta_k2,borel_lower,passes_exact,passes_crude");
    std::string first;
    std::getline(lines, first);
    EXPECT_EQ(first.rfind("-3,1,6,0.781302412", 0), 0u) << first;
    int rows = 1;
    for (std::string line; std::getline(lines, line);) {
        ++rows;
    }
    EXPECT_EQ(rows, 31);
    // Progress is on stderr only.
    EXPECT_NE(r.err.find("scanned"), std::string::npos);
    EXPECT_EQ(r.out.find("scanned"), std::string::npos);
}

TEST(Cli, EmptyScanIsHeaderOnly)
{
    const auto r = run({"scan", "--min-disc", "-10", "--max-disc", "-9", "--format", "csv"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "d,h,w,L2,L2_err,zeta_k2,borel_lower,passes_exact,passes_crude\n");
}

TEST(Cli, ScanDeterministicAcrossThreadCounts)
{
    const auto a = run({"scan", "--min-disc", "-2000", "--tol", "1e-6", "--format", "json"});
    const auto b = run({"scan", "--min-disc", "-2000", "--tol", "1e-6", "--format", "json",
                        "--parallel", "4"});
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    const auto j = nlohmann::json::parse(a.out);
    EXPECT_EQ(j["records"][0]["d"], -3);
    EXPECT_EQ(j["records"][0]["w"], 6);
}

TEST(Cli, ScanUsageAndComputationalFailures)
{
    EXPECT_EQ(run({"scan", "--min-disc", "-10", "--max-disc", "5"}).code, 2);
    EXPECT_EQ(run({"scan", "--min-disc", "-3", "--max-disc", "-10"}).code, 2);
    EXPECT_EQ(run({"scan", "--tol", "-1"}).code, 2);
    EXPECT_EQ(run({"scan", "--format", "xml"}).code, 2);
    // L-series budget exhausted.
    EXPECT_EQ(run({"scan", "--min-disc", "-50", "--tol", "1e-30"}).code, 3);
}

TEST(Cli, OutputFileAndIoFailure)
{
    const auto dir = scratch("out");
    const auto path = dir / "chain.csv";
    const auto r = run({"chain", "--format", "csv", "--out", path.string()});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_EQ(slurp(path).rfind("lambda_min,vc_sphere3,index_bound", 0), 0u);

    EXPECT_EQ(run({"chain", "--out", (dir / "missing" / "x.csv").string()}).code, 3);
}

TEST(Cli, SpectrumJsonRecord)
{
    const auto r = run({"spectrum", "--depth", "3", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    for (const char* key : {"depth", "n_vertices", "area", "eigenvalues", "lambda1",
                            "multiplicity1", "slack"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["depth"], 3);
    EXPECT_EQ(j["n_vertices"], 642);
    EXPECT_EQ(j["multiplicity1"], 3);
    EXPECT_EQ(j["eigenvalues"].size(), 5u);
}

TEST(Cli, SpectrumExitCodes)
{
    EXPECT_EQ(run({"spectrum", "--depth", "9"}).code, 2);
    EXPECT_EQ(run({"spectrum", "--depth", "3", "--max-iter", "1"}).code, 3);
    // A conformal volume far too small makes the check fail.
    EXPECT_EQ(run({"spectrum", "--depth", "2", "--conf-vol", "1"}).code, 1);
}

TEST(Cli, SpectrumMeshRoundTrip)
{
    const auto dir = scratch("mesh");
    const auto mesh = dir / "ico.txt";
    const auto a = run({"spectrum", "--depth", "2", "--export-mesh", mesh.string(), "--format",
                        "json"});
    ASSERT_EQ(a.code, 0) << a.err;
    const auto b = run({"spectrum", "--mesh", mesh.string(), "--format", "json"});
    ASSERT_EQ(b.code, 0) << b.err;
    const auto ja = nlohmann::json::parse(a.out);
    const auto jb = nlohmann::json::parse(b.out);
    EXPECT_EQ(ja["lambda1"], jb["lambda1"]);
    EXPECT_EQ(ja["area"], jb["area"]);
}

TEST(Cli, CheckpointResumeIsByteIdentical)
{
    const auto dir = scratch("checkpoint");
    const std::vector<std::string> args = {"scan", "--min-disc", "-12000", "--tol", "1e-5",
                                           "--format", "csv"};
    const auto fresh = run(args);
    ASSERT_EQ(fresh.code, 0);

    ::setenv(reflbound::cli::checkpoint_env, dir.c_str(), 1);
    const auto first = run(args);
    ASSERT_EQ(first.code, 0);
    EXPECT_EQ(first.out, fresh.out);
    const std::string ck = slurp(dir / "scan.checkpoint");
    EXPECT_NE(ck.find("\n12000\n"), std::string::npos) << ck;

    // Simulate an interruption after the first chunk.
    {
        std::ofstream rewind(dir / "scan.checkpoint", std::ios::trunc);
        rewind << ck.substr(0, ck.find('\n')) << "\n5002\n";
        std::istringstream rows(slurp(dir / "scan_partial.csv"));
        std::ostringstream kept;
        for (std::string line; std::getline(rows, line);) {
            if (line[0] == 'd' || std::stoll(line.substr(0, line.find(','))) >= -5002) {
                kept << line << '\n';
            }
        }
        std::ofstream partial(dir / "scan_partial.csv", std::ios::trunc);
        partial << kept.str();
    }
    const auto resumed = run(args);
    ::unsetenv(reflbound::cli::checkpoint_env);
    ASSERT_EQ(resumed.code, 0);
    EXPECT_NE(resumed.err.find("resuming scan after |d| = 5002"), std::string::npos);
    EXPECT_EQ(resumed.out, fresh.out);
}

TEST(Cli, HelpMentionsFlags)
{
    const auto r = run({"scan", "--help"});
    EXPECT_EQ(r.code, 0);
    for (const char* flag : {"--min-disc", "--max-disc", "--cutoff", "--tol", "--parallel",
                             "--out", "--format", "REFLBOUND_CHECKPOINT_DIR"}) {
        EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
    }
    const auto s = run({"spectrum", "--help"});
    for (const char* flag : {"--depth", "--k", "--tol"}) {
        EXPECT_NE(s.out.find(flag), std::string::npos) << flag;
    }
    EXPECT_NE(run({"orbifold", "--help"}).out.find("--symbol"), std::string::npos);
}

} // namespace
