#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "monolab/cli.hpp"

using namespace monolab;
using namespace monolab::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

json parse(const Result& r) { return json::parse(r.out); }

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / "monolab_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(PSpec, Forms) {
    EXPECT_EQ(parse_p_spec("2.5"), std::vector<double>{2.5});
    EXPECT_EQ(parse_p_spec("1.1:1.9:0.1"), (std::vector<double>{1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7, 1.8, 1.9}));
    EXPECT_EQ(parse_p_spec("2:4:0.5"), (std::vector<double>{2, 2.5, 3, 3.5, 4}));
    EXPECT_EQ(parse_p_spec("3,1.5"), (std::vector<double>{3, 1.5}));
    for (const char* bad : {"", "x", "1:2", "2:1:0.1", "1:2:0", "1,", "1.5abc", "inf"})
        EXPECT_THROW(parse_p_spec(bad), UsageError) << bad;
}

TEST(Config, JsonRoundTrip) {
    RunConfig c;
    c.command = "sharp";
    c.family = "zygmund";
    c.alpha = -0.3;
    c.p_spec = "1.1:1.9:0.1";
    c.claims = {"p-small-lower"};
    c.out = "x.csv";
    c.format = "csv";
    c.seed = 7;
    c.threads = 3;
    c.domain.n_lambda = 9;
    c.domain.include_axes = false;
    c.refine = false;
    c.path = "eta=c*xi";
    EXPECT_EQ(config_from_json(json::parse(to_json(c).dump())), c);
    EXPECT_EQ(config_from_json(json::object()), RunConfig{});
    EXPECT_THROW(config_from_json(json{{"seed", "abc"}}), UsageError);
    EXPECT_THROW(config_from_json(json::array()), UsageError);
}

TEST(Cli, IndicesPower) {
    const auto r = run_cli({"indices", "--family", R"({"family":"power","p":2.5})"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto j = parse(r);
    EXPECT_NEAR(j["indices"]["i_G"].get<double>(), 2.5, 1e-14);
    EXPECT_NEAR(j["indices"]["s_G"].get<double>(), 2.5, 1e-14);
}

TEST(Cli, IndicesZygmundHasLimitMarkers) {
    const auto r = run_cli({"indices", "--family", R"({"family":"zygmund","p":2,"alpha":1})"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto j = parse(r);
    EXPECT_NEAR(j["indices"]["i_G"].get<double>(), 2, 1e-6);
    EXPECT_EQ(j["indices"]["inf"]["limits"], json::parse(R"(["t->0","t->inf"])"));
    const auto named = run_cli({"indices", "--family", "zygmund", "--p", "2", "--alpha", "1"});
    ASSERT_EQ(named.code, kOk);
    EXPECT_EQ(named.out, r.out);
}

TEST(Cli, IndicesCsv) {
    const auto r = run_cli({"indices", "--family", "power", "--p", "3", "--format", "csv"});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(r.out.rfind("i_G,s_G,", 0), 0u);
    EXPECT_EQ(count_lines(r.out), 2u);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run_cli({"indices", "--family", "{\"family\":\"power\",\"p\":"}).code, kUsage);
    EXPECT_EQ(run_cli({"indices", "--family", "power"}).code, kUsage);
    EXPECT_EQ(run_cli({"indices", "--family", "zygmund", "--p", "2"}).code, kUsage);
    EXPECT_EQ(run_cli({"indices"}).code, kUsage);
    EXPECT_EQ(run_cli({}).code, kUsage);
    EXPECT_EQ(run_cli({"frobnicate"}).code, kUsage);
    EXPECT_EQ(run_cli({"indices", "--family", "power", "--p", "2", "--format", "xml"}).code, kUsage);
    EXPECT_EQ(run_cli({"indices", "--family", "power", "--p", "2", "--n-r", "0"}).code, kUsage);
    EXPECT_EQ(run_cli({"indices", "--config", "/nonexistent/monolab.json"}).code, kUsage);
    EXPECT_EQ(run_cli({"check"}).code, kUsage);
    EXPECT_EQ(run_cli({"probe", "--p", "1,2"}).code, kUsage);
    EXPECT_EQ(run_cli({"probe", "--p", "1", "--path", "sideways"}).code, kUsage);
}

TEST(Cli, HelpDocumentsPrecedence) {
    const auto r = run_cli({"--help"});
    EXPECT_EQ(r.code, kOk);
    EXPECT_NE(r.out.find("Precedence"), std::string::npos);
    EXPECT_NE(r.out.find("MONOLAB_THREADS"), std::string::npos);
}

TEST(Cli, CheckUnknownIdListsValidIds) {
    const auto r = run_cli({"check", "--claim", "lem:nope"});
    EXPECT_EQ(r.code, kUsage);
    for (const auto& c : registry()) EXPECT_NE(r.err.find(c.id), std::string::npos) << c.id;
}

TEST(Cli, CheckCounterexample) {
    const auto r = run_cli({"check", "--claim", "rem:ce.counterexample", "--p", "2.5"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto rep = parse(r)["reports"][0];
    EXPECT_EQ(rep["status"], "pass");
    ASSERT_EQ(rep["worst_points"].size(), 1u);
    EXPECT_EQ(rep["worst_points"][0]["s"], 0.0);
    EXPECT_GT(rep["measured"]["violation_ratio@p=2.5"].get<double>(), 1);
}

TEST(Cli, CheckSuperquadraticNotApplicable) {
    const auto r = run_cli({"check", "--claim", "coro:superquadratic", "--family", "power", "--p", "1.5"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto j = parse(r);
    EXPECT_EQ(j["reports"][0]["status"], "not_applicable");
    EXPECT_EQ(j["summary"]["not_applicable"], 1);
}

TEST(Cli, CheckAllPowerOneAndHalf) {
    const auto out = scratch("all_p15.json");
    const auto r = run_cli({"check", "--all", "--family", "power", "--p", "1.5", "--out", out.string()});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto j = json::parse(slurp(out));
    EXPECT_EQ(j["summary"]["total"], registry().size());
    EXPECT_EQ(j["summary"]["fail"], 0);
    for (const auto& rep : j["reports"]) EXPECT_NE(rep["status"], "fail") << rep["claim_id"];
}

TEST(Cli, CheckCsvFormat) {
    const auto r = run_cli({"check", "--claim", "lem:t-p.scalar", "--format", "csv"});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(r.out.rfind("claim_id,status,key,value\n", 0), 0u);
    EXPECT_NE(r.out.find("lem:t-p.scalar,pass,violations,0"), std::string::npos);
}

TEST(Cli, SharpSmallLowerToCsv) {
    const auto out = scratch("c1.csv");
    fs::remove(out);
    const auto r = run_cli({"sharp", "--claim", "p-small-lower", "--p", "1.1:1.9:0.1", "--out", out.string()});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto text = slurp(out);
    ASSERT_EQ(count_lines(text), 10u);
    std::istringstream is(text);
    std::string line;
    std::getline(is, line);
    EXPECT_EQ(line.rfind("p,estimated,reference,deviation", 0), 0u);
    while (std::getline(is, line)) {
        std::vector<std::string> cols;
        std::stringstream ls(line);
        for (std::string c; std::getline(ls, c, ',');) cols.push_back(c);
        ASSERT_GE(cols.size(), 5u);
        EXPECT_LE(std::abs(std::stod(cols[3])), kSharpTolerance) << line;
        EXPECT_EQ(cols[4], "false");
    }
}

TEST(Cli, SharpLargeLowerReferences) {
    const auto r = run_cli({"sharp", "--claim", "p-large-lower", "--p", "2:4:0.5"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto rows = parse(r)["rows"];
    ASSERT_EQ(rows.size(), 5u);
    for (const auto& row : rows) {
        const double p = row["p"].get<double>();
        EXPECT_DOUBLE_EQ(row["reference"].get<double>(), std::pow(2.0, 2 - p));
        EXPECT_FALSE(row["flagged"].get<bool>());
    }
}

TEST(Cli, SharpRangeViolation) {
    const auto r = run_cli({"sharp", "--claim", "p-small-lower", "--p", "2.5:3:0.5"});
    EXPECT_EQ(r.code, kUsage);
    EXPECT_NE(r.err.find("p-small-lower"), std::string::npos);
    EXPECT_NE(r.err.find(sharp_claim_range(SharpClaim::PSmallLower)), std::string::npos);
    EXPECT_EQ(run_cli({"sharp", "--claim", "nope", "--p", "2"}).code, kUsage);
}

TEST(Cli, ProbeSmallPGrows) {
    const auto r = run_cli({"probe", "--p", "0.5"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto rows = parse(r)["rows"];
    ASSERT_GE(rows.size(), 2u);
    for (std::size_t i = 1; i < rows.size(); ++i)
        EXPECT_GT(std::abs(rows[i]["ratio"].get<double>()), std::abs(rows[i - 1]["ratio"].get<double>()));
}

TEST(Cli, ProbePOneFlagsZeroNumerator) {
    const auto r = run_cli({"probe", "--p", "1", "--format", "csv"});
    ASSERT_EQ(r.code, kOk) << r.err;
    std::istringstream is(r.out);
    std::string line;
    std::getline(is, line);
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        EXPECT_EQ(line.substr(line.size() - 4), "true") << line;
    }
    EXPECT_EQ(rows, default_probe_cs().size());
}

TEST(Cli, ProbeControlBounded) {
    for (const char* path : {"xi=c*eta", "eta=c*xi"}) {
        const auto r = run_cli({"probe", "--p", "1.5", "--path", path});
        ASSERT_EQ(r.code, kOk) << r.err;
        for (const auto& row : parse(r)["rows"]) {
            const double v = row["ratio"].get<double>();
            EXPECT_GE(v, 1 / std::sqrt(2.0) * (1 - 1e-12));
            EXPECT_LE(v, std::sqrt(2.0) * (1 + 1e-12));
        }
    }
}

TEST(Cli, ConfigPrecedence) {
    const auto cfg = scratch("cfg.json");
    {
        std::ofstream f(cfg);
        f << R"({"family": {"family":"power","p":3}, "format": "csv", "domain": {"n_lambda": 5}})";
    }
    const auto from_cfg = run_cli({"indices", "--config", cfg.string()});
    ASSERT_EQ(from_cfg.code, kOk) << from_cfg.err;
    EXPECT_EQ(from_cfg.out.rfind("i_G,s_G", 0), 0u);
    const auto flag_wins = run_cli({"indices", "--config", cfg.string(), "--format", "json"});
    ASSERT_EQ(flag_wins.code, kOk);
    EXPECT_NEAR(parse(flag_wins)["indices"]["i_G"].get<double>(), 3, 1e-13);
    const auto family_flag = run_cli({"indices", "--config", cfg.string(), "--family", "power", "--p", "1.5"});
    ASSERT_EQ(family_flag.code, kOk);
    EXPECT_NEAR(std::stod(family_flag.out.substr(family_flag.out.find('\n') + 1)), 1.5, 1e-13);

    const auto bad = scratch("bad.json");
    {
        std::ofstream f(bad);
        f << "{ not json";
    }
    EXPECT_EQ(run_cli({"indices", "--config", bad.string()}).code, kUsage);
}

TEST(Cli, OutputIsByteIdenticalAcrossRunsAndThreads) {
    const std::vector<std::string> base{"sharp", "--claim", "p-large-lower", "--p", "2.5,3", "--n-r", "9", "--n-s", "9"};
    auto with = [&](const char* t) {
        auto a = base;
        a.push_back("--threads");
        a.push_back(t);
        return run_cli(a);
    };
    const auto a = with("1"), b = with("1"), c = with("3");
    ASSERT_EQ(a.code, kOk) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
    const auto x = run_cli({"check", "--claim", "lem:VG.identity", "--seed", "5", "--threads", "1"});
    const auto y = run_cli({"check", "--claim", "lem:VG.identity", "--seed", "5", "--threads", "2"});
    EXPECT_EQ(x.out, y.out);
}

TEST(Cli, ThreadsFromEnvironment) {
    ::setenv("MONOLAB_THREADS", "2", 1);
    const auto r = run_cli({"probe", "--p", "2"});
    ::unsetenv("MONOLAB_THREADS");
    EXPECT_EQ(r.code, kOk);
}

#ifdef MONOLAB_CLI_BINARY
TEST(CliBinary, ExitCodes) {
    const std::string bin = MONOLAB_CLI_BINARY;
    auto status = [](const std::string& cmd) {
        const int s = std::system((cmd + " >/dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    EXPECT_EQ(status(bin + " indices --family power --p 2"), 0);
    EXPECT_EQ(status(bin + " indices --family '{\"family\":'"), 2);
    EXPECT_EQ(status(bin + " sharp --claim p-small-lower --p 2.5:3:0.5"), 2);
}
#endif
