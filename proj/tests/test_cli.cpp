#include "cheb/cli.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

using namespace cheb;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "cheb");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

json strip_elapsed(json j) {
    if (j.is_object()) {
        j.erase("elapsed_s");
        for (auto& [k, v] : j.items()) v = strip_elapsed(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_elapsed(v);
    }
    return j;
}

int shell_exit(const std::string& args) {
    const int status = std::system((std::string(CHEB_CLI_PATH) + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, TableCsv) {
    const auto r = run({"table", "--pmax", "7", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, "p,q_new,q_zhang\n2,3,3\n3,2,2\n5,7,13\n7,17,89\n");
}

TEST(Cli, TableTextRowsAreMethods) {
    const auto r = run({"table", "--pmax", "7", "--format", "text"});
    ASSERT_EQ(r.code, 0);
    std::istringstream in(r.out);
    std::string head, qn, qz;
    std::getline(in, head);
    std::getline(in, qn);
    std::getline(in, qz);
    EXPECT_EQ(head.rfind("p ", 0), 0u);
    EXPECT_NE(qn.find(" 3 2  7 17"), std::string::npos) << qn;
    EXPECT_NE(qz.find(" 3 2 13 89"), std::string::npos) << qz;
}

TEST(Cli, TableJsonCarriesRunFields) {
    const auto j = json::parse(run({"table", "--pmax", "5"}).out);
    EXPECT_EQ(j.at("version"), kVersion);
    EXPECT_TRUE(j.contains("seed"));
    EXPECT_TRUE(j.contains("elapsed_s"));
    EXPECT_EQ(j.at("rows").back().at("bound_new"), "4");
}

TEST(Cli, CounterexampleExitsOne) {
    const auto r = run({"verify-minors", "--p", "11", "--q", "2"});
    ASSERT_EQ(r.code, 1);
    const auto j = json::parse(r.out);
    EXPECT_FALSE(j.at("verified").get<bool>());
    ASSERT_FALSE(j.at("first_violation").is_null());
    EXPECT_TRUE(j.at("oracle_det_zero").get<bool>());
    EXPECT_EQ(j.at("minors_checked"), "705431");
}

TEST(Cli, BudgetRefusal) {
    const auto r = run({"bound", "--p", "13", "--method", "new"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("residue evaluations"), std::string::npos);
    EXPECT_EQ(run({"verify-minors", "--p", "13", "--char0"}).code, 3);
    EXPECT_EQ(run({"real-minors", "--p", "19"}).code, 3);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(run({}).code, 2);
    EXPECT_EQ(run({"nonsense"}).code, 2);
    EXPECT_EQ(run({"bound", "--p", "9"}).code, 2);
    EXPECT_EQ(run({"verify-minors", "--p", "7"}).code, 2);
    EXPECT_EQ(run({"verify-minors", "--p", "7", "--q", "2", "--char0"}).code, 2);
    EXPECT_EQ(run({"verify-minors", "--p", "7", "--q", "7"}).code, 2);
    EXPECT_EQ(run({"identities", "--p", "5", "--exhaustive", "--random", "3"}).code, 2);
    EXPECT_EQ(run({"bound", "--p", "7", "--threads", "0"}).code, 2);
    EXPECT_EQ(run({"bound", "--p", "7", "--domain", "half"}).code, 2);
    EXPECT_EQ(run({"schur", "--p", "7", "--A", "0,1", "--B", "0"}).code, 2);
    EXPECT_EQ(run({"uncertainty", "--p", "5", "--q", "7"}).code, 2);
    EXPECT_EQ(run({"factor", "--p", "7", "--q", "11", "--format", "csv"}).code, 2);
}

TEST(Cli, ExamplesFromTheCommandLine) {
    const auto f = json::parse(run({"factor", "--p", "7", "--q", "2"}).out);
    EXPECT_EQ(f.at("factors").size(), 2u);
    const auto fld = json::parse(run({"field", "--p", "5", "--q", "11", "--omega", "3"}).out);
    EXPECT_EQ(fld.at("fourier_row"), json({"1", "3", "9", "5", "4"}));
    const auto s = json::parse(run({"schur", "--p", "7", "--A", "0,1,3", "--B", "0,2,4", "--q", "2"}).out);
    EXPECT_EQ(s.at("m0"), "1");
    EXPECT_EQ(s.at("coset_mass").at("1"), "2");
    EXPECT_EQ(s.at("coset_mass").at("3"), "0");
    EXPECT_EQ(s.at("s_A_ones"), "3");
    const auto u = run({"uncertainty", "--p", "5", "--q", "11", "--omega", "3"});
    ASSERT_EQ(u.code, 0);
    EXPECT_EQ(json::parse(u.out).at("min_support"), 6);
    const auto fp = json::parse(run({"first-prime", "--p", "7", "--method", "zhang"}).out);
    EXPECT_EQ(fp.at("q"), 89);
    EXPECT_EQ(run({"real-identities", "--p", "13"}).code, 0);
    EXPECT_EQ(run({"identities", "--p", "7", "--q", "2"}).code, 0);
    EXPECT_EQ(run({"verify-classic", "--p", "7"}).code, 0);
}

TEST(Cli, DeterministicAcrossThreadCounts) {
    const std::vector<std::vector<std::string>> cmds{
        {"factor", "--p", "11", "--q", "3"},
        {"field", "--p", "7", "--q", "2"},
        {"schur", "--p", "7", "--A", "0,1,3", "--B", "0,2,4"},
        {"bound", "--p", "11", "--method", "new"},
        {"bound", "--p", "11", "--method", "new", "--domain", "full"},
        {"bound", "--p", "11", "--method", "zhang"},
        {"first-prime", "--p", "11"},
        {"table", "--pmax", "11"},
        {"verify-minors", "--p", "11", "--q", "2"},
        {"verify-minors", "--p", "7", "--q", "17"},
        {"verify-classic", "--p", "11"},
        {"real-minors", "--p", "11"},
        {"real-dct", "--p", "11"},
        {"real-identities", "--p", "11"},
        {"identities", "--p", "7", "--q", "11"},
        {"identities", "--p", "11", "--q", "3", "--random", "100", "--seed", "9"},
        {"uncertainty", "--p", "5", "--q", "11"},
    };
    for (const auto& c : cmds) {
        auto one = c, many = c;
        one.insert(one.end(), {"--threads", "1"});
        many.insert(many.end(), {"--threads", "3"});
        const auto a = run(one), b = run(many);
        ASSERT_EQ(a.code, b.code) << c[0];
        EXPECT_EQ(strip_elapsed(json::parse(a.out)).dump(), strip_elapsed(json::parse(b.out)).dump()) << c[0];
    }
}

TEST(Cli, CacheDirectoryAndEnvironment) {
    const auto dir = std::filesystem::temp_directory_path() / ("cheb-cli-cache-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    const auto first = run({"bound", "--p", "7", "--cache-dir", dir.string()});
    ASSERT_EQ(first.code, 0);
    EXPECT_TRUE(std::filesystem::exists(bound_cache_path(dir, 7, BoundMethod::fresh)));
    auto planted = *load_cached_bound(dir, 7, BoundMethod::fresh);
    planted.value = 30;
    store_bound(dir, planted);
    ::setenv("CHEB_CACHE_DIR", dir.string().c_str(), 1);
    const auto fp = json::parse(run({"first-prime", "--p", "7"}).out);
    ::unsetenv("CHEB_CACHE_DIR");
    EXPECT_EQ(fp.at("bound"), "30");
    EXPECT_EQ(fp.at("q"), 31);
    std::filesystem::remove_all(dir);
}

TEST(Cli, BinaryExitCodes) {
    EXPECT_EQ(shell_exit("table --pmax 5 --format csv"), 0);
    EXPECT_EQ(shell_exit("verify-minors --p 11 --q 2"), 1);
    EXPECT_EQ(shell_exit("verify-minors --p 4 --q 2"), 2);
    EXPECT_EQ(shell_exit("bound --p 13 --method new"), 3);
    EXPECT_EQ(shell_exit("--version"), 0);
}
