#include "mbe/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

namespace mbe {
namespace {

namespace fs = std::filesystem;

const fs::path kFixtures = MBE_FIXTURE_DIR;
const std::string kExample = (kFixtures / ".." / ".." / "fixtures" / "example_s2.mbe").string();

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args)
{
    args.insert(args.begin(), "mbe");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

bool contains(const std::string& haystack, const std::string& needle)
{
    return haystack.find(needle) != std::string::npos;
}

TEST(Cli, ValidateExample)
{
    const Outcome r = run({"validate", kExample});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(r.out.starts_with(
        "order-preserving: yes; simplicial: yes; compatible: yes; Forman-Morse-Bott: yes\n"));
    EXPECT_EQ(r.err, "");
}

struct Golden {
    std::vector<std::string> args;
    std::string file;
};

TEST(Cli, Goldens)
{
    const std::vector<Golden> goldens{
        {{"validate", kExample}, "validate.txt"},
        {{"homology", kExample, "--pairs"}, "homology_pairs.txt"},
        {{"traces", kExample, "--power", "1"}, "traces_g.txt"},
        {{"inequalities", kExample, "--power", "1"}, "inequalities_g.txt"},
        {{"inequalities", kExample, "--identity"}, "inequalities_identity.txt"},
        {{"inequalities", kExample, "--powers", "1..3", "--format", "csv"}, "inequalities_g_powers_1_3.csv"},
        {{"inequalities", kExample, "--identity", "--format", "csv"}, "inequalities_identity.csv"},
        {{"inequalities", kExample, "--format", "json"}, "inequalities_g.json"},
    };
    for (const Golden& g : goldens) {
        const Outcome r = run(g.args);
        EXPECT_EQ(r.code, kExitOk) << g.file << "\n" << r.err;
        EXPECT_EQ(r.out, slurp(kFixtures / "golden" / g.file)) << g.file;
    }
}

// Each negative fixture states its exit code, the diagnostic it targets and
// the summary flag that must read "no".
TEST(Cli, NegativeCorpus)
{
    int files = 0;
    const std::regex header(R"(# (expect-exit|expect|expect-yes-no): (.*))");
    for (const auto& entry : fs::directory_iterator(kFixtures / "negative")) {
        std::ifstream in(entry.path());
        std::string line;
        int exit_code = -1;
        std::vector<std::string> diagnostics;
        std::vector<std::string> flags;
        std::smatch m;
        while (std::getline(in, line) && std::regex_match(line, m, header)) {
            if (m[1] == "expect-exit") exit_code = std::stoi(m[2]);
            if (m[1] == "expect") diagnostics.push_back(m[2]);
            if (m[1] == "expect-yes-no") flags.push_back(m[2]);
        }
        ASSERT_EQ(exit_code, kExitValidation) << entry.path();
        ASSERT_FALSE(diagnostics.empty()) << entry.path();
        const Outcome r = run({"validate", entry.path().string()});
        EXPECT_EQ(r.code, exit_code) << entry.path();
        for (const std::string& d : diagnostics) EXPECT_TRUE(contains(r.err, d)) << entry.path() << "\n" << r.err;
        for (const std::string& f : flags) EXPECT_TRUE(contains(r.out, f)) << entry.path() << "\n" << r.out;

        const Outcome ineq = run({"inequalities", entry.path().string()});
        EXPECT_EQ(ineq.code, kExitValidation) << entry.path();
        EXPECT_TRUE(contains(ineq.err, "validation failed")) << entry.path();
        ++files;
    }
    EXPECT_GE(files, 10);
}

TEST(Cli, MalformedInputIsAUsageError)
{
    for (const auto& entry : fs::directory_iterator(kFixtures / "malformed")) {
        const std::string text = slurp(entry.path());
        const std::string expected = text.substr(10, text.find('\n') - 10);  // after "# expect: "
        const Outcome r = run({"validate", entry.path().string()});
        EXPECT_EQ(r.code, kExitUsage) << entry.path();
        EXPECT_TRUE(contains(r.err, expected)) << entry.path() << "\n" << r.err;
    }
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run({}).code, kExitUsage);
    EXPECT_EQ(run({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(run({"validate", "/nonexistent/file.mbe"}).code, kExitUsage);
    EXPECT_EQ(run({"inequalities", kExample, "--format", "xml"}).code, kExitUsage);
    EXPECT_EQ(run({"inequalities", kExample, "--powers", "3..1"}).code, kExitUsage);
    EXPECT_EQ(run({"inequalities", kExample, "--power", "0"}).code, kExitUsage);
    EXPECT_EQ(run({"lemma", kExample, "--L", "[v0,v1,v2]"}).code, kExitUsage);
    EXPECT_EQ(run({"lemma", kExample, "--L", "[v0,v9]", "--J", ""}).code, kExitUsage);

    const Outcome help = run({"--help"});
    EXPECT_EQ(help.code, kExitOk);
    EXPECT_TRUE(contains(help.out, "inequalities"));
}

TEST(Cli, MissingFunctionIsAUsageError)
{
    const fs::path path = fs::temp_directory_path() / "mbe_cli_no_f.mbe";
    std::ofstream(path) << "vertex a\nvertex b\nsimplex a b\n";
    const Outcome r = run({"inequalities", path.string()});
    EXPECT_EQ(r.code, kExitUsage);
    EXPECT_EQ(run({"homology", path.string()}).code, kExitOk);
    fs::remove(path);
}

TEST(Cli, ClosureWarningsGoToStderr)
{
    const fs::path path = fs::temp_directory_path() / "mbe_cli_closure.mbe";
    std::ofstream(path) << "vertex v0\nsimplex v0 v1\n";
    const Outcome r = run({"homology", path.string()});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(contains(r.err, "warning: line 2: vertex v1 was not declared")) << r.err;
    EXPECT_TRUE(contains(r.out, "H_*(K): ")) << r.out;
    fs::remove(path);
}

TEST(Cli, ExploratoryReportsAnInvalidFunction)
{
    const std::string path = (kFixtures / "negative" / "acyclic_block.mbe").string();
    const Outcome r = run({"inequalities", path, "--exploratory"});
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_TRUE(contains(r.out, "WARNING: unvalidated function")) << r.out;
    EXPECT_TRUE(contains(r.err, "not Forman-Morse-Bott")) << r.err;
}

TEST(Cli, Lefschetz)
{
    for (const char* l : {"1", "2", "5"}) {
        const Outcome r = run({"lefschetz", kExample, "--power", l});
        EXPECT_EQ(r.code, kExitOk);
        EXPECT_EQ(r.out, std::string("Lefschetz number of g^") + l +
                             " = 1\nalternating sum of local traces = 1\n");
    }
}

TEST(Cli, Lemma)
{
    const Outcome r = run({"lemma", kExample, "--L", "[v0,v1,v2]", "--J", "v2"});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_TRUE(contains(r.out, "j=2: 0 ≤ 0 (equality required)")) << r.out;

    const Outcome single = run({"lemma", kExample, "--L", "[v0,v1,v2]", "--J", "v2", "--j", "1"});
    EXPECT_EQ(single.code, kExitOk);
    EXPECT_EQ(single.out, "j=1: 0 ≤ 0; trace on the image of the connecting map = 0\n");

    // [v3,v4] is not invariant: g sends it to [v2,v1].
    const Outcome bad = run({"lemma", kExample, "--L", "[v3,v4]", "--J", ""});
    EXPECT_EQ(bad.code, kExitValidation) << bad.out << bad.err;
}

TEST(Cli, Selftest)
{
    const Outcome r = run({"selftest", "--trials", "20", "--seed", "7"});
    EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
    EXPECT_TRUE(contains(r.out, "theorem violations: 0")) << r.out;
    EXPECT_TRUE(contains(r.out, "selftest passed")) << r.out;
}

}  // namespace
}  // namespace mbe
