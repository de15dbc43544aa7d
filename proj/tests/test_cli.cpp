#include <gtest/gtest.h>

#include <sstream>

#include "gfpoints/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = gfp::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, SolveFirstLine) {
    const auto r = run({"solve", "--family", "f1", "--a", "1", "--b", "1", "--c", "2", "--count", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out, "{\"x\":\"-1\",\"y\":\"-16\",\"z\":\"4\",\"n\":1}\n");
}

TEST(Cli, Curve) {
    const auto r = run({"curve", "--family", "f2", "--a", "1", "--b", "1", "--c", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(r.out,
              "{\"A\":\"-3\",\"B\":\"-1\",\"delta_paper\":\"81\",\"classification\":{\"kind\":\"nonsingular\","
              "\"rank_status\":\"positive-rank-certified\",\"witness\":{\"X\":\"-1\",\"Y\":\"-1\"}},"
              "\"seeds\":[{\"X\":\"-1\",\"Y\":\"-1\"}]}\n");
    const auto d = run({"curve", "--family", "f1", "--a", "1", "--b", "2", "--c", "1"});
    EXPECT_EQ(d.code, 0);
    EXPECT_NE(d.out.find("\"case\":\"f1-4ac\""), std::string::npos);
}

TEST(Cli, VerifyExitCodes) {
    EXPECT_EQ(run({"verify", "--family", "f1", "--a", "1", "--b", "1", "--c", "2", "--x", "-1", "--y", "-16", "--z", "4"})
                  .out,
              "valid\n");
    const auto bad = run({"verify", "--family", "f1", "--a", "1", "--b", "1", "--c", "2", "--x=-1/2", "--y", "-16",
                          "--z", "4"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_EQ(bad.out.rfind("invalid:", 0), 0u);
    EXPECT_EQ(run({"verify", "--family", "f1", "--a", "1", "--b", "1", "--c", "2", "--x", "1.5", "--y", "1", "--z", "1"})
                  .code,
              2);
    EXPECT_EQ(run({"verify", "--family", "f7", "--a", "1", "--b", "1", "--c", "2", "--x", "1", "--y", "1", "--z", "1"})
                  .code,
              2);
    EXPECT_EQ(run({"verify", "--family", "f1"}).code, 2);
    EXPECT_EQ(run({}).code, 2);
}

TEST(Cli, VerifyGenericSierpinski) {
    EXPECT_EQ(run({"verify-generic", "--g", "x^2 + y^2 - z^2", "--f", "1/2*t^2 + 1/2*t", "--x", "132", "--y", "143",
                   "--z", "164"})
                  .code,
              0);
    EXPECT_EQ(run({"verify-generic", "--strict", "--g", "x^2 + y^2 - z^2", "--f", "1/2*t^2 + 1/2*t", "--x", "132",
                   "--y", "143", "--z", "164"})
                  .code,
              1);
    EXPECT_EQ(run({"verify-generic", "--g", "x^2 + w", "--f", "t", "--x", "1", "--y", "1", "--z", "1"}).code, 2);
}

TEST(Cli, Torsion) {
    EXPECT_EQ(run({"torsion", "--A", "54", "--B", "189", "--X", "6", "--Y", "27"}).out, "{\"order\":4}\n");
    EXPECT_EQ(run({"torsion", "--A", "540", "--B", "3456", "--X", "12", "--Y", "108"}).out,
              "{\"order\":null,\"certificate\":\"non-torsion (Mazur bound)\"}\n");
    EXPECT_EQ(run({"torsion", "--A", "0", "--B", "1", "--X", "1", "--Y", "1"}).code, 1);
}

TEST(Cli, Param) {
    EXPECT_EQ(run({"param", "--family", "f1", "--case", "f1-4ac", "--a", "1", "--b", "2", "--c", "1", "--t", "1"}).out,
              "{\"x\":\"-25/18\",\"y\":\"-1/8\",\"z\":\"-5/12\"}\n");
    EXPECT_EQ(run({"param", "--family", "f2", "--case", "f2-2ac", "--a", "2", "--b", "2", "--c", "1", "--t", "1"}).out,
              "{\"x\":\"-1/3\",\"y\":\"1\",\"z\":\"-1\"}\n");
    EXPECT_EQ(
        run({"param", "--family", "f4", "--case", "f4-ac", "--a", "1", "--b", "1", "--c", "1", "--t", "-1/2"}).code, 1);
    EXPECT_EQ(run({"param", "--family", "f4", "--case", "f9", "--a", "1", "--b", "1", "--c", "1", "--t", "1"}).code, 2);
}

TEST(Cli, Catalog) {
    const auto r = run({"catalog", "--family", "f1", "--k", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"points\":[{\"X\":\"-1\",\"Y\":\"0\"},{\"X\":\"0\",\"Y\":\"1\"},{\"X\":\"0\",\"Y\":\"-1\"},"
                         "{\"X\":\"2\",\"Y\":\"3\"},{\"X\":\"2\",\"Y\":\"-3\"}]"),
              std::string::npos);
    const auto c = run({"catalog", "--family", "f1", "--k", "-1", "--check", "--m-bound", "100", "--e-bound", "4"});
    EXPECT_EQ(c.code, 0);
    EXPECT_NE(c.out.find("\"agrees\":true"), std::string::npos);
    EXPECT_EQ(run({"catalog", "--family", "f1", "--k", "2"}).code, 1);
}

TEST(Cli, SearchAndSelftest) {
    const auto r = run({"search", "--family", "f4", "--a", "1", "--b", "1", "--c", "2", "--height", "1"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("{\"x\":\"-3/2\",\"y\":\"1\",\"z\":\"6\"}"), std::string::npos);
    EXPECT_EQ(run({"selftest"}).code, 0);
}

TEST(Cli, SolveReportsExhaustion) {
    const auto r = run({"solve", "--family", "f1", "--a", "1", "--b", "1", "--c", "1", "--count", "5"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("exhausted"), std::string::npos);
}
