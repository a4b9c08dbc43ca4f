#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <random>

#include "digitop/cli/commands.hpp"
#include "digitop/cli/corpus.hpp"
#include "digitop/cli/suite.hpp"
#include "oracles.hpp"

using namespace digitop;
using namespace digitop::cli;

namespace {

const Json kInterval = Json::parse(R"({"kind":"box","bounds":[[0,2]],"u":1})");
const Json kSquare = Json::parse(R"({"kind":"box","bounds":[[0,1],[0,1]],"u":1})");
const Json kBlockC2 = Json::parse(R"({"kind":"box","bounds":[[-1,1],[-1,1]],"u":2})");
const Json kPath3 = Json::parse(R"({"kind":"tree","edges":[[0,1],[1,2]],"root":0})");

struct Run {
  int code;
  std::string out;
};

Run run_tool(const std::string& args) {
  const std::string cmd = std::string(DIGITOP_BIN) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  EXPECT_NE(pipe, nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = testing::TempDir() + "digitop_" + name;
  std::ofstream(path) << text;
  return path;
}

std::string quoted(const Json& j) { return "'" + j.dump() + "'"; }

}  // namespace

TEST(Spec, RoundTripKeepsFingerprint) {
  std::vector<ImageSpec> specs = {path_spec(4), star_spec(5), box_spec({{-1, 1}, {0, 2}}, 1),
                                  box_spec({{0, 3}}, 1)};
  for (const auto& t : nonisomorphic_trees(6)) specs.push_back(t);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 30; ++i) specs.push_back(random_small_image(rng, 6));
  const auto product = parse_image_spec(
      Json{{"kind", "product"}, {"left", to_json(path_spec(3))}, {"right", to_json(box_spec({{0, 1}}, 1))}});
  specs.push_back(product);
  for (const auto& s : specs) {
    const Json j = to_json(s);
    const auto again = parse_image_spec(Json::parse(j.dump()));
    EXPECT_EQ(to_json(again), j);
    EXPECT_EQ(fingerprint(*build_image(again)), fingerprint(*build_image(s)));
  }
}

TEST(Spec, FingerprintMatchesDocumentedLayout) {
  // Digests computed independently from the documented byte layout.
  EXPECT_EQ(fingerprint(*build_image(box_spec({{0, 1}}, 1))),
            "sha256:281b519600084600ea9e882fed60c35e59da4a26a966f122eecb62c4a19b5c7b");
  EXPECT_EQ(fingerprint(*build_image(parse_image_spec(kPath3))),
            "sha256:0e5eabbddc145b0a3172a9247f9552285e936ac631e9686d39ff0051301829d4");
  EXPECT_EQ(fingerprint(*build_image(parse_image_spec(kSquare))),
            "sha256:6a29afa206fe6bd82b2dca727365790f1b871ac1b6503f2a704e54a3cbf13004");
}

TEST(Spec, ParseErrors) {
  EXPECT_THROW(parse_image_spec(Json::parse(R"({"kind":"blob"})")), SpecError);
  EXPECT_THROW(parse_image_spec(Json::parse(R"({"kind":"box","bounds":[[2,1]],"u":1})")),
               SpecError);
  EXPECT_THROW(build_image(parse_image_spec(Json::parse(
                   R"({"kind":"tree","edges":[[0,1],[1,2],[2,0]],"root":0})"))),
               SpecError);
  EXPECT_THROW(
      parse_image_spec(Json::parse(R"({"kind":"graph","vertices":[0,1],"edges":[],"u":1})")),
      SpecError);
}

TEST(Commands, DecideAfppExamples) {
  EXPECT_EQ(cmd_decide_afpp(kInterval, {}).exit_code, kExitOk);
  const auto sq = cmd_decide_afpp(kSquare, {});
  EXPECT_EQ(sq.exit_code, kExitFails);
  EXPECT_TRUE(sq.certificate.contains("witness"));
  EXPECT_EQ(cmd_decide_afpp(kBlockC2, {}).exit_code, kExitOk);
  SearchBudget tight{.max_vertices = 14, .max_nodes = 2, .seed = 0};
  EXPECT_EQ(cmd_decide_afpp(kSquare, tight).exit_code,
            kExitUndecided);
  EXPECT_EQ(cmd_decide_afpp(Json::parse(R"({"kind":"box"})"), {}).exit_code, kExitParse);
}

TEST(Commands, FindAfpExamples) {
  const auto tree = cmd_find_afp(kPath3, Json::parse("[[0,2],[1,1],[2,0]]"), "auto");
  EXPECT_EQ(tree.exit_code, kExitOk);
  EXPECT_EQ(tree.certificate["result"]["vertex"], Json::array({1}));
  EXPECT_EQ(tree.certificate["result"]["finder"], "tree");

  const auto anti = cmd_find_afp(
      kSquare, Json::parse("[[[0,0],[1,1]],[[0,1],[1,0]],[[1,0],[0,1]],[[1,1],[0,0]]]"), "auto");
  EXPECT_EQ(anti.exit_code, kExitNoAfp);

  const auto rev = cmd_find_afp(Json::parse(R"({"kind":"box","bounds":[[0,4]],"u":1})"),
                                Json::parse("[[0,4],[1,3],[2,2],[3,1],[4,0]]"), "auto");
  EXPECT_EQ(rev.exit_code, kExitOk);
  EXPECT_EQ(rev.certificate["result"]["vertex"], Json::array({2}));
  // A c_1 interval is a path, so dispatch picks the tree finder first.
  EXPECT_EQ(rev.certificate["result"]["finder"], "tree");

  const auto flip = cmd_find_afp(
      Json::parse(R"({"kind":"box","bounds":[[0,1],[0,2]],"u":2})"),
      Json::parse("[[[0,0],[1,2]],[[0,1],[1,1]],[[0,2],[1,0]],"
                  "[[1,0],[0,2]],[[1,1],[0,1]],[[1,2],[0,0]]]"),
      "auto");
  EXPECT_EQ(flip.exit_code, kExitOk);
  EXPECT_EQ(flip.certificate["result"]["finder"], "box");

  const auto bad = cmd_find_afp(kPath3, Json::parse("[[0,0],[1,2],[2,0]]"), "auto");
  EXPECT_EQ(bad.exit_code, kExitDiscontinuous);
}

TEST(Commands, FindAfpOnProducts) {
  const Json prod = Json{{"kind", "product"},
                         {"left", kPath3},
                         {"right", Json::parse(R"({"kind":"box","bounds":[[0,2]],"u":1})")}};
  auto img = build_image(parse_image_spec(prod));
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto f = random_continuous_self_map(img, s);
    for (const char* finder : {"auto", "product", "search"}) {
      const auto r = cmd_find_afp(prod, map_json(f), finder);
      ASSERT_EQ(r.exit_code, kExitOk) << finder;
      ASSERT_TRUE(is_approximate_fixed_point(f, img->index_of(parse_point(r.certificate["result"]["vertex"]))));
    }
  }
}

TEST(Commands, CheckExamples) {
  const auto id = cmd_check(kPath3, std::nullopt, Json::parse("[[0,0],[1,1],[2,2]]"), "continuity");
  EXPECT_EQ(id.exit_code, kExitOk);
  const auto swap = cmd_check(kPath3, std::nullopt, Json::parse("[[0,1],[1,0],[2,2]]"), "continuity");
  EXPECT_EQ(swap.exit_code, kExitFalse);
  EXPECT_EQ(swap.certificate["result"]["violation"]["pair"], Json::parse("[[1],[2]]"));
  EXPECT_EQ(swap.certificate["result"]["violation"]["images"], Json::parse("[[0],[2]]"));

  const auto clamp = cmd_check(Json::parse(R"({"kind":"box","bounds":[[0,3]],"u":1})"),
                               Json::parse(R"({"kind":"box","bounds":[[0,2]],"u":1})"),
                               Json::parse("[[0,0],[1,1],[2,2],[3,2]]"), "retraction");
  EXPECT_EQ(clamp.exit_code, kExitOk);
}

TEST(Commands, EnumerateAndNp) {
  EXPECT_EQ(cmd_enumerate(kPath3, {}, false).certificate["result"]["count"], 17);
  const auto listed = cmd_enumerate(kInterval, {}, true);
  EXPECT_EQ(listed.certificate["maps"].size(), listed.certificate["result"]["count"].get<std::size_t>());
  const Json i01 = Json::parse(R"({"kind":"box","bounds":[[0,1]],"u":1})");
  EXPECT_EQ(cmd_np_equals_cu(i01, i01).exit_code, kExitOk);
  EXPECT_EQ(cmd_np_equals_cu(kSquare, i01).exit_code, kExitFalse);
  EXPECT_EQ(cmd_np_assoc(kPath3, 1, 1).exit_code, kExitOk);
}

TEST(Commands, CertificatesVerify) {
  std::vector<CommandResult> results = {
      cmd_decide_afpp(kSquare, {}),
      cmd_decide_afpp(kInterval, {}),
      cmd_find_afp(kPath3, Json::parse("[[0,2],[1,1],[2,0]]"), "auto"),
      cmd_check(kPath3, std::nullopt, Json::parse("[[0,1],[1,0],[2,2]]"), "continuity"),
      cmd_enumerate(kPath3, {}, false),
      cmd_random_map(kBlockC2, 9),
      cmd_np_equals_cu(kInterval, kInterval)};
  for (const auto& r : results) {
    const auto v = cmd_verify_certificate(Json::parse(r.text()));
    EXPECT_EQ(v.exit_code, kExitOk) << r.certificate["command"] << ": " << v.summary;
  }
}

TEST(Commands, TamperedCertificatesAreRejected) {
  auto sq = Json::parse(cmd_decide_afpp(kSquare, {}).text());
  auto bad_print = sq;
  bad_print["image"]["fingerprint"] = "sha256:00";
  EXPECT_EQ(cmd_verify_certificate(bad_print).exit_code, kExitFalse);

  auto bad_witness = sq;
  bad_witness["witness"] = Json::parse("[[[0,0],[0,0]],[[0,1],[0,0]],[[1,0],[0,0]],[[1,1],[0,0]]]");
  EXPECT_EQ(cmd_verify_certificate(bad_witness).exit_code, kExitFalse);

  auto found = Json::parse(cmd_find_afp(kPath3, Json::parse("[[0,2],[1,1],[2,0]]"), "auto").text());
  found["result"]["vertex"] = Json::array({0});
  EXPECT_EQ(cmd_verify_certificate(found).exit_code, kExitFalse);
}

TEST(Commands, CertificatesAreDeterministic) {
  EXPECT_EQ(cmd_decide_afpp(kSquare, {}).text(), cmd_decide_afpp(kSquare, {}).text());
  EXPECT_EQ(cmd_random_map(kBlockC2, 4).text(), cmd_random_map(kBlockC2, 4).text());
}

TEST(Suite, BruteForceOracleMatchesTestOracle) {
  for (const auto& img : fixtures::corpus(5, 2, 10)) {
    EXPECT_EQ(brute_force_continuous_count(img), oracle::continuous_count(*img));
    EXPECT_EQ(brute_force_witnesses(img).empty(), oracle::afpp(*img));
  }
}

TEST(Suite, FaultInjectionFails) {
  SuiteOptions opts{.scale = SuiteScale::tiny, .inject_fault = 3};
  const auto report = run_criterion(3, opts);
  EXPECT_FALSE(report.passed);
  EXPECT_NE(cmd_verify_suite(opts).exit_code, kExitOk);
}

TEST(Tool, ExitCodes) {
  EXPECT_EQ(run_tool("decide-afpp --image " + quoted(kInterval)).code, 0);
  EXPECT_EQ(run_tool("decide-afpp --image " + quoted(kSquare)).code, 10);
  EXPECT_EQ(run_tool("decide-afpp --budget-nodes 2 --image " + quoted(kSquare)).code, 20);
  EXPECT_EQ(run_tool("decide-afpp --image '{\"kind\":'").code, 2);
  EXPECT_EQ(run_tool("decide-afpp --image /nonexistent/file.json").code, 2);
  EXPECT_EQ(run_tool("no-such-command").code, 2);
  EXPECT_EQ(run_tool("find-afp --image " + quoted(kPath3) + " --map '[[0,0],[1,2],[2,0]]'").code, 3);
  EXPECT_EQ(run_tool("find-afp --image " + quoted(kSquare) +
                     " --map '[[[0,0],[1,1]],[[0,1],[1,0]],[[1,0],[0,1]],[[1,1],[0,0]]]'")
                .code,
            11);
  EXPECT_EQ(run_tool("check --image " + quoted(kPath3) + " --map '[[0,1],[1,0],[2,2]]'").code, 1);
}

TEST(Tool, CertificateFileRoundTrip) {
  const std::string cert = testing::TempDir() + "digitop_cert.json";
  const auto r = run_tool("decide-afpp --image " + quoted(kSquare) + " --output " + cert);
  ASSERT_EQ(r.code, 10);
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(run_tool("verify-certificate --certificate " + cert).code, 0);

  auto tampered = Json::parse(std::ifstream(cert));
  tampered["witness"][0][1] = Json::array({0, 0});
  const auto bad = write_temp("tampered.json", tampered.dump());
  EXPECT_EQ(run_tool("verify-certificate --certificate " + bad).code, 1);
}

TEST(Tool, StdoutMatchesLibraryAndIsRepeatable) {
  const auto a = run_tool("random-map --seed 11 --image " + quoted(kBlockC2));
  const auto b = run_tool("random-map --seed 11 --image " + quoted(kBlockC2));
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, cmd_random_map(kBlockC2, 11).text());
}

TEST(Tool, SuiteFaultInjectionGivesNonzeroExit) {
  EXPECT_NE(run_tool("verify-suite --scale tiny --inject-fault 7").code, 0);
}
