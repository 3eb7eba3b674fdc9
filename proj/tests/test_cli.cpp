#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "operadica/operads/presentation.hpp"
#include "operadica/zoo/zoo.hpp"

using namespace operadica;

namespace {

const std::string kSrc = OPERADICA_SOURCE_DIR;

struct CliRun {
  int code;
  std::string out;
};

// Runs the CLI with `args` ({src} expands to the source tree); stderr is discarded.
CliRun run_cli(std::string args, const std::string& env = "") {
  for (std::size_t p; (p = args.find("{src}")) != std::string::npos;) args.replace(p, 5, kSrc);
  std::string cmd = "env -u OPERADICA_TRUNC " + env + " " + OPERADICA_CLI_PATH + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) throw std::runtime_error("cannot run " + cmd);
  std::string out;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, f)) > 0;) out.append(buf, n);
  int status = pclose(f);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct GoldenCase {
  std::string name, args;
};

const std::vector<GoldenCase>& golden_cases() {
  static const std::vector<GoldenCase> cases{
      {"enumerate_motzkin", "enumerate --family motzkin-words --size 5"},
      {"gens_binary", "gens --family binary_trees -N 8"},
      {"gens_partitions_json", "--format json gens --family partitions -N 6"},
      {"compose_per", "op compose --operad per -x 7415623 -i 4 -y 231"},
      {"compose_motz", "compose --operad motz -x 0112321010 -i 4 -y 0122110"},
      {"hilbert_nct", "op hilbert --operad nct -N 6"},
      {"koszul_dendr", "op koszul-dual --file {src}/presentations/dendr.json"},
      {"koszul_dias_json", "--format json op koszul-dual --operad dias"},
      {"verify_dias", "op verify --operad dias -N 5"},
      {"bud_as", "op bud --operad as --colors 2 -x '1/a 3/122' -i 2 -y '2/a 2/11'"},
      {"axioms_dias", "--seed 3 op axioms --operad dias -N 3 --samples 100"},
      {"rw_words_termination", "rw check-termination --rule aba=bab --bound 10"},
      {"rw_words_confluence", "rw check-confluence --rule aba=bab --bound 10"},
      {"rw_words_normal_form", "rw normal-form --rule aba=bab ababa"},
      {"rw_trees_nonconfluent", "rw check-confluence --file {src}/presentations/rewrite_nonconfluent.json"},
      {"rw_trees_confluent_json", "--format json rw check-confluence --file {src}/presentations/rewrite_confluent.json"},
      {"rw_graph", "rw graph --rule aba=bab ababa"},
      {"poset_mobius_tamari", "poset mobius --poset tamari -n 3"},
      {"poset_basis_cube", "poset basis --poset cube -n 2"},
      {"series_nct", "series solve --preset nct -N 12"},
      {"series_schroder_objects", "series solve --preset schroder -N 8 --route objects"},
      {"series_coeffs_dyck", "series coeffs --preset dyck -n 4"},
      {"series_motzkin_json", "--format json --jobs 2 series solve --preset motzkin -N 6"},
  };
  return cases;
}

}  // namespace

// Set OPERADICA_UPDATE_GOLDEN=1 to rewrite tests/golden from the current binary.
TEST(Cli, GoldenOutputs) {
  bool update = std::getenv("OPERADICA_UPDATE_GOLDEN") != nullptr;
  for (const auto& c : golden_cases()) {
    CliRun r = run_cli(c.args);
    EXPECT_EQ(r.code, 0) << c.args;
    std::string path = kSrc + "/tests/golden/" + c.name + ".out";
    if (update) {
      std::ofstream(path, std::ios::binary) << r.out;
      continue;
    }
    EXPECT_EQ(r.out, read_file(path)) << c.args;
  }
}

TEST(Cli, ByteStable) {
  for (const auto& c : golden_cases()) EXPECT_EQ(run_cli(c.args).out, run_cli(c.args).out) << c.args;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("").code, 2);
  EXPECT_EQ(run_cli("frobnicate").code, 2);
  EXPECT_EQ(run_cli("gens").code, 2);
  EXPECT_EQ(run_cli("--format yaml gens --family compositions").code, 2);
  EXPECT_EQ(run_cli("series solve --preset catalan").code, 2);
  EXPECT_EQ(run_cli("rw check-termination").code, 2);
  EXPECT_EQ(run_cli("gens --family compositions", "OPERADICA_TRUNC=x").code, 2);
  EXPECT_EQ(run_cli("enumerate --family nope --size 3").code, 1);
  EXPECT_EQ(run_cli("op bud --operad as -x '1/a 3/122' -i 1 -y '2/a 2/11'").code, 1);
  EXPECT_EQ(run_cli("op koszul-dual --operad per").code, 1);
  EXPECT_EQ(run_cli("op hilbert --operad t-max -N 3").code, 1);
  EXPECT_EQ(run_cli("--help").code, 0);
}

TEST(Cli, LongFlagAliases) {
  EXPECT_EQ(run_cli("op compose --name dias --x 'e 3 2' --i 1 --y 'e 2 2'").out, run_cli("op compose --operad dias -x 'e 3 2' -i 1 -y 'e 2 2'").out);
  EXPECT_EQ(run_cli("op hilbert --name nct -N 8").out, "0 1 2 7 30 143 728 3876 21318\n");
  auto v = run_cli("op verify --name dias --presentation {src}/presentations/dias.json -N 7");
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("verified up to arity 7"), std::string::npos) << v.out;
  EXPECT_EQ(run_cli("op bud --base as --colors 2 -x '1/a 3/122' -i 2 -y '2/a 2/11'").out, "1/a 4/1112\n");
}

TEST(Cli, TruncationFromEnvironment) {
  EXPECT_EQ(run_cli("gens --family compositions", "OPERADICA_TRUNC=5").out, "1 1 2 4 8 16\n");
  EXPECT_EQ(run_cli("gens --family compositions").out, "1 1 2 4 8 16 32 64 128 256 512\n");
  EXPECT_EQ(run_cli("gens --family compositions -N 3", "OPERADICA_TRUNC=5").out, "1 1 2 4\n");
}

TEST(Cli, JsonRoundTrips) {
  auto dual = presentation_from_json(Json::parse(run_cli("--format json op koszul-dual --operad dendr").out));
  EXPECT_TRUE(same_span(dual.relations, presentation_of("dias").relations));
  auto en = Json::parse(run_cli("--format json enumerate --family nct --size 3").out);
  EXPECT_EQ(en["count"].get<std::size_t>(), 7u);
  for (const auto& s : en["objects"]) EXPECT_EQ(Obj::parse(s.get<std::string>()).str(), s.get<std::string>());
  auto comp = Json::parse(run_cli("--format json op compose --operad dias -x 'e 3 2' -i 1 -y 'e 2 2'").out);
  EXPECT_EQ(Obj::parse(comp["result"].get<std::string>()), parse_element("dias", "e 4 3"));
  auto conf = Json::parse(run_cli("--format json rw check-confluence --file " + kSrc + "/presentations/rewrite_nonconfluent.json").out);
  EXPECT_FALSE(conf["confluent"].get<bool>());
  EXPECT_EQ(conf["witness_degree"].get<std::size_t>(), 3u);
  EXPECT_NO_THROW(Tree::parse(conf["witness"].get<std::string>()));
}
