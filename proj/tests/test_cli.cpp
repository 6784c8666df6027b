#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "partseq/instance.hpp"
#include "partseq/orientation.hpp"
#include "partseq/pps.hpp"

using namespace partseq;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  json report() const { return json::parse(out); }
};

Run run(const std::string& args) {
  std::string cmd = std::string(PARTSEQ_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(PARTSEQ_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "partseq_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Cli, CurveCsvOnPath) {
  auto r = run("curve " + data("path.json") + " --st");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "lambda_breakpoint,value,left_slope,right_slope,left_partition,right_partition\n"
                   "2,-2,-2,-3,\"s|a,t\",\"s|a|t\"\n");
}

TEST(Cli, InfeasibleOrientationGivesWitness) {
  auto r = run("orient check " + data("cycle4.hg") + " --k 1 --l 2");
  EXPECT_EQ(r.code, 2);
  auto j = r.report();
  EXPECT_EQ(j["exit_status"], 2);
  EXPECT_EQ(j["result"]["witness"]["partition"], "s|a,t,b");
  EXPECT_LT(j["result"]["witness"]["delta"].get<long long>(), j["result"]["witness"]["requirement"].get<long long>());
}

TEST(Cli, KPartWithKEqualNIsSingletons) {
  auto r = run("kpart " + data("clusters7.json") + " 7");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.report()["result"]["partition"], "s|a|b|c|d|e|t");
  auto e = run("kpart " + data("path.json") + " 2 --exact");
  EXPECT_EQ(e.code, 0);
  EXPECT_EQ(e.report()["result"]["value"], "2");
  EXPECT_EQ(e.report()["result"]["mode"], "exhaustive");
}

TEST(Cli, InvalidInputExitsThree) {
  EXPECT_EQ(run("pps " + data("missing.json")).code, 3);
  auto bad = scratch("bad.json");
  write(bad, "{\"labels\": [\"a\", \"b\"], \"function\": {\"kind\": \"graph_cut\", \"edges\": [[\"a\", \"z\", 1]]}}");
  EXPECT_EQ(run("pps " + bad.string()).code, 3);
  write(bad, "{ not json");
  EXPECT_EQ(run("curve " + bad.string()).code, 3);
  EXPECT_EQ(run("kpart " + data("path.json") + " 9").code, 3);
  EXPECT_EQ(run("orient find " + data("cycle4.hg") + " --k -1 --l 0").code, 3);
  auto hg = scratch("bad.hg");
  write(hg, "3 2\n1 0 1\n1 0\n");
  auto r = run("orient check " + hg.string() + " --k 1 --l 1 --s 0 --t 1");
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.report()["result"]["error"].get<std::string>().find("line 3"), std::string::npos);
}

TEST(Cli, CorpusExitCodes) {
  for (const auto& entry : fs::directory_iterator(PARTSEQ_DATA_DIR)) {
    const std::string path = entry.path().string();
    if (entry.path().extension() == ".json") {
      auto inst = load_instance(path);
      EXPECT_EQ(run("pps " + path).code, 0) << path;
      EXPECT_EQ(run("curve " + path + " --out json").code, 0) << path;
      if (inst.ground.s_index && inst.ground.t_index) {
        EXPECT_EQ(run("pps " + path + " --st").code, 0) << path;
        EXPECT_EQ(run("kpart " + path + " 2").code, 0) << path;
      } else {
        EXPECT_EQ(run("pps " + path + " --st").code, 3) << path;
      }
    } else if (entry.path().extension() == ".hg") {
      for (int k = 0; k <= 2; ++k)
        for (int l = 0; l <= 2; ++l) {
          std::string kl = " --k " + std::to_string(k) + " --l " + std::to_string(l);
          auto c = run("orient check " + path + kl);
          auto f = run("orient find " + path + kl);
          EXPECT_TRUE(c.code == 0 || c.code == 2) << path << kl;
          EXPECT_EQ(c.code, f.code) << path << kl;
        }
      EXPECT_EQ(run("orient maxell " + path + " --k 0").code, 0) << path;
      EXPECT_EQ(run("orient maxk " + path + " --l 1").code, 0) << path;
    }
  }
}

TEST(Cli, SequenceRoundTripAndValidate) {
  auto r = run("pps " + data("clusters7.json") + " --st");
  ASSERT_EQ(r.code, 0);
  auto inst = load_instance(data("clusters7.json"));
  auto rep = r.report();
  for (const auto& p : rep["result"]["partitions"]) EXPECT_NO_THROW(parse_partition(p.get<std::string>(), inst.ground));
  auto seq_file = scratch("seq.json");
  write(seq_file, r.out);
  auto v = run("validate " + seq_file.string() + " " + data("clusters7.json"));
  EXPECT_EQ(v.code, 0);
  auto broken = rep["result"];
  std::swap(broken["partitions"][1], broken["partitions"][2]);
  write(seq_file, broken.dump());
  auto w = run("validate " + seq_file.string() + " " + data("clusters7.json"));
  EXPECT_EQ(w.code, 2);
  EXPECT_FALSE(w.report()["result"]["violations"].empty());
  EXPECT_EQ(run("pps " + data("clusters7.json") + " --st").out, r.out);
}

TEST(Cli, OrientationRoundTrip) {
  for (const char* name : {"cycle4.hg", "k4.hg", "cycle6_chords.hg", "hyper.hg"}) {
    auto r = run(std::string("orient find ") + data(name) + " --k 1 --l 1");
    if (r.code != 0) continue;
    auto res = r.report()["result"];
    auto o = parse_orientation_text(res["orientation_text"].get<std::string>());
    auto g = o.graph.ground();
    EXPECT_TRUE(verify_orientation(o, *g.s_index, *g.t_index, 1, 1).ok) << name;
    EXPECT_EQ(orientation_from_json(res["orientation"]).heads, o.heads) << name;
  }
  auto re = run("orient reorient " + data("parallel.hg") + " --k 0 --l 2 --k1 1 --k2 1");
  ASSERT_EQ(re.code, 0);
  auto o = parse_orientation_text(re.report()["result"]["orientation_text"].get<std::string>());
  EXPECT_NE(o.heads[0][0], o.heads[0][1]);
  EXPECT_EQ(run("orient reorient " + data("parallel.hg") + " --k 0 --l 2 --k1 2 --k2 1").code, 3);
}

TEST(Cli, GeneratedInstancesAreDeterministic) {
  auto a = run("gen --kind graph_cut --n 6 --seed 7");
  auto b = run("gen --kind graph_cut --n 6 --seed 7");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto file = scratch("gen.json");
  write(file, a.out);
  auto r = run("pps " + file.string() + " --st");
  EXPECT_EQ(r.code, 0);
  auto seq_file = scratch("gen_seq.json");
  write(seq_file, r.out);
  EXPECT_EQ(run("validate " + seq_file.string() + " " + file.string()).code, 0);
}
