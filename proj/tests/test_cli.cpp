#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string cli_path() {
  const char* p = std::getenv("CHANMATCH_CLI");
  REQUIRE_MESSAGE(p != nullptr, "CHANMATCH_CLI must point at the binary");
  return p;
}

std::string data_dir() {
  const char* p = std::getenv("CHANMATCH_DATA_DIR");
  REQUIRE_MESSAGE(p != nullptr, "CHANMATCH_DATA_DIR must point at the data files");
  return p;
}

std::string temp_root() {
  static std::string root = [] {
    std::string t = "/tmp/chanmatch_cli_XXXXXX";
    REQUIRE(mkdtemp(t.data()) != nullptr);
    return t;
  }();
  return root;
}

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = temp_root() + "/" + name;
  std::ofstream(path, std::ios::binary) << content;
  return path;
}

RunResult run(const std::string& args) {
  std::string out_file = temp_root() + "/stdout.txt";
  std::string err_file = temp_root() + "/stderr.txt";
  std::string cmd = cli_path() + " " + args + " >" + out_file + " 2>" + err_file;
  int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

std::string data(const std::string& name) { return data_dir() + "/" + name; }

}  // namespace

TEST_CASE("order ranks a plain matrix in both directions") {
  RunResult desc = run("order " + data("matrix_order_demo.txt") + " --desc");
  CHECK(desc.exit_code == 0);
  CHECK(desc.out == "3\n1 3 2\n1 1 3\n2 2 1\n");
  RunResult asc = run("order " + data("matrix_order_demo.txt") + " --asc");
  CHECK(asc.exit_code == 0);
  CHECK(asc.out == "3\n2 1 2\n2 3 1\n1 2 3\n");
}

TEST_CASE("metrize prints the certificate and exits 2 on the cyclic channel") {
  RunResult r = run("metrize " + data("channel_cyclic.txt"));
  CHECK(r.exit_code == 2);
  CHECK(r.out ==
        "not metrizable\n"
        "contradictory cycle:\n"
        "  d(1,2) < d(1,3)  [column 1]\n"
        "  d(1,3) < d(2,3)  [column 3]\n"
        "  d(2,3) < d(1,2)  [column 2]\n");

  RunResult j = run("metrize " + data("channel_cyclic.txt") + " --json");
  CHECK(j.exit_code == 2);
  auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["matched"] == false);
  CHECK(parsed["certificate"]["kind"] == "cycle");
  CHECK(parsed["certificate"]["steps"].size() == 3);
  CHECK(parsed["certificate"]["steps"][0]["from"] == nlohmann::json({1, 2}));
  CHECK(parsed["certificate"]["steps"][0]["to"] == nlohmann::json({1, 3}));
}

TEST_CASE("metrize prints a matched distance and exits 0 on the chain channel") {
  RunResult r = run("metrize " + data("channel_chain.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "3\n0 2 3\n2 0 1\n3 1 0\n");

  RunResult m = run("metrize " + data("channel_chain.txt") + " --mode metric");
  CHECK(m.exit_code == 0);
  CHECK(m.out == "3\n0 5/3 2\n5/3 0 4/3\n2 4/3 0\n");
}

TEST_CASE("equiv compares decoding behaviour") {
  RunResult r = run("equiv " + data("distance_chain.txt") + " " + data("metric_chain.txt") +
                    " --as distance");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "equivalent\n");

  std::string other = write_temp("ones.txt", "3\n0 1 1\n1 0 1\n1 1 0\n");
  RunResult neg = run("equiv " + data("distance_chain.txt") + " " + other + " --as distance");
  CHECK(neg.exit_code == 2);
  CHECK(neg.out == "not equivalent\n");
}

TEST_CASE("matched with the oracle cross-check") {
  RunResult r = run("matched " + data("channel_chain.txt") + " " + data("distance_chain.txt") +
                    " --oracle");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "matched\noracle: agree\n");

  std::string ones = write_temp("ones2.txt", "3\n0 1 1\n1 0 1\n1 1 0\n");
  RunResult neg = run("matched " + data("channel_chain.txt") + " " + ones + " --oracle");
  CHECK(neg.exit_code == 2);
  CHECK(neg.out.substr(0, 26) == "not matched\noracle: agree\n");
}

TEST_CASE("setpattern solves the published intersection pattern") {
  RunResult r = run("setpattern solve --cap " + data("cap_pattern.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "x: -1 0 2 0 1 3 4\nrealizable: no\n");
}

TEST_CASE("setpattern solves the published symmetric-difference pattern") {
  RunResult r = run("setpattern solve --sym " + data("sym_pattern.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "cap: 3 2 1 1 1/2 1/2 1/4\n"
        "x: 7/4 3/4 3/4 1/4 1/4 1/4 1/4\n"
        "realizable: no\n");

  std::string doubled = write_temp("doubled.txt", "2\n2 2 2\n");
  RunResult ok = run("setpattern solve --sym " + doubled);
  CHECK(ok.exit_code == 0);
  CHECK(ok.out ==
        "cap: 2 2 1\n"
        "x: 1 1 1\n"
        "realizable: yes\n"
        "family:\n01\n10\n11\n");
}

TEST_CASE("embed emits the embedding file format") {
  RunResult r = run("embed --weight " + data("weight_f23.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "3 17 4 0\n"
        "11111110001110101\n"
        "00000001111110011\n"
        "00000000000001111\n");
}

TEST_CASE("embed --minimal reports the optimum dimension") {
  RunResult r = run("embed --weight " + data("weight_f23.txt") + " --minimal");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "3 11 1 0\n"
        "11100110101\n"
        "00011110011\n"
        "00000001111\n");
  CHECK(r.err.starts_with("N_star: 11\nincumbent_from_scaling: 17\nnodes_explored: "));

  RunResult again = run("embed --weight " + data("weight_f23.txt") + " --minimal");
  CHECK(again.out == r.out);
  CHECK(again.err == r.err);

  RunResult points = run("embed --distance " + data("metric_chain.txt") + " --minimal");
  CHECK(points.exit_code == 0);
  CHECK(points.out.substr(0, 9) == "3 3 1 0\n0");
}

TEST_CASE("verify-embed accepts the published twelve-dimensional witness") {
  RunResult r = run("verify-embed " + data("embedding_h12.txt") + " " + data("weight_f23.txt"));
  CHECK(r.exit_code == 0);
  CHECK(r.out == "ok m=2 k=2 order_preserved=yes\n");

  // And a freshly generated embedding round-trips through verification.
  RunResult emb = run("embed --weight " + data("weight_f23.txt"));
  std::string path = write_temp("emb.txt", emb.out);
  RunResult v = run("verify-embed " + path + " " + data("weight_f23.txt"));
  CHECK(v.exit_code == 0);
  CHECK(v.out == "ok m=4 k=0 order_preserved=yes\n");

  std::string bad = emb.out;
  bad[bad.find('\n') + 1] = bad[bad.find('\n') + 1] == '0' ? '1' : '0';
  std::string bad_path = write_temp("bad_emb.txt", bad);
  RunResult vb = run("verify-embed " + bad_path + " " + data("weight_f23.txt"));
  CHECK(vb.exit_code == 2);
}

TEST_CASE("verify-embed handles point embeddings against distances") {
  RunResult emb = run("embed --distance " + data("metric_chain.txt"));
  CHECK(emb.exit_code == 0);
  std::string path = write_temp("point_emb.txt", emb.out);
  RunResult v = run("verify-embed " + path + " " + data("metric_chain.txt"));
  CHECK(v.exit_code == 0);
  CHECK(v.out.substr(0, 2) == "ok");
}

TEST_CASE("gen is reproducible from the seed and emits valid files") {
  RunResult a = run("gen channel 4 --seed 7");
  RunResult b = run("gen channel 4 --seed 7");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  RunResult c = run("gen channel 4 --seed 8");
  CHECK(c.out != a.out);

  std::string path = write_temp("gen_channel.txt", a.out);
  RunResult m = run("metrize " + path);
  CHECK((m.exit_code == 0 || m.exit_code == 2));

  RunResult d1 = run("gen distance 5 --seed 3");
  RunResult d2 = run("gen distance 5 --seed 3");
  CHECK(d1.out == d2.out);
  std::string dpath = write_temp("gen_distance.txt", d1.out);
  RunResult eq = run("equiv " + dpath + " " + dpath + " --as distance");
  CHECK(eq.exit_code == 0);
}

TEST_CASE("parse and usage failures exit 1") {
  std::string bad = write_temp("bad_channel.txt", "2\n1/2 1/3\n1/2 1/2\n");
  RunResult r = run("metrize " + bad);
  CHECK(r.exit_code == 1);
  CHECK(r.err.find("row-sum error on line 2") != std::string::npos);

  RunResult usage = run("order " + data("matrix_order_demo.txt"));
  CHECK(usage.exit_code == 1);

  RunResult missing = run("metrize /nonexistent/file.txt");
  CHECK(missing.exit_code == 1);

  RunResult no_args = run("");
  CHECK(no_args.exit_code == 1);
  RunResult unknown = run("frobnicate");
  CHECK(unknown.exit_code == 1);
  RunResult help = run("--help");
  CHECK(help.exit_code == 0);
}

TEST_CASE("equiv compares channels as channels") {
  RunResult same = run("equiv " + data("channel_chain.txt") + " " + data("channel_chain.txt") +
                       " --as channel");
  CHECK(same.exit_code == 0);
  CHECK(same.out == "equivalent\n");
  RunResult diff = run("equiv " + data("channel_chain.txt") + " " + data("channel_cyclic.txt") +
                       " --as channel");
  CHECK(diff.exit_code == 2);
  CHECK(diff.out == "not equivalent\n");
}

TEST_CASE("repeated runs are byte identical") {
  for (const std::string& args : {std::string("metrize ") + data("channel_chain.txt"),
                                  std::string("--json metrize ") + data("channel_cyclic.txt"),
                                  std::string("setpattern solve --sym ") + data("sym_pattern.txt")}) {
    RunResult a = run(args);
    RunResult b = run(args);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}
