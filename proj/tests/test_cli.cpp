// Black-box checks of the installed binary: every invocation here goes
// through std::system on SFNET_CLI_PATH (provided by the build).

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "sfnet/graph.hpp"

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const char* stem) {
    path = fs::temp_directory_path() / (std::string(stem) + "." + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const TempDir& dir, const std::string& args) {
  static int counter = 0;
  const fs::path capture = dir.path / ("stdout." + std::to_string(counter++));
  const std::string command = std::string(SFNET_CLI_PATH) + " " + args + " > " +
                              capture.string() + " 2>/dev/null";
  const int status = std::system(command.c_str());
  RunResult result;
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  result.exit_code = WEXITSTATUS(status);
  std::ifstream in(capture);
  std::ostringstream os;
  os << in.rdbuf();
  result.out = os.str();
  return result;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("cli generates a preferential-attachment network deterministically") {
  TempDir dir("sfnet-cli-gen");
  const auto out1 = (dir.path / "ba1.edges").string();
  const auto run1 = run_cli(dir, "generate --algorithm ba --n 50 --m 1 --seed 9 --out " + out1);
  REQUIRE(run1.exit_code == 0);
  REQUIRE(run1.out.rfind("algorithm,n,m,seed,edges,", 0) == 0);
  REQUIRE(run1.out.find("\nba,50,1,9,49,") != std::string::npos);

  const auto g = sfnet::read_edge_list_file(out1);
  REQUIRE(g.vertex_count() == 50);
  REQUIRE(g.edge_count() == 49);
  REQUIRE(slurp(out1).rfind("# n=50\n", 0) == 0);

  const auto out2 = (dir.path / "ba2.edges").string();
  const auto run2 = run_cli(dir, "generate --algorithm ba --n 50 --m 1 --seed 9 --out " + out2);
  REQUIRE(run2.exit_code == 0);
  REQUIRE(slurp(out1) == slurp(out2));

  const auto out3 = (dir.path / "ba3.edges").string();
  const auto run3 = run_cli(dir, "generate --algorithm ba --n 50 --m 1 --seed 10 --out " + out3);
  REQUIRE(run3.exit_code == 0);
  REQUIRE(slurp(out1) != slurp(out3));
}

TEST_CASE("cli conditions matching generators on a degree file") {
  TempDir dir("sfnet-cli-degseq");
  const auto degseq = dir.path / "targets.txt";
  std::ofstream(degseq) << "2\n1\n1\n2\n2\n";
  const auto out = (dir.path / "mr.edges").string();
  const auto run = run_cli(dir, "generate --algorithm mr --degseq " + degseq.string() +
                                    " --seed 4 --out " + out);
  REQUIRE(run.exit_code == 0);
  REQUIRE(run.out.find("mr,5,NA,4,") != std::string::npos);  // m is NA with a file
  REQUIRE(sfnet::read_edge_list_file(out).vertex_count() == 5);

  // without a file, non-BA algorithms derive their targets from a source network
  const auto out2 = (dir.path / "kalisky.edges").string();
  const auto run2 =
      run_cli(dir, "generate --algorithm kalisky --n 40 --m 2 --seed 4 --out " + out2);
  REQUIRE(run2.exit_code == 0);
  REQUIRE(sfnet::read_edge_list_file(out2).vertex_count() == 40);

  // ba rejects --degseq
  const auto run3 = run_cli(dir, "generate --algorithm ba --degseq " + degseq.string() +
                                     " --out " + (dir.path / "x.edges").string());
  REQUIRE(run3.exit_code == 1);
}

TEST_CASE("cli rejects unknown algorithms and missing inputs") {
  TempDir dir("sfnet-cli-errors");
  const auto out = (dir.path / "x.edges").string();
  REQUIRE(run_cli(dir, "generate --algorithm watts --n 10 --m 1 --out " + out).exit_code == 1);
  REQUIRE(run_cli(dir, "generate --algorithm ba --out " + out).exit_code == 1);  // no --n/--m
  REQUIRE(run_cli(dir, "bogus-subcommand").exit_code == 1);
  REQUIRE(run_cli(dir, "generate --algorithm mr --degseq " + (dir.path / "absent.txt").string() +
                           " --out " + out)
              .exit_code == 2);
  REQUIRE(run_cli(dir, "--help").exit_code == 0);
}

TEST_CASE("cli measures an edge-list file") {
  TempDir dir("sfnet-cli-metrics");
  const auto graph_path = dir.path / "path4.edges";
  std::ofstream(graph_path) << "# n=4\n0,1\n1,2\n2,3\n";
  const auto knn_path = dir.path / "knn.csv";
  const auto run = run_cli(dir, "metrics --graph " + graph_path.string() + " --knn-out " +
                                    knn_path.string());
  REQUIRE(run.exit_code == 0);
  REQUIRE(run.out.rfind("algorithm,m,replicate,seed,n,edges,components,giant_pct,cc,cpd,ge,r\n",
                        0) == 0);
  // path on 4 vertices: 1 component, giant 100%, cc 0, cpd 4/9, ge 13/18, r -0.5
  REQUIRE(run.out.find("NA,NA,NA,NA,4,3,1,100,0,") != std::string::npos);
  const auto knn = slurp(knn_path);
  REQUIRE(knn.rfind("algorithm,m,replicate,k,knn_mean\n", 0) == 0);
  REQUIRE(knn.find("NA,NA,NA,1,2\n") != std::string::npos);
  REQUIRE(knn.find("NA,NA,NA,2,1.5\n") != std::string::npos);

  REQUIRE(run_cli(dir, "metrics --graph " + (dir.path / "absent.edges").string()).exit_code == 2);

  const auto bad_path = dir.path / "bad.edges";
  std::ofstream(bad_path) << "# n=2\n0,0\n";
  REQUIRE(run_cli(dir, "metrics --graph " + bad_path.string()).exit_code == 1);
}

TEST_CASE("cli runs a small experiment grid") {
  TempDir dir("sfnet-cli-exp");
  const auto out_dir = (dir.path / "out").string();
  const auto run = run_cli(dir,
                           "experiment --n 40 --m-values 1 --replicates 2 --algorithms ba,mb "
                           "--seed 3 --out-dir " + out_dir);
  REQUIRE(run.exit_code == 0);
  REQUIRE(run.out.find("BA m=1") != std::string::npos);
  REQUIRE(run.out.find("wrote 4 replicate rows") != std::string::npos);
  for (const auto* name : {"replicates.csv", "knn_long.csv", "table1.csv", "table1.txt",
                           "summary.csv", "run_metadata.txt"})
    REQUIRE(fs::exists(fs::path(out_dir) / name));
  const auto replicates = slurp(fs::path(out_dir) / "replicates.csv");
  REQUIRE(replicates.rfind("algorithm,m,replicate,seed,n,edges,", 0) == 0);
  REQUIRE(replicates.find("\nba,1,0,") != std::string::npos);
  REQUIRE(replicates.find("\nmb,1,1,") != std::string::npos);

  // a config file plus a flag override: the flag wins
  const auto config_path = dir.path / "grid.cfg";
  std::ofstream(config_path) << "n = 40\nm_values = 1\nreplicates = 2\nalgorithms = ba,mb\n"
                             << "master_seed = 3\nout_dir = " << (dir.path / "cfg_out").string()
                             << "\n";
  const auto run2 = run_cli(dir, "experiment --config " + config_path.string() +
                                     " --replicates 1");
  REQUIRE(run2.exit_code == 0);
  REQUIRE(run2.out.find("wrote 2 replicate rows") != std::string::npos);
  const auto cfg_rows = slurp(dir.path / "cfg_out" / "replicates.csv");
  // replicate 0 rows are seed-identical across the two runs
  std::istringstream first_run(replicates);
  std::string header, ba_row;
  std::getline(first_run, header);
  std::getline(first_run, ba_row);
  REQUIRE(cfg_rows.find(ba_row) != std::string::npos);

  // resample mode runs end to end
  const auto run3 = run_cli(dir, "experiment --n 40 --m-values 1 --replicates 1 "
                                 "--algorithms mr --mode resample --out-dir " +
                                     (dir.path / "resample_out").string());
  REQUIRE(run3.exit_code == 0);

  // unwritable output location
  const auto blocker = dir.path / "occupied";
  std::ofstream(blocker).put('x');
  const auto run4 = run_cli(dir, "experiment --n 40 --m-values 1 --replicates 1 --algorithms ba "
                                 "--out-dir " + (blocker / "nested").string());
  REQUIRE(run4.exit_code == 2);

  // bad config key cites its line
  const auto bad_config = dir.path / "bad.cfg";
  std::ofstream(bad_config) << "n = 40\nwhat = 1\n";
  REQUIRE(run_cli(dir, "experiment --config " + bad_config.string()).exit_code == 1);
}
