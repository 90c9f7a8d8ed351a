// End-to-end checks of the lptx command line contract: exit codes, catalog
// text, report artifacts and byte-identical reruns. Takes the binary path as
// argv[1].

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void expect(bool ok, const std::string& what) {
  if (ok) {
    std::cout << "[ok] " << what << "\n";
  } else {
    std::cout << "[FAIL] " << what << "\n";
    ++failures;
  }
}

struct RunResult {
  int status;
  std::string output;
};

RunResult run(const std::string& cmd) {
  std::string full = cmd + " 2>&1";
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string out;
  char buf[4096];
  while (std::size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  int rc = pclose(pipe);
  return {WEXITSTATUS(rc), out};
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: lptx_cli_tests <path-to-lptx>\n";
    return 2;
  }
  std::string bin = argv[1];
  fs::path work = fs::temp_directory_path() / "lptx_cli_tests";
  fs::remove_all(work);
  fs::create_directories(work);

  // list: catalog entries with their anchors, one per experiment.
  RunResult list = run(bin + " list");
  expect(list.status == 0, "list exits 0");
  expect(list.output.find("commutator → Lemma 2.2") != std::string::npos, "catalog maps commutator");
  expect(list.output.find("log-loss → Theorem 1.1") != std::string::npos, "catalog maps log-loss");
  int lines = 0;
  for (char c : list.output)
    if (c == '\n') ++lines;
  expect(lines == 8, "catalog lists the eight experiments");

  // verify trifrequency at a small scale: writes CSV + JSON, exits 0.
  std::string out1 = (work / "run1").string();
  std::string cmd = bin + " verify trifrequency --grid 64 --nt 32 --seed 7 --bank 8 --out " + out1;
  RunResult v1 = run(cmd);
  expect(v1.status == 0, "verify trifrequency exits 0");
  expect(fs::exists(fs::path(out1) / "trifrequency.csv"), "CSV artifact written");
  expect(fs::exists(fs::path(out1) / "trifrequency_summary.json"), "JSON summary written");

  // Determinism: identical config and seed give byte-identical CSV.
  std::string out2 = (work / "run2").string();
  RunResult v2 = run(bin + " verify trifrequency --grid 64 --nt 32 --seed 7 --bank 8 --out " + out2);
  expect(v2.status == 0, "rerun exits 0");
  expect(slurp(fs::path(out1) / "trifrequency.csv") == slurp(fs::path(out2) / "trifrequency.csv"),
         "rerun reproduces byte-identical CSV");

  // Different seed changes the rows.
  std::string out3 = (work / "run3").string();
  run(bin + " verify trifrequency --grid 64 --nt 32 --seed 8 --bank 8 --out " + out3);
  expect(slurp(fs::path(out1) / "trifrequency.csv") != slurp(fs::path(out3) / "trifrequency.csv"),
         "different seed changes the CSV");

  // Missing coefficient spec file: input error, exit 1.
  RunResult miss = run(bin + " verify interpolation --grid 64 --nt 32 --coeff-spec /nonexistent.json --out " +
                       (work / "miss").string());
  expect(miss.status == 1, "missing coefficient spec exits 1");
  expect(miss.output.find("error:") != std::string::npos, "missing spec reports an error");

  // Unknown experiment: exit 1.
  expect(run(bin + " verify warble --out " + (work / "x").string()).status == 1, "unknown experiment exits 1");

  // Config file: unknown keys rejected with exit 1; valid config runs.
  fs::path bad_cfg = work / "bad.json";
  std::ofstream(bad_cfg) << R"({"grid": 64, "wobble": 3})";
  expect(run(bin + " verify trifrequency --config " + bad_cfg.string()).status == 1, "unknown config key exits 1");

  fs::path good_cfg = work / "good.json";
  std::ofstream(good_cfg) << R"({"grid": 64, "nt": 32, "seed": 7, "bank": 8})";
  std::string out4 = (work / "run4").string();
  RunResult v4 = run(bin + " verify trifrequency --config " + good_cfg.string() + " --out " + out4);
  expect(v4.status == 0, "config-driven run exits 0");
  expect(slurp(fs::path(out1) / "trifrequency.csv") == slurp(fs::path(out4) / "trifrequency.csv"),
         "config file reproduces the flag run");

  // Flags win over config values.
  std::string out5 = (work / "run5").string();
  RunResult v5 = run(bin + " verify trifrequency --config " + good_cfg.string() + " --seed 8 --out " + out5);
  expect(v5.status == 0, "flag-over-config run exits 0");
  expect(slurp(fs::path(out3) / "trifrequency.csv") == slurp(fs::path(out5) / "trifrequency.csv"),
         "explicit flag overrides the config seed");

  // Honest verdict failure: delta0 values beyond the contraction threshold
  // (about 63 for this instance) exit 2.
  RunResult fail = run(bin + " sweep-delta0 --grid 32 --nt 32 --coeff-spec builtin:time-constant" +
                       " --delta 200,400 --n-terms 5 --out " + (work / "fail").string());
  expect(fail.status == 2, "failed verdict exits 2");

  // Decoupled probe: ratio column shrinks along the lambda sweep.
  std::string out6 = (work / "probe").string();
  fs::path zero_spec = work / "zero.json";
  std::ofstream(zero_spec) << R"({"delta0": 1e-9, "seed": 1, "c": [{"band": 1, "profile": "const", "amp": 1.0}]})";
  RunResult probe = run(bin + " probe-log-loss --grid 64 --nt 64 --lambda 4,16,64 --substeps 1 --coeff-spec " +
                        zero_spec.string() + " --out " + out6);
  expect(probe.status == 0 || probe.status == 2, "probe runs to a verdict");
  {
    std::ifstream csv(fs::path(out6) / "log-loss.csv");
    std::string line;
    std::getline(csv, line);
    expect(line == "experiment,lambda,lhs,rhs,ratio", "probe CSV header");
    double prev = 1e300;
    bool shrinking = true;
    int rows = 0;
    while (std::getline(csv, line)) {
      auto pos = line.rfind(',');
      double ratio = std::stod(line.substr(pos + 1));
      shrinking = shrinking && ratio < prev;
      prev = ratio;
      ++rows;
    }
    expect(rows == 3 && shrinking, "near-zero coupling: ratio column shrinks in lambda");
  }

  // LPTX_OUT provides the default output directory.
  std::string envout = (work / "envout").string();
  RunResult env = run("LPTX_OUT=" + envout + " " + bin + " verify trifrequency --grid 64 --nt 32 --seed 7 --bank 8");
  expect(env.status == 0, "LPTX_OUT run exits 0");
  expect(fs::exists(fs::path(envout) / "trifrequency.csv"), "LPTX_OUT directs the artifacts");

  // solve: writes the slice stream and sidecar.
  std::string out7 = (work / "solve").string();
  RunResult solve = run(bin + " solve --grid 32 --nt 32 --substeps 2 --g-kind constant --out " + out7);
  expect(solve.status == 0, "solve exits 0");
  expect(fs::exists(fs::path(out7) / "u.bin"), "solution stream written");
  expect(fs::exists(fs::path(out7) / "solve_summary.json"), "solve sidecar written");
  std::string sidecar = slurp(fs::path(out7) / "solve_summary.json");
  expect(sidecar.find("\"method\": \"rk4\"") != std::string::npos, "sidecar records the method");
  expect(sidecar.find("\"sup_l1\"") != std::string::npos, "sidecar records sup_l1");

  std::cout << (failures == 0 ? "CLI: all checks passed\n" : "CLI: FAILURES\n");
  return failures == 0 ? 0 : 1;
}
