// SPDX-License-Identifier: Apache-2.0

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "usynth/bench.hpp"
#include "usynth/qasm.hpp"
#include "usynth/unitary_io.hpp"

using namespace usynth;

namespace {

struct SynthArgs {
  std::string in;
  std::string out;
  std::string topology = "all";
  std::string coupling;
  std::string report;
  std::string backend = "template2q";
  int block_size = 2;
  double threshold = 1e-3;
  double native_threshold = 1e-8;
  uint64_t seed = 0;
  int restarts = 1;
  int max_layers = 64;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
};

std::string format_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

Topology make_topology(const std::string& kind, const std::string& coupling, int n) {
  if (!coupling.empty()) {
    Topology t = Topology::from_coupling_file(coupling);
    if (t.n > n) throw std::invalid_argument("coupling file names a qubit beyond the target width");
    t.n = n;  // isolated trailing qubits may be absent from the file
    return t;
  }
  if (kind == "all") return Topology::all_to_all(n);
  if (kind == "linear") return Topology::linear(n);
  throw std::invalid_argument("unknown topology '" + kind + "' (expected all|linear)");
}

SynthOptions make_options(const SynthArgs& args) {
  SynthOptions opts;
  opts.decompose.block_size = args.block_size;
  opts.decompose.threshold = args.threshold;
  opts.decompose.max_layers = args.max_layers;
  opts.decompose.restarts_per_layer = args.restarts;
  opts.decompose.seed = args.seed;
  opts.backend = args.backend;
  opts.native_threshold = args.native_threshold;
  opts.jobs = std::max(1, args.jobs);
  return opts;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int cmd_synth(const SynthArgs& args) {
  const CMatrix target = read_unitary_file(args.in);
  int n = 0;
  while ((Eigen::Index(1) << n) < target.rows()) ++n;

  const Topology topo = make_topology(args.topology, args.coupling, n);
  const auto start = std::chrono::steady_clock::now();
  const SynthResult res = synthesize(target, topo, make_options(args));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const Metrics m = metrics(res.circuit);
  std::ostringstream report;
  report << "input        " << args.in << "\n"
         << "topology     " << (args.coupling.empty() ? args.topology : args.coupling) << "\n"
         << "block_size   " << args.block_size << "\n"
         << "threshold    " << format_double(args.threshold) << "\n"
         << "seed         " << args.seed << "\n"
         << "restarts     " << args.restarts << "\n"
         << "backend      " << args.backend << "\n"
         << "blocks       " << res.blocks.size() << "\n"
         << "distance     " << format_double(res.distance) << "\n"
         << "converged    " << (res.converged ? "yes" : "no") << "\n"
         << "cnots        " << m.cnot_count << "\n"
         << "u3s          " << m.u3_count << "\n"
         << "depth        " << m.depth << "\n"
         << "parallelism  " << format_double(m.parallelism) << "\n"
         << "time_s       " << format_double(seconds) << "\n";

  const std::string qasm = emit_qasm(res.circuit);
  if (!args.out.empty()) {
    write_text(args.out, qasm);
    std::cout << report.str();
  } else {
    std::cout << qasm;
    std::cerr << report.str();
  }
  if (!args.report.empty()) write_text(args.report, report.str());
  if (!res.converged) {
    std::cerr << "warning: best-effort result at distance " << format_double(res.distance)
              << " (threshold " << format_double(args.threshold) << ")\n";
    return 2;
  }
  return 0;
}

int cmd_verify(const std::string& circuit_path, const std::string& target_path,
               int random_states, double tol, uint64_t seed) {
  const Circuit circuit = parse_qasm(read_text(circuit_path));
  const CMatrix target = read_unitary_file(target_path);
  if ((Eigen::Index(1) << circuit.n) != target.rows()) {
    std::cerr << "error: circuit has " << circuit.n << " qubits, target is "
              << target.rows() << "-dimensional\n";
    return 1;
  }

  const CMatrix uc = circuit_to_unitary(circuit);
  const double dist = distance(uc, target);
  const FidelityStats fid = state_fidelity(circuit, target, random_states, seed);
  std::cout << "distance      " << format_double(dist) << "\n"
            << "distance_f    " << format_double(distance_frobenius(uc, target)) << "\n"
            << "fidelity_min  " << format_double(fid.min) << "\n"
            << "fidelity_avg  " << format_double(fid.avg) << "\n"
            << "states        " << fid.states << "\n";
  return dist <= tol ? 0 : 1;
}

int cmd_metrics(const std::string& circuit_path) {
  const Metrics m = metrics(parse_qasm(read_text(circuit_path)));
  std::cout << "cnots        " << m.cnot_count << "\n"
            << "u3s          " << m.u3_count << "\n"
            << "depth        " << m.depth << "\n"
            << "parallelism  " << format_double(m.parallelism) << "\n";
  return 0;
}

int cmd_bench(const std::string& suite, const SynthArgs& args, const std::string& out_dir) {
  const SynthOptions opts = make_options(args);
  std::vector<BenchRow> rows;
  for (const std::string& name : benchmark_suite(suite)) {
    rows.push_back(run_benchmark(name, args.topology, opts));
    const BenchRow& row = rows.back();
    std::cerr << row.name << ": distance " << format_double(row.distance) << ", "
              << row.stats.cnot_count << " cnots, " << format_double(row.seconds) << "s\n";
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      write_text(out_dir + "/" + row.name + ".qasm", emit_qasm(row.circuit));
      write_unitary_file(out_dir + "/" + row.name + ".unitary", benchmark_target(row.name));
    }
  }
  const std::string table = format_bench_table(rows);
  std::cout << table;
  if (!args.report.empty()) write_text(args.report, table);

  for (const BenchRow& row : rows) {
    if (!row.converged) return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"usynth: decomposes a unitary matrix into a U3/CNOT circuit for a target topology"};
  app.require_subcommand(1);

  SynthArgs args;

  CLI::App* synth = app.add_subcommand("synth", "synthesize a circuit from a unitary file");
  synth->add_option("--in", args.in, "target unitary file (see docs/FORMATS.md)")->required();
  synth->add_option("--out", args.out, "output OpenQASM path (default: stdout)");
  synth->add_option("--topology", args.topology, "coupling graph: all|linear");
  synth->add_option("--coupling", args.coupling, "coupling file, one 'i j' edge per line");
  synth->add_option("--block-size", args.block_size, "generic block width m");
  synth->add_option("--threshold", args.threshold, "decomposition distance threshold");
  synth->add_option("--native-threshold", args.native_threshold, "per-block backend threshold");
  synth->add_option("--backend", args.backend, "native synthesis backend");
  synth->add_option("--seed", args.seed, "RNG seed");
  synth->add_option("--restarts", args.restarts, "optimizer restarts per layer");
  synth->add_option("--max-layers", args.max_layers, "layer cap before best-effort exit");
  synth->add_option("--jobs", args.jobs, "parallel workers for instantiation");
  synth->add_option("--report", args.report, "write a key-value run report here");

  std::string circuit_path, target_path;
  int random_states = 0;
  double tol = 1e-3;
  uint64_t verify_seed = 0;
  CLI::App* verify = app.add_subcommand("verify", "compare a QASM circuit against a unitary");
  verify->add_option("--circuit", circuit_path, "OpenQASM 2.0 file")->required();
  verify->add_option("--target", target_path, "target unitary file")->required();
  verify->add_option("--random-states", random_states, "extra Haar-random input states");
  verify->add_option("--tol", tol, "acceptance threshold on the distance");
  verify->add_option("--seed", verify_seed, "RNG seed for the random states");

  std::string metrics_path;
  CLI::App* metrics_cmd = app.add_subcommand("metrics", "print gate counts and depth");
  metrics_cmd->add_option("--circuit", metrics_path, "OpenQASM 2.0 file")->required();

  std::string suite = "small";
  std::string out_dir;
  CLI::App* bench = app.add_subcommand("bench", "run a generated benchmark suite");
  bench->add_option("--suite", suite, "small|stretch");
  bench->add_option("--topology", args.topology, "coupling graph: all|linear");
  bench->add_option("--threshold", args.threshold, "decomposition distance threshold");
  bench->add_option("--seed", args.seed, "RNG seed");
  bench->add_option("--restarts", args.restarts, "optimizer restarts per layer");
  bench->add_option("--jobs", args.jobs, "parallel workers for instantiation");
  bench->add_option("--report", args.report, "write the result table here");
  bench->add_option("--out-dir", out_dir, "write per-benchmark qasm and unitary files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (synth->parsed()) return cmd_synth(args);
    if (verify->parsed()) {
      return cmd_verify(circuit_path, target_path, random_states, tol, verify_seed);
    }
    if (metrics_cmd->parsed()) return cmd_metrics(metrics_path);
    if (bench->parsed()) return cmd_bench(suite, args, out_dir);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 1;
}
