#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>
#include <spdlog/spdlog.h>

#include "msn/compiler.hpp"
#include "msn/errors.hpp"
#include "msn/hamiltonian.hpp"
#include "msn/mapping.hpp"
#include "msn/networks.hpp"
#include "msn/sim.hpp"
#include "msn/vqe.hpp"

using namespace msn;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// FNV-1a; stable across platforms, used only to tag outputs with their inputs.
std::string digest(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return fmt::format("{:016x}", h);
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::pair<std::string, std::string>> inputs;  // (label, digest)

  void write(const std::string& out, bool as_json) const {
    std::ostringstream os;
    if (as_json) {
      json arr = json::array();
      for (const auto& r : rows) {
        json o;
        for (std::size_t i = 0; i < columns.size(); ++i) o[columns[i]] = r[i];
        arr.push_back(o);
      }
      json in = json::object();
      for (const auto& [k, v] : inputs) in[k] = v;
      os << json{{"tool", std::string("msn ") + kVersion}, {"inputs", in}, {"rows", arr}}.dump(1) << "\n";
    } else {
      os << "# msn " << kVersion;
      for (const auto& [k, v] : inputs) os << " " << k << "=" << v;
      os << "\n";
      for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
      os << "\n";
      for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "\n";
      }
    }
    emit(out, os.str());
  }

  static void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-") {
      std::cout << text;
      return;
    }
    std::ofstream f(out);
    if (!f) throw SchemaError("cannot write " + out);
    f << text;
  }
};

std::string num(double x) { return fmt::format("{:.12g}", x); }

std::vector<double> parse_levels(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw SchemaError("bad level '" + tok + "'");
    }
  }
  return out;
}

Strategy parse_strategy(const std::string& s) { return strategy_from_name(s == "ladder" ? "ladder-jw" : s); }

Topology default_topology(Strategy s) {
  switch (s) {
    case Strategy::msn: return Topology::grid_2xN;
    case Strategy::fsn: return Topology::linear;
    default: return Topology::all_to_all;
  }
}

std::map<std::string, double> read_params(const std::string& path) {
  std::map<std::string, double> vals;
  try {
    for (const auto& [k, v] : json::parse(read_file(path)).items()) vals[k] = v.get<double>();
  } catch (const json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return vals;
}

// --- map -------------------------------------------------------------------

struct MapArgs {
  std::string family = "jw";
  int n = 2;
  std::string tree;
  std::string out;
  bool as_json = false;
};

int cmd_map(const MapArgs& a) {
  MajoranaMapping m;
  Table t;
  if (!a.tree.empty()) {
    const std::string text = read_file(a.tree);
    m = tree_to_mapping(TernaryTree::from_json(text));
    t.inputs.push_back({"tree", digest(text)});
  } else if (a.family == "jw") {
    m = jw_mapping(a.n);
  } else if (a.family == "paired") {
    m = paired_jw_mapping(a.n);
  } else if (a.family == "bk") {
    m = bk_mapping(a.n);
  } else {
    throw SchemaError("unknown mapping family '" + a.family + "'");
  }
  const bool valid = validate_mapping(m);
  t.columns = {"gamma", "string", "weight"};
  for (int j = 1; j <= 2 * m.n_modes(); ++j)
    t.rows.push_back({std::to_string(j), m.gamma(j).to_string(), std::to_string(m.gamma(j).weight())});
  t.rows.push_back({"valid", valid ? "true" : "false", ""});
  t.write(a.out, a.as_json);
  if (!valid) throw InvariantError("mapping strings are not pairwise anticommuting Hermitian involutions");
  return 0;
}

// --- schedule --------------------------------------------------------------

struct ScheduleArgs {
  std::string family = "cyclic";
  int modes = 8;
  int N = 2;
  int k = 1;
  std::string out;
  bool as_json = false;
};

int cmd_schedule(const ScheduleArgs& a) {
  SwapSchedule s = a.family == "cyclic" ? cyclic_schedule(a.modes)
                   : a.family == "msn"  ? msn_schedule(a.N, a.k)
                   : a.family == "fsn"  ? fsn_schedule(a.N, a.k)
                                        : throw SchemaError("unknown schedule family '" + a.family + "'");
  if (a.as_json) {
    Table::emit(a.out, s.to_json() + "\n");
    return 0;
  }
  Table t;
  t.columns = {"step", "kind", "a", "b", "flavor", "excitations"};
  for (std::size_t i = 0; i < s.steps.size(); ++i) {
    const auto& st = s.steps[i];
    if (st.kind == SwapStep::Kind::transposition) {
      t.rows.push_back({std::to_string(i), "transposition", std::to_string(st.t.a), std::to_string(st.t.b),
                        st.t.flavor == SwapFlavor::fswap ? "fswap" : "mswap_pair", ""});
    } else {
      std::string ex;
      for (const auto& e : st.specs) ex += (ex.empty() ? "" : " ") + e.to_string();
      t.rows.push_back({std::to_string(i), "window", "", "", "", ex});
    }
  }
  t.inputs.push_back({"transpositions", std::to_string(s.transposition_count())});
  t.write(a.out, false);
  return 0;
}

// --- compile ---------------------------------------------------------------

struct CompileArgs {
  std::string family = "kupccgsd";
  std::string strategy = "msn";
  std::string topology;
  int N = 2;
  int k = 1;
  std::string reference;
  std::string hamiltonian;
  std::string out;
  std::string qasm;
};

int cmd_compile(const CompileArgs& a) {
  AnsatzSpec spec;
  spec.family = family_from_name(a.family);
  spec.n_spatial = a.N;
  spec.k = a.k;
  if (!a.hamiltonian.empty()) {
    const auto hf = HamiltonianFile::load(a.hamiltonian);
    spec.n_spatial = hf.n_spatial;
    spec.reference_occupations = hf.reference_occupations;
  }
  if (!a.reference.empty()) {
    spec.reference_occupations.clear();
    for (char c : a.reference) {
      if (c != '0' && c != '1') throw SchemaError("reference must be a bitstring");
      spec.reference_occupations.push_back(c == '1');
    }
  }
  const Strategy s = parse_strategy(a.strategy);
  const Topology topo = a.topology.empty() ? default_topology(s) : topology_from_name(a.topology);
  const CompiledAnsatz ca = compile(spec, s, topo);
  for (const auto& n : ca.notes) spdlog::warn("{}", n);
  Table::emit(a.out, to_json(ca) + "\n");
  if (!a.qasm.empty()) Table::emit(a.qasm, to_qasm(ca.circuit, std::vector<double>(ca.circuit.n_params(), 0.0)));
  return 0;
}

// --- metrics / scaling -----------------------------------------------------

struct MetricsArgs {
  std::vector<std::string> circuits;
  std::string basis = "cx_u3";
  std::string out;
  bool as_json = false;
};

const std::vector<std::string> kMetricColumns = {"qubits", "depth", "two_qubit_count", "two_qubit_depth", "parameters"};

std::vector<std::string> metric_cells(const CircuitMetrics& m) {
  return {std::to_string(m.qubits), std::to_string(m.depth), std::to_string(m.two_qubit_count),
          std::to_string(m.two_qubit_depth), std::to_string(m.parameters)};
}

int cmd_metrics(const MetricsArgs& a) {
  Table t;
  t.columns = {"file", "strategy", "topology", "basis"};
  t.columns.insert(t.columns.end(), kMetricColumns.begin(), kMetricColumns.end());
  t.columns.push_back("transposition_two_qubit");
  const NativeBasis basis = basis_from_name(a.basis);
  for (const auto& path : a.circuits) {
    const std::string text = read_file(path);
    const CompiledAnsatz ca = compiled_from_json(text);
    t.inputs.push_back({path, digest(text)});
    std::vector<std::string> row = {path, strategy_name(ca.strategy), topology_name(ca.connectivity.family), a.basis};
    for (auto& c : metric_cells(metrics(ca.circuit, basis))) row.push_back(c);
    row.push_back(std::to_string(ca.transposition_two_qubit));
    t.rows.push_back(row);
  }
  t.write(a.out, a.as_json);
  return 0;
}

struct ScalingArgs {
  std::vector<std::string> strategies = {"msn", "fsn"};
  std::string topology;
  std::string family = "kupccgsd";
  int n_min = 2, n_max = 8, n_step = 1;
  int k = 1;
  std::string basis = "cx_u3";
  std::string out;
  bool as_json = false;
};

int cmd_scaling(const ScalingArgs& a) {
  struct Task {
    Strategy s;
    Topology topo;
    int N;
  };
  std::vector<Task> tasks;
  for (const auto& name : a.strategies) {
    const Strategy s = parse_strategy(name);
    const Topology topo = a.topology.empty() ? default_topology(s) : topology_from_name(a.topology);
    for (int N = a.n_min; N <= a.n_max; N += std::max(1, a.n_step)) tasks.push_back({s, topo, N});
  }
  const NativeBasis basis = basis_from_name(a.basis);
  std::vector<CircuitMetrics> results(tasks.size());
  parallel_for(static_cast<int>(tasks.size()), [&](int i) {
    AnsatzSpec spec;
    spec.family = family_from_name(a.family);
    spec.n_spatial = tasks[i].N;
    spec.k = a.k;
    results[i] = metrics(compile(spec, tasks[i].s, tasks[i].topo).circuit, basis);
  });
  Table t;
  t.columns = {"strategy", "topology", "N"};
  t.columns.insert(t.columns.end(), kMetricColumns.begin(), kMetricColumns.end());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    std::vector<std::string> row = {strategy_name(tasks[i].s), topology_name(tasks[i].topo), std::to_string(tasks[i].N)};
    for (auto& c : metric_cells(results[i])) row.push_back(c);
    t.rows.push_back(row);
  }
  t.write(a.out, a.as_json);
  return 0;
}

// --- simulate / chi --------------------------------------------------------

struct ProblemArgs {
  std::string circuit;
  std::string hamiltonian;
  std::string noise;
  std::string params;
  bool optimize = false;
  std::uint64_t seed = 0;
  std::string out;
  bool as_json = false;
};

struct LoadedProblem {
  VqeProblem prob;
  std::vector<double> params;
  std::vector<std::pair<std::string, std::string>> inputs;
  double exact = 0;
  bool has_exact = false;
};

LoadedProblem load_problem(const ProblemArgs& a) {
  LoadedProblem lp;
  const std::string ctext = read_file(a.circuit);
  const std::string htext = read_file(a.hamiltonian);
  lp.inputs = {{"circuit", digest(ctext)}, {"hamiltonian", digest(htext)}};
  const CompiledAnsatz ca = compiled_from_json(ctext);
  const HamiltonianFile hf = HamiltonianFile::from_json(htext);
  std::optional<NoiseModel> nm;
  if (!a.noise.empty()) {
    const std::string ntext = read_file(a.noise);
    nm = NoiseModel::from_json(ntext);
    lp.inputs.push_back({"noise", digest(ntext)});
  }
  lp.prob = VqeProblem(hf.hamiltonian, ca, nm);
  if (hf.exact_ground_energy) {
    lp.exact = *hf.exact_ground_energy;
    lp.has_exact = true;
  }
  if (!a.params.empty()) {
    lp.params = bind_parameters(ca, read_params(a.params));
  } else if (a.optimize) {
    OptimizeOptions o;
    o.seed = a.seed;
    lp.params = optimize(lp.prob, o).params;
  } else {
    lp.params.assign(lp.prob.n_params(), 0.0);
  }
  return lp;
}

struct SimulateArgs : ProblemArgs {
  double lambda = -1;
  std::string state_out;
};

int cmd_simulate(const SimulateArgs& a) {
  LoadedProblem lp = load_problem(a);
  if (lp.prob.noise && a.lambda >= 0) lp.prob.noise = lp.prob.noise->scaled(a.lambda);
  const double e = energy(lp.prob, lp.params);
  const double e0 = noiseless_energy(lp.prob, lp.params);
  Table t;
  t.inputs = lp.inputs;
  t.columns = {"quantity", "value"};
  t.rows.push_back({"energy", num(e)});
  t.rows.push_back({"noiseless_energy", num(e0)});
  if (lp.has_exact) t.rows.push_back({"exact_ground_energy", num(lp.exact)});
  for (std::size_t i = 0; i < lp.params.size(); ++i)
    t.rows.push_back({"param:" + lp.prob.compiled.circuit.params()[i], num(lp.params[i])});
  t.write(a.out, a.as_json);
  if (!a.state_out.empty()) {
    const Circuit& c = lp.prob.compiled.circuit;
    const State s = lp.prob.noise ? evolve_noisy(c, *lp.prob.noise, lp.params, State::basis(c.n_qubits()))
                                  : run(c, lp.params, State::basis(c.n_qubits()));
    std::ostringstream os;
    os << "index,probability\n";
    const std::uint64_t dim = std::uint64_t{1} << c.n_qubits();
    for (std::uint64_t i = 0; i < dim; ++i)
      os << i << "," << num(s.mixed ? s.rho(i, i).real() : std::norm(s.psi(i))) << "\n";
    Table::emit(a.state_out, os.str());
  }
  return 0;
}

struct ChiArgs : ProblemArgs {
  std::string levels;
  bool partitions = false;
};

int cmd_chi(const ChiArgs& a) {
  if (a.noise.empty()) throw SchemaError("chi needs --noise");
  LoadedProblem lp = load_problem(a);
  const std::vector<double> levels = a.levels.empty() ? default_levels(lp.prob, lp.params) : parse_levels(a.levels);
  std::vector<PartitionRow> rows;
  if (a.partitions)
    rows = noise_partition_sweep(lp.prob, lp.params, levels);
  else
    rows.push_back({"Full", susceptibility(lp.prob, lp.params, levels)});
  Table t;
  t.inputs = lp.inputs;
  t.columns = {"partition", "level", "energy", "fit_intercept", "chi", "residual"};
  for (const auto& r : rows)
    for (const auto& [lv, e] : r.estimate.fit_points)
      t.rows.push_back({r.partition, num(lv), num(e), num(r.estimate.intercept), num(r.estimate.chi),
                        num(r.estimate.fit_residual)});
  t.write(a.out, a.as_json);
  for (const auto& r : rows)
    if (!r.estimate.intercept_ok)
      spdlog::warn("{}: fit intercept {:.9f} is off the noiseless energy {:.9f}; levels may be outside the linear regime",
                   r.partition, r.estimate.intercept, r.estimate.noiseless_energy);
  return 0;
}

void add_problem_options(CLI::App* c, ProblemArgs& a) {
  c->add_option("--circuit", a.circuit, "compiled ansatz JSON (from `msn compile`)")->required();
  c->add_option("--hamiltonian", a.hamiltonian, "Hamiltonian JSON")->required();
  c->add_option("--noise", a.noise, "noise model JSON");
  c->add_option("--params", a.params, "JSON file mapping parameter names to values");
  c->add_flag("--optimize", a.optimize, "optimize parameters on the ideal simulator first");
  c->add_option("--seed", a.seed, "optimizer seed");
  c->add_option("--out", a.out, "output file (default stdout)");
  c->add_flag("--json", a.as_json, "emit JSON instead of CSV");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Majorana swap network compiler and noise benchmarks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  MapArgs map_args;
  auto* map = app.add_subcommand("map", "print a fermion-to-qubit mapping");
  map->add_option("--family", map_args.family, "jw | paired | bk");
  map->add_option("--n", map_args.n, "number of fermionic modes");
  map->add_option("--tree", map_args.tree, "ternary tree JSON");
  map->add_option("--out", map_args.out);
  map->add_flag("--json", map_args.as_json);

  ScheduleArgs sched_args;
  auto* sched = app.add_subcommand("schedule", "print a swap schedule");
  sched->add_option("--family", sched_args.family, "cyclic | msn | fsn");
  sched->add_option("--modes", sched_args.modes, "spin-orbital count for cyclic");
  sched->add_option("--N", sched_args.N, "spatial orbitals for msn/fsn");
  sched->add_option("--k", sched_args.k, "repetitions for msn/fsn");
  sched->add_option("--out", sched_args.out);
  sched->add_flag("--json", sched_args.as_json);

  CompileArgs comp_args;
  auto* comp = app.add_subcommand("compile", "compile an ansatz to a circuit");
  comp->add_option("--family", comp_args.family, "kupccgsd | uccgsd");
  comp->add_option("--strategy", comp_args.strategy, "ladder-jw | ladder-bk | fsn | msn | cyclic");
  comp->add_option("--topology", comp_args.topology, "all | linear | 2xN (default per strategy)");
  comp->add_option("--N", comp_args.N, "spatial orbitals");
  comp->add_option("--k", comp_args.k, "repetitions");
  comp->add_option("--reference", comp_args.reference, "reference occupation bitstring");
  comp->add_option("--hamiltonian", comp_args.hamiltonian, "take N and reference from a Hamiltonian file");
  comp->add_option("--out", comp_args.out);
  comp->add_option("--qasm", comp_args.qasm, "also write OpenQASM with zero parameters");

  MetricsArgs met_args;
  auto* met = app.add_subcommand("metrics", "depth and gate counts of compiled circuits");
  met->add_option("circuits", met_args.circuits, "compiled ansatz JSON files")->required();
  met->add_option("--basis", met_args.basis, "cx_u3 | rzz_rx_rz | rzz_rxyz");
  met->add_option("--out", met_args.out);
  met->add_flag("--json", met_args.as_json);

  ScalingArgs scal_args;
  auto* scal = app.add_subcommand("scaling", "metrics over a range of orbital counts");
  scal->add_option("--strategies", scal_args.strategies, "comma separated")->delimiter(',');
  scal->add_option("--topology", scal_args.topology, "override the per-strategy default");
  scal->add_option("--family", scal_args.family);
  scal->add_option("--n-min", scal_args.n_min);
  scal->add_option("--n-max", scal_args.n_max);
  scal->add_option("--n-step", scal_args.n_step);
  scal->add_option("--k", scal_args.k);
  scal->add_option("--basis", scal_args.basis);
  scal->add_option("--out", scal_args.out);
  scal->add_flag("--json", scal_args.as_json);

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "energy of a compiled circuit, optionally noisy");
  add_problem_options(sim, sim_args);
  sim->add_option("--lambda", sim_args.lambda, "noise multiplier override");
  sim->add_option("--state-out", sim_args.state_out, "write basis-state probabilities as CSV");

  ChiArgs chi_args;
  auto* chi = app.add_subcommand("chi", "noise susceptibility by linear fit over noise levels");
  add_problem_options(chi, chi_args);
  chi->add_option("--levels", chi_args.levels, "comma separated noise multipliers (default: auto)");
  chi->add_flag("--partitions", chi_args.partitions, "also fit the 1q&2q and 2q partitions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*map) return cmd_map(map_args);
    if (*sched) return cmd_schedule(sched_args);
    if (*comp) return cmd_compile(comp_args);
    if (*met) return cmd_metrics(met_args);
    if (*scal) return cmd_scaling(scal_args);
    if (*sim) return cmd_simulate(sim_args);
    if (*chi) return cmd_chi(chi_args);
  } catch (const SchemaError& e) {
    spdlog::error("schema error: {}", e.what());
    return 2;
  } catch (const InvariantError& e) {
    spdlog::error("invariant violation: {}", e.what());
    return 3;
  } catch (const ResourceError& e) {
    spdlog::error("resource limit: {}", e.what());
    return 4;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
