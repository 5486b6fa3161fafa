#pragma once

#include <map>
#include <string>
#include <vector>

#include "msn/excitations.hpp"
#include "msn/gates.hpp"
#include "msn/mapping.hpp"
#include "msn/networks.hpp"

namespace msn {

enum class AnsatzFamily { uccgsd, kupccgsd };
enum class Strategy { ladder_jw, ladder_bk, fsn, msn, cyclic };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& s);
AnsatzFamily family_from_name(const std::string& s);

struct AnsatzSpec {
  AnsatzFamily family = AnsatzFamily::kupccgsd;
  int n_spatial = 2;
  int k = 1;
  std::vector<int> reference_occupations;  // one bit per interleaved spin orbital; empty = none

  int n_modes() const { return 2 * n_spatial; }
};

struct ParamInfo {
  ExcitationSpec spec;
  int layer = 0;
};

struct CompiledAnsatz {
  Strategy strategy = Strategy::ladder_jw;
  Circuit circuit;
  MajoranaMapping initial_mapping;
  MajoranaMapping final_mapping;
  std::vector<int> mode_permutation;  // logical mode -> wire at circuit end (-1 if not a single wire)
  std::map<std::string, ParamInfo> parameter_table;
  Connectivity connectivity;
  int transposition_two_qubit = 0;  // two-qubit gates spent on schedule transpositions (cyclic)
  std::vector<std::string> notes;  // fallbacks taken during compilation
};

// Excitations in the canonical Trotter order shared by all strategies.
std::vector<ExcitationSpec> excitation_sequence(const AnsatzSpec& spec);

// Each generator term exponentiated by a CX ladder, terms in lexicographic order.
CompiledAnsatz compile_ladder(const AnsatzSpec& spec, const MajoranaMapping& m);
CompiledAnsatz compile_upccgsd(const AnsatzSpec& spec, Strategy strategy, const Connectivity& conn);
CompiledAnsatz compile_uccgsd_cyclic(const AnsatzSpec& spec, const Connectivity& conn);
// Dispatch on strategy name with the default connectivity of each.
CompiledAnsatz compile(const AnsatzSpec& spec, Strategy strategy, Topology topology);

// h is over the Jordan–Wigner encoding of the logical modes (qubit = mode); the result acts
// on the compiled circuit's output.
PauliSum remap_observable(const PauliSum& h, const CompiledAnsatz& ca);

// Basis state encoding the occupations under a mapping whose number operators are Z-type.
std::vector<int> reference_bits(const MajoranaMapping& m, const std::vector<int>& occupations);

struct CircuitMetrics {
  int qubits = 0;
  int depth = 0;
  int two_qubit_count = 0;
  int two_qubit_depth = 0;
  int parameters = 0;
};

// Counts on the circuit lowered to the native basis.
CircuitMetrics metrics(const Circuit& c, NativeBasis basis = NativeBasis::cx_u3);

// Round-trip form used by the CLI: circuit, mappings, parameter table and bookkeeping.
std::string to_json(const CompiledAnsatz& ca);
CompiledAnsatz compiled_from_json(const std::string& text);

// Parameter vector in circuit order from values keyed by name (missing names are 0).
std::vector<double> bind_parameters(const CompiledAnsatz& ca, const std::map<std::string, double>& values);

}  // namespace msn
