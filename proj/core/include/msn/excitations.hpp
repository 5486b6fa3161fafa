#pragma once

#include <string>
#include <vector>

#include "msn/gates.hpp"
#include "msn/mapping.hpp"
#include "msn/pauli.hpp"

namespace msn {

// Modes are 0-based logical fermionic modes. A single (p,q) is a_p† a_q − a_q† a_p,
// a double (p,q,r,s) is a_p† a_q† a_r a_s − h.c.
struct ExcitationSpec {
  enum class Kind { single, double_ };
  Kind kind = Kind::single;
  std::vector<int> modes;
  std::string param;

  static ExcitationSpec single(int p, int q, std::string param = {});
  static ExcitationSpec double_(int p, int q, int r, int s, std::string param = {});
  std::string to_string() const;
};

// Anti-Hermitian generator under the mapping (angle factored out).
PauliSum generator(const ExcitationSpec& spec, const MajoranaMapping& m);
// γ_i γ_j for 1-based Majorana slots; exp(π/4 γ_i γ_j) is the MSWAP M_ij.
PauliSum majorana_pair(const MajoranaMapping& m, int i, int j);

// Single-qubit Clifford as the images of X and Z (index into the 24-element table).
struct LocalClifford {
  int index = 0;
  // letter in "XYZ" and sign of U P U† for P in X, Y, Z
  char image(char letter, int* sign) const;
  std::vector<GateKind> gates() const;  // h/s word, applied first to last
  bool identity() const { return index == 0; }
};
int local_clifford_count();

// A fixed block on k local qubits: circuit(θ) = product of exp(π/4 C_j) for the Clifford
// generators, applied after exp(θ G) for the parametric generator (if any).
struct BlockTemplate {
  std::string name;
  int k = 0;
  bool has_param = true;
  PauliSum param_generator;                 // over k qubits, matched up to sign
  std::vector<PauliSum> clifford_generators;  // over k qubits, matched exactly
  Circuit circuit;                           // parameter 0 is θ
  std::vector<std::vector<int>> orders;      // allowed placements of local qubits
};

enum class BlockKind { single_jw, single_fswap_jw, fswap_jw, double_yordanov, double_linear, double_optimized,
                       fswap_paired };
const BlockTemplate& block_template(BlockKind kind);

// Realize exp(θ G) (then the Clifford rotations exp(π/4 C_j)) on the given wires by a local
// Clifford frame around the template. G and C_j are over the full register. Throws
// InvariantError when no frame matches.
Circuit realize_block(BlockKind kind, const PauliSum& g, const std::vector<PauliSum>& cliffords,
                      const std::vector<int>& wires, int n_qubits, const std::string& param);

// exp(θ G) for a generator whose terms are all single-qubit and commute.
Circuit local_rotations(const PauliSum& g, int n_qubits, const std::string& param);
// exp(π/4 C) for a two-local Pauli C = ±i W, one two-qubit Clifford gate.
Circuit mswap_gate(const PauliSum& c, int n_qubits);

// Blocks on standard encodings at fixed positions.
Circuit single_block_jw(int n_qubits, int p, const std::string& param);
Circuit single_block_paired(int n_qubits, int p, const std::string& param);
Circuit double_block_yordanov(int n_qubits, const std::vector<int>& qs, const std::string& param);
Circuit double_block_linear(int n_qubits, const std::vector<int>& qs, const std::string& param);
Circuit double_block_optimized(int n_qubits, const std::vector<int>& qs, const std::string& param);
// MSWAP of two Majorana slots under the mapping; FSWAP of adjacent JW modes p, p+1.
Circuit mswap_block(const MajoranaMapping& m, int i, int j);
Circuit fswap_block(int n_qubits, int p);

}  // namespace msn
