#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msn/pauli.hpp"

namespace msn {

enum class GateKind {
  cx,
  rzz,        // exp(-i a/2 ZZ)
  clifford2,  // fused two-qubit Clifford stored as pauli_rot with angle ±pi/2
  rx,
  ry,
  rz,
  h,
  s,
  sdg,
  x,
  u3,         // u3(theta, phi, lambda) with numeric angles only
  pauli_rot,  // exp(-i a/2 W), W over the gate's qubits
  barrier
};

const char* kind_name(GateKind k);
GateKind kind_from_name(const std::string& s);

// Angle of a rotation is offset + scale * theta[param] (param < 0 means constant).
struct Gate {
  GateKind kind = GateKind::barrier;
  std::vector<int> qubits;
  PauliString word;  // pauli_rot / clifford2 only, one letter per entry of qubits
  int param = -1;
  double scale = 1.0;
  double offset = 0.0;
  double u3_angles[3] = {0, 0, 0};
  std::string tag;

  bool parametric() const { return param >= 0; }
  double angle(const std::vector<double>& theta) const;
  int arity() const { return kind == GateKind::barrier ? 0 : static_cast<int>(qubits.size()); }
};

Gate make_cx(int c, int t, std::string tag = {});
Gate make_rzz(int a, int b, double angle, std::string tag = {});
Gate make_1q(GateKind k, int q, double angle = 0.0, std::string tag = {});
Gate make_u3(int q, double theta, double phi, double lambda, std::string tag = {});
Gate make_pauli_rot(std::vector<int> qubits, const std::string& word, double angle, std::string tag = {});
Gate make_clifford2(int a, int b, const std::string& word, int sign, std::string tag = {});
Gate make_barrier(std::vector<int> qubits);

class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int n_qubits) : n_(n_qubits) {}

  int n_qubits() const { return n_; }
  const std::vector<Gate>& gates() const { return gates_; }
  Gate& gate(std::size_t i) { return gates_[i]; }
  const std::vector<std::string>& params() const { return params_; }
  int n_params() const { return static_cast<int>(params_.size()); }

  // Returns the index of an existing or new parameter slot.
  int param(const std::string& name);
  int find_param(const std::string& name) const;

  void add(Gate g);
  // Append `other` with its qubit i placed on wires[i]; parameters are merged by name.
  void append(const Circuit& other, const std::vector<int>& wires);
  void append(const Circuit& other);

  Circuit inverse() const;

 private:
  int n_ = 0;
  std::vector<Gate> gates_;
  std::vector<std::string> params_;
};

// Longest chain under the "shares a qubit" order. Barriers synchronize their qubits.
int depth(const Circuit& c, bool two_qubit_only = false);
int two_qubit_count(const Circuit& c);

enum class Topology { all_to_all, linear, grid_2xN };

struct Connectivity {
  int n_qubits = 0;
  Topology family = Topology::all_to_all;
  std::set<std::pair<int, int>> edges;  // stored with first < second

  bool adjacent(int a, int b) const;
  static Connectivity all_to_all(int n);
  static Connectivity linear(int n);
  // Two rows of N wires: the alpha row is wires 0..N-1 left to right, the beta row
  // continues the chain right to left, so column c holds wires c and 2N-1-c.
  static Connectivity grid_2xN(int N);
};

const char* topology_name(Topology t);
Topology topology_from_name(const std::string& s);

struct Violation {
  std::size_t gate_index;
  int a, b;
};
std::vector<Violation> check_connectivity(const Circuit& c, const Connectivity& conn);

// Fuse runs of numeric single-qubit gates into one u3 and move single-qubit Cliffords
// through parametric single-qubit rotations (the rotation axis is relabelled).
Circuit fuse_single_qubit(const Circuit& c);

enum class NativeBasis { cx_u3, rzz_rx_rz, rzz_rxyz };
NativeBasis basis_from_name(const std::string& s);
Circuit lower_to_native(const Circuit& c, NativeBasis basis);

std::string to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);
// OpenQASM 2 subset; parametric angles are bound from theta.
std::string to_qasm(const Circuit& c, const std::vector<double>& theta);

}  // namespace msn
