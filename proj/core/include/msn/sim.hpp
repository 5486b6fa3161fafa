#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "msn/gates.hpp"
#include "msn/pauli.hpp"

namespace msn {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Basis index convention: qubit q is bit q of the computational-basis index.
// Local gate matrices order their qubits the same way (gate.qubits[i] is local bit i).
Matrix gate_matrix(const Gate& g, const std::vector<double>& theta);
Matrix pauli_matrix(const PauliString& p);
Matrix pauli_sum_matrix(const PauliSum& h);

// Apply a 2^k x 2^k matrix to the listed qubits of a 2^n amplitude vector (in place).
void apply_local(cplx* data, int n_qubits, const Matrix& m, const std::vector<int>& qubits);

struct State {
  int n_qubits = 0;
  bool mixed = false;
  Vector psi;
  Matrix rho;

  static State basis(int n_qubits, std::uint64_t index = 0);
  static State density(const Matrix& rho);
  static State pure(const Vector& psi);
  State to_mixed() const;
  double trace() const;
};

void apply_gate(State& s, const Gate& g, const std::vector<double>& theta);
Matrix circuit_unitary(const Circuit& c, const std::vector<double>& theta);
State run(const Circuit& c, const std::vector<double>& theta, State s);

struct KrausChannel {
  std::vector<Matrix> ops;
  std::vector<int> support;

  bool is_complete(double tol = 1e-10) const;
  // Superoperator on (ket bits, bra bits) of the support.
  Matrix superoperator() const;
};

KrausChannel identity_channel(std::vector<int> support);
// (1-p) rho + p Tr_A(rho) x I/d on the support (d = 2^|support|).
KrausChannel depolarizing_channel(double p, int d, std::vector<int> support);
KrausChannel correlated_pauli_channel(double p, char axis, std::vector<int> support);
KrausChannel amplitude_damping_channel(double gamma, int qubit);
KrausChannel phase_damping_channel(double eta, int qubit);
// Amplitude damping followed by pure dephasing; zero excited-state population.
KrausChannel thermal_relaxation_channel(double T1, double T2, double tau, int qubit);
KrausChannel compose(const KrausChannel& first, const KrausChannel& second);

void apply_channel(State& s, const KrausChannel& ch);

double infidelity_to_depolarizing(double epsilon, int d);

enum class NoiseFamily { none, depolarizing, pauli, superconducting, ion };

struct NoiseModel {
  NoiseFamily family = NoiseFamily::none;
  double lambda = 1.0;
  // depolarizing family: probabilities; phenomenological families: infidelities
  double p1 = 0, p2 = 0;
  double eps1 = 0, eps2 = 0;
  char pauli_axis = 'Z';
  double T1 = 0, T2 = 0;  // seconds
  double t1 = 0, t2 = 0;  // gate durations, seconds
  bool one_qubit = true, two_qubit = true, thermal = true, idle = true;
  // one depolarizing channel of strength lambda over all qubits after the circuit
  bool global_depolarizing = false;

  static NoiseModel superconducting_default();
  static NoiseModel ion_default();
  static NoiseModel from_json(const std::string& text);
  std::string to_json() const;
  NoiseModel scaled(double lam) const;
  NativeBasis native_basis() const;
  void validate() const;
};

const char* noise_family_name(NoiseFamily f);

// Ideal gate followed by the model's channels on the gate support; idle qubits in
// each layer relax for the layer duration. Phenomenological models run on the
// circuit lowered to their native basis.
State evolve_noisy(const Circuit& c, const NoiseModel& nm, const std::vector<double>& theta, State s0);

double expectation(const PauliSum& h, const State& s);
double expectation(const PauliString& p, const State& s);

// Dense ground energy by Hermitian eigen-decomposition.
double ground_energy(const PauliSum& h);

}  // namespace msn
