#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msn/pauli.hpp"

namespace msn {

// Qubit Hamiltonian over the Jordan–Wigner encoding of interleaved spin orbitals.
struct HamiltonianFile {
  std::string name;
  int n_qubits = 0;
  int n_spatial = 0;
  std::vector<int> reference_occupations;
  PauliSum hamiltonian;
  std::string metadata_json = "{}";  // provenance, passed through unchanged
  std::optional<double> exact_ground_energy;

  static HamiltonianFile from_json(const std::string& text);
  static HamiltonianFile load(const std::string& path);
  std::string to_json() const;
  void validate() const;
};

}  // namespace msn
