#include "msn/hamiltonian.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "msn/errors.hpp"

namespace msn {

using nlohmann::json;

HamiltonianFile HamiltonianFile::from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("Hamiltonian file is not valid JSON: ") + e.what());
  }
  HamiltonianFile h;
  try {
    h.name = j.value("name", "");
    h.n_qubits = j.at("n_qubits").get<int>();
    h.n_spatial = j.value("n_spatial", h.n_qubits / 2);
    const std::string occ = j.value("reference_occupations", "");
    for (char c : occ) {
      if (c != '0' && c != '1') throw SchemaError("reference_occupations must be a bitstring");
      h.reference_occupations.push_back(c == '1');
    }
    if (j.contains("metadata")) h.metadata_json = j.at("metadata").dump();
    if (j.contains("exact_ground_energy")) h.exact_ground_energy = j.at("exact_ground_energy").get<double>();
    h.hamiltonian = PauliSum(h.n_qubits);
    const auto& terms = j.at("terms");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const auto& t = terms[i];
      const std::string w = t.at("word").get<std::string>();
      if (static_cast<int>(w.size()) != h.n_qubits)
        throw SchemaError("term " + std::to_string(i) + ": word length " + std::to_string(w.size()) +
                          " does not match n_qubits");
      if (w.find_first_not_of("IXYZ") != std::string::npos)
        throw SchemaError("term " + std::to_string(i) + ": word has letters outside IXYZ");
      h.hamiltonian.add(w, cplx(t.at("re").get<double>(), t.value("im", 0.0)));
    }
  } catch (const json::exception& e) {
    throw SchemaError(std::string("Hamiltonian file: ") + e.what());
  }
  h.validate();
  return h;
}

HamiltonianFile HamiltonianFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open Hamiltonian file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string HamiltonianFile::to_json() const {
  std::string occ;
  for (int b : reference_occupations) occ.push_back(b ? '1' : '0');
  json terms = json::array();
  for (const auto& [w, c] : hamiltonian.terms()) terms.push_back({{"word", w}, {"re", c.real()}, {"im", c.imag()}});
  json j{{"name", name},
         {"n_qubits", n_qubits},
         {"n_spatial", n_spatial},
         {"reference_occupations", occ},
         {"metadata", json::parse(metadata_json)},
         {"terms", terms}};
  if (exact_ground_energy) j["exact_ground_energy"] = *exact_ground_energy;
  return j.dump(1);
}

void HamiltonianFile::validate() const {
  if (n_qubits <= 0) throw SchemaError("n_qubits must be positive");
  if (!reference_occupations.empty() && static_cast<int>(reference_occupations.size()) != n_qubits)
    throw SchemaError("reference_occupations length differs from n_qubits");
  if (2 * n_spatial != n_qubits) throw SchemaError("n_qubits must equal two spin orbitals per spatial orbital");
  // conjugate closure: Pauli words are Hermitian, so every coefficient must be real
  if (!hamiltonian.is_hermitian(1e-10)) throw SchemaError("Hamiltonian is not Hermitian");
}

}  // namespace msn
