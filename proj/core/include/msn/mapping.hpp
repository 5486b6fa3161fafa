#pragma once

#include <optional>
#include <string>
#include <vector>

#include "msn/pauli.hpp"

namespace msn {

// Child reference inside a ternary tree: a qubit node, a Majorana leaf, or nothing.
struct TreeChild {
  enum class Kind { none, node, leaf } kind = Kind::none;
  int index = 0;  // node: qubit (0-based); leaf: Majorana index (1-based)
};

struct TreeNode {
  int qubit = 0;
  TreeChild child[3];  // X, Y, Z edges
};

struct TernaryTree {
  std::vector<TreeNode> nodes;

  // JSON form: {"nodes":[{"id":"q0","x_child":"q1","y_child":"leaf1","z_child":null}, ...]}
  static TernaryTree from_json(const std::string& text);
  std::string to_json() const;
};

// Slot j (1-based) holds the current Pauli representation of the original γ_j.
class MajoranaMapping {
 public:
  MajoranaMapping() = default;
  MajoranaMapping(int n_modes, std::vector<PauliString> strings);

  int n_modes() const { return n_modes_; }
  int n_qubits() const { return strings_.empty() ? 0 : strings_.front().n_qubits(); }
  const PauliString& gamma(int j) const;  // 1-based
  const std::vector<PauliString>& strings() const { return strings_; }
  void set_gamma(int j, PauliString p);

  // Ladder operators as Pauli sums: a_p = (γ_{2p-1} + iγ_{2p})/2.
  PauliSum annihilation(int p) const;
  PauliSum creation(int p) const;

 private:
  int n_modes_ = 0;
  std::vector<PauliString> strings_;
};

MajoranaMapping tree_to_mapping(const TernaryTree& tree);
TernaryTree jw_tree(int n);
MajoranaMapping jw_mapping(int n);
MajoranaMapping paired_jw_mapping(int n);
MajoranaMapping bk_mapping(int n);
bool validate_mapping(const MajoranaMapping& m);

// Conjugate every slot by exp(pi/4 γ_i γ_j).
MajoranaMapping mswap_update(const MajoranaMapping& m, int i, int j);
// M_{2p,2q-1} M_{2p-1,2q}: the two-MSWAP fermionic swap of modes p and q.
MajoranaMapping fswap_update(const MajoranaMapping& m, int p, int q);

// Conjugate every slot by the Clifford rotation exp(pi/4 G), G anti-Hermitian Pauli.
MajoranaMapping conjugate_mapping(const MajoranaMapping& m, const PauliString& generator);

}  // namespace msn
