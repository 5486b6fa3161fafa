#include "msn/mapping.hpp"

#include <functional>
#include <map>
#include <set>

#include <json.hpp>

#include "msn/errors.hpp"

namespace msn {

namespace {

using nlohmann::json;

TreeChild parse_child(const json& v) {
  TreeChild c;
  if (v.is_null()) return c;
  if (!v.is_string()) throw StructureError("tree child must be a string or null");
  const std::string s = v.get<std::string>();
  try {
    if (s.rfind("leaf", 0) == 0) {
      c.kind = TreeChild::Kind::leaf;
      c.index = std::stoi(s.substr(4));
    } else if (s.rfind("q", 0) == 0) {
      c.kind = TreeChild::Kind::node;
      c.index = std::stoi(s.substr(1));
    } else {
      throw StructureError("bad tree child '" + s + "'");
    }
  } catch (const std::logic_error&) {
    throw StructureError("bad tree child '" + s + "'");
  }
  return c;
}

json child_json(const TreeChild& c) {
  switch (c.kind) {
    case TreeChild::Kind::leaf: return "leaf" + std::to_string(c.index);
    case TreeChild::Kind::node: return "q" + std::to_string(c.index);
    default: return nullptr;
  }
}

PauliString z_prefix(int n_qubits, int upto) {
  PauliString p(n_qubits);
  for (int q = 0; q < upto; ++q) p.set_letter(q, 'Z');
  return p;
}

void check_mode_index(const MajoranaMapping& m, int j) {
  if (j < 1 || j > 2 * m.n_modes()) throw RangeError("Majorana index " + std::to_string(j) + " out of range");
}

}  // namespace

TernaryTree TernaryTree::from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw StructureError(std::string("tree file: ") + e.what());
  }
  if (!doc.contains("nodes") || !doc["nodes"].is_array()) throw StructureError("tree file: missing 'nodes' array");
  TernaryTree t;
  for (const auto& n : doc["nodes"]) {
    TreeNode node;
    const TreeChild self = parse_child(n.at("id"));
    if (self.kind != TreeChild::Kind::node) throw StructureError("tree node id must be q<k>");
    node.qubit = self.index;
    node.child[0] = parse_child(n.value("x_child", json()));
    node.child[1] = parse_child(n.value("y_child", json()));
    node.child[2] = parse_child(n.value("z_child", json()));
    t.nodes.push_back(node);
  }
  return t;
}

std::string TernaryTree::to_json() const {
  json arr = json::array();
  for (const auto& n : nodes) {
    arr.push_back({{"id", "q" + std::to_string(n.qubit)},
                   {"x_child", child_json(n.child[0])},
                   {"y_child", child_json(n.child[1])},
                   {"z_child", child_json(n.child[2])}});
  }
  return json{{"nodes", arr}}.dump(2);
}

MajoranaMapping::MajoranaMapping(int n_modes, std::vector<PauliString> strings)
    : n_modes_(n_modes), strings_(std::move(strings)) {
  if (static_cast<int>(strings_.size()) != 2 * n_modes) throw StructureError("mapping needs 2n strings");
  for (const auto& s : strings_)
    if (s.n_qubits() != strings_.front().n_qubits()) throw DimensionError("mapping strings differ in width");
}

const PauliString& MajoranaMapping::gamma(int j) const {
  check_mode_index(*this, j);
  return strings_[j - 1];
}

void MajoranaMapping::set_gamma(int j, PauliString p) {
  check_mode_index(*this, j);
  strings_[j - 1] = std::move(p);
}

PauliSum MajoranaMapping::annihilation(int p) const {
  PauliSum s(n_qubits());
  s.add(gamma(2 * p - 1), 0.5);
  s.add(gamma(2 * p), cplx(0, 0.5));
  return s;
}

PauliSum MajoranaMapping::creation(int p) const { return annihilation(p).adjoint(); }

MajoranaMapping tree_to_mapping(const TernaryTree& tree) {
  const int nq = static_cast<int>(tree.nodes.size());
  if (nq == 0) throw StructureError("empty tree");
  std::map<int, int> by_qubit;
  for (int i = 0; i < nq; ++i) {
    const int q = tree.nodes[i].qubit;
    if (q < 0 || q >= nq) throw StructureError("qubit index out of range in tree");
    if (!by_qubit.emplace(q, i).second) throw StructureError("qubit node appears twice");
  }
  std::set<int> referenced;
  for (const auto& n : tree.nodes)
    for (const auto& c : n.child)
      if (c.kind == TreeChild::Kind::node) {
        if (!by_qubit.count(c.index)) throw StructureError("child references missing node");
        if (!referenced.insert(c.index).second) throw StructureError("node has two parents");
      }
  int root = -1;
  for (const auto& n : tree.nodes)
    if (!referenced.count(n.qubit)) {
      if (root >= 0) throw StructureError("tree has more than one root");
      root = n.qubit;
    }
  if (root < 0) throw StructureError("tree has a cycle");

  const int n_modes = nq;
  std::vector<std::optional<PauliString>> out(2 * n_modes);
  std::set<int> visited;
  static const char letters[3] = {'X', 'Y', 'Z'};
  std::function<void(int, PauliString)> walk = [&](int q, PauliString path) {
    if (!visited.insert(q).second) throw StructureError("tree has a cycle");
    const TreeNode& node = tree.nodes[by_qubit.at(q)];
    for (int e = 0; e < 3; ++e) {
      PauliString p = path;
      p.set_letter(q, letters[e]);
      const TreeChild& c = node.child[e];
      if (c.kind == TreeChild::Kind::node) {
        walk(c.index, p);
      } else if (c.kind == TreeChild::Kind::leaf) {
        if (c.index < 1 || c.index > 2 * n_modes) throw StructureError("leaf index out of range");
        if (out[c.index - 1]) throw StructureError("leaf appears twice");
        out[c.index - 1] = p;
      }
    }
  };
  walk(root, PauliString(nq));
  if (static_cast<int>(visited.size()) != nq) throw StructureError("tree is not connected");
  std::vector<PauliString> strings;
  for (int j = 0; j < 2 * n_modes; ++j) {
    if (!out[j]) throw StructureError("missing leaf" + std::to_string(j + 1));
    strings.push_back(*out[j]);
  }
  return MajoranaMapping(n_modes, std::move(strings));
}

TernaryTree jw_tree(int n) {
  if (n < 1) throw RangeError("n must be positive");
  TernaryTree t;
  for (int q = 0; q < n; ++q) {
    TreeNode node;
    node.qubit = q;
    node.child[0] = {TreeChild::Kind::leaf, 2 * q + 1};
    node.child[1] = {TreeChild::Kind::leaf, 2 * q + 2};
    if (q + 1 < n) node.child[2] = {TreeChild::Kind::node, q + 1};
    t.nodes.push_back(node);
  }
  return t;
}

MajoranaMapping jw_mapping(int n) {
  if (n < 1) throw RangeError("n must be positive");
  std::vector<PauliString> s;
  for (int p = 0; p < n; ++p) {
    PauliString a = z_prefix(n, p), b = z_prefix(n, p);
    a.set_letter(p, 'X');
    b.set_letter(p, 'Y');
    s.push_back(a);
    s.push_back(b);
  }
  return MajoranaMapping(n, std::move(s));
}

MajoranaMapping paired_jw_mapping(int n) {
  if (n < 2 || n % 2) throw UnsupportedError("paired JW mapping needs an even number of modes");
  std::vector<PauliString> s(2 * n);
  for (int p = 1; p <= n / 2; ++p) {
    const int q1 = 2 * p - 2, q2 = 2 * p - 1;  // 0-based wires of the pair
    PauliString g1 = z_prefix(n, q1), g3 = z_prefix(n, q1);
    g1.set_letter(q1, 'X');
    g3.set_letter(q1, 'Y');
    PauliString g2 = z_prefix(n, q2), g4 = z_prefix(n, q2);
    g2.set_letter(q2, 'X');
    g4.set_letter(q2, 'Y');
    s[4 * p - 4] = g1;
    s[4 * p - 3] = g2;
    s[4 * p - 2] = g3;
    s[4 * p - 1] = g4;
  }
  return MajoranaMapping(n, std::move(s));
}

MajoranaMapping bk_mapping(int n) {
  if (n < 2 || (n & (n - 1))) throw UnsupportedError("Bravyi-Kitaev mapping needs n >= 2, a power of two");
  // Fenwick layout: qubit j stores the occupation sum over [j & (j+1), j].
  auto low = [](int j) { return j & (j + 1); };
  std::vector<PauliString> s;
  for (int j = 0; j < n; ++j) {
    std::set<int> update, parity, flip;
    for (int k = j | (j + 1); k < n; k = k | (k + 1)) update.insert(k);
    for (int k = j - 1; k >= 0; k = low(k) - 1) parity.insert(k);
    for (int k = j - 1; k >= low(j); k = low(k) - 1) flip.insert(k);
    PauliString c(n), d(n);
    for (int k : update) {
      c.set_letter(k, 'X');
      d.set_letter(k, 'X');
    }
    for (int k : parity) {
      c.set_letter(k, 'Z');
      if (!flip.count(k)) d.set_letter(k, 'Z');
    }
    c.set_letter(j, 'X');
    d.set_letter(j, 'Y');
    s.push_back(c);
    s.push_back(d);
  }
  return MajoranaMapping(n, std::move(s));
}

bool validate_mapping(const MajoranaMapping& m) {
  const auto& s = m.strings();
  if (static_cast<int>(s.size()) != 2 * m.n_modes()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!s[i].is_hermitian() || s[i].is_identity()) return false;
    for (std::size_t j = i + 1; j < s.size(); ++j)
      if (commutes(s[i], s[j])) return false;
  }
  return true;
}

MajoranaMapping conjugate_mapping(const MajoranaMapping& m, const PauliString& generator) {
  std::vector<PauliString> s;
  s.reserve(m.strings().size());
  for (const auto& g : m.strings()) s.push_back(conjugate_by_rotation(g, generator));
  return MajoranaMapping(m.n_modes(), std::move(s));
}

MajoranaMapping mswap_update(const MajoranaMapping& m, int i, int j) {
  check_mode_index(m, i);
  check_mode_index(m, j);
  if (i == j) throw RangeError("mswap needs two distinct Majorana indices");
  MajoranaMapping r = conjugate_mapping(m, multiply(m.gamma(i), m.gamma(j)));
#ifndef NDEBUG
  if (!validate_mapping(r)) throw InvariantError("mswap_update produced an invalid mapping");
#endif
  return r;
}

MajoranaMapping fswap_update(const MajoranaMapping& m, int p, int q) {
  if (p == q) throw RangeError("fswap needs two distinct modes");
  if (p < 1 || q < 1 || p > m.n_modes() || q > m.n_modes()) throw RangeError("mode out of range");
  MajoranaMapping r = mswap_update(m, 2 * p - 1, 2 * q);
  return mswap_update(r, 2 * p, 2 * q - 1);
}

}  // namespace msn
