#include "msn/gates.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "msn/errors.hpp"
#include "msn/sim.hpp"

namespace msn {

namespace {

constexpr double kPi = std::numbers::pi;

struct KindName {
  GateKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {GateKind::cx, "cx"},   {GateKind::rzz, "rzz"}, {GateKind::clifford2, "clifford2"},
    {GateKind::rx, "rx"},   {GateKind::ry, "ry"},   {GateKind::rz, "rz"},
    {GateKind::h, "h"},     {GateKind::s, "s"},     {GateKind::sdg, "sdg"},
    {GateKind::x, "x"},     {GateKind::u3, "u3"},   {GateKind::pauli_rot, "pauli_rot"},
    {GateKind::barrier, "barrier"}};

void check_qubits(const Gate& g, int n) {
  for (std::size_t i = 0; i < g.qubits.size(); ++i) {
    if (g.qubits[i] < 0 || g.qubits[i] >= n)
      throw RangeError(std::string("gate ") + kind_name(g.kind) + " qubit " + std::to_string(g.qubits[i]) +
                       " outside width " + std::to_string(n));
    for (std::size_t j = 0; j < i; ++j)
      if (g.qubits[i] == g.qubits[j]) throw StructureError("gate qubits must be distinct");
  }
}

}  // namespace

const char* kind_name(GateKind k) {
  for (const auto& e : kKindNames)
    if (e.kind == k) return e.name;
  return "?";
}

GateKind kind_from_name(const std::string& s) {
  for (const auto& e : kKindNames)
    if (s == e.name) return e.kind;
  throw SchemaError("unknown gate kind '" + s + "'");
}

double Gate::angle(const std::vector<double>& theta) const {
  if (param < 0) return offset;
  if (param >= static_cast<int>(theta.size())) throw RangeError("unbound parameter " + std::to_string(param));
  return offset + scale * theta[param];
}

Gate make_cx(int c, int t, std::string tag) {
  Gate g;
  g.kind = GateKind::cx;
  g.qubits = {c, t};
  g.tag = std::move(tag);
  return g;
}

Gate make_rzz(int a, int b, double angle, std::string tag) {
  Gate g;
  g.kind = GateKind::rzz;
  g.qubits = {a, b};
  g.offset = angle;
  g.tag = std::move(tag);
  return g;
}

Gate make_1q(GateKind k, int q, double angle, std::string tag) {
  Gate g;
  g.kind = k;
  g.qubits = {q};
  g.offset = angle;
  g.tag = std::move(tag);
  return g;
}

Gate make_u3(int q, double theta, double phi, double lambda, std::string tag) {
  Gate g = make_1q(GateKind::u3, q, 0.0, std::move(tag));
  g.u3_angles[0] = theta;
  g.u3_angles[1] = phi;
  g.u3_angles[2] = lambda;
  return g;
}

Gate make_pauli_rot(std::vector<int> qubits, const std::string& word, double angle, std::string tag) {
  if (word.size() != qubits.size()) throw DimensionError("pauli_rot word and qubit list differ in length");
  Gate g;
  g.kind = GateKind::pauli_rot;
  g.qubits = std::move(qubits);
  g.word = PauliString::from_word(word);
  if (g.word.is_identity()) throw StructureError("pauli_rot word is the identity");
  g.offset = angle;
  g.tag = std::move(tag);
  return g;
}

Gate make_clifford2(int a, int b, const std::string& word, int sign, std::string tag) {
  Gate g = make_pauli_rot({a, b}, word, sign * kPi / 2, std::move(tag));
  g.kind = GateKind::clifford2;
  return g;
}

Gate make_barrier(std::vector<int> qubits) {
  Gate g;
  g.kind = GateKind::barrier;
  g.qubits = std::move(qubits);
  return g;
}

int Circuit::param(const std::string& name) {
  const int i = find_param(name);
  if (i >= 0) return i;
  params_.push_back(name);
  return static_cast<int>(params_.size()) - 1;
}

int Circuit::find_param(const std::string& name) const {
  auto it = std::find(params_.begin(), params_.end(), name);
  return it == params_.end() ? -1 : static_cast<int>(it - params_.begin());
}

void Circuit::add(Gate g) {
  check_qubits(g, n_);
  if ((g.kind == GateKind::pauli_rot || g.kind == GateKind::clifford2) &&
      g.word.n_qubits() != static_cast<int>(g.qubits.size()))
    throw DimensionError("pauli_rot word length mismatch");
  if (g.param >= n_params()) throw RangeError("gate references unknown parameter");
  gates_.push_back(std::move(g));
}

void Circuit::append(const Circuit& other, const std::vector<int>& wires) {
  if (static_cast<int>(wires.size()) != other.n_qubits()) throw DimensionError("append: wire map size mismatch");
  std::vector<int> pmap;
  for (const auto& name : other.params()) pmap.push_back(param(name));
  for (Gate g : other.gates()) {
    for (int& q : g.qubits) q = wires.at(q);
    if (g.param >= 0) g.param = pmap[g.param];
    add(std::move(g));
  }
}

void Circuit::append(const Circuit& other) {
  std::vector<int> wires(other.n_qubits());
  for (int i = 0; i < other.n_qubits(); ++i) wires[i] = i;
  append(other, wires);
}

Circuit Circuit::inverse() const {
  Circuit r(n_);
  r.params_ = params_;
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::s: g.kind = GateKind::sdg; break;
      case GateKind::sdg: g.kind = GateKind::s; break;
      case GateKind::u3: {
        const double t = g.u3_angles[0], p = g.u3_angles[1], l = g.u3_angles[2];
        g.u3_angles[0] = -t;
        g.u3_angles[1] = -l;
        g.u3_angles[2] = -p;
        break;
      }
      case GateKind::rx: case GateKind::ry: case GateKind::rz: case GateKind::rzz:
      case GateKind::pauli_rot: case GateKind::clifford2:
        g.scale = -g.scale;
        g.offset = -g.offset;
        break;
      default: break;
    }
    r.gates_.push_back(std::move(g));
  }
  return r;
}

int depth(const Circuit& c, bool two_qubit_only) {
  std::vector<int> level(c.n_qubits(), 0);
  int best = 0;
  for (const auto& g : c.gates()) {
    std::vector<int> qs = g.qubits;
    if (g.kind == GateKind::barrier && qs.empty())
      for (int q = 0; q < c.n_qubits(); ++q) qs.push_back(q);
    int l = 0;
    for (int q : qs) l = std::max(l, level[q]);
    if (g.kind != GateKind::barrier && (!two_qubit_only || g.arity() >= 2)) ++l;
    if (g.kind == GateKind::barrier || !two_qubit_only || g.arity() >= 2)
      for (int q : qs) level[q] = l;
    best = std::max(best, l);
  }
  return best;
}

int two_qubit_count(const Circuit& c) {
  int n = 0;
  for (const auto& g : c.gates()) n += g.arity() == 2;
  return n;
}

bool Connectivity::adjacent(int a, int b) const {
  if (family == Topology::all_to_all) return a != b;
  return edges.count({std::min(a, b), std::max(a, b)}) > 0;
}

Connectivity Connectivity::all_to_all(int n) {
  Connectivity c;
  c.n_qubits = n;
  c.family = Topology::all_to_all;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) c.edges.insert({a, b});
  return c;
}

Connectivity Connectivity::linear(int n) {
  Connectivity c;
  c.n_qubits = n;
  c.family = Topology::linear;
  for (int a = 0; a + 1 < n; ++a) c.edges.insert({a, a + 1});
  return c;
}

Connectivity Connectivity::grid_2xN(int N) {
  if (N < 1) throw RangeError("grid_2xN needs N >= 1");
  Connectivity c = linear(2 * N);
  c.family = Topology::grid_2xN;
  c.edges.erase({N - 1, N});  // the chain turns the corner through a rung
  for (int col = 0; col < N; ++col) c.edges.insert({col, 2 * N - 1 - col});
  return c;
}

const char* topology_name(Topology t) {
  switch (t) {
    case Topology::all_to_all: return "all";
    case Topology::linear: return "linear";
    case Topology::grid_2xN: return "2xN";
  }
  return "?";
}

Topology topology_from_name(const std::string& s) {
  if (s == "all" || s == "all_to_all") return Topology::all_to_all;
  if (s == "linear") return Topology::linear;
  if (s == "2xN" || s == "grid_2xN") return Topology::grid_2xN;
  throw SchemaError("unknown connectivity '" + s + "'");
}

std::vector<Violation> check_connectivity(const Circuit& c, const Connectivity& conn) {
  std::vector<Violation> out;
  if (conn.family == Topology::all_to_all) return out;
  for (std::size_t i = 0; i < c.gates().size(); ++i) {
    const auto& g = c.gates()[i];
    if (g.kind == GateKind::barrier || g.arity() < 2) continue;
    for (std::size_t a = 0; a < g.qubits.size(); ++a)
      for (std::size_t b = a + 1; b < g.qubits.size(); ++b)
        if (!conn.adjacent(g.qubits[a], g.qubits[b])) out.push_back({i, g.qubits[a], g.qubits[b]});
  }
  return out;
}

// ---------------------------------------------------------------- lowering

NativeBasis basis_from_name(const std::string& s) {
  if (s == "cx_u3") return NativeBasis::cx_u3;
  if (s == "rzz_rx_rz" || s == "superconducting") return NativeBasis::rzz_rx_rz;
  if (s == "rzz_rxyz" || s == "ion") return NativeBasis::rzz_rxyz;
  throw SchemaError("unknown native basis '" + s + "'");
}

namespace {

// ZYZ angles of a 2x2 unitary: U ~ Rz(a) Ry(b) Rz(c).
void zyz(const Eigen::Matrix2cd& u, double& a, double& b, double& c) {
  const cplx det = u.determinant();
  const Eigen::Matrix2cd v = u / std::sqrt(det);
  const double ca = std::abs(v(0, 0)), sb = std::abs(v(1, 0));
  b = 2 * std::atan2(sb, ca);
  const double sum = ca > 1e-12 ? -2 * std::arg(v(0, 0)) : 0.0;   // a + c
  const double diff = sb > 1e-12 ? 2 * std::arg(v(1, 0)) : 0.0;   // a - c
  if (ca <= 1e-12) {
    a = diff;
    c = 0;
  } else if (sb <= 1e-12) {
    a = sum;
    c = 0;
  } else {
    a = (sum + diff) / 2;
    c = (sum - diff) / 2;
  }
}

class Lowerer {
 public:
  Lowerer(const Circuit& src, NativeBasis basis) : basis_(basis), out_(src.n_qubits()) {
    for (const auto& p : src.params()) out_.param(p);
  }

  void gate(const Gate& g) {
    switch (g.kind) {
      case GateKind::barrier: out_.add(g); return;
      case GateKind::cx: cx(g.qubits[0], g.qubits[1], g.tag); return;
      case GateKind::rzz:
        if (basis_ == NativeBasis::cx_u3) {
          Gate r = g;
          r.kind = GateKind::rz;
          r.qubits = {g.qubits[1]};
          cx(g.qubits[0], g.qubits[1], g.tag);
          out_.add(r);
          cx(g.qubits[0], g.qubits[1], g.tag);
        } else {
          out_.add(g);
        }
        return;
      case GateKind::rx: case GateKind::rz:
        if (g.parametric()) out_.add(g);
        else fixed_1q(g);
        return;
      case GateKind::ry:
        if (!g.parametric()) return fixed_1q(g);
        if (basis_ == NativeBasis::rzz_rx_rz) {
          Gate r = g;
          r.kind = GateKind::rx;
          out_.add(make_1q(GateKind::rz, g.qubits[0], -kPi / 2, g.tag));
          out_.add(r);
          out_.add(make_1q(GateKind::rz, g.qubits[0], kPi / 2, g.tag));
        } else {
          out_.add(g);
        }
        return;
      case GateKind::h: case GateKind::s: case GateKind::sdg: case GateKind::x: case GateKind::u3:
        fixed_1q(g);
        return;
      case GateKind::pauli_rot: case GateKind::clifford2: pauli(g); return;
    }
  }

  Circuit take() { return std::move(out_); }

 private:
  void emit_matrix(int q, const Eigen::Matrix2cd& u, const std::string& tag) {
    double a, b, c;
    zyz(u, a, b, c);
    if (basis_ == NativeBasis::cx_u3) {
      out_.add(make_u3(q, b, a, c, tag));
      return;
    }
    // Rz(a) Ry(b) Rz(c) = Rz(a + pi/2) Rx(b) Rz(c - pi/2); circuit order is right to left.
    if (basis_ == NativeBasis::rzz_rxyz) {
      out_.add(make_1q(GateKind::rz, q, c, tag));
      out_.add(make_1q(GateKind::ry, q, b, tag));
      out_.add(make_1q(GateKind::rz, q, a, tag));
      return;
    }
    out_.add(make_1q(GateKind::rz, q, c - kPi / 2, tag));
    out_.add(make_1q(GateKind::rx, q, b, tag));
    out_.add(make_1q(GateKind::rz, q, a + kPi / 2, tag));
  }

  void fixed_1q(const Gate& g) {
    const Eigen::MatrixXcd m = gate_matrix(g, {});
    emit_matrix(g.qubits[0], m, g.tag);
  }

  void named(GateKind k, int q, const std::string& tag) { fixed_1q(make_1q(k, q, 0.0, tag)); }

  void cx(int c, int t, const std::string& tag) {
    if (basis_ == NativeBasis::cx_u3) {
      out_.add(make_cx(c, t, tag));
      return;
    }
    // CX = (I x H) CZ (I x H) and CZ ~ Rz(pi/2) x Rz(pi/2) Rzz(-pi/2)
    named(GateKind::h, t, tag);
    out_.add(make_rzz(c, t, -kPi / 2, tag));
    out_.add(make_1q(GateKind::rz, c, kPi / 2, tag));
    out_.add(make_1q(GateKind::rz, t, kPi / 2, tag));
    named(GateKind::h, t, tag);
  }

  void basis_in(char letter, int q, const std::string& tag) {
    if (letter == 'X') named(GateKind::h, q, tag);
    if (letter == 'Y') {
      named(GateKind::sdg, q, tag);
      named(GateKind::h, q, tag);
    }
  }

  void basis_out(char letter, int q, const std::string& tag) {
    if (letter == 'X') named(GateKind::h, q, tag);
    if (letter == 'Y') {
      named(GateKind::h, q, tag);
      named(GateKind::s, q, tag);
    }
  }

  void pauli(const Gate& g) {
    std::vector<int> support;
    std::vector<char> letters;
    for (std::size_t i = 0; i < g.qubits.size(); ++i) {
      const char l = g.word.letter(static_cast<int>(i));
      if (l == 'I') continue;
      support.push_back(g.qubits[i]);
      letters.push_back(l);
    }
    Gate rot = g;
    rot.word = PauliString();
    for (std::size_t i = 0; i < support.size(); ++i) basis_in(letters[i], support[i], g.tag);
    if (support.size() == 2 && g.kind == GateKind::clifford2 && basis_ == NativeBasis::cx_u3) {
      // exp(-i s pi/4 ZZ) = CZ (Rz(s pi/2) x Rz(s pi/2)) up to phase
      const double s = g.offset > 0 ? 1.0 : -1.0;
      named(GateKind::h, support[1], g.tag);
      cx(support[0], support[1], g.tag);
      named(GateKind::h, support[1], g.tag);
      fixed_1q(make_1q(GateKind::rz, support[0], s * kPi / 2, g.tag));
      fixed_1q(make_1q(GateKind::rz, support[1], s * kPi / 2, g.tag));
    } else if (support.size() == 2 && basis_ != NativeBasis::cx_u3) {
      rot.kind = GateKind::rzz;
      rot.qubits = support;
      out_.add(rot);
    } else {
      for (std::size_t i = 0; i + 1 < support.size(); ++i) cx(support[i], support[i + 1], g.tag);
      rot.kind = GateKind::rz;
      rot.qubits = {support.back()};
      out_.add(rot);
      for (std::size_t i = support.size() - 1; i-- > 0;) cx(support[i], support[i + 1], g.tag);
    }
    for (std::size_t i = 0; i < support.size(); ++i) basis_out(letters[i], support[i], g.tag);
  }

  NativeBasis basis_;
  Circuit out_;
};

}  // namespace

namespace {

using Mat2 = Eigen::Matrix2cd;

bool near_identity(const Mat2& u) { return std::abs(std::abs(u.trace()) - 2.0) < 1e-10; }

// Letter and sign of U† P U when it is a Pauli; returns 0 otherwise.
char pull_back(const Mat2& u, char letter, int* sign) {
  static const char letters[] = {'X', 'Y', 'Z'};
  const Mat2 p = gate_matrix(make_pauli_rot({0}, std::string(1, letter), kPi), {}) * cplx(0, 1);
  const Mat2 q = u.adjoint() * p * u;
  for (char l : letters) {
    const Mat2 r = gate_matrix(make_pauli_rot({0}, std::string(1, l), kPi), {}) * cplx(0, 1);
    const cplx overlap = (r * q).trace() / 2.0;
    if (std::abs(std::abs(overlap) - 1) < 1e-9 && std::abs(overlap.imag()) < 1e-9) {
      *sign = overlap.real() > 0 ? 1 : -1;
      return l;
    }
  }
  return 0;
}

char rotation_axis(const Gate& g) {
  if (!g.parametric() || g.arity() != 1) return 0;
  switch (g.kind) {
    case GateKind::rx: return 'X';
    case GateKind::ry: return 'Y';
    case GateKind::rz: return 'Z';
    case GateKind::pauli_rot: return g.word.letter(0);
    default: return 0;
  }
}

}  // namespace

Circuit fuse_single_qubit(const Circuit& c) {
  Circuit out(c.n_qubits());
  for (const auto& p : c.params()) out.param(p);
  std::vector<Mat2> pending(c.n_qubits(), Mat2::Identity());
  std::vector<std::string> tags(c.n_qubits());
  auto flush = [&](int q) {
    if (!near_identity(pending[q])) {
      double a, b, cc;
      zyz(pending[q], a, b, cc);
      out.add(make_u3(q, b, a, cc, tags[q]));
    }
    pending[q] = Mat2::Identity();
  };
  for (const auto& g : c.gates()) {
    if (g.arity() == 1 && !g.parametric()) {
      pending[g.qubits[0]] = gate_matrix(g, {}) * pending[g.qubits[0]];
      tags[g.qubits[0]] = g.tag;
      continue;
    }
    if (const char axis = rotation_axis(g)) {
      // R_P U = U R_{U†PU}: emit the relabelled rotation and keep U pending.
      const int q = g.qubits[0];
      int sign = 1;
      const char pulled = pull_back(pending[q], axis, &sign);
      if (!pulled) flush(q);
      Gate r = g;
      const char l = pulled ? pulled : axis;
      r.kind = l == 'X' ? GateKind::rx : l == 'Y' ? GateKind::ry : GateKind::rz;
      r.word = PauliString();
      if (pulled) {
        r.scale *= sign;
        r.offset *= sign;
      }
      out.add(r);
      continue;
    }
    if (g.kind == GateKind::barrier && g.qubits.empty())
      for (int q = 0; q < c.n_qubits(); ++q) flush(q);
    for (int q : g.qubits) flush(q);
    out.add(g);
  }
  for (int q = 0; q < c.n_qubits(); ++q) flush(q);
  return out;
}

Circuit lower_to_native(const Circuit& c, NativeBasis basis) {
  Lowerer l(c, basis);
  for (const auto& g : c.gates()) l.gate(g);
  Circuit fused = fuse_single_qubit(l.take());
  if (basis == NativeBasis::cx_u3) return fused;
  // fused single-qubit gates come back as u3; express them in the native rotations
  Lowerer again(fused, basis);
  for (const auto& g : fused.gates()) again.gate(g);
  return again.take();
}

// ---------------------------------------------------------------- serialization

std::string to_json(const Circuit& c) {
  using nlohmann::json;
  json gates = json::array();
  for (const auto& g : c.gates()) {
    json j{{"kind", kind_name(g.kind)}, {"qubits", g.qubits}};
    if (g.kind == GateKind::pauli_rot || g.kind == GateKind::clifford2) j["word"] = g.word.word();
    if (g.kind == GateKind::u3) j["u3"] = {g.u3_angles[0], g.u3_angles[1], g.u3_angles[2]};
    if (g.parametric()) {
      j["param"] = c.params()[g.param];
      j["scale"] = g.scale;
    }
    if (g.offset != 0.0) j["angle"] = g.offset;
    if (!g.tag.empty()) j["tag"] = g.tag;
    gates.push_back(std::move(j));
  }
  return json{{"n_qubits", c.n_qubits()}, {"params", c.params()}, {"gates", gates}}.dump(1);
}

Circuit circuit_from_json(const std::string& text) {
  using nlohmann::json;
  try {
    const json doc = json::parse(text);
    Circuit c(doc.at("n_qubits").get<int>());
    for (const auto& p : doc.value("params", json::array())) c.param(p.get<std::string>());
    for (const auto& j : doc.at("gates")) {
      Gate g;
      g.kind = kind_from_name(j.at("kind").get<std::string>());
      g.qubits = j.at("qubits").get<std::vector<int>>();
      if (j.contains("word")) g.word = PauliString::from_word(j["word"].get<std::string>());
      if (j.contains("u3"))
        for (int i = 0; i < 3; ++i) g.u3_angles[i] = j["u3"][i].get<double>();
      if (j.contains("param")) {
        g.param = c.param(j["param"].get<std::string>());
        g.scale = j.value("scale", 1.0);
      }
      g.offset = j.value("angle", 0.0);
      g.tag = j.value("tag", std::string());
      c.add(std::move(g));
    }
    return c;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("circuit json: ") + e.what());
  }
}

std::string to_qasm(const Circuit& c, const std::vector<double>& theta) {
  const Circuit low = lower_to_native(c, NativeBasis::cx_u3);
  std::ostringstream os;
  os << std::setprecision(17);
  os << "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" << c.n_qubits() << "];\n";
  for (const auto& g : low.gates()) {
    switch (g.kind) {
      case GateKind::cx: os << "cx q[" << g.qubits[0] << "],q[" << g.qubits[1] << "];\n"; break;
      case GateKind::u3:
        os << "u3(" << g.u3_angles[0] << ',' << g.u3_angles[1] << ',' << g.u3_angles[2] << ") q[" << g.qubits[0]
           << "];\n";
        break;
      case GateKind::rx: case GateKind::ry: case GateKind::rz:
        os << kind_name(g.kind) << '(' << g.angle(theta) << ") q[" << g.qubits[0] << "];\n";
        break;
      case GateKind::barrier: {
        if (g.qubits.empty()) {
          os << "barrier q;\n";
          break;
        }
        os << "barrier ";
        for (std::size_t i = 0; i < g.qubits.size(); ++i) os << (i ? "," : "") << "q[" << g.qubits[i] << ']';
        os << ";\n";
        break;
      }
      default: throw InvariantError("unexpected gate after lowering");
    }
  }
  return os.str();
}

}  // namespace msn
