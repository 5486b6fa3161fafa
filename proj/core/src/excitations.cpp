#include "msn/excitations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "msn/errors.hpp"

namespace msn {

namespace {

constexpr double kPi = std::numbers::pi;

int letter_index(char l) { return l == 'X' ? 0 : l == 'Y' ? 1 : 2; }

// ------------------------------------------------------------ local Cliffords

struct Image {
  char letter;
  int sign;
};

struct CliffordEntry {
  std::array<Image, 3> img;  // images of X, Y, Z under U P U†
  std::vector<GateKind> word;
};

Image image_y(Image x, Image z) {
  // U Y U† = i (U X U†)(U Z U†)
  const PauliString px = PauliString::from_word(std::string(1, x.letter));
  const PauliString pz = PauliString::from_word(std::string(1, z.letter));
  const PauliString prod = (px * pz).with_phase((px * pz).phase() + 1);
  const int k = prod.phase() % 4;
  return {prod.letter(0), (k == 0 ? 1 : -1) * x.sign * z.sign};
}

const std::vector<CliffordEntry>& clifford_table() {
  static const std::vector<CliffordEntry> table = [] {
    std::vector<CliffordEntry> t;
    auto key = [](const CliffordEntry& e) {
      return std::string{e.img[0].letter, char('0' + e.img[0].sign + 1), e.img[2].letter, char('0' + e.img[2].sign + 1)};
    };
    std::set<std::string> seen;
    CliffordEntry id{{Image{'X', 1}, Image{'Y', 1}, Image{'Z', 1}}, {}};
    t.push_back(id);
    seen.insert(key(id));
    // breadth-first over h/s words gives the shortest word for each element
    for (std::size_t head = 0; head < t.size(); ++head) {
      for (GateKind g : {GateKind::h, GateKind::s}) {
        CliffordEntry e = t[head];
        for (auto& im : e.img) {
          if (g == GateKind::h) {
            if (im.letter == 'X') im.letter = 'Z';
            else if (im.letter == 'Z') im.letter = 'X';
            else im.sign = -im.sign;
          } else {
            if (im.letter == 'X') im.letter = 'Y';
            else if (im.letter == 'Y') {
              im.letter = 'X';
              im.sign = -im.sign;
            }
          }
        }
        e.word.push_back(g);
        if (seen.insert(key(e)).second) t.push_back(e);
      }
    }
    if (t.size() != 24) throw InvariantError("single-qubit Clifford table is incomplete");
    for (auto& e : t) {
      const Image y = image_y(e.img[0], e.img[2]);
      if (y.letter != e.img[1].letter || y.sign != e.img[1].sign) throw InvariantError("Clifford table inconsistent");
    }
    return t;
  }();
  return table;
}

// ------------------------------------------------------------ template builder

class TemplateBuilder {
 public:
  explicit TemplateBuilder(int k) : c_(k) { c_.param("theta"); }

  void num(GateKind kind, int q, double angle = 0.0) { c_.add(make_1q(kind, q, angle)); }

  // Rotation exp(-i (offset + scale θ)/2 P) on one qubit.
  void rot(int q, char letter, double scale, double offset = 0.0) {
    Gate g = make_1q(letter == 'X' ? GateKind::rx : letter == 'Y' ? GateKind::ry : GateKind::rz, q, offset);
    g.param = 0;
    g.scale = scale;
    c_.add(g);
  }

  void cx(int a, int b) { c_.add(make_cx(a, b)); }

  // CP(a:P, b:Q) = I - (I - P_a)(I - Q_b)/2 as one CX between single-qubit Cliffords.
  void cp(int a, char p, int b, char q) {
    to_z(a, p);
    to_z(b, q);
    num(GateKind::h, b);
    cx(a, b);
    num(GateKind::h, b);
    from_z(b, q);
    from_z(a, p);
  }

  Circuit take() { return std::move(c_); }

 private:
  // C with C P C† = Z
  void to_z(int q, char p) {
    if (p == 'X') num(GateKind::h, q);
    if (p == 'Y') {
      num(GateKind::sdg, q);
      num(GateKind::h, q);
    }
  }
  void from_z(int q, char p) {
    if (p == 'X') num(GateKind::h, q);
    if (p == 'Y') {
      num(GateKind::h, q);
      num(GateKind::s, q);
    }
  }

  Circuit c_;
};

PauliSum local_sum(int k, std::initializer_list<std::pair<const char*, double>> terms) {
  PauliSum s(k);
  for (const auto& [w, beta] : terms) s.add(std::string(w), cplx(0, beta));
  return s;
}

std::vector<std::vector<int>> all_orders(int k) {
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<std::vector<int>> square_orders() {
  std::vector<std::vector<int>> out;
  for (int r = 0; r < 4; ++r) {
    out.push_back({r % 4, (r + 1) % 4, (r + 2) % 4, (r + 3) % 4});
    out.push_back({r % 4, (r + 3) % 4, (r + 2) % 4, (r + 1) % 4});
  }
  return out;
}

// Single JW: G = (i/2)(XX + YY) = V† CX (Rx(-θ) ⊗ Rz(-θ)) CX V with V = Rx(π/2)⊗Rx(π/2).
BlockTemplate make_single_jw() {
  BlockTemplate t;
  t.name = "single_jw";
  t.k = 2;
  t.param_generator = local_sum(2, {{"XX", 0.5}, {"YY", 0.5}});
  TemplateBuilder b(2);
  b.num(GateKind::rx, 0, kPi / 2);
  b.num(GateKind::rx, 1, kPi / 2);
  b.cx(0, 1);
  b.rot(0, 'X', -1.0);
  b.rot(1, 'Z', -1.0);
  b.cx(0, 1);
  b.num(GateKind::rx, 0, -kPi / 2);
  b.num(GateKind::rx, 1, -kPi / 2);
  t.circuit = b.take();
  t.orders = all_orders(2);
  return t;
}

// exp(π/4 γ2γ3) exp(π/4 γ1γ4) exp(θ T) on two JW modes, T = (i/2)(XY - YX):
// equal to exp(i(a XX + b YY)) in the frame Rz(π/4) ⊗ Rz(-π/4), two CX.
BlockTemplate make_fused(bool with_param) {
  BlockTemplate t;
  t.name = with_param ? "single_fswap_jw" : "fswap_jw";
  t.k = 2;
  t.has_param = with_param;
  if (with_param) t.param_generator = local_sum(2, {{"XY", 0.5}, {"YX", -0.5}});
  t.clifford_generators = {local_sum(2, {{"YY", -1.0}}), local_sum(2, {{"XX", 1.0}})};
  TemplateBuilder b(2);
  const double s = with_param ? -1.0 : 0.0;
  b.num(GateKind::rz, 0, kPi / 4);
  b.num(GateKind::rz, 1, -kPi / 4);
  b.num(GateKind::rx, 0, kPi / 2);
  b.num(GateKind::rx, 1, kPi / 2);
  b.cx(0, 1);
  if (with_param) {
    b.rot(0, 'X', s, -kPi / 2);
    b.rot(1, 'Z', s, kPi / 2);
  } else {
    b.num(GateKind::rx, 0, -kPi / 2);
    b.num(GateKind::rz, 1, kPi / 2);
  }
  b.cx(0, 1);
  b.num(GateKind::rx, 0, -kPi / 2);
  b.num(GateKind::rx, 1, -kPi / 2);
  b.num(GateKind::rz, 0, -kPi / 4);
  b.num(GateKind::rz, 1, kPi / 4);
  t.circuit = b.take();
  t.orders = all_orders(2);
  return t;
}

PauliSum jw_double_generator() {
  return local_sum(4, {{"XXXY", -0.125}, {"XXYX", -0.125}, {"XYXX", 0.125}, {"XYYY", -0.125},
                       {"YXXX", 0.125}, {"YXYY", -0.125}, {"YYXY", 0.125}, {"YYYX", 0.125}});
}

// Frame CP(0X,1Z) CP(1X,2Z) CP(2Z,3X) brings the eight words to Y_2 times Z strings on
// 0, 1, 3; a CZ multiplexor on target 2 (Gray order 1,0,1,3,1,0,1,3) applies them, and
// its last CZ(2,3) merges with the first gate of the inverse frame.
void yordanov_body(TemplateBuilder& b, bool linear) {
  auto cz02 = [&] {
    if (!linear) {
      b.cp(0, 'Z', 2, 'Z');
      return;
    }
    b.cp(0, 'Z', 1, 'X');
    b.cp(1, 'Z', 2, 'Z');
    b.cp(0, 'Z', 1, 'X');
    b.cp(1, 'Z', 2, 'Z');
  };
  b.cp(0, 'X', 1, 'Z');
  b.cp(1, 'X', 2, 'Z');
  b.cp(2, 'Z', 3, 'X');
  const double sc[8] = {0.25, -0.25, -0.25, 0.25, 0.25, -0.25, -0.25, 0.25};
  const int gray[8] = {1, 0, 1, 3, 1, 0, 1, 3};
  for (int i = 0; i < 8; ++i) {
    b.rot(2, 'Y', sc[i]);
    if (i == 7) b.cp(2, 'Z', 3, 'Y');
    else if (gray[i] == 0) cz02();
    else b.cp(std::min(gray[i], 2), 'Z', std::max(gray[i], 2), 'Z');
  }
  b.cp(1, 'X', 2, 'Z');
  b.cp(0, 'X', 1, 'Z');
  b.num(GateKind::sdg, 2);
}

BlockTemplate make_yordanov(bool linear) {
  BlockTemplate t;
  t.name = linear ? "double_linear" : "double_yordanov";
  t.k = 4;
  t.param_generator = jw_double_generator();
  TemplateBuilder b(4);
  yordanov_body(b, linear);
  t.circuit = b.take();
  t.orders = linear ? std::vector<std::vector<int>>{{0, 1, 2, 3}, {3, 2, 1, 0}} : all_orders(4);
  return t;
}

// Paired double on the square 0-1-2-3-0: seven layers of controlled-Pauli gates.
BlockTemplate make_optimized() {
  BlockTemplate t;
  t.name = "double_optimized";
  t.k = 4;
  t.param_generator = local_sum(4, {{"YYZI", 0.125}, {"YYIZ", 0.125}, {"XXZI", -0.125}, {"XXIZ", -0.125},
                                    {"ZIXX", 0.125}, {"IZXX", 0.125}, {"ZIYY", -0.125}, {"IZYY", -0.125}});
  TemplateBuilder b(4);
  auto pair_xy = [&] {
    b.cp(0, 'X', 1, 'Y');
    b.cp(2, 'X', 3, 'Y');
  };
  auto rotations = [&] {
    b.rot(0, 'Y', -0.25);
    b.rot(1, 'X', 0.25);
    b.rot(3, 'X', -0.25);
    b.rot(2, 'Y', 0.25);
  };
  b.cp(0, 'Z', 3, 'Z');
  pair_xy();
  rotations();
  pair_xy();
  b.cp(1, 'Z', 2, 'Z');
  b.cp(0, 'Z', 3, 'Z');
  pair_xy();
  rotations();
  pair_xy();
  b.cp(1, 'Z', 2, 'Z');
  t.circuit = b.take();
  t.orders = square_orders();
  return t;
}

// Exchange of the first modes of two paired-encoded pairs (0,1) and (2,3):
// exp(π/4 γ_a γ_c) exp(π/4 γ_b γ_d) as four controlled-Pauli gates and a local frame.
BlockTemplate make_fswap_paired() {
  BlockTemplate t;
  t.name = "fswap_paired";
  t.k = 4;
  t.has_param = false;
  t.clifford_generators = {local_sum(4, {{"YZXI", -1.0}}), local_sum(4, {{"IYZX", -1.0}})};
  TemplateBuilder b(4);
  b.cp(1, 'Z', 2, 'Z');
  b.cp(0, 'Y', 2, 'X');
  b.cp(1, 'Y', 3, 'X');
  b.cp(1, 'X', 2, 'Y');
  const char* frame[4] = {"ssh", "ssh", "hshss", "hsh"};
  for (int q = 0; q < 4; ++q)
    for (const char* g = frame[q]; *g; ++g) b.num(*g == 'h' ? GateKind::h : GateKind::s, q);
  t.circuit = b.take();
  t.orders = all_orders(4);
  return t;
}

// ------------------------------------------------------------ frame matching

using Term = std::pair<std::string, cplx>;

// Terms of s restricted to wires (letters in wire order); throws if s acts elsewhere.
std::vector<Term> restrict_terms(const PauliSum& s, const std::vector<int>& wires) {
  std::vector<Term> out;
  for (const auto& [w, c] : s.terms()) {
    std::string loc;
    for (int q : wires) loc.push_back(w.at(q));
    for (int q = 0; q < static_cast<int>(w.size()); ++q)
      if (w[q] != 'I' && std::find(wires.begin(), wires.end(), q) == wires.end())
        throw InvariantError("generator acts outside the block wires");
    out.push_back({loc, c});
  }
  return out;
}

std::vector<Term> terms_of(const PauliSum& s) { return {s.terms().begin(), s.terms().end()}; }

struct Frame {
  std::vector<int> order;
  std::vector<int> cliff;
  int sign = 1;
};

class Matcher {
 public:
  Matcher(const BlockTemplate& t, std::vector<std::vector<Term>> gens) : t_(t), gens_(std::move(gens)) {
    targets_.push_back(terms_of(t.param_generator));
    for (const auto& c : t.clifford_generators) targets_.push_back(terms_of(c));
    if (!t.has_param) targets_.erase(targets_.begin());
  }

  std::optional<Frame> run() {
    for (const auto& order : t_.orders) {
      // local qubit i sits on wire position order[i]
      placed_.clear();
      for (const auto& g : gens_) {
        std::vector<Term> p;
        for (const auto& [w, c] : g) {
          std::string loc(t_.k, 'I');
          for (int i = 0; i < t_.k; ++i) loc[i] = w[order[i]];
          p.push_back({loc, c});
        }
        placed_.push_back(p);
      }
      if (placed_.size() != targets_.size()) return std::nullopt;
      bool sizes_ok = true;
      for (std::size_t j = 0; j < placed_.size(); ++j) sizes_ok &= placed_[j].size() == targets_[j].size();
      if (!sizes_ok) continue;
      cliff_.assign(t_.k, 0);
      if (search(0)) {
        Frame f{order, cliff_, sign_};
        return f;
      }
    }
    return std::nullopt;
  }

 private:
  // image of a word prefix under the assigned Cliffords (letters only)
  std::string image_prefix(const std::string& w, int upto) const {
    std::string out(upto, 'I');
    const auto& tab = clifford_table();
    for (int i = 0; i < upto; ++i)
      if (w[i] != 'I') out[i] = tab[cliff_[i]].img[letter_index(w[i])].letter;
    return out;
  }

  bool prefixes_match(int upto) const {
    for (std::size_t j = 0; j < placed_.size(); ++j) {
      std::multiset<std::string> a, b;
      for (const auto& [w, c] : placed_[j]) a.insert(image_prefix(w, upto));
      for (const auto& [w, c] : targets_[j]) b.insert(w.substr(0, upto));
      if (a != b) return false;
    }
    return true;
  }

  bool signs_match() {
    const auto& tab = clifford_table();
    int common = 0;
    for (std::size_t j = 0; j < placed_.size(); ++j) {
      std::map<std::string, cplx> want(targets_[j].begin(), targets_[j].end());
      for (const auto& [w, c] : placed_[j]) {
        std::string img(t_.k, 'I');
        int sg = 1;
        for (int i = 0; i < t_.k; ++i) {
          if (w[i] == 'I') continue;
          const Image im = tab[cliff_[i]].img[letter_index(w[i])];
          img[i] = im.letter;
          sg *= im.sign;
        }
        const cplx got = c * static_cast<double>(sg);
        const cplx ref = want.at(img);
        int s;
        if (std::abs(got - ref) < 1e-9) s = 1;
        else if (std::abs(got + ref) < 1e-9) s = -1;
        else return false;
        const bool free_sign = t_.has_param && j == 0;
        if (!free_sign && s != 1) return false;
        if (free_sign) {
          if (common == 0) common = s;
          else if (common != s) return false;
        }
      }
    }
    sign_ = common == 0 ? 1 : common;
    return true;
  }

  bool search(int i) {
    if (i == t_.k) return signs_match();
    for (int c = 0; c < 24; ++c) {
      cliff_[i] = c;
      if (prefixes_match(i + 1) && search(i + 1)) return true;
    }
    return false;
  }

  const BlockTemplate& t_;
  std::vector<std::vector<Term>> gens_, placed_, targets_;
  std::vector<int> cliff_;
  int sign_ = 1;
};

void emit_clifford(Circuit& c, int wire, int index, bool inverse) {
  const auto& word = clifford_table()[index].word;
  if (!inverse) {
    for (GateKind g : word) c.add(make_1q(g, wire));
  } else {
    for (auto it = word.rbegin(); it != word.rend(); ++it)
      c.add(make_1q(*it == GateKind::s ? GateKind::sdg : *it, wire));
  }
}

std::string cache_key(BlockKind kind, const std::vector<std::vector<Term>>& gens) {
  std::ostringstream os;
  os << static_cast<int>(kind);
  for (const auto& g : gens) {
    os << '|';
    for (const auto& [w, c] : g) os << w << ':' << std::lround(c.real() * 64) << ',' << std::lround(c.imag() * 64) << ';';
  }
  return os.str();
}

}  // namespace

// ------------------------------------------------------------ public API

ExcitationSpec ExcitationSpec::single(int p, int q, std::string param) {
  return {Kind::single, {p, q}, std::move(param)};
}

ExcitationSpec ExcitationSpec::double_(int p, int q, int r, int s, std::string param) {
  return {Kind::double_, {p, q, r, s}, std::move(param)};
}

std::string ExcitationSpec::to_string() const {
  std::ostringstream os;
  os << (kind == Kind::single ? "S(" : "D(");
  for (std::size_t i = 0; i < modes.size(); ++i) os << (i ? "," : "") << modes[i];
  os << ")";
  return os.str();
}

PauliSum generator(const ExcitationSpec& spec, const MajoranaMapping& m) {
  const std::size_t want = spec.kind == ExcitationSpec::Kind::single ? 2 : 4;
  if (spec.modes.size() != want) throw StructureError("excitation " + spec.to_string() + " has the wrong arity");
  std::set<int> distinct(spec.modes.begin(), spec.modes.end());
  if (distinct.size() != want) throw StructureError("excitation " + spec.to_string() + " repeats a mode");
  for (int p : spec.modes)
    if (p < 0 || p >= m.n_modes()) throw RangeError("excitation mode " + std::to_string(p) + " out of range");
  auto cr = [&](int p) { return m.creation(p + 1); };
  auto an = [&](int p) { return m.annihilation(p + 1); };
  const auto& md = spec.modes;
  PauliSum op = spec.kind == ExcitationSpec::Kind::single ? cr(md[0]) * an(md[1])
                                                          : cr(md[0]) * cr(md[1]) * an(md[2]) * an(md[3]);
  PauliSum g = op - op.adjoint();
  // drop the numerical dust left by the products
  PauliSum clean(g.n_qubits());
  for (const auto& [w, c] : g.terms())
    if (std::abs(c) > 1e-12) clean.add(w, c);
  return clean;
}

PauliSum majorana_pair(const MajoranaMapping& m, int i, int j) {
  PauliSum s(m.n_qubits());
  s.add(m.gamma(i) * m.gamma(j));
  return s;
}

char LocalClifford::image(char letter, int* sign) const {
  const Image im = clifford_table().at(index).img[letter_index(letter)];
  if (sign) *sign = im.sign;
  return im.letter;
}

std::vector<GateKind> LocalClifford::gates() const { return clifford_table().at(index).word; }

int local_clifford_count() { return static_cast<int>(clifford_table().size()); }

const BlockTemplate& block_template(BlockKind kind) {
  static const std::map<BlockKind, BlockTemplate> all = {
      {BlockKind::single_jw, make_single_jw()},
      {BlockKind::single_fswap_jw, make_fused(true)},
      {BlockKind::fswap_jw, make_fused(false)},
      {BlockKind::double_yordanov, make_yordanov(false)},
      {BlockKind::double_linear, make_yordanov(true)},
      {BlockKind::double_optimized, make_optimized()},
      {BlockKind::fswap_paired, make_fswap_paired()},
  };
  return all.at(kind);
}

Circuit realize_block(BlockKind kind, const PauliSum& g, const std::vector<PauliSum>& cliffords,
                      const std::vector<int>& wires, int n_qubits, const std::string& param) {
  const BlockTemplate& t = block_template(kind);
  if (static_cast<int>(wires.size()) != t.k) throw DimensionError(t.name + " acts on " + std::to_string(t.k) + " wires");
  std::vector<std::vector<Term>> gens;
  if (t.has_param) gens.push_back(restrict_terms(g, wires));
  for (const auto& c : cliffords) gens.push_back(restrict_terms(c, wires));

  static std::mutex mu;
  static std::map<std::string, std::optional<Frame>> cache;
  const std::string key = cache_key(kind, gens);
  std::optional<Frame> frame;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) frame = it->second;
    else frame = cache[key] = Matcher(t, gens).run();
  }
  if (!frame) throw InvariantError("no local Clifford frame maps the generator onto " + t.name);

  Circuit block(n_qubits);
  const int pid = t.has_param ? block.param(param) : -1;
  std::vector<int> placed(t.k);
  for (int i = 0; i < t.k; ++i) placed[i] = wires[frame->order[i]];
  for (int i = 0; i < t.k; ++i) emit_clifford(block, placed[i], frame->cliff[i], false);
  for (Gate gt : t.circuit.gates()) {
    for (int& q : gt.qubits) q = placed[q];
    if (gt.param >= 0) {
      gt.param = pid;
      gt.scale *= frame->sign;
    }
    block.add(gt);
  }
  for (int i = 0; i < t.k; ++i) emit_clifford(block, placed[i], frame->cliff[i], true);
  return fuse_single_qubit(block);
}

Circuit local_rotations(const PauliSum& g, int n_qubits, const std::string& param) {
  Circuit c(n_qubits);
  const int pid = c.param(param);
  std::vector<std::pair<int, char>> seen;
  for (const auto& [w, coeff] : g.terms()) {
    const PauliString p = PauliString::from_word(w);
    if (p.weight() != 1) throw InvariantError("generator term " + w + " is not single-qubit");
    if (std::abs(coeff.real()) > 1e-12) throw InvariantError("generator is not anti-Hermitian");
    int q = 0;
    while (w[q] == 'I') ++q;
    for (auto [sq, sl] : seen)
      if (sq == q && sl != w[q]) throw InvariantError("generator terms do not commute");
    seen.push_back({q, w[q]});
    // exp(θ iβ P) = exp(-i (-2βθ)/2 P)
    Gate r = make_1q(w[q] == 'X' ? GateKind::rx : w[q] == 'Y' ? GateKind::ry : GateKind::rz, q);
    r.param = pid;
    r.scale = -2 * coeff.imag();
    c.add(r);
  }
  return c;
}

Circuit mswap_gate(const PauliSum& cg, int n_qubits) {
  if (cg.size() != 1) throw InvariantError("MSWAP generator must be a single Pauli product");
  const auto& [w, coeff] = *cg.terms().begin();
  if (std::abs(coeff.real()) > 1e-12 || std::abs(std::abs(coeff.imag()) - 1) > 1e-12)
    throw InvariantError("MSWAP generator must be ±i times a Pauli word");
  std::vector<int> support;
  std::string letters;
  for (int q = 0; q < static_cast<int>(w.size()); ++q)
    if (w[q] != 'I') {
      support.push_back(q);
      letters.push_back(w[q]);
    }
  Circuit c(n_qubits);
  // exp(π/4 · iβ W) = exp(-i (-βπ/2)/2 W)
  const int sign = coeff.imag() > 0 ? -1 : 1;
  if (support.size() == 2) c.add(make_clifford2(support[0], support[1], letters, sign));
  else if (support.size() == 1) c.add(make_pauli_rot(support, letters, sign * kPi / 2));
  else throw InvariantError("MSWAP generator " + w + " is not two-local");
  return c;
}

Circuit single_block_jw(int n_qubits, int p, const std::string& param) {
  if (p < 0 || p + 1 >= n_qubits) throw RangeError("single_block_jw: p, p+1 outside the register");
  const PauliSum g = generator(ExcitationSpec::single(p, p + 1), jw_mapping(n_qubits));
  return realize_block(BlockKind::single_jw, g, {}, {p, p + 1}, n_qubits, param);
}

Circuit single_block_paired(int n_qubits, int p, const std::string& param) {
  if (p < 0 || 2 * p + 1 >= n_qubits) throw RangeError("single_block_paired: pair outside the register");
  const PauliSum g = generator(ExcitationSpec::single(2 * p, 2 * p + 1), paired_jw_mapping(n_qubits));
  return local_rotations(g, n_qubits, param);
}

namespace {

void check_block_qubits(const std::vector<int>& qs, int n_qubits, const char* what) {
  if (qs.size() != 4) throw DimensionError(std::string(what) + " needs 4 qubits");
  std::set<int> d(qs.begin(), qs.end());
  if (d.size() != 4) throw StructureError(std::string(what) + " qubits must be distinct");
  for (int q : qs)
    if (q < 0 || q >= n_qubits) throw RangeError(std::string(what) + " qubit outside the register");
}

// JW double on modes qs, with the mapping restricted to those wires in the given order.
PauliSum jw_double_on(int n_qubits, const std::vector<int>& qs) {
  return generator(ExcitationSpec::double_(qs[0], qs[1], qs[2], qs[3]), jw_mapping(n_qubits));
}

}  // namespace

Circuit double_block_yordanov(int n_qubits, const std::vector<int>& qs, const std::string& param) {
  check_block_qubits(qs, n_qubits, "double_block_yordanov");
  return realize_block(BlockKind::double_yordanov, jw_double_on(n_qubits, qs), {}, qs, n_qubits, param);
}

Circuit double_block_linear(int n_qubits, const std::vector<int>& qs, const std::string& param) {
  check_block_qubits(qs, n_qubits, "double_block_linear");
  for (int i = 0; i < 3; ++i)
    if (qs[i + 1] != qs[i] + 1) throw RangeError("double_block_linear needs consecutive qubits");
  return realize_block(BlockKind::double_linear, jw_double_on(n_qubits, qs), {}, qs, n_qubits, param);
}

Circuit double_block_optimized(int n_qubits, const std::vector<int>& qs, const std::string& param) {
  check_block_qubits(qs, n_qubits, "double_block_optimized");
  // qs = (p, p', q', q) around the square; modes come in pairs (2i, 2i+1) on wires (2i, 2i+1)
  const MajoranaMapping m = paired_jw_mapping(n_qubits);
  const PauliSum g = generator(ExcitationSpec::double_(qs[0], qs[3], qs[1], qs[2]), m);
  return realize_block(BlockKind::double_optimized, g, {}, qs, n_qubits, param);
}

Circuit mswap_block(const MajoranaMapping& m, int i, int j) {
  if (i == j) throw StructureError("MSWAP needs two distinct Majorana slots");
  return mswap_gate(majorana_pair(m, i, j), m.n_qubits());
}

Circuit fswap_block(int n_qubits, int p) {
  if (p < 0 || p + 1 >= n_qubits) throw RangeError("fswap_block: p, p+1 outside the register");
  const MajoranaMapping m = jw_mapping(n_qubits);
  const int a = 2 * p + 1, b = 2 * p + 3;  // slots of modes p, p+1 (1-based)
  return realize_block(BlockKind::fswap_jw, PauliSum(n_qubits),
                       {majorana_pair(m, a, b + 1), majorana_pair(m, a + 1, b)}, {p, p + 1}, n_qubits, "");
}

}  // namespace msn
