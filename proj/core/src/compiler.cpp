#include "msn/compiler.hpp"

#include <algorithm>
#include <numbers>

#include <json.hpp>
#include <spdlog/spdlog.h>

#include "msn/errors.hpp"

namespace msn {

namespace {

constexpr double kPi = std::numbers::pi;

const std::map<Strategy, std::string>& strategy_names() {
  static const std::map<Strategy, std::string> names = {{Strategy::ladder_jw, "ladder-jw"},
                                                        {Strategy::ladder_bk, "ladder-bk"},
                                                        {Strategy::fsn, "fsn"},
                                                        {Strategy::msn, "msn"},
                                                        {Strategy::cyclic, "cyclic"}};
  return names;
}

// Mapping with logical mode x encoded by Jordan–Wigner on wire wire_of[x].
MajoranaMapping jw_on_wires(const std::vector<int>& wire_of) {
  const int n = static_cast<int>(wire_of.size());
  const MajoranaMapping jw = jw_mapping(n);
  std::vector<PauliString> s(2 * n);
  for (int x = 0; x < n; ++x) {
    s[2 * x] = jw.gamma(2 * wire_of[x] + 1);
    s[2 * x + 1] = jw.gamma(2 * wire_of[x] + 2);
  }
  return MajoranaMapping(n, std::move(s));
}

std::vector<int> support_of(const PauliSum& g) {
  std::vector<int> out;
  for (int q = 0; q < g.n_qubits(); ++q)
    for (const auto& [w, c] : g.terms())
      if (w[q] != 'I') {
        out.push_back(q);
        break;
      }
  return out;
}

bool all_weight_one(const PauliSum& g) {
  return std::all_of(g.terms().begin(), g.terms().end(), [](const auto& t) {
    return PauliString::from_word(t.first).weight() == 1;
  });
}

PauliSum as_sum(const PauliString& p) {
  PauliSum s(p.n_qubits());
  s.add(p);
  return s;
}

// Incremental circuit with the Heisenberg-frame mapping kept in step with every Clifford.
class Builder {
 public:
  Builder(int n_qubits, MajoranaMapping m) : c(n_qubits), m(std::move(m)) {}

  Circuit c;
  MajoranaMapping m;
  std::vector<std::string> notes;
  int clifford_two_qubit = 0;  // two-qubit gates spent on Clifford rotations

  // γ of logical mode x (0-based), which = 0 or 1.
  const PauliString& gamma(int x, int which) const { return m.gamma(2 * x + 1 + which); }

  void prepare(const std::vector<int>& bits) {
    for (int q = 0; q < static_cast<int>(bits.size()); ++q)
      if (bits[q]) c.add(make_1q(GateKind::x, q, 0.0, "ref"));
  }

  // exp(π/4 G) for an anti-Hermitian Pauli G.
  void clifford(const PauliString& g) {
    clifford_two_qubit += g.weight() <= 2 ? (g.weight() == 2) : 2 * (g.weight() - 1);
    if (g.weight() <= 2) {
      c.append(mswap_gate(as_sum(g), c.n_qubits()));
    } else {
      std::vector<int> qs;
      std::string letters;
      for (int q = 0; q < g.n_qubits(); ++q)
        if (g.letter(q) != 'I') {
          qs.push_back(q);
          letters.push_back(g.letter(q));
        }
      // g = ±i W, exp(±iπ/4 W) = exp(-i (∓π/2)/2 W)
      const double sign = g.phase_factor().imag() > 0 ? -1.0 : 1.0;
      c.add(make_pauli_rot(qs, letters, sign * kPi / 2, "mswap"));
    }
    m = conjugate_mapping(m, g);
  }

  void mswap(int x, int wx, int y, int wy) { clifford(gamma(x, wx) * gamma(y, wy)); }

  // Two-MSWAP exchange of logical modes x and y. The crossed form leaves a_x -> -i a_y†
  // (a local X in Jordan–Wigner); the parallel form gives a_x -> -a_y, which keeps a
  // paired encoding paired.
  void fswap(int x, int y) {
    mswap(x, 0, y, 1);
    mswap(x, 1, y, 0);
  }
  void fswap_parallel(int x, int y) {
    const PauliString c1 = gamma(x, 0) * gamma(y, 0), c2 = gamma(x, 1) * gamma(y, 1);
    if (c1.weight() > 2 || c2.weight() > 2) {
      const auto wires = support_of(as_sum(c1) + as_sum(c2));
      if (wires.size() == 4) {
        try {
          c.append(realize_block(BlockKind::fswap_paired, PauliSum(c.n_qubits()), {as_sum(c1), as_sum(c2)}, wires,
                                 c.n_qubits(), {}));
          clifford_two_qubit += 4;
          m = conjugate_mapping(conjugate_mapping(m, c1), c2);
          return;
        } catch (const InvariantError&) {
          notes.push_back("unmatched exchange of modes " + std::to_string(x) + " and " + std::to_string(y));
        }
      }
    }
    mswap(x, 0, y, 0);
    mswap(x, 1, y, 1);
  }

  void ladder(const PauliSum& g, const std::string& param) {
    const int pid = c.param(param);
    for (const auto& [w, coeff] : g.terms()) {
      std::vector<int> qs;
      std::string letters;
      for (int q = 0; q < static_cast<int>(w.size()); ++q)
        if (w[q] != 'I') {
          qs.push_back(q);
          letters.push_back(w[q]);
        }
      Gate r = make_pauli_rot(qs, letters, 0.0, param);
      r.param = pid;
      r.scale = -2 * coeff.imag();
      c.add(r);
    }
  }

  void excitation_ladder(const ExcitationSpec& e) { ladder(generator(e, m), e.param); }

  // Try the block on each wire order; ladder fallback is recorded.
  void excitation_block(const ExcitationSpec& e, BlockKind kind, const std::vector<std::vector<int>>& wire_orders) {
    const PauliSum g = generator(e, m);
    if (all_weight_one(g)) {
      c.append(local_rotations(g, c.n_qubits(), e.param));
      return;
    }
    for (const auto& wires : wire_orders) {
      try {
        c.append(realize_block(kind, g, {}, wires, c.n_qubits(), e.param));
        return;
      } catch (const InvariantError&) {
      }
    }
    notes.push_back("ladder fallback for " + e.to_string());
    ladder(g, e.param);
  }

  // exp(θ T_xy) followed by FSWAP(x, y), x and y adjacent JW modes.
  void fused_single_fswap(const ExcitationSpec& e, int x, int y, const std::vector<int>& wires) {
    const PauliString c1 = gamma(x, 0) * gamma(y, 1), c2 = gamma(x, 1) * gamma(y, 0);
    const PauliSum g = generator(e, m);
    try {
      c.append(realize_block(BlockKind::single_fswap_jw, g, {as_sum(c1), as_sum(c2)}, wires, c.n_qubits(), e.param));
      m = conjugate_mapping(conjugate_mapping(m, c1), c2);
    } catch (const InvariantError&) {
      notes.push_back("unfused single and FSWAP for " + e.to_string());
      excitation_block(e, BlockKind::single_jw, {wires});
      fswap(x, y);
    }
  }
};

std::vector<int> mode_permutation_of(const MajoranaMapping& m) {
  std::vector<int> out(m.n_modes(), -1);
  for (int x = 0; x < m.n_modes(); ++x) {
    const PauliString p = m.gamma(2 * x + 1) * m.gamma(2 * x + 2);
    if (p.weight() != 1) continue;
    for (int q = 0; q < p.n_qubits(); ++q)
      if (p.letter(q) == 'Z') out[x] = q;
  }
  return out;
}

void register_params(CompiledAnsatz& ca, const AnsatzSpec& spec) {
  const auto seq = excitation_sequence(spec);
  for (const auto& e : seq) {
    ca.circuit.param(e.param);
    int layer = 0;
    const auto open = e.param.find('[');
    if (open != std::string::npos) layer = std::stoi(e.param.substr(open + 1));
    ca.parameter_table[e.param] = {e, layer};
  }
}

void check_spec(const AnsatzSpec& spec) {
  if (spec.n_spatial < 1) throw RangeError("ansatz needs at least one spatial orbital");
  if (spec.k < 1) throw RangeError("ansatz needs k >= 1");
  if (!spec.reference_occupations.empty() && static_cast<int>(spec.reference_occupations.size()) != spec.n_modes())
    throw DimensionError("reference occupations must list one bit per spin orbital");
}

void finish(CompiledAnsatz& ca, Builder& b) {
  // merge the builder circuit after the pre-registered parameters
  ca.circuit.append(b.c);
  ca.final_mapping = b.m;
  ca.mode_permutation = mode_permutation_of(b.m);
  ca.notes = b.notes;
  for (const auto& n : b.notes) spdlog::debug("{}: {}", strategy_name(ca.strategy), n);
  const auto v = check_connectivity(ca.circuit, ca.connectivity);
  if (!v.empty())
    throw InvariantError(std::string(strategy_name(ca.strategy)) + " circuit violates connectivity at gate " +
                         std::to_string(v.front().gate_index));
}

}  // namespace

const char* strategy_name(Strategy s) { return strategy_names().at(s).c_str(); }

Strategy strategy_from_name(const std::string& s) {
  for (const auto& [k, v] : strategy_names())
    if (v == s) return k;
  throw SchemaError("unknown strategy '" + s + "'");
}

AnsatzFamily family_from_name(const std::string& s) {
  if (s == "uccgsd" || s == "UCCGSD") return AnsatzFamily::uccgsd;
  if (s == "kupccgsd" || s == "kUpCCGSD" || s == "upccgsd") return AnsatzFamily::kupccgsd;
  throw SchemaError("unknown ansatz family '" + s + "'");
}

std::vector<ExcitationSpec> excitation_sequence(const AnsatzSpec& spec) {
  check_spec(spec);
  if (spec.family == AnsatzFamily::kupccgsd) {
    if (spec.n_spatial < 2) return {};
    return msn_schedule(spec.n_spatial, spec.k).excitations();
  }
  if (spec.n_modes() >= 8) return cyclic_schedule(spec.n_modes()).excitations();
  auto seq = singles_sg(spec.n_spatial);
  for (auto& s : seq) s.param = single_name(0, s.modes[0], s.modes[1]);
  auto d = doubles_dg(spec.n_spatial);
  seq.insert(seq.end(), d.begin(), d.end());
  return seq;
}

std::vector<int> reference_bits(const MajoranaMapping& m, const std::vector<int>& occ) {
  const int nq = m.n_qubits();
  std::vector<int> bits(nq, 0);
  if (occ.empty()) return bits;
  if (static_cast<int>(occ.size()) != m.n_modes()) throw DimensionError("occupations do not match the mode count");
  // rows: parity over support = rhs, solved by elimination over GF(2)
  std::vector<std::vector<int>> rows;
  for (int x = 0; x < m.n_modes(); ++x) {
    PauliString p = (m.gamma(2 * x + 1) * m.gamma(2 * x + 2)).with_phase(0);
    const PauliString full = m.gamma(2 * x + 1) * m.gamma(2 * x + 2);
    // i γγ = s Z_S with s = ±1; occupied when i γγ = +1
    const int k = (full.phase() + 1) % 4;
    if (k % 2) throw UnsupportedError("number operator is not Hermitian under this mapping");
    const int s = k == 0 ? 1 : -1;
    std::vector<int> row(nq + 1, 0);
    for (int q = 0; q < nq; ++q) {
      const char l = p.letter(q);
      if (l == 'X' || l == 'Y') throw UnsupportedError("reference state is not a basis state under this mapping");
      row[q] = l == 'Z';
    }
    row[nq] = (s == 1) ? (occ[x] ? 0 : 1) : (occ[x] ? 1 : 0);
    rows.push_back(row);
  }
  int r = 0;
  std::vector<int> pivot_col;
  for (int col = 0; col < nq && r < static_cast<int>(rows.size()); ++col) {
    int piv = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][col]) piv = i;
    if (piv < 0) continue;
    std::swap(rows[r], rows[piv]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i)
      if (i != r && rows[i][col])
        for (int j = 0; j <= nq; ++j) rows[i][j] ^= rows[r][j];
    pivot_col.push_back(col);
    ++r;
  }
  for (int i = r; i < static_cast<int>(rows.size()); ++i)
    if (rows[i][nq]) throw InvariantError("occupations are inconsistent under this mapping");
  for (int i = 0; i < r; ++i) bits[pivot_col[i]] = rows[i][nq];
  return bits;
}

CompiledAnsatz compile_ladder(const AnsatzSpec& spec, const MajoranaMapping& m) {
  check_spec(spec);
  if (m.n_modes() != spec.n_modes()) throw DimensionError("mapping does not match the ansatz size");
  CompiledAnsatz ca;
  ca.strategy = Strategy::ladder_jw;
  ca.circuit = Circuit(m.n_qubits());
  ca.initial_mapping = m;
  ca.connectivity = Connectivity::all_to_all(m.n_qubits());
  register_params(ca, spec);
  Builder b(m.n_qubits(), m);
  b.prepare(reference_bits(m, spec.reference_occupations));
  for (const auto& e : excitation_sequence(spec)) b.excitation_ladder(e);
  finish(ca, b);
  return ca;
}

CompiledAnsatz compile_upccgsd(const AnsatzSpec& spec, Strategy strategy, const Connectivity& conn) {
  check_spec(spec);
  if (spec.family != AnsatzFamily::kupccgsd) throw UnsupportedError("swap networks compile k-UpCCGSD only");
  if (spec.n_spatial < 2) throw RangeError("swap networks need at least two spatial orbitals");
  const int N = spec.n_spatial, W = 2 * N;
  if (conn.n_qubits != W) throw DimensionError("connectivity width does not match the ansatz");
  CompiledAnsatz ca;
  ca.strategy = strategy;
  ca.circuit = Circuit(W);
  ca.connectivity = conn;
  register_params(ca, spec);

  if (strategy == Strategy::msn) {
    if (conn.family == Topology::linear) throw UnsupportedError("MSN needs all-to-all or 2xN connectivity");
    const SwapSchedule s = msn_schedule(N, spec.k);
    std::vector<int> wire_of(W);
    for (int w = 0; w < W; ++w) wire_of[s.initial_order[w]] = w;
    ca.initial_mapping = jw_on_wires(wire_of);
    Builder b(W, ca.initial_mapping);
    b.prepare(reference_bits(ca.initial_mapping, spec.reference_occupations));
    std::vector<int> order = s.initial_order;
    for (std::size_t i = 0; i < s.steps.size(); ++i) {
      const SwapStep& st = s.steps[i];
      if (st.kind != SwapStep::Kind::window) throw InvariantError("MSN schedule out of step");
      const auto& w = st.positions;  // p-alpha, q-alpha, q-beta, p-beta around the square
      const int pa = order[w[0]], qa = order[w[1]], qb = order[w[2]], pb = order[w[3]];
      b.mswap(pa, 1, qa, 0);  // U_in: each row pair becomes a paired encoding
      b.mswap(qb, 1, pb, 0);
      b.excitation_block(st.specs[0], BlockKind::double_optimized, {w});
      b.excitation_block(st.specs[1], BlockKind::single_jw, {{w[0], w[1]}});
      b.excitation_block(st.specs[2], BlockKind::single_jw, {{w[2], w[3]}});
      b.mswap(pa, 0, qa, 1);  // U_out completes the FSWAP of each row pair
      b.mswap(qb, 0, pb, 1);
      for (int j = 1; j <= 2; ++j) {
        const Transposition& t = s.steps.at(i + j).t;
        std::swap(order[t.a], order[t.b]);
      }
      i += 2;
    }
    finish(ca, b);
    return ca;
  }

  if (strategy == Strategy::fsn) {
    if (conn.family == Topology::grid_2xN) throw UnsupportedError("FSN runs on all-to-all or linear connectivity");
    const BlockKind dk = conn.family == Topology::all_to_all ? BlockKind::double_yordanov : BlockKind::double_linear;
    const SwapSchedule s = fsn_schedule(N, spec.k);
    std::vector<int> wire_of(W);
    for (int w = 0; w < W; ++w) wire_of[s.initial_order[w]] = w;
    ca.initial_mapping = jw_on_wires(wire_of);
    Builder b(W, ca.initial_mapping);
    b.prepare(reference_bits(ca.initial_mapping, spec.reference_occupations));
    std::vector<int> order = s.initial_order;
    const ExcitationSpec* pending = nullptr;
    for (const auto& st : s.steps) {
      if (st.kind == SwapStep::Kind::window) {
        if (st.specs.front().kind == ExcitationSpec::Kind::double_)
          b.excitation_block(st.specs.front(), dk, {st.positions});
        else
          pending = &st.specs.front();
        continue;
      }
      const int x = order[st.t.a], y = order[st.t.b];
      if (st.t.fused) {
        if (!pending) throw InvariantError("fused FSWAP without a single excitation");
        b.fused_single_fswap(*pending, x, y, {st.t.a, st.t.b});
        pending = nullptr;
      } else {
        b.fswap(x, y);
      }
      std::swap(order[st.t.a], order[st.t.b]);
    }
    finish(ca, b);
    return ca;
  }

  throw UnsupportedError(std::string("compile_upccgsd does not handle strategy ") + strategy_name(strategy));
}

CompiledAnsatz compile_uccgsd_cyclic(const AnsatzSpec& spec, const Connectivity& conn) {
  check_spec(spec);
  if (spec.family != AnsatzFamily::uccgsd) throw UnsupportedError("the cyclic schedule compiles UCCGSD only");
  if (conn.family != Topology::all_to_all) throw UnsupportedError("the cyclic schedule needs all-to-all connectivity");
  const int n = spec.n_spatial, W = 2 * n;
  if (W < 8) {
    spdlog::warn("cyclic schedule needs at least 8 modes; compiling {} modes with the JW ladder", W);
    CompiledAnsatz ca = compile_ladder(spec, jw_mapping(W));
    ca.notes.push_back("fewer than 8 modes: ladder fallback");
    return ca;
  }
  const SwapSchedule s = cyclic_schedule(W);
  // Position i and its mirror 2n-1-i share the qubit pair (2i, 2i+1).
  auto wire = [&](int pos) { return pos < n ? 2 * pos : 2 * (W - 1 - pos) + 1; };
  std::vector<int> wire_of(W);
  for (int pos = 0; pos < W; ++pos) wire_of[s.initial_order[pos]] = wire(pos);

  CompiledAnsatz ca;
  ca.strategy = Strategy::cyclic;
  ca.circuit = Circuit(W);
  ca.connectivity = conn;
  ca.initial_mapping = jw_on_wires(wire_of);
  register_params(ca, spec);
  Builder b(W, ca.initial_mapping);
  b.prepare(reference_bits(ca.initial_mapping, spec.reference_occupations));

  std::vector<int> l = s.initial_order;
  // paired encoding of every qubit pair
  for (int i = 0; i < n; ++i) b.mswap(l[i], 1, l[W - 1 - i], 0);
  for (const auto& st : s.steps) {
    if (st.kind == SwapStep::Kind::transposition) {
      const int before = b.clifford_two_qubit;
      b.fswap_parallel(l[st.t.a], l[st.t.b]);
      ca.transposition_two_qubit += b.clifford_two_qubit - before;
      std::swap(l[st.t.a], l[st.t.b]);
      continue;
    }
    for (const auto& e : st.specs) {
      if (e.kind == ExcitationSpec::Kind::single) {
        b.excitation_block(e, BlockKind::single_jw, {support_of(generator(e, b.m))});
        continue;
      }
      const PauliSum g = generator(e, b.m);
      const auto sup = support_of(g);
      std::vector<std::vector<int>> orders;
      if (sup.size() == 4)
        orders = {{sup[0], sup[1], sup[2], sup[3]}, {sup[0], sup[2], sup[1], sup[3]}, {sup[0], sup[1], sup[3], sup[2]}};
      b.excitation_block(e, BlockKind::double_optimized, orders);
    }
  }
  finish(ca, b);
  return ca;
}

CompiledAnsatz compile(const AnsatzSpec& spec, Strategy strategy, Topology topology) {
  const int W = spec.n_modes();
  Connectivity conn = topology == Topology::linear     ? Connectivity::linear(W)
                      : topology == Topology::grid_2xN ? Connectivity::grid_2xN(spec.n_spatial)
                                                       : Connectivity::all_to_all(W);
  switch (strategy) {
    case Strategy::ladder_jw:
      return compile_ladder(spec, jw_mapping(W));
    case Strategy::ladder_bk: {
      try {
        CompiledAnsatz ca = compile_ladder(spec, bk_mapping(W));
        ca.strategy = Strategy::ladder_bk;
        return ca;
      } catch (const UnsupportedError&) {
        spdlog::warn("Bravyi-Kitaev needs a power-of-two mode count; using Jordan-Wigner for {} modes", W);
        CompiledAnsatz ca = compile_ladder(spec, jw_mapping(W));
        ca.notes.push_back("BK unavailable for this size: JW fallback");
        return ca;
      }
    }
    case Strategy::fsn:
    case Strategy::msn:
      return compile_upccgsd(spec, strategy, conn);
    case Strategy::cyclic:
      return compile_uccgsd_cyclic(spec, conn);
  }
  throw UnsupportedError("unknown strategy");
}

PauliSum remap_observable(const PauliSum& h, const CompiledAnsatz& ca) {
  const MajoranaMapping& f = ca.final_mapping;
  const int n = f.n_modes();
  if (h.n_qubits() != n) throw DimensionError("observable width does not match the logical mode count");
  // images of Z_q, X_q, Y_q of the logical Jordan–Wigner encoding
  std::vector<PauliString> zi(n), xi(n), yi(n);
  PauliString prefix(f.n_qubits());
  for (int q = 0; q < n; ++q) {
    const PauliString& g1 = f.gamma(2 * q + 1);
    const PauliString& g2 = f.gamma(2 * q + 2);
    xi[q] = prefix * g1;
    yi[q] = prefix * g2;
    zi[q] = (g1 * g2).with_phase((g1 * g2).phase() + 3);  // Z = -i γ γ
    prefix = prefix * zi[q];
  }
  PauliSum out(f.n_qubits());
  for (const auto& [w, coeff] : h.terms()) {
    PauliString acc(f.n_qubits());
    for (int q = 0; q < n; ++q) {
      if (w[q] == 'X') acc = acc * xi[q];
      else if (w[q] == 'Y') acc = acc * yi[q];
      else if (w[q] == 'Z') acc = acc * zi[q];
    }
    out.add(acc, coeff);
  }
  return out;
}

std::vector<double> bind_parameters(const CompiledAnsatz& ca, const std::map<std::string, double>& values) {
  std::vector<double> theta(ca.circuit.n_params(), 0.0);
  for (int i = 0; i < ca.circuit.n_params(); ++i) {
    const auto it = values.find(ca.circuit.params()[i]);
    if (it != values.end()) theta[i] = it->second;
  }
  return theta;
}

CircuitMetrics metrics(const Circuit& c, NativeBasis basis) {
  const Circuit low = lower_to_native(c, basis);
  return {low.n_qubits(), depth(low), two_qubit_count(low), depth(low, true), c.n_params()};
}

namespace {

using nlohmann::json;

json mapping_json(const MajoranaMapping& m) {
  json g = json::array();
  for (const auto& p : m.strings()) g.push_back({{"word", p.word()}, {"phase", p.phase()}});
  return {{"n_modes", m.n_modes()}, {"gammas", g}};
}

MajoranaMapping mapping_from(const json& j) {
  std::vector<PauliString> strings;
  for (const auto& g : j.at("gammas"))
    strings.push_back(PauliString::from_word(g.at("word").get<std::string>(), g.value("phase", 0)));
  return MajoranaMapping(j.at("n_modes").get<int>(), std::move(strings));
}

}  // namespace

std::string to_json(const CompiledAnsatz& ca) {
  json params = json::array();
  for (const auto& [name, info] : ca.parameter_table)
    params.push_back({{"name", name},
                      {"kind", info.spec.kind == ExcitationSpec::Kind::single ? "single" : "double"},
                      {"modes", info.spec.modes},
                      {"layer", info.layer}});
  json j{{"strategy", strategy_name(ca.strategy)},
         {"topology", topology_name(ca.connectivity.family)},
         {"circuit", json::parse(to_json(ca.circuit))},
         {"initial_mapping", mapping_json(ca.initial_mapping)},
         {"final_mapping", mapping_json(ca.final_mapping)},
         {"mode_permutation", ca.mode_permutation},
         {"parameters", params},
         {"transposition_two_qubit", ca.transposition_two_qubit},
         {"notes", ca.notes}};
  return j.dump(1);
}

CompiledAnsatz compiled_from_json(const std::string& text) {
  CompiledAnsatz ca;
  try {
    const json j = json::parse(text);
    ca.strategy = strategy_from_name(j.at("strategy").get<std::string>());
    ca.circuit = circuit_from_json(j.at("circuit").dump());
    const int n = ca.circuit.n_qubits();
    const Topology t = topology_from_name(j.value("topology", "all"));
    ca.connectivity = t == Topology::linear     ? Connectivity::linear(n)
                      : t == Topology::grid_2xN ? Connectivity::grid_2xN(n / 2)
                                                : Connectivity::all_to_all(n);
    ca.initial_mapping = mapping_from(j.at("initial_mapping"));
    ca.final_mapping = mapping_from(j.at("final_mapping"));
    ca.mode_permutation = j.value("mode_permutation", std::vector<int>{});
    for (const auto& p : j.value("parameters", json::array())) {
      ParamInfo info;
      info.spec.kind = p.at("kind").get<std::string>() == "single" ? ExcitationSpec::Kind::single
                                                                    : ExcitationSpec::Kind::double_;
      info.spec.modes = p.at("modes").get<std::vector<int>>();
      info.spec.param = p.at("name").get<std::string>();
      info.layer = p.value("layer", 0);
      ca.parameter_table[info.spec.param] = info;
    }
    ca.transposition_two_qubit = j.value("transposition_two_qubit", 0);
    ca.notes = j.value("notes", std::vector<std::string>{});
  } catch (const json::exception& e) {
    throw SchemaError(std::string("compiled ansatz: ") + e.what());
  } catch (const StructureError& e) {
    throw SchemaError(std::string("compiled ansatz: ") + e.what());
  } catch (const DimensionError& e) {
    throw SchemaError(std::string("compiled ansatz: ") + e.what());
  }
  if (ca.final_mapping.n_qubits() != ca.circuit.n_qubits())
    throw SchemaError("compiled ansatz: mapping width differs from circuit width");
  return ca;
}

}  // namespace msn
