#include "msn/networks.hpp"

#include <algorithm>
#include <numeric>

#include <json.hpp>

#include "msn/errors.hpp"

namespace msn {

namespace {

std::string mode_name(int mode) {
  return std::to_string(mode / 2) + (spin_of(mode) ? "b" : "a");
}

SwapStep window(std::vector<ExcitationSpec> specs, std::vector<int> positions) {
  SwapStep s;
  s.kind = SwapStep::Kind::window;
  s.specs = std::move(specs);
  s.positions = std::move(positions);
  return s;
}

SwapStep transposition(int a, int b, SwapFlavor f, bool fused = false) {
  SwapStep s;
  s.kind = SwapStep::Kind::transposition;
  s.t = {a, b, f, fused};
  return s;
}

void swap_positions(std::vector<int>& order, const Transposition& t) {
  std::swap(order.at(t.a), order.at(t.b));
}

std::pair<int, int> ordered(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

int SwapSchedule::transposition_count() const {
  return static_cast<int>(std::count_if(steps.begin(), steps.end(),
                                        [](const SwapStep& s) { return s.kind == SwapStep::Kind::transposition; }));
}

int SwapSchedule::window_count() const { return static_cast<int>(steps.size()) - transposition_count(); }

std::vector<ExcitationSpec> SwapSchedule::excitations() const {
  std::vector<ExcitationSpec> out;
  for (const auto& s : steps)
    if (s.kind == SwapStep::Kind::window) out.insert(out.end(), s.specs.begin(), s.specs.end());
  return out;
}

std::string SwapSchedule::to_json() const {
  using nlohmann::json;
  json steps_j = json::array();
  for (const auto& s : steps) {
    if (s.kind == SwapStep::Kind::transposition) {
      steps_j.push_back({{"type", "transposition"},
                         {"slots", {s.t.a, s.t.b}},
                         {"flavor", s.t.flavor == SwapFlavor::mswap_pair ? "mswap-pair" : "fswap"},
                         {"fused", s.t.fused}});
    } else {
      json specs = json::array();
      for (const auto& e : s.specs) specs.push_back({{"excitation", e.to_string()}, {"param", e.param}});
      steps_j.push_back({{"type", "window"}, {"positions", s.positions}, {"specs", specs}});
    }
  }
  json j{{"family", family},
         {"n_modes", n_modes},
         {"initial_order", initial_order},
         {"final_order", final_order},
         {"transpositions", transposition_count()},
         {"steps", steps_j}};
  return j.dump(2);
}

std::vector<std::pair<int, int>> pairing(const std::vector<int>& order) {
  if (order.size() % 2) throw DimensionError("pairing needs an even-length order");
  const std::size_t m = order.size();
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < m / 2; ++i) out.push_back(ordered(order[i], order[m - 1 - i]));
  return out;
}

QuartetSet quartets_of(const std::vector<int>& order) {
  const auto p = pairing(order);
  QuartetSet out;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      Quartet q{p[i].first, p[i].second, p[j].first, p[j].second};
      std::sort(q.begin(), q.end());
      out.insert(q);
    }
  return out;
}

QuartetSet quartet_coverage(const SwapSchedule& s) {
  std::vector<int> order = s.initial_order;
  QuartetSet cov = quartets_of(order);
  for (const auto& st : s.steps) {
    if (st.kind != SwapStep::Kind::transposition) continue;
    swap_positions(order, st.t);
    const auto q = quartets_of(order);
    cov.insert(q.begin(), q.end());
  }
  return cov;
}

std::vector<int> apply_transpositions(const SwapSchedule& s) {
  std::vector<int> order = s.initial_order;
  for (const auto& st : s.steps)
    if (st.kind == SwapStep::Kind::transposition) swap_positions(order, st.t);
  return order;
}

std::set<std::pair<int, int>> adjacency_coverage(const SwapSchedule& s) {
  std::vector<int> order = s.initial_order;
  std::set<std::pair<int, int>> out;
  auto collect = [&] {
    for (auto [a, b] : s.adjacent_positions) out.insert(ordered(order[a], order[b]));
  };
  collect();
  for (const auto& st : s.steps) {
    if (st.kind != SwapStep::Kind::transposition) continue;
    swap_positions(order, st.t);
    collect();
  }
  return out;
}

long long cyclic_count_sum(int n) {
  long long total = 0;
  for (long long k = 3; k <= n; ++k) total += 2 * (2 * k * k - k);
  return total;
}

long long cyclic_count_closed(int n) {
  const long long N = n;
  return (4 * N * N * N + 3 * N * N - N) / 3 - 14;
}

std::string single_name(int layer, int p, int q) {
  return "s[" + std::to_string(layer) + "][" + mode_name(p) + "," + mode_name(q) + "]";
}

std::string double_up_name(int layer, int p, int q) {
  return "d[" + std::to_string(layer) + "][" + std::to_string(p) + std::to_string(q) + "]";
}

std::string double_name(const ExcitationSpec& d) {
  std::string s = "d[0][";
  for (std::size_t i = 0; i < d.modes.size(); ++i) s += (i ? "," : "") + mode_name(d.modes[i]);
  return s + "]";
}

std::vector<ExcitationSpec> singles_sg(int n_spatial, int layer) {
  std::vector<ExcitationSpec> out;
  for (int sigma = 0; sigma < 2; ++sigma)
    for (int p = 0; p < n_spatial; ++p)
      for (int q = p + 1; q < n_spatial; ++q) {
        const int a = 2 * p + sigma, b = 2 * q + sigma;
        out.push_back(ExcitationSpec::single(a, b, single_name(layer, a, b)));
      }
  return out;
}

std::vector<ExcitationSpec> doubles_of_quartet(const Quartet& q) {
  // Each split of the quartet into a creator pair (holding q[0]) and an annihilator pair.
  const int splits[3][4] = {{q[0], q[1], q[2], q[3]}, {q[0], q[2], q[1], q[3]}, {q[0], q[3], q[1], q[2]}};
  std::vector<ExcitationSpec> out;
  for (const auto& s : splits) {
    if (spin_of(s[0]) + spin_of(s[1]) != spin_of(s[2]) + spin_of(s[3])) continue;
    ExcitationSpec d = ExcitationSpec::double_(s[0], s[1], s[2], s[3]);
    d.param = double_name(d);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<ExcitationSpec> doubles_dg(int n_spatial) {
  std::vector<ExcitationSpec> out;
  const int m = 2 * n_spatial;
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      for (int c = b + 1; c < m; ++c)
        for (int d = c + 1; d < m; ++d) {
          auto ds = doubles_of_quartet({a, b, c, d});
          out.insert(out.end(), ds.begin(), ds.end());
        }
  return out;
}

std::vector<ExcitationSpec> doubles_up(int n_spatial, int layer) {
  std::vector<ExcitationSpec> out;
  for (int p = 0; p < n_spatial; ++p)
    for (int q = p + 1; q < n_spatial; ++q)
      out.push_back(ExcitationSpec::double_(alpha_mode(p), beta_mode(p), alpha_mode(q), beta_mode(q),
                                            double_up_name(layer, p, q)));
  return out;
}

SwapSchedule cyclic_schedule(int n_modes) {
  if (n_modes < 8 || n_modes % 2) throw RangeError("cyclic schedule needs an even number of modes >= 8");
  SwapSchedule s;
  s.family = "cyclic";
  s.n_modes = n_modes;
  s.initial_order.resize(n_modes);
  std::iota(s.initial_order.begin(), s.initial_order.end(), 0);

  std::vector<int> l = s.initial_order;
  QuartetSet seen_q;
  std::set<std::pair<int, int>> seen_p;
  auto emit_new = [&](std::vector<int> positions) {
    std::vector<ExcitationSpec> specs;
    for (auto [a, b] : pairing(l))
      if (spin_of(a) == spin_of(b) && seen_p.insert({a, b}).second)
        specs.push_back(ExcitationSpec::single(a, b, "s[0][" + mode_name(a) + "," + mode_name(b) + "]"));
    for (const auto& q : quartets_of(l))
      if (seen_q.insert(q).second) {
        auto ds = doubles_of_quartet(q);
        specs.insert(specs.end(), ds.begin(), ds.end());
      }
    if (!specs.empty()) s.steps.push_back(window(std::move(specs), std::move(positions)));
  };
  auto step = [&](int a, int b) {
    Transposition t{a, b, SwapFlavor::fswap, false};
    swap_positions(l, t);
    s.steps.push_back(transposition(a, b, SwapFlavor::fswap));
    emit_new({a, b});
  };

  emit_new({});
  // Active positions shrink from the outside; the first active element rotates one way
  // through the sub-list, its mirror partner the other way, after which the two are
  // paired again and retire.
  std::vector<int> pos = s.initial_order;
  while (pos.size() >= 6) {
    const int m = static_cast<int>(pos.size());
    const int half = m / 2;
    const int steps = half * (2 * half - 1);
    const int a = l[pos.front()], b = l[pos.back()];
    for (int k = 0; k < steps; ++k) step(pos[k % m], pos[(k + 1) % m]);
    int p = 0;
    while (l[pos[p]] != b) ++p;
    for (int k = 0; k < steps; ++k) step(pos[((p - k) % m + m) % m], pos[((p - k - 1) % m + m) % m]);
    int ia = -1, ib = -1;
    for (int i = 0; i < m; ++i) {
      if (l[pos[i]] == a) ia = i;
      if (l[pos[i]] == b) ib = i;
    }
    if (ia + ib != m - 1) throw InvariantError("cyclic schedule lost the pairing of the rotated modes");
    std::vector<int> rest;
    for (int i = 0; i < m; ++i)
      if (i != ia && i != ib) rest.push_back(pos[i]);
    pos = std::move(rest);
  }
  s.final_order = l;
  return s;
}

std::vector<int> odd_even_crossings(int n_spatial, int k) {
  std::vector<int> out;
  for (int rep = 0; rep < k; ++rep)
    for (int round = 0; round < n_spatial; ++round)
      for (int c = round % 2; c + 1 < n_spatial; c += 2) out.push_back(c);
  return out;
}

namespace {

void check_network_args(int n_spatial, int k) {
  if (n_spatial < 2) throw RangeError("swap network needs at least two spatial orbitals");
  if (k < 1) throw RangeError("swap network needs at least one repetition");
}

// Rounds of one repetition, each a list of crossing columns.
std::vector<std::vector<int>> rounds(int n_spatial) {
  std::vector<std::vector<int>> out;
  for (int round = 0; round < n_spatial; ++round) {
    std::vector<int> r;
    for (int c = round % 2; c + 1 < n_spatial; c += 2) r.push_back(c);
    if (!r.empty()) out.push_back(r);
  }
  return out;
}

std::vector<ExcitationSpec> crossing_specs(int p, int q, int layer) {
  if (p > q) std::swap(p, q);
  return {ExcitationSpec::double_(alpha_mode(p), beta_mode(p), alpha_mode(q), beta_mode(q), double_up_name(layer, p, q)),
          ExcitationSpec::single(alpha_mode(p), alpha_mode(q), single_name(layer, alpha_mode(p), alpha_mode(q))),
          ExcitationSpec::single(beta_mode(p), beta_mode(q), single_name(layer, beta_mode(p), beta_mode(q)))};
}

}  // namespace

SwapSchedule msn_schedule(int n_spatial, int k) {
  check_network_args(n_spatial, k);
  const int N = n_spatial, W = 2 * N;
  SwapSchedule s;
  s.family = "msn";
  s.n_modes = W;
  s.initial_order.resize(W);
  for (int c = 0; c < N; ++c) {
    s.initial_order[c] = alpha_mode(c);
    s.initial_order[W - 1 - c] = beta_mode(c);
  }
  for (int c = 0; c + 1 < N; ++c) {
    s.adjacent_positions.push_back({c, c + 1});
    s.adjacent_positions.push_back({W - 2 - c, W - 1 - c});
  }
  std::vector<int> order = s.initial_order;
  for (int layer = 0; layer < k; ++layer)
    for (const auto& r : rounds(N))
      for (int c : r) {
        const int p = order[c] / 2, q = order[c + 1] / 2;
        s.steps.push_back(window(crossing_specs(p, q, layer), {c, c + 1, W - 2 - c, W - 1 - c}));
        for (auto [a, b] : {std::pair{c, c + 1}, std::pair{W - 2 - c, W - 1 - c}}) {
          s.steps.push_back(transposition(a, b, SwapFlavor::mswap_pair));
          std::swap(order[a], order[b]);
        }
      }
  s.final_order = order;
  return s;
}

SwapSchedule fsn_schedule(int n_spatial, int k) {
  check_network_args(n_spatial, k);
  const int N = n_spatial, W = 2 * N;
  SwapSchedule s;
  s.family = "fsn";
  s.n_modes = W;
  s.initial_order.resize(W);
  std::iota(s.initial_order.begin(), s.initial_order.end(), 0);
  for (int w = 0; w + 1 < W; ++w) s.adjacent_positions.push_back({w, w + 1});
  std::vector<int> order = s.initial_order;
  auto swap_at = [&](int a, bool fused) {
    s.steps.push_back(transposition(a, a + 1, SwapFlavor::fswap, fused));
    std::swap(order[a], order[a + 1]);
  };
  for (int layer = 0; layer < k; ++layer)
    for (const auto& r : rounds(N))
      for (int c : r) {
        const int w = 2 * c;  // wires w..w+3 hold p-alpha, p-beta, q-alpha, q-beta
        const int p = order[w] / 2, q = order[w + 2] / 2;
        auto specs = crossing_specs(p, q, layer);
        s.steps.push_back(window({specs[0]}, {w, w + 1, w + 2, w + 3}));
        swap_at(w + 1, false);  // p-beta <-> q-alpha
        s.steps.push_back(window({specs[1]}, {w, w + 1}));
        swap_at(w, true);  // p-alpha <-> q-alpha, carries the alpha single
        s.steps.push_back(window({specs[2]}, {w + 2, w + 3}));
        swap_at(w + 2, true);  // p-beta <-> q-beta, carries the beta single
        swap_at(w + 1, false);  // p-alpha <-> q-beta
      }
  s.final_order = order;
  return s;
}

}  // namespace msn
