#pragma once

#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msn/excitations.hpp"

namespace msn {

// Spin orbitals are interleaved: mode 2p is p-alpha, mode 2p+1 is p-beta.
inline int alpha_mode(int p) { return 2 * p; }
inline int beta_mode(int p) { return 2 * p + 1; }
inline int spin_of(int mode) { return mode & 1; }

enum class SwapFlavor { mswap_pair, fswap };

// Exchange of the modes at two positions of the current order.
struct Transposition {
  int a = 0, b = 0;
  SwapFlavor flavor = SwapFlavor::fswap;
  bool fused = false;  // carries the single excitation of the preceding window
};

struct SwapStep {
  enum class Kind { transposition, window } kind = Kind::window;
  Transposition t;
  std::vector<ExcitationSpec> specs;  // window only
  std::vector<int> positions;         // window only: positions the specs act on
};

struct SwapSchedule {
  std::string family;  // "cyclic", "msn", "fsn"
  int n_modes = 0;
  std::vector<int> initial_order;  // position -> logical mode
  std::vector<int> final_order;
  std::vector<SwapStep> steps;
  // Position pairs that count as adjacent for 2-completeness (empty for cyclic).
  std::vector<std::pair<int, int>> adjacent_positions;

  int transposition_count() const;
  int window_count() const;
  std::vector<ExcitationSpec> excitations() const;
  std::string to_json() const;
};

using Quartet = std::array<int, 4>;
using QuartetSet = std::set<Quartet>;

std::vector<std::pair<int, int>> pairing(const std::vector<int>& order);
QuartetSet quartets_of(const std::vector<int>& order);
QuartetSet quartet_coverage(const SwapSchedule& s);
std::vector<int> apply_transpositions(const SwapSchedule& s);
// Logical mode pairs that sit on adjacent positions at some point of the replay.
std::set<std::pair<int, int>> adjacency_coverage(const SwapSchedule& s);

// Σ_{k=3}^{n} 2(2k² − k), by direct summation and by the closed form.
long long cyclic_count_sum(int n);
long long cyclic_count_closed(int n);

// Spin-conserving generalized singles and doubles over 2N spin orbitals.
std::vector<ExcitationSpec> singles_sg(int n_spatial, int layer = 0);
std::vector<ExcitationSpec> doubles_dg(int n_spatial);
std::vector<ExcitationSpec> doubles_of_quartet(const Quartet& q);
std::vector<ExcitationSpec> doubles_up(int n_spatial, int layer = 0);

std::string single_name(int layer, int p, int q);
std::string double_up_name(int layer, int p, int q);
std::string double_name(const ExcitationSpec& d);

// Each mode of every shrinking sub-list is rotated through the others; windows list the
// quartets (and same-spin pairs) that become local for the first time.
SwapSchedule cyclic_schedule(int n_modes);

// 2×N layout: the alpha row sits on wires 0..N-1, the beta row on wires 2N-1..N
// (column c holds wires c and 2N-1-c). Odd-even rounds over columns; each crossing is
// a window {paired double, alpha single, beta single} followed by one MSWAP pair per row.
SwapSchedule msn_schedule(int n_spatial, int k);

// Interleaved line (p-alpha, p-beta, ...); a spatial crossing is the double, then
// FSWAP(p-beta, q-alpha), the alpha and beta singles fused with FSWAP(p-alpha, q-alpha)
// and FSWAP(p-beta, q-beta), then FSWAP(p-alpha, q-beta).
SwapSchedule fsn_schedule(int n_spatial, int k);

// Spatial crossings (column pairs) of the odd-even network, in order, for k repetitions.
std::vector<int> odd_even_crossings(int n_spatial, int k);

}  // namespace msn
