#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "msn/errors.hpp"
#include "msn/networks.hpp"

using namespace msn;

namespace {

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Replays the schedule independently: position i pairs with its mirror m-1-i.
struct Replay {
  std::vector<std::vector<int>> orders_at_window;  // order in force at each window step
  std::set<std::array<int, 4>> quartets;
};

Replay replay(const SwapSchedule& s) {
  Replay r;
  std::vector<int> order = s.initial_order;
  const int m = static_cast<int>(order.size());
  auto collect = [&] {
    for (int i = 0; i < m / 2; ++i)
      for (int j = i + 1; j < m / 2; ++j) {
        std::array<int, 4> q{order[i], order[m - 1 - i], order[j], order[m - 1 - j]};
        std::sort(q.begin(), q.end());
        r.quartets.insert(q);
      }
  };
  collect();
  for (const auto& st : s.steps) {
    if (st.kind == SwapStep::Kind::transposition) {
      std::swap(order[st.t.a], order[st.t.b]);
      collect();
    } else {
      r.orders_at_window.push_back(order);
    }
  }
  return r;
}

std::multiset<std::vector<int>> mode_sets(const std::vector<ExcitationSpec>& specs) {
  std::multiset<std::vector<int>> out;
  for (const auto& e : specs) {
    auto m = e.modes;
    std::sort(m.begin(), m.end());
    out.insert(m);
  }
  return out;
}

}  // namespace

TEST(Networks, ClosedFormMatchesSum) {
  const std::map<int, long long> known = {{4, 86}, {5, 176}, {6, 308}, {7, 490}, {8, 730}};
  for (const auto& [n, v] : known) {
    EXPECT_EQ(cyclic_count_sum(n), v);
    EXPECT_EQ(cyclic_count_closed(n), v);
  }
}

TEST(Networks, CyclicCountAndCoverage) {
  for (int modes : {8, 10, 12}) {
    const SwapSchedule s = cyclic_schedule(modes);
    const int n = modes / 2;
    EXPECT_EQ(s.transposition_count(), cyclic_count_closed(n));
    const Replay r = replay(s);
    EXPECT_EQ(static_cast<long long>(r.quartets.size()), binom(modes, 4));
    EXPECT_EQ(quartet_coverage(s).size(), r.quartets.size());
    EXPECT_EQ(apply_transpositions(s), s.final_order);
  }
  EXPECT_THROW(cyclic_schedule(6), RangeError);
  EXPECT_THROW(cyclic_schedule(9), RangeError);
}

TEST(Networks, CyclicWindowsAreLocal) {
  const SwapSchedule s = cyclic_schedule(8);
  const Replay r = replay(s);
  std::size_t w = 0;
  for (const auto& st : s.steps) {
    if (st.kind != SwapStep::Kind::window) continue;
    const auto& order = r.orders_at_window[w++];
    const int m = static_cast<int>(order.size());
    std::map<int, int> partner;
    for (int i = 0; i < m / 2; ++i) {
      partner[order[i]] = order[m - 1 - i];
      partner[order[m - 1 - i]] = order[i];
    }
    for (const auto& e : st.specs) {
      // every mode's partner is also in the excitation: the support is a union of pairs
      std::set<int> modes(e.modes.begin(), e.modes.end());
      for (int p : e.modes) EXPECT_TRUE(modes.count(partner[p])) << e.to_string();
    }
  }
}

TEST(Networks, CyclicEmitsEveryGeneralizedExcitationOnce) {
  const SwapSchedule s = cyclic_schedule(8);
  auto want = mode_sets(singles_sg(4));
  for (const auto& m : mode_sets(doubles_dg(4))) want.insert(m);
  EXPECT_EQ(mode_sets(s.excitations()), want);
  EXPECT_EQ(singles_sg(4).size(), 12u);
  EXPECT_EQ(doubles_dg(4).size(), 78u);
}

TEST(Networks, GeneralizedExcitationsConserveSpin) {
  for (const auto& d : doubles_dg(5)) {
    const int up = d.modes[0] % 2 + d.modes[1] % 2, down = d.modes[2] % 2 + d.modes[3] % 2;
    EXPECT_EQ(up, down) << d.to_string();
  }
  for (const auto& e : singles_sg(5)) EXPECT_EQ(e.modes[0] % 2, e.modes[1] % 2);
}

TEST(Networks, PairingAndQuartets) {
  const std::vector<int> order = {0, 1, 2, 3, 4, 5};
  const auto p = pairing(order);
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[0], std::make_pair(0, 5));
  EXPECT_EQ(p[2], std::make_pair(2, 3));
  EXPECT_EQ(quartets_of(order).size(), 3u);
  EXPECT_THROW(pairing({0, 1, 2}), DimensionError);
}

TEST(Networks, MsnIsTwoComplete) {
  for (int N = 2; N <= 12; ++N) {
    const SwapSchedule s = msn_schedule(N, 1);
    const auto cov = adjacency_coverage(s);
    for (int p = 0; p < N; ++p)
      for (int q = p + 1; q < N; ++q)
        for (int sigma = 0; sigma < 2; ++sigma)
          EXPECT_TRUE(cov.count({2 * p + sigma, 2 * q + sigma})) << "N=" << N << " p=" << p << " q=" << q;
    EXPECT_EQ(s.transposition_count(), 2 * static_cast<int>(binom(N, 2)));
  }
}

TEST(Networks, FsnIsTwoComplete) {
  for (int N = 2; N <= 12; ++N) {
    const SwapSchedule s = fsn_schedule(N, 1);
    const auto cov = adjacency_coverage(s);
    for (int a = 0; a < 2 * N; ++a)
      for (int b = a + 1; b < 2 * N; ++b)
        if (a / 2 != b / 2 && a % 2 == b % 2) EXPECT_TRUE(cov.count({a, b})) << "N=" << N;
    EXPECT_EQ(s.transposition_count(), 4 * static_cast<int>(binom(N, 2)));
  }
}

TEST(Networks, FsnUsesTwiceTheSwapsOfMsn) {
  for (int N = 2; N <= 12; ++N)
    EXPECT_EQ(fsn_schedule(N, 1).transposition_count(), 2 * msn_schedule(N, 1).transposition_count());
}

TEST(Networks, UpccgsdWindowsCoverTheAnsatz) {
  for (int k = 1; k <= 2; ++k) {
    const SwapSchedule s = msn_schedule(4, k);
    std::multiset<std::vector<int>> want;
    for (int l = 0; l < k; ++l) {
      for (const auto& m : mode_sets(doubles_up(4, l))) want.insert(m);
      for (const auto& m : mode_sets(singles_sg(4, l))) want.insert(m);
    }
    EXPECT_EQ(mode_sets(s.excitations()), want);
    EXPECT_EQ(mode_sets(fsn_schedule(4, k).excitations()), want);
  }
}

TEST(Networks, MsnWindowsSitOnTheirColumns) {
  const SwapSchedule s = msn_schedule(5, 1);
  std::vector<int> order = s.initial_order;
  for (const auto& st : s.steps) {
    if (st.kind == SwapStep::Kind::transposition) {
      std::swap(order[st.t.a], order[st.t.b]);
      continue;
    }
    std::set<int> here;
    for (int pos : st.positions) here.insert(order[pos]);
    for (const auto& e : st.specs)
      for (int p : e.modes) EXPECT_TRUE(here.count(p));
  }
}

TEST(Networks, OddEvenCrossingsMeetEveryPair) {
  for (int N = 2; N <= 9; ++N) {
    const auto c = odd_even_crossings(N, 1);
    EXPECT_EQ(static_cast<long long>(c.size()), binom(N, 2));
  }
}

TEST(Networks, ScheduleJson) {
  const std::string j = msn_schedule(3, 1).to_json();
  EXPECT_NE(j.find("\"family\""), std::string::npos);
  EXPECT_NE(j.find("msn"), std::string::npos);
}
