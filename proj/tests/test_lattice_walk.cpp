#include <catch2/catch_amalgamated.hpp>

#include "gradedroots/graded_root.hpp"
#include "gradedroots/lattice_walk.hpp"
#include "gradedroots/semigroup.hpp"

#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <vector>

using namespace gradedroots;

using i64 = std::int64_t;

namespace {

/* tau(i) for i = 0..N0+1 straight from the delta sequence */
std::vector<i64> tau_prefix(const BrieskornTriple& t) {
  auto d = delta_sequence(t);
  std::vector<i64> tau(t.n0 >= 0 ? t.n0 + 2 : 1, 0);
  std::size_t next = 0;
  i64 acc = 0;
  for (std::size_t i = 1; i < tau.size(); ++i) {
    while (next < d.entries.size() &&
           d.entries[next].position == static_cast<i64>(i - 1)) {
      acc += d.entries[next].sign;
      ++next;
    }
    tau[i] = acc;
  }
  return tau;
}

CharClass zero_class(const PlumbingGraph& g) {
  CharClass k;
  k.pairings.assign(g.size(), 0);
  return k;
}

std::set<std::vector<i64>> terminal_set(
    const std::vector<std::pair<CharClass, CharClass>>& pairs) {
  std::set<std::vector<i64>> out;
  for (const auto& [initial, terminal] : pairs) out.insert(terminal.pairings);
  return out;
}

}  // namespace

TEST_CASE("terminal classes are fixed points") {
  auto g = build_brieskorn_graph(2, 3, 5);
  auto path = follow_path(g, zero_class(g));
  REQUIRE(path.steps.empty());
  REQUIRE(path.terminal == zero_class(g));
  REQUIRE(path.good);
}

TEST_CASE("initial box is enforced") {
  auto g = build_brieskorn_graph(2, 3, 7);
  REQUIRE_THROWS_AS(follow_path(g, canonical_class(g)), input_error);
}

TEST_CASE("walks are independent of the firing order") {
  std::mt19937 rng(424242);
  for (auto [p, q, r] : {std::array<i64, 3>{3, 5, 7}, {3, 4, 11}, {2, 3, 5}}) {
    auto g = build_brieskorn_graph(p, q, r);
    for (int trial = 0; trial < 200; ++trial) {
      CharClass k;
      k.pairings.resize(g.size());
      for (int v = 0; v < g.size(); ++v) {
        i64 lo = g.weight(v) + 2, hi = -g.weight(v);
        std::uniform_int_distribution<i64> pick(0, (hi - lo) / 2);
        k.pairings[v] = lo + 2 * pick(rng);
      }
      auto up = follow_path(g, k, ChoiceRule::ascending);
      auto down = follow_path(g, k, ChoiceRule::descending);
      REQUIRE(up.good == down.good);
      if (up.good) {
        REQUIRE(up.terminal == down.terminal);
        REQUIRE(up.steps.size() == down.steps.size());
      }
    }
  }
}

TEST_CASE("walk trace names fired vertices") {
  auto g = build_brieskorn_graph(2, 3, 5);
  auto k = zero_class(g);
  k.pairings[1] = 2;
  std::ostringstream trace;
  auto path = follow_path(g, k, ChoiceRule::ascending, 0, &trace);
  REQUIRE_FALSE(path.steps.empty());
  REQUIRE(trace.str().find("fired v=") != std::string::npos);
}

TEST_CASE("walk caps are errors, not truncations") {
  auto g = build_brieskorn_graph(3, 5, 7);

  LauferWalk walk(g, 3);
  REQUIRE_THROWS_AS([&] { for (int i = 0; i < 100; ++i) walk.advance(); }(), cap_error);

  auto k = canonical_class(g);
  k.pairings[g.central] = 2;  /* fireable, with a cascade behind it */
  REQUIRE_THROWS_AS(follow_path(g, k, ChoiceRule::ascending, 1), cap_error);
}

TEST_CASE("Laufer sequence starts at the canonical class") {
  for (Family f : {Family::X, Family::Y, Family::Z})
    for (i64 n = 1; n <= 3; ++n) {
      auto g = build_brieskorn_graph(family_triple(f, n).p, family_triple(f, n).q,
                                     family_triple(f, n).r);
      LauferWalk walk(g);
      REQUIRE(walk.state().index == 0);
      REQUIRE(walk.state().k == canonical_class(g));
      REQUIRE(walk.state().chi0 == 1);
      REQUIRE(walk.state().tau_partial == 0);
    }
}

TEST_CASE("Laufer tau equals delta tau on the families") {
  for (Family f : {Family::X, Family::Y, Family::Z})
    for (i64 n = 1; n <= 4; ++n) {
      CAPTURE(family_name(f), n);
      auto t = family_triple(f, n);
      auto g = build_brieskorn_graph(t.p, t.q, t.r);
      auto expected = tau_prefix(t);
      auto got = laufer_tau_values(g, t.n0 + 1);
      REQUIRE(got == expected);
    }
}

TEST_CASE("Laufer tau equals delta tau for all pqr <= 5000") {
  int checked = 0;
  for (i64 p = 2; p * (p + 1) * (p + 2) <= 5000; ++p)
    for (i64 q = p + 1; p * q * (q + 1) <= 5000; ++q) {
      if (std::gcd(p, q) != 1) continue;
      for (i64 r = q + 1; p * q * r <= 5000; ++r) {
        if (std::gcd(p, r) != 1 || std::gcd(q, r) != 1) continue;
        auto t = brieskorn_triple(p, q, r);
        auto g = build_brieskorn_graph(p, q, r);
        auto expected = tau_prefix(t);
        auto got = laufer_tau_values(g, t.n0 >= 0 ? t.n0 + 1 : 0);
        if (got != expected) {
          CAPTURE(p, q, r);
          REQUIRE(got == expected);
        }
        ++checked;
      }
    }
  REQUIRE(checked > 500);
}

TEST_CASE("laufer_index inverts the sequence") {
  auto g = build_brieskorn_graph(3, 5, 7);
  REQUIRE(laufer_index(g, canonical_class(g)) == 0);

  LauferWalk walk(g);
  for (i64 i = 1; i <= 35; ++i) {
    walk.advance();
    REQUIRE(walk.state().index == i);
    REQUIRE(laufer_index(g, walk.state().k) == i);
  }

  auto off = canonical_class(g);
  off.pairings[g.central] += 1;
  REQUIRE_THROWS_AS(laufer_index(g, off), input_error);
}

TEST_CASE("terminal classes of the families") {
  for (Family f : {Family::X, Family::Y, Family::Z})
    for (i64 n = 1; n <= 6; ++n) {
      CAPTURE(family_name(f), n);
      auto m = family_member(f, n);
      auto g = build_brieskorn_graph(m.t.p, m.t.q, m.t.r);
      auto tc = family_terminal_classes(g, n);

      REQUIRE(tc.a == m.a);
      REQUIRE(tc.b == m.b);
      REQUIRE_FALSE(tc.swapped);
      REQUIRE(is_terminal_class(g, tc.k1));
      REQUIRE(is_terminal_class(g, tc.k2));
      REQUIRE(is_good_class(g, tc.k1));
      REQUIRE(is_good_class(g, tc.k2));
      REQUIRE(laufer_index(g, tc.k1) == m.a);
      REQUIRE(laufer_index(g, tc.k2) == m.b);

      /* both classes realize the d level */
      REQUIRE((pairing_square(g, tc.k1) + g.size()) / 4 == Rat(2 * n));
      REQUIRE((pairing_square(g, tc.k2) + g.size()) / 4 == Rat(2 * n));

      /* and both appear in the Laufer sequence at their index */
      LauferWalk walk(g);
      while (walk.state().index < m.a) walk.advance();
      REQUIRE(walk.state().k == tc.k1);
      while (walk.state().index < m.b) walk.advance();
      REQUIRE(walk.state().k == tc.k2);
    }
}

TEST_CASE("exhaustive walks over a single vertex") {
  PlumbingGraph g;
  g.vertices.push_back({0, -2});
  rebuild_adjacency(g);

  auto found = good_initial_classes(g);
  REQUIRE(found.size() == 2);
  REQUIRE(found[0].first.pairings == std::vector<i64>{0});
  REQUIRE(found[0].second.pairings == std::vector<i64>{0});
  REQUIRE(found[1].first.pairings == std::vector<i64>{2});
  REQUIRE(found[1].second.pairings == std::vector<i64>{-2});
}

TEST_CASE("exhaustive walks over E8") {
  auto g = build_brieskorn_graph(2, 3, 5);
  auto found = good_initial_classes(g);
  REQUIRE_FALSE(found.empty());
  /* every good walk lands on the canonical class, the lone leaf */
  REQUIRE(terminal_set(found) ==
          std::set<std::vector<i64>>{zero_class(g).pairings});
  REQUIRE(d_via_os(g) == Rat(-2));
}

TEST_CASE("exhaustive walks over Y_1 and Z_1") {
  for (Family f : {Family::Y, Family::Z}) {
    auto m = family_member(f, 1);
    auto g = build_brieskorn_graph(m.t.p, m.t.q, m.t.r);
    auto tc = family_terminal_classes(g, 1);
    auto found = good_initial_classes(g);

    /* good terminals are Laufer classes at tau minima, one per leaf; an
       equal-tau plateau holds two equivalent representatives of one leaf,
       only one of which is reachable by firing moves */
    auto tau = tau_prefix(m.t);
    std::set<std::vector<i64>> candidates;
    LauferWalk walk(g);
    for (i64 i = 0; i <= m.t.n0 + 1; ++i) {
      if (i > 0) walk.advance();
      bool left_min = i == 0 || tau[i] <= tau[i - 1];
      bool right_min = i == m.t.n0 + 1 || tau[i] <= tau[i + 1];
      if (left_min && right_min && is_terminal_class(g, walk.state().k) &&
          is_good_class(g, walk.state().k))
        candidates.insert(walk.state().k.pairings);
    }
    auto realized = terminal_set(found);
    for (const auto& pairings : realized)
      REQUIRE(candidates.count(pairings) == 1);
    auto root = root_from_tau(tau_from_delta(delta_sequence(m.t)));
    REQUIRE(realized.size() == root.leaves.size());

    /* k1 and k2 realize the maximum; on the Y_1 graph they are the only
       realizers, while Z_1 adds a reflection-symmetric middle leaf at the
       same level */
    Rat best = 0;
    for (const auto& [initial, terminal] : found) {
      Rat value = (pairing_square(g, terminal) + g.size()) / 4;
      if (value > best) best = value;
    }
    REQUIRE(best == Rat(2));
    std::set<std::vector<i64>> realizers;
    for (const auto& [initial, terminal] : found)
      if ((pairing_square(g, terminal) + g.size()) / 4 == best)
        realizers.insert(terminal.pairings);
    REQUIRE(realizers.count(tc.k1.pairings) == 1);
    REQUIRE(realizers.count(tc.k2.pairings) == 1);
    if (f == Family::Y)
      REQUIRE(realizers ==
              std::set<std::vector<i64>>{tc.k1.pairings, tc.k2.pairings});

    /* each good terminal sits at a local minimum index of tau */
    for (const auto& t : terminal_set(found)) {
      CharClass k;
      k.pairings = t;
      i64 i = laufer_index(g, k);
      REQUIRE(i >= 0);
      REQUIRE(i <= m.t.n0 + 1);
      if (i > 0) REQUIRE(tau[i] <= tau[i - 1]);
      if (i < m.t.n0 + 1) REQUIRE(tau[i] <= tau[i + 1]);
    }
  }
}

TEST_CASE("exhaustive cap is enforced") {
  auto g = build_brieskorn_graph(5, 8, 13);  /* 21 vertices */
  REQUIRE_THROWS_AS(good_initial_classes(g, 20), cap_error);
}

TEST_CASE("sampled walks never beat the characterized level") {
  std::mt19937 rng(998877);
  for (Family f : {Family::X, Family::Y, Family::Z})
    for (i64 n = 2; n <= 3; ++n) {
      auto t = family_triple(f, n);
      auto g = build_brieskorn_graph(t.p, t.q, t.r);
      for (int trial = 0; trial < 200; ++trial) {
        CharClass k;
        k.pairings.resize(g.size());
        for (int v = 0; v < g.size(); ++v) {
          i64 lo = g.weight(v) + 2, hi = -g.weight(v);
          std::uniform_int_distribution<i64> pick(0, (hi - lo) / 2);
          k.pairings[v] = lo + 2 * pick(rng);
        }
        auto path = follow_path(g, k);
        if (path.good)
          REQUIRE((pairing_square(g, path.terminal) + g.size()) / 4 <= Rat(2 * n));
      }
    }
}

TEST_CASE("d invariant via walks") {
  REQUIRE(d_via_os(build_brieskorn_graph(2, 3, 5)) == Rat(-2));
  for (Family f : {Family::X, Family::Y, Family::Z})
    for (i64 n = 1; n <= 3; ++n) {
      CAPTURE(family_name(f), n);
      auto t = family_triple(f, n);
      auto g = build_brieskorn_graph(t.p, t.q, t.r);
      REQUIRE(d_via_os(g) == Rat(-2 * n));
    }
}

TEST_CASE("strict interior classes appear exactly once") {
  for (Family f : {Family::X, Family::Y, Family::Z})
    for (i64 n = 1; n <= 3; ++n) {
      auto t = family_triple(f, n);
      auto g = build_brieskorn_graph(t.p, t.q, t.r);

      /* strict box: e+2 <= <k,v> <= -e-2; only the long leg vertex has
         room, every other vertex is pinned at 0 */
      std::vector<CharClass> strict;
      int pv = g.legs[0][0];
      for (i64 c = g.weight(pv) + 2; c <= -g.weight(pv) - 2; c += 2) {
        CharClass k;
        k.pairings.assign(g.size(), 0);
        k.pairings[pv] = c;
        strict.push_back(k);
      }
      REQUIRE(strict.size() == static_cast<std::size_t>(2 * n));

      std::vector<int> seen(strict.size(), 0);
      LauferWalk walk(g);
      for (i64 i = 0; i <= t.n0 + 1; ++i) {
        if (i > 0) walk.advance();
        for (std::size_t s = 0; s < strict.size(); ++s)
          if (walk.state().k == strict[s]) ++seen[s];
      }
      for (std::size_t s = 0; s < strict.size(); ++s) REQUIRE(seen[s] == 1);
    }
}
