#pragma once

#include "gradedroots/arith.hpp"
#include "gradedroots/plumbing.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <utility>
#include <vector>

namespace gradedroots {

/* A vertex can be fired when its pairing sits at the top of its box. */
inline bool fireable(const PlumbingGraph& g, const CharClass& k, int v) {
  return k.pairings[v] == -g.weight(v);
}

inline bool is_terminal_class(const PlumbingGraph& g, const CharClass& k) {
  for (int v = 0; v < g.size(); ++v)
    if (fireable(g, k, v)) return false;
  return true;
}

/* e(v) <= <k,v> <= -e(v) - 2 at every vertex.  A class stuck above -e(v)
 * at some vertex never represents a kernel element of the U action, so a
 * terminal reached through such an overshoot does not count as good. */
inline bool is_good_class(const PlumbingGraph& g, const CharClass& k) {
  for (int v = 0; v < g.size(); ++v) {
    auto e = g.weight(v);
    if (k.pairings[v] < e || k.pairings[v] > -e - 2) return false;
  }
  return true;
}

/* e(v)+2 <= <k,v> <= -e(v) at every vertex. */
inline bool in_initial_box(const PlumbingGraph& g, const CharClass& k) {
  for (int v = 0; v < g.size(); ++v) {
    auto e = g.weight(v);
    if (k.pairings[v] < e + 2 || k.pairings[v] > -e) return false;
  }
  return true;
}

/* Multiplicities recovered from the graph as |det| of each leg chain. */
inline std::vector<std::int64_t> leg_multiplicities(const PlumbingGraph& g) {
  std::vector<std::int64_t> alpha;
  for (const auto& leg : g.legs) {
    if (leg.empty()) throw input_error("leg_multiplicities: graph is not a three-legged star");
    std::vector<bool> keep(g.size(), false);
    for (int v : leg) keep[v] = true;
    Int det = induced_forest_determinant(g, keep);
    alpha.push_back(to_int64(det < 0 ? -det : det));
  }
  return alpha;
}

inline std::int64_t recover_n0(const PlumbingGraph& g) {
  auto alpha = leg_multiplicities(g);
  std::int64_t product = alpha[0] * alpha[1] * alpha[2];
  return product - alpha[1] * alpha[2] - alpha[0] * alpha[2] - alpha[0] * alpha[1];
}

inline std::int64_t default_step_cap(const PlumbingGraph& g) {
  std::int64_t n0 = 0;
  bool star = true;
  for (const auto& leg : g.legs)
    if (leg.empty()) star = false;
  if (star) n0 = recover_n0(g);
  if (n0 < 1) n0 = 1;
  std::int64_t cap = 4 * n0 * g.size();
  return cap < 1000 ? 1000 : cap;
}

namespace detail {

inline std::uint64_t pairing_hash(const CharClass& k) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t v : k.pairings) {
    h ^= static_cast<std::uint64_t>(v);
    h *= 1099511628211ull;
  }
  return h;
}

inline void trace_step(std::ostream* trace, int vertex, const CharClass& k) {
  if (trace) *trace << "fired v=" << vertex << " hash=" << pairing_hash(k) << '\n';
}

}  // namespace detail

struct FullPath {
  std::vector<CharClass> steps;
  CharClass terminal;
  bool good = false;
};

enum class ChoiceRule { ascending, descending };

/* Walk k downward, firing any vertex whose pairing equals -e(v), until no
   move remains.  The terminal class does not depend on the firing order;
   the deterministic rule only fixes the intermediate stream. */
inline FullPath follow_path(const PlumbingGraph& g, CharClass k,
                            ChoiceRule rule = ChoiceRule::ascending,
                            std::int64_t step_cap = 0, std::ostream* trace = nullptr) {
  if (!in_initial_box(g, k)) throw input_error("follow_path: class outside the initial box");
  if (step_cap <= 0) step_cap = default_step_cap(g);

  std::set<int> hot;
  for (int v = 0; v < g.size(); ++v)
    if (fireable(g, k, v)) hot.insert(v);

  FullPath path;
  std::int64_t steps = 0;
  while (!hot.empty()) {
    if (++steps > step_cap) throw cap_error("follow_path: step cap exceeded");
    int v = rule == ChoiceRule::ascending ? *hot.begin() : *hot.rbegin();
    path.steps.push_back(k);
    add_pd_vertex(g, k, v);
    detail::trace_step(trace, v, k);
    for (int w : g.adj[v]) {
      if (fireable(g, k, w))
        hot.insert(w);
      else
        hot.erase(w);
    }
    if (fireable(g, k, v))
      hot.insert(v);
    else
      hot.erase(v);
  }
  path.terminal = std::move(k);
  path.good = is_good_class(g, path.terminal);
  return path;
}

struct LauferState {
  std::int64_t index = 0;
  CharClass k;
  std::int64_t chi0 = 0;
  std::int64_t tau_partial = 0;
};

/* The Laufer sequence k(0) = k_can, k(1), ... of an almost rational graph
   with the central vertex distinguished.  Each advance bumps the central
   vertex once and then fires non-central vertices (smallest id first)
   until none is at the top of its box.  Partial sums of chi at the
   central vertex recover tau. */
class LauferWalk {
 public:
  explicit LauferWalk(const PlumbingGraph& g, std::int64_t step_cap = 0,
                      std::ostream* trace = nullptr)
      : g_(g), cap_(step_cap > 0 ? step_cap : default_step_cap(g)), trace_(trace) {
    for (int v : bad_vertices(g))
      if (v != g.central) throw input_error("LauferWalk: bad vertex away from the center");
    state_.index = 0;
    state_.k = canonical_class(g);
    state_.chi0 = chi(g, state_.k, g.central);
    state_.tau_partial = 0;
  }

  const LauferState& state() const { return state_; }
  std::int64_t bumps() const { return bumps_; }

  void advance() {
    state_.tau_partial += state_.chi0;
    bump(g_.central);
    while (!hot_.empty()) bump(*hot_.begin());
    state_.index += 1;
    state_.chi0 = chi(g_, state_.k, g_.central);
  }

 private:
  void bump(int v) {
    if (++bumps_ > cap_) throw cap_error("LauferWalk: step cap exceeded");
    add_pd_vertex(g_, state_.k, v);
    detail::trace_step(trace_, v, state_.k);
    refresh(v);
    for (int w : g_.adj[v]) refresh(w);
  }

  void refresh(int v) {
    if (v == g_.central) return;
    if (fireable(g_, state_.k, v))
      hot_.insert(v);
    else
      hot_.erase(v);
  }

  const PlumbingGraph& g_;
  std::int64_t cap_ = 0;
  std::ostream* trace_ = nullptr;
  LauferState state_;
  std::set<int> hot_;
  std::int64_t bumps_ = 0;
};

/* tau(0), ..., tau(count) read off the Laufer sequence. */
inline std::vector<std::int64_t> laufer_tau_values(const PlumbingGraph& g, std::int64_t count,
                                                   std::int64_t step_cap = 0) {
  LauferWalk walk(g, step_cap);
  std::vector<std::int64_t> tau{0};
  for (std::int64_t i = 0; i < count; ++i) {
    walk.advance();
    tau.push_back(walk.state().tau_partial);
  }
  return tau;
}

/* Central coordinate of I^{-1}(k - k_can)/2; for a class of the sequence
   this is its index. */
inline std::int64_t laufer_index(const PlumbingGraph& g, const CharClass& k) {
  auto base = canonical_class(g);
  std::vector<Rat> rhs(g.size());
  for (int v = 0; v < g.size(); ++v) rhs[v] = k.pairings[v] - base.pairings[v];
  auto u = solve_intersection(g, std::move(rhs));
  Rat idx = u[g.central] / 2;
  return to_int64(rat_to_int(idx, "laufer_index"));
}

/* The two characterized terminal classes of a family member: k_can with
   2(n-1) peeled off the long leg's single vertex and 2 off the end of one
   of the short legs.  Which short leg belongs to which class is validated
   by the terminal condition and the index positions; if the labels fail,
   the swapped labeling is tried and recorded. */
struct TerminalClasses {
  CharClass k1, k2;
  std::int64_t a = 0, b = 0;
  bool swapped = false;
};

inline TerminalClasses family_terminal_classes(const PlumbingGraph& g, std::int64_t n) {
  if (n < 1) throw input_error("family_terminal_classes: index must be >= 1");
  auto alpha = leg_multiplicities(g);
  if (!(alpha[0] < alpha[1] && alpha[1] < alpha[2]))
    throw input_error("family_terminal_classes: legs out of order");

  TerminalClasses out;
  out.a = alpha[0] * alpha[1] + (n - 1) * alpha[1] * alpha[2];
  out.b = alpha[0] * alpha[2] + (n - 1) * alpha[1] * alpha[2];

  auto build = [&](int end_vertex) {
    CharClass k = canonical_class(g);
    k.pairings[g.legs[0].front()] -= 2 * (n - 1);
    k.pairings[end_vertex] -= 2;
    return k;
  };
  auto valid = [&](const CharClass& k, std::int64_t want_index) {
    return is_terminal_class(g, k) && is_good_class(g, k) && laufer_index(g, k) == want_index;
  };

  for (bool swapped : {false, true}) {
    int end_r = g.legs[swapped ? 1 : 2].back();
    int end_q = g.legs[swapped ? 2 : 1].back();
    auto k1 = build(end_r);
    auto k2 = build(end_q);
    if (valid(k1, out.a) && valid(k2, out.b)) {
      out.k1 = std::move(k1);
      out.k2 = std::move(k2);
      out.swapped = swapped;
      return out;
    }
  }
  throw mismatch_error("family_terminal_classes: no labeling validates");
}

/* Exhaustive walk over every initial class; returns the pairs whose
   terminal lands in the good box. */
inline std::vector<std::pair<CharClass, CharClass>> good_initial_classes(
    const PlumbingGraph& g, int vertex_cap = 26, std::int64_t step_cap = 0) {
  if (g.size() > vertex_cap) throw cap_error("good_initial_classes: vertex cap exceeded");

  std::vector<std::pair<CharClass, CharClass>> found;
  CharClass k;
  k.pairings.resize(g.size());
  for (int v = 0; v < g.size(); ++v) k.pairings[v] = g.weight(v) + 2;

  while (true) {
    auto path = follow_path(g, k, ChoiceRule::ascending, step_cap);
    if (path.good) found.emplace_back(k, path.terminal);

    int v = 0;
    while (v < g.size()) {
      k.pairings[v] += 2;
      if (k.pairings[v] <= -g.weight(v)) break;
      k.pairings[v] = g.weight(v) + 2;
      ++v;
    }
    if (v == g.size()) break;
  }
  return found;
}

/* d-invariant through the full-path characterization: the best good
   terminal value (k^2 + |G|)/4, negated by the global orientation
   calibration.  Good terminals are collected from the Laufer sequence,
   which visits every one of them by index N0 + 1. */
inline Rat d_via_os(const PlumbingGraph& g, std::int64_t step_cap = 0) {
  if (bad_vertices(g).size() > 1) throw input_error("d_via_os: more than one bad vertex");
  std::int64_t n0 = recover_n0(g);

  std::optional<Rat> best;
  LauferWalk walk(g, step_cap);
  for (std::int64_t i = 0;; ++i) {
    const auto& k = walk.state().k;
    if (is_terminal_class(g, k) && is_good_class(g, k)) {
      Rat value = (pairing_square(g, k) + g.size()) / 4;
      if (!best || value > *best) best = value;
    }
    if (i >= n0 + 1) break;
    walk.advance();
  }
  return -*best;
}

}  // namespace gradedroots
