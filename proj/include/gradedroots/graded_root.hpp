#pragma once

#include "gradedroots/arith.hpp"
#include "gradedroots/semigroup.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

namespace gradedroots {

/* Piecewise linear tau profile, stored by its critical values
   min, max, min, ..., max, min (strictly alternating, odd length).
   anchor is the domain position of the first critical value. */
struct TauProfile {
  std::vector<std::int64_t> critical;
  std::int64_t anchor = 0;

  bool operator==(const TauProfile&) const = default;
};

inline void validate_profile(const TauProfile& p) {
  if (p.critical.empty() || p.critical.size() % 2 == 0)
    throw input_error("tau profile: critical list must have odd length");
  for (std::size_t i = 0; i + 1 < p.critical.size(); ++i) {
    bool rising = (i % 2 == 0);
    if (rising ? p.critical[i] >= p.critical[i + 1] : p.critical[i] <= p.critical[i + 1])
      throw input_error("tau profile: critical values must strictly alternate");
  }
}

/* Keep first, last and every direction change of a +-1 step path. */
inline std::vector<std::int64_t> compress_extrema(const std::vector<std::int64_t>& values) {
  std::vector<std::int64_t> out;
  const std::size_t n = values.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (i == 0 || i + 1 == n) {
      out.push_back(values[i]);
      continue;
    }
    auto before = values[i] - values[i - 1];
    auto after = values[i + 1] - values[i];
    if ((before > 0) != (after > 0)) out.push_back(values[i]);
  }
  return out;
}

/* tau(i) = sum of delta over positions < i, compressed to its critical
   values.  The first delta entry must be +1: zero always generates. */
inline TauProfile tau_from_delta(const DeltaSequence& d) {
  TauProfile p;
  if (d.entries.empty()) {
    p.critical = {0};
    return p;
  }
  if (d.entries.front().sign != 1)
    throw input_error("tau_from_delta: sequence must start with +1");
  std::vector<std::int64_t> values{0};
  std::int64_t c = 0;
  for (const auto& e : d.entries) {
    c += e.sign;
    values.push_back(c);
  }
  p.critical = compress_extrema(values);
  p.anchor = 0;
  validate_profile(p);
  return p;
}

/* Window profile: tau relative to its value just before the window,
   sampled just before each window entry.  The final entry is the lone
   semigroup element at the top of the window and is not stepped over. */
inline TauProfile window_profile(const DeltaSequence& w, std::int64_t a) {
  if (w.entries.empty()) throw input_error("window_profile: empty window");
  if (w.entries.front().sign != 1)
    throw input_error("window_profile: window must open with +1");
  if (w.entries.back().sign != 1)
    throw input_error("window_profile: window must close with +1");
  std::vector<std::int64_t> values{0};
  std::int64_t c = 0;
  for (std::size_t i = 0; i + 1 < w.entries.size(); ++i) {
    c += w.entries[i].sign;
    values.push_back(c);
  }
  TauProfile p;
  p.critical = compress_extrema(values);
  p.anchor = a;
  validate_profile(p);
  return p;
}

/* Shift a relative window profile so that its minimum sits at d/2. */
inline TauProfile level_window_profile(TauProfile p, std::int64_t d) {
  if (d % 2 != 0) throw input_error("level_window_profile: odd d value");
  std::int64_t lo = *std::min_element(p.critical.begin(), p.critical.end());
  std::int64_t shift = d / 2 - lo;
  for (auto& v : p.critical) v += shift;
  return p;
}

/* A graded root, presented by its leaf and join levels in word order. */
struct GradedRoot {
  TauProfile profile;
  std::vector<std::int64_t> leaves;
  std::vector<std::int64_t> joins;

  bool operator==(const GradedRoot&) const = default;
};

inline GradedRoot root_from_tau(const TauProfile& p) {
  validate_profile(p);
  GradedRoot r;
  r.profile = p;
  for (std::size_t i = 0; i < p.critical.size(); ++i)
    (i % 2 == 0 ? r.leaves : r.joins).push_back(p.critical[i]);
  return r;
}

/* Bar decomposition of a graded root.  Bars pair a dying leaf level with
   the join level that kills it; the surviving leaf spans the infinite
   tower.  Ties between equally deep leaves are resolved toward the
   leftmost global minimum: the leaf farther from it in word order dies,
   and the later one dies if the distances also tie. */
struct BarDecomposition {
  std::int64_t survivor_level = 0;
  std::size_t survivor_index = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> bars;

  bool operator==(const BarDecomposition&) const = default;
};

inline BarDecomposition persistence_bars(const GradedRoot& root) {
  const std::size_t leaf_count = root.leaves.size();

  std::size_t pivot = 0;
  for (std::size_t i = 0; i < leaf_count; ++i)
    if (root.leaves[i] < root.leaves[pivot]) pivot = i;

  std::vector<std::size_t> join_order(root.joins.size());
  std::iota(join_order.begin(), join_order.end(), 0);
  std::sort(join_order.begin(), join_order.end(), [&](std::size_t u, std::size_t v) {
    if (root.joins[u] != root.joins[v]) return root.joins[u] < root.joins[v];
    return u < v;
  });

  /* union-find over leaf slots; alive[] tracks each component's leaf */
  std::vector<std::size_t> parent(leaf_count), alive(leaf_count);
  std::iota(parent.begin(), parent.end(), 0);
  std::iota(alive.begin(), alive.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  auto distance = [&](std::size_t leaf) {
    std::size_t wa = 2 * leaf, wb = 2 * pivot;
    return wa > wb ? wa - wb : wb - wa;
  };

  BarDecomposition out;
  for (std::size_t j : join_order) {
    std::size_t left = find(j), right = find(j + 1);
    std::size_t la = alive[left], ra = alive[right];
    bool kill_left;
    if (root.leaves[la] != root.leaves[ra])
      kill_left = root.leaves[la] > root.leaves[ra];
    else if (distance(la) != distance(ra))
      kill_left = distance(la) > distance(ra);
    else
      kill_left = la > ra;
    std::size_t dying = kill_left ? la : ra;
    std::size_t keeper = kill_left ? ra : la;
    out.bars.emplace_back(root.leaves[dying], root.joins[j]);
    parent[left] = right;
    alive[right] = keeper;
  }
  std::sort(out.bars.begin(), out.bars.end());
  if (leaf_count > 0) {
    std::size_t top = alive[find(0)];
    out.survivor_index = 2 * top;
    out.survivor_level = root.leaves[top];
  }
  return out;
}

/* Grading conventions.  Levels map to gradings through g = -2 t + beta,
   with a flavor dependent offset. */
struct GradingCalibration {
  std::int64_t beta_plus = 0;
  std::int64_t beta_minus = 0;
};

inline GradingCalibration calibration_from_shift(std::int64_t sigma) {
  return {sigma, sigma - 2};
}

inline GradingCalibration conn_calibration() { return {0, -2}; }

enum class Flavor { plus, minus };

struct TorsionTower {
  std::int64_t bottom_grading = 0;
  std::int64_t length = 0;
  std::int64_t mult = 0;

  bool operator==(const TorsionTower&) const = default;
  auto operator<=>(const TorsionTower&) const = default;
};

/* One infinite tower plus finite towers, gradings already calibrated. */
struct FUModule {
  std::int64_t tower_bottom = 0;
  std::vector<TorsionTower> torsion;

  bool operator==(const FUModule&) const = default;
};

namespace detail {

inline FUModule assemble_module(std::int64_t survivor_level,
                                const std::vector<std::pair<std::int64_t, std::int64_t>>& bars,
                                Flavor flavor, const GradingCalibration& calib) {
  const std::int64_t beta = flavor == Flavor::plus ? calib.beta_plus : calib.beta_minus;
  FUModule m;
  m.tower_bottom = -2 * survivor_level + beta;
  std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> grouped;
  for (const auto& [t, j] : bars) ++grouped[{-2 * t + beta, j - t}];
  for (const auto& [key, mult] : grouped) m.torsion.push_back({key.first, key.second, mult});
  std::sort(m.torsion.begin(), m.torsion.end(), [](const TorsionTower& u, const TorsionTower& v) {
    if (u.bottom_grading != v.bottom_grading) return u.bottom_grading > v.bottom_grading;
    return u.length > v.length;
  });
  return m;
}

}  // namespace detail

inline FUModule fu_module(const GradedRoot& root, Flavor flavor,
                          const GradingCalibration& calib) {
  auto bars = persistence_bars(root);
  return detail::assemble_module(bars.survivor_level, bars.bars, flavor, calib);
}

/* Independent check of fu_module: build the sublevel class spaces of the
   root truncated at `depth` and read bar multiplicities off ranks of the
   containment maps over F2, with plain Gaussian elimination. */
namespace detail {

struct BitMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::uint64_t> data;  // row major, packed

  BitMatrix(std::size_t r, std::size_t c)
      : rows(r), cols(c), data(r * ((c + 63) / 64), 0) {}
  std::size_t stride() const { return (cols + 63) / 64; }
  void set(std::size_t r, std::size_t c) { data[r * stride() + (c >> 6)] |= 1ull << (c & 63); }
  bool get(std::size_t r, std::size_t c) const {
    return (data[r * stride() + (c >> 6)] >> (c & 63)) & 1;
  }
};

inline std::size_t f2_rank(BitMatrix m) {
  std::size_t rank = 0;
  const std::size_t words = m.stride();
  for (std::size_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows && !m.get(pivot, col)) ++pivot;
    if (pivot == m.rows) continue;
    for (std::size_t w = 0; w < words; ++w)
      std::swap(m.data[rank * words + w], m.data[pivot * words + w]);
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == rank || !m.get(r, col)) continue;
      for (std::size_t w = 0; w < words; ++w) m.data[r * words + w] ^= m.data[rank * words + w];
    }
    ++rank;
  }
  return rank;
}

inline BitMatrix f2_multiply(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows, b.cols);
  const std::size_t wb = b.stride();
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t k = 0; k < a.cols; ++k)
      if (a.get(r, k))
        for (std::size_t w = 0; w < wb; ++w) out.data[r * wb + w] ^= b.data[k * wb + w];
  return out;
}

}  // namespace detail

inline FUModule brute_module_oracle(const GradedRoot& root, Flavor flavor,
                                    const GradingCalibration& calib,
                                    std::int64_t depth = INT64_MIN) {
  const auto& word = root.profile.critical;
  const std::int64_t minw = *std::min_element(word.begin(), word.end());
  const std::int64_t maxw = *std::max_element(word.begin(), word.end());
  if (depth == INT64_MIN) depth = maxw + 2;
  if (depth < maxw + 2) throw input_error("brute_module_oracle: truncation too shallow");

  const std::size_t leaf_count = root.leaves.size();
  const std::int64_t base = minw;  // lowest level with any class
  const std::size_t levels = static_cast<std::size_t>(depth - base + 1);

  /* class index of each leaf at each level; -1 when absent */
  std::vector<std::vector<std::int64_t>> cls(levels, std::vector<std::int64_t>(leaf_count, -1));
  std::vector<std::size_t> dim(levels, 0);
  for (std::size_t li = 0; li < levels; ++li) {
    std::int64_t level = base + static_cast<std::int64_t>(li);
    std::int64_t current = -1;
    bool open = false;
    for (std::size_t leaf = 0; leaf < leaf_count; ++leaf) {
      bool breaks = leaf > 0 && root.joins[leaf - 1] > level;
      if (breaks) open = false;
      if (root.leaves[leaf] <= level) {
        if (!open) {
          ++current;
          open = true;
        }
        cls[li][leaf] = current;
      }
    }
    dim[li] = static_cast<std::size_t>(current + 1);
  }

  /* adjacent containment maps H_l -> H_{l-1} */
  std::vector<detail::BitMatrix> down;
  down.reserve(levels);
  down.emplace_back(0, 0);
  for (std::size_t li = 1; li < levels; ++li) {
    detail::BitMatrix m(dim[li - 1], dim[li]);
    for (std::size_t leaf = 0; leaf < leaf_count; ++leaf)
      if (cls[li - 1][leaf] >= 0) m.set(cls[li - 1][leaf], cls[li][leaf]);
    down.push_back(std::move(m));
  }

  /* R[a][b] = rank of H_b -> H_a for a <= b, indices relative to base */
  std::vector<std::vector<std::size_t>> rank_to(levels, std::vector<std::size_t>(levels, 0));
  for (std::size_t a = 0; a < levels; ++a) {
    detail::BitMatrix acc(dim[a], dim[a]);
    for (std::size_t i = 0; i < dim[a]; ++i) acc.set(i, i);
    rank_to[a][a] = detail::f2_rank(acc);
    for (std::size_t b = a + 1; b < levels; ++b) {
      acc = detail::f2_multiply(acc, down[b]);
      rank_to[a][b] = detail::f2_rank(acc);
    }
  }
  auto rank_at = [&](std::int64_t a, std::int64_t b) -> std::size_t {
    if (a < base || b < a) return 0;
    std::size_t ai = static_cast<std::size_t>(a - base);
    std::size_t bi = static_cast<std::size_t>(std::min(b, depth) - base);
    if (ai >= levels) return 0;
    return rank_to[ai][bi];
  };

  std::vector<std::pair<std::int64_t, std::int64_t>> bars;
  for (std::int64_t m = base; m <= maxw; ++m)
    for (std::int64_t top = m; top <= maxw; ++top) {
      std::int64_t mult =
          static_cast<std::int64_t>(rank_at(m, top)) - static_cast<std::int64_t>(rank_at(m, top + 1)) -
          static_cast<std::int64_t>(rank_at(m - 1, top)) +
          static_cast<std::int64_t>(rank_at(m - 1, top + 1));
      if (mult < 0) throw mismatch_error("brute_module_oracle: negative multiplicity");
      for (std::int64_t i = 0; i < mult; ++i) bars.emplace_back(m, top + 1);
    }

  return detail::assemble_module(minw, bars, flavor, calib);
}

}  // namespace gradedroots
