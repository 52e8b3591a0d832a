#pragma once

#include "gradedroots/arith.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <vector>

namespace gradedroots {

/* A Brieskorn homology sphere Sigma(p,q,r) together with the pairwise
   products that generate its delta sequence semigroup.  Multiplicities are
   kept sorted, so x < y < z. */
struct BrieskornTriple {
  std::int64_t p = 0, q = 0, r = 0;
  std::int64_t x = 0, y = 0, z = 0;
  std::int64_t n0 = 0;
};

inline BrieskornTriple brieskorn_triple(std::int64_t p, std::int64_t q, std::int64_t r) {
  std::array<std::int64_t, 3> a{p, q, r};
  std::sort(a.begin(), a.end());
  if (a[0] < 2) throw input_error("brieskorn_triple: multiplicities must be >= 2");
  if (!pairwise_coprime(a[0], a[1], a[2]))
    throw input_error("brieskorn_triple: multiplicities must be pairwise coprime");
  BrieskornTriple t;
  t.p = a[0];
  t.q = a[1];
  t.r = a[2];
  t.x = t.p * t.q;
  t.y = t.p * t.r;
  t.z = t.q * t.r;
  t.n0 = t.p * t.q * t.r - t.x - t.y - t.z;
  return t;
}

/* x + y = z + 1; exactly the condition under which the packed block
   notation below produces runs of consecutive integers. */
inline bool is_asl(const BrieskornTriple& t) { return t.x + t.y == t.z + 1; }

enum class Family { X, Y, Z };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::X: return "X";
    case Family::Y: return "Y";
    default: return "Z";
  }
}

inline BrieskornTriple family_triple(Family f, std::int64_t n) {
  if (n < 1) throw input_error("family_triple: index must be >= 1");
  switch (f) {
    case Family::X: return brieskorn_triple(2 * n + 1, 4 * n + 1, 4 * n + 3);
    case Family::Y: return brieskorn_triple(2 * n + 1, 3 * n + 2, 6 * n + 1);
    default: return brieskorn_triple(2 * n + 1, 3 * n + 1, 6 * n + 5);
  }
}

/* One member of an infinite family, with its distinguished window
   [a, b] = [x + (n-1) z, y + (n-1) z] inside [0, N0]. */
struct FamilyMember {
  Family family = Family::X;
  std::int64_t n = 0;
  BrieskornTriple t;
  std::int64_t a = 0;
  std::int64_t b = 0;
};

inline FamilyMember family_member(Family f, std::int64_t n) {
  FamilyMember m;
  m.family = f;
  m.n = n;
  m.t = family_triple(f, n);
  m.a = m.t.x + (n - 1) * m.t.z;
  m.b = m.t.y + (n - 1) * m.t.z;
  return m;
}

/* Membership sieve for the numerical semigroup <x, y, z> on [0, limit]. */
inline std::vector<bool> semigroup_sieve(const BrieskornTriple& t, std::int64_t limit,
                                         std::int64_t max_limit = 20'000'000) {
  if (limit > max_limit) throw cap_error("semigroup_sieve: limit exceeds cap");
  std::vector<bool> in(limit < 0 ? 0 : limit + 1, false);
  if (limit >= 0) in[0] = true;
  for (std::int64_t i = 1; i <= limit; ++i) {
    bool hit = (i >= t.x && in[i - t.x]) || (i >= t.y && in[i - t.y]) ||
               (i >= t.z && in[i - t.z]);
    in[i] = hit;
  }
  return in;
}

struct DeltaEntry {
  std::int64_t position = 0;
  int sign = 0;

  bool operator==(const DeltaEntry&) const = default;
};

struct DeltaSequence {
  std::vector<DeltaEntry> entries;

  bool operator==(const DeltaSequence&) const = default;
};

/* Full delta sequence on [0, N0]: +1 at semigroup elements, -1 at their
   reflections N0 - s.  The two sets never meet for a valid triple; an
   overlap means the computation itself went wrong. */
inline DeltaSequence delta_sequence(const BrieskornTriple& t,
                                    std::int64_t max_n0 = 20'000'000) {
  if (t.n0 > max_n0) throw cap_error("delta_sequence: N0 exceeds cap");
  DeltaSequence d;
  if (t.n0 < 0) return d;
  auto in = semigroup_sieve(t, t.n0, max_n0);
  std::vector<std::int8_t> sign(t.n0 + 1, 0);
  for (std::int64_t i = 0; i <= t.n0; ++i)
    if (in[i]) sign[i] += 1;
  for (std::int64_t i = 0; i <= t.n0; ++i)
    if (in[i]) {
      if (sign[t.n0 - i] != 0)
        throw mismatch_error("delta_sequence: element and reflection overlap");
      sign[t.n0 - i] -= 1;
    }
  for (std::int64_t i = 0; i <= t.n0; ++i)
    if (sign[i] != 0) d.entries.push_back({i, sign[i]});
  return d;
}

/* Signed run lengths of the entry signs, e.g. +,-,-,+ -> 1,-2,1. */
inline std::vector<std::int64_t> reduced_runs(const DeltaSequence& d) {
  std::vector<std::int64_t> runs;
  for (const auto& e : d.entries) {
    if (!runs.empty() && (runs.back() > 0) == (e.sign > 0))
      runs.back() += e.sign;
    else
      runs.push_back(e.sign);
  }
  return runs;
}

inline DeltaSequence window_from_full(const DeltaSequence& d, std::int64_t a, std::int64_t b) {
  DeltaSequence w;
  for (const auto& e : d.entries)
    if (e.position >= a && e.position <= b) w.entries.push_back(e);
  return w;
}

/* Packed notation [f x + g y + h z]: since x + y - z = 1 on the families,
   raising f and g while lowering h steps the value by one, so the block
   expands to the h+1 consecutive integers starting at f x + g y + h z. */
struct PackedSequence {
  std::int64_t f = 0, g = 0, h = 0;
  bool complemented = false;
};

inline std::vector<std::int64_t> expand(const PackedSequence& s, const BrieskornTriple& t) {
  if (!is_asl(t)) throw input_error("expand: packed blocks need x + y = z + 1");
  if (s.h < 0) throw input_error("expand: negative block length");
  std::int64_t first = s.f * t.x + s.g * t.y + s.h * t.z;
  std::vector<std::int64_t> out(s.h + 1);
  for (std::int64_t j = 0; j <= s.h; ++j)
    out[j] = s.complemented ? t.n0 - first - (s.h - j) : first + j;
  return out;
}

/* Positive generator blocks of the window content, before reflections and
   before the lone top element b. */
inline std::vector<PackedSequence> family_window_blocks(Family f, std::int64_t n) {
  std::vector<PackedSequence> blocks;
  switch (f) {
    case Family::X:
      blocks.push_back({1, 0, n - 1, false});
      break;
    case Family::Y:
      for (std::int64_t k = 0; k <= n - 1; ++k) blocks.push_back({1 + 3 * k, 0, n - 1 - k, false});
      for (std::int64_t l = 1; 2 * l <= n - 1; ++l)
        blocks.push_back({0, 1 + 3 * l, n - 1 - 2 * l, false});
      break;
    default:
      blocks.push_back({1, 0, n - 1, false});
      for (std::int64_t k = 0; k <= n - 1; ++k) blocks.push_back({2 + 3 * k, 0, n - 1 - k, false});
      for (std::int64_t l = 1; 2 * l <= n; ++l)
        blocks.push_back({0, -1 + 3 * l, n - 2 * l, false});
      break;
  }
  return blocks;
}

/* Window delta sequence assembled from the closed form generator blocks:
   each block contributes +1 entries, its reflection off N0 contributes -1
   entries, and the single element at b closes the window. */
inline DeltaSequence family_window(const FamilyMember& m) {
  std::vector<DeltaEntry> entries;
  for (const auto& block : family_window_blocks(m.family, m.n)) {
    for (std::int64_t v : expand(block, m.t)) {
      entries.push_back({v, +1});
      entries.push_back({m.t.n0 - v, -1});
    }
  }
  entries.push_back({m.b, +1});
  std::sort(entries.begin(), entries.end(),
            [](const DeltaEntry& u, const DeltaEntry& v) { return u.position < v.position; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].position < m.a || entries[i].position > m.b)
      throw mismatch_error("family_window: block leaves the window");
    if (i > 0 && entries[i].position == entries[i - 1].position)
      throw mismatch_error("family_window: blocks overlap");
  }
  DeltaSequence d;
  d.entries = std::move(entries);
  return d;
}

/* Reduced window delta in closed form, one branch per family and parity.
   The small indices n <= 2 fall out of the same loops with empty ranges. */
inline std::vector<std::int64_t> window_closed_form(Family f, std::int64_t n) {
  if (n < 1) throw input_error("window_closed_form: index must be >= 1");
  std::vector<std::int64_t> runs;
  auto push = [&runs](std::int64_t v) { runs.push_back(v); };
  switch (f) {
    case Family::X:
      push(n);
      push(-n);
      push(1);
      break;
    case Family::Y:
      push(n);
      if (n % 2 == 1) {
        for (std::int64_t j = n - 1; j >= (n + 1) / 2; --j) {
          push(-j);
          push(j);
        }
        for (std::int64_t j = (n + 1) / 2; j <= n - 1; ++j) {
          push(-j);
          push(j);
        }
      } else {
        for (std::int64_t j = n - 1; j >= (n + 2) / 2; --j) {
          push(-j);
          push(j);
        }
        push(-n / 2);
        push(n / 2);
        for (std::int64_t j = (n + 2) / 2; j <= n - 1; ++j) {
          push(-j);
          push(j);
        }
      }
      push(-n);
      push(1);
      break;
    default:
      push(n);
      push(-n);
      if (n % 2 == 1) {
        for (std::int64_t l = 1; l <= (n - 1) / 2; ++l) {
          push(n + 1 - l);
          push(-(n - l));
        }
        push((n + 1) / 2);
        for (std::int64_t l = (n - 1) / 2; l >= 1; --l) {
          push(-(n + 1 - l));
          push(n + 1 - l);
        }
      } else {
        for (std::int64_t l = 1; l <= (n - 2) / 2; ++l) {
          push(n + 1 - l);
          push(-(n - l));
        }
        push((n + 2) / 2);
        for (std::int64_t l = (n - 2) / 2; l >= 0; --l) {
          push(-(n - l));
          push(n - l);
        }
      }
      push(-n);
      push(1);
      break;
  }
  return runs;
}

}  // namespace gradedroots
