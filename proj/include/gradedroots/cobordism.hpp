#pragma once

#include "gradedroots/arith.hpp"
#include "gradedroots/monotone.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace gradedroots {

/* Formal signed sum of standard complexes, tracking only the parameter
 * multiset: terms (sign, m) stand for sign * C(-, m), m >= 1.  Zero
 * parameters are dropped and exact sign cancellations removed. */
struct StandardComplexSum {
  std::map<std::int64_t, std::int64_t> counts;  // parameter -> signed count
  bool operator==(const StandardComplexSum&) const = default;
};

inline void add_term(StandardComplexSum& sum, std::int64_t parameter,
                     std::int64_t sign) {
  if (parameter == 0) return;
  if (parameter < 0) throw input_error("add_term: negative parameter");
  auto it = sum.counts.find(parameter);
  if (it == sum.counts.end()) {
    sum.counts.emplace(parameter, sign);
    return;
  }
  it->second += sign;
  if (it->second == 0) sum.counts.erase(it);
}

/* Difference decomposition of a staircase: a positive term of parameter
 * s_i - t_i for each pair and a negative one of parameter s_i - t_{i+1}
 * between consecutive pairs. */
inline StandardComplexSum to_standard_complex(const MonotoneRoot& mono) {
  StandardComplexSum sum;
  auto n = mono.pairs.size();
  for (std::size_t i = 0; i < n; ++i) {
    add_term(sum, mono.pairs[i].s - mono.pairs[i].t, +1);
    if (i + 1 < n) add_term(sum, mono.pairs[i].s - mono.pairs[i + 1].t, -1);
  }
  return sum;
}

/* Signed count of terms carrying parameter k. */
inline std::int64_t phi(std::int64_t k, const StandardComplexSum& sum) {
  if (k < 1) throw input_error("phi: k must be positive");
  auto it = sum.counts.find(k);
  return it == sum.counts.end() ? 0 : it->second;
}

inline StandardComplexSum family_complex(Family f, std::int64_t n) {
  auto t = family_triple(f, n);
  auto g = build_brieskorn_graph(t.p, t.q, t.r);
  return to_standard_complex(analyze_root(t, g).mono);
}

/* phi values of one family member as a sparse map. */
inline std::map<std::int64_t, std::int64_t> phi_vector(Family f,
                                                       std::int64_t n) {
  return family_complex(f, n).counts;
}

/* Fraction-free determinant-based rank of an integer matrix. */
inline std::int64_t integer_rank(std::vector<std::vector<Int>> m) {
  if (m.empty()) return 0;
  std::size_t rows = m.size(), cols = m.front().size();
  std::size_t rank = 0;
  Int previous = 1;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t row = rank + 1; row < rows; ++row) {
      for (std::size_t j = col + 1; j < cols; ++j)
        m[row][j] = (m[rank][col] * m[row][j] - m[row][col] * m[rank][j]) /
                    previous;
      m[row][col] = 0;
    }
    previous = m[rank][col];
    ++rank;
  }
  return static_cast<std::int64_t>(rank);
}

struct IndependenceCertificate {
  std::vector<std::vector<std::int64_t>> matrix;  // entry [k-1][n-1] = phi_k
  std::int64_t rank = 0;
};

inline IndependenceCertificate independence_matrix(Family f, std::int64_t n_max) {
  if (n_max < 1) throw input_error("independence_matrix: need N >= 1");
  IndependenceCertificate cert;
  cert.matrix.assign(n_max, std::vector<std::int64_t>(n_max, 0));
  for (std::int64_t n = 1; n <= n_max; ++n)
    for (const auto& [k, count] : phi_vector(f, n))
      if (k <= n_max) cert.matrix[k - 1][n - 1] = count;
  std::vector<std::vector<Int>> exact(n_max, std::vector<Int>(n_max));
  for (std::int64_t i = 0; i < n_max; ++i)
    for (std::int64_t j = 0; j < n_max; ++j)
      exact[i][j] = cert.matrix[i][j];
  cert.rank = integer_rank(std::move(exact));
  return cert;
}

/* Case formulas for phi from the family staircase shapes. */
inline std::map<std::int64_t, std::int64_t> reference_phi(Family f,
                                                          std::int64_t n) {
  std::map<std::int64_t, std::int64_t> out;
  switch (f) {
    case Family::X:
      out[n] = 1;
      break;
    case Family::Y:
      out[n] = 1;
      if (n % 2 == 0) out[n / 2] = -1;
      break;
    case Family::Z:
      if (n == 1) break;
      out[n] = 1;
      if (n % 2 == 1) out[(n + 1) / 2] = -1;
      break;
  }
  return out;
}

}  // namespace gradedroots
