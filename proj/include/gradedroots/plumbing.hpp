#pragma once

#include "gradedroots/arith.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <deque>
#include <utility>
#include <vector>

namespace gradedroots {

struct Vertex {
  int id = 0;
  std::int64_t weight = 0;
};

/* Star-shaped plumbing tree of a Seifert fibered homology sphere:
   one central vertex and three chains ("legs").  Legs are stored in
   canonical order (multiplicities ascending), central-adjacent end first. */
struct PlumbingGraph {
  std::vector<Vertex> vertices;
  std::vector<std::pair<int, int>> edges;
  int central = 0;
  std::array<std::vector<int>, 3> legs;
  std::vector<std::vector<int>> adj;

  int size() const { return static_cast<int>(vertices.size()); }
  std::int64_t weight(int v) const { return vertices[v].weight; }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
};

inline void rebuild_adjacency(PlumbingGraph& g) {
  g.adj.assign(g.vertices.size(), {});
  for (auto [a, b] : g.edges) {
    g.adj[a].push_back(b);
    g.adj[b].push_back(a);
  }
  for (auto& row : g.adj) std::sort(row.begin(), row.end());
}

/* Characteristic cohomology class, stored by its pairings <k, v_j>. */
struct CharClass {
  std::vector<std::int64_t> pairings;

  bool operator==(const CharClass&) const = default;
  auto operator<=>(const CharClass&) const = default;
};

struct LatticeVector {
  std::vector<std::int64_t> coefficients;
};

/* Coefficients of the negative continued fraction a/b = [t1,t2,...],
   t_i >= 2, a > b >= 1. */
inline std::vector<std::int64_t> negative_continued_fraction(std::int64_t a, std::int64_t b) {
  if (a <= b || b < 1) throw input_error("negative_continued_fraction: need a > b >= 1");
  std::vector<std::int64_t> out;
  while (b > 0) {
    std::int64_t t = (a + b - 1) / b;
    out.push_back(t);
    std::int64_t next_b = t * b - a;
    a = b;
    b = next_b;
  }
  return out;
}

/* Canonical negative definite plumbing of Sigma(p,q,r).  The central
   weight b0 and the leg data beta_i solve
     b0*pqr + sum_i beta_i * (pqr/alpha_i) = -1,  0 < beta_i < alpha_i,
   and each leg is the negative continued fraction of alpha_i/beta_i. */
inline PlumbingGraph build_brieskorn_graph(std::int64_t p, std::int64_t q, std::int64_t r) {
  std::array<std::int64_t, 3> alpha{p, q, r};
  std::sort(alpha.begin(), alpha.end());
  if (alpha[0] < 2) throw input_error("build_brieskorn_graph: multiplicities must be >= 2");
  if (!pairwise_coprime(alpha[0], alpha[1], alpha[2]))
    throw input_error("build_brieskorn_graph: multiplicities must be pairwise coprime");

  const std::int64_t P = alpha[0] * alpha[1] * alpha[2];
  std::array<std::int64_t, 3> beta{};
  std::int64_t numer = -1;
  for (int i = 0; i < 3; ++i) {
    const std::int64_t cofactor = P / alpha[i];
    /* beta_i * cofactor == -1 (mod alpha_i) */
    beta[i] = (alpha[i] - mod_inverse(cofactor % alpha[i], alpha[i])) % alpha[i];
    if (beta[i] == 0) throw input_error("build_brieskorn_graph: degenerate leg");
    numer -= beta[i] * cofactor;
  }
  if (numer % P != 0) throw input_error("build_brieskorn_graph: central weight is not integral");
  const std::int64_t b0 = numer / P;

  PlumbingGraph g;
  g.central = 0;
  g.vertices.push_back({0, b0});
  for (int i = 0; i < 3; ++i) {
    auto chain = negative_continued_fraction(alpha[i], beta[i]);
    int prev = g.central;
    for (std::int64_t t : chain) {
      int id = g.size();
      g.vertices.push_back({id, -t});
      g.edges.emplace_back(prev, id);
      g.legs[i].push_back(id);
      prev = id;
    }
  }
  rebuild_adjacency(g);
  return g;
}

/* Intersection matrix as dense exact integers. */
inline std::vector<std::vector<Int>> intersection_matrix(const PlumbingGraph& g) {
  const int n = g.size();
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
  for (int v = 0; v < n; ++v) m[v][v] = g.weight(v);
  for (auto [a, b] : g.edges) {
    m[a][b] = 1;
    m[b][a] = 1;
  }
  return m;
}

/* Fraction-free determinant (Bareiss); also yields the leading principal
   minors, which the definiteness check needs. */
inline Int bareiss_determinant(std::vector<std::vector<Int>> m,
                               std::vector<Int>* leading_minors = nullptr) {
  const int n = static_cast<int>(m.size());
  if (leading_minors) leading_minors->clear();
  if (n == 0) return 1;
  Int prev = 1;
  Int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (m[i][k] != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
    if (leading_minors) leading_minors->push_back(sign * prev);
  }
  if (leading_minors) leading_minors->push_back(sign * m[n - 1][n - 1]);
  return sign * m[n - 1][n - 1];
}

/* Determinant of the intersection form restricted to an induced sub-forest,
   by exact leaf elimination: eliminating a leaf v with parent u replaces
   w_u by w_u - 1/w'_v; the determinant is the product of the pivots. */
inline Int induced_forest_determinant(const PlumbingGraph& g, const std::vector<bool>& keep) {
  const int n = g.size();
  std::vector<int> parent(n, -1);
  std::vector<bool> seen(n, false);
  Rat det = 1;
  for (int root = 0; root < n; ++root) {
    if (!keep[root] || seen[root]) continue;
    std::deque<int> queue{root};
    seen[root] = true;
    std::vector<int> component;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      component.push_back(v);
      for (int w : g.adj[v])
        if (keep[w] && !seen[w]) {
          seen[w] = true;
          parent[w] = v;
          queue.push_back(w);
        }
    }
    std::vector<Rat> value(n, 0);
    for (auto it = component.rbegin(); it != component.rend(); ++it) {
      int v = *it;
      Rat val = g.weight(v);
      for (int w : g.adj[v])
        if (keep[w] && parent[w] == v) val -= Rat(1) / value[w];
      if (val == 0) throw input_error("induced_forest_determinant: singular pivot");
      value[v] = val;
      det *= val;
    }
  }
  return rat_to_int(det, "induced_forest_determinant");
}

inline Int graph_determinant(const PlumbingGraph& g) {
  return induced_forest_determinant(g, std::vector<bool>(g.size(), true));
}

struct IntersectionData {
  std::vector<std::vector<Int>> matrix;
  Int det;
  std::vector<std::vector<Rat>> inverse;
};

/* Exact rational linear solve I * u = rhs (Gaussian elimination). */
inline std::vector<Rat> solve_intersection(const PlumbingGraph& g, std::vector<Rat> rhs) {
  const int n = g.size();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n, 0));
  for (int v = 0; v < n; ++v) a[v][v] = g.weight(v);
  for (auto [u, w] : g.edges) {
    a[u][w] = 1;
    a[w][u] = 1;
  }
  for (int k = 0; k < n; ++k) {
    int pivot = -1;
    for (int i = k; i < n; ++i)
      if (a[i][k] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw input_error("solve_intersection: singular matrix");
    std::swap(a[k], a[pivot]);
    std::swap(rhs[k], rhs[pivot]);
    for (int i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rat f = a[i][k] / a[k][k];
      for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
      rhs[i] -= f * rhs[k];
    }
  }
  std::vector<Rat> u(n);
  for (int k = n - 1; k >= 0; --k) {
    Rat acc = rhs[k];
    for (int j = k + 1; j < n; ++j) acc -= a[k][j] * u[j];
    u[k] = acc / a[k][k];
  }
  return u;
}

inline IntersectionData intersection_data(const PlumbingGraph& g) {
  IntersectionData data;
  data.matrix = intersection_matrix(g);
  data.det = bareiss_determinant(data.matrix);
  if (data.det == 0) throw input_error("intersection_data: singular matrix");
  const int n = g.size();
  data.inverse.assign(n, std::vector<Rat>(n, 0));
  for (int col = 0; col < n; ++col) {
    std::vector<Rat> e(n, 0);
    e[col] = 1;
    auto u = solve_intersection(g, std::move(e));
    for (int row = 0; row < n; ++row) data.inverse[row][col] = u[row];
  }
  return data;
}

/* (I^{-1})_{vw} for a tree equals -|det(I restricted to the complement of
   the v..w path)| / |det I|; strictly negative for negative definite I. */
inline Rat inverse_entry_via_path(const PlumbingGraph& g, int v, int w) {
  const int n = g.size();
  std::vector<int> parent(n, -2);
  std::deque<int> queue{v};
  parent[v] = -1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == w) break;
    for (int x : g.adj[u])
      if (parent[x] == -2) {
        parent[x] = u;
        queue.push_back(x);
      }
  }
  if (parent[w] == -2) throw input_error("inverse_entry_via_path: vertices not connected");
  std::vector<bool> keep(n, true);
  for (int u = w; u != -1; u = parent[u]) keep[u] = false;
  Int complement = induced_forest_determinant(g, keep);
  Int full = graph_determinant(g);
  Rat value = Rat(complement) / Rat(full);
  if (value < 0) value = -value;
  return -value;
}

/* Canonical characteristic class: <k_can, v_j> = -e_j - 2. */
inline CharClass canonical_class(const PlumbingGraph& g) {
  CharClass k;
  k.pairings.resize(g.size());
  for (int v = 0; v < g.size(); ++v) k.pairings[v] = -g.weight(v) - 2;
  return k;
}

/* chi_k(v) = -(<k,v> + e(v)) / 2 for a single basis vector. */
inline std::int64_t chi(const PlumbingGraph& g, const CharClass& k, int v) {
  std::int64_t s = k.pairings[v] + g.weight(v);
  if (s % 2 != 0) throw input_error("chi: class is not characteristic at vertex");
  return -s / 2;
}

/* chi_k(x) = -(<k,x> + (x,x)) / 2 for a general lattice vector. */
inline Int chi(const PlumbingGraph& g, const CharClass& k, const LatticeVector& x) {
  Int kx = 0;
  for (int v = 0; v < g.size(); ++v) kx += Int(k.pairings[v]) * x.coefficients[v];
  Int xx = 0;
  for (int v = 0; v < g.size(); ++v) xx += Int(g.weight(v)) * x.coefficients[v] * x.coefficients[v];
  for (auto [a, b] : g.edges) xx += Int(2) * x.coefficients[a] * x.coefficients[b];
  Int s = kx + xx;
  if (s % 2 != 0) throw input_error("chi: class is not characteristic");
  return -s / 2;
}

/* k + 2 PD(x): pairings gain 2 * (I x). */
inline CharClass add_pd(const PlumbingGraph& g, CharClass k, const LatticeVector& x) {
  for (int v = 0; v < g.size(); ++v) {
    std::int64_t ix = g.weight(v) * x.coefficients[v];
    for (int w : g.adj[v]) ix += x.coefficients[w];
    k.pairings[v] += 2 * ix;
  }
  return k;
}

/* Fast path used by the walks: k + 2 PD(v) for one vertex. */
inline void add_pd_vertex(const PlumbingGraph& g, CharClass& k, int v) {
  k.pairings[v] += 2 * g.weight(v);
  for (int w : g.adj[v]) k.pairings[w] += 2;
}

/* Self-pairing k^2 = c^T I^{-1} c of a class given by its pairings c. */
inline Rat pairing_square(const PlumbingGraph& g, const CharClass& k) {
  std::vector<Rat> rhs(g.size());
  for (int v = 0; v < g.size(); ++v) rhs[v] = k.pairings[v];
  auto u = solve_intersection(g, std::move(rhs));
  Rat sq = 0;
  for (int v = 0; v < g.size(); ++v) sq += Rat(k.pairings[v]) * u[v];
  return sq;
}

/* (k_can^2 + |G|) / 4, exact. */
inline Rat shift_constant(const PlumbingGraph& g) {
  return (pairing_square(g, canonical_class(g)) + g.size()) / 4;
}

/* Vertices with e(v) > -deg(v). */
inline std::vector<int> bad_vertices(const PlumbingGraph& g) {
  std::vector<int> bad;
  for (int v = 0; v < g.size(); ++v)
    if (g.weight(v) > -static_cast<std::int64_t>(g.degree(v))) bad.push_back(v);
  return bad;
}

inline bool is_negative_definite(const PlumbingGraph& g) {
  std::vector<Int> minors;
  bareiss_determinant(intersection_matrix(g), &minors);
  for (std::size_t k = 0; k < minors.size(); ++k) {
    bool want_negative = (k % 2 == 0);
    if (want_negative ? minors[k] >= 0 : minors[k] <= 0) return false;
  }
  return true;
}

}  // namespace gradedroots
