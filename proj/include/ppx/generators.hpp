#pragma once

#include <random>
#include <string>
#include <map>
#include <vector>

#include "ppx/freecat.hpp"
#include "ppx/globular.hpp"

namespace ppx::rnd {

// Grows a pool of arrows by composing random composable pairs.
inline std::vector<Arrow> random_arrows(const FreeCat& fc, std::mt19937& rng, int rounds, int max_cells) {
  std::vector<Arrow> pool;
  for (int i = 0; i < fc.polygraph().size(); ++i) pool.push_back(fc.cell(i));
  for (int r = 0; r < rounds; ++r) {
    const Arrow a = pool[rng() % pool.size()];
    const int d = arrow_dim(a);
    if (d == 0) continue;
    const int k = static_cast<int>(rng() % d);
    const bool after = rng() % 2;
    const Arrow ba = boundary(a, k, after ? Sign::plus : Sign::minus);
    std::vector<int> cand;
    for (int i = 0; i < static_cast<int>(pool.size()); ++i)
      if (arrow_dim(pool[i]) > k && boundary(pool[i], k, after ? Sign::minus : Sign::plus) == ba) cand.push_back(i);
    if (cand.empty()) continue;
    const Arrow& b = pool[cand[rng() % cand.size()]];
    Arrow c = after ? compose(a, b, k) : compose(b, a, k);
    if (static_cast<int>(c.label.size()) <= max_cells) pool.push_back(std::move(c));
  }
  return pool;
}

// Random positive polygraph built dimension by dimension from parallel
// pairs of random arrows.
inline Polygraph random_polygraph(std::mt19937& rng, int max_dim, int per_dim) {
  Polygraph p;
  const int n0 = 2 + static_cast<int>(rng() % 3);
  for (int i = 0; i < n0; ++i) p.add(0, nullptr, nullptr, "p" + std::to_string(i));
  for (int i = 0; i < per_dim; ++i) {
    int a = static_cast<int>(rng() % n0), b = static_cast<int>(rng() % n0);
    if (rng() % 4 != 0 && a == b) b = (a + 1) % n0;
    p.add(1, gen(a), gen(b), "a" + std::to_string(i));
  }
  for (int d = 2; d <= max_dim; ++d) {
    FreeCat fc(p);
    auto pool = random_arrows(fc, rng, 60, 10);
    std::vector<Arrow> cands;
    for (auto& a : pool)
      if (arrow_dim(a) == d - 1) cands.push_back(a);
    int added = 0;
    for (int tries = 0; tries < 200 && added < per_dim && !cands.empty(); ++tries) {
      const Arrow& s = cands[rng() % cands.size()];
      const Arrow& t = cands[rng() % cands.size()];
      if (d >= 2 && !(boundary(s, d - 2, Sign::minus) == boundary(t, d - 2, Sign::minus) &&
                      boundary(s, d - 2, Sign::plus) == boundary(t, d - 2, Sign::plus)))
        continue;
      p.add(d, term_of(s), term_of(t), std::string(1, static_cast<char>('a' + d - 1)) + std::to_string(added));
      ++added;
    }
  }
  return p;
}

// Random syntactic terms: composites of random composable pairs, kept as
// written (no normalisation), paired with their arrows.
struct RandomTerm {
  Term term;
  Arrow arrow;
};

inline std::vector<RandomTerm> random_terms(const FreeCat& fc, std::mt19937& rng, int rounds, int max_cells) {
  std::vector<RandomTerm> pool;
  for (int i = 0; i < fc.polygraph().size(); ++i) pool.push_back({gen(i), fc.cell(i)});
  const std::size_t base = pool.size();
  for (int r = 0; r < rounds; ++r) {
    const RandomTerm a = pool[rng() % pool.size()];
    const int d = arrow_dim(a.arrow);
    if (d == 0) continue;
    const int k = static_cast<int>(rng() % d);
    const bool after = rng() % 2;
    const Arrow ba = boundary(a.arrow, k, after ? Sign::plus : Sign::minus);
    std::vector<int> cand;
    for (int i = 0; i < static_cast<int>(pool.size()); ++i)
      if (arrow_dim(pool[i].arrow) > k && boundary(pool[i].arrow, k, after ? Sign::minus : Sign::plus) == ba)
        cand.push_back(i);
    if (cand.empty()) continue;
    const RandomTerm b = pool[cand[rng() % cand.size()]];
    RandomTerm c = after ? RandomTerm{comp(a.term, b.term, k), compose(a.arrow, b.arrow, k)}
                         : RandomTerm{comp(b.term, a.term, k), compose(b.arrow, a.arrow, k)};
    if (static_cast<int>(c.arrow.label.size()) <= max_cells) pool.push_back(std::move(c));
  }
  return {pool.begin() + static_cast<long>(base), pool.end()};
}

// Random unimodular matrix with its inverse, as a product of elementary
// operations.
inline std::pair<Matrix, Matrix> random_unimodular(std::mt19937& rng, int n) {
  Matrix u(n, std::vector<Int>(n, 0)), v = u;
  for (int i = 0; i < n; ++i) u[i][i] = v[i][i] = 1;
  if (n < 2) return {u, v};
  for (int step = 0; step < 3 * n; ++step) {
    const int i = static_cast<int>(rng() % n);
    int j = static_cast<int>(rng() % n);
    if (i == j) j = (j + 1) % n;
    const int c = static_cast<int>(rng() % 5) - 2;
    if (c == 0) continue;
    // u <- E u with E = 1 + c e_ij, v <- v E^-1.
    for (int col = 0; col < n; ++col) u[i][col] += c * u[j][col];
    for (int row = 0; row < n; ++row) v[row][j] -= c * v[row][i];
  }
  return {u, v};
}

inline Matrix mat_mul(const Matrix& a, const Matrix& b, int rows, int inner, int cols) {
  Matrix out(rows, std::vector<Int>(cols, 0));
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < inner; ++k)
      if (a[i][k] != 0)
        for (int j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
  return out;
}

// Augmented chain complex of grades <= 4 and total rank <= 6: a sum of
// elementary pieces conjugated by random unimodular matrices.
inline ChainComplex random_complex(std::mt19937& rng) {
  const int top = static_cast<int>(rng() % 5);
  std::vector<int> rank(top + 1, 0);
  struct Piece {
    int deg;
    int mult;  // 0 for a lone generator
  };
  std::vector<Piece> pieces{{0, 0}, {top, 0}};
  int total = 2;
  const int want = 2 + static_cast<int>(rng() % 5);
  while (total < want) {
    const int deg = static_cast<int>(rng() % (top + 1));
    if (deg >= 1 && total + 2 <= 6 && rng() % 2) {
      pieces.push_back({deg, 1 + static_cast<int>(rng() % 3)});
      total += 2;
    } else {
      pieces.push_back({deg, 0});
      total += 1;
    }
  }
  std::vector<std::vector<int>> slot(pieces.size());
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    slot[p].push_back(rank[pieces[p].deg]++);
    if (pieces[p].mult) slot[p].push_back(rank[pieces[p].deg - 1]++);
  }
  ChainComplex k;
  k.rank = rank;
  k.d.resize(top + 1);
  for (int n = 1; n <= top; ++n) k.d[n].assign(rank[n - 1], std::vector<Int>(rank[n], 0));
  k.augmentation.assign(rank[0], 0);
  for (std::size_t p = 0; p < pieces.size(); ++p) {
    if (pieces[p].mult) k.d[pieces[p].deg][slot[p][1]][slot[p][0]] = pieces[p].mult;
    else if (pieces[p].deg == 0) k.augmentation[slot[p][0]] = 1;
  }
  std::vector<std::pair<Matrix, Matrix>> u;
  for (int n = 0; n <= top; ++n) u.push_back(random_unimodular(rng, rank[n]));
  for (int n = 1; n <= top; ++n)
    k.d[n] = mat_mul(mat_mul(u[n - 1].first, k.d[n], rank[n - 1], rank[n - 1], rank[n]), u[n].second, rank[n - 1], rank[n],
                     rank[n]);
  std::vector<Int> e(rank[0], 0);
  for (int j = 0; j < rank[0]; ++j)
    for (int i = 0; i < rank[0]; ++i) e[j] += k.augmentation[i] * u[0].second[i][j];
  k.augmentation = e;
  return k;
}

// Globular group of a random complex, in a random graded basis
// b'_j = b_j + (lower grade terms).
inline GlobularGroup random_globular(std::mt19937& rng) {
  const GlobularGroup g = chain_to_globular(random_complex(rng));
  const int n = g.size();
  std::vector<LinComb> nb(n);  // new basis element in old coordinates
  for (int j = 0; j < n; ++j) {
    nb[j] = LinComb::unit(j);
    for (int i = 0; i < n; ++i)
      if (g.grade[i] < g.grade[j] && rng() % 3 == 0) nb[j].add(i, static_cast<int>(rng() % 5) - 2);
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.grade[a] > g.grade[b]; });
  auto to_new = [&](LinComb v) {
    LinComb out;
    for (int j : order) {
      const Int c = v[j];
      if (c == 0) continue;
      out.add(j, c);
      v.axpy(-c, nb[j]);
    }
    return out;
  };
  GlobularGroup h = make_group(g.grade);
  for (int j = 0; j < n; ++j) h.name[j] = "b" + std::to_string(j);
  for (int k = 0; k < g.top(); ++k)
    for (Sign s : both_signs)
      for (int j = 0; j < n; ++j)
        if (k < g.grade[j]) h.pi[k][sidx(s)][j] = to_new(g.apply(k, s, nb[j]));
  h.augmentation.assign(n, 0);
  for (int j = 0; j < n; ++j) h.augmentation[j] = g.augment(nb[j]);
  return h;
}

}  // namespace ppx::rnd
