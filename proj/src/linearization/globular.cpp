#include "ppx/globular.hpp"

#include <algorithm>

#include "ppx/errors.hpp"

namespace ppx {

int GlobularGroup::top() const {
  int t = -1;
  for (int g : grade) t = std::max(t, g);
  return t;
}

LinComb GlobularGroup::apply_basis(int k, Sign s, int b) const {
  if (k < 0) return LinComb();
  if (k >= grade[b]) return LinComb::unit(b);
  return pi[k][sidx(s)][b];
}

LinComb GlobularGroup::apply(int k, Sign s, const LinComb& v) const {
  LinComb out;
  if (k < 0) return out;
  for (const auto& [b, c] : v.terms()) {
    if (k >= grade[b])
      out.add(b, c);
    else
      out.axpy(c, pi[k][sidx(s)][b]);
  }
  return out;
}

Int GlobularGroup::augment(const LinComb& v) const {
  if (augmentation.empty()) throw PreconditionViolated("group has no augmentation");
  Int e = 0;
  for (const auto& [b, c] : v.terms()) e += c * augmentation[b];
  return e;
}

int GlobularGroup::grade_of(const LinComb& v) const {
  int g = -1;
  for (const auto& [b, c] : v.terms()) g = std::max(g, grade[b]);
  return g;
}

LinComb GlobularGroup::part(const LinComb& v, int n) const {
  LinComb out;
  for (const auto& [b, c] : v.terms())
    if (grade[b] == n) out.add(b, c);
  return out;
}

std::vector<int> GlobularGroup::of_grade(int n) const {
  std::vector<int> out;
  for (int b = 0; b < size(); ++b)
    if (grade[b] == n) out.push_back(b);
  return out;
}

GlobularGroup make_group(const std::vector<int>& grade) {
  GlobularGroup g;
  g.grade = grade;
  g.name.resize(grade.size());
  const int t = g.top();
  g.pi.resize(std::max(t, 0));
  for (auto& level : g.pi)
    for (auto& side : level) side.assign(grade.size(), LinComb());
  return g;
}

void check_globular(const GlobularGroup& g) {
  const int t = g.top();
  if (static_cast<int>(g.pi.size()) < t) throw GlobularRelationViolated("missing projections");
  for (int b = 0; b < g.size(); ++b) {
    if (g.grade[b] < 0) throw GlobularRelationViolated("negative grade");
    for (int k = 0; k < g.grade[b]; ++k)
      for (Sign s : both_signs) {
        const LinComb& p = g.pi[k][sidx(s)][b];
        if (g.grade_of(p) > k)
          throw GlobularRelationViolated("pi_" + std::to_string(k) + " of a basis element leaves the grade filtration");
        if (!g.augmentation.empty() && g.augment(p) != g.augmentation[b])
          throw GlobularRelationViolated("projection does not preserve the augmentation");
      }
  }
  for (int b = 0; b < g.size(); ++b)
    for (int k = 0; k < t; ++k)
      for (int m = 0; m < t; ++m)
        for (Sign e : both_signs)
          for (Sign d : both_signs) {
            const LinComb lhs = g.apply(k, e, g.apply_basis(m, d, b));
            const LinComb rhs = k < m ? g.apply_basis(k, e, b) : g.apply_basis(m, d, b);
            if (!(lhs == rhs))
              throw GlobularRelationViolated("pi_" + std::to_string(k) + " pi_" + std::to_string(m) +
                                             " relation fails on basis element " + std::to_string(b));
          }
}

std::vector<Int> ChainComplex::boundary(int n, const std::vector<Int>& v) const {
  if (n <= 0) return {};
  std::vector<Int> out(rank[n - 1], 0);
  for (int i = 0; i < rank[n - 1]; ++i)
    for (int j = 0; j < rank[n]; ++j) out[i] += d[n][i][j] * v[j];
  return out;
}

void check_chain(const ChainComplex& k) {
  const int t = k.top();
  if (static_cast<int>(k.d.size()) != t + 1) throw GlobularRelationViolated("chain complex has the wrong number of differentials");
  for (int n = 1; n <= t; ++n) {
    if (static_cast<int>(k.d[n].size()) != k.rank[n - 1]) throw GlobularRelationViolated("differential has the wrong shape");
    for (const auto& row : k.d[n])
      if (static_cast<int>(row.size()) != k.rank[n]) throw GlobularRelationViolated("differential has the wrong shape");
  }
  for (int n = 2; n <= t; ++n)
    for (int i = 0; i < k.rank[n - 2]; ++i)
      for (int j = 0; j < k.rank[n]; ++j) {
        Int s = 0;
        for (int m = 0; m < k.rank[n - 1]; ++m) s += k.d[n - 1][i][m] * k.d[n][m][j];
        if (s != 0) throw GlobularRelationViolated("d o d is not zero");
      }
  if (!k.augmentation.empty() && t >= 1)
    for (int j = 0; j < k.rank[1]; ++j) {
      Int s = 0;
      for (int i = 0; i < k.rank[0]; ++i) s += k.augmentation[i] * k.d[1][i][j];
      if (s != 0) throw GlobularRelationViolated("augmentation does not vanish on boundaries");
    }
}

ChainComplex globular_to_chain(const GlobularGroup& g, std::vector<std::vector<int>>* basis_out) {
  check_globular(g);
  const int t = g.top();
  std::vector<std::vector<int>> basis(t + 1);
  std::vector<int> pos(g.size());
  for (int n = 0; n <= t; ++n) {
    basis[n] = g.of_grade(n);
    for (std::size_t i = 0; i < basis[n].size(); ++i) pos[basis[n][i]] = static_cast<int>(i);
  }
  ChainComplex k;
  k.rank.resize(t + 1);
  k.d.resize(t + 1);
  for (int n = 0; n <= t; ++n) k.rank[n] = static_cast<int>(basis[n].size());
  for (int n = 1; n <= t; ++n) {
    k.d[n].assign(k.rank[n - 1], std::vector<Int>(k.rank[n], 0));
    for (int j = 0; j < k.rank[n]; ++j) {
      const int b = basis[n][j];
      const LinComb db = g.part(g.pi[n - 1][1][b] - g.pi[n - 1][0][b], n - 1);
      for (const auto& [x, c] : db.terms()) k.d[n][pos[x]][j] = c;
    }
  }
  if (!g.augmentation.empty() && t >= 0)
    for (int b : basis[0]) k.augmentation.push_back(g.augmentation[b]);
  if (basis_out) *basis_out = std::move(basis);
  return k;
}

GlobularGroup chain_to_globular(const ChainComplex& k) {
  check_chain(k);
  const int t = k.top();
  std::vector<int> grade, offset(t + 1, 0);
  for (int n = 0; n <= t; ++n) {
    offset[n] = static_cast<int>(grade.size());
    for (int i = 0; i < k.rank[n]; ++i) grade.push_back(n);
  }
  GlobularGroup g = make_group(grade);
  for (int n = 1; n <= t; ++n)
    for (int j = 0; j < k.rank[n]; ++j) {
      const int b = offset[n] + j;
      // pi_k^- kills b and pi_k^+ sends it to its boundary for k = n-1 only.
      LinComb d;
      for (int i = 0; i < k.rank[n - 1]; ++i) d.add(offset[n - 1] + i, k.d[n][i][j]);
      g.pi[n - 1][1][b] = d;
    }
  if (!k.augmentation.empty()) {
    g.augmentation.assign(g.size(), 0);
    for (int i = 0; i < (t >= 0 ? k.rank[0] : 0); ++i) g.augmentation[offset[0] + i] = k.augmentation[i];
  }
  return g;
}

Int det(Matrix m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

bool unimodular(const Matrix& m) {
  const Int d = det(m);
  return d == 1 || d == -1;
}

Matrix canonical_iso(const GlobularGroup& g) {
  std::vector<std::vector<int>> basis;
  const ChainComplex k = globular_to_chain(g, &basis);
  const GlobularGroup c = chain_to_globular(k);
  std::vector<int> to_g;  // basis of c -> basis of g
  for (const auto& layer : basis) to_g.insert(to_g.end(), layer.begin(), layer.end());
  const int n = g.size();
  std::vector<LinComb> phi(n);
  for (int b = 0; b < n; ++b) {
    const int x = to_g[b];
    phi[b] = LinComb::unit(x) - g.apply_basis(g.grade[x] - 1, Sign::minus, x);
  }
  auto map = [&](const LinComb& v) {
    LinComb out;
    for (const auto& [b, coef] : v.terms()) out.axpy(coef, phi[b]);
    return out;
  };
  const int t = g.top();
  for (int b = 0; b < n; ++b)
    for (int kk = 0; kk < t; ++kk)
      for (Sign s : both_signs)
        if (!(map(c.apply_basis(kk, s, b)) == g.apply(kk, s, phi[b])))
          throw GlobularRelationViolated("canonical map does not commute with pi_" + std::to_string(kk));
  Matrix m(n, std::vector<Int>(n, 0));
  for (int b = 0; b < n; ++b)
    for (const auto& [x, coef] : phi[b].terms()) m[x][b] = coef;
  if (!unimodular(m)) throw GlobularRelationViolated("canonical map is not invertible over the integers");
  return m;
}

DoubleSequence to_double_sequence(const GlobularGroup& g, const LinComb& v) {
  DoubleSequence ds;
  const int t = g.top();
  ds.k.resize(t + 1);
  for (int n = 0; n <= t; ++n) {
    const auto basis = g.of_grade(n);
    for (Sign s : both_signs) {
      const LinComb p = g.apply(n, s, v);
      auto& out = ds.k[n][sidx(s)];
      out.assign(basis.size(), 0);
      for (std::size_t i = 0; i < basis.size(); ++i) out[i] = p[basis[i]];
    }
  }
  return ds;
}

LinComb from_double_sequence(const GlobularGroup& g, const DoubleSequence& ds) {
  const int t = g.top();
  if (static_cast<int>(ds.k.size()) != t + 1) throw PreconditionViolated("double sequence has the wrong length");
  std::vector<std::vector<int>> basis;
  const ChainComplex kc = globular_to_chain(g, &basis);
  for (int n = 0; n <= t; ++n)
    for (Sign s : both_signs)
      if (ds.k[n][sidx(s)].size() != basis[n].size()) throw PreconditionViolated("double sequence entry has the wrong rank");
  for (int n = 0; n < t; ++n)
    for (Sign s : both_signs) {
      const auto d = kc.boundary(n + 1, ds.k[n + 1][sidx(s)]);
      for (std::size_t i = 0; i < d.size(); ++i)
        if (ds.k[n][1][i] - ds.k[n][0][i] != d[i]) throw PreconditionViolated("double sequence is not compatible with the boundary");
    }
  LinComb v;
  for (int n = 0; n <= t; ++n)
    for (std::size_t i = 0; i < basis[n].size(); ++i) {
      const Int& c = ds.k[n][0][i];
      if (c == 0) continue;
      const int x = basis[n][i];
      v.add(x, c);
      v.axpy(-c, g.apply_basis(n - 1, Sign::minus, x));
    }
  return v;
}

DoubleSequence pi_double_sequence(const DoubleSequence& ds, int n, Sign s) {
  DoubleSequence out = ds;
  for (int i = 0; i < static_cast<int>(out.k.size()); ++i) {
    if (i == n) {
      out.k[i][0] = ds.k[i][sidx(s)];
      out.k[i][1] = ds.k[i][sidx(s)];
    } else if (i > n) {
      for (auto& side : out.k[i]) std::fill(side.begin(), side.end(), Int(0));
    }
  }
  return out;
}

}  // namespace ppx
