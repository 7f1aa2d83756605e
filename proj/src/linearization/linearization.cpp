#include "ppx/linearization.hpp"

#include <algorithm>

#include "ppx/errors.hpp"

namespace ppx {

Linearization::Linearization(Polygraph p) : p_(std::move(p)) {
  pic_.resize(p_.size());
  for (int x : p_.by_dim()) {
    const Cell& c = p_.cells[x];
    if (c.dim == 0) continue;
    if (!c.src || !c.tgt) throw IllTyped("cell " + p_.label(x) + " lacks a boundary");
    for (const Term& t : {c.src, c.tgt}) {
      std::vector<int> g;
      collect_gens(t, g);
      for (int y : g)
        if (p_.cells[y].dim >= c.dim) throw IllTyped("cell " + p_.label(x) + " refers to a cell of dimension >= its own");
    }
    const LinComb ds = delta(c.src), dt = delta(c.tgt);
    for (Sign s : both_signs) {
      auto& v = pic_[x][sidx(s)];
      v.resize(c.dim);
      v[c.dim - 1] = s == Sign::minus ? ds : dt;
      for (int k = 0; k + 1 < c.dim; ++k) v[k] = pi(ds, k, s);
    }
  }
  std::vector<int> grade(p_.size());
  for (int x = 0; x < p_.size(); ++x) grade[x] = p_.cells[x].dim;
  group_ = make_group(grade);
  for (int x = 0; x < p_.size(); ++x) {
    group_.name[x] = p_.label(x);
    for (int k = 0; k < p_.cells[x].dim; ++k)
      for (Sign s : both_signs) group_.pi[k][sidx(s)][x] = pic_[x][sidx(s)][k];
  }
  group_.augmentation.assign(p_.size(), 1);
}

LinComb Linearization::pi_cell(int x, int k, Sign s) const {
  if (k < 0) return LinComb();
  if (k >= p_.cells[x].dim) return LinComb::unit(x);
  return pic_[x][sidx(s)][k];
}

LinComb Linearization::pi(const LinComb& v, int k, Sign s) const {
  if (v.basis() != Basis::delta && !v.zero()) throw BasisMismatch("pi expects the delta basis");
  LinComb out;
  if (k < 0) return out;
  for (const auto& [x, c] : v.terms()) {
    if (k >= p_.cells[x].dim)
      out.add(x, c);
    else
      out.axpy(c, pic_[x][sidx(s)][k]);
  }
  return out;
}

LinComb Linearization::delta(const Term& t, bool check) const {
  switch (t->kind) {
    case TermNode::Kind::gen:
      if (t->cell < 0 || t->cell >= p_.size()) throw IllTyped("unknown generator");
      return LinComb::unit(t->cell);
    case TermNode::Kind::comp: {
      LinComb l = delta(t->left, check);
      const LinComb r = delta(t->right, check);
      const LinComb lp = pi(l, t->k, Sign::plus);
      if (check && !(lp == pi(r, t->k, Sign::minus)))
        throw IllTyped("composite #" + std::to_string(t->k) + " of arrows with mismatched boundaries");
      l += r;
      l -= lp;
      return l;
    }
    case TermNode::Kind::bnd:
      return pi(delta(t->left, check), t->k, t->sign);
  }
  throw IllTyped("bad term");
}

LinComb Linearization::sigma() const {
  LinComb s;
  for (int x = 0; x < p_.size(); ++x) s.add(x, p_.cells[x].dim % 2 == 0 ? 1 : -1);
  return s;
}

LinComb Linearization::m_vector(int x) const {
  LinComb m = LinComb::unit(x);
  const int n = p_.cells[x].dim;
  if (n == 0) return m;
  m -= pic_[x][0][n - 1];
  m -= pic_[x][1][n - 1];
  return m;
}

LinComb Linearization::to_m(const LinComb& v) const {
  if (v.basis() == Basis::m && !v.zero()) return v;
  std::vector<int> order = p_.by_dim();
  std::reverse(order.begin(), order.end());
  LinComb w = v, out(Basis::m);
  // m_x has δ_x as its only top dimensional term, so peel from the top.
  for (int x : order) {
    const Int c = w[x];
    if (c == 0) continue;
    out.add(x, c);
    w.axpy(-c, m_vector(x));
  }
  if (!w.zero()) throw Error("internal: m-basis conversion left a remainder");
  return out;
}

LinComb Linearization::to_delta(const LinComb& v) const {
  if (v.basis() == Basis::delta) return v;
  LinComb out;
  for (const auto& [x, c] : v.terms()) out.axpy(c, m_vector(x));
  return out;
}

int Linearization::grade(const LinComb& v) const {
  int g = -1;
  for (const auto& [x, c] : v.terms()) g = std::max(g, p_.cells[x].dim);
  return g;
}

bool positive(const Linearization& lin, const LinComb& v, Positivity mode) {
  if (mode == Positivity::makkai) {
    const LinComb m = lin.to_m(v);
    for (const auto& [x, c] : m.terms())
      if (c < 0) return false;
    return true;
  }
  const LinComb d = lin.to_delta(v);
  for (const auto& [x, c] : d.terms()) {
    const bool even = lin.polygraph().cells[x].dim % 2 == 0;
    if ((even && c < 0) || (!even && c > 0)) return false;
  }
  return true;
}

std::vector<LinComb> linear_images(const Morphism& f, const Linearization& cod) {
  std::vector<LinComb> out;
  out.reserve(f.image.size());
  for (const auto& t : f.image) out.push_back(cod.delta(t));
  return out;
}

LinComb push(const std::vector<LinComb>& images, const LinComb& v) {
  LinComb out;
  for (const auto& [x, c] : v.terms()) out.axpy(c, images.at(x));
  return out;
}

bool preserves_sigma(const Morphism& f) {
  Linearization lx(*f.domain), ly(*f.codomain);
  return push(linear_images(f, ly), lx.sigma()) == ly.sigma();
}

bool preserves_alternate_positivity(const Morphism& f) {
  Linearization ly(*f.codomain);
  const auto img = linear_images(f, ly);
  for (int x = 0; x < f.domain->size(); ++x) {
    LinComb v = img[x];
    if (f.domain->cells[x].dim % 2) v *= -1;
    if (!positive(ly, v, Positivity::alternate)) return false;
  }
  return true;
}

bool in_subpolygraph(const Linearization& lin, const Term& t, const std::vector<char>& member) {
  const LinComb d = lin.delta(t);
  for (const auto& [x, c] : d.terms())
    if (!member.at(x)) return false;
  return true;
}

std::vector<char> image_subpolygraph(const Morphism& f, const std::vector<char>& member, bool check) {
  if (check && !(preserves_sigma(f) && preserves_alternate_positivity(f)))
    throw HypothesisFailed("morphism does not preserve sigma and alternate positivity");
  Linearization ly(*f.codomain);
  const auto img = linear_images(f, ly);
  std::vector<char> out(f.codomain->size(), 0);
  for (int v = 0; v < f.domain->size(); ++v)
    if (member.at(v))
      for (const auto& [y, c] : img[v].terms()) out[y] = 1;
  return out;
}

}  // namespace ppx
