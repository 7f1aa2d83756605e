#include "ppx/term.hpp"

#include <sstream>

namespace ppx {

Term gen(int cell) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::gen;
  n->cell = cell;
  return n;
}

Term comp(Term l, Term r, int k) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::comp;
  n->left = std::move(l);
  n->right = std::move(r);
  n->k = k;
  return n;
}

Term bnd(Term t, int k, Sign s) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermNode::Kind::bnd;
  n->left = std::move(t);
  n->k = k;
  n->sign = s;
  return n;
}

Term substitute(const Term& t, const std::function<Term(int)>& f) {
  switch (t->kind) {
    case TermNode::Kind::gen:
      return f(t->cell);
    case TermNode::Kind::comp:
      return comp(substitute(t->left, f), substitute(t->right, f), t->k);
    case TermNode::Kind::bnd:
      return bnd(substitute(t->left, f), t->k, t->sign);
  }
  return t;
}

Term rename(const Term& t, const std::vector<int>& map) {
  return substitute(t, [&](int c) { return gen(map.at(c)); });
}

bool same_syntax(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case TermNode::Kind::gen:
      return a->cell == b->cell;
    case TermNode::Kind::comp:
      return a->k == b->k && same_syntax(a->left, b->left) && same_syntax(a->right, b->right);
    case TermNode::Kind::bnd:
      return a->k == b->k && a->sign == b->sign && same_syntax(a->left, b->left);
  }
  return false;
}

bool has_bnd(const Term& t) {
  switch (t->kind) {
    case TermNode::Kind::gen:
      return false;
    case TermNode::Kind::comp:
      return has_bnd(t->left) || has_bnd(t->right);
    case TermNode::Kind::bnd:
      return true;
  }
  return false;
}

int count_gen(const Term& t, int cell) {
  switch (t->kind) {
    case TermNode::Kind::gen:
      return t->cell == cell ? 1 : 0;
    case TermNode::Kind::comp:
      return count_gen(t->left, cell) + count_gen(t->right, cell);
    case TermNode::Kind::bnd:
      return count_gen(t->left, cell);
  }
  return 0;
}

void collect_gens(const Term& t, std::vector<int>& out) {
  switch (t->kind) {
    case TermNode::Kind::gen:
      out.push_back(t->cell);
      return;
    case TermNode::Kind::comp:
      collect_gens(t->left, out);
      collect_gens(t->right, out);
      return;
    case TermNode::Kind::bnd:
      collect_gens(t->left, out);
      return;
  }
}

static void print(std::ostream& os, const Term& t, const std::function<std::string(int)>& name) {
  switch (t->kind) {
    case TermNode::Kind::gen:
      os << name(t->cell);
      return;
    case TermNode::Kind::comp:
      os << '(';
      print(os, t->left, name);
      os << " #" << t->k << ' ';
      print(os, t->right, name);
      os << ')';
      return;
    case TermNode::Kind::bnd:
      os << "d" << t->k << sign_str(t->sign) << '(';
      print(os, t->left, name);
      os << ')';
      return;
  }
}

std::string to_string(const Term& t, const std::function<std::string(int)>& name) {
  std::ostringstream os;
  print(os, t, name);
  return os.str();
}

std::string to_string(const Term& t) {
  return to_string(t, [](int c) { return std::to_string(c); });
}

}  // namespace ppx
