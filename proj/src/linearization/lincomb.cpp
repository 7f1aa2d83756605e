#include "ppx/lincomb.hpp"

#include <sstream>

#include "ppx/errors.hpp"

namespace ppx {

LinComb LinComb::unit(int i, Basis b) {
  LinComb v(b);
  v.c_[i] = 1;
  return v;
}

Int LinComb::operator[](int i) const {
  auto it = c_.find(i);
  return it == c_.end() ? Int(0) : it->second;
}

void LinComb::add(int i, const Int& c) {
  if (c == 0) return;
  auto [it, fresh] = c_.emplace(i, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

std::vector<int> LinComb::support() const {
  std::vector<int> s;
  for (const auto& [i, c] : c_) s.push_back(i);
  return s;
}

void LinComb::same_basis(const LinComb& o) const {
  if (basis_ != o.basis_ && !o.c_.empty() && !c_.empty()) throw BasisMismatch("adding combinations written in different bases");
}

LinComb& LinComb::operator+=(const LinComb& o) { return axpy(1, o); }
LinComb& LinComb::operator-=(const LinComb& o) { return axpy(-1, o); }

LinComb& LinComb::axpy(const Int& s, const LinComb& o) {
  same_basis(o);
  if (c_.empty()) basis_ = o.basis_;
  for (const auto& [i, c] : o.c_) add(i, s * c);
  return *this;
}

LinComb& LinComb::operator*=(const Int& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& [i, c] : c_) c *= s;
  return *this;
}

std::string LinComb::str(const std::function<std::string(int)>& name) const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : c_) {
    if (c < 0)
      os << (first ? "-" : " - ");
    else if (!first)
      os << " + ";
    Int a = c < 0 ? Int(-c) : c;
    if (a != 1) os << a << "*";
    os << name(i);
    first = false;
  }
  return os.str();
}

}  // namespace ppx
