#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ppx/integer.hpp"

namespace ppx {

enum class Basis { delta, m };

// Finite integer combination of basis vectors, tagged with the basis it is
// written in. Mixing bases throws BasisMismatch.
class LinComb {
 public:
  LinComb() = default;
  explicit LinComb(Basis b) : basis_(b) {}
  static LinComb unit(int i, Basis b = Basis::delta);

  Basis basis() const { return basis_; }
  const std::map<int, Int>& terms() const { return c_; }
  Int operator[](int i) const;
  void add(int i, const Int& c);
  bool zero() const { return c_.empty(); }
  std::vector<int> support() const;

  LinComb& operator+=(const LinComb& o);
  LinComb& operator-=(const LinComb& o);
  LinComb& operator*=(const Int& s);
  // this += s * o
  LinComb& axpy(const Int& s, const LinComb& o);

  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator-(LinComb a) { return a *= -1; }
  friend LinComb operator*(const Int& s, LinComb a) { return a *= s; }
  friend bool operator==(const LinComb& a, const LinComb& b) {
    return a.c_ == b.c_ && (a.basis_ == b.basis_ || a.c_.empty());
  }

  std::string str(const std::function<std::string(int)>& name) const;

 private:
  void same_basis(const LinComb& o) const;
  Basis basis_ = Basis::delta;
  std::map<int, Int> c_;
};

}  // namespace ppx
