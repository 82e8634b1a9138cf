#pragma once

#include <cstddef>
#include <string>

#include "torsep/error.hpp"
#include "torsep/linalg.hpp"
#include "torsep/number.hpp"

namespace torsep {

/// x^lhs - x^rhs with disjoint supports. Canonical sign puts the
/// lexicographically larger exponent vector first.
struct Binomial {
  IntVector lhs;
  IntVector rhs;

  static Binomial from_lattice_vector(const IntVector& c) {
    Binomial b;
    b.lhs.resize(c.size());
    b.rhs.resize(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] > 0) b.lhs[i] = c[i];
      else b.rhs[i] = -c[i];
    }
    if (b.lhs < b.rhs) std::swap(b.lhs, b.rhs);
    return b;
  }

  std::size_t size() const noexcept { return lhs.size(); }

  IntVector lattice_vector() const { return lhs - rhs; }

  bool well_formed() const {
    if (lhs.size() != rhs.size()) return false;
    for (std::size_t i = 0; i < lhs.size(); ++i) {
      if (lhs[i] < 0 || rhs[i] < 0) return false;
      if (lhs[i] != 0 && rhs[i] != 0) return false;
    }
    return true;
  }

  /// A (lhs - rhs) = 0, i.e. the binomial vanishes on the orbit closure.
  bool in_kernel(const IntMatrix& weights) const {
    return well_formed() && lhs.size() == weights.cols() && is_zero(weights * lattice_vector());
  }

  auto operator<=>(const Binomial&) const = default;
  bool operator==(const Binomial&) const = default;
};

inline std::string monomial_string(const IntVector& exps) {
  std::string s;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += "x" + std::to_string(i + 1);
    if (exps[i] != 1) s += "^" + exps[i].get_str();
  }
  return s.empty() ? "1" : s;
}

inline std::string to_string(const Binomial& b) {
  return monomial_string(b.lhs) + " - " + monomial_string(b.rhs);
}

}  // namespace torsep
