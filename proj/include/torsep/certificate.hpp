#pragma once

#include <cstddef>

#include "torsep/binomial.hpp"
#include "torsep/linalg.hpp"
#include "torsep/number.hpp"

namespace torsep {

/// Evidence that x_from = 0 forces x_to = 0 on the orbit closure. The witness
/// binomial lies in the toric ideal and has one of two shapes:
///   x_to^m - x^q with q_from > 0   (x_from = 0 kills the right side), or
///   x^p - 1     with p_from > 0    (x_from never vanishes on X).
struct Implication {
  std::size_t from = 0;
  std::size_t to = 0;
  Binomial witness;

  bool operator==(const Implication&) const = default;
};

namespace detail {

inline bool is_pure_power(const IntVector& e, std::size_t i) {
  if (e[i] <= 0) return false;
  for (std::size_t k = 0; k < e.size(); ++k)
    if (k != i && e[k] != 0) return false;
  return true;
}

inline bool implication_shape(const IntVector& p, const IntVector& q, std::size_t from, std::size_t to) {
  if (is_pure_power(p, to) && q[from] > 0) return true;
  return is_zero(q) && p[from] > 0;
}

}  // namespace detail

inline bool verify_implication(const Implication& imp, const IntMatrix& weights) {
  const auto& w = imp.witness;
  if (imp.from == imp.to || imp.from >= weights.cols() || imp.to >= weights.cols()) return false;
  if (!w.in_kernel(weights)) return false;
  return detail::implication_shape(w.lhs, w.rhs, imp.from, imp.to) ||
         detail::implication_shape(w.rhs, w.lhs, imp.from, imp.to);
}

/// Builds the implication certificate carried by a kernel relation; throws
/// InternalError when the relation does not have an implication shape.
inline Implication implication_from_relation(const IntVector& relation, std::size_t from, std::size_t to,
                                             const IntMatrix& weights) {
  Implication imp{from, to, Binomial::from_lattice_vector(primitive(relation))};
  if (!verify_implication(imp, weights)) throw InternalError("relation does not certify an implication");
  return imp;
}

/// A supporting functional of the weight cone that vanishes on one character
/// and is positive on another: the two lie on different faces.
struct FaceSeparator {
  std::size_t on_face = 0;
  std::size_t off_face = 0;
  IntVector functional;

  bool operator==(const FaceSeparator&) const = default;
};

inline bool verify_separator(const FaceSeparator& sep, const IntMatrix& weights) {
  if (sep.on_face >= weights.cols() || sep.off_face >= weights.cols()) return false;
  if (sep.functional.size() != weights.rows()) return false;
  for (std::size_t k = 0; k < weights.cols(); ++k)
    if (dot(sep.functional, weights.column(k)) < 0) return false;
  return dot(sep.functional, weights.column(sep.on_face)) == 0 &&
         dot(sep.functional, weights.column(sep.off_face)) > 0;
}

}  // namespace torsep
