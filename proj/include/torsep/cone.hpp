#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "torsep/certificate.hpp"
#include "torsep/error.hpp"
#include "torsep/linalg.hpp"
#include "torsep/lp.hpp"
#include "torsep/number.hpp"

namespace torsep {

/// Default bound on n for anything that scans all 2^n coordinate subsets.
inline constexpr std::size_t kDefaultMaxN = 12;

/// Characters chi_1..chi_n in Z^d of a diagonal torus action. Duplicates and
/// zero characters are allowed.
class WeightSystem {
 public:
  WeightSystem() = default;
  WeightSystem(std::size_t dim, std::vector<IntVector> weights) : dim_(dim), weights_(std::move(weights)) {
    if (dim_ == 0) throw InputError("weight dimension must be positive");
    if (weights_.empty()) throw InputError("weight list is empty");
    for (std::size_t i = 0; i < weights_.size(); ++i)
      if (weights_[i].size() != dim_)
        throw InputError("weight " + std::to_string(i + 1) + " has dimension " +
                         std::to_string(weights_[i].size()) + ", expected " + std::to_string(dim_));
  }

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return weights_.size(); }
  const IntVector& operator[](std::size_t i) const { return weights_.at(i); }
  const std::vector<IntVector>& weights() const noexcept { return weights_; }

  IntMatrix matrix() const { return IntMatrix::from_columns(weights_, dim_); }

  std::vector<IntVector> others(std::size_t i) const {
    std::vector<IntVector> out;
    for (std::size_t k = 0; k < weights_.size(); ++k)
      if (k != i) out.push_back(weights_[k]);
    return out;
  }

  bool operator==(const WeightSystem&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<IntVector> weights_;
};

inline void check_index(const WeightSystem& ws, std::size_t i) {
  if (i >= ws.size())
    throw InputError("index " + std::to_string(i + 1) + " out of range 1.." + std::to_string(ws.size()));
}

/// Appends a constant coordinate 1 to every character.
inline WeightSystem homogenize(const WeightSystem& ws) {
  std::vector<IntVector> lifted;
  lifted.reserve(ws.size());
  for (const auto& w : ws.weights()) {
    IntVector v = w;
    v.emplace_back(1);
    lifted.push_back(std::move(v));
  }
  return WeightSystem(ws.dim() + 1, std::move(lifted));
}

// ---------------------------------------------------------------------------
// Pointedness

struct StrictConvexity {
  bool pointed = false;
  IntVector functional;  ///< pointed: functional . chi_i >= 1 for every nonzero chi_i
  IntVector relation;    ///< not pointed: nonnegative, nonzero, sum relation_i chi_i = 0
};

inline bool verify_strict_convexity(const StrictConvexity& sc, const WeightSystem& ws) {
  if (sc.pointed) {
    if (sc.functional.size() != ws.dim()) return false;
    for (const auto& w : ws.weights())
      if (!is_zero(w) && dot(sc.functional, w) < 1) return false;
    return true;
  }
  if (sc.relation.size() != ws.size() || is_zero(sc.relation)) return false;
  IntVector sum(ws.dim());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (sc.relation[i] < 0) return false;
    if (sc.relation[i] > 0 && is_zero(ws[i])) return false;
    for (std::size_t k = 0; k < ws.dim(); ++k) sum[k] += sc.relation[i] * ws[i][k];
  }
  return is_zero(sum);
}

inline StrictConvexity is_strictly_convex(const WeightSystem& ws) {
  LinearSystem sys;
  sys.num_vars = ws.dim();
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    if (is_zero(ws[i])) continue;
    sys.add_inequality(to_rational(ws[i]), 1);
    rows.push_back(i);
  }
  auto res = lp_feasible(sys);
  StrictConvexity sc;
  if (res.feasible()) {
    sc.pointed = true;
    sc.functional = primitive_integer_multiple(res.solution);
  } else {
    sc.relation.assign(ws.size(), Integer(0));
    for (std::size_t k = 0; k < rows.size(); ++k) sc.relation[rows[k]] = Integer(res.certificate[k].get_num());
  }
  if (!verify_strict_convexity(sc, ws)) throw InternalError("pointedness certificate fails verification");
  return sc;
}

// ---------------------------------------------------------------------------
// Edge conditions: chi_i and -chi_i against the cone of the other characters.

struct EdgeTest {
  std::size_t index = 0;
  ConeMembership direct;    ///< chi_i against cone(others)
  ConeMembership opposite;  ///< -chi_i against cone(others)

  /// chi_i is not a nonnegative combination of the other characters.
  bool excludes_vector() const noexcept { return !direct.inside; }
  /// -chi_i is not a nonnegative combination of the other characters.
  bool excludes_negation() const noexcept { return !opposite.inside; }
};

inline EdgeTest edge_test(const WeightSystem& ws, std::size_t i) {
  check_index(ws, i);
  auto others = ws.others(i);
  return EdgeTest{i, cone_member(ws[i], others), cone_member(negated(ws[i]), others)};
}

// ---------------------------------------------------------------------------
// Minimal faces

/// The index set of the smallest face of K containing chi_index, with
/// evidence for every coordinate: implications j -> index for members and
/// supporting functionals for non-members.
struct MinimalFace {
  std::size_t index = 0;
  IndexSet members;
  std::vector<Implication> member_evidence;
  std::vector<FaceSeparator> outside_evidence;
};

inline bool verify_minimal_face(const MinimalFace& mf, const WeightSystem& ws) {
  const IntMatrix a = ws.matrix();
  if (!contains(mf.members, mf.index)) return false;
  if (mf.member_evidence.size() + mf.outside_evidence.size() + 1 != ws.size()) return false;
  for (const auto& imp : mf.member_evidence)
    if (imp.to != mf.index || !contains(mf.members, imp.from) || !verify_implication(imp, a)) return false;
  for (const auto& sep : mf.outside_evidence)
    if (sep.on_face != mf.index || contains(mf.members, sep.off_face) || !verify_separator(sep, a)) return false;
  return true;
}

/// j is in the minimal face of chi_i iff no gamma has gamma.chi_k >= 0 for all
/// k, gamma.chi_i <= 0 and gamma.chi_j >= 1.
inline MinimalFace minimal_face(const WeightSystem& ws, std::size_t i) {
  check_index(ws, i);
  const std::size_t n = ws.size();
  const IntMatrix a = ws.matrix();
  MinimalFace mf;
  mf.index = i;
  mf.members.push_back(i);
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i) continue;
    LinearSystem sys;
    sys.num_vars = ws.dim();
    for (std::size_t k = 0; k < n; ++k) sys.add_inequality(to_rational(ws[k]), 0);
    sys.add_inequality(to_rational(negated(ws[i])), 0);
    sys.add_inequality(to_rational(ws[j]), 1);
    auto res = lp_feasible(sys);
    if (res.feasible()) {
      mf.outside_evidence.push_back(FaceSeparator{i, j, primitive_integer_multiple(res.solution)});
      continue;
    }
    // sum z_k chi_k - w chi_i + u chi_j = 0 with u > 0
    IntVector relation(n);
    for (std::size_t k = 0; k < n; ++k) relation[k] = -Integer(res.certificate[k].get_num());
    relation[i] += Integer(res.certificate[n].get_num());
    relation[j] -= Integer(res.certificate[n + 1].get_num());
    mf.members.push_back(j);
    mf.member_evidence.push_back(implication_from_relation(relation, j, i, a));
  }
  std::sort(mf.members.begin(), mf.members.end());
  return mf;
}

// ---------------------------------------------------------------------------
// Face enumeration

/// Face of K recorded as the set of characters lying on it. The functional
/// vanishes exactly on those characters and is >= 1 on all others.
struct ConeFace {
  IndexSet indices;
  IntVector functional;

  bool operator==(const ConeFace&) const = default;
};

inline bool verify_face(const ConeFace& face, const WeightSystem& ws) {
  if (face.functional.size() != ws.dim()) return false;
  for (std::size_t k = 0; k < ws.size(); ++k) {
    Integer v = dot(face.functional, ws[k]);
    if (contains(face.indices, k) ? v != 0 : v < 1) return false;
  }
  return true;
}

struct FaceLattice {
  std::vector<ConeFace> faces;  ///< sorted by (size, lexicographic index set)

  bool contains_set(const IndexSet& s) const {
    return std::any_of(faces.begin(), faces.end(), [&](const ConeFace& f) { return f.indices == s; });
  }
  std::vector<IndexSet> index_sets() const {
    std::vector<IndexSet> out;
    for (const auto& f : faces) out.push_back(f.indices);
    return out;
  }
};

inline bool face_order(const IndexSet& a, const IndexSet& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

inline void check_guard(std::size_t n, std::size_t max_n, const std::string& what) {
  if (n > max_n)
    throw ResourceError("max-n", what + " needs 2^" + std::to_string(n) + " subsets; n = " + std::to_string(n) +
                                     " exceeds the guard max-n = " + std::to_string(max_n));
}

/// All faces of K, one LP per coordinate subset S:
/// gamma.chi_i = 0 for i in S, gamma.chi_j >= 1 for j not in S.
inline FaceLattice enumerate_faces(const WeightSystem& ws, std::size_t max_n = kDefaultMaxN) {
  const std::size_t n = ws.size();
  check_guard(n, std::min<std::size_t>(max_n, 62), "face enumeration");
  FaceLattice lattice;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    LinearSystem sys;
    sys.num_vars = ws.dim();
    IndexSet s;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask >> k & 1U) {
        sys.add_equality(to_rational(ws[k]), 0);
        s.push_back(k);
      } else {
        sys.add_inequality(to_rational(ws[k]), 1);
      }
    }
    auto res = lp_feasible(sys);
    if (!res.feasible()) continue;
    ConeFace face{std::move(s), primitive_integer_multiple(res.solution)};
    if (!verify_face(face, ws)) throw InternalError("face witness fails verification");
    lattice.faces.push_back(std::move(face));
  }
  std::sort(lattice.faces.begin(), lattice.faces.end(),
            [](const ConeFace& a, const ConeFace& b) { return face_order(a.indices, b.indices); });
  return lattice;
}

/// Intersection of all faces containing index i.
inline IndexSet intersect_faces_containing(const FaceLattice& lattice, std::size_t i, std::size_t n) {
  IndexSet acc;
  for (std::size_t k = 0; k < n; ++k) acc.push_back(k);
  for (const auto& f : lattice.faces) {
    if (!contains(f.indices, i)) continue;
    IndexSet next;
    std::set_intersection(acc.begin(), acc.end(), f.indices.begin(), f.indices.end(), std::back_inserter(next));
    acc = std::move(next);
  }
  return acc;
}

}  // namespace torsep
