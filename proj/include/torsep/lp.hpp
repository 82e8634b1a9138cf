#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "torsep/error.hpp"
#include "torsep/number.hpp"

namespace torsep {

/// Rational feasibility problem over free variables x:
///   eq_lhs[r] . x  = eq_rhs[r]
///   ineq_lhs[k] . x >= ineq_rhs[k]
struct LinearSystem {
  std::size_t num_vars = 0;
  std::vector<RatVector> eq_lhs;
  RatVector eq_rhs;
  std::vector<RatVector> ineq_lhs;
  RatVector ineq_rhs;

  void add_equality(RatVector lhs, Rational rhs) {
    eq_lhs.push_back(std::move(lhs));
    eq_rhs.push_back(std::move(rhs));
  }
  void add_inequality(RatVector lhs, Rational rhs) {
    ineq_lhs.push_back(std::move(lhs));
    ineq_rhs.push_back(std::move(rhs));
  }

  void validate() const {
    if (eq_lhs.size() != eq_rhs.size() || ineq_lhs.size() != ineq_rhs.size())
      throw InputError("constraint and right-hand-side counts differ");
    for (const auto& row : eq_lhs)
      if (row.size() != num_vars) throw InputError("equality row has wrong length");
    for (const auto& row : ineq_lhs)
      if (row.size() != num_vars) throw InputError("inequality row has wrong length");
  }
};

/// Either an exact solution or an exact Farkas certificate. The certificate
/// is (y, z): y multiplies the equalities, z >= 0 the inequalities, with
/// y^T B + z^T C = 0 and y.b + z.c > 0. It is scaled to a primitive integer
/// vector.
struct FeasibilityResult {
  enum class Tag { feasible, infeasible };
  Tag tag = Tag::feasible;
  RatVector solution;
  RatVector certificate;

  bool feasible() const noexcept { return tag == Tag::feasible; }
};

inline bool verify_solution(const LinearSystem& sys, const RatVector& x) {
  if (x.size() != sys.num_vars) return false;
  for (std::size_t r = 0; r < sys.eq_lhs.size(); ++r)
    if (dot(sys.eq_lhs[r], x) != sys.eq_rhs[r]) return false;
  for (std::size_t k = 0; k < sys.ineq_lhs.size(); ++k)
    if (dot(sys.ineq_lhs[k], x) < sys.ineq_rhs[k]) return false;
  return true;
}

inline bool verify_farkas(const LinearSystem& sys, const RatVector& cert) {
  const std::size_t me = sys.eq_lhs.size();
  const std::size_t mi = sys.ineq_lhs.size();
  if (cert.size() != me + mi) return false;
  RatVector combo(sys.num_vars);
  Rational bound = 0;
  for (std::size_t r = 0; r < me; ++r) {
    for (std::size_t j = 0; j < sys.num_vars; ++j) combo[j] += cert[r] * sys.eq_lhs[r][j];
    bound += cert[r] * sys.eq_rhs[r];
  }
  for (std::size_t k = 0; k < mi; ++k) {
    if (cert[me + k] < 0) return false;
    for (std::size_t j = 0; j < sys.num_vars; ++j) combo[j] += cert[me + k] * sys.ineq_lhs[k][j];
    bound += cert[me + k] * sys.ineq_rhs[k];
  }
  return is_zero(combo) && bound > 0;
}

namespace detail {

// Phase-one simplex on [A' | I] (x, a) = b', x, a >= 0, b' >= 0, minimizing
// the artificial sum with Bland's rule. Returns phase-one duals y (in the
// flipped row orientation) and the basic structural values.
struct PhaseOneOutcome {
  Rational objective;
  RatVector duals;
  RatVector structural;
};

inline PhaseOneOutcome phase_one(std::vector<RatVector> a, RatVector b, std::size_t n) {
  const std::size_t m = a.size();
  const std::size_t width = n + m;
  // tableau rows: constraint rows then the reduced-cost row; last column is rhs
  std::vector<RatVector> t(m + 1, RatVector(width + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t j = 0; j < n; ++j) t[r][j] = a[r][j];
    t[r][n + r] = 1;
    t[r][width] = b[r];
    basis[r] = n + r;
  }
  RatVector& cost = t[m];
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t r = 0; r < m; ++r) cost[j] -= t[r][j];
  for (std::size_t r = 0; r < m; ++r) cost[width] -= t[r][width];

  for (;;) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j) {
      if (cost[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == width) break;
    std::size_t leave = m;
    Rational best;
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][enter] <= 0) continue;
      Rational ratio = t[r][width] / t[r][enter];
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m) throw InternalError("phase-one simplex reported unbounded");
    Rational piv = t[leave][enter];
    for (auto& x : t[leave]) x /= piv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      Rational f = t[r][enter];
      for (std::size_t k = 0; k <= width; ++k) t[r][k] -= f * t[leave][k];
    }
    basis[leave] = enter;
  }

  PhaseOneOutcome out;
  out.objective = -cost[width];
  out.duals.resize(m);
  for (std::size_t r = 0; r < m; ++r) out.duals[r] = 1 - cost[n + r];
  out.structural.assign(n, Rational(0));
  for (std::size_t r = 0; r < m; ++r)
    if (basis[r] < n) out.structural[basis[r]] = t[r][width];
  return out;
}

}  // namespace detail

/// Decides feasibility of an exact rational system. Variables are free; they
/// are split as x = x+ - x- internally and each inequality gets a surplus
/// variable. Deterministic for fixed input.
inline FeasibilityResult lp_feasible(const LinearSystem& sys) {
  sys.validate();
  const std::size_t nv = sys.num_vars;
  const std::size_t me = sys.eq_lhs.size();
  const std::size_t mi = sys.ineq_lhs.size();
  const std::size_t m = me + mi;
  const std::size_t n = 2 * nv + mi;

  std::vector<RatVector> a(m, RatVector(n));
  RatVector b(m);
  std::vector<bool> flipped(m, false);
  for (std::size_t r = 0; r < m; ++r) {
    const RatVector& row = r < me ? sys.eq_lhs[r] : sys.ineq_lhs[r - me];
    for (std::size_t j = 0; j < nv; ++j) {
      a[r][j] = row[j];
      a[r][nv + j] = -row[j];
    }
    if (r >= me) a[r][2 * nv + (r - me)] = -1;
    b[r] = r < me ? sys.eq_rhs[r] : sys.ineq_rhs[r - me];
    if (b[r] < 0) {
      flipped[r] = true;
      for (auto& x : a[r]) x = -x;
      b[r] = -b[r];
    }
  }

  auto outcome = detail::phase_one(std::move(a), std::move(b), n);
  FeasibilityResult result;
  if (outcome.objective == 0) {
    result.tag = FeasibilityResult::Tag::feasible;
    result.solution.resize(nv);
    for (std::size_t j = 0; j < nv; ++j)
      result.solution[j] = outcome.structural[j] - outcome.structural[nv + j];
    if (!verify_solution(sys, result.solution)) throw InternalError("simplex solution fails verification");
    return result;
  }
  result.tag = FeasibilityResult::Tag::infeasible;
  RatVector y(m);
  for (std::size_t r = 0; r < m; ++r) y[r] = flipped[r] ? -outcome.duals[r] : outcome.duals[r];
  result.certificate = to_rational(primitive_integer_multiple(y));
  if (!verify_farkas(sys, result.certificate)) throw InternalError("Farkas certificate fails verification");
  return result;
}

/// Result of testing v against the rational cone generated by `gens`.
struct ConeMembership {
  bool inside = false;
  RatVector coefficients;  ///< v = sum coefficients[k] * gens[k], all >= 0
  IntVector separator;     ///< gamma . gens[k] >= 0 for all k, gamma . v < 0
};

inline bool verify_membership(const ConeMembership& cm, const IntVector& v,
                              std::span<const IntVector> gens) {
  if (cm.inside) {
    if (cm.coefficients.size() != gens.size()) return false;
    RatVector sum(v.size());
    for (std::size_t k = 0; k < gens.size(); ++k) {
      if (cm.coefficients[k] < 0) return false;
      for (std::size_t i = 0; i < v.size(); ++i) sum[i] += cm.coefficients[k] * gens[k][i];
    }
    for (std::size_t i = 0; i < v.size(); ++i)
      if (sum[i] != v[i]) return false;
    return true;
  }
  if (cm.separator.size() != v.size()) return false;
  for (const auto& g : gens)
    if (dot(cm.separator, g) < 0) return false;
  return dot(cm.separator, v) < 0;
}

/// Membership of v in the rational cone spanned by `gens`, with an exact
/// certificate either way. Separators are primitive integer vectors.
inline ConeMembership cone_member(const IntVector& v, std::span<const IntVector> gens) {
  const std::size_t d = v.size();
  for (const auto& g : gens)
    if (g.size() != d) throw InputError("cone generator dimension mismatch");
  LinearSystem sys;
  sys.num_vars = gens.size();
  for (std::size_t i = 0; i < d; ++i) {
    RatVector row(gens.size());
    for (std::size_t k = 0; k < gens.size(); ++k) row[k] = gens[k][i];
    sys.add_equality(std::move(row), Rational(v[i]));
  }
  for (std::size_t k = 0; k < gens.size(); ++k) {
    RatVector row(gens.size());
    row[k] = 1;
    sys.add_inequality(std::move(row), 0);
  }
  auto res = lp_feasible(sys);
  ConeMembership cm;
  if (res.feasible()) {
    cm.inside = true;
    cm.coefficients = std::move(res.solution);
  } else {
    // y.v > 0 and G^T y = -z <= 0, so gamma = -y separates.
    RatVector gamma(d);
    for (std::size_t i = 0; i < d; ++i) gamma[i] = -res.certificate[i];
    cm.separator = primitive_integer_multiple(gamma);
  }
  if (!verify_membership(cm, v, gens)) throw InternalError("cone membership certificate fails verification");
  return cm;
}

}  // namespace torsep
