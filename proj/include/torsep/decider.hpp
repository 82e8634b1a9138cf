#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "torsep/certificate.hpp"
#include "torsep/cone.hpp"
#include "torsep/error.hpp"
#include "torsep/linalg.hpp"
#include "torsep/lp.hpp"
#include "torsep/strata.hpp"
#include "torsep/verdict.hpp"

namespace torsep {

namespace detail {

inline std::size_t first_other(std::size_t i) { return i == 0 ? 1 : 0; }

}  // namespace detail

/// Affine SP: holds iff every chi_i and every -chi_i lies outside the cone of
/// the remaining characters.
inline Verdict decide_affine_sp(const WeightSystem& ws) {
  const std::size_t n = ws.size();
  Verdict v{Property::sp, Mode::affine, true, "theorem", VacuousCase{}, {}};
  if (n == 1) {
    v.notes.push_back("n = 1: holds vacuously");
    return v;
  }
  const IntMatrix a = ws.matrix();
  SpEvidence evidence;
  for (std::size_t i = 0; i < n; ++i) {
    EdgeTest et = edge_test(ws, i);
    if (et.excludes_vector() && et.excludes_negation()) {
      evidence.edges.push_back(EdgeWitness{i, et.direct.separator, et.opposite.separator});
      continue;
    }
    const bool negated = !et.excludes_negation() && et.excludes_vector();
    const RatVector& partial = negated ? et.opposite.coefficients : et.direct.coefficients;
    SpFailure f;
    f.index = i;
    f.negated = negated;
    f.coefficients.assign(n, Rational(0));
    for (std::size_t k = 0, slot = 0; k < n; ++k)
      if (k != i) f.coefficients[k] = partial[slot++];

    // m chi_i = sum mu_k chi_k; with mu != 0 some x_j = 0 forces x_i = 0,
    // otherwise chi_i is a torsion relation and x_i never vanishes.
    Integer l = 1;
    for (const auto& c : f.coefficients) l = lcm(l, Integer(c.get_den()));
    IntVector relation(n);
    std::size_t from = n;
    for (std::size_t k = 0; k < n; ++k) {
      Integer mu = Integer(f.coefficients[k].get_num()) * (l / f.coefficients[k].get_den());
      relation[k] = negated ? mu : -mu;
      if (mu > 0 && from == n) from = k;
    }
    relation[i] = l;
    if (!negated && from != n) {
      f.pair = implication_from_relation(relation, from, i, a);
    } else {
      f.pair = implication_from_relation(relation, i, detail::first_other(i), a);
    }
    v.holds = false;
    v.certificate = std::move(f);
    return v;
  }
  v.certificate = std::move(evidence);
  return v;
}

/// Affine WSP: K pointed and the minimal faces of the characters pairwise
/// distinct.
inline Verdict decide_affine_wsp(const WeightSystem& ws) {
  const std::size_t n = ws.size();
  Verdict v{Property::wsp, Mode::affine, true, "theorem", VacuousCase{}, {}};
  if (n == 1) {
    v.notes.push_back("n = 1: holds vacuously");
    return v;
  }
  const IntMatrix a = ws.matrix();
  StrictConvexity sc = is_strictly_convex(ws);
  if (!sc.pointed) {
    std::size_t first = n, second = n;
    for (std::size_t k = 0; k < n; ++k) {
      if (sc.relation[k] == 0) continue;
      if (first == n) first = k;
      else if (second == n) second = k;
    }
    Binomial unit = Binomial::from_lattice_vector(sc.relation);
    WspFailure f{"weight cone contains a line", Implication{first, second, unit}, Implication{second, first, unit}};
    v.holds = false;
    v.certificate = std::move(f);
    return v;
  }
  std::vector<MinimalFace> faces;
  faces.reserve(n);
  for (std::size_t i = 0; i < n; ++i) faces.push_back(minimal_face(ws, i));

  WspEvidence evidence{sc.functional, {}};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (faces[i].members == faces[j].members) {
        auto find_imp = [](const MinimalFace& mf, std::size_t from) {
          for (const auto& imp : mf.member_evidence)
            if (imp.from == from) return imp;
          throw InternalError("missing implication for a minimal-face member");
        };
        v.holds = false;
        v.certificate = WspFailure{"characters share a minimal face", find_imp(faces[j], i), find_imp(faces[i], j)};
        return v;
      }
      auto pick = [](const MinimalFace& mf, std::size_t off) -> const FaceSeparator* {
        for (const auto& s : mf.outside_evidence)
          if (s.off_face == off) return &s;
        return nullptr;
      };
      const FaceSeparator* sep = pick(faces[i], j);
      if (!sep) sep = pick(faces[j], i);
      if (!sep) throw InternalError("distinct minimal faces without a separating functional");
      evidence.separators.push_back(*sep);
    }
  }
  v.certificate = std::move(evidence);
  return v;
}

/// Rational u with u . chi_i = 1 for all i, when one exists: the orbit
/// closure is then stable under scalar multiplication.
struct ConeHypothesis {
  bool holds = false;
  RatVector functional;
  RatVector refutation;  ///< y with sum y_i chi_i = 0 and sum y_i > 0
};

inline ConeHypothesis check_cone_hypothesis(const WeightSystem& ws) {
  LinearSystem sys;
  sys.num_vars = ws.dim();
  for (const auto& w : ws.weights()) sys.add_equality(to_rational(w), 1);
  auto res = lp_feasible(sys);
  if (res.feasible()) return ConeHypothesis{true, res.solution, {}};
  return ConeHypothesis{false, {}, res.certificate};
}

namespace detail {

inline Verdict ssp_verdict(const WeightSystem& ws, const RatVector& cone_functional, std::size_t max_n) {
  Verdict v{Property::ssp, Mode::affine, true, "theorem", VacuousCase{}, {}};
  const IntMatrix a = ws.matrix();
  const std::size_t r = rank(a);
  if (r == ws.size()) {
    v.certificate = SspEvidence{cone_functional, independent_rows(a)};
    return v;
  }
  v.holds = false;
  SspFailure f{cone_functional, kernel_lattice(a).basis.front(), std::nullopt};
  if (ws.size() <= max_n) {
    f.coordinate_witness = ssp_coordinate_witness(ws, max_n);
  } else {
    v.notes.push_back("coordinate witness skipped: n exceeds max-n");
  }
  v.certificate = std::move(f);
  return v;
}

}  // namespace detail

/// Affine SSP for cone-type orbit closures: holds iff the characters are
/// linearly independent. Throws HypothesisError when X is not a cone.
inline Verdict decide_affine_ssp(const WeightSystem& ws, std::size_t max_n = kDefaultMaxN) {
  ConeHypothesis hyp = check_cone_hypothesis(ws);
  if (!hyp.holds)
    throw HypothesisError("orbit closure is not a cone: no u with u.chi_i = 1 for all i (refutation " +
                          to_string_vec(hyp.refutation) + ")");
  Verdict v = detail::ssp_verdict(ws, hyp.functional, max_n);
  v.notes.insert(v.notes.begin(), "SSP cone hypothesis verified: u = " + to_string_vec(hyp.functional));
  return v;
}

inline Verdict decide_projective_sp(const WeightSystem& ws) {
  Verdict v = decide_affine_sp(homogenize(ws));
  v.mode = Mode::projective;
  v.notes.push_back("functionals act on (chi, 1): last entry is the affine constant");
  return v;
}

inline Verdict decide_projective_wsp(const WeightSystem& ws) {
  Verdict v = decide_affine_wsp(homogenize(ws));
  v.mode = Mode::projective;
  v.notes.push_back("functionals act on (chi, 1): last entry is the affine constant");
  return v;
}

/// Projective SSP: holds iff the characters are affinely independent.
inline Verdict decide_projective_ssp(const WeightSystem& ws, std::size_t max_n = kDefaultMaxN) {
  std::vector<IntVector> diffs;
  for (std::size_t i = 1; i < ws.size(); ++i) diffs.push_back(ws[i] - ws[0]);
  const bool independent = rank_of_vectors(diffs, ws.dim()) == diffs.size();

  const WeightSystem lifted = homogenize(ws);
  RatVector unit(lifted.dim());
  unit.back() = 1;
  Verdict v = detail::ssp_verdict(lifted, unit, max_n);
  if (v.holds != independent) throw InternalError("affine independence disagrees with homogenized rank");
  v.mode = Mode::projective;
  return v;
}

}  // namespace torsep
