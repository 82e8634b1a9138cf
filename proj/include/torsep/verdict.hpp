#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "torsep/certificate.hpp"
#include "torsep/cone.hpp"
#include "torsep/linalg.hpp"
#include "torsep/number.hpp"

namespace torsep {

enum class Property { sp, wsp, ssp };
enum class Mode { affine, projective };

inline std::string to_string(Property p) {
  switch (p) {
    case Property::sp: return "SP";
    case Property::wsp: return "WSP";
    case Property::ssp: return "SSP";
  }
  return "?";
}

inline std::string to_string(Mode m) { return m == Mode::affine ? "affine" : "projective"; }

/// One-dimensional ambient space: no pair of independent forms exists.
struct VacuousCase {
  bool operator==(const VacuousCase&) const = default;
};

/// Separating functionals for chi_i and -chi_i against the other characters.
struct EdgeWitness {
  std::size_t index = 0;
  IntVector excludes_vector;    ///< >= 0 on the others, < 0 on chi_i
  IntVector excludes_negation;  ///< >= 0 on the others, > 0 on chi_i

  bool operator==(const EdgeWitness&) const = default;
};

struct SpEvidence {
  std::vector<EdgeWitness> edges;
  bool operator==(const SpEvidence&) const = default;
};

/// chi_i (or -chi_i when `negated`) is a nonnegative combination of the other
/// characters; `coefficients` has one entry per character, zero at `index`.
struct SpFailure {
  std::size_t index = 0;
  bool negated = false;
  RatVector coefficients;
  Implication pair;

  bool operator==(const SpFailure&) const = default;
};

struct WspEvidence {
  IntVector pointed_functional;
  std::vector<FaceSeparator> separators;  ///< one per unordered pair
  bool operator==(const WspEvidence&) const = default;
};

/// H_first and H_second cut X in the same set.
struct WspFailure {
  std::string reason;
  Implication forward;   ///< first -> second
  Implication backward;  ///< second -> first
  bool operator==(const WspFailure&) const = default;
};

/// Pair of coordinates whose common zero set meets X in codimension <= 1,
/// realized by a single stratum avoiding both.
struct CoordinateWitness {
  std::size_t first = 0;
  std::size_t second = 0;
  ConeFace stratum;
  std::size_t stratum_dim = 0;
  std::size_t variety_dim = 0;
  bool operator==(const CoordinateWitness&) const = default;
};

struct SspEvidence {
  RatVector cone_functional;  ///< u . chi_i = 1 for all i
  IndexSet minor_rows;        ///< rows of the weight matrix with a nonzero n x n minor
  bool operator==(const SspEvidence&) const = default;
};

struct SspFailure {
  RatVector cone_functional;
  IntVector kernel_vector;
  std::optional<CoordinateWitness> coordinate_witness;
  bool operator==(const SspFailure&) const = default;
};

/// Stratum scan: the face-indexed strata of X and, on failure, the pair found.
struct StrataEvidence {
  std::vector<ConeFace> strata;
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  bool operator==(const StrataEvidence&) const = default;
};

using Certificate = std::variant<VacuousCase, SpEvidence, SpFailure, WspEvidence, WspFailure, SspEvidence,
                                 SspFailure, StrataEvidence>;

struct Verdict {
  Property property = Property::sp;
  Mode mode = Mode::affine;
  bool holds = false;
  std::string route = "theorem";  ///< "theorem" or "oracle"
  Certificate certificate;
  std::vector<std::string> notes;

  bool operator==(const Verdict&) const = default;
};

// ---------------------------------------------------------------------------
// Verification

namespace detail {

inline bool verify_edge(const EdgeWitness& e, const WeightSystem& ws) {
  if (e.index >= ws.size() || e.excludes_vector.size() != ws.dim() || e.excludes_negation.size() != ws.dim())
    return false;
  for (std::size_t k = 0; k < ws.size(); ++k) {
    if (k == e.index) continue;
    if (dot(e.excludes_vector, ws[k]) < 0 || dot(e.excludes_negation, ws[k]) < 0) return false;
  }
  return dot(e.excludes_vector, ws[e.index]) < 0 && dot(e.excludes_negation, ws[e.index]) > 0;
}

inline bool verify_coordinate_witness(const CoordinateWitness& w, const WeightSystem& ws) {
  if (w.first == w.second || w.first >= ws.size() || w.second >= ws.size()) return false;
  if (!verify_face(w.stratum, ws)) return false;
  if (contains(w.stratum.indices, w.first) || contains(w.stratum.indices, w.second)) return false;
  std::vector<IntVector> on;
  for (auto k : w.stratum.indices) on.push_back(ws[k]);
  if (rank_of_vectors(on, ws.dim()) != w.stratum_dim) return false;
  if (rank(ws.matrix()) != w.variety_dim) return false;
  return w.stratum_dim + 1 >= w.variety_dim;
}

inline bool verify_cone_functional(const RatVector& u, const WeightSystem& ws) {
  if (u.size() != ws.dim()) return false;
  return std::all_of(ws.weights().begin(), ws.weights().end(), [&](const IntVector& w) { return dot(u, w) == 1; });
}

inline bool sp_pair_holds_on(const std::vector<ConeFace>& strata, std::size_t from, std::size_t to) {
  return std::all_of(strata.begin(), strata.end(), [&](const ConeFace& s) {
    return contains(s.indices, from) || !contains(s.indices, to);
  });
}

inline bool wsp_pair_holds_on(const std::vector<ConeFace>& strata, std::size_t a, std::size_t b) {
  return std::all_of(strata.begin(), strata.end(),
                     [&](const ConeFace& s) { return contains(s.indices, a) == contains(s.indices, b); });
}

}  // namespace detail

/// The weights a verdict's certificate speaks about: the input for affine
/// verdicts and its homogenization for projective ones.
inline WeightSystem certificate_weights(const Verdict& v, const WeightSystem& ws) {
  return v.mode == Mode::projective ? homogenize(ws) : ws;
}

/// Re-checks a verdict's certificate against the input weights using exact
/// arithmetic only.
inline bool verify_verdict(const Verdict& v, const WeightSystem& input) {
  const WeightSystem ws = certificate_weights(v, input);
  const IntMatrix a = ws.matrix();
  const std::size_t n = ws.size();
  return std::visit(
      [&](const auto& c) -> bool {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, VacuousCase>) {
          return n == 1 && v.holds;
        } else if constexpr (std::is_same_v<C, SpEvidence>) {
          if (!v.holds || v.property != Property::sp || c.edges.size() != n) return false;
          for (std::size_t i = 0; i < n; ++i)
            if (c.edges[i].index != i || !detail::verify_edge(c.edges[i], ws)) return false;
          return true;
        } else if constexpr (std::is_same_v<C, SpFailure>) {
          if (v.holds || v.property != Property::sp || c.index >= n || c.coefficients.size() != n) return false;
          if (c.coefficients[c.index] != 0) return false;
          RatVector sum(ws.dim());
          for (std::size_t k = 0; k < n; ++k) {
            if (c.coefficients[k] < 0) return false;
            for (std::size_t r = 0; r < ws.dim(); ++r) sum[r] += c.coefficients[k] * ws[k][r];
          }
          for (std::size_t r = 0; r < ws.dim(); ++r)
            if (sum[r] != (c.negated ? Rational(-ws[c.index][r]) : Rational(ws[c.index][r]))) return false;
          return verify_implication(c.pair, a);
        } else if constexpr (std::is_same_v<C, WspEvidence>) {
          if (!v.holds || v.property != Property::wsp) return false;
          if (!verify_strict_convexity(StrictConvexity{true, c.pointed_functional, {}}, ws)) return false;
          std::vector<std::vector<bool>> seen(n, std::vector<bool>(n, false));
          for (const auto& s : c.separators) {
            if (!verify_separator(s, a)) return false;
            seen[std::min(s.on_face, s.off_face)][std::max(s.on_face, s.off_face)] = true;
          }
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
              if (!seen[i][j]) return false;
          return true;
        } else if constexpr (std::is_same_v<C, WspFailure>) {
          if (v.holds || v.property != Property::wsp) return false;
          return c.forward.from == c.backward.to && c.forward.to == c.backward.from &&
                 verify_implication(c.forward, a) && verify_implication(c.backward, a);
        } else if constexpr (std::is_same_v<C, SspEvidence>) {
          if (!v.holds || v.property != Property::ssp) return false;
          if (!detail::verify_cone_functional(c.cone_functional, ws)) return false;
          if (c.minor_rows.size() != n) return false;
          for (auto r : c.minor_rows)
            if (r >= ws.dim()) return false;
          return determinant(select_rows(a, c.minor_rows)) != 0;
        } else if constexpr (std::is_same_v<C, SspFailure>) {
          if (v.holds || v.property != Property::ssp) return false;
          if (!detail::verify_cone_functional(c.cone_functional, ws)) return false;
          if (c.kernel_vector.size() != n || is_zero(c.kernel_vector) || !is_zero(a * c.kernel_vector)) return false;
          return !c.coordinate_witness || detail::verify_coordinate_witness(*c.coordinate_witness, ws);
        } else {
          for (const auto& s : c.strata)
            if (!verify_face(s, ws)) return false;
          if (n == 1) return v.holds;
          if (v.property == Property::sp) {
            if (c.pair) return !v.holds && c.pair->first != c.pair->second &&
                               detail::sp_pair_holds_on(c.strata, c.pair->first, c.pair->second);
            for (std::size_t f = 0; f < n; ++f)
              for (std::size_t t = 0; t < n; ++t)
                if (f != t && detail::sp_pair_holds_on(c.strata, f, t)) return false;
            return v.holds;
          }
          if (v.property == Property::wsp) {
            if (c.pair) return !v.holds && c.pair->first != c.pair->second &&
                               detail::wsp_pair_holds_on(c.strata, c.pair->first, c.pair->second);
            for (std::size_t f = 0; f < n; ++f)
              for (std::size_t t = f + 1; t < n; ++t)
                if (detail::wsp_pair_holds_on(c.strata, f, t)) return false;
            return v.holds;
          }
          return false;
        }
      },
      v.certificate);
}

// ---------------------------------------------------------------------------
// Index relabeling: perm[old] = new.

namespace detail {

inline IntVector permute_vector(const IntVector& v, const std::vector<std::size_t>& perm) {
  IntVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[perm[i]] = v[i];
  return out;
}

inline RatVector permute_vector(const RatVector& v, const std::vector<std::size_t>& perm) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[perm[i]] = v[i];
  return out;
}

inline IndexSet permute_set(const IndexSet& s, const std::vector<std::size_t>& perm) {
  IndexSet out;
  for (auto i : s) out.push_back(perm[i]);
  std::sort(out.begin(), out.end());
  return out;
}

inline Implication permute_implication(const Implication& imp, const std::vector<std::size_t>& perm) {
  return Implication{perm[imp.from], perm[imp.to],
                     Binomial::from_lattice_vector(permute_vector(imp.witness.lattice_vector(), perm))};
}

}  // namespace detail

/// Relabels every coordinate index in a verdict's certificate.
inline Verdict permute_indices(Verdict v, const std::vector<std::size_t>& perm) {
  std::visit(
      [&](auto& c) {
        using C = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<C, SpEvidence>) {
          for (auto& e : c.edges) e.index = perm[e.index];
          std::sort(c.edges.begin(), c.edges.end(),
                    [](const EdgeWitness& x, const EdgeWitness& y) { return x.index < y.index; });
        } else if constexpr (std::is_same_v<C, SpFailure>) {
          c.index = perm[c.index];
          c.coefficients = detail::permute_vector(c.coefficients, perm);
          c.pair = detail::permute_implication(c.pair, perm);
        } else if constexpr (std::is_same_v<C, WspEvidence>) {
          for (auto& s : c.separators) {
            s.on_face = perm[s.on_face];
            s.off_face = perm[s.off_face];
          }
        } else if constexpr (std::is_same_v<C, WspFailure>) {
          c.forward = detail::permute_implication(c.forward, perm);
          c.backward = detail::permute_implication(c.backward, perm);
        } else if constexpr (std::is_same_v<C, SspFailure>) {
          c.kernel_vector = detail::permute_vector(c.kernel_vector, perm);
          if (c.coordinate_witness) {
            auto& w = *c.coordinate_witness;
            w.first = perm[w.first];
            w.second = perm[w.second];
            w.stratum.indices = detail::permute_set(w.stratum.indices, perm);
          }
        } else if constexpr (std::is_same_v<C, StrataEvidence>) {
          for (auto& s : c.strata) s.indices = detail::permute_set(s.indices, perm);
          std::sort(c.strata.begin(), c.strata.end(),
                    [](const ConeFace& x, const ConeFace& y) { return face_order(x.indices, y.indices); });
          if (c.pair) c.pair = std::make_pair(perm[c.pair->first], perm[c.pair->second]);
        }
      },
      v.certificate);
  return v;
}

}  // namespace torsep
