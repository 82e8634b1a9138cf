#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "torsep/cone.hpp"
#include "torsep/linalg.hpp"
#include "torsep/verdict.hpp"

namespace torsep {

/// Torus orbit in the orbit closure X indexed by a face of K: coordinate i is
/// nonzero on it exactly when i belongs to the face's index set.
struct Stratum {
  ConeFace face;
  std::size_t dimension = 0;

  bool nonzero(std::size_t i) const { return contains(face.indices, i); }
  bool operator==(const Stratum&) const = default;
};

inline std::size_t face_rank(const WeightSystem& ws, const IndexSet& s) {
  std::vector<IntVector> on;
  for (auto k : s) on.push_back(ws[k]);
  return rank_of_vectors(on, ws.dim());
}

/// One stratum per face of K, in canonical face order.
inline std::vector<Stratum> strata(const WeightSystem& ws, std::size_t max_n = kDefaultMaxN) {
  std::vector<Stratum> out;
  for (auto& f : enumerate_faces(ws, max_n).faces) {
    std::size_t dim = face_rank(ws, f.indices);
    out.push_back(Stratum{std::move(f), dim});
  }
  return out;
}

namespace detail {

inline std::vector<ConeFace> faces_of(const std::vector<Stratum>& st) {
  std::vector<ConeFace> out;
  for (const auto& s : st) out.push_back(s.face);
  return out;
}

}  // namespace detail

/// Ordered pairs (i, j) with x_i = 0 forcing x_j = 0 on X, read off the
/// strata. Includes the diagonal; sorted.
inline std::vector<std::pair<std::size_t, std::size_t>> characteristic_pairs(const WeightSystem& ws,
                                                                             std::size_t max_n = kDefaultMaxN) {
  const auto st = strata(ws, max_n);
  const auto faces = detail::faces_of(st);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < ws.size(); ++i)
    for (std::size_t j = 0; j < ws.size(); ++j)
      if (i == j || detail::sp_pair_holds_on(faces, i, j)) pairs.emplace_back(i, j);
  return pairs;
}

/// SP from vanishing patterns alone: fails iff some x_from = 0 forces
/// x_to = 0 (vacuously so when x_from never vanishes on X).
inline Verdict oracle_sp(const WeightSystem& ws, std::size_t max_n = kDefaultMaxN) {
  Verdict v{Property::sp, Mode::affine, true, "oracle", VacuousCase{}, {}};
  if (ws.size() == 1) {
    v.notes.push_back("n = 1: holds vacuously");
    return v;
  }
  StrataEvidence ev{detail::faces_of(strata(ws, max_n)), std::nullopt};
  for (std::size_t from = 0; from < ws.size() && !ev.pair; ++from)
    for (std::size_t to = 0; to < ws.size(); ++to)
      if (from != to && detail::sp_pair_holds_on(ev.strata, from, to)) {
        ev.pair = std::make_pair(from, to);
        break;
      }
  v.holds = !ev.pair;
  v.certificate = std::move(ev);
  return v;
}

/// WSP from vanishing patterns: fails iff two coordinates vanish on exactly
/// the same strata.
inline Verdict oracle_wsp(const WeightSystem& ws, std::size_t max_n = kDefaultMaxN) {
  Verdict v{Property::wsp, Mode::affine, true, "oracle", VacuousCase{}, {}};
  if (ws.size() == 1) {
    v.notes.push_back("n = 1: holds vacuously");
    return v;
  }
  StrataEvidence ev{detail::faces_of(strata(ws, max_n)), std::nullopt};
  for (std::size_t a = 0; a < ws.size() && !ev.pair; ++a)
    for (std::size_t b = a + 1; b < ws.size(); ++b)
      if (detail::wsp_pair_holds_on(ev.strata, a, b)) {
        ev.pair = std::make_pair(a, b);
        break;
      }
  v.holds = !ev.pair;
  v.certificate = std::move(ev);
  return v;
}

/// First coordinate pair (lexicographic) whose joint zero set meets X in
/// codimension <= 1, with the largest stratum avoiding both.
inline std::optional<CoordinateWitness> ssp_coordinate_witness(const WeightSystem& ws,
                                                               std::size_t max_n = kDefaultMaxN) {
  const auto st = strata(ws, max_n);
  const std::size_t dim_x = rank(ws.matrix());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    for (std::size_t j = i + 1; j < ws.size(); ++j) {
      const Stratum* best = nullptr;
      for (const auto& s : st) {
        if (s.nonzero(i) || s.nonzero(j)) continue;
        if (!best || s.dimension > best->dimension) best = &s;
      }
      if (best && best->dimension + 1 >= dim_x) return CoordinateWitness{i, j, best->face, best->dimension, dim_x};
    }
  }
  return std::nullopt;
}

}  // namespace torsep
