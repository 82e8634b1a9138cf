#pragma once

// Brute-force reference computations used only by the tests. None of these
// call into the library's linear algebra or LP code.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "torsep/torsep.hpp"

namespace oracle {

using torsep::Integer;
using torsep::IntVector;
using torsep::Rational;
using torsep::RatVector;
using torsep::WeightSystem;

inline WeightSystem ws(std::size_t d, std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> w;
  for (auto r : rows) w.push_back(torsep::int_vector(r));
  return WeightSystem(d, std::move(w));
}

inline WeightSystem random_weights(std::mt19937_64& rng, std::size_t d, std::size_t n, long lo, long hi) {
  std::uniform_int_distribution<long> pick(lo, hi);
  std::vector<IntVector> w(n, IntVector(d));
  for (auto& v : w)
    for (auto& x : v) x = pick(rng);
  return WeightSystem(d, std::move(w));
}

/// Calls f on every integer vector in [-bound, bound]^n.
inline void for_each_box_vector(std::size_t n, long bound, const std::function<void(const IntVector&)>& f) {
  IntVector c(n, Integer(-bound));
  for (;;) {
    f(c);
    std::size_t k = 0;
    while (k < n && c[k] == bound) c[k++] = -bound;
    if (k == n) return;
    ++c[k];
  }
}

inline bool in_kernel(const WeightSystem& w, const IntVector& c) {
  for (std::size_t r = 0; r < w.dim(); ++r) {
    Integer s = 0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i][r] * c[i];
    if (s != 0) return false;
  }
  return true;
}

inline std::vector<IntVector> kernel_vectors(const WeightSystem& w, long bound) {
  std::vector<IntVector> out;
  for_each_box_vector(w.size(), bound, [&](const IntVector& c) {
    if (in_kernel(w, c)) out.push_back(c);
  });
  return out;
}

/// Leibniz expansion over all permutations.
inline Rational leibniz_det(const std::vector<RatVector>& m) {
  const std::size_t n = m.size();
  std::vector<std::size_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = i;
  Rational total = 0;
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (p[i] > p[j]) ++inversions;
    Rational term = inversions % 2 ? -1 : 1;
    for (std::size_t i = 0; i < n; ++i) term *= m[i][p[i]];
    total += term;
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

/// Rank as the size of the largest nonvanishing minor.
inline std::size_t minor_rank(const std::vector<IntVector>& rows, std::size_t cols) {
  const std::size_t r = rows.size();
  for (std::size_t k = std::min(r, cols); k > 0; --k) {
    std::vector<bool> rs(r, false), cs(cols, false);
    std::fill(rs.begin(), rs.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::fill(cs.begin(), cs.end(), false);
      std::fill(cs.begin(), cs.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        std::vector<RatVector> m;
        for (std::size_t i = 0; i < r; ++i) {
          if (!rs[i]) continue;
          RatVector row;
          for (std::size_t j = 0; j < cols; ++j)
            if (cs[j]) row.push_back(Rational(rows[i][j]));
          m.push_back(row);
        }
        if (leibniz_det(m) != 0) return k;
      } while (std::prev_permutation(cs.begin(), cs.end()));
    } while (std::prev_permutation(rs.begin(), rs.end()));
  }
  return 0;
}

/// v in cone(gens) by Caratheodory: some linearly independent subset of the
/// generators expresses v with nonnegative coefficients, found by Cramer's rule
/// on a nonsingular square subsystem.
inline bool cramer_cone_member(const IntVector& v, const std::vector<IntVector>& gens) {
  const std::size_t d = v.size();
  if (torsep::is_zero(v)) return true;
  const std::size_t g = gens.size();
  for (std::size_t k = 1; k <= std::min(g, d); ++k) {
    std::vector<bool> pick(g, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(k), true);
    do {
      std::vector<std::size_t> sel;
      for (std::size_t i = 0; i < g; ++i)
        if (pick[i]) sel.push_back(i);
      std::vector<bool> rows(d, false);
      std::fill(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(k), true);
      do {
        std::vector<std::size_t> rsel;
        for (std::size_t r = 0; r < d; ++r)
          if (rows[r]) rsel.push_back(r);
        std::vector<RatVector> m(k, RatVector(k));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) m[a][b] = gens[sel[b]][rsel[a]];
        const Rational det = leibniz_det(m);
        if (det == 0) continue;
        RatVector x(k);
        for (std::size_t b = 0; b < k; ++b) {
          auto mb = m;
          for (std::size_t a = 0; a < k; ++a) mb[a][b] = v[rsel[a]];
          x[b] = leibniz_det(mb) / det;
        }
        bool ok = std::all_of(x.begin(), x.end(), [](const Rational& q) { return q >= 0; });
        for (std::size_t r = 0; ok && r < d; ++r) {
          Rational s = 0;
          for (std::size_t b = 0; b < k; ++b) s += x[b] * gens[sel[b]][r];
          ok = s == v[r];
        }
        if (ok) return true;
        break;  // one nonsingular square subsystem determines x
      } while (std::prev_permutation(rows.begin(), rows.end()));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return false;
}

/// Zero sets {i : gamma.chi_i = 0} of all functionals gamma in a box that are
/// nonnegative on every character.
inline std::set<torsep::IndexSet> box_faces(const WeightSystem& w, long bound) {
  std::set<torsep::IndexSet> out;
  for_each_box_vector(w.dim(), bound, [&](const IntVector& g) {
    torsep::IndexSet zero;
    for (std::size_t i = 0; i < w.size(); ++i) {
      Integer s = torsep::dot(g, w[i]);
      if (s < 0) return;
      if (s == 0) zero.push_back(i);
    }
    out.insert(zero);
  });
  return out;
}

/// Random element of GL(d, Z) from elementary moves.
inline std::vector<IntVector> random_unimodular(std::mt19937_64& rng, std::size_t d) {
  std::vector<IntVector> u(d, IntVector(d));
  for (std::size_t i = 0; i < d; ++i) u[i][i] = 1;
  if (d < 2) {
    if (rng() % 2) u[0][0] = -1;
    return u;
  }
  std::uniform_int_distribution<std::size_t> idx(0, d - 1);
  std::uniform_int_distribution<long> mult(-2, 2);
  for (int step = 0; step < 6; ++step) {
    std::size_t a = idx(rng), b = idx(rng);
    if (a == b) {
      for (auto& x : u[a]) x = -x;
      continue;
    }
    const long m = mult(rng);
    for (std::size_t c = 0; c < d; ++c) u[a][c] += m * u[b][c];
  }
  return u;
}

inline WeightSystem transform(const WeightSystem& w, const std::vector<IntVector>& u) {
  std::vector<IntVector> out;
  for (const auto& chi : w.weights()) {
    IntVector v(w.dim());
    for (std::size_t r = 0; r < w.dim(); ++r) v[r] = torsep::dot(u[r], chi);
    out.push_back(v);
  }
  return WeightSystem(w.dim(), out);
}

inline WeightSystem permute(const WeightSystem& w, const std::vector<std::size_t>& perm) {
  std::vector<IntVector> out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[perm[i]] = w[i];
  return WeightSystem(w.dim(), out);
}

}  // namespace oracle
