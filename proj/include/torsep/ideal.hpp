#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "torsep/binomial.hpp"
#include "torsep/cone.hpp"
#include "torsep/error.hpp"
#include "torsep/linalg.hpp"
#include "torsep/number.hpp"

namespace torsep {

/// Sign pattern D_I: coordinates in `nonnegative` are >= 0, the rest <= 0.
struct Octant {
  std::size_t size = 0;
  IndexSet nonnegative;

  static Octant from_mask(std::size_t n, std::uint64_t mask) {
    Octant o{n, {}};
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1U) o.nonnegative.push_back(k);
    return o;
  }

  bool admits(const IntVector& c) const {
    for (std::size_t k = 0; k < size; ++k) {
      if (contains(nonnegative, k) ? c[k] < 0 : c[k] > 0) return false;
    }
    return true;
  }
};

/// Limit on the number of lattice points enumerated in one parallelepiped.
inline constexpr unsigned long kMaxParallelepipedVolume = 1UL << 20;

namespace detail {

inline IntVector embed(const IntVector& partial, const IndexSet& support, std::size_t n) {
  IntVector out(n);
  for (std::size_t k = 0; k < support.size(); ++k) out[support[k]] = partial[k];
  return out;
}

// Z-basis of Z^n intersected with the rational span of `vectors`.
inline LatticeBasis saturation(const std::vector<IntVector>& vectors, std::size_t n) {
  LatticeBasis normals = kernel_lattice(IntMatrix::from_rows(vectors, n));
  return kernel_lattice(IntMatrix::from_rows(normals.basis, n));
}

inline Rational frac(const Rational& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return q - f;
}

// Nonzero lattice points of `lattice` in the half-open parallelepiped spanned
// by the linearly independent vectors `gens`, which span the lattice's space.
inline void parallelepiped_points(const std::vector<IntVector>& gens, const LatticeBasis& lattice,
                                  std::vector<IntVector>& out) {
  const std::size_t r = gens.size();
  const std::size_t n = lattice.ambient_dim;
  std::vector<IntVector> coords;
  for (const auto& g : gens) {
    auto c = lattice_coordinates(lattice, g);
    if (!c) throw InternalError("ray outside its saturated lattice");
    coords.push_back(*c);
  }
  // columns of m are the generator coordinates; rows of m^T span m Z^r
  IntMatrix m = IntMatrix::from_columns(coords, r);
  auto h = hermite_normal_form(coords, r);
  if (h.size() != r) throw InternalError("parallelepiped generators are dependent");
  unsigned long volume = 1;
  for (std::size_t k = 0; k < r; ++k) {
    if (!h[k][k].fits_ulong_p() || h[k][k].get_ui() > kMaxParallelepipedVolume / volume)
      throw ResourceError("volume", "parallelepiped has more than " + std::to_string(kMaxParallelepipedVolume) +
                                        " lattice points");
    volume *= h[k][k].get_ui();
  }
  if (volume == 1) return;
  IntVector y(r);
  for (;;) {
    auto s = solve_full_column_rank(m, to_rational(y));
    if (!s) throw InternalError("coset representative not in the span");
    RatVector point(n);
    for (std::size_t j = 0; j < r; ++j) {
      Rational f = frac((*s)[j]);
      if (f == 0) continue;
      for (std::size_t k = 0; k < n; ++k) point[k] += f * gens[j][k];
    }
    if (!is_zero(point)) {
      IntVector c;
      for (const auto& q : point) {
        if (q.get_den() != 1) throw InternalError("parallelepiped point is not integral");
        c.push_back(Integer(q.get_num()));
      }
      out.push_back(std::move(c));
    }
    std::size_t k = 0;
    while (k < r) {
      if (++y[k] < h[k][k]) break;
      y[k] = 0;
      ++k;
    }
    if (k == r) break;
  }
}

inline void sort_unique(std::vector<IntVector>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace detail

/// Primitive vectors of minimal support in the rational span of W, both signs,
/// sorted. These are the extreme rays of W_Q intersected with any octant.
inline std::vector<IntVector> elementary_vectors(const LatticeBasis& w, std::size_t max_n = kDefaultMaxN) {
  const std::size_t n = w.ambient_dim;
  if (w.basis.empty()) return {};
  check_guard(n, std::min<std::size_t>(max_n, 62), "elementary vector search");
  const IntMatrix normals = IntMatrix::from_rows(kernel_lattice(IntMatrix::from_rows(w.basis, n)).basis, n);
  std::vector<IntVector> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    IndexSet support;
    for (std::size_t k = 0; k < n; ++k)
      if (mask >> k & 1U) support.push_back(k);
    if (support.size() > normals.rows() + 1) continue;
    LatticeBasis local = kernel_lattice(select_columns(normals, support));
    if (local.rank() != 1) continue;
    const IntVector& v = local.basis.front();
    if (std::any_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; })) continue;
    IntVector c = detail::embed(v, support, n);
    out.push_back(negated(c));
    out.push_back(std::move(c));
  }
  detail::sort_unique(out);
  return out;
}

/// Finite generating set of the semigroup W intersected with the octant: the
/// extreme rays plus the lattice points of the half-open parallelepipeds of
/// every linearly independent spanning subset of rays.
inline std::vector<IntVector> octant_semigroup_generators(const LatticeBasis& w, const Octant& octant,
                                                          const std::vector<IntVector>& elementary) {
  if (octant.size != w.ambient_dim) throw InputError("octant size does not match the lattice");
  std::vector<IntVector> rays;
  for (const auto& e : elementary)
    if (octant.admits(e)) rays.push_back(e);
  if (rays.empty()) return {};
  const std::size_t n = w.ambient_dim;
  const LatticeBasis span = detail::saturation(rays, n);
  const std::size_t r = span.rank();
  std::vector<IntVector> out = rays;
  if (r >= 2) {
    std::vector<bool> pick(rays.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(r), true);
    do {
      std::vector<IntVector> gens;
      for (std::size_t k = 0; k < rays.size(); ++k)
        if (pick[k]) gens.push_back(rays[k]);
      if (rank_of_vectors(gens, n) == r) detail::parallelepiped_points(gens, span, out);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  detail::sort_unique(out);
  return out;
}

inline std::vector<IntVector> octant_semigroup_generators(const LatticeBasis& w, const Octant& octant,
                                                          std::size_t max_n = kDefaultMaxN) {
  return octant_semigroup_generators(w, octant, elementary_vectors(w, max_n));
}

/// Binomials x^{c+} - x^{c-} over all octant generators c, canonical and
/// sorted. They generate the toric ideal of the orbit closure.
inline std::vector<Binomial> binomial_generators(const WeightSystem& ws, std::size_t max_n = kDefaultMaxN) {
  const std::size_t n = ws.size();
  check_guard(n, std::min<std::size_t>(max_n, 62), "octant enumeration");
  const IntMatrix a = ws.matrix();
  const LatticeBasis w = kernel_lattice(a);
  const auto elementary = elementary_vectors(w, max_n);
  std::vector<Binomial> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    for (const auto& c : octant_semigroup_generators(w, Octant::from_mask(n, mask), elementary)) {
      Binomial b = Binomial::from_lattice_vector(c);
      if (!b.in_kernel(a)) throw InternalError("generator binomial does not vanish on the orbit closure");
      out.push_back(std::move(b));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// True when the lattice vectors of the binomials Z-span exactly the kernel
/// lattice of the weights.
inline bool spans_kernel(const std::vector<Binomial>& binomials, const WeightSystem& ws) {
  std::vector<IntVector> vecs;
  for (const auto& b : binomials) vecs.push_back(b.lattice_vector());
  return hermite_normal_form(vecs, ws.size()) == kernel_lattice(ws.matrix()).basis;
}

// ---------------------------------------------------------------------------
// Pattern scan

struct BinomialScan {
  bool compatible = true;
  std::optional<Binomial> matched;
  int form = 0;           ///< 1: x^c - 1, 2: x_i^c - (monomial without x_i)
  std::size_t index = 0;  ///< the isolated variable for form 2
};

/// Looks for a generator of the shape x^c - 1 or x_i^c - x^q. For a
/// generating set of the toric ideal a match means SP fails. With a single
/// variable there is nothing to separate and the scan is always compatible.
inline BinomialScan binomial_scan(const std::vector<Binomial>& binomials) {
  BinomialScan scan;
  for (const auto& b : binomials) {
    if (b.size() < 2) continue;
    const IntVector* sides[2] = {&b.lhs, &b.rhs};
    for (int s = 0; s < 2; ++s) {
      const IntVector& p = *sides[s];
      const IntVector& q = *sides[1 - s];
      if (is_zero(q) && !is_zero(p)) {
        scan = BinomialScan{false, b, 1, 0};
        return scan;
      }
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (detail::is_pure_power(p, i)) {
          scan = BinomialScan{false, b, 2, i};
          return scan;
        }
      }
    }
  }
  return scan;
}

// ---------------------------------------------------------------------------
// Sampling

/// Point x_i = chi_i(t) of the torus orbit through (1,...,1), exactly.
inline RatVector orbit_point(const WeightSystem& ws, const RatVector& t) {
  if (t.size() != ws.dim()) throw InputError("torus point has the wrong dimension");
  RatVector x(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    Rational v = 1;
    for (std::size_t k = 0; k < ws.dim(); ++k) {
      if (t[k] == 0) throw InputError("torus point has a zero coordinate");
      const long e = ws[i][k].get_si();
      Rational base = e < 0 ? Rational(1) / t[k] : t[k];
      for (long j = 0; j < (e < 0 ? -e : e); ++j) v *= base;
    }
    x[i] = v;
  }
  return x;
}

inline Rational evaluate(const Binomial& b, const RatVector& x) {
  Rational l = 1, r = 1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (long j = 0; j < b.lhs[i].get_si(); ++j) l *= x[i];
    for (long j = 0; j < b.rhs[i].get_si(); ++j) r *= x[i];
  }
  return l - r;
}

/// Orbit point modulo p for a torus point t in ((Z/p)^*)^d.
inline IntVector orbit_point_mod(const WeightSystem& ws, const IntVector& t, const Integer& p) {
  IntVector x(ws.size());
  for (std::size_t i = 0; i < ws.size(); ++i) {
    Integer v = 1;
    for (std::size_t k = 0; k < ws.dim(); ++k) {
      Integer f;
      mpz_powm(f.get_mpz_t(), t[k].get_mpz_t(), ws[i][k].get_mpz_t(), p.get_mpz_t());
      v = v * f % p;
    }
    x[i] = v;
  }
  return x;
}

inline Integer evaluate_mod(const Binomial& b, const IntVector& x, const Integer& p) {
  Integer l = 1, r = 1;
  for (std::size_t i = 0; i < b.size(); ++i) {
    Integer f;
    mpz_powm(f.get_mpz_t(), x[i].get_mpz_t(), b.lhs[i].get_mpz_t(), p.get_mpz_t());
    l = l * f % p;
    mpz_powm(f.get_mpz_t(), x[i].get_mpz_t(), b.rhs[i].get_mpz_t(), p.get_mpz_t());
    r = r * f % p;
  }
  Integer d = (l - r) % p;
  if (d < 0) d += p;
  return d;
}

struct VanishingFailure {
  std::size_t trial = 0;
  std::size_t binomial = 0;
  IntVector torus_point;
  Integer value;
};

struct VanishingReport {
  std::size_t trials = 0;
  Integer prime;
  std::uint64_t seed = 0;
  std::size_t evaluations = 0;
  std::vector<VanishingFailure> failures;

  bool passed() const noexcept { return failures.empty(); }
};

/// Evaluates every binomial at `trials` seeded random orbit points over F_p.
inline VanishingReport verify_vanishing(const std::vector<Binomial>& binomials, const WeightSystem& ws,
                                        std::size_t trials, const Integer& prime, std::uint64_t seed) {
  if (prime <= 2) throw InputError("prime must exceed 2");
  if (mpz_probab_prime_p(prime.get_mpz_t(), 30) == 0) throw InputError("modulus " + prime.get_str() + " is not prime");
  if (trials == 0) throw InputError("trials must be at least 1");
  if (!prime.fits_ulong_p()) throw InputError("prime must fit in 64 bits");
  for (const auto& b : binomials)
    if (b.size() != ws.size()) throw InputError("binomial arity does not match the weight system");

  VanishingReport report{trials, prime, seed, 0, {}};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned long> draw(1, prime.get_ui() - 1);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    IntVector t(ws.dim());
    for (auto& tk : t) tk = draw(rng);
    const IntVector x = orbit_point_mod(ws, t, prime);
    for (std::size_t j = 0; j < binomials.size(); ++j) {
      ++report.evaluations;
      Integer v = evaluate_mod(binomials[j], x, prime);
      if (v != 0) report.failures.push_back(VanishingFailure{trial, j, t, v});
    }
  }
  return report;
}

}  // namespace torsep
