#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "torsep/error.hpp"
#include "torsep/number.hpp"

namespace torsep {

// ---------------------------------------------------------------------------
// Univariate polynomials over Q, coefficients from the constant term up.

using Poly = RatVector;

namespace poly {

inline Poly trimmed(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

/// Degree, with -1 for the zero polynomial.
inline long degree(const Poly& p) { return static_cast<long>(trimmed(p).size()) - 1; }

inline bool is_constant(const Poly& p) { return degree(p) <= 0; }

inline Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  return trimmed(std::move(r));
}

inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return trimmed(std::move(r));
}

inline Poly derivative(const Poly& p) {
  Poly r;
  for (std::size_t i = 1; i < p.size(); ++i) r.push_back(p[i] * static_cast<unsigned long>(i));
  return trimmed(std::move(r));
}

/// Quotient and remainder; b must be nonzero.
inline std::pair<Poly, Poly> divmod(Poly a, Poly b) {
  a = trimmed(std::move(a));
  b = trimmed(std::move(b));
  if (b.empty()) throw InputError("polynomial division by zero");
  if (a.size() < b.size()) return {{}, a};
  Poly q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    Rational c = a[k + b.size() - 1] / b.back();
    q[k] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
  }
  return {trimmed(std::move(q)), trimmed(std::move(a))};
}

inline Poly exact_div(const Poly& a, const Poly& b) {
  auto [q, r] = divmod(a, b);
  if (!r.empty()) throw InternalError("inexact polynomial division");
  return q;
}

inline Poly monic(Poly p) {
  p = trimmed(std::move(p));
  if (p.empty()) return p;
  Rational lc = p.back();
  for (auto& c : p) c /= lc;
  return p;
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b) {
  a = trimmed(std::move(a));
  b = trimmed(std::move(b));
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}

}  // namespace poly

// ---------------------------------------------------------------------------
// Binary forms

/// f = sum_m h_m x^(n-m) y^m of degree n >= 1, not identically zero.
struct BinaryForm {
  std::size_t degree = 0;
  RatVector coeffs;  ///< h_0..h_n

  BinaryForm() = default;
  BinaryForm(std::size_t n, RatVector h) : degree(n), coeffs(std::move(h)) {}

  bool is_zero() const { return torsep::is_zero(coeffs); }

  void validate() const {
    if (coeffs.size() != degree + 1)
      throw InputError("binary form of degree " + std::to_string(degree) + " needs " + std::to_string(degree + 1) +
                       " coefficients, got " + std::to_string(coeffs.size()));
    if (is_zero()) throw InputError("zero form");
  }

  bool operator==(const BinaryForm&) const = default;
};

/// Form of degree `n` from a polynomial in x of degree <= n (y = 1).
inline BinaryForm homogenize_poly(const Poly& p, std::size_t n) {
  RatVector h(n + 1);
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] == 0) continue;
    if (k > n) throw InternalError("polynomial degree exceeds the form degree");
    h[n - k] = p[k];
  }
  return BinaryForm(n, std::move(h));
}

/// f(x, 1).
inline Poly dehomogenize(const BinaryForm& f) {
  Poly p(f.degree + 1);
  for (std::size_t m = 0; m <= f.degree; ++m) p[f.degree - m] = f.coeffs[m];
  return poly::trimmed(std::move(p));
}

inline BinaryForm multiply(const BinaryForm& a, const BinaryForm& b) {
  RatVector h(a.degree + b.degree + 1);
  for (std::size_t i = 0; i <= a.degree; ++i)
    for (std::size_t j = 0; j <= b.degree; ++j) h[i + j] += a.coeffs[i] * b.coeffs[j];
  return BinaryForm(a.degree + b.degree, std::move(h));
}

inline BinaryForm power(const BinaryForm& f, std::size_t e) {
  BinaryForm r(0, {Rational(1)});
  for (std::size_t k = 0; k < e; ++k) r = multiply(r, f);
  return r;
}

inline BinaryForm scaled(BinaryForm f, const Rational& c) {
  for (auto& h : f.coeffs) h *= c;
  return f;
}

/// f(a x + b y, c x + d y) for the matrix g = [[a, b], [c, d]].
inline BinaryForm substitute(const BinaryForm& f, const std::array<Rational, 4>& g) {
  const BinaryForm lx(1, {g[0], g[1]});
  const BinaryForm ly(1, {g[2], g[3]});
  BinaryForm out(f.degree, RatVector(f.degree + 1));
  for (std::size_t m = 0; m <= f.degree; ++m) {
    if (f.coeffs[m] == 0) continue;
    BinaryForm term = scaled(multiply(power(lx, f.degree - m), power(ly, m)), f.coeffs[m]);
    for (std::size_t k = 0; k <= f.degree; ++k) out.coeffs[k] += term.coeffs[k];
  }
  return out;
}

struct SquarefreePart {
  BinaryForm part;
  std::size_t multiplicity = 0;

  bool operator==(const SquarefreePart&) const = default;
};

/// f = constant * prod q_m^m with q_m squarefree and pairwise coprime.
struct SquarefreeDecomposition {
  Rational constant;
  std::vector<SquarefreePart> parts;  ///< increasing multiplicity, nonconstant parts only
};

/// Yun's scheme on f(x, 1); the factor y enters with multiplicity
/// n - deg f(x, 1) and is merged into the part of that multiplicity.
inline SquarefreeDecomposition squarefree_multiplicity_parts(const BinaryForm& f) {
  f.validate();
  const Poly g = dehomogenize(f);
  const std::size_t dg = static_cast<std::size_t>(poly::degree(g));
  const std::size_t ymult = f.degree - dg;

  SquarefreeDecomposition out;
  out.constant = g.back();
  std::map<std::size_t, Poly> xparts;
  if (dg > 0) {
    const Poly dgp = poly::derivative(g);
    const Poly a0 = poly::gcd(g, dgp);
    Poly b = poly::exact_div(g, a0);
    Poly c = poly::exact_div(dgp, a0);
    Poly d = poly::sub(c, poly::derivative(b));
    for (std::size_t i = 1; !poly::is_constant(b); ++i) {
      Poly a = poly::gcd(b, d);
      b = poly::exact_div(b, a);
      c = poly::exact_div(d, a);
      d = poly::sub(c, poly::derivative(b));
      if (!poly::is_constant(a)) xparts[i] = poly::monic(a);
    }
  }
  std::map<std::size_t, BinaryForm> parts;
  for (const auto& [m, p] : xparts) parts[m] = homogenize_poly(p, static_cast<std::size_t>(poly::degree(p)));
  if (ymult > 0) {
    const BinaryForm y(1, {Rational(0), Rational(1)});
    auto it = parts.find(ymult);
    if (it == parts.end()) parts[ymult] = y;
    else it->second = multiply(it->second, y);
  }
  for (auto& [m, q] : parts) out.parts.push_back(SquarefreePart{std::move(q), m});
  return out;
}

inline BinaryForm reconstruct(const SquarefreeDecomposition& dec) {
  BinaryForm r(0, {dec.constant});
  for (const auto& p : dec.parts) r = multiply(r, power(p.part, p.multiplicity));
  return r;
}

/// SP for the closure of the SL_2-orbit of f: holds iff f has a linear factor
/// of multiplicity one, i.e. the multiplicity-one part is nonconstant.
inline bool decide_sp_binary_orbit(const BinaryForm& f) {
  const auto dec = squarefree_multiplicity_parts(f);
  return std::any_of(dec.parts.begin(), dec.parts.end(),
                     [](const SquarefreePart& p) { return p.multiplicity == 1 && p.part.degree >= 1; });
}

/// Number of distinct linear factors of multiplicity exactly one over the
/// algebraic closure, counted from radicals: deg rad f - deg rad gcd(f, f').
inline std::size_t simple_linear_factor_count(const BinaryForm& f) {
  f.validate();
  const Poly g = dehomogenize(f);
  const std::size_t ymult = f.degree - static_cast<std::size_t>(poly::degree(g));
  auto radical_degree = [](const Poly& p) -> long {
    if (poly::is_constant(p)) return 0;
    return poly::degree(p) - poly::degree(poly::gcd(p, poly::derivative(p)));
  };
  const Poly repeated = poly::gcd(g, poly::derivative(g));
  const long simple = radical_degree(g) - radical_degree(repeated);
  return static_cast<std::size_t>(simple) + (ymult == 1 ? 1 : 0);
}

inline std::string to_string(const BinaryForm& f) {
  std::string s;
  for (std::size_t m = 0; m <= f.degree; ++m) {
    const Rational& h = f.coeffs[m];
    if (h == 0) continue;
    const std::size_t ex = f.degree - m;
    std::string mono;
    if (ex > 0) mono += ex == 1 ? "x" : "x^" + std::to_string(ex);
    if (m > 0) mono += std::string(mono.empty() ? "" : "*") + (m == 1 ? "y" : "y^" + std::to_string(m));
    Rational a = abs(h);
    std::string coef = (a == 1 && !mono.empty()) ? "" : a.get_str();
    std::string term = coef + (coef.empty() || mono.empty() ? "" : "*") + mono;
    if (s.empty()) s = (h < 0 ? "-" : "") + term;
    else s += (h < 0 ? " - " : " + ") + term;
  }
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------
// Parsing "x^2*y^2 - 3*x^4", "x*(y+3*x)^2", "x(y+3x)^2", "1/2 x y"

namespace detail {

using Bivariate = std::map<std::pair<std::size_t, std::size_t>, Rational>;

inline Bivariate bi_mul(const Bivariate& a, const Bivariate& b) {
  Bivariate r;
  for (const auto& [ka, va] : a)
    for (const auto& [kb, vb] : b) r[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
  std::erase_if(r, [](const auto& kv) { return kv.second == 0; });
  return r;
}

inline Bivariate bi_add(Bivariate a, const Bivariate& b, int sign) {
  for (const auto& [k, v] : b) a[k] += sign > 0 ? v : Rational(-v);
  std::erase_if(a, [](const auto& kv) { return kv.second == 0; });
  return a;
}

inline bool bi_constant(const Bivariate& a) {
  return a.empty() || (a.size() == 1 && a.begin()->first == std::make_pair<std::size_t, std::size_t>(0, 0));
}

class FormParser {
 public:
  explicit FormParser(std::string_view text) : s_(text) {}

  Bivariate parse() {
    Bivariate r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("binary form, column " + std::to_string(pos_ + 1) + ": " + msg);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return c == 'x' || c == 'y' || c == '(' || std::isdigit(static_cast<unsigned char>(c));
  }

  Bivariate expr() {
    int sign = 1;
    if (peek('+')) ++pos_;
    else if (peek('-')) { ++pos_; sign = -1; }
    Bivariate acc = bi_add({}, term(), sign);
    for (;;) {
      if (peek('+')) { ++pos_; acc = bi_add(std::move(acc), term(), 1); }
      else if (peek('-')) { ++pos_; acc = bi_add(std::move(acc), term(), -1); }
      else return acc;
    }
  }

  Bivariate term() {
    Bivariate acc = power();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = bi_mul(acc, power());
      } else if (peek('/')) {
        ++pos_;
        const std::size_t at = pos_;
        Bivariate d = power();
        if (!bi_constant(d)) { pos_ = at; fail("division by a non-constant"); }
        if (d.empty()) { pos_ = at; fail("division by zero"); }
        Rational inv = 1 / d.begin()->second;
        acc = bi_mul(acc, Bivariate{{{0, 0}, inv}});
      } else if (starts_factor()) {
        acc = bi_mul(acc, power());
      } else {
        return acc;
      }
    }
  }

  Bivariate power() {
    Bivariate base = atom();
    if (!peek('^')) return base;
    ++pos_;
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    if (pos_ - start > 4) fail("exponent too large");
    const std::size_t e = std::stoul(std::string(s_.substr(start, pos_ - start)));
    Bivariate r{{{0, 0}, Rational(1)}};
    for (std::size_t k = 0; k < e; ++k) r = bi_mul(r, base);
    return r;
  }

  Bivariate atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == 'x') { ++pos_; return {{{1, 0}, Rational(1)}}; }
    if (c == 'y') { ++pos_; return {{{0, 1}, Rational(1)}}; }
    if (c == '(') {
      ++pos_;
      Bivariate r = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      Rational v(Integer(std::string(s_.substr(start, pos_ - start))));
      if (v == 0) return {};
      return {{{0, 0}, v}};
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a homogeneous polynomial in x and y, expanded or factored.
inline BinaryForm parse_binary_form(std::string_view text) {
  const auto terms = detail::FormParser(text).parse();
  if (terms.empty()) throw InputError("zero form");
  const std::size_t n = terms.begin()->first.first + terms.begin()->first.second;
  for (const auto& [k, v] : terms)
    if (k.first + k.second != n)
      throw InputError("binary form is not homogeneous: degrees " + std::to_string(n) + " and " +
                       std::to_string(k.first + k.second));
  if (n == 0) throw InputError("binary form must have degree at least 1");
  RatVector h(n + 1);
  for (const auto& [k, v] : terms) h[k.second] = v;
  return BinaryForm(n, std::move(h));
}

}  // namespace torsep
