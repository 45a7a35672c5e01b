#pragma once

// Scalar and vector types shared by every module.
//
// Lattice geometry (exponents, constraint rows, cone generators) is kept in
// 64-bit integers with overflow-checked arithmetic; every intermediate product
// goes through 128 bits. Coefficients, series and distances are GMP rationals.

#include <gmpxx.h>

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "mcilp/errors.hpp"

namespace mcilp {

using Int = std::int64_t;
using Wide = __int128;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;  // row-major
using Integer = mpz_class;
using Rational = mpq_class;
using RatVec = std::vector<Rational>;

inline Int narrow(Wide v) {
  if (v > static_cast<Wide>(INT64_MAX) || v < static_cast<Wide>(INT64_MIN)) {
    throw ArithmeticOverflow("integer overflow in lattice arithmetic");
  }
  return static_cast<Int>(v);
}

inline Int add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in lattice arithmetic");
  return r;
}

inline Int sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in lattice arithmetic");
  return r;
}

inline Int mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in lattice arithmetic");
  return r;
}

inline Wide wmul(Wide a, Wide b) {
  Wide r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in lattice arithmetic");
  return r;
}

inline Wide wadd(Wide a, Wide b) {
  Wide r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("integer overflow in lattice arithmetic");
  return r;
}

inline Int iabs(Int a) { return a < 0 ? -a : a; }

/// Floor division for b != 0.
inline Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Int ceil_div(Int a, Int b) { return -floor_div(-a, b); }

inline Wide wfloor_div(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Wide wceil_div(Wide a, Wide b) { return -wfloor_div(-a, b); }

inline Int dot(std::span<const Int> a, std::span<const Int> b) {
  Wide s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = wadd(s, wmul(a[i], b[i]));
  return narrow(s);
}

inline Wide wdot(std::span<const Int> a, std::span<const Int> b) {
  Wide s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = wadd(s, wmul(a[i], b[i]));
  return s;
}

inline Int vec_gcd(std::span<const Int> v) {
  Int g = 0;
  for (Int x : v) g = std::gcd(g, iabs(x));
  return g;
}

inline bool is_zero(std::span<const Int> v) {
  for (Int x : v)
    if (x != 0) return false;
  return true;
}

/// Divides out the content; the zero vector is returned unchanged.
inline IntVec primitive(IntVec v) {
  Int g = vec_gcd(v);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

inline IntVec operator+(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = add(a[i], b[i]);
  return r;
}

inline IntVec operator-(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = sub(a[i], b[i]);
  return r;
}

inline IntVec operator-(const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = sub(0, a[i]);
  return r;
}

/// M * v for a row-major matrix.
inline IntVec mat_vec(const IntMat& m, std::span<const Int> v) {
  IntVec r(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], v);
  return r;
}

inline IntMat transpose(const IntMat& m, std::size_t cols) {
  IntMat t(cols, IntVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

inline Rational rational(Int v) { return Rational(static_cast<long>(v)); }

inline Integer integer(Int v) { return Integer(static_cast<long>(v)); }

inline Rational rational(Int num, Int den) {
  Rational r(integer(num), integer(den));
  r.canonicalize();
  return r;
}

inline Rational rational(Wide v) {
  // Split through two halves so values beyond 64 bits survive.
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer hi(static_cast<unsigned long>(u >> 64));
  Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
  Integer r = (hi << 64) + lo;
  if (neg) r = -r;
  return Rational(r);
}

/// Converts an integral rational to Int, throwing on overflow.
inline Int to_int(const Integer& z) {
  if (!z.fits_slong_p()) throw ArithmeticOverflow("value does not fit in 64 bits");
  return z.get_si();
}

inline Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

/// `p/q` form; integers print without a denominator.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Always `p/q`, including integers (used in JSON payloads).
inline std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const IntVec& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

}  // namespace mcilp
