#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>

#include "sumfactor/error.hpp"

namespace sumfactor {

using Integer = boost::multiprecision::cpp_int;

inline std::string to_string(const Integer& n) { return n.str(); }

/// Parses an optionally signed decimal integer; the whole view must be consumed.
inline Integer parse_integer(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t j = text.size();
  while (j > i && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
  std::string_view body = text.substr(i, j - i);
  std::size_t k = 0;
  if (k < body.size() && (body[k] == '-' || body[k] == '+')) ++k;
  if (k == body.size()) throw SyntaxError("expected an integer, got '" + std::string(text) + "'");
  for (std::size_t p = k; p < body.size(); ++p) {
    if (!std::isdigit(static_cast<unsigned char>(body[p])))
      throw SyntaxError("expected an integer, got '" + std::string(text) + "'");
  }
  Integer value(std::string(body.substr(body[0] == '+' ? 1 : 0)));
  return value;
}

inline Integer abs(const Integer& n) { return n < 0 ? Integer(-n) : n; }

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(abs(a), abs(b));
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a) / gcd(a, b) * abs(b);
}

/// Non-negative residue of a modulo m (m > 0).
inline Integer mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  return r < 0 ? Integer(r + m) : r;
}

inline Integer powmod(const Integer& base, const Integer& exponent, const Integer& modulus) {
  return boost::multiprecision::powm(mod(base, modulus), exponent, modulus);
}

/// Inverse of a modulo m; throws InvalidArgument when gcd(a, m) != 1.
inline Integer modinv(const Integer& a, const Integer& m) {
  Integer old_r = mod(a, m), r = m;
  Integer old_s = 1, s = 0;
  while (r != 0) {
    Integer q = old_r / r;
    Integer t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw InvalidArgument(to_string(a) + " is not invertible modulo " + to_string(m));
  return mod(old_s, m);
}

/// Deterministic below 3.3e24 (first 25 witnesses), probabilistic beyond.
inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  for (int p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  static thread_local std::mt19937_64 engine(0x5eed);
  return boost::multiprecision::miller_rabin_test(n, 25, engine);
}

namespace detail {

inline Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  for (Integer c = 1;; ++c) {
    Integer x = 2, y = 2, d = 1;
    auto step = [&](const Integer& v) { return Integer((v * v + c) % n); };
    while (d == 1) {
      x = step(x);
      y = step(step(y));
      d = gcd(x > y ? Integer(x - y) : Integer(y - x), n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(const Integer& n, std::map<Integer, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

/// Prime factorization of n >= 1 as prime -> exponent.
inline std::map<Integer, unsigned> factorize(Integer n) {
  if (n < 1) throw InvalidArgument("factorize expects a positive integer");
  std::map<Integer, unsigned> out;
  for (unsigned p = 2; p < 1000 && Integer(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  detail::factor_into(n, out);
  return out;
}

/// Natural logarithm for display only; never used in decisions.
inline long double ln(const Integer& n) {
  if (n <= 0) throw InvalidArgument("ln of a non-positive integer");
  std::size_t bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 60) return std::log(static_cast<long double>(n.convert_to<std::uint64_t>()));
  std::size_t shift = bits - 60;
  Integer top = n >> shift;
  return std::log(static_cast<long double>(top.convert_to<std::uint64_t>())) +
         static_cast<long double>(shift) * std::log(2.0L);
}

}  // namespace sumfactor
