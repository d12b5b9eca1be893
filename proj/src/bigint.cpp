#include "covertower/bigint.hpp"

#include <limits>
#include <stdexcept>
#include <tuple>

namespace covertower {

std::int64_t to_i64(const BigInt& v) {
  if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max())
    throw std::overflow_error("to_i64: value does not fit in 64 bits");
  return v.convert_to<std::int64_t>();
}

BigInt floor_mod(const BigInt& a, const BigInt& m) {
  if (m <= 0) throw std::invalid_argument("floor_mod: modulus must be positive");
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

BigInt pow_int(const BigInt& base, int exp) {
  if (exp < 0) throw std::invalid_argument("pow_int: negative exponent");
  BigInt acc = 1;
  BigInt b = base;
  int e = exp;
  while (e > 0) {
    if (e & 1) acc *= b;
    b *= b;
    e >>= 1;
  }
  return acc;
}

BigInt next_congruent(const BigInt& lo, const BigInt& r, const BigInt& m) {
  BigInt want = floor_mod(r, m);
  BigInt have = floor_mod(lo, m);
  BigInt step = floor_mod(want - have, m);
  return lo + step;
}

namespace {

// Returns (g, x) with x * a == g (mod b), g = gcd(a, b).
std::pair<BigInt, BigInt> egcd_coeff(BigInt a, BigInt b) {
  BigInt x0 = 1, x1 = 0;
  while (b != 0) {
    BigInt q = a / b;
    BigInt t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
  }
  return {a, x0};
}

}  // namespace

std::optional<BigInt> next_congruent2(const BigInt& lo, const BigInt& r1, const BigInt& m1,
                                      const BigInt& r2, const BigInt& m2) {
  BigInt a1 = floor_mod(r1, m1);
  BigInt a2 = floor_mod(r2, m2);
  auto [g, x] = egcd_coeff(m1, m2);
  BigInt diff = a2 - a1;
  if (diff % g != 0) return std::nullopt;
  BigInt lcm = m1 / g * m2;
  BigInt k = floor_mod(diff / g * x, m2 / g);
  BigInt sol = floor_mod(a1 + k * m1, lcm);
  return next_congruent(lo, sol, lcm);
}

}  // namespace covertower
