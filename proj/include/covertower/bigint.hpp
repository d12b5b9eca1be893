// Arbitrary-precision integer alias and congruence helpers.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>

namespace covertower {

using BigInt = boost::multiprecision::cpp_int;

// Checked narrowing for values known to fit a machine integer.
std::int64_t to_i64(const BigInt& v);

// Remainder in [0, m) for m > 0, regardless of the sign of a.
BigInt floor_mod(const BigInt& a, const BigInt& m);

BigInt pow_int(const BigInt& base, int exp);

// Least t >= lo with t == r (mod m), m >= 1.
BigInt next_congruent(const BigInt& lo, const BigInt& r, const BigInt& m);

// Least t >= lo with t == r1 (mod m1) and t == r2 (mod m2),
// or nullopt when the congruences are incompatible.
std::optional<BigInt> next_congruent2(const BigInt& lo, const BigInt& r1, const BigInt& m1,
                                      const BigInt& r2, const BigInt& m2);

}  // namespace covertower
