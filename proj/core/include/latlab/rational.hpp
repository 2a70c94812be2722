#pragma once

#include <gmpxx.h>

#include <string>

#include "latlab/errors.hpp"

namespace latlab {

// Exact arithmetic scalar for the exact mode. mpq_class is canonicalizing,
// so equality and ordering are exact.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational rat_abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline double rat_to_double(const Rational& x) { return x.get_d(); }

// "p/q" or "p"; also accepts decimal literals like "-0.375" (exact binary-free
// base-10 reading: mantissa / 10^digits).
Rational rat_from_string(const std::string& s);

std::string rat_to_string(const Rational& x);

// Floor/round of a rational to BigInt (round = nearest, half away from zero).
BigInt rat_floor(const Rational& x);
BigInt rat_round(const Rational& x);

}  // namespace latlab
