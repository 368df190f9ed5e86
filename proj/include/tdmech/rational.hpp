#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace tdmech {

using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p" or "p/q" in base 10.
Rational rat_from_string(const std::string& s);

std::string rat_to_string(const Rational& r);

inline double rat_to_double(const Rational& r) { return r.get_d(); }

// Doubles are dyadic rationals, so this conversion is exact.
inline Rational rat_from_double(double x) { return Rational(x); }

}  // namespace tdmech
