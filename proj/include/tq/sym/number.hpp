#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace tq::sym {

/// Exact rational used for every literal and exponent.
using Q = mpq_class;

bool is_integer(const Q& q);
long to_long(const Q& q);
double to_double(const Q& q);
std::string to_string(const Q& q);
Q floor_q(const Q& q);
Q qpow(const Q& base, long exponent);
Q binomial(const Q& p, long j);
Q factorial(long n);

/// Prime factorisation of a positive integer by trial division. A cofactor
/// that survives the trial bound is returned as if it were prime.
std::vector<std::pair<mpz_class, long>> factor_integer(mpz_class n);

}  // namespace tq::sym
