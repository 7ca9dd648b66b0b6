#include "tq/sym/number.hpp"

#include <stdexcept>

namespace tq::sym {

bool is_integer(const Q& q) { return q.get_den() == 1; }

long to_long(const Q& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p()) {
    throw std::overflow_error("rational " + q.get_str() + " is not a machine integer");
  }
  return q.get_num().get_si();
}

double to_double(const Q& q) { return q.get_d(); }

std::string to_string(const Q& q) { return q.get_str(); }

Q floor_q(const Q& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Q(f);
}

Q qpow(const Q& base, long exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("zero to a negative power");
    Q inv = 1 / base;
    return qpow(inv, -exponent);
  }
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(d.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  Q r(n, d);
  r.canonicalize();
  return r;
}

Q binomial(const Q& p, long j) {
  Q r = 1;
  for (long i = 0; i < j; ++i) {
    r *= (p - i);
    r /= (i + 1);
  }
  return r;
}

Q factorial(long n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return Q(f);
}

std::vector<std::pair<mpz_class, long>> factor_integer(mpz_class n) {
  std::vector<std::pair<mpz_class, long>> out;
  if (n < 2) return out;
  auto take = [&](const mpz_class& p) {
    long k = 0;
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) != 0) {
      n /= p;
      ++k;
    }
    if (k > 0) out.emplace_back(p, k);
  };
  take(2);
  for (unsigned long p = 3; p < 100000; p += 2) {
    mpz_class pp(p);
    if (pp * pp > n) break;
    take(pp);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

}  // namespace tq::sym
