#include "trilab/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace trilab {

Rat make_rat(long num, long den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat parse_rat(const std::string& text) {
  std::string s;
  s.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");

  auto slash = s.find('/');
  std::string num_part = (slash == std::string::npos) ? s : s.substr(0, slash);
  std::string den_part = (slash == std::string::npos) ? "1" : s.substr(slash + 1);

  auto check_int = [](const std::string& p, bool sign_ok) {
    if (p.empty()) return false;
    std::size_t i = 0;
    if (sign_ok && (p[0] == '+' || p[0] == '-')) i = 1;
    if (i == p.size()) return false;
    for (; i < p.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(p[i]))) return false;
    return true;
  };
  if (!check_int(num_part, true) || !check_int(den_part, true))
    throw std::invalid_argument("malformed rational literal: '" + text + "'");

  Int num(num_part, 10), den(den_part, 10);
  if (den == 0) throw std::invalid_argument("rational with zero denominator: '" + text + "'");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Rat q(num);
  q /= Rat(den);
  return q;
}

std::string rat_str(const Rat& q) { return q.get_str(); }

std::string decimal_str(const Rat& q, int digits) {
  if (digits < 1) digits = 1;
  if (digits > 50) digits = 50;
  mpf_t f;
  mpf_init2(f, static_cast<mp_bitcnt_t>(digits) * 4 + 64);
  mpf_set_q(f, q.get_mpq_t());
  char* buf = nullptr;
  gmp_asprintf(&buf, "%.*Fg", digits, f);
  std::string out(buf);
  void (*freefunc)(void*, size_t) = nullptr;
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(buf, out.size() + 1);
  mpf_clear(f);
  return out;
}

std::string decimal_str(long double v, int digits) {
  if (digits < 1) digits = 1;
  if (digits > 50) digits = 50;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.*Lg", digits, v);
  return std::string(buf);
}

double rat_double(const Rat& q) { return q.get_d(); }

namespace {

// Top-64-bit mantissa + exponent view of |z|; truncation error <= 1 ulp at 2^-64.
long double mpz_ldouble(const Int& z) {
  if (z == 0) return 0.0L;
  const bool neg = z < 0;
  Int a = neg ? Int(-z) : z;
  const std::size_t bits = mpz_sizeinbase(a.get_mpz_t(), 2);
  long shift = 0;
  if (bits > 64) {
    shift = static_cast<long>(bits) - 64;
    mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  }
  static_assert(sizeof(unsigned long) == 8, "64-bit unsigned long expected");
  const unsigned long mant = mpz_get_ui(a.get_mpz_t());
  long double v = ldexpl(static_cast<long double>(mant), static_cast<int>(shift));
  return neg ? -v : v;
}

}  // namespace

long double rat_ldouble(const Rat& q) {
  if (q == 0) return 0.0L;
  const Int num = q.get_num();
  const Int den = q.get_den();
  // Keep exponents balanced so neither part over/underflows on its own.
  const long nb = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  const long db = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  if (nb < 15000 && db < 15000) return mpz_ldouble(num) / mpz_ldouble(den);
  Int n2 = abs(num), d2 = den;
  const long cut_n = nb > 80 ? nb - 80 : 0;
  const long cut_d = db > 80 ? db - 80 : 0;
  mpz_tdiv_q_2exp(n2.get_mpz_t(), n2.get_mpz_t(), static_cast<mp_bitcnt_t>(cut_n));
  mpz_tdiv_q_2exp(d2.get_mpz_t(), d2.get_mpz_t(), static_cast<mp_bitcnt_t>(cut_d));
  long double v = mpz_ldouble(n2) / mpz_ldouble(d2);
  v = ldexpl(v, static_cast<int>(cut_n - cut_d));
  return sgn(q) < 0 ? -v : v;
}

Rat rat_pow(const Rat& base, long exp) {
  if (exp == 0) return Rat(1);
  if (base == 0) {
    if (exp < 0) throw std::domain_error("0 raised to a negative power");
    return Rat(0);
  }
  const unsigned long e = static_cast<unsigned long>(exp < 0 ? -exp : exp);
  Int num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), e);
  Rat out;
  if (exp > 0) {
    out = Rat(num);
    out /= Rat(den);
  } else {
    out = Rat(den);
    out /= Rat(num);
  }
  return out;
}

Rat rising_factorial(const Rat& s, int n) {
  Rat acc(1);
  for (int i = 0; i < n; ++i) acc *= s + i;
  return acc;
}

Int factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of a negative integer");
  Int f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
  return f;
}

Int binomial(int n, int k) {
  if (k < 0 || k > n) return Int(0);
  Int b;
  mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return b;
}

Rat dyadic_uniform(std::mt19937_64& rng) {
  Int u(static_cast<unsigned long>(rng()));
  u <<= 64;
  u |= Int(static_cast<unsigned long>(rng()));
  Int den(1);
  den <<= 128;
  Rat q(u);
  q /= Rat(den);
  return q;
}

}  // namespace trilab
