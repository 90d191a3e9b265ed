#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qtt/scalars.hpp"

namespace qtt {

// Integer combination sum_j c_j omega^j, stored mod omega^N - 1.
// Zero testing reduces modulo the N-th cyclotomic polynomial, so it is exact.
class Cyclo {
 public:
  explicit Cyclo(int N = 3) : c_(N, 0) {}
  static Cyclo omega_pow(int N, long long m, long long coeff = 1);
  static Cyclo integer(int N, long long v) { return omega_pow(N, 0, v); }

  int N() const { return int(c_.size()); }
  const std::vector<long long>& coeffs() const { return c_; }

  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo operator+(const Cyclo& o) const { Cyclo r = *this; return r += o; }
  Cyclo operator-(const Cyclo& o) const { Cyclo r = *this; return r -= o; }
  Cyclo operator-() const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo times_omega(long long m) const;
  Cyclo scaled(long long s) const;

  bool is_zero() const;
  bool raw_zero() const;
  cplx value(const RootContext& ctx) const;

 private:
  std::vector<long long> c_;
};

// coefficients (low degree first) of the N-th cyclotomic polynomial
const std::vector<long long>& cyclotomic_poly(int N);

// Element of Z[omega][u, 1/u] with u standing for 1/(q - q^-1).
// The symbol u is kept formal; is_zero() clears it by multiplying through with
// the largest power of (q - q^-1) that occurs and then reduces in Z[omega].
class ExactScalar {
 public:
  explicit ExactScalar(int N = 3) : N_(N) {}
  static ExactScalar omega_pow(int N, long long m, long long coeff = 1);
  static ExactScalar integer(int N, long long v) { return omega_pow(N, 0, v); }
  static ExactScalar q_pow(int N, long long n) { return omega_pow(N, -4 * n); }
  // u^p = (q - q^-1)^-p
  static ExactScalar u_pow(int N, int p);

  int N() const { return N_; }
  const std::map<int, Cyclo>& terms() const { return terms_; }

  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar operator+(const ExactScalar& o) const { ExactScalar r = *this; return r += o; }
  ExactScalar operator-(const ExactScalar& o) const { ExactScalar r = *this; return r -= o; }
  ExactScalar operator-() const;
  ExactScalar operator*(const ExactScalar& o) const;
  ExactScalar times_omega(long long m) const;

  bool is_zero() const;
  // numeric value at the context's omega (tests use it to cross-check is_zero)
  cplx value(const RootContext& ctx) const;
  // omega exponent when this is a single unit monomial +-omega^m with no u
  std::optional<long long> exact_phase() const;

 private:
  void prune();
  int N_;
  std::map<int, Cyclo> terms_;
};

// value plus the exact phase exponent when one is known
struct ProvenancedScalar {
  cplx value;
  std::optional<long long> exact_phase;
};
ProvenancedScalar provenanced(const RootContext& ctx, const ExactScalar& s);

}  // namespace qtt
