#include "qtt/cyclo.hpp"

#include <mutex>

namespace qtt {

namespace {

std::vector<long long> poly_div_exact(std::vector<long long> num, const std::vector<long long>& den) {
  // den is monic; the division is exact for the cyclotomic recursion
  int dn = int(den.size()) - 1;
  int nn = int(num.size()) - 1;
  std::vector<long long> quo(std::max(0, nn - dn + 1), 0);
  for (int i = nn; i >= dn; --i) {
    long long f = num[i];
    quo[i - dn] = f;
    for (int j = 0; j <= dn; ++j) num[i - dn + j] -= f * den[j];
  }
  return quo;
}

}  // namespace

const std::vector<long long>& cyclotomic_poly(int N) {
  static std::mutex mu;
  static std::map<int, std::vector<long long>> cache;
  std::lock_guard<std::mutex> lock(mu);
  // Phi_d for every divisor d of N, smallest first: Phi_d = (x^d - 1) / prod_{e | d, e < d} Phi_e
  for (int d = 1; d <= N; ++d) {
    if (N % d || cache.count(d)) continue;
    std::vector<long long> p(d + 1, 0);
    p[0] = -1;
    p[d] = 1;
    for (int e = 1; e < d; ++e)
      if (d % e == 0) p = poly_div_exact(p, cache.at(e));
    cache[d] = p;
  }
  return cache.at(N);
}

Cyclo Cyclo::omega_pow(int N, long long m, long long coeff) {
  Cyclo r(N);
  r.c_[((m % N) + N) % N] = coeff;
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  for (int i = 0; i < N(); ++i) c_[i] += o.c_[i];
  return *this;
}
Cyclo& Cyclo::operator-=(const Cyclo& o) {
  for (int i = 0; i < N(); ++i) c_[i] -= o.c_[i];
  return *this;
}
Cyclo Cyclo::operator-() const { return scaled(-1); }

Cyclo Cyclo::operator*(const Cyclo& o) const {
  Cyclo r(N());
  for (int i = 0; i < N(); ++i) {
    if (!c_[i]) continue;
    for (int j = 0; j < N(); ++j) r.c_[(i + j) % N()] += c_[i] * o.c_[j];
  }
  return r;
}

Cyclo Cyclo::times_omega(long long m) const {
  Cyclo r(N());
  int s = int(((m % N()) + N()) % N());
  for (int i = 0; i < N(); ++i) r.c_[(i + s) % N()] = c_[i];
  return r;
}

Cyclo Cyclo::scaled(long long s) const {
  Cyclo r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

bool Cyclo::raw_zero() const {
  for (auto x : c_)
    if (x) return false;
  return true;
}

bool Cyclo::is_zero() const {
  if (raw_zero()) return true;
  const auto& phi = cyclotomic_poly(N());
  int dp = int(phi.size()) - 1;
  std::vector<long long> r = c_;
  for (int i = N() - 1; i >= dp; --i) {
    long long f = r[i];
    if (!f) continue;
    for (int j = 0; j <= dp; ++j) r[i - dp + j] -= f * phi[j];
  }
  for (int i = 0; i < dp; ++i)
    if (r[i]) return false;
  return true;
}

cplx Cyclo::value(const RootContext& ctx) const {
  cplx s = 0.0;
  for (int i = 0; i < N(); ++i)
    if (c_[i]) s += double(c_[i]) * ctx.omega_pow(i);
  return s;
}

// ---------------------------------------------------------------------------

ExactScalar ExactScalar::omega_pow(int N, long long m, long long coeff) {
  ExactScalar r(N);
  if (coeff) r.terms_.emplace(0, Cyclo::omega_pow(N, m, coeff));
  return r;
}

ExactScalar ExactScalar::u_pow(int N, int p) {
  ExactScalar r(N);
  r.terms_.emplace(p, Cyclo::integer(N, 1));
  return r;
}

void ExactScalar::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->second.raw_zero())
      it = terms_.erase(it);
    else
      ++it;
  }
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  for (auto& [p, c] : o.terms_) {
    auto it = terms_.find(p);
    if (it == terms_.end())
      terms_.emplace(p, c);
    else
      it->second += c;
  }
  prune();
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) { return *this += -o; }

ExactScalar ExactScalar::operator-() const {
  ExactScalar r = *this;
  for (auto& [p, c] : r.terms_) c = -c;
  return r;
}

ExactScalar ExactScalar::operator*(const ExactScalar& o) const {
  ExactScalar r(N_);
  for (auto& [p, c] : terms_)
    for (auto& [p2, c2] : o.terms_) {
      auto prod = c * c2;
      auto it = r.terms_.find(p + p2);
      if (it == r.terms_.end())
        r.terms_.emplace(p + p2, prod);
      else
        it->second += prod;
    }
  r.prune();
  return r;
}

ExactScalar ExactScalar::times_omega(long long m) const {
  ExactScalar r = *this;
  for (auto& [p, c] : r.terms_) c = c.times_omega(m);
  return r;
}

bool ExactScalar::is_zero() const {
  if (terms_.empty()) return true;
  // multiply by delta^top where delta = q - q^-1 = omega^-4 - omega^4
  int top = terms_.rbegin()->first;
  int bottom = terms_.begin()->first;
  Cyclo delta = Cyclo::omega_pow(N_, -4) - Cyclo::omega_pow(N_, 4);
  // top - p ranges over [0, top - bottom]
  std::vector<Cyclo> dpow{Cyclo::integer(N_, 1)};
  for (int i = 1; i <= top - bottom; ++i) dpow.push_back(dpow.back() * delta);
  Cyclo total(N_);
  for (auto& [p, c] : terms_) total += c * dpow[top - p];
  return total.is_zero();
}

cplx ExactScalar::value(const RootContext& ctx) const {
  cplx u = 1.0 / ctx.delta();
  cplx s = 0.0;
  for (auto& [p, c] : terms_) s += c.value(ctx) * std::pow(u, p);
  return s;
}

std::optional<long long> ExactScalar::exact_phase() const {
  if (terms_.size() != 1 || terms_.begin()->first != 0) return std::nullopt;
  const auto& cs = terms_.begin()->second.coeffs();
  std::optional<long long> m;
  for (int i = 0; i < int(cs.size()); ++i) {
    if (!cs[i]) continue;
    if (m || (cs[i] != 1 && cs[i] != -1)) return std::nullopt;
    m = i;
  }
  return m;
}

ProvenancedScalar provenanced(const RootContext& ctx, const ExactScalar& s) {
  return {s.value(ctx), s.exact_phase()};
}

}  // namespace qtt
