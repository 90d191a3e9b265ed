#include "qtt/scalars.hpp"

#include <cmath>
#include <numeric>

namespace qtt {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RootContext::RootContext(int N_, int k_, double eps_) : N(N_), k(k_), eps(eps_) {
  if (N < 3 || N % 2 == 0) throw Error("InvalidContext", "N must be odd and >= 3");
  if (std::gcd(((k % N) + N) % N, N) != 1) throw Error("InvalidContext", "k must be coprime to N");
  omega = omega_pow(1);
  A = omega_pow(-2);
  q = omega_pow(-4);
  logq = 2.0 * std::log(A);
}

cplx RootContext::omega_pow(long long m) const {
  long long r = ((m * k) % N + N) % N;
  return std::polar(1.0, 2.0 * kPi * double(r) / double(N));
}

cplx qint(const RootContext& ctx, int n) {
  return (ctx.q_pow(n) - ctx.q_pow(-n)) / ctx.delta();
}

cplx qfact(const RootContext& ctx, int n) {
  if (n < 0) throw Error("QFactorialUndefined", "negative argument");
  if (n >= ctx.N) throw Error("QFactorialUndefined", "[N] = 0, so [n]! vanishes for n >= N");
  cplx out = 1.0;
  for (int i = 1; i <= n; ++i) out *= qint(ctx, i);
  return out;
}

cplx chebyshev_T(int n, cplx x) {
  if (n < 0) throw Error("InvalidArgument", "chebyshev degree must be >= 0");
  cplx prev = 2.0, cur = x;
  if (n == 0) return prev;
  for (int i = 1; i < n; ++i) {
    cplx nxt = x * cur - prev;
    prev = cur;
    cur = nxt;
  }
  return cur;
}

Mat exp_q_truncated(const RootContext& ctx, const Mat& X) {
  if (X.rows() != X.cols()) throw Error("InvalidArgument", "exp_q needs a square matrix");
  Mat out = Mat::Identity(X.rows(), X.cols());
  Mat pw = out;
  cplx fact = 1.0;
  for (int n = 1; n < ctx.N; ++n) {
    pw = pw * X;
    fact *= qint(ctx, n);
    out += ctx.q_pow((long long)n * (n - 1) / 2) / fact * pw;
  }
  return out;
}

cplx principal_root(cplx z, int n) {
  if (z == cplx(0.0)) throw Error("ZeroRadicand", "root of zero");
  return std::exp(std::log(z) / double(n));
}

cplx principal_root(const RootContext& ctx, cplx z) { return principal_root(z, ctx.N); }

std::vector<cplx> nth_roots(const RootContext& ctx, cplx z) {
  cplx r = principal_root(ctx, z);
  std::vector<cplx> out;
  out.reserve(ctx.N);
  for (int j = 0; j < ctx.N; ++j) out.push_back(r * std::polar(1.0, 2.0 * kPi * j / ctx.N));
  return out;
}

cplx q_power(const RootContext& ctx, cplx z) { return std::exp(z * ctx.logq); }

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat identity(int n) { return Mat::Identity(n, n); }

double rel_diff(const Mat& a, const Mat& b) {
  double s = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / s;
}

cplx scalar_of(const Mat& m, double tol, const char* what) {
  cplx c = m.trace() / double(m.rows());
  double dev = (m - c * Mat::Identity(m.rows(), m.cols())).norm();
  if (dev > tol * std::max(1.0, m.norm()))
    throw Error("NotScalarCenter", std::string(what) + " does not act as a scalar");
  return c;
}

Mat mat_pow(const Mat& m, int e) {
  if (e < 0) return mat_pow(m.inverse(), -e);
  Mat out = Mat::Identity(m.rows(), m.cols());
  Mat base = m;
  while (e) {
    if (e & 1) out = out * base;
    base = base * base;
    e >>= 1;
  }
  return out;
}

cplx det_root(const Mat& m) {
  // log-det through LU keeps big N^2 x N^2 determinants from overflowing
  Eigen::PartialPivLU<Mat> lu(m);
  Mat U = lu.matrixLU();
  cplx logdet = std::log(cplx(lu.permutationP().determinant()));
  for (Eigen::Index i = 0; i < U.rows(); ++i) logdet += std::log(U(i, i));
  logdet = cplx(logdet.real(), std::remainder(logdet.imag(), 2.0 * kPi));
  return std::exp(logdet / double(m.rows()));
}

}  // namespace qtt
