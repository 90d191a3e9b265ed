#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qtt {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Every failure mode of the library carries a short machine-readable kind
// ("PoleHit", "NotExtendable", ...) next to the human message.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

struct RootContext {
  int N = 3;
  int k = 1;
  double eps = 1e-9;

  cplx omega, A, q;
  // log q, fixed once; chosen as 2 Log(A) so that q^(1/2) comes out as A
  cplx logq;

  RootContext(int N = 3, int k = 1, double eps = 1e-9);

  // omega^m with m reduced mod N first, so large exponents stay accurate
  cplx omega_pow(long long m) const;
  cplx q_pow(long long n) const { return omega_pow(-4 * n); }
  cplx delta() const { return q - 1.0 / q; }

  bool operator==(const RootContext& o) const { return N == o.N && k == o.k; }
};

cplx qint(const RootContext& ctx, int n);
cplx qfact(const RootContext& ctx, int n);
cplx chebyshev_T(int n, cplx x);
Mat exp_q_truncated(const RootContext& ctx, const Mat& X);

std::vector<cplx> nth_roots(const RootContext& ctx, cplx z);
cplx principal_root(const RootContext& ctx, cplx z);
cplx principal_root(cplx z, int n);
cplx q_power(const RootContext& ctx, cplx z);

// small numeric helpers shared by the matrix layers
Mat kron(const Mat& a, const Mat& b);
Mat identity(int n);
double rel_diff(const Mat& a, const Mat& b);
// the scalar c when m = c*I; throws NotScalarCenter if m is not scalar to tol
cplx scalar_of(const Mat& m, double tol, const char* what);
Mat mat_pow(const Mat& m, int e);
// det^(1/n) on the principal branch
cplx det_root(const Mat& m);

}  // namespace qtt
