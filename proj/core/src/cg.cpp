#include "qtt/cg.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace qtt {

namespace {

constexpr double kTiny = 1e-12;

bool lex_less(cplx a, cplx b) {
  if (std::abs(a.real() - b.real()) > 1e-9 * std::max(1.0, std::abs(a.real()))) return a.real() < b.real();
  return a.imag() < b.imag();
}

// columns e_(i N + j) for i + j = w mod N
Mat weight_selector(int N, int w) {
  Mat P = Mat::Zero(N * N, N);
  for (int i = 0; i < N; ++i) {
    int j = ((w - i) % N + N) % N;
    P(i * N + j, i) = 1.0;
  }
  return P;
}

void require_cyclic(const WeightModuleSpec& s) {
  if (s.family != WeightModuleSpec::Family::Cyclic) throw Error("InvalidArgument", "expected a cyclic module");
}

double t_residual(const Mat& Tm, const Mat& K, cplx t) {
  double n = K.norm();
  return n == 0 ? 0.0 : (Tm * K - t * K).norm() / (n * std::max(1.0, Tm.norm()));
}

}  // namespace

cplx w_coeff(const RootContext& ctx, cplx x, cplx y, cplx z, long long k, double tol) {
  const int N = ctx.N;
  cplx xn = std::pow(x, N), yn = std::pow(y, N), zn = std::pow(z, N);
  double sc = std::max({std::abs(xn), std::abs(yn), std::abs(zn), 1e-300});
  if (std::abs(xn + yn - zn) > tol * sc) throw Error("PeriodicityViolated", "x^N + y^N != z^N");
  int top = int(((k % N) + N) % N);
  cplx w = 1.0;
  for (int i = 0; i <= top; ++i) {
    cplx den = z - x * ctx.q_pow(2 * i);
    if (std::abs(den) <= kTiny * std::max(std::abs(z), 1.0)) throw Error("PoleHit", "z = x q^(2i) at i = " + std::to_string(i));
    w *= y / den;
  }
  return w;
}

CGParameters cg_parameters(const RootContext& ctx, const WeightModuleSpec& v1, const WeightModuleSpec& v2, int alpha,
                           int root_b1, int root_b2, int root_b) {
  require_cyclic(v1);
  require_cyclic(v2);
  const int N = ctx.N;
  CGParameters p;
  p.alpha = ((alpha % N) + N) % N;
  p.b1 = v1.b;
  p.b2 = v2.b;
  p.b = v1.b + v2.b * std::pow(v1.mu, 2 * N);
  if (std::abs(p.b1) < kTiny || std::abs(p.b2) < kTiny || std::abs(p.b) < kTiny)
    throw Error("DegenerateParameters", "b1, b2 and b1 + b2 mu1^(2N) must be nonzero");
  auto pick = [&](cplx z, int j) { return nth_roots(ctx, z).at(((j % N) + N) % N); };
  p.bt1 = pick(p.b1, root_b1);
  p.bt2 = pick(p.b2, root_b2);
  p.bt = pick(p.b, root_b);
  const cplx qa = ctx.q_pow(2 * p.alpha);
  const cplx m1sq = v1.mu * v1.mu, l1sq = v1.lambda * v1.lambda, l2sq = v2.lambda * v2.lambda;
  p.x = p.bt2 * m1sq * qa;
  p.y = p.bt1;
  p.z = p.bt * qa;
  const cplx d = ctx.delta();
  p.a_alpha = p.bt * qa * v2.a / (p.b * p.bt2) +
              p.bt * l2sq * qa / (p.bt * ctx.q_pow(2 * p.alpha - 2) - p.bt2 * m1sq) * ((l1sq - m1sq) / d + v1.a * v1.b);
  const cplx l = v1.lambda * v2.lambda, m = v1.mu * v2.mu;
  p.t_alpha = -(ctx.q * l / m + m / (ctx.q * l)) - d * d * p.b * p.a_alpha / (l * m);
  return p;
}

// ---------------------------------------------------------------------------

std::vector<CGOperator> cg_operators(const RootContext& ctx, const WeightModuleSpec& v1, const WeightModuleSpec& v2) {
  require_cyclic(v1);
  require_cyclic(v2);
  const int N = ctx.N;
  const cplx b = v1.b + v2.b * std::pow(v1.mu, 2 * N);
  if (std::abs(v1.b) < kTiny || std::abs(v2.b) < kTiny || std::abs(b) < kTiny)
    throw Error("DegenerateParameters", "b1, b2 and b1 + b2 mu1^(2N) must be nonzero");

  MatrixRep R = tensor_rep(build_rep(ctx, v1), build_rep(ctx, v2));
  Mat Tm = R.T(ctx);
  Mat P = weight_selector(N, 0);
  Eigen::ComplexEigenSolver<Mat> es(P.transpose() * Tm * P);
  std::vector<int> order(N);
  std::iota(order.begin(), order.end(), 0);
  const auto& ev = es.eigenvalues();
  std::sort(order.begin(), order.end(), [&](int i, int j) { return lex_less(ev(i), ev(j)); });
  double sc = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (int i = 0; i + 1 < N; ++i)
    if (std::abs(ev(order[i]) - ev(order[i + 1])) < 1e-6 * sc)
      throw Error("DegenerateParameters", "T has a repeated eigenvalue on the zero-weight space");

  const cplx l = v1.lambda * v2.lambda, m = v1.mu * v2.mu, d = ctx.delta();
  std::vector<CGOperator> out;
  for (int alpha = 0; alpha < N; ++alpha) {
    CGOperator op;
    op.alpha = alpha;
    op.t = ev(order[alpha]);
    Vec u = P * es.eigenvectors().col(order[alpha]);
    op.K.resize(N * N, N);
    op.K.col(0) = u / u.norm();
    for (int k = 1; k < N; ++k) op.K.col(k) = R.F * op.K.col(k - 1);
    cplx a = (-op.t - (ctx.q * l / m + m / (ctx.q * l))) * l * m / (d * d * b);
    op.target = WeightModuleSpec::cyclic(l, m, a, b);
    op.equivariance = intertwining_residual(op.K, build_rep(ctx, op.target), R);
    op.t_residual = t_residual(Tm, op.K, op.t);
    out.push_back(std::move(op));
  }
  return out;
}

CGOperator cg_operator(const RootContext& ctx, const WeightModuleSpec& v1, const WeightModuleSpec& v2, int alpha) {
  auto all = cg_operators(ctx, v1, v2);
  return all.at(((alpha % ctx.N) + ctx.N) % ctx.N);
}

CGOperator cg_closed_form(const RootContext& ctx, const WeightModuleSpec& v1, const WeightModuleSpec& v2, int alpha,
                          int root_b1, int root_b2, int root_b) {
  const int N = ctx.N;
  auto p = cg_parameters(ctx, v1, v2, alpha, root_b1, root_b2, root_b);
  CGOperator op;
  op.alpha = p.alpha;
  op.K = Mat::Zero(N * N, N);
  for (int k = 0; k < N; ++k)
    for (int i = 0; i < N; ++i) {
      int j = ((k - i) % N + N) % N;
      op.K(i * N + j, k) = std::pow(p.z, k) / (std::pow(p.bt1, i) * std::pow(p.bt2, j)) *
                           w_coeff(ctx, p.x, p.y, p.z, i - p.alpha);
    }
  op.t = p.t_alpha;
  op.target = WeightModuleSpec::cyclic(v1.lambda * v2.lambda, v1.mu * v2.mu, p.a_alpha, p.b);
  MatrixRep R = tensor_rep(build_rep(ctx, v1), build_rep(ctx, v2));
  op.equivariance = intertwining_residual(op.K, build_rep(ctx, op.target), R);
  op.t_residual = t_residual(R.T(ctx), op.K, op.t);
  return op;
}

double borel_residual(const Mat& K, const MatrixRep& src, const MatrixRep& tensor) {
  double worst = 0;
  for (Gen g : {Gen::F, Gen::Kh, Gen::Lh}) {
    Mat a = src.get(g), b = tensor.get(g);
    double scale = K.norm() * (a.norm() + b.norm());
    if (scale > 0) worst = std::max(worst, (K * a - b * K).norm() / scale);
  }
  return worst;
}

// ---------------------------------------------------------------------------

cplx semicyclic_t(const RootContext& ctx, const WeightModuleSpec& v1, const WeightModuleSpec& v2, int alpha) {
  const cplx l = v1.lambda * v2.lambda, m = v1.mu * v2.mu;
  return -ctx.q_pow(2 * alpha) / ctx.q * l / m - ctx.q * ctx.q_pow(-2 * alpha) * m / l;
}

CGOperator cg_operator_semicyclic(const RootContext& ctx, const WeightModuleSpec& v1, const WeightModuleSpec& v2,
                                  int alpha) {
  if (v1.family != WeightModuleSpec::Family::Semi || v2.family != WeightModuleSpec::Family::Semi)
    throw Error("InvalidArgument", "expected semi-cyclic modules");
  const int N = ctx.N;
  alpha = ((alpha % N) + N) % N;
  const cplx c = v2.c + v1.c * std::pow(v2.lambda, 2 * N);
  if (std::abs(v1.c) < kTiny || std::abs(v2.c) < kTiny || std::abs(c) < kTiny)
    throw Error("DegenerateParameters", "c1, c2 and c2 + c1 lambda2^(2N) must be nonzero");

  MatrixRep R = tensor_rep(build_rep(ctx, v1), build_rep(ctx, v2));
  Mat Pa = weight_selector(N, alpha), Pb = weight_selector(N, alpha - 1);
  Eigen::JacobiSVD<Mat> svd(Pb.transpose() * R.F * Pa, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = std::max(1.0, sv(0));
  if (sv(N - 1) > 1e-9 * smax || (N > 1 && sv(N - 2) < 1e-9 * smax))
    throw Error("DegenerateParameters", "lowest-weight vector in weight " + std::to_string(alpha) + " is not unique");

  CGOperator op;
  op.alpha = alpha;
  op.K.resize(N * N, N);
  op.K.col(0) = Pa * svd.matrixV().col(N - 1);
  for (int k = 1; k < N; ++k) op.K.col(k) = R.E * op.K.col(k - 1);
  op.target = WeightModuleSpec::semi(v1.lambda * v2.lambda * ctx.q_pow(alpha), v1.mu * v2.mu * ctx.q_pow(-alpha), c);
  op.t = semicyclic_t(ctx, v1, v2, alpha);
  op.equivariance = intertwining_residual(op.K, build_rep(ctx, op.target), R);
  op.t_residual = t_residual(R.T(ctx), op.K, op.t);
  return op;
}

// ---------------------------------------------------------------------------

std::vector<cplx> chebyshev_roots(int N, cplx tau) {
  // T_N(2 cos x) = 2 cos(N x)
  const double pi = std::acos(-1.0);
  cplx theta = std::acos(tau / 2.0);
  std::vector<cplx> out;
  for (int j = 0; j < N; ++j) out.push_back(2.0 * std::cos((theta + 2.0 * pi * j) / double(N)));
  return out;
}

CGDecomposition cg_decompose(const RootContext& ctx, const MatrixRep& r1, const MatrixRep& r2, double tol) {
  const int N = ctx.N;
  MatrixRep R = tensor_rep(r1, r2);
  Eigen::ComplexEigenSolver<Mat> es(R.T(ctx), false);
  Vec ev = es.eigenvalues();
  const int n = int(ev.size());

  CGDecomposition out;
  out.scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  const double link = tol * out.scale;

  // single linkage
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(ev(i) - ev(j)) < link) parent[find(i)] = find(j);
  std::vector<int> root_index(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (root_index[r] < 0) {
      root_index[r] = int(out.clusters.size());
      out.clusters.push_back({});
    }
    auto& cl = out.clusters[root_index[r]];
    cl.t += ev(i);
    cl.count += 1;
  }
  for (auto& cl : out.clusters) cl.t /= double(cl.count);
  std::sort(out.clusters.begin(), out.clusters.end(), [](const CGCluster& a, const CGCluster& b) { return lex_less(a.t, b.t); });
  for (size_t i = 0; i < out.clusters.size(); ++i)
    for (size_t j = i + 1; j < out.clusters.size(); ++j)
      if (std::abs(out.clusters[i].t - out.clusters[j].t) < 10 * link)
        throw Error("ClusteringAmbiguous", "eigenvalue clusters closer than 10 tol");

  out.trace_phi = classical_shadow(ctx, R, false).phi().trace();
  const bool boundary_trace = std::abs(std::abs(out.trace_phi) - 2.0) < 1e-6 &&
                              std::abs(out.trace_phi.imag()) < 1e-6;
  out.multiplicities_ok = true;
  for (auto& cl : out.clusters) {
    cl.m = cl.count / N;
    if (cl.count % N != 0) out.multiplicities_ok = false;
    bool edge_t = std::abs(cl.t - 2.0) < 1e-6 || std::abs(cl.t + 2.0) < 1e-6;
    cl.expected_m = (boundary_trace && !edge_t) ? 2 : 1;
    if (cl.m != cl.expected_m) out.multiplicities_ok = false;
    out.total_m += cl.m;
  }
  if (r1.dim() == N && r2.dim() == N && out.total_m != N) out.multiplicities_ok = false;

  auto match = [&](const std::vector<cplx>& roots) {
    double worst = 0;
    for (auto& cl : out.clusters) {
      double best = 1e300;
      for (auto r : roots) best = std::min(best, std::abs(cl.t - r));
      worst = std::max(worst, best);
    }
    for (auto r : roots) {
      double best = 1e300;
      for (auto& cl : out.clusters) best = std::min(best, std::abs(cl.t - r));
      worst = std::max(worst, best);
    }
    return worst / out.scale;
  };
  out.match_printed = match(chebyshev_roots(N, out.trace_phi));
  out.match_signed = match(chebyshev_roots(N, -out.trace_phi));
  return out;
}

}  // namespace qtt
