#include "qtt/reps.hpp"

#include <Eigen/SVD>

namespace qtt {

WeightModuleSpec WeightModuleSpec::diag(cplx mu, int eps, int n) {
  WeightModuleSpec s;
  s.family = Family::Diag;
  s.mu = mu;
  s.eps = eps;
  s.n = n;
  return s;
}

WeightModuleSpec WeightModuleSpec::cyclic(cplx lambda, cplx mu, cplx a, cplx b) {
  WeightModuleSpec s;
  s.family = Family::Cyclic;
  s.lambda = lambda;
  s.mu = mu;
  s.a = a;
  s.b = b;
  return s;
}

WeightModuleSpec WeightModuleSpec::semi(cplx lambda, cplx mu, cplx c) {
  WeightModuleSpec s;
  s.family = Family::Semi;
  s.lambda = lambda;
  s.mu = mu;
  s.c = c;
  return s;
}

std::string WeightModuleSpec::family_name() const {
  switch (family) {
    case Family::Diag: return "diag";
    case Family::Cyclic: return "cyclic";
    case Family::Semi: return "semi";
  }
  return "?";
}

Mat MatrixRep::get(Gen g) const {
  switch (g) {
    case Gen::E: return E;
    case Gen::F: return F;
    case Gen::Kh: return Kh;
    case Gen::Khi: return Khi();
    case Gen::Lh: return Lh;
    case Gen::Lhi: return Lhi();
  }
  return {};
}

Mat MatrixRep::word(const Word& w) const {
  Mat m = identity(dim());
  for (Gen g : w) m = m * get(g);
  return m;
}

// T = -H_del (q^-1 K + q L) - (q - q^-1)^2 E F H_del
Mat MatrixRep::T(const RootContext& ctx) const {
  Mat H = Hdel();
  cplx d = ctx.delta();
  return -H * (K() / ctx.q + ctx.q * L()) - d * d * E * F * H;
}

Mat MatrixRep::casimir(const RootContext& ctx) const {
  cplx d = ctx.delta();
  return E * F + (ctx.q * L() + K() / ctx.q) / (d * d);
}

MatrixRep build_rep(const RootContext& ctx, const WeightModuleSpec& s) {
  const int N = ctx.N;
  const cplx d = ctx.delta();
  MatrixRep r;
  auto zero = [](int n) { return Mat::Zero(n, n).eval(); };
  switch (s.family) {
    case WeightModuleSpec::Family::Diag: {
      if (s.mu == 0.0 || (s.eps != 1 && s.eps != -1) || s.n < 0 || s.n >= N)
        throw Error("InvalidParameters", "diag needs mu != 0, eps = +-1, 0 <= n < N");
      const int n = s.n;
      r.E = zero(n + 1);
      r.F = zero(n + 1);
      r.Kh = zero(n + 1);
      r.Lh = zero(n + 1);
      for (int i = 0; i <= n; ++i) {
        r.Kh(i, i) = double(s.eps) * s.mu * ctx.omega_pow(-2LL * (n - 2 * i));
        r.Lh(i, i) = s.mu * ctx.omega_pow(-2LL * (2 * i - n));
      }
      for (int i = 0; i < n; ++i) r.F(i + 1, i) = 1.0;
      for (int i = 1; i <= n; ++i) r.E(i - 1, i) = s.mu * s.mu * qint(ctx, i) * qint(ctx, n - i + 1);
      break;
    }
    case WeightModuleSpec::Family::Cyclic: {
      if (s.lambda == 0.0 || s.mu == 0.0) throw Error("InvalidParameters", "cyclic needs lambda, mu != 0");
      r.E = zero(N);
      r.F = zero(N);
      r.Kh = zero(N);
      r.Lh = zero(N);
      for (int i = 0; i < N; ++i) {
        r.Kh(i, i) = s.lambda * ctx.q_pow(-i);
        r.Lh(i, i) = s.mu * ctx.q_pow(i);
      }
      for (int i = 0; i + 1 < N; ++i) r.F(i + 1, i) = 1.0;
      r.F(0, N - 1) = s.b;
      r.E(N - 1, 0) = s.a;
      const cplx l2 = s.lambda * s.lambda, m2 = s.mu * s.mu;
      for (int i = 1; i < N; ++i)
        r.E(i - 1, i) = (ctx.q_pow(1 - i) * l2 - ctx.q_pow(i - 1) * m2) / d * qint(ctx, i) + s.a * s.b;
      break;
    }
    case WeightModuleSpec::Family::Semi: {
      if (s.lambda == 0.0 || s.mu == 0.0) throw Error("InvalidParameters", "semi needs lambda, mu != 0");
      r.E = zero(N);
      r.F = zero(N);
      r.Kh = zero(N);
      r.Lh = zero(N);
      for (int i = 0; i < N; ++i) {
        r.Kh(i, i) = s.lambda * ctx.q_pow(i);
        r.Lh(i, i) = s.mu * ctx.q_pow(-i);
      }
      for (int i = 0; i + 1 < N; ++i) r.E(i + 1, i) = 1.0;
      r.E(0, N - 1) = s.c;
      const cplx l2 = s.lambda * s.lambda, m2 = s.mu * s.mu;
      // F w_(i+1) = (mu^2 q^-i - lambda^2 q^i)[i+1]/(q - q^-1) w_i, so F w_0 = 0
      for (int i = 0; i + 1 < N; ++i) r.F(i, i + 1) = (m2 * ctx.q_pow(-i) - l2 * ctx.q_pow(i)) * qint(ctx, i + 1) / d;
      break;
    }
  }
  return r;
}

double relation_residual(const RootContext& ctx, const MatrixRep& r) {
  double worst = 0;
  for (auto& rel : presentation_relations(ctx.N)) {
    Mat acc = Mat::Zero(r.dim(), r.dim());
    double scale = 1;
    for (auto& [c, w] : rel.terms) {
      Mat t = c.value(ctx) * r.word(w);
      scale += t.norm();
      acc += t;
    }
    worst = std::max(worst, acc.norm() / scale);
  }
  return worst;
}

// ---------------------------------------------------------------------------

MatrixRep tensor_rep(const MatrixRep& a, const MatrixRep& b) {
  MatrixRep r;
  r.E = kron(identity(a.dim()), b.E) + kron(a.E, b.K());
  r.F = kron(a.F, identity(b.dim())) + kron(a.L(), b.F);
  r.Kh = kron(a.Kh, b.Kh);
  r.Lh = kron(a.Lh, b.Lh);
  return r;
}

std::vector<Mat> intertwiner_space(const MatrixRep& r1, const MatrixRep& r2, double tol) {
  const int n1 = r1.dim(), n2 = r2.dim();
  const Gen gens[] = {Gen::E, Gen::F, Gen::Kh, Gen::Lh};
  Mat sys(4 * n1 * n2, n1 * n2);
  for (int g = 0; g < 4; ++g) {
    // vec(M A) = (A^T (x) I) vec M,  vec(B M) = (I (x) B) vec M
    sys.block(g * n1 * n2, 0, n1 * n2, n1 * n2) =
        kron(r1.get(gens[g]).transpose(), identity(n2)) - kron(identity(n1), r2.get(gens[g]));
  }
  Eigen::BDCSVD<Mat> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double smax = sv.size() ? sv(0) : 0.0;
  std::vector<Mat> out;
  for (int j = 0; j < n1 * n2; ++j) {
    double s = j < sv.size() ? sv(j) : 0.0;
    if (s > tol * std::max(1.0, smax)) continue;
    Vec v = svd.matrixV().col(j);
    out.push_back(Eigen::Map<Mat>(v.data(), n2, n1));
  }
  return out;
}

int commutant_dim(const MatrixRep& r, double tol) { return int(intertwiner_space(r, r, tol).size()); }

double intertwining_residual(const Mat& M, const MatrixRep& r1, const MatrixRep& r2) {
  double worst = 0;
  for (Gen g : {Gen::E, Gen::F, Gen::Kh, Gen::Lh}) {
    Mat a = r1.get(g), b = r2.get(g);
    double scale = M.norm() * (a.norm() + b.norm());
    if (scale == 0) continue;
    worst = std::max(worst, (M * a - b * M).norm() / scale);
  }
  return worst;
}

ExactSequenceReport exact_sequence_check(const RootContext& ctx, cplx mu, int eps, int n) {
  const int N = ctx.N;
  if (n < 0 || n > N - 2) throw Error("InvalidParameters", "exact sequence needs 0 <= n <= N-2");
  auto sub = build_rep(ctx, WeightModuleSpec::diag(mu, eps, N - n - 2));
  auto mid = build_rep(ctx, WeightModuleSpec::cyclic(double(eps) * mu * ctx.omega_pow(-2LL * n),
                                                     mu * ctx.omega_pow(2LL * n), 0.0, 0.0));
  auto quo = build_rep(ctx, WeightModuleSpec::diag(mu, eps, n));
  Mat I = Mat::Zero(N, N - n - 1), P = Mat::Zero(n + 1, N);
  for (int j = 0; j < N - n - 1; ++j) I(j + n + 1, j) = 1.0;
  for (int j = 0; j <= n; ++j) P(j, j) = 1.0;

  ExactSequenceReport rep;
  rep.equivariance_i = intertwining_residual(I, sub, mid);
  rep.equivariance_p = intertwining_residual(P, mid, quo);
  rep.rank_i = int(Eigen::FullPivLU<Mat>(I).rank());
  rep.rank_p = int(Eigen::FullPivLU<Mat>(P).rank());
  rep.composite = (P * I).norm();

  // a section r: quo -> mid with p r = id must live in the intertwiner space
  auto basis = intertwiner_space(quo, mid);
  if (basis.empty()) {
    rep.splits = false;
    rep.section_residual = 1.0;
    return rep;
  }
  const int m = int(basis.size()), k = (n + 1) * (n + 1);
  Mat sys(k, m);
  for (int j = 0; j < m; ++j) {
    Mat pr = P * basis[j];
    sys.col(j) = Eigen::Map<Vec>(pr.data(), k);
  }
  Mat id = identity(n + 1);
  Vec rhs = Eigen::Map<Vec>(id.data(), k);
  Vec c = sys.completeOrthogonalDecomposition().solve(rhs);
  rep.section_residual = (sys * c - rhs).norm() / rhs.norm();
  rep.splits = rep.section_residual < 1e-8;
  return rep;
}

}  // namespace qtt
