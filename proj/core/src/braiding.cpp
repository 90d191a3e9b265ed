#include "qtt/braiding.hpp"

#include <random>

namespace qtt {

namespace {

// X_i^p on the seven edges of Delta_2
Expo x7(std::initializer_list<std::pair<int, int>> ps) {
  Expo k(7, 0);
  for (auto [i, p] : ps) k[i - 1] += 2 * p;
  return k;
}

Expo z7(std::initializer_list<int> edges) {
  Expo k(7, 0);
  for (int e : edges) k[e - 1] += 1;
  return k;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

bool degenerate(cplx z, double delta) {
  return !std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) < delta || std::abs(z - 1.0) < delta ||
         std::abs(z) > 1.0 / delta;
}

cplx power_scalar(const Mat& m, int N, const char* what) { return scalar_of(mat_pow(m, N), 1e-7, what); }

Mat inverse_checked(const Mat& m, const std::string& name) {
  Eigen::FullPivLU<Mat> lu(m);
  if (!lu.isInvertible() || lu.rcond() < 1e-13) throw Error("SingularSum", "sum in the image of " + name + " is singular");
  return lu.inverse();
}

}  // namespace

// ---------------------------------------------------------------------------

ShapeParameter ShapeParameter::from_z(cplx z) { return {z, 1.0 / (1.0 - z), 1.0 - 1.0 / z}; }

ShapeParameter ShapeParameter::from_zp(cplx zp) {
  cplx z = 1.0 - 1.0 / zp;
  return {z, zp, 1.0 - 1.0 / z};
}

double ShapeParameter::residual() const {
  return std::max(std::abs(z * zp * zpp + 1.0), std::abs(z * zpp - z + 1.0));
}

ShapeParameter QShapeParameter::classical(int N) const { return {std::pow(w, N), std::pow(wp, N), std::pow(wpp, N)}; }

double QShapeParameter::residual(const RootContext& ctx) const { return std::abs(w * wp * wpp + 1.0 / ctx.q); }

Mat phi_w(const RootContext& ctx, cplx w, const Mat& X, double tol) {
  const int N = ctx.N;
  Mat XN = mat_pow(X, N);
  cplx c = XN.trace() / double(X.rows());
  if ((XN - c * identity(int(X.rows()))).norm() > tol * std::max(1.0, XN.norm()))
    throw Error("PreconditionXNnotScalar", "X^N is not a scalar");
  if (std::abs(std::pow(w, N) * (1.0 + c) - 1.0) > 1e-6 * std::max(1.0, std::abs(std::pow(w, N) * (1.0 + c))))
    throw Error("PreconditionXNnotScalar", "w^N (1 + X^N) != 1");
  Mat out = identity(int(X.rows()));
  Mat pw = out;
  cplx den = 1.0;
  for (int n = 1; n < N; ++n) {
    cplx f = ctx.q_pow(n) * w - ctx.q_pow(-n);
    if (std::abs(f) < 1e-12 * std::max(1.0, std::abs(w))) throw Error("PoleDenominator", "q^n w = q^-n");
    den *= f;
    pw = pw * (-w * X);
    out += ctx.q_pow((long long)n * (n - 1) / 2) / den * pw;
  }
  return out;
}

ClassicalShapes classical_shapes(const RootContext& ctx, const StandardModuleSpec& v1, const StandardModuleSpec& v2,
                                 double delta) {
  ChainModule cm(ctx, {v1, v2});
  ClassicalShapes s;
  const int N = ctx.N;
  s.x3 = power_scalar(cm.mono(x7({{3, 1}})), N, "X3^N");
  s.x4 = power_scalar(cm.mono(x7({{4, 1}})), N, "X4^N");
  s.x5 = power_scalar(cm.mono(x7({{5, 1}})), N, "X5^N");
  cplx z1 = -1.0 / s.x4;
  cplx z2p = -1.0 / (s.x5 * (1.0 + s.x4));
  cplx z3p = -1.0 / (s.x3 * (1.0 + s.x4));
  cplx z4 = -s.x4 / ((1.0 + s.x5 * (1.0 + s.x4)) * (1.0 + s.x3 * (1.0 + s.x4)));
  s.z = {ShapeParameter::from_z(z1), ShapeParameter::from_zp(z2p), ShapeParameter::from_zp(z3p),
         ShapeParameter::from_z(z4)};
  for (int i = 0; i < 4; ++i)
    for (cplx v : {s.z[i].z, s.z[i].zp, s.z[i].zpp})
      if (degenerate(v, delta)) throw Error("NotTriangulable", "shape parameter " + std::to_string(i + 1) + " is degenerate");
  return s;
}

// ---------------------------------------------------------------------------

double Octahedron::worst() const {
  double w = 0;
  for (auto& [name, v] : residuals)
    if (name.find("printed") == std::string::npos) w = std::max(w, v);
  return w;
}

Octahedron solve_octahedron(const RootContext& ctx, const StandardModuleSpec& v1, const StandardModuleSpec& v2,
                            const RootChoices& roots) {
  const int N = ctx.N;
  Octahedron o;
  o.shapes = classical_shapes(ctx, v1, v2);
  auto& z = o.shapes.z;
  auto pick = [&](cplx val, int j) { return nth_roots(ctx, val).at(((j % N) + N) % N); };
  const cplx w1p = pick(z[0].zp, roots.w[0]), w2pp = pick(z[1].zpp, roots.w[1]);
  const cplx w3pp = pick(z[2].zpp, roots.w[2]), w4p = pick(z[3].zp, roots.w[3]);

  auto& P = o.params;
  P.xt4 = v1.hdel * v2.x1 / (v1.hp * v1.x1);
  P.xt3 = v1.hp / (v1.hdel * v1.lambda * v1.lambda);
  P.xt5 = v2.lambda * v2.lambda * v2.hp * v2.hdel;
  const cplx qi = 1.0 / ctx.q;
  auto complete = [&](QShapeParameter& s) {
    if (s.w == 0.0) s.w = -qi / (s.wp * s.wpp);
    else if (s.wp == 0.0) s.wp = -qi / (s.w * s.wpp);
    else s.wpp = -qi / (s.w * s.wp);
  };
  // first q-shape: w1 is forced by the argument -w1 A (x) A^-1 = rho(X4^-1)
  P.w[0] = {-1.0 / P.xt4, w1p, 0.0};
  P.w[1] = {0.0, -w1p / (P.xt4 * P.xt5), w2pp};
  P.w[2] = {0.0, -w1p / (P.xt4 * P.xt3), w3pp};
  P.w[3] = {-w1p * w1p * w2pp * w3pp / (P.xt3 * P.xt4 * P.xt5), w4p, 0.0};
  for (auto& s : P.w) complete(s);

  P.sroot = std::sqrt(w1p * w2pp * w3pp * w4p);
  if (roots.sroot % 2) P.sroot = -P.sroot;
  P.alpha = roots.alpha;
  P.beta = roots.beta;

  const cplx s = P.sroot;
  const cplx lam4 = v1.lambda * s, lam3 = v2.lambda / s;
  const cplx mu2 = 1.0 / (v2.lambda * v2.hdel), mu3 = 1.0 / (lam3 * v2.hdel);
  o.v3 = {w2pp * w4p * v2.x1 * ctx.q_pow(P.alpha) / (lam4 * lam4), lam3, v2.hp, v2.hdel};
  o.v4 = {v1.x1 * mu3 * mu3 * ctx.q_pow(P.beta) / (w3pp * w4p), lam4, v1.hp, v1.hdel};

  auto& R = o.residuals;
  ChainModule cm(ctx, {v1, v2});
  {
    // read w1 back from the matrix of rho(X4^-1) against A (x) A^-1
    Mat a1 = cm.mono(x7({{4, -1}}));
    Mat AA = kron(shift_A(N), shift_A(N).inverse());
    Eigen::Index r, c;
    AA.cwiseAbs().maxCoeff(&r, &c);
    R.push_back({"E1", rel(-a1(r, c) / AA(r, c), P.w[0].w)});
    R.push_back({"E1 printed", rel(P.w[0].w, -P.xt4)});
  }
  R.push_back({"E2", rel(P.w[1].wp, -w1p / (P.xt4 * P.xt5))});
  R.push_back({"E3", rel(P.w[2].wp, -w1p / (P.xt4 * P.xt3))});
  R.push_back({"E4", rel(P.w[3].w, -w1p * w1p * w2pp * w3pp / (P.xt3 * P.xt4 * P.xt5))});
  for (int i = 0; i < 4; ++i) {
    auto cl = P.w[i].classical(N);
    double d = std::max({rel(cl.z, z[i].z), rel(cl.zp, z[i].zp), rel(cl.zpp, z[i].zpp)});
    R.push_back({"w" + std::to_string(i + 1) + "^N", d});
    R.push_back({"w" + std::to_string(i + 1) + " product", P.w[i].residual(ctx)});
  }
  R.push_back({"quantum Thurston", rel(P.w[0].w * P.w[1].w * P.w[2].w * P.w[3].w, ctx.q_pow(-2))});
  R.push_back({"E5", rel(w3pp * w4p, v1.x1 / o.v4.x1 * mu3 * mu3 * ctx.q_pow(P.beta))});
  R.push_back({"E6", rel(w2pp * w4p, o.v3.x1 / v2.x1 * lam4 * lam4 * ctx.q_pow(-P.alpha))});
  R.push_back({"E7", std::max(rel(lam4 / v1.lambda, s), rel(v2.lambda / lam3, s))});
  R.push_back({"E5 printed", rel(w3pp * w4p, v1.x1 / o.v4.x1 / (lam3 * lam3 * o.v3.hdel))});
  R.push_back({"E6 printed", rel(w2pp * w4p, o.v3.x1 / v2.x1 / (lam4 * lam4))});
  o.alpha_printed = std::log(v1.lambda * v1.lambda / (w2pp * w4p)) / ctx.logq;
  o.beta_printed = std::log(w3pp * w4p / (mu2 * mu2)) / ctx.logq;
  // the flattening actually used, in the E8 shape: q^alpha = lambda1^2 / (w2'' w4') after the
  // x1 rescaling, and q^beta = w3'' w4' / mu2^2
  R.push_back({"E8", std::max(rel(ctx.q_pow(P.alpha), o.v3.x1 * lam4 * lam4 / (w2pp * w4p * v2.x1)),
                              rel(ctx.q_pow(P.beta), o.v4.x1 * w3pp * w4p / (v1.x1 * mu3 * mu3)))});
  return o;
}

Mat d_alpha_beta(const RootContext& ctx, cplx alpha, cplx beta) {
  const int N = ctx.N;
  Mat D = Mat::Zero(N * N, N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) D(i * N + j, i * N + j) = q_power(ctx, (alpha - 2.0 * i) * (beta - 2.0 * j) / 2.0);
  return D;
}

Mat flip(int n1, int n2) {
  Mat T = Mat::Zero(n1 * n2, n1 * n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) T(j * n1 + i, i * n2 + j) = 1.0;
  return T;
}

BraidingOperator closed_formula_R(const RootContext& ctx, const StandardModuleSpec& v1, const StandardModuleSpec& v2,
                                  const Octahedron& oct) {
  const int N = ctx.N;
  const auto& P = oct.params;
  const cplx w1p = P.w[0].wp, w2pp = P.w[1].wpp, w3pp = P.w[2].wpp, w4p = P.w[3].wp;
  ChainModule cm(ctx, {v1, v2});
  // the four arguments, Weyl ordered through the Delta_2 torus
  Mat a1 = cm.mono(x7({{4, -1}}));
  Mat a2 = w1p * cm.mono(x7({{4, -1}, {5, -1}}));
  Mat a3 = w1p * cm.mono(x7({{3, -1}, {4, -1}}));
  Mat a4 = w1p * w1p * w2pp * w3pp * cm.mono(x7({{3, -1}, {4, -1}, {5, -1}}));
  Mat prod = phi_w(ctx, w4p, a4) * phi_w(ctx, w3pp, a3) * phi_w(ctx, w2pp, a2) * phi_w(ctx, w1p, a1);
  Mat raw = flip(N, N) * d_alpha_beta(ctx, double(P.alpha), double(P.beta)) * prod;

  BraidingOperator R;
  R.d = det_root(raw);
  R.matrix = raw / R.d;
  R.src1 = v1;
  R.src2 = v2;
  R.dst1 = oct.v3;
  R.dst2 = oct.v4;
  R.provenance = BraidingOperator::Provenance::ClosedFormula;
  return R;
}

BraidingOperator closed_formula_R(const RootContext& ctx, const StandardModuleSpec& v1, const StandardModuleSpec& v2,
                                  const RootChoices& roots) {
  return closed_formula_R(ctx, v1, v2, solve_octahedron(ctx, v1, v2, roots));
}

// ---------------------------------------------------------------------------

std::vector<GeneratorImage> script_R_targets(const RootContext& ctx, const StandardModuleSpec& v1,
                                             const StandardModuleSpec& v2, const StandardModuleSpec& v3,
                                             const StandardModuleSpec& v4) {
  const int N = ctx.N;
  ChainModule src(ctx, {v1, v2}), dst(ctx, {v3, v4});
  auto S = [&](const Expo& k) { return src.mono(k); };
  auto T = [&](std::initializer_list<std::pair<int, int>> ps) { return dst.mono(x7(ps)); };
  std::vector<GeneratorImage> out;
  out.push_back({"X1", S(x7({{1, 1}})),
                 inverse_checked(T({{1, -1}}) + T({{1, -1}, {2, -1}}) + T({{1, -1}, {2, -1}, {4, -1}}), "X1")});
  out.push_back({"X2", S(x7({{2, 1}})),
                 T({{4, 1}, {5, 1}}) + T({{5, 1}}) + T({{2, 1}, {4, 1}, {5, 1}}) + T({{4, 1}, {5, 1}, {6, 1}}) +
                     T({{2, 1}, {4, 1}, {5, 1}, {6, 1}})});
  out.push_back({"X3", S(x7({{3, 1}})),
                 inverse_checked(T({{6, -1}}) + T({{4, 1}}) + T({{2, 1}, {4, 1}}) + T({{6, -1}, {4, 1}}) +
                                     T({{2, 1}, {4, 1}, {6, -1}}),
                                 "X3")});
  out.push_back({"X5", S(x7({{5, 1}})),
                 inverse_checked(T({{2, -1}}) + T({{4, 1}}) + T({{4, 1}, {6, 1}}) + T({{2, -1}, {4, 1}}) +
                                     T({{2, -1}, {4, 1}, {6, 1}}),
                                 "X5")});
  out.push_back({"X6", S(x7({{6, 1}})),
                 T({{3, 1}}) + T({{3, 1}, {4, 1}}) + T({{3, 1}, {4, 1}, {6, 1}}) + T({{2, 1}, {3, 1}, {4, 1}}) +
                     T({{2, 1}, {3, 1}, {4, 1}, {6, 1}})});
  out.push_back({"X7", S(x7({{7, 1}})),
                 inverse_checked(T({{7, -1}}) + T({{6, -1}, {7, -1}}) + T({{4, -1}, {6, -1}, {7, -1}}), "X7")});
  out.push_back({"Hp1", S(z7({2, 3})), dst.mono(z7({5, 6}))});
  out.push_back({"Hp2", S(z7({5, 6})), dst.mono(z7({2, 3}))});

  auto r1 = standard_rep(ctx, v1), r2 = standard_rep(ctx, v2), r3 = standard_rep(ctx, v3), r4 = standard_rep(ctx, v4);
  auto rs = tensor_rep(r1, r2), rt = tensor_rep(r3, r4);
  out.push_back({"Delta(K^1/2)", rs.Kh, rt.Kh});
  out.push_back({"Delta(L^1/2)", rs.Lh, rt.Lh});

  Mat I = identity(N);
  const cplx d = ctx.delta();
  Mat fac = identity(N * N) - ctx.q * d * d * kron(r3.F * r3.L().inverse(), r4.K().inverse() * r4.E);
  Mat facinv = inverse_checked(fac, "KR1");
  out.push_back({"KR1", kron(I, r2.K()), kron(r3.K(), I) * facinv});
  out.push_back({"KR2", kron(I, r2.L().inverse()), kron(r3.L().inverse(), I) * facinv});
  out.push_back({"KR3", kron(r1.E, I), kron(r3.L().inverse(), r4.E)});
  out.push_back({"KR4", kron(I, r2.F), kron(r3.F, r4.K().inverse())});
  out.push_back({"KR5 E", rs.E, rt.E});
  out.push_back({"KR5 F", rs.F, rt.F});
  return out;
}

GeneratorImage script_R_x4(const RootContext& ctx, const StandardModuleSpec& v1, const StandardModuleSpec& v2,
                           const StandardModuleSpec& v3, const StandardModuleSpec& v4) {
  auto imgs = script_R_targets(ctx, v1, v2, v3, v4);
  auto find = [&](const std::string& n) -> const GeneratorImage& {
    for (auto& g : imgs)
      if (g.name == n) return g;
    throw Error("InvalidArgument", n);
  };
  // X4 = c Delta(K^-1) X1^-1 X3^-1 X6^-1 X7^-1 with c fixed by the source side
  auto& K = find("Delta(K^1/2)");
  Mat srcK = (K.source * K.source).inverse(), dstK = (K.target * K.target).inverse();
  Mat s = srcK, t = dstK;
  for (const char* n : {"X1", "X3", "X6", "X7"}) {
    s = s * find(n).source.inverse();
    t = t * find(n).target.inverse();
  }
  ChainModule src(ctx, {v1, v2});
  Mat x4 = src.mono(x7({{4, 1}}));
  Eigen::Index r, c;
  x4.cwiseAbs().maxCoeff(&r, &c);
  cplx scale = x4(r, c) / s(r, c);
  return {"X4", x4, scale * t};
}

ResidualReport intertwiner_residual(const RootContext&, const Mat& R, const std::vector<GeneratorImage>& images) {
  ResidualReport rep;
  for (auto& g : images) {
    double v = (g.target * R - R * g.source).norm() / (R.norm() * g.source.norm());
    rep.items.push_back({g.name, v});
    rep.worst = std::max(rep.worst, v);
  }
  return rep;
}

ResidualReport intertwiner_residual(const RootContext& ctx, const BraidingOperator& R) {
  return intertwiner_residual(ctx, R.matrix, script_R_targets(ctx, R.src1, R.src2, R.dst1, R.dst2));
}

// ---------------------------------------------------------------------------

std::pair<cplx, cplx> drinfeld_weights(const RootContext& ctx, const MatrixRep& r1, const MatrixRep& r2) {
  const int N = ctx.N;
  auto diag_ok = [&](const Mat& m) { return (m - Mat(m.diagonal().asDiagonal())).norm() <= 1e-12 * m.norm(); };
  if (!diag_ok(r1.Kh) || !diag_ok(r2.Lh)) throw Error("NotDiagonalFamily", "K^1/2 or L^1/2 is not diagonal");
  if (mat_pow(r1.E, N).norm() > 1e-9 * std::max(1.0, std::pow(r1.E.norm(), N)) ||
      mat_pow(r2.F, N).norm() > 1e-9 * std::max(1.0, std::pow(r2.F.norm(), N)))
    throw Error("NotDiagonalFamily", "E^N or F^N does not vanish");
  cplx h = 2.0 * std::log(r1.Kh(0, 0)) / ctx.logq;
  cplx g = 2.0 * std::log(r2.Lh(0, 0)) / ctx.logq;
  for (int i = 0; i < r1.dim(); ++i)
    if (rel(r1.Kh(i, i), q_power(ctx, h / 2.0 - double(i))) > 1e-9)
      throw Error("NotDiagonalFamily", "K^1/2 is not q^(h/2 - i) in this basis");
  for (int j = 0; j < r2.dim(); ++j)
    if (rel(r2.Lh(j, j), q_power(ctx, g / 2.0 + double(j))) > 1e-9)
      throw Error("NotDiagonalFamily", "L^1/2 is not q^(g/2 + j) in this basis");
  return {h, g};
}

Mat drinfeld_R(const RootContext& ctx, const MatrixRep& r1, const MatrixRep& r2, cplx h, cplx g, bool normalize) {
  drinfeld_weights(ctx, r1, r2);
  const int n1 = r1.dim(), n2 = r2.dim();
  Mat Q = Mat::Zero(n1 * n2, n1 * n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) Q(i * n2 + j, i * n2 + j) = q_power(ctx, -(h - 2.0 * i) * (g + 2.0 * j) / 2.0);
  Mat R = flip(n1, n2) * Q * exp_q_truncated(ctx, ctx.delta() * kron(r1.E, r2.F));
  if (normalize) R /= det_root(R);
  return R;
}

Mat module_iso(const MatrixRep& w, const MatrixRep& v) {
  auto sp = intertwiner_space(w, v);
  if (sp.size() != 1) throw Error("NonProportional", "expected a one-dimensional space of isomorphisms, got " +
                                                         std::to_string(sp.size()));
  return sp[0] / det_root(sp[0]);
}

Proportionality compare_drinfeld_kashaev(const RootContext& ctx, const Mat& RD, const MatrixRep& w,
                                         const BraidingOperator& RK) {
  Mat B1 = module_iso(w, standard_rep(ctx, RK.src1)), B2 = module_iso(w, standard_rep(ctx, RK.src2));
  Mat B3 = module_iso(w, standard_rep(ctx, RK.dst1)), B4 = module_iso(w, standard_rep(ctx, RK.dst2));
  Mat RKw = kron(B3, B4).inverse() * RK.matrix * kron(B1, B2);
  Eigen::Index r, c;
  RD.cwiseAbs().maxCoeff(&r, &c);
  Proportionality p;
  p.zeta = RD(r, c) / RKw(r, c);
  p.residual = (RD - p.zeta * RKw).norm() / RD.norm();
  p.root_of_unity = std::abs(std::pow(p.zeta, ctx.N * ctx.N) - 1.0);
  Mat RDs = kron(B3, B4) * RD * kron(B1, B2).inverse();
  p.rd_intertwiner =
      intertwiner_residual(ctx, RDs, script_R_targets(ctx, RK.src1, RK.src2, RK.dst1, RK.dst2)).worst;
  if (p.residual > 1e-4) throw Error("NonProportional", "R^D is not a multiple of the closed-formula braiding");
  return p;
}

// ---------------------------------------------------------------------------

Mat standard_iso(const RootContext& ctx, const StandardModuleSpec& a, const StandardModuleSpec& b) {
  StandardModule A(ctx, a), B(ctx, b);
  auto op = [&](const Expo& k) { return OpPair{A.mono(k), B.mono(k)}; };
  auto r = realign_monomial({op(d1::Z134), op(d1::Hp), op(d1::Hdel)}, {op(d1::X1)}, {});
  return r.Psi / det_root(r.Psi);
}

namespace {

bool same_spec(const StandardModuleSpec& a, const StandardModuleSpec& b) {
  return rel(a.x1, b.x1) < 1e-10 && rel(a.lambda, b.lambda) < 1e-10 && rel(a.hp, b.hp) < 1e-10 &&
         rel(a.hdel, b.hdel) < 1e-10;
}

}  // namespace

YangBaxterReport yang_baxter_check(const RootContext& ctx, const std::array<BraidingOperator, 6>& R) {
  const int N = ctx.N;
  auto need = [](bool ok, const char* what) {
    if (!ok) throw Error("ChainMismatch", what);
  };
  need(same_spec(R[1].src1, R[0].dst2), "R2 must start where R1 ends on the right");
  need(same_spec(R[2].src1, R[0].dst1) && same_spec(R[2].src2, R[1].dst1), "R3 source");
  need(same_spec(R[3].src1, R[0].src2) && same_spec(R[3].src2, R[1].src2), "R4 source");
  need(same_spec(R[4].src1, R[0].src1) && same_spec(R[4].src2, R[3].dst1), "R5 source");
  need(same_spec(R[5].src1, R[4].dst2) && same_spec(R[5].src2, R[3].dst2), "R6 source");

  Mat I = identity(N);
  Mat lhs = kron(R[2].matrix, I) * kron(I, R[1].matrix) * kron(R[0].matrix, I);
  Mat rhs = kron(I, R[5].matrix) * kron(R[4].matrix, I) * kron(I, R[3].matrix);
  std::array<StandardModuleSpec, 3> left{R[2].dst1, R[2].dst2, R[1].dst2};
  std::array<StandardModuleSpec, 3> right{R[4].dst1, R[5].dst1, R[5].dst2};

  YangBaxterReport rep;
  Mat Psi;
  try {
    Psi = identity(1);
    for (int f = 0; f < 3; ++f) Psi = kron(Psi, standard_iso(ctx, left[f], right[f]));
    rep.factorwise = true;
  } catch (const Error& e) {
    if (e.kind() != "NoMatch" && e.kind() != "RecurrenceInconsistent") throw;
    ChainModule a(ctx, {left[0], left[1], left[2]}), b(ctx, {right[0], right[1], right[2]});
    Psi = realign_Dn(a, b).Psi;
    Psi /= det_root(Psi);
  }
  Mat pl = Psi * lhs;
  Eigen::Index r, c;
  rhs.cwiseAbs().maxCoeff(&r, &c);
  rep.c = pl(r, c) / rhs(r, c);
  rep.residual = (pl - rep.c * rhs).norm() / pl.norm();
  rep.root_of_unity = std::abs(std::pow(rep.c, N * N) - 1.0);
  return rep;
}

YangBaxterReport yang_baxter_triple(const RootContext& ctx, const StandardModuleSpec& v1,
                                    const StandardModuleSpec& v2, const StandardModuleSpec& v3,
                                    std::array<BraidingOperator, 6>* out) {
  std::array<BraidingOperator, 6> R;
  R[0] = closed_formula_R(ctx, v1, v2);
  R[1] = closed_formula_R(ctx, R[0].dst2, v3);
  R[2] = closed_formula_R(ctx, R[0].dst1, R[1].dst1);
  R[3] = closed_formula_R(ctx, v2, v3);
  R[4] = closed_formula_R(ctx, v1, R[3].dst1);
  R[5] = closed_formula_R(ctx, R[4].dst2, R[3].dst2);
  if (out) *out = R;
  return yang_baxter_check(ctx, R);
}

// ---------------------------------------------------------------------------

std::array<cplx, 4> classical_forward(int N, const std::array<cplx, 4>& u, cplx hp1, cplx hd1, cplx hp2, cplx hd2) {
  const cplx X1 = std::exp(u[0]), X2 = std::exp(u[1]), L1 = std::exp(u[2]), L2 = std::exp(u[3]);
  const cplx HP1 = std::pow(hp1, N), HD1 = std::pow(hd1, N), HP2 = std::pow(hp2, N), HD2 = std::pow(hd2, N);
  const cplx x4 = HD1 * X2 / (HP1 * X1), x3 = HP1 / (HD1 * L1 * L1), x5 = L2 * L2 * HP2 * HD2;
  auto z1 = ShapeParameter::from_z(-1.0 / x4);
  auto z2 = ShapeParameter::from_zp(-1.0 / (x5 * (1.0 + x4)));
  auto z3 = ShapeParameter::from_zp(-1.0 / (x3 * (1.0 + x4)));
  auto z4 = ShapeParameter::from_z(-x4 / ((1.0 + x5 * (1.0 + x4)) * (1.0 + x3 * (1.0 + x4))));
  const cplx S2 = z1.zp * z2.zpp * z3.zpp * z4.zp;  // s^(2N)
  const cplx L4sq = L1 * L1 * S2, L3sq = L2 * L2 / S2;
  const cplx X3 = z2.zpp * z4.zp * X2 / L4sq;
  const cplx M3sq = 1.0 / (L3sq * HD2 * HD2);
  const cplx X4 = X1 * M3sq / (z3.zpp * z4.zp);
  return {X3, X4, L3sq, L4sq};
}

std::pair<StandardModuleSpec, StandardModuleSpec> inverse_octahedron(const RootContext& ctx,
                                                                     const StandardModuleSpec& v3,
                                                                     const StandardModuleSpec& v4, unsigned seed) {
  const int N = ctx.N;
  // the source pair shares h_p, h_del with the crossed target pair
  const cplx hp1 = v4.hp, hd1 = v4.hdel, hp2 = v3.hp, hd2 = v3.hdel;
  const std::array<cplx, 4> target{std::pow(v3.x1, N), std::pow(v4.x1, N), std::pow(v3.lambda, 2 * N),
                                   std::pow(v4.lambda, 2 * N)};
  auto F = [&](const std::array<cplx, 4>& u) {
    auto f = classical_forward(N, u, hp1, hd1, hp2, hd2);
    std::array<cplx, 4> r;
    for (int i = 0; i < 4; ++i) {
      cplx l = std::log(f[i] / target[i]);
      r[i] = l;
    }
    return r;
  };
  auto finite = [](const std::array<cplx, 4>& r) {
    for (auto v : r)
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
  };
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd(0.0, 0.5);
  // a natural start: the crossing roughly swaps the two factors
  std::array<cplx, 4> start{std::log(std::pow(v4.x1, N)), std::log(std::pow(v3.x1, N)),
                            double(N) * std::log(v4.lambda), double(N) * std::log(v3.lambda)};
  for (int attempt = 0; attempt < 60; ++attempt) {
    std::array<cplx, 4> u = start;
    if (attempt > 0)
      for (auto& v : u) v = cplx(nd(rng), nd(rng)) + (attempt < 20 ? v : cplx(0.0));
    bool ok = false;
    for (int it = 0; it < 100; ++it) {
      auto f = F(u);
      if (!finite(f)) break;
      double err = 0;
      for (auto v : f) err = std::max(err, std::abs(v));
      if (err < 1e-13) {
        ok = true;
        break;
      }
      Eigen::Matrix4cd J;
      const double h = 1e-7;
      for (int j = 0; j < 4; ++j) {
        auto up = u;
        up[j] += h;
        auto g = F(up);
        for (int i = 0; i < 4; ++i) {
          cplx d = g[i] - f[i];
          d = cplx(d.real(), std::remainder(d.imag(), 2.0 * std::acos(-1.0)));
          J(i, j) = d / h;
        }
      }
      Eigen::Vector4cd rhs;
      for (int i = 0; i < 4; ++i) rhs(i) = f[i];
      Eigen::Vector4cd step = J.fullPivLu().solve(rhs);
      if (!step.allFinite()) break;
      double m = step.cwiseAbs().maxCoeff();
      if (m > 1.0) step /= m;
      for (int i = 0; i < 4; ++i) u[i] -= step(i);
    }
    if (!ok) continue;
    // lift to modules: x1 up to q-powers is irrelevant, lambda up to sign is tried
    const cplx x1a = std::exp(u[0] / double(N)), x1b = std::exp(u[1] / double(N));
    const cplx la = std::exp(u[2] / double(N)), lb = std::exp(u[3] / double(N));
    for (int sa : {1, -1})
      for (int sb : {1, -1})
        for (int sr : {0, 1}) {
          StandardModuleSpec a{x1a, double(sa) * la, hp1, hd1}, b{x1b, double(sb) * lb, hp2, hd2};
          try {
            RootChoices rc;
            rc.sroot = sr;
            auto oct = solve_octahedron(ctx, a, b, rc);
            ChainModule got(ctx, {oct.v3, oct.v4}), want(ctx, {v3, v4});
            realign_Dn(got, want);
            (void)oct;
            if (sr == 0) return {a, b};
          } catch (const Error&) {
          }
        }
  }
  throw Error("NotTriangulable", "no triangulable source pair found for the inverse crossing");
}

}  // namespace qtt
