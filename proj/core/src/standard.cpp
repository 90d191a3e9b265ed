#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

#include "qtt/reps.hpp"

namespace qtt {

namespace {

cplx ipow(cplx z, int e) {
  cplx r = 1.0;
  cplx b = e >= 0 ? z : 1.0 / z;
  for (int i = 0; i < std::abs(e); ++i) r *= b;
  return r;
}

struct Case1 {
  cplx lambda, mu, a, b;
};

// weight-module parameters of W(x1, lambda, hp, hdel) in the basis F^i e_0
Case1 case1_params(const RootContext& ctx, const StandardModuleSpec& s) {
  const int N = ctx.N;
  const cplx q = ctx.q, d = ctx.delta();
  const cplx X1N = ipow(s.x1, N);
  const cplx mu = 1.0 / (s.lambda * s.hdel);
  const cplx r = ipow(s.hdel * s.hp * s.lambda * s.lambda, N);
  Case1 c;
  c.lambda = s.lambda;
  c.mu = mu;
  c.b = (1.0 + 1.0 / r) / (X1N * ipow(d, N));
  c.a = -ipow(d, N - 2) * X1N * ((s.hp + 1.0 / s.hp) / s.hdel + q * s.lambda * s.lambda + mu * mu / q) / (1.0 + 1.0 / r);
  return c;
}

Mat chain_basis(const Mat& F, int start, int N) {
  Mat B = Mat::Zero(N, N);
  Vec v = Vec::Zero(N);
  v(start) = 1.0;
  for (int i = 0; i < N; ++i) {
    B.col(i) = v;
    v = F * v;
  }
  return B;
}

Mat eval_with(const RootContext& ctx, const TriangulationData& tri, const Template& z, const Template& x,
              const StandardModuleSpec& s, const TorusElement& e) {
  Mat out = Mat::Zero(ctx.N, ctx.N);
  for (auto& [k, c] : e.terms()) out += c.value(ctx) * monomial_template(tri, z, x, k).matrix(ctx, s);
  return out;
}

double rep_gap(const MatrixRep& a, const MatrixRep& b) {
  double g = 0;
  for (Gen x : {Gen::E, Gen::F, Gen::Kh, Gen::Lh}) g = std::max(g, rel_diff(a.get(x), b.get(x)));
  return g;
}

}  // namespace

// ---------------------------------------------------------------------------

Mat Template::matrix(const RootContext& ctx, const StandardModuleSpec& s) const {
  const int N = ctx.N;
  cplx sc = ctx.omega_pow(phase) * ipow(s.x1, ex[0]) * ipow(s.lambda, ex[1]) * ipow(s.hp, ex[2]) *
            ipow(s.hdel, ex[3]);
  Mat M = Mat::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    int row = ((i - shift) % N + N) % N;
    M(row, i) = sc * ctx.q_pow((long long)i * clock);
  }
  return M;
}

// D^n A^m = q^(-nm) A^m D^n and q = omega^-4
Template Template::operator*(const Template& o) const {
  Template r;
  r.phase = phase + o.phase + 4LL * clock * o.shift;
  for (int i = 0; i < 4; ++i) r.ex[i] = ex[i] + o.ex[i];
  r.shift = shift + o.shift;
  r.clock = clock + o.clock;
  return r;
}

Template Template::inverse() const {
  Template r;
  r.phase = -phase + 4LL * clock * shift;
  for (int i = 0; i < 4; ++i) r.ex[i] = -ex[i];
  r.shift = -shift;
  r.clock = -clock;
  return r;
}

Template Template::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Template r;
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

std::string Template::str() const {
  std::ostringstream os;
  const char* names[] = {"x1", "lambda", "hp", "hdel"};
  bool any = false;
  auto put = [&](const std::string& s) {
    if (any) os << ' ';
    os << s;
    any = true;
  };
  if (phase) put("omega^" + std::to_string(phase));
  for (int i = 0; i < 4; ++i)
    if (ex[i]) put(ex[i] == 1 ? std::string(names[i]) : std::string(names[i]) + "^" + std::to_string(ex[i]));
  if (shift) put(shift == 1 ? "A" : "A^" + std::to_string(shift));
  if (clock) put(clock == 1 ? "D" : "D^" + std::to_string(clock));
  if (!any) os << "1";
  return os.str();
}

Template monomial_template(const TriangulationData& tri, const Template& z134, const Template& x1, const Expo& k) {
  auto c = lattice_coords(tri, k);
  Template t;
  t.ex[2] = c[0];
  t.ex[3] = c[1];
  t = t * z134.pow(c[2]) * x1.pow(c[3]);
  // Z^(u+v) = omega^-<u,v> Z^u Z^v
  t.phase -= (long long)c[2] * c[3] * tri.pair(d1::Z134, d1::X1);
  return t;
}

Mat clock_D(const RootContext& ctx) {
  Mat D = Mat::Zero(ctx.N, ctx.N);
  for (int i = 0; i < ctx.N; ++i) D(i, i) = ctx.q_pow(i);
  return D;
}

Mat shift_A(int N) {
  Mat A = Mat::Zero(N, N);
  for (int i = 0; i < N; ++i) A((i - 1 + N) % N, i) = 1.0;
  return A;
}

// ---------------------------------------------------------------------------

XiDictionary standard_xi_dictionary(const RootContext& ctx) {
  const int N = ctx.N;
  auto tri = delta1(ctx);
  auto gens = build_generators(ctx, tri);
  const long long pz = tri->pair(d1::Z134, d1::X1);

  Template z134;
  z134.ex = {0, -1, 0, 0};
  z134.clock = 1;

  std::mt19937 rng(20240611);
  std::normal_distribution<double> nd;
  auto rc = [&] { return cplx(nd(rng), nd(rng)); };
  std::vector<StandardModuleSpec> points(2);
  std::vector<MatrixRep> expected;
  for (auto& p : points) {
    p = {rc(), rc(), rc(), rc()};
    auto c = case1_params(ctx, p);
    expected.push_back(build_rep(ctx, WeightModuleSpec::cyclic(c.lambda, c.mu, c.a, c.b)));
  }

  XiDictionary dict;
  dict.Z134 = z134;
  std::vector<Template> hits;
  for (int code = 0; code < 81 * 25; ++code) {
    Template x;
    int c = code;
    for (int i = 0; i < 4; ++i) {
      x.ex[i] = c % 3 - 1;
      c /= 3;
    }
    x.shift = c % 5 - 2;
    x.clock = c / 5 - 2;
    ++dict.candidates;
    // Z^u Z^v = omega^(2<u,v>) Z^v Z^u
    long long lhs = (z134 * x).phase - (x * z134).phase;
    if (((lhs - 2 * pz) % N + N) % N != 0) continue;

    bool ok = true;
    for (size_t p = 0; p < points.size() && ok; ++p) {
      MatrixRep m;
      m.E = eval_with(ctx, *tri, z134, x, points[p], gens.E);
      m.F = eval_with(ctx, *tri, z134, x, points[p], gens.F);
      m.Kh = eval_with(ctx, *tri, z134, x, points[p], gens.Khalf);
      m.Lh = eval_with(ctx, *tri, z134, x, points[p], gens.Lhalf);
      Mat B = chain_basis(m.F, 0, N);
      Eigen::FullPivLU<Mat> lu(B);
      if (lu.rank() < N) {
        ok = false;
        break;
      }
      MatrixRep conj{lu.solve(m.E * B), lu.solve(m.F * B), lu.solve(m.Kh * B), lu.solve(m.Lh * B)};
      ok = rep_gap(conj, expected[p]) < 1e-8;
    }
    if (ok) hits.push_back(x);
  }
  dict.matches = int(hits.size());
  // x1 A D^n is conjugate to x1 A by a diagonal matrix, so the clock power is a gauge;
  // hits are grouped by scalar part and shift mod N, and the clock-free one is kept
  std::map<std::pair<std::array<int, 4>, int>, std::vector<Template>> classes;
  for (auto& h : hits) classes[{h.ex, ((h.shift % N) + N) % N}].push_back(h);
  dict.classes = int(classes.size());
  if (classes.size() != 1)
    throw Error("NoConsistentDictionary", std::to_string(classes.size()) + " inequivalent X1 templates fit");
  const Template* best = nullptr;
  for (auto& h : classes.begin()->second)
    if (!best || std::make_pair(std::abs(h.clock), std::abs(h.shift)) <
                     std::make_pair(std::abs(best->clock), std::abs(best->shift)))
      best = &h;
  dict.X1 = *best;
  dict.X2 = monomial_template(*tri, z134, dict.X1, d1::X(2));
  dict.X3 = monomial_template(*tri, z134, dict.X1, d1::X(3));
  dict.X4 = monomial_template(*tri, z134, dict.X1, d1::X(4));
  return dict;
}

const XiDictionary& xi_dictionary(const RootContext& ctx) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, XiDictionary> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(ctx.N, ctx.k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, standard_xi_dictionary(ctx)).first;
  return it->second;
}

// ---------------------------------------------------------------------------

StandardModule::StandardModule(const RootContext& ctx, const StandardModuleSpec& s)
    : ctx_(ctx), spec_(s), tri_(delta1(ctx)) {
  if (s.x1 == 0.0 || s.lambda == 0.0 || s.hp == 0.0 || s.hdel == 0.0)
    throw Error("InvalidParameters", "standard module parameters must be nonzero");
  const auto& d = xi_dictionary(ctx);
  z134_ = d.Z134;
  x1_ = d.X1;
}

Mat StandardModule::mono(const Expo& k) const { return monomial_template(*tri_, z134_, x1_, k).matrix(ctx_, spec_); }

Mat StandardModule::evaluate(const TorusElement& x) const {
  return eval_with(ctx_, *tri_, z134_, x1_, spec_, x);
}

MatrixRep StandardModule::rep() const {
  auto g = build_generators(ctx_, tri_);
  return {evaluate(g.E), evaluate(g.F), evaluate(g.Khalf), evaluate(g.Lhalf)};
}

Mat evaluate_torus(const RootContext& ctx, const StandardModuleSpec& s, const TorusElement& x) {
  return StandardModule(ctx, s).evaluate(x);
}

MatrixRep standard_rep(const RootContext& ctx, const StandardModuleSpec& s) { return StandardModule(ctx, s).rep(); }

// ---------------------------------------------------------------------------

WeightBasis standard_to_weight(const RootContext& ctx, const StandardModuleSpec& s) {
  const int N = ctx.N;
  auto m = standard_rep(ctx, s);
  const cplx r = ipow(s.hdel * s.hp * s.lambda * s.lambda, N);
  WeightBasis out;
  if (std::abs(r + 1.0) > 1e-8 * std::max(1.0, std::abs(r))) {
    auto c = case1_params(ctx, s);
    out.spec = WeightModuleSpec::cyclic(c.lambda, c.mu, c.a, c.b);
    out.basis = chain_basis(m.F, 0, N);
    return out;
  }
  // F kills exactly one standard basis vector e_j0; the chain starts right after it
  int j0 = 0;
  for (int j = 1; j < N; ++j)
    if (m.F.col(j).norm() < m.F.col(j0).norm()) j0 = j;
  int start = (j0 + 1) % N;
  out.case2 = true;
  out.basis = chain_basis(m.F, start, N);
  const cplx d = ctx.delta();
  cplx a = ipow(d, N - 2) * ipow(s.x1, N) / s.hdel * (1.0 / s.hp - s.hp) / double(N);
  out.spec = WeightModuleSpec::cyclic(m.Kh(start, start), m.Lh(start, start), a, 0.0);
  return out;
}

StandardModuleSpec weight_to_standard(const RootContext& ctx, const WeightModuleSpec& spec, const LiftOptions& opt) {
  const int N = ctx.N;
  const cplx q = ctx.q, d = ctx.delta();
  const double tol = 1e-9;
  using F = WeightModuleSpec::Family;

  if (spec.family == F::Diag) {
    if (spec.n != N - 1) throw Error("NotExtendable", "diagonal non-scalar module");
    // V_(mu,eps,N-1) = V(eps mu A^-1, mu A, 0, 0)
    return weight_to_standard(
        ctx, WeightModuleSpec::cyclic(double(spec.eps) * spec.mu / ctx.A, spec.mu * ctx.A, 0.0, 0.0), opt);
  }
  if (spec.family == F::Semi) {
    cplx ratio = ipow(spec.lambda / spec.mu, 2 * N);
    if (std::abs(ratio - 1.0) < 1e-8) throw Error("NotExtendable", "semi-cyclic with +-1 diagonal in phi(g)");
    // W~(lambda, mu, c) = V(lambda q^-1, mu q, a, 0) with c = a prod
    cplx prod = 1.0;
    const cplx l2 = spec.lambda * spec.lambda, m2 = spec.mu * spec.mu;
    for (int i = 1; i < N; ++i) prod *= (ctx.q_pow(-1 - i) * l2 - ctx.q_pow(i + 1) * m2) / d * qint(ctx, i);
    return weight_to_standard(ctx, WeightModuleSpec::cyclic(spec.lambda / q, spec.mu * q, spec.c / prod, 0.0), opt);
  }

  const cplx lam = spec.lambda, mu = spec.mu;
  StandardModuleSpec s;
  s.lambda = lam;
  s.hdel = 1.0 / (lam * mu);
  const double scale = std::max(1.0, std::abs(lam * mu));

  if (std::abs(spec.b) > tol * scale) {
    cplx p = (q * lam * lam + mu * mu / q + d * d * spec.a * spec.b) / (lam * mu);
    cplx disc = std::sqrt(p * p - 4.0);
    cplx roots[2] = {(-p + disc) / 2.0, (-p - disc) / 2.0};
    for (cplx hp : roots) {
      cplx r = ipow(hp * lam / mu, N);
      if (std::abs(r + 1.0) < 1e-8 * std::max(1.0, std::abs(r))) continue;
      s.hp = hp;
      s.x1 = principal_root((1.0 + 1.0 / r) / (ipow(d, N) * spec.b), N);
      return s;
    }
    throw Error("NotExtendable", "both puncture roots sit on the (h_del h_p lambda^2)^N = -1 locus");
  }
  if (std::abs(spec.a) > tol * scale) {
    cplx hp = -mu / (q * lam);
    if (std::abs(hp * hp - 1.0) < 1e-8)
      throw Error("NotExtendable", "chi(E^N) != 0 with lambda/mu = +-q^-1 forces h_p = +-1 and a = 0");
    s.hp = hp;
    s.x1 = principal_root(spec.a * double(N) * s.hdel / (ipow(d, N - 2) * (1.0 / hp - hp)), N);
    return s;
  }
  // scalar family: lambda/mu = sign q^-1 and the puncture invariant is forced to -sign
  cplx sgn = lam * q / mu;
  int sign = 0;
  if (std::abs(sgn - 1.0) < 1e-8) sign = 1;
  if (std::abs(sgn + 1.0) < 1e-8) sign = -1;
  if (!sign) throw Error("NotExtendable", "a = b = 0 needs lambda/mu = +-q^-1");
  int hp = -sign;
  if (opt.hp_sign && *opt.hp_sign != hp)
    throw Error("NotExtendable", "this scalar module only extends with h_p = " + std::to_string(hp));
  if (opt.x1 == 0.0) throw Error("InvalidParameters", "x1 must be nonzero");
  s.hp = double(hp);
  s.x1 = opt.x1;
  return s;
}

// ---------------------------------------------------------------------------

CentralCharacter classical_shadow(const RootContext& ctx, const MatrixRep& r, bool with_t) {
  const int N = ctx.N;
  const double tol = 1e-7;
  const cplx d = ctx.delta();
  Mat alpha = -d / ctx.A * r.E * r.Khi();
  Mat beta = ctx.A * d * r.Lhi() * r.F;
  CentralCharacter c;
  c.gplus = Mat::Zero(2, 2);
  c.gminus = Mat::Zero(2, 2);
  c.gplus(0, 0) = scalar_of(mat_pow(r.Khi(), N), tol, "K^-N/2");
  c.gplus(0, 1) = scalar_of(mat_pow(alpha, N), tol, "E^N term");
  c.gplus(1, 1) = scalar_of(mat_pow(r.Kh, N), tol, "K^N/2");
  c.gminus(0, 0) = scalar_of(mat_pow(r.Lhi(), N), tol, "L^-N/2");
  c.gminus(1, 0) = scalar_of(mat_pow(beta, N), tol, "F^N term");
  c.gminus(1, 1) = scalar_of(mat_pow(r.Lh, N), tol, "L^N/2");
  c.t = with_t ? scalar_of(r.T(ctx), tol, "T") : cplx(std::nan(""), 0.0);
  c.hdel = scalar_of(r.Hdel(), tol, "H_del");
  return c;
}

ShadowInvariants shadow_invariants(const RootContext& ctx, const CentralCharacter& c) {
  const int N = ctx.N;
  ShadowInvariants s;
  s.det_minus = std::abs(c.gminus.determinant() - 1.0);
  s.det_plus = std::abs(c.gplus.determinant() - 1.0);
  s.triangular = std::abs(c.gplus(1, 0)) + std::abs(c.gminus(0, 1));
  cplx tr = c.phi().trace();
  cplx tn = chebyshev_T(N, c.t);
  double sc = std::max(1.0, std::abs(tr));
  s.chebyshev_printed = std::abs(tn - tr) / sc;
  s.chebyshev_signed = std::abs(tn + tr) / sc;
  cplx corner = (c.gminus * c.gplus)(0, 0);
  double sc2 = std::max(1.0, std::abs(corner));
  s.boundary_printed = std::abs(ipow(c.hdel, -N) - corner) / sc2;
  s.boundary_signed = std::abs(ipow(c.hdel, N) - corner) / sc2;
  return s;
}

}  // namespace qtt
