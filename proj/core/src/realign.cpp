#include "qtt/realign.hpp"

#include <deque>

namespace qtt {

double pair_residual(const Mat& Psi, const OpPair& op) {
  double scale = Psi.norm() * (op.first.norm() + op.second.norm());
  if (scale == 0) return 0;
  return (Psi * op.first - op.second * Psi).norm() / scale;
}

namespace {

// row of the single nonzero in column s, or -1 for a zero column; -2 if several
int column_entry(const Mat& m, int s, double tol) {
  double scale = std::max(1e-300, m.cwiseAbs().maxCoeff());
  int row = -1;
  for (int r = 0; r < m.rows(); ++r)
    if (std::abs(m(r, s)) > tol * scale) {
      if (row >= 0) return -2;
      row = r;
    }
  return row;
}

bool close(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::max(std::abs(a), std::abs(b))); }

}  // namespace

Realignment realign_monomial(const std::vector<OpPair>& diagonal, const std::vector<OpPair>& shifts,
                             const std::vector<OpPair>& verify, double tol) {
  if (diagonal.empty()) throw Error("InvalidArgument", "need at least one diagonal operator");
  const int n = int(diagonal.front().first.rows());

  Realignment out;
  out.perm.assign(n, -1);
  std::vector<bool> used(n, false);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n && out.perm[s] < 0; ++t) {
      if (used[t]) continue;
      bool ok = true;
      for (auto& [S, T] : diagonal)
        if (!close(S(s, s), T(t, t), tol)) {
          ok = false;
          break;
        }
      if (ok) {
        out.perm[s] = t;
        used[t] = true;
      }
    }
    if (out.perm[s] < 0) throw Error("NoMatch", "joint spectra of the diagonal generators differ");
  }

  // c_r S(r,s) = c_s T(perm r, perm s)
  struct Link {
    int to;
    cplx ratio;  // c_to = ratio * c_from
  };
  std::vector<std::vector<Link>> adj(n);
  struct Eq {
    int r, s;
    cplx sv, tv;
  };
  std::vector<Eq> eqs;
  for (auto& [S, T] : shifts) {
    for (int s = 0; s < n; ++s) {
      int r = column_entry(S, s, 1e-12);
      int rt = column_entry(T, out.perm[s], 1e-12);
      if (r == -2 || rt == -2) throw Error("InvalidArgument", "shift operator is not monomial");
      if (r < 0 && rt < 0) continue;
      if (r < 0 || rt < 0 || out.perm[r] != rt) {
        // one side vanishes where the other does not
        out.recurrence = 1.0;
        continue;
      }
      cplx sv = S(r, s), tv = T(rt, out.perm[s]);
      eqs.push_back({r, s, sv, tv});
      adj[s].push_back({r, tv / sv});
      adj[r].push_back({s, sv / tv});
    }
  }

  out.coeff = Vec::Zero(n);
  std::vector<bool> seen(n, false);
  std::deque<int> queue{0};
  seen[0] = true;
  out.coeff(0) = 1.0;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (auto& l : adj[s])
      if (!seen[l.to]) {
        seen[l.to] = true;
        out.coeff(l.to) = l.ratio * out.coeff(s);
        queue.push_back(l.to);
      }
  }
  for (int s = 0; s < n; ++s)
    if (!seen[s]) throw Error("RecurrenceInconsistent", "shift operators do not connect every basis vector");

  for (auto& e : eqs) {
    cplx lhs = out.coeff(e.r) * e.sv, rhs = out.coeff(e.s) * e.tv;
    double sc = std::max(std::abs(lhs), std::abs(rhs));
    if (sc > 0) out.recurrence = std::max(out.recurrence, std::abs(lhs - rhs) / sc);
  }
  if (out.recurrence > tol) throw Error("RecurrenceInconsistent", "coefficient recurrences have no solution");

  out.Psi = Mat::Zero(n, n);
  for (int s = 0; s < n; ++s) out.Psi(out.perm[s], s) = out.coeff(s);
  for (auto& op : diagonal) out.residual = std::max(out.residual, pair_residual(out.Psi, op));
  for (auto& op : shifts) out.residual = std::max(out.residual, pair_residual(out.Psi, op));
  for (auto& op : verify) out.residual = std::max(out.residual, pair_residual(out.Psi, op));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<NamedOp> d2_generator_list(const RootContext& ctx, const MatrixRep& v1, const MatrixRep& v2) {
  Mat I1 = identity(v1.dim()), I2 = identity(v2.dim());
  Mat H1 = v1.Hdel(), H2 = v2.Hdel();
  return {
      {"Delta(K^1/2)", kron(v1.Kh, v2.Kh)},
      {"Delta(K^-1/2)", kron(v1.Khi(), v2.Khi())},
      {"T (x) 1", kron(v1.T(ctx), I2)},
      {"1 (x) T", kron(I1, v2.T(ctx))},
      {"H (x) H", kron(H1, H2)},
      {"H^-1 (x) H^-1", kron(H1.inverse(), H2.inverse())},
      {"E H (x) 1", kron(v1.E * H1, I2)},
      {"K^1/2 L^-1/2 (x) 1", kron(v1.Kh * v1.Lhi(), I2)},
      {"F (x) 1", kron(v1.F, I2)},
      {"L (x) F", kron(v1.L(), v2.F)},
      {"E (x) K", kron(v1.E, v2.K())},
      {"1 (x) E", kron(I1, v2.E)},
  };
}

Realignment realign_D2(const RootContext& ctx, const MatrixRep& v1, const MatrixRep& v2, const MatrixRep& w1,
                       const MatrixRep& w2, double tol) {
  if (v1.dim() != w1.dim() || v2.dim() != w2.dim()) throw Error("NoMatch", "dimensions differ");
  // central character: shadows, the two t's and the product of boundary invariants
  auto c1 = classical_shadow(ctx, v1), c2 = classical_shadow(ctx, v2);
  auto d1 = classical_shadow(ctx, w1), d2 = classical_shadow(ctx, w2);
  if (!close(c1.t, d1.t, 1e-7) || !close(c2.t, d2.t, 1e-7)) throw Error("NoMatch", "puncture invariants differ");
  if (!close(c1.hdel * c2.hdel, d1.hdel * d2.hdel, 1e-7)) throw Error("NoMatch", "boundary invariants differ");
  // shadow of the tensor product is the product of shadows
  if (rel_diff(c1.gminus * c2.gminus, d1.gminus * d2.gminus) > 1e-7 ||
      rel_diff(c1.gplus * c2.gplus, d1.gplus * d2.gplus) > 1e-7)
    throw Error("NoMatch", "classical shadows differ");

  auto src = d2_generator_list(ctx, v1, v2), dst = d2_generator_list(ctx, w1, w2);
  std::vector<OpPair> diag, shifts;
  for (size_t i = 0; i < src.size(); ++i) {
    bool diagonal = src[i].op.isDiagonal(1e-12) && dst[i].op.isDiagonal(1e-12);
    (diagonal ? diag : shifts).emplace_back(src[i].op, dst[i].op);
  }
  return realign_monomial(diag, shifts, {}, tol);
}

// ---------------------------------------------------------------------------

ChainModule::ChainModule(const RootContext& ctx, std::vector<StandardModuleSpec> factors)
    : ctx_(ctx), chain_(glue_chain(ctx, int(factors.size()))) {
  for (auto& s : factors) mods_.emplace_back(ctx, s);
}

int ChainModule::dim() const {
  int d = 1;
  for (size_t i = 0; i < mods_.size(); ++i) d *= ctx_.N;
  return d;
}

Mat ChainModule::mono(const Expo& k) const {
  Mat out = identity(1);
  for (int f = 0; f < length(); ++f) {
    Expo local{k[3 * f], k[3 * f + 1], k[3 * f + 2], k[3 * f + 3]};
    out = kron(out, mods_[f].mono(local));
  }
  return out;
}

Mat ChainModule::evaluate(const TensorTorusElement& x) const {
  Mat out = Mat::Zero(dim(), dim());
  for (auto& [ks, c] : x.terms()) {
    Mat m = identity(1);
    for (int f = 0; f < length(); ++f) m = kron(m, mods_[f].mono(ks[f]));
    out += c.value(ctx_) * m;
  }
  return out;
}

MatrixRep ChainModule::coproduct_rep() const {
  MatrixRep r = mods_.front().rep();
  for (int f = 1; f < length(); ++f) r = tensor_rep(r, mods_[f].rep());
  return r;
}

Realignment realign_Dn(const ChainModule& src, const ChainModule& dst, double tol) {
  if (src.length() != dst.length()) throw Error("NoMatch", "chain lengths differ");
  const int n = src.length();
  const int E = 3 * n + 1;
  const auto& tri = *src.chain().Dn;
  auto edge = [&](int e) {
    Expo k(E, 0);
    k[e] = 2;
    return k;
  };
  std::vector<OpPair> diag, shifts, verify;
  // inner edges of each factor act diagonally, the cross edges shift
  for (int f = 0; f < n; ++f)
    for (int l : {1, 2}) diag.emplace_back(src.mono(edge(3 * f + l)), dst.mono(edge(3 * f + l)));
  for (int f = 0; f <= n; ++f) shifts.emplace_back(src.mono(edge(3 * f)), dst.mono(edge(3 * f)));
  for (auto& p : tri.punctures) diag.emplace_back(src.mono(p), dst.mono(p));
  diag.emplace_back(src.mono(tri.boundary), dst.mono(tri.boundary));

  // same central character: N-th powers of the edge monomials must agree
  const int N = src.factors().front().ctx().N;
  for (int e = 0; e < E; ++e) {
    Mat a = mat_pow(src.mono(edge(e)), N), b = mat_pow(dst.mono(edge(e)), N);
    if (rel_diff(a, b) > 1e-7) throw Error("NoMatch", "edge " + std::to_string(e + 1) + " has a different N-th power");
  }

  auto rs = src.coproduct_rep(), rd = dst.coproduct_rep();
  for (Gen g : {Gen::E, Gen::F, Gen::Kh, Gen::Lh}) verify.emplace_back(rs.get(g), rd.get(g));
  if (n == 2) {
    const auto& ctx = src.factors().front().ctx();
    auto a = d2_generator_list(ctx, src.factors()[0].rep(), src.factors()[1].rep());
    auto b = d2_generator_list(ctx, dst.factors()[0].rep(), dst.factors()[1].rep());
    for (size_t i = 0; i < a.size(); ++i) verify.emplace_back(a[i].op, b[i].op);
  }
  return realign_monomial(diag, shifts, verify, tol);
}

}  // namespace qtt
