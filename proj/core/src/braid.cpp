#include "qtt/braid.hpp"

#include <unordered_map>

namespace qtt {

namespace {

bool same_spec(const StandardModuleSpec& a, const StandardModuleSpec& b) {
  auto r = [](cplx x, cplx y) { return std::abs(x - y) <= 1e-10 * std::max({std::abs(x), std::abs(y), 1.0}); };
  return r(a.x1, b.x1) && r(a.lambda, b.lambda) && r(a.hp, b.hp) && r(a.hdel, b.hdel);
}

int ipow(int b, int e) {
  int r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Mat partial_trace_tail(const Mat& op, const Mat& piv_tail, int d) {
  // op on C^d (x) C^m, returns sum_s piv(s) op[(a,s),(b,s)]
  const int m = int(op.rows()) / d;
  Mat out(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      cplx acc = 0.0;
      for (int s = 0; s < m; ++s)
        for (int t = 0; t < m; ++t) acc += op(a * m + s, b * m + t) * piv_tail(t, s);
      out(a, b) = acc;
    }
  return out;
}

}  // namespace

BraidWord BraidWord::from_signed(int strands, const std::vector<int>& letters) {
  if (strands < 1) throw Error("InvalidArgument", "a braid needs at least one strand");
  BraidWord w;
  w.strands = strands;
  for (int l : letters) {
    int i = std::abs(l);
    if (l == 0 || i > strands - 1) throw Error("InvalidArgument", "letter " + std::to_string(l) + " out of range");
    w.letters.push_back({i, l > 0 ? 1 : -1});
  }
  return w;
}

std::vector<int> BraidWord::to_signed() const {
  std::vector<int> out;
  for (auto& l : letters) out.push_back(l.sign * l.index);
  return out;
}

BraidWord BraidWord::then(const BraidWord& o) const {
  if (o.strands != strands) throw Error("InvalidArgument", "strand counts differ");
  BraidWord w = *this;
  w.letters.insert(w.letters.end(), o.letters.begin(), o.letters.end());
  return w;
}

Mat embed_pair(const Mat& M, int slot, int strands, int d) {
  return kron(kron(identity(ipow(d, slot - 1)), M), identity(ipow(d, strands - slot - 1)));
}

BraidingOperator inverse_crossing(const RootContext& ctx, const StandardModuleSpec& v3, const StandardModuleSpec& v4,
                                  const RootChoices& roots) {
  auto [a, b] = inverse_octahedron(ctx, v3, v4);
  auto fwd = closed_formula_R(ctx, a, b, roots);
  Mat Psi = realign_Dn(ChainModule(ctx, {fwd.dst1, fwd.dst2}), ChainModule(ctx, {v3, v4})).Psi;
  Mat raw = (Psi * fwd.matrix).inverse();
  BraidingOperator R;
  R.d = det_root(raw);
  R.matrix = raw / R.d;
  R.src1 = v3;
  R.src2 = v4;
  R.dst1 = a;
  R.dst2 = b;
  return R;
}

BraidEvaluation evaluate_braid(const RootContext& ctx, const ColoredBraid& cb) {
  const int n = cb.word.strands, N = ctx.N;
  if (int(cb.modules.size()) != n) throw Error("InvalidArgument", "one module per strand");
  BraidEvaluation ev;
  ev.final_modules = cb.modules;
  ev.op = identity(ipow(N, n));
  for (size_t k = 0; k < cb.word.letters.size(); ++k) {
    const auto& l = cb.word.letters[k];
    RootChoices rc;
    if (auto it = cb.overrides.find(int(k)); it != cb.overrides.end()) rc = it->second;
    auto& m = ev.final_modules;
    BraidingOperator R;
    try {
      R = l.sign > 0 ? closed_formula_R(ctx, m[l.index - 1], m[l.index], rc)
                     : inverse_crossing(ctx, m[l.index - 1], m[l.index], rc);
    } catch (const Error& e) {
      if (e.kind() == "NotTriangulable")
        throw Error("NotTriangulableAtStep", "step " + std::to_string(k) + ": " + e.what());
      throw;
    }
    ev.op = embed_pair(R.matrix, l.index, n, N) * ev.op;
    m[l.index - 1] = R.dst1;
    m[l.index] = R.dst2;
  }
  return ev;
}

// ---------------------------------------------------------------------------

Mat PivotalData::pivot(const RootContext& ctx, const MatrixRep& r) { return mat_pow(r.Kh * r.Lhi(), ctx.N - 1); }

PivotalData PivotalData::of(const RootContext& ctx, const std::vector<StandardModuleSpec>& modules) {
  PivotalData p;
  for (auto& m : modules) p.pivots.push_back(pivot(ctx, standard_rep(ctx, m)));
  return p;
}

Mat PivotalData::tensor() const {
  Mat out = identity(1);
  for (auto& p : pivots) out = kron(out, p);
  return out;
}

cplx pivotal_closure(const RootContext& ctx, const Mat& op, const std::vector<StandardModuleSpec>& initial,
                     const std::vector<StandardModuleSpec>& final_modules, bool pivot_first) {
  if (initial.size() != final_modules.size()) throw Error("CharacterMismatch", "strand counts differ");
  bool same = true;
  for (size_t i = 0; i < initial.size(); ++i) same = same && same_spec(initial[i], final_modules[i]);
  Mat full = op;
  if (!same) {
    Mat Psi;
    try {
      if (initial.size() == 1) {
        Psi = standard_iso(ctx, final_modules[0], initial[0]);
      } else {
        Psi = realign_Dn(ChainModule(ctx, final_modules), ChainModule(ctx, initial)).Psi;
        Psi /= det_root(Psi);
      }
    } catch (const Error& e) {
      throw Error("CharacterMismatch", std::string("final modules are not isomorphic to the initial ones: ") + e.what());
    }
    full = Psi * op;
  }
  auto piv = PivotalData::of(ctx, initial);
  if (!pivot_first) piv.pivots[0] = identity(int(piv.pivots[0].rows()));
  return (piv.tensor() * full).trace();
}

BraidWord knot_word(const std::string& name) {
  if (name == "unknot") return BraidWord::from_signed(1, {});
  if (name == "trefoil") return BraidWord::from_signed(2, {1, 1, 1});
  if (name == "figure_eight") return BraidWord::from_signed(3, {1, -2, 1, -2});
  throw Error("InvalidArgument", "unknown knot " + name);
}

// ---------------------------------------------------------------------------

cplx oracle_closure(const RootContext& ctx, const BraidWord& w, bool open) {
  const int N = ctx.N, n = w.strands;
  auto qp = [&](double x) { return std::exp(ctx.logq * x); };
  // [m] and [m]!
  std::vector<cplx> qi(N + 1), qf(N + 1);
  qf[0] = 1.0;
  for (int m = 1; m <= N; ++m) {
    qi[m] = (qp(m) - qp(-m)) / (qp(1) - qp(-1));
    qf[m] = qf[m - 1] * qi[m];
  }
  const cplx delta = qp(1) - qp(-1);
  const double h = -1, g = 1;
  // entries of R (or R^-1) : (i, j) -> list of ((i', j'), c) in the output pair
  struct Entry {
    int a, b;
    cplx c;
  };
  std::vector<std::vector<Entry>> fwd(N * N), bwd(N * N);
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      // E e_i = -[i]^2 e_(i-1), F e_j = e_(j+1)
      cplx en = 1.0;
      for (int k = 0; k <= std::min(i, N - 1 - j); ++k) {
        if (k > 0) en *= -qi[i - k + 1] * qi[i - k + 1];
        const int i2 = i - k, j2 = j + k;
        cplx c = qp(k * (k - 1) / 2.0) * std::pow(delta, k) / qf[k] * en;
        fwd[i * N + j].push_back({j2, i2, c * qp(-(h - 2 * i2) * (g + 2 * j2) / 2.0)});
      }
    }
  // R^-1 (e_a (x) e_b): flip back to e_b (x) e_a, undo the diagonal q^((h-2b)(g+2a)/2), then the reversed exponential
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      cplx d = qp((h - 2 * b) * (g + 2 * a) / 2.0);
      cplx en = 1.0;
      for (int k = 0; k <= std::min(b, N - 1 - a); ++k) {
        if (k > 0) en *= -qi[b - k + 1] * qi[b - k + 1];
        cplx c = std::pow(-1.0, k) * qp(-k * (k - 1) / 2.0) * std::pow(delta, k) / qf[k] * en;
        bwd[a * N + b].push_back({b - k, a + k, d * c});
      }
    }
  // state sum over basis vectors of the n-fold tensor
  int dim = 1;
  for (int s = 0; s < n; ++s) dim *= N;
  std::vector<int> stride(n);
  for (int s = 0; s < n; ++s) {
    stride[s] = 1;
    for (int t = s + 1; t < n; ++t) stride[s] *= N;
  }
  cplx total = 0.0;
  for (int start = 0; start < dim; ++start) {
    std::unordered_map<int, cplx> st{{start, 1.0}};
    for (auto& l : w.letters) {
      std::unordered_map<int, cplx> nx;
      const int s1 = l.index - 1;
      for (auto& [idx, c] : st) {
        int x = idx / stride[s1] % N, y = idx / stride[s1 + 1] % N;
        int base = idx - x * stride[s1] - y * stride[s1 + 1];
        for (auto& e : (l.sign > 0 ? fwd : bwd)[x * N + y]) nx[base + e.a * stride[s1] + e.b * stride[s1 + 1]] += c * e.c;
      }
      st.swap(nx);
    }
    auto it = st.find(start);
    if (it == st.end()) continue;
    // pivot (K^1/2 L^-1/2)^(N-1) on e_i is q^(-(1 + 2i)(N-1))
    cplx piv = 1.0;
    for (int s = open ? 1 : 0; s < n; ++s) piv *= qp(-(1.0 + 2.0 * (start / stride[s] % N)) * (N - 1));
    total += piv * it->second;
  }
  return open ? total / double(N) : total;
}

// ---------------------------------------------------------------------------

bool JonesSmokeReport::ok(double tol_abs, double tol_rou) const {
  return abs_mismatch < tol_abs && phase_rou < tol_rou && open_abs_mismatch < tol_abs && open_phase_rou < tol_rou;
}

JonesSmokeReport jones_smoke(const RootContext& ctx, const std::string& knot) {
  return jones_smoke(ctx, knot, knot_word(knot));
}

JonesSmokeReport jones_smoke(const RootContext& ctx, const std::string& name, const BraidWord& w) {
  const int N = ctx.N, n = w.strands;
  JonesSmokeReport rep;
  rep.knot = name;
  rep.word = w;
  const MatrixRep W = build_rep(ctx, WeightModuleSpec::cyclic(1.0 / ctx.A, ctx.A, 0.0, 0.0));
  const Mat pivW = PivotalData::pivot(ctx, W);
  Mat pivAll = identity(1);
  for (int s = 0; s < n; ++s) pivAll = kron(pivAll, pivW);

  // Drinfel'd route on W^(x)n
  const Mat RD = drinfeld_R(ctx, W, W, -1.0, 1.0);
  const Mat RDi = RD.inverse();
  Mat opD = identity(pivAll.rows());
  for (auto& l : w.letters) opD = embed_pair(l.sign > 0 ? RD : RDi, l.index, n, N) * opD;

  // Kashaev route: closed-formula operators on lifts of W, read in the basis of W
  static const cplx seeds[] = {{1.0, 0.0}, {1.7, 0.3}, {0.6, -0.5}, {1.3, 0.9}, {0.4, 0.8}, {2.1, -0.7}};
  Mat opK;
  bool done = false;
  std::string last;
  for (int attempt = 0; attempt < 6 && !done; ++attempt) {
    std::vector<StandardModuleSpec> cur;
    for (int s = 0; s < n; ++s) cur.push_back({seeds[(s + attempt) % 6] * std::pow(1.1, attempt), 1.0 / ctx.A, -1.0, 1.0});
    try {
      rep.lifts = cur;
      opK = identity(pivAll.rows());
      cplx phase = 1.0;
      for (auto& l : w.letters) {
        auto& a = cur[l.index - 1];
        auto& b = cur[l.index];
        BraidingOperator R = l.sign > 0 ? closed_formula_R(ctx, a, b) : inverse_crossing(ctx, a, b);
        Mat B1 = module_iso(W, standard_rep(ctx, R.src1)), B2 = module_iso(W, standard_rep(ctx, R.src2));
        Mat B3 = module_iso(W, standard_rep(ctx, R.dst1)), B4 = module_iso(W, standard_rep(ctx, R.dst2));
        Mat M = kron(B3, B4).inverse() * R.matrix * kron(B1, B2);
        const Mat& ref = l.sign > 0 ? RD : RDi;
        Eigen::Index r, c;
        ref.cwiseAbs().maxCoeff(&r, &c);
        phase *= ref(r, c) / M(r, c);
        opK = embed_pair(M, l.index, n, N) * opK;
        a = R.dst1;
        b = R.dst2;
      }
      rep.phase = phase;
      done = true;
    } catch (const Error& e) {
      last = e.what();
    }
  }
  if (!done) throw Error("NotTriangulable", "no admissible lift of the scalar coloring: " + last);

  rep.drinfeld = (pivAll * opD).trace();
  rep.kashaev = (pivAll * opK).trace();
  rep.oracle = oracle_closure(ctx, w);
  const double aD = std::abs(rep.drinfeld), aK = std::abs(rep.kashaev), aO = std::abs(rep.oracle);
  rep.abs_mismatch = std::max({std::abs(aD - aK), std::abs(aD - aO), std::abs(aK - aO)});
  auto rou = [&](cplx x, cplx y) {
    if (std::abs(x) < 1e-9 && std::abs(y) < 1e-9) return 0.0;
    if (std::abs(y) < 1e-12) return 1.0;
    return std::abs(std::pow(x / y, N * N) - 1.0);
  };
  rep.phase_rou = rou(rep.drinfeld, rep.kashaev);

  Mat pivTail = identity(1);
  for (int s = 1; s < n; ++s) pivTail = kron(pivTail, pivW);
  Mat openD = partial_trace_tail(opD, pivTail, N);
  rep.drinfeld_open = openD.trace() / double(N);
  rep.open_scalar = (openD - rep.drinfeld_open * identity(N)).norm() / std::max(1.0, openD.norm());
  rep.kashaev_open = partial_trace_tail(opK, pivTail, N).trace() / double(N);
  rep.oracle_open = oracle_closure(ctx, w, true);
  const double oD = std::abs(rep.drinfeld_open), oK = std::abs(rep.kashaev_open), oO = std::abs(rep.oracle_open);
  rep.open_abs_mismatch = std::max({std::abs(oD - oK), std::abs(oD - oO), std::abs(oK - oO)});
  rep.open_phase_rou = rou(rep.drinfeld_open, rep.kashaev_open);
  return rep;
}

}  // namespace qtt
