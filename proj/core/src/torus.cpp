#include "qtt/torus.hpp"

#include <mutex>

namespace qtt {

long long TriangulationData::pair(const Expo& a, const Expo& b) const {
  long long s = 0;
  for (int i = 0; i < num_edges; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < num_edges; ++j)
      if (b[j]) s += (long long)a[i] * form(i, j) * b[j];
  }
  return s;
}

bool TriangulationData::balanced(const Expo& e) const {
  if (int(e.size()) != num_edges) return false;
  for (auto& f : faces)
    if ((e[f[0]] + e[f[1]] + e[f[2]]) % 2) return false;
  return true;
}

// ---------------------------------------------------------------------------

TorusElement TorusElement::monomial(TriPtr tri, int N, const Expo& k, const ExactScalar& c) {
  if (!tri->balanced(k)) throw Error("NotBalanced", "exponent vector fails the face parity test");
  TorusElement r(std::move(tri), N);
  r.add_term(k, c);
  return r;
}

TorusElement TorusElement::monomial(TriPtr tri, int N, const Expo& k) {
  return monomial(std::move(tri), N, k, ExactScalar::integer(N, 1));
}

TorusElement TorusElement::scalar(TriPtr tri, int N, const ExactScalar& c) {
  Expo zero(tri->num_edges, 0);
  return monomial(std::move(tri), N, zero, c);
}

void TorusElement::add_term(const Expo& k, const ExactScalar& c) {
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    if (!c.terms().empty()) terms_.emplace(k, c);
    return;
  }
  it->second += c;
  if (it->second.terms().empty()) terms_.erase(it);
}

static void same_tri(const TriPtr& a, const TriPtr& b) {
  if (a != b && !(a && b && a->same_as(*b)))
    throw Error("MixedTriangulation", "operands live on different triangulations");
}

TorusElement& TorusElement::operator+=(const TorusElement& o) {
  if (!tri_) {
    *this = o;
    return *this;
  }
  same_tri(tri_, o.tri_);
  for (auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

TorusElement TorusElement::operator-() const { return scaled(ExactScalar::integer(N_, -1)); }
TorusElement TorusElement::operator-(const TorusElement& o) const { return *this + (-o); }

TorusElement TorusElement::operator*(const TorusElement& o) const { return weyl_product(*this, o); }

TorusElement TorusElement::scaled(const ExactScalar& s) const {
  TorusElement r(tri_, N_);
  for (auto& [k, c] : terms_) r.add_term(k, c * s);
  return r;
}

TorusElement TorusElement::pow(int e) const {
  if (e < 0) throw Error("InvalidArgument", "only monomials have symbolic inverses");
  TorusElement r = scalar(tri_, N_, ExactScalar::integer(N_, 1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool TorusElement::is_zero() const {
  for (auto& [k, c] : terms_)
    if (!c.is_zero()) return false;
  return true;
}

std::pair<Expo, ExactScalar> TorusElement::single() const {
  if (terms_.size() != 1) throw Error("NotMonomial", "element has more than one term");
  return *terms_.begin();
}

TorusElement weyl_product(const TorusElement& a, const TorusElement& b) {
  same_tri(a.tri(), b.tri());
  TorusElement r(a.tri(), a.N());
  const auto& tri = *a.tri();
  for (auto& [k, c] : a.terms())
    for (auto& [k2, c2] : b.terms()) {
      Expo s(k.size());
      for (size_t i = 0; i < k.size(); ++i) s[i] = k[i] + k2[i];
      r += TorusElement::monomial(a.tri(), a.N(), s, (c * c2).times_omega(tri.pair(k, k2)));
    }
  return r;
}

bool commutes(const TorusElement& a, const TorusElement& b) { return (a * b - b * a).is_zero(); }

// ---------------------------------------------------------------------------

namespace d1 {
Expo X(int i, int power) {
  Expo k(4, 0);
  k[i - 1] = 2 * power;
  return k;
}
Expo add(std::initializer_list<Expo> ks) {
  Expo s(ks.begin()->size(), 0);
  for (auto& k : ks)
    for (size_t i = 0; i < k.size(); ++i) s[i] += k[i];
  return s;
}
Expo neg(const Expo& k) {
  Expo s = k;
  for (auto& x : s) x = -x;
  return s;
}
}  // namespace d1

TriPtr make_D1(const std::vector<int>& wp) {
  auto t = std::make_shared<TriangulationData>();
  t->num_edges = 4;
  t->wp = wp;
  // inner edges 2, 3 run to the puncture; 1 and 4 are boundary edges
  t->faces = {{0, 1, 2}, {1, 2, 3}};
  t->generator_lattice = {d1::Hp, d1::Hdel, d1::Z134, d1::X1};
  t->punctures = {d1::Hp};
  t->boundary = d1::Hdel;
  return t;
}

std::vector<int> lattice_coords(const TriangulationData& tri, const Expo& k) {
  int m = int(tri.generator_lattice.size());
  if (m == 0) throw Error("NotInGeneratorLattice", "triangulation has no generator lattice");
  Eigen::MatrixXd G(tri.num_edges, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < tri.num_edges; ++i) G(i, j) = tri.generator_lattice[j][i];
  Eigen::VectorXd rhs(tri.num_edges);
  for (int i = 0; i < tri.num_edges; ++i) rhs(i) = k[i];
  Eigen::VectorXd sol = G.fullPivLu().solve(rhs);
  std::vector<int> out(m);
  for (int j = 0; j < m; ++j) out[j] = int(std::lround(sol(j)));
  for (int i = 0; i < tri.num_edges; ++i) {
    long long s = 0;
    for (int j = 0; j < m; ++j) s += (long long)out[j] * tri.generator_lattice[j][i];
    if (s != k[i]) throw Error("NotInGeneratorLattice", "no integer decomposition");
  }
  return out;
}

WPSearchReport derive_wp_D1(const RootContext& ctx) {
  const int N = ctx.N;
  // upper entries m01 m02 m03 m12 m13 m23
  const int idx[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::vector<std::vector<int>> first_pass;
  int vals[6];
  for (int code = 0; code < 15625; ++code) {
    int c = code;
    for (int t = 0; t < 6; ++t) {
      vals[t] = c % 5 - 2;
      c /= 5;
    }
    std::vector<int> wp(16, 0);
    for (int t = 0; t < 6; ++t) {
      wp[idx[t][0] * 4 + idx[t][1]] = vals[t];
      wp[idx[t][1] * 4 + idx[t][0]] = -vals[t];
    }
    auto tri = make_D1(wp);
    bool ok = true;
    for (const Expo* central : {&d1::Hp, &d1::Hdel})
      for (int i = 0; i < 4 && ok; ++i) {
        long long s = 0;
        for (int j = 0; j < 4; ++j) s += (long long)wp[i * 4 + j] * (*central)[j];
        ok = (s == 0);
      }
    if (!ok) continue;
    if (std::abs(tri->pair(d1::Z134, d1::X1)) != 2) continue;
    first_pass.push_back(wp);
  }
  WPSearchReport rep;
  rep.candidates_before_sign = int(first_pass.size());
  if (first_pass.empty()) throw Error("NoConsistentForm", "no pairing satisfies the centrality constraints");

  std::vector<TriPtr> pinned;
  for (auto& wp : first_pass) {
    auto tri = make_D1(wp);
    auto u = ExactScalar::u_pow(N, 1);
    auto E = (TorusElement::monomial(tri, N, {0, 0, 0, -2}) + TorusElement::monomial(tri, N, {0, 0, -2, -2}))
                 .scaled(-u);
    auto Kh = TorusElement::monomial(tri, N, {-1, 0, -1, -1});
    auto rel = E * Kh - (Kh * E).scaled(ExactScalar::q_pow(N, -1));
    if (rel.is_zero()) pinned.push_back(tri);
  }
  rep.candidates_after_sign = int(pinned.size());
  if (pinned.empty()) throw Error("NoConsistentForm", "sign pinning rejected every candidate");
  if (pinned.size() > 1) throw Error("AmbiguousForm", "several pairings survive sign pinning");
  rep.tri = pinned.front();
  return rep;
}

TriPtr delta1(const RootContext& ctx) {
  static std::mutex mu;
  static std::map<int, TriPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(ctx.N);
  if (it != cache.end()) return it->second;
  auto t = derive_wp_D1(ctx).tri;
  cache[ctx.N] = t;
  return t;
}

// ---------------------------------------------------------------------------

TensorTorusElement TensorTorusElement::outer(const std::vector<TorusElement>& factors) {
  std::vector<TriPtr> tris;
  for (auto& f : factors) tris.push_back(f.tri());
  TensorTorusElement r(tris, factors.front().N());
  std::vector<std::pair<std::vector<Expo>, ExactScalar>> acc{{{}, ExactScalar::integer(r.N_, 1)}};
  for (auto& f : factors) {
    std::vector<std::pair<std::vector<Expo>, ExactScalar>> nxt;
    for (auto& [ks, c] : acc)
      for (auto& [k, c2] : f.terms()) {
        auto ks2 = ks;
        ks2.push_back(k);
        nxt.emplace_back(ks2, c * c2);
      }
    acc.swap(nxt);
  }
  for (auto& [ks, c] : acc) r.add_term(ks, c);
  return r;
}

void TensorTorusElement::add_term(const std::vector<Expo>& ks, const ExactScalar& c) {
  auto it = terms_.find(ks);
  if (it == terms_.end()) {
    if (!c.terms().empty()) terms_.emplace(ks, c);
    return;
  }
  it->second += c;
  if (it->second.terms().empty()) terms_.erase(it);
}

TensorTorusElement& TensorTorusElement::operator+=(const TensorTorusElement& o) {
  if (tris_.empty()) {
    *this = o;
    return *this;
  }
  if (o.tris_.size() != tris_.size()) throw Error("MixedTriangulation", "tensor widths differ");
  for (auto& [ks, c] : o.terms_) add_term(ks, c);
  return *this;
}

TensorTorusElement TensorTorusElement::operator-(const TensorTorusElement& o) const {
  return *this + o.scaled(ExactScalar::integer(N_, -1));
}

TensorTorusElement TensorTorusElement::scaled(const ExactScalar& s) const {
  TensorTorusElement r(tris_, N_);
  for (auto& [ks, c] : terms_) r.add_term(ks, c * s);
  return r;
}

TensorTorusElement TensorTorusElement::operator*(const TensorTorusElement& o) const {
  if (o.tris_.size() != tris_.size()) throw Error("MixedTriangulation", "tensor widths differ");
  TensorTorusElement r(tris_, N_);
  for (auto& [ks, c] : terms_)
    for (auto& [ks2, c2] : o.terms_) {
      std::vector<Expo> s(ks.size());
      long long phase = 0;
      for (size_t f = 0; f < ks.size(); ++f) {
        s[f].resize(ks[f].size());
        for (size_t i = 0; i < ks[f].size(); ++i) s[f][i] = ks[f][i] + ks2[f][i];
        phase += tris_[f]->pair(ks[f], ks2[f]);
      }
      r.add_term(s, (c * c2).times_omega(phase));
    }
  return r;
}

bool TensorTorusElement::is_zero() const {
  for (auto& [ks, c] : terms_)
    if (!c.is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------------------

GlueChain glue_chain(const RootContext& ctx, int n) {
  if (n < 1) throw Error("InvalidArgument", "chain length must be >= 1");
  GlueChain g;
  g.n = n;
  g.D1 = delta1(ctx);
  int E = 3 * n + 1;
  auto t = std::make_shared<TriangulationData>();
  t->num_edges = E;
  t->wp.assign(E * E, 0);
  g.edge_map.assign(E, {});
  for (int f = 0; f < n; ++f) {
    for (int l = 0; l < 4; ++l) g.edge_map[3 * f + l].push_back({f, l});
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) t->wp[(3 * f + a) * E + (3 * f + b)] += g.D1->form(a, b);
    for (auto& face : g.D1->faces) t->faces.push_back({3 * f + face[0], 3 * f + face[1], 3 * f + face[2]});
    Expo hp(E, 0);
    hp[3 * f + 1] = 1;
    hp[3 * f + 2] = 1;
    t->punctures.push_back(hp);
  }
  t->boundary.assign(E, 0);
  for (int f = 0; f < n; ++f)
    for (int l = 0; l < 4; ++l) t->boundary[3 * f + l] = d1::Hdel[l];
  if (n == 1) t->generator_lattice = g.D1->generator_lattice;
  g.Dn = t;
  return g;
}

TensorTorusElement GlueChain::embed(const TorusElement& x) const {
  std::vector<TriPtr> tris(n, D1);
  TensorTorusElement r(tris, x.N());
  for (auto& [k, c] : x.terms()) {
    std::vector<Expo> ks(n, Expo(4, 0));
    for (int e = 0; e < int(k.size()); ++e)
      for (auto [f, l] : edge_map[e]) ks[f][l] = k[e];
    r.add_term(ks, c);
  }
  return r;
}

CentralElements central_elements(TriPtr tri, int N) {
  CentralElements c;
  for (auto& p : tri->punctures) c.Hp.push_back(TorusElement::monomial(tri, N, p));
  c.Hdel = TorusElement::monomial(tri, N, tri->boundary);
  return c;
}

}  // namespace qtt
