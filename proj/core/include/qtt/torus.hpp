#pragma once

#include <array>
#include <map>
#include <memory>
#include <vector>

#include "qtt/cyclo.hpp"

namespace qtt {

using Expo = std::vector<int>;

struct TriangulationData {
  int num_edges = 0;
  // antisymmetric integer pairing <e, e'>, row-major num_edges x num_edges
  std::vector<int> wp;
  // each face lists its three edges (0-based); balanced = even sum on every face
  std::vector<std::array<int, 3>> faces;
  std::vector<Expo> generator_lattice;
  // one exponent vector per inner puncture, and the boundary element
  std::vector<Expo> punctures;
  Expo boundary;

  int form(int i, int j) const { return wp[i * num_edges + j]; }
  long long pair(const Expo& a, const Expo& b) const;
  bool balanced(const Expo& e) const;
  bool same_as(const TriangulationData& o) const { return num_edges == o.num_edges && wp == o.wp; }
};

using TriPtr = std::shared_ptr<const TriangulationData>;

// Sum of Weyl-ordered monomials Z^k with exact coefficients.
// Z^k Z^k' = omega^<k,k'> Z^(k+k').
class TorusElement {
 public:
  TorusElement() = default;
  TorusElement(TriPtr tri, int N) : tri_(std::move(tri)), N_(N) {}
  static TorusElement monomial(TriPtr tri, int N, const Expo& k, const ExactScalar& c);
  static TorusElement monomial(TriPtr tri, int N, const Expo& k);
  static TorusElement scalar(TriPtr tri, int N, const ExactScalar& c);

  const TriPtr& tri() const { return tri_; }
  int N() const { return N_; }
  const std::map<Expo, ExactScalar>& terms() const { return terms_; }

  TorusElement& operator+=(const TorusElement& o);
  TorusElement operator+(const TorusElement& o) const { TorusElement r = *this; return r += o; }
  TorusElement operator-(const TorusElement& o) const;
  TorusElement operator-() const;
  TorusElement operator*(const TorusElement& o) const;
  TorusElement scaled(const ExactScalar& s) const;
  TorusElement pow(int e) const;

  // exact test; every coefficient is denominator-cleared and reduced
  bool is_zero() const;
  // a one-term element, throwing otherwise
  std::pair<Expo, ExactScalar> single() const;

 private:
  void add_term(const Expo& k, const ExactScalar& c);
  TriPtr tri_;
  int N_ = 3;
  std::map<Expo, ExactScalar> terms_;
};

TorusElement weyl_product(const TorusElement& a, const TorusElement& b);
bool commutes(const TorusElement& a, const TorusElement& b);

// Delta_1 with the pairing supplied by the caller (used by the search)
TriPtr make_D1(const std::vector<int>& wp);

// Exhaustive search over antisymmetric 4x4 forms with entries in {-2..2}.
// Constraints: H_p, H_del lie in the kernel, |<[Z1Z3Z4], X1>| = 2 (the q-commutation
// up to orientation), and the sign is pinned by E K^(1/2) = q^-1 K^(1/2) E.
struct WPSearchReport {
  TriPtr tri;
  int candidates_before_sign = 0;
  int candidates_after_sign = 0;
};
WPSearchReport derive_wp_D1(const RootContext& ctx);
// cached result of derive_wp_D1 for ctx.N (the form itself is N independent)
TriPtr delta1(const RootContext& ctx);

// integer coordinates over tri->generator_lattice; throws NotInGeneratorLattice
std::vector<int> lattice_coords(const TriangulationData& tri, const Expo& k);

// the fixed Delta_1 exponent vectors
namespace d1 {
inline const Expo Hp{0, 1, 1, 0};
inline const Expo Hdel{2, 1, 1, 2};
inline const Expo Z134{1, 0, 1, 1};
inline const Expo X1{2, 0, 0, 0};
Expo X(int i, int power = 1);  // X_i^power = Z_i^(2 power)
Expo add(std::initializer_list<Expo> ks);
Expo neg(const Expo& k);
}  // namespace d1

// element of an n-fold tensor product of Delta_1 tori
class TensorTorusElement {
 public:
  TensorTorusElement() = default;
  TensorTorusElement(std::vector<TriPtr> tris, int N) : tris_(std::move(tris)), N_(N) {}
  static TensorTorusElement outer(const std::vector<TorusElement>& factors);

  int factors() const { return int(tris_.size()); }
  int N() const { return N_; }
  const std::vector<TriPtr>& tris() const { return tris_; }
  const std::map<std::vector<Expo>, ExactScalar>& terms() const { return terms_; }

  TensorTorusElement& operator+=(const TensorTorusElement& o);
  TensorTorusElement operator+(const TensorTorusElement& o) const { auto r = *this; return r += o; }
  TensorTorusElement operator-(const TensorTorusElement& o) const;
  TensorTorusElement operator*(const TensorTorusElement& o) const;
  TensorTorusElement scaled(const ExactScalar& s) const;
  bool is_zero() const;

  void add_term(const std::vector<Expo>& ks, const ExactScalar& c);

 private:
  std::vector<TriPtr> tris_;
  int N_ = 3;
  std::map<std::vector<Expo>, ExactScalar> terms_;
};

// Chain Delta_n of n copies of Delta_1, edge 4 of copy j glued to edge 1 of copy j+1.
struct GlueChain {
  int n = 0;
  TriPtr Dn;
  TriPtr D1;
  // for each edge of Delta_n, the (factor, local edge) slots it maps to
  std::vector<std::vector<std::pair<int, int>>> edge_map;

  TensorTorusElement embed(const TorusElement& x) const;
  // edge index of Delta_n for (factor, local edge)
  int edge(int factor, int local) const { return 3 * factor + local; }
};
GlueChain glue_chain(const RootContext& ctx, int n);

struct CentralElements {
  std::vector<TorusElement> Hp;
  TorusElement Hdel;
};
CentralElements central_elements(TriPtr tri, int N);

}  // namespace qtt
