#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "qtt/qgroup.hpp"

namespace qtt {

struct WeightModuleSpec {
  enum class Family { Diag, Cyclic, Semi };
  Family family = Family::Cyclic;
  cplx lambda = 1.0, mu = 1.0;
  cplx a = 0.0, b = 0.0;  // cyclic
  cplx c = 0.0;           // semi-cyclic
  int eps = 1, n = 0;     // diagonal

  static WeightModuleSpec diag(cplx mu, int eps, int n);
  static WeightModuleSpec cyclic(cplx lambda, cplx mu, cplx a, cplx b);
  static WeightModuleSpec semi(cplx lambda, cplx mu, cplx c);
  int dim(int N) const { return family == Family::Diag ? n + 1 : N; }
  std::string family_name() const;
};

// generator matrices in a fixed basis
struct MatrixRep {
  Mat E, F, Kh, Lh;

  int dim() const { return int(E.rows()); }
  Mat Khi() const { return Kh.inverse(); }
  Mat Lhi() const { return Lh.inverse(); }
  Mat K() const { return Kh * Kh; }
  Mat L() const { return Lh * Lh; }
  Mat Hdel() const { return (Kh * Lh).inverse(); }
  Mat get(Gen g) const;
  Mat word(const Word& w) const;
  Mat T(const RootContext& ctx) const;
  Mat casimir(const RootContext& ctx) const;
};

MatrixRep build_rep(const RootContext& ctx, const WeightModuleSpec& spec);
// largest absolute residual over the defining relations
double relation_residual(const RootContext& ctx, const MatrixRep& r);

struct StandardModuleSpec {
  cplx x1 = 1.0, lambda = 1.0, hp = 1.0, hdel = 1.0;
};

// omega^phase * x1^e0 lambda^e1 hp^e2 hdel^e3 * A^shift D^clock, with A v_i = v_(i-1), D v_i = q^i v_i
struct Template {
  long long phase = 0;
  std::array<int, 4> ex{0, 0, 0, 0};
  int shift = 0, clock = 0;
  Mat matrix(const RootContext& ctx, const StandardModuleSpec& s) const;
  Template operator*(const Template& o) const;
  Template inverse() const;
  Template pow(int e) const;
  std::string str() const;
};

struct XiDictionary {
  Template Z134, X1, X2, X3, X4;
  int candidates = 0;  // how many X1 templates were scanned
  int matches = 0;  // raw hits, clock powers included
  int classes = 0;  // hits up to the diagonal gauge x1 A D^n ~ x1 A
};
// Scans X1 templates (scalar exponents in {-1,0,1}, shift and clock powers in {-2..2})
// with rho([Z1Z3Z4]) = lambda^-1 D fixed; keeps those whose generator matrices,
// in the basis F^i e_0, equal the cyclic family with the case-1 (a, b).
// Unique up to the diagonal gauge; the clock-free representative is frozen.
XiDictionary standard_xi_dictionary(const RootContext& ctx);
const XiDictionary& xi_dictionary(const RootContext& ctx);

Mat clock_D(const RootContext& ctx);
Mat shift_A(int N);

class StandardModule {
 public:
  StandardModule(const RootContext& ctx, const StandardModuleSpec& s);
  const StandardModuleSpec& spec() const { return spec_; }
  const RootContext& ctx() const { return ctx_; }
  Mat mono(const Expo& k) const;
  Mat evaluate(const TorusElement& x) const;
  MatrixRep rep() const;

 private:
  RootContext ctx_;
  StandardModuleSpec spec_;
  TriPtr tri_;
  Template z134_, x1_;
};

// rho(Z^k) as a template; Weyl phase from the lattice decomposition
Template monomial_template(const TriangulationData& tri, const Template& z134, const Template& x1, const Expo& k);

Mat evaluate_torus(const RootContext& ctx, const StandardModuleSpec& s, const TorusElement& x);
MatrixRep standard_rep(const RootContext& ctx, const StandardModuleSpec& s);

struct WeightBasis {
  WeightModuleSpec spec;
  Mat basis;  // columns v_i written in the standard basis
  bool case2 = false;
};
WeightBasis standard_to_weight(const RootContext& ctx, const StandardModuleSpec& s);

struct LiftOptions {
  std::optional<int> hp_sign;  // scalar family: +1 / -1
  cplx x1 = 1.0;               // scalar family: chosen x1 (any nonzero value works)
};
StandardModuleSpec weight_to_standard(const RootContext& ctx, const WeightModuleSpec& spec,
                                      const LiftOptions& opt = {});

struct CentralCharacter {
  Mat gminus, gplus;  // 2x2
  cplx t = 0.0, hdel = 1.0;
  Mat phi() const { return gminus.inverse() * gplus; }
};
// with_t = false skips the puncture invariant, for reducible modules such as tensor products
CentralCharacter classical_shadow(const RootContext& ctx, const MatrixRep& r, bool with_t = true);

struct ShadowInvariants {
  double det_minus = 0, det_plus = 0;
  double triangular = 0;
  // identities as printed: T_N(t) = tr phi(g), h^-N = (g_- g_+)_11
  double chebyshev_printed = 0, boundary_printed = 0;
  // what holds with the generator conventions in force: T_N(t) = -tr phi(g), h^N = (g_- g_+)_11
  double chebyshev_signed = 0, boundary_signed = 0;
};
ShadowInvariants shadow_invariants(const RootContext& ctx, const CentralCharacter& c);

MatrixRep tensor_rep(const MatrixRep& a, const MatrixRep& b);

// maps M with M rho1(g) = rho2(g) M for g in {E, F, K^1/2, L^1/2}
std::vector<Mat> intertwiner_space(const MatrixRep& r1, const MatrixRep& r2, double tol = 1e-9);
int commutant_dim(const MatrixRep& r, double tol = 1e-9);
// intertwiner residual of a given map
double intertwining_residual(const Mat& M, const MatrixRep& r1, const MatrixRep& r2);

struct ExactSequenceReport {
  double equivariance_i = 0, equivariance_p = 0;
  int rank_i = 0, rank_p = 0;
  double composite = 0;  // || p o i ||
  bool splits = false;   // true if an equivariant section exists
  double section_residual = 0;
};
ExactSequenceReport exact_sequence_check(const RootContext& ctx, cplx mu, int eps, int n);

}  // namespace qtt
