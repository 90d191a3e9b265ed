#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qtt/reps.hpp"

namespace qtt {

// source/target pair of operators that an isomorphism must intertwine
using OpPair = std::pair<Mat, Mat>;

struct Realignment {
  Mat Psi;                 // Psi e_s = coeff_s e'_perm(s)
  std::vector<int> perm;
  Vec coeff;
  double recurrence = 0;   // worst violated coefficient equation
  double residual = 0;     // worst intertwining residual over the verification list
};

// Psi is a monomial matrix: indices are matched by the joint spectrum of `diagonal`,
// coefficients propagate along the single-entry columns of `shifts`, and the result
// is checked on `verify`. Throws NoMatch or RecurrenceInconsistent.
Realignment realign_monomial(const std::vector<OpPair>& diagonal, const std::vector<OpPair>& shifts,
                             const std::vector<OpPair>& verify, double tol = 1e-8);

double pair_residual(const Mat& Psi, const OpPair& op);

// Delta_2 action on V1 (x) V2 through the generating list used in the factorisation
// argument: Delta(K^1/2), Delta(K^-1/2), T (x) 1, 1 (x) T, H_del^+-1 (x) H_del^+-1,
// E H_del (x) 1, K^1/2 L^-1/2 (x) 1, F (x) 1, L (x) F, E (x) K, 1 (x) E
struct NamedOp {
  std::string name;
  Mat op;
};
std::vector<NamedOp> d2_generator_list(const RootContext& ctx, const MatrixRep& v1, const MatrixRep& v2);

// weight-module pairs; NoMatch when the D_2 characters differ
Realignment realign_D2(const RootContext& ctx, const MatrixRep& v1, const MatrixRep& v2, const MatrixRep& w1,
                       const MatrixRep& w2, double tol = 1e-8);

// tensor products of standard modules glued into Delta_n
class ChainModule {
 public:
  ChainModule(const RootContext& ctx, std::vector<StandardModuleSpec> factors);
  int length() const { return int(mods_.size()); }
  int dim() const;
  const GlueChain& chain() const { return chain_; }
  const std::vector<StandardModule>& factors() const { return mods_; }
  // k indexes the 3n+1 edges of Delta_n
  Mat mono(const Expo& k) const;
  Mat evaluate(const TensorTorusElement& x) const;
  // iterated coproduct action of the quantum group
  MatrixRep coproduct_rep() const;

 private:
  RootContext ctx_;
  GlueChain chain_;
  std::vector<StandardModule> mods_;
};

Realignment realign_Dn(const ChainModule& src, const ChainModule& dst, double tol = 1e-8);

}  // namespace qtt
