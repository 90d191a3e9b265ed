#pragma once

#include <map>
#include <string>
#include <vector>

#include "qtt/braiding.hpp"

namespace qtt {

struct BraidLetter {
  int index = 1;  // sigma_index, 1-based
  int sign = 1;
};

struct BraidWord {
  int strands = 2;
  std::vector<BraidLetter> letters;
  // signed generator list, e.g. {1, -2, 1, -2}; throws InvalidArgument when out of range
  static BraidWord from_signed(int strands, const std::vector<int>& letters);
  std::vector<int> to_signed() const;
  BraidWord then(const BraidWord& o) const;
};

struct ColoredBraid {
  BraidWord word;
  std::vector<StandardModuleSpec> modules;
  std::map<int, RootChoices> overrides;  // by letter position
};

struct BraidEvaluation {
  Mat op;  // on the tensor of the initial modules
  std::vector<StandardModuleSpec> final_modules;
};

// id^(i-1) (x) M (x) id^(n-i-1) for an operator M on two adjacent slots of dimension d each
Mat embed_pair(const Mat& M, int slot, int strands, int d);

// inverse crossing at a pair (v3, v4): the source pair of the forward crossing that lands on
// an isomorphic pair, and (Psi R)^-1 with Psi the D_2 realignment, det 1
BraidingOperator inverse_crossing(const RootContext& ctx, const StandardModuleSpec& v3, const StandardModuleSpec& v4,
                                  const RootChoices& roots = {});

// letters composed left to right. Throws NotTriangulableAtStep or SingularSum.
BraidEvaluation evaluate_braid(const RootContext& ctx, const ColoredBraid& cb);

struct PivotalData {
  std::vector<Mat> pivots;  // rho((K^1/2 L^-1/2)^(N-1)) per module
  static PivotalData of(const RootContext& ctx, const std::vector<StandardModuleSpec>& modules);
  static Mat pivot(const RootContext& ctx, const MatrixRep& r);
  Mat tensor() const;
};

// trace(op (x)pivots) after realigning final to initial; defined up to the phase of op.
// pivot_first = false leaves the first strand without its pivot (the pivot trace of a cyclic
// module is 0, so full closures of standard colourings vanish). Throws CharacterMismatch.
cplx pivotal_closure(const RootContext& ctx, const Mat& op, const std::vector<StandardModuleSpec>& initial,
                     const std::vector<StandardModuleSpec>& final_modules, bool pivot_first = true);

// standard knots used by the smoke test
BraidWord knot_word(const std::string& name);  // unknot, trefoil, figure_eight

// entry-by-entry state sum with the Drinfel'd matrix of V(A^-1, A, 0, 0); shares nothing
// with the operator code beyond the root context. open: no pivot on the first strand, divided by N
cplx oracle_closure(const RootContext& ctx, const BraidWord& w, bool open = false);

struct JonesSmokeReport {
  std::string knot;
  BraidWord word;
  cplx drinfeld = 0.0, kashaev = 0.0, oracle = 0.0;
  // closures vanish on this module (zero quantum dimension), so the pivot is also left off the
  // first strand: tr(op (1 (x) pivots)) / N. Not an invariant, but nonzero and route-independent up to phase.
  cplx drinfeld_open = 0.0, kashaev_open = 0.0, oracle_open = 0.0;
  double open_scalar = 0;           // distance of the partial trace from a multiple of 1 (informational)
  cplx phase = 1.0;                 // product of the per-letter zetas
  double abs_mismatch = 0;          // worst ||a| - |b|| among the three closures
  double phase_rou = 0;             // |ratio^(N^2) - 1| for the two routes (0 if both vanish)
  double open_abs_mismatch = 0, open_phase_rou = 0;
  std::vector<StandardModuleSpec> lifts;  // initial Kashaev lifts used
  bool ok(double tol_abs = 1e-6, double tol_rou = 1e-6) const;
};
JonesSmokeReport jones_smoke(const RootContext& ctx, const std::string& knot);
JonesSmokeReport jones_smoke(const RootContext& ctx, const std::string& name, const BraidWord& w);

}  // namespace qtt
