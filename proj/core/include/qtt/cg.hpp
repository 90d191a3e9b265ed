#pragma once

#include <vector>

#include "qtt/reps.hpp"

namespace qtt {

// w(x,y,z|k) = prod_{i=0}^{k mod N} y / (z - x q^(2i)); needs x^N + y^N = z^N.
// Throws PeriodicityViolated or PoleHit.
cplx w_coeff(const RootContext& ctx, cplx x, cplx y, cplx z, long long k, double tol = 1e-8);

// roots and derived data behind the explicit cyclic operators
struct CGParameters {
  cplx b1, b2, b;        // b = b1 + b2 mu1^(2N)
  cplx bt1, bt2, bt;     // chosen N-th roots
  int alpha = 0;
  cplx x, y, z;          // arguments of w for this alpha
  cplx a_alpha, t_alpha;
};
CGParameters cg_parameters(const RootContext& ctx, const WeightModuleSpec& v1, const WeightModuleSpec& v2, int alpha,
                           int root_b1 = 0, int root_b2 = 0, int root_b = 0);

struct CGOperator {
  int alpha = 0;
  Mat K;                   // N^2 x N, column k is the image of v_k (or w_k)
  cplx t = 0.0;            // eigenvalue of T on the image
  WeightModuleSpec target;
  double equivariance = 0; // intertwining residual against the target module
  double t_residual = 0;   // ||T K - t K|| / ||K||
};

// Cyclic (x) cyclic. Seed v_0's image in the zero-weight space as an eigenvector of T
// and propagate with Delta(F); alpha runs over the sorted eigenvalues.
// Throws DegenerateParameters when b1, b2 or b vanish or the eigenvalues collide.
std::vector<CGOperator> cg_operators(const RootContext& ctx, const WeightModuleSpec& v1, const WeightModuleSpec& v2);
CGOperator cg_operator(const RootContext& ctx, const WeightModuleSpec& v1, const WeightModuleSpec& v2, int alpha);

// The coefficient formula with w(x_alpha, y, z_alpha | i - alpha). It commutes with
// F, K^1/2 and L^1/2 but not with E against V(l1 l2, m1 m2, a_alpha, b); kept for comparison.
CGOperator cg_closed_form(const RootContext& ctx, const WeightModuleSpec& v1, const WeightModuleSpec& v2, int alpha,
                          int root_b1 = 0, int root_b2 = 0, int root_b = 0);
// largest residual over F, K^1/2, L^1/2 only
double borel_residual(const Mat& K, const MatrixRep& src, const MatrixRep& tensor);

// Semi-cyclic (x) semi-cyclic: image of w_0 spans ker Delta(F) in the weight space alpha,
// w_k maps to Delta(E)^k of it. Target semi(l1 l2 q^a, m1 m2 q^-a, c2 + c1 l2^(2N)).
CGOperator cg_operator_semicyclic(const RootContext& ctx, const WeightModuleSpec& v1, const WeightModuleSpec& v2,
                                  int alpha);
cplx semicyclic_t(const RootContext& ctx, const WeightModuleSpec& v1, const WeightModuleSpec& v2, int alpha);

// roots of T_N(X) = tau, each listed once per branch j = 0..N-1
std::vector<cplx> chebyshev_roots(int N, cplx tau);

struct CGCluster {
  cplx t;
  int count = 0;        // eigenvalue multiplicity in the tensor
  int m = 0;            // count / N
  int expected_m = 0;   // 2 iff tr phi = +-2 and t != +-2
};

struct CGDecomposition {
  std::vector<CGCluster> clusters;
  cplx trace_phi = 0.0;     // tr phi(g1 g2)
  int total_m = 0;
  bool multiplicities_ok = false;
  // distance between the clustered spectrum and the roots of T_N(X) = tau (as printed)
  // and of T_N(X) = -tau (sign that holds with these generators)
  double match_printed = 0, match_signed = 0;
  double scale = 1;
};
// eigenvalues of T on r1 (x) r2, clustered at tol after dividing by max(1, spectral radius).
// Throws ClusteringAmbiguous if two clusters sit within 10 tol.
CGDecomposition cg_decompose(const RootContext& ctx, const MatrixRep& r1, const MatrixRep& r2, double tol = 1e-6);

}  // namespace qtt
