#pragma once

#include <array>
#include <string>
#include <vector>

#include "qtt/realign.hpp"

namespace qtt {

// (z, z', z'') with z' = 1/(1-z), z'' = 1 - 1/z
struct ShapeParameter {
  cplx z = 0.0, zp = 0.0, zpp = 0.0;
  static ShapeParameter from_z(cplx z);
  static ShapeParameter from_zp(cplx zp);
  // worst of |z z' z'' + 1| and |z z'' - z + 1|
  double residual() const;
};

struct QShapeParameter {
  cplx w = 0.0, wp = 0.0, wpp = 0.0;
  ShapeParameter classical(int N) const;
  // |w w' w'' + q^-1|
  double residual(const RootContext& ctx) const;
};

// sum_{n<N} (-w X)^n q^(n(n-1)/2) / prod_{m=1..n} (q^m w - q^-m)
// requires X^N = c I with w^N (1 + c) = 1
Mat phi_w(const RootContext& ctx, cplx w, const Mat& X, double tol = 1e-8);

struct ClassicalShapes {
  std::array<ShapeParameter, 4> z;
  cplx x3 = 0.0, x4 = 0.0, x5 = 0.0;  // N-th power scalars of X3, X4, X5 on V1 (x) V2
};
// Throws NotTriangulable when a shape hits 0, 1 or infinity within delta.
ClassicalShapes classical_shapes(const RootContext& ctx, const StandardModuleSpec& v1, const StandardModuleSpec& v2,
                                 double delta = 1e-9);

// branch indices; the default is principal everywhere
struct RootChoices {
  std::array<int, 4> w{0, 0, 0, 0};  // N-th roots of z1', z2'', z3'', z4'
  int sroot = 0;                     // 0: principal square root, 1: its negative
  int alpha = 0, beta = 0;           // integer flattening
};

struct OctahedronParameters {
  std::array<QShapeParameter, 4> w;
  cplx sroot = 1.0;
  int alpha = 0, beta = 0;
  cplx xt3 = 0.0, xt4 = 0.0, xt5 = 0.0;
};

struct Octahedron {
  OctahedronParameters params;
  ClassicalShapes shapes;
  StandardModuleSpec v3, v4;
  // relative residuals of the defining equations on the output
  std::vector<std::pair<std::string, double>> residuals;
  double worst() const;
  // flattening values read off the printed E8 with the fixed log branch
  cplx alpha_printed = 0.0, beta_printed = 0.0;
};
Octahedron solve_octahedron(const RootContext& ctx, const StandardModuleSpec& v1, const StandardModuleSpec& v2,
                            const RootChoices& roots = {});

// q^((alpha - 2i)(beta - 2j)/2) on e_i (x) e_j, through q_power
Mat d_alpha_beta(const RootContext& ctx, cplx alpha, cplx beta);
// e_i (x) e_j -> e_j (x) e_i
Mat flip(int n1, int n2);

struct BraidingOperator {
  enum class Provenance { ClosedFormula, Drinfeld };
  Mat matrix;
  StandardModuleSpec src1, src2, dst1, dst2;
  Provenance provenance = Provenance::ClosedFormula;
  cplx d = 1.0;  // matrix = raw / d, d^(N^2) = det(raw)
};

BraidingOperator closed_formula_R(const RootContext& ctx, const StandardModuleSpec& v1, const StandardModuleSpec& v2,
                                  const Octahedron& oct);
BraidingOperator closed_formula_R(const RootContext& ctx, const StandardModuleSpec& v1, const StandardModuleSpec& v2,
                                  const RootChoices& roots = {});

struct GeneratorImage {
  std::string name;
  Mat source;  // on V1 (x) V2
  Mat target;  // its image on V3 (x) V4
};
// images of the D_2 generators and of the five Kashaev-Reshetikhin equations.
// Throws SingularSum when a sum that must be inverted is singular.
std::vector<GeneratorImage> script_R_targets(const RootContext& ctx, const StandardModuleSpec& v1,
                                             const StandardModuleSpec& v2, const StandardModuleSpec& v3,
                                             const StandardModuleSpec& v4);
// the image of X4 recovered from Delta(K^-1) X1^-1 X3^-1 X6^-1 X7^-1
GeneratorImage script_R_x4(const RootContext& ctx, const StandardModuleSpec& v1, const StandardModuleSpec& v2,
                           const StandardModuleSpec& v3, const StandardModuleSpec& v4);

struct ResidualReport {
  std::vector<std::pair<std::string, double>> items;
  double worst = 0;
};
ResidualReport intertwiner_residual(const RootContext& ctx, const Mat& R, const std::vector<GeneratorImage>& images);
ResidualReport intertwiner_residual(const RootContext& ctx, const BraidingOperator& R);

// Drinfel'd braiding on diagonal-weight modules: r1(K^1/2) e_i = q^(h/2 - i) e_i,
// r2(L^1/2) f_j = q^(g/2 + j) f_j, with E^N = F^N = 0. Throws NotDiagonalFamily.
Mat drinfeld_R(const RootContext& ctx, const MatrixRep& r1, const MatrixRep& r2, cplx h, cplx g,
               bool normalize = true);
// weight logs read off the diagonal
std::pair<cplx, cplx> drinfeld_weights(const RootContext& ctx, const MatrixRep& r1, const MatrixRep& r2);

// iso B: W -> V of a simple module, det B = 1. Throws NonProportional when none or several exist.
Mat module_iso(const MatrixRep& w, const MatrixRep& v);

struct Proportionality {
  cplx zeta = 0.0;
  double residual = 0;
  double root_of_unity = 0;  // |zeta^(N^2) - 1|
  // R^D moved to the standard frame of RK, against the images of R
  double rd_intertwiner = 0;
};
// R^D on W (x) W against a closed-formula braiding whose four modules are lifts of W
Proportionality compare_drinfeld_kashaev(const RootContext& ctx, const Mat& RD, const MatrixRep& w,
                                         const BraidingOperator& RK);

// D_1 monomial iso between two standard modules, det 1; throws NoMatch
Mat standard_iso(const RootContext& ctx, const StandardModuleSpec& a, const StandardModuleSpec& b);

struct YangBaxterReport {
  cplx c = 0.0;
  double residual = 0;
  double root_of_unity = 0;  // |c^(N^2) - 1|
  bool factorwise = false;   // the two final triples agree factor by factor up to D_1 isos
};
// (R3 (x) 1)(1 (x) R2)(R1 (x) 1) = c (1 (x) R6)(R5 (x) 1)(1 (x) R4). Throws ChainMismatch.
YangBaxterReport yang_baxter_check(const RootContext& ctx, const std::array<BraidingOperator, 6>& R);
// builds the six closed-formula operators for a triple and checks them
YangBaxterReport yang_baxter_triple(const RootContext& ctx, const StandardModuleSpec& v1,
                                    const StandardModuleSpec& v2, const StandardModuleSpec& v3,
                                    std::array<BraidingOperator, 6>* out = nullptr);

// logs of (x1^N, x2^N, lambda1^N, lambda2^N) -> (x3^N, x4^N, lambda3^2N, lambda4^2N); used to invert a crossing
std::array<cplx, 4> classical_forward(int N, const std::array<cplx, 4>& u, cplx hp1, cplx hd1, cplx hp2, cplx hd2);
// a source pair whose closed-formula targets are isomorphic to (v3, v4). Throws NotTriangulable.
std::pair<StandardModuleSpec, StandardModuleSpec> inverse_octahedron(const RootContext& ctx,
                                                                     const StandardModuleSpec& v3,
                                                                     const StandardModuleSpec& v4,
                                                                     unsigned seed = 1);

}  // namespace qtt
