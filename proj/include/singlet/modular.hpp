#pragma once

#include <vector>

#include "singlet/model.hpp"
#include "singlet/special.hpp"

namespace singlet::modular {

using Matrix = std::vector<std::vector<double>>;

struct ResidualReport {
  cplx lhs{0, 0};
  cplx rhs{0, 0};
  double abs_residual = 0;
  double rel_residual = 0;
  EvalContext settings;

  static ResidualReport make(cplx lhs, cplx rhs, const EvalContext& ctx);
};

// shift = lambda - alpha0/2
cplx s_kernel_typical(cplx shift, double x, cplx eps);
cplx s_kernel_false(const ModelParams& P, long b, long c, double x, cplx eps);
cplx s_kernel_atypical(const ModelParams& P, int r, int s, int n, double x, cplx eps);

cplx correction_X(const ModelParams& P, long b, long c, const EvalContext& ctx);
cplx correction_Y(const ModelParams& P, int r, int s, int n, const EvalContext& ctx);
// lim eps->0 of Y: -(n/2) sum_T (-1)^{n(p+ s' + p- r')} S_{(r,s),(r',s')} ch L_{r',s'}
cplx correction_Y_limit(const ModelParams& P, int r, int s, int n, const EvalContext& ctx);

double s_virasoro(const ModelParams& P, int r, int s, int r2, int s2);
Matrix smatrix_virasoro(const ModelParams& P);
Matrix smatrix_wzw(int k);

// ch(-1/tau) written through characters at tau
struct Transformed {
  Scaled discrete;    // finite Virasoro part
  Scaled integral;    // continuous part
  Scaled correction;  // weighted X or Y, zero for Re eps > 0
  Scaled total() const { return discrete + integral + correction; }
  double quad_error = 0;
};

Transformed transformed_side(const ModelParams& P, const ModuleLabel& L, const EvalContext& ctx);
Transformed transformed_false_theta(const ModelParams& P, long b, long c, const EvalContext& ctx);

// theta_{a,b}(u/tau, -1/tau) against the c-sum at (u, tau)
ResidualReport verify_theta_modular(sf::ThetaIndex idx, cplx u, const EvalContext& ctx);

ResidualReport verify_s_transform(const ModelParams& P, const ModuleLabel& L, const EvalContext& ctx);
ResidualReport verify_false_theta(const ModelParams& P, long b, long c, const EvalContext& ctx);

}  // namespace singlet::modular
