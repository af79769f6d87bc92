#pragma once

#include <vector>

#include "singlet/modular.hpp"
#include "singlet/model.hpp"

namespace singlet::qmf {

// sum_n sgn(n) q^{p(n + j/2p)^2}, sgn(0) = 1
cplx false_theta_F(int j, int p, cplx tau, const EvalContext& ctx = EvalContext{});
// sum_n (n + j/2p) q^{p(n + j/2p)^2}
cplx weight32_f(int j, int p, cplx z, const EvalContext& ctx = EvalContext{});

// sqrt(2i) int_{conj w}^{i inf} f_{j,p}(z) (z - w)^{-1/2} dz, Im w < 0
cplx eichler_half(int j, int p, cplx w, const EvalContext& ctx = EvalContext{});

// [S(p)]_{c,j} = sqrt(2/p) sin(pi c j / p), c, j = 1..p-1
modular::Matrix smatrix_p(int p);

struct VectorResidual {
  std::vector<cplx> lhs, rhs;
  double abs_residual = 0;  // euclidean norm of lhs - rhs
  double rel_residual = 0;
  EvalContext settings;
};

// lhs = sqrt(1/(wi)) F*(-1/w), rhs = -S F*(w) - S g(w)
VectorResidual cocycle_check_halfint(int p, cplx w, const EvalContext& ctx = EvalContext{});

enum class ChiForm { Difference, Weighted };
cplx chi_tilde(const ModelParams& P, int r, int s, cplx tau, ChiForm form = ChiForm::Weighted,
               const EvalContext& ctx = EvalContext{});
// numerical rank of the chi_tilde family over the Kac table
int chi_tilde_span_dimension(const ModelParams& P, const EvalContext& ctx = EvalContext{});

// eta ch L_{r,s}
cplx eta_char_virasoro(const ModelParams& P, int r, int s, cplx tau, const EvalContext& ctx = EvalContext{});
// sqrt(2i) int_{conj w}^{i inf} eta ch L_{r,s}(z) (z - w)^{-3/2} dz
cplx eichler_32(const ModelParams& P, int r, int s, cplx w, const EvalContext& ctx = EvalContext{});

// lhs = (1/(wi))^{3/2} G*(-1/w), rhs = -SM G*(w) - SM g(w), Kac-table order
VectorResidual cocycle_check_weight32(const ModelParams& P, cplx w, const EvalContext& ctx = EvalContext{});

struct RadialLimit {
  cplx upper{0, 0};  // extrapolated F_{j,p}(x + i delta)
  cplx lower{0, 0};  // extrapolated -i sqrt(p) F*_{j,p}(x - i delta)
  double difference = 0;
  std::vector<double> deltas;
  std::vector<cplx> upper_values, lower_values;
};

std::vector<double> default_delta_schedule();
// the schedule is divided by k^2 for x = h/k
RadialLimit radial_limit_check(int j, int p, rational x,
                               const std::vector<double>& delta_schedule = default_delta_schedule(),
                               const EvalContext& ctx = EvalContext{});

}  // namespace singlet::qmf
