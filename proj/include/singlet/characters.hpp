#pragma once

#include "singlet/model.hpp"

namespace singlet::chars {

// e^{2 pi eps x} q^{x^2/2} / eta, x = lambda - alpha0/2
cplx fock_char(cplx shift, const EvalContext& ctx);

cplx char_typical(const ModelParams& P, cplx lambda, const EvalContext& ctx);
cplx char_virasoro(const ModelParams& P, KacLabel kac, const EvalContext& ctx);
cplx char_atypical(const ModelParams& P, const ModuleLabel& L, const EvalContext& ctx);
cplx char_kernel(const ModelParams& P, int r, int s, const EvalContext& ctx);
cplx char_singlet_1p(int p, int r, int s, const EvalContext& ctx);

cplx character(const ModelParams& P, const ModuleLabel& L, const EvalContext& ctx);

// Fock-module sums (resolutions); truncated once terms fall below series_tail_tol
cplx char_I_fock_sum(const ModelParams& P, int r, int s, int n, const EvalContext& ctx);
cplx char_Iplus_fock_sum(const ModelParams& P, int r, int s, int n, const EvalContext& ctx);
cplx char_Iminus_fock_sum(const ModelParams& P, int r, int s, int n, const EvalContext& ctx);

// ch I as alternating sums of I+ and of I- characters
cplx char_I_from_plus(const ModelParams& P, int r, int s, int n, const EvalContext& ctx);
cplx char_I_from_minus(const ModelParams& P, int r, int s, int n, const EvalContext& ctx);

}  // namespace singlet::chars
