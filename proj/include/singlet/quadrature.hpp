#pragma once

#include <functional>
#include <vector>

#include "singlet/model.hpp"

namespace singlet::quad {

struct QuadResult {
  cplx value{0, 0};
  double error = 0;
  double lo = 0, hi = 0;  // integration window actually used
};

using Integrand = std::function<cplx(double)>;

// adaptive Gauss-Kronrod on [a,b], split into panels
QuadResult integrate(const Integrand& f, double a, double b, int panels, double rel_tol);
// adaptive on each [pts[i], pts[i+1]], tolerance relative to the overall L1 norm
QuadResult integrate_pieces(const Integrand& f, const std::vector<double>& pts, double rel_tol);

// whole real line, integrand decaying away from center on scale `width`
QuadResult integrate_line(const Integrand& f, double center, double width, const EvalContext& ctx);

// [t0, inf), integrand decaying on scale `width`
QuadResult integrate_ray(const Integrand& f, double t0, double width, const EvalContext& ctx);

}  // namespace singlet::quad
