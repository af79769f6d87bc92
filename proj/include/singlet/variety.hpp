#pragma once

#include <string>
#include <vector>

#include "singlet/modular.hpp"
#include "singlet/model.hpp"

namespace singlet::variety {

// (x, z) for (1,p); (x, y, z) otherwise, y unused for (1,p)
struct CurvePoint {
  cplx x{0, 0}, y{0, 0}, z{1, 0};
};

ModelParams one_p(int p);

// one residual for (1,p), two for (p+,p-)
std::vector<cplx> curve_eval(const ModelParams& P, const CurvePoint& pt);

struct SingularPoint {
  int k = 0;  // x = 2cos(k pi/p+) (or p for (1,p))
  int l = 0;  // y = 2cos(l pi/p-), 0 for (1,p)
  CurvePoint point;
  std::string description;
  double curve_residual = 0;
  double jacobian_norm = 0;  // gradient norm, or norm of the gradient cross product
  double hessian_det = 0;    // (1,p) only
};

std::vector<SingularPoint> singular_points(const ModelParams& P);

CurvePoint parametrize(const ModelParams& P, cplx t);

// t attached to a continuous-regime eps
cplx uniformising_t(const ModelParams& P, cplx eps);

modular::ResidualReport uniformisation_check(const ModelParams& P, cplx eps);

}  // namespace singlet::variety
