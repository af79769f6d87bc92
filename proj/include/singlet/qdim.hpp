#pragma once

#include <vector>

#include "singlet/model.hpp"

namespace singlet::qdim {

struct Regime {
  enum Kind { Continuous, Discrete, OnWall } kind = Continuous;
  long k = 0;
  int m = 0;  // strip index in [0, 2q)
  bool operator==(const Regime&) const = default;
};

std::string to_string(const Regime& R);

// q = p+ p-, or p for the (1,p) family
int family_q(const ModelParams& P);
// wall B: Re(eps) > B is the continuous regime
double wall(const ModelParams& P, cplx eps);
Regime regime(const ModelParams& P, cplx eps);

// U_{n}(x) by the three-term recursion; U_{-1} = 0
cplx cheb_u(int n, cplx x);

cplx qdim_closed(const ModelParams& P, const ModuleLabel& L, cplx eps);

struct NumericQdim {
  cplx estimate{0, 0};
  double error = 0;  // spread between extrapolations of different order
  std::vector<double> y;
  std::vector<cplx> ratios;
};

std::vector<double> default_y_schedule();
NumericQdim qdim_numeric(const ModelParams& P, const ModuleLabel& L, cplx eps,
                         const std::vector<double>& y_schedule = default_y_schedule(),
                         const EvalContext& base = EvalContext{});

struct Leak {
  cplx left{0, 0};   // discrete side
  cplx right{0, 0};  // continuous side
};

Leak leak_check(const ModelParams& P, const ModuleLabel& L, int m, double delta = 1e-6);
Leak leak_check(const ModelParams& P, int r, int s, int n, int m, double delta = 1e-6);

struct ScanCell {
  double re_eps = 0, im_eps = 0;
  cplx value{0, 0};
  bool has_value = false;
  Regime regime;
};

struct ScanGrid {
  double re_min = -1, re_max = 1, im_min = -1, im_max = 1;
  int n_re = 40, n_im = 40;
};

std::vector<ScanCell> qdim_scan(const ModelParams& P, const ModuleLabel& L, const ScanGrid& grid);

}  // namespace singlet::qdim
