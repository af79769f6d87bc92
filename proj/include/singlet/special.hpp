#pragma once

#include "singlet/model.hpp"

namespace singlet {

struct SeriesValue {
  cplx value{0, 0};
  long terms_used = 0;
  // remaining tail, relative to max(1, largest term)
  double tail_bound = 0;
  bool converged = true;

  const SeriesValue& require(const char* what) const;
};

// m * exp(lg); keeps very large or very small magnitudes representable
struct Scaled {
  cplx m{0, 0};
  double lg = 0;

  Scaled() = default;
  Scaled(cplx v) : m(v) {}
  Scaled(cplx mant, double l) : m(mant), lg(l) {}
  static Scaled from_log(cplx logv);

  cplx value() const;
  double log_abs() const;
  bool is_zero() const { return m == cplx(0, 0); }

  Scaled& operator+=(const Scaled& o);
  Scaled& operator-=(const Scaled& o) { return *this += o * cplx(-1, 0); }
  Scaled operator*(const Scaled& o) const;
  Scaled operator/(const Scaled& o) const;
  Scaled operator*(cplx c) const { return {m * c, lg}; }
  friend Scaled operator+(Scaled a, const Scaled& b) { return a += b; }
  friend Scaled operator-(Scaled a, const Scaled& b) { return a -= b; }
};

namespace sf {

struct ThetaIndex {
  int a = 1;
  long b = 0;
};

enum class Weight { One, X };

struct GaussSum {
  Scaled sum;
  long terms = 0;
  double rel_tail = 0;  // tail / largest term
  double log_peak = 0;  // log of the largest term magnitude
  bool converged = true;
};

// sum over x = k + b/2a (all k, or k >= 0 when half) of w(x) exp(2 pi eps x) z^x q^{a x^2}, z = e^{2 pi i u}
GaussSum gauss_sum(int a, long b, cplx u, cplx eps, cplx tau, bool half, Weight w,
                   double tol, long max_terms);

// running count of series terms evaluated on this thread
long& term_counter();

SeriesValue eta(const EvalContext& ctx);
cplx log_eta(cplx tau);

SeriesValue theta(ThetaIndex idx, cplx u, const EvalContext& ctx);
// z d/dz theta at elliptic argument u
SeriesValue theta_deriv(ThetaIndex idx, const EvalContext& ctx, cplx u = 0.0);

SeriesValue partial_theta(ThetaIndex idx, cplx u, cplx eps, const EvalContext& ctx);
SeriesValue partial_theta_deriv(ThetaIndex idx, cplx eps, const EvalContext& ctx, cplx u = 0.0);

// F^eps_{b,c}; deriv selects the weighted series F'
SeriesValue mixed_false_theta(const ModelParams& P, long b, long c, cplx eps, const EvalContext& ctx,
                              bool deriv = false);

}  // namespace sf
}  // namespace singlet
