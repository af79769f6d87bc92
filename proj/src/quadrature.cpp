#include "singlet/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace singlet::quad {

namespace {

double rel_tol_of(const EvalContext& ctx) { return std::clamp(ctx.quad_abs_tol * 1e-2, 1e-14, 1e-6); }

// walk outwards until |f| is negligible against the largest sample seen
double find_edge(const Integrand& f, double start, double dir, double width, double peak,
                 const EvalContext& ctx) {
  const double cut = ctx.quad_abs_tol * 1e-4;
  double X = width;
  double big = peak;
  while (X < ctx.quad_cutoff) {
    double a1 = std::abs(f(start + dir * X));
    double a2 = std::abs(f(start + dir * 1.07 * X));
    big = std::max({big, a1, a2});
    if (a1 <= cut * big && a2 <= cut * big) return start + dir * X;
    X *= 1.5;
  }
  return start + dir * ctx.quad_cutoff;
}

}  // namespace

QuadResult integrate_pieces(const Integrand& f, const std::vector<double>& pts, double rel_tol) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  QuadResult r;
  if (pts.size() < 2) return r;
  r.lo = pts.front();
  r.hi = pts.back();
  const std::size_t n = pts.size() - 1;
  // one cheap pass for the L1 scale, so near-zero panels are not over-refined
  std::vector<cplx> rough(n);
  double l1 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double pl1 = 0;
    rough[i] = GK::integrate(f, pts[i], pts[i + 1], 0, rel_tol, nullptr, &pl1);
    l1 += pl1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double err = 0;
    double mag = std::abs(rough[i]);
    double tol = mag > 0 ? std::clamp(rel_tol * l1 / mag, rel_tol, 0.1) : 0.1;
    r.value += GK::integrate(f, pts[i], pts[i + 1], 15, tol, &err);
    r.error += err;
  }
  return r;
}

QuadResult integrate(const Integrand& f, double a, double b, int panels, double rel_tol) {
  std::vector<double> pts(panels + 1);
  for (int i = 0; i <= panels; ++i) pts[i] = (i == panels) ? b : a + i * (b - a) / panels;
  return integrate_pieces(f, pts, rel_tol);
}

QuadResult integrate_line(const Integrand& f, double center, double width, const EvalContext& ctx) {
  double peak = std::abs(f(center));
  double lo = find_edge(f, center, -1.0, width, peak, ctx);
  double hi = find_edge(f, center, +1.0, width, peak, ctx);
  int panels = std::clamp(int(std::ceil((hi - lo) / width)) * 2, 8, 400);
  return integrate(f, lo, hi, panels, rel_tol_of(ctx));
}

QuadResult integrate_ray(const Integrand& f, double t0, double width, const EvalContext& ctx) {
  double peak = std::abs(f(t0));
  double hi = find_edge(f, t0, +1.0, width, peak, ctx);
  int panels = std::clamp(int(std::ceil((hi - t0) / width)) * 2, 8, 400);
  return integrate(f, t0, hi, panels, rel_tol_of(ctx));
}

}  // namespace singlet::quad
