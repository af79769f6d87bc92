#include "singlet/variety.hpp"

#include <cmath>
#include <sstream>

#include "singlet/fusion.hpp"
#include "singlet/qdim.hpp"

namespace singlet::variety {

namespace {

cplx poly_eval(const fusion::Poly& p, cplx x) {
  cplx v = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * x + double(*it);
  return v;
}

fusion::Poly derivative(const fusion::Poly& p) {
  fusion::Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * (long long)i);
  if (d.empty()) d.push_back(0);
  return d;
}

// g(u, z) = 2z T_p(u/2) - z^2 - 1 and its partials
struct Local {
  cplx g, gu, gz, guu, guz;
};

Local local(int p, cplx u, cplx z) {
  const fusion::Poly t2 = fusion::cheb_t2_half(p);  // 2T_p(u/2)
  const fusion::Poly d1 = derivative(t2), d2 = derivative(d1);
  Local L;
  cplx v = poly_eval(t2, u);
  L.g = z * v - z * z - 1.0;
  L.gu = z * poly_eval(d1, u);
  L.gz = v - 2.0 * z;
  L.guu = z * poly_eval(d2, u);
  L.guz = poly_eval(d1, u);
  return L;
}

void require_z(const CurvePoint& pt) {
  if (std::abs(pt.z) == 0) throw ValidationError("curve_eval: z = 0 is not on the variety");
}

constexpr double on_curve_tol = 1e-10;
constexpr double jacobian_tol = 1e-10;

}  // namespace

ModelParams one_p(int p) { return ModelParams(1, p); }

std::vector<cplx> curve_eval(const ModelParams& P, const CurvePoint& pt) {
  require_z(pt);
  if (P.one_p()) return {local(P.p_minus, pt.x, pt.z).g};
  return {local(P.p_plus, pt.x, pt.z).g, local(P.p_minus, pt.y, pt.z).g};
}

std::vector<SingularPoint> singular_points(const ModelParams& P) {
  std::vector<SingularPoint> out;
  if (P.one_p()) {
    const int p = P.p_minus;
    for (int k = 1; k < p; ++k)
      for (int z : {1, -1}) {
        SingularPoint sp;
        sp.k = k;
        sp.point.x = 2 * std::cos(k * pi / p);
        sp.point.z = z;
        Local L = local(p, sp.point.x, sp.point.z);
        sp.curve_residual = std::abs(L.g);
        sp.jacobian_norm = std::hypot(std::abs(L.gu), std::abs(L.gz));
        if (sp.curve_residual >= on_curve_tol || sp.jacobian_norm >= jacobian_tol) continue;
        sp.hessian_det = (L.guu * -2.0 - L.guz * L.guz).real();
        std::ostringstream os;
        os << "x=2cos(" << k << "pi/" << p << "), z=" << z;
        sp.description = os.str();
        out.push_back(sp);
      }
    return out;
  }
  const int pp = P.p_plus, pm = P.p_minus;
  for (int k = 1; k < pp; ++k)
    for (int l = 1; l < pm; ++l)
      for (int z : {1, -1}) {
        SingularPoint sp;
        sp.k = k;
        sp.l = l;
        sp.point = {2 * std::cos(k * pi / pp), 2 * std::cos(l * pi / pm), double(z)};
        Local A = local(pp, sp.point.x, sp.point.z), B = local(pm, sp.point.y, sp.point.z);
        sp.curve_residual = std::max(std::abs(A.g), std::abs(B.g));
        // rows (A.gu, 0, A.gz) and (0, B.gu, B.gz)
        cplx c0 = -A.gz * B.gu, c1 = -A.gu * B.gz, c2 = A.gu * B.gu;
        sp.jacobian_norm = std::sqrt(std::norm(c0) + std::norm(c1) + std::norm(c2));
        if (sp.curve_residual >= on_curve_tol || sp.jacobian_norm >= jacobian_tol) continue;
        std::ostringstream os;
        os << "x=2cos(" << k << "pi/" << pp << "), y=2cos(" << l << "pi/" << pm << "), z=" << z;
        sp.description = os.str();
        out.push_back(sp);
      }
  return out;
}

CurvePoint parametrize(const ModelParams& P, cplx t) {
  if (std::abs(t) == 0) throw ValidationError("parametrize: t must be nonzero");
  CurvePoint pt;
  const double pp = P.p_plus, pm = P.p_minus;
  if (P.one_p()) {
    pt.x = t + 1.0 / t;
    pt.z = std::pow(t, -pm);
    return pt;
  }
  pt.x = std::pow(t, pm) + std::pow(t, -pm);
  pt.y = std::pow(t, pp) + std::pow(t, -pp);
  pt.z = std::pow(t, -pp * pm);
  return pt;
}

cplx uniformising_t(const ModelParams& P, cplx eps) { return std::exp(-2.0 * pi * eps / P.alpha); }

modular::ResidualReport uniformisation_check(const ModelParams& P, cplx eps) {
  if (qdim::regime(P, eps).kind != qdim::Regime::Continuous)
    throw ValidationError("uniformisation_check: eps must lie in the continuous regime");
  const CurvePoint pt = parametrize(P, uniformising_t(P, eps));
  std::vector<std::pair<cplx, cplx>> pairs;
  auto qd = [&](int r, int s, int n) { return qdim::qdim_closed(P, label::AtypicalI{r, s, n}, eps); };
  if (P.one_p()) {
    pairs = {{qd(1, 2, 0), pt.x}, {qd(1, 1, 1), pt.z}};
  } else {
    pairs = {{qd(2, 1, 0), pt.x}, {qd(1, 2, 0), pt.y}, {qd(1, 1, 1), pt.z}};
  }
  EvalContext ctx;
  ctx.eps = eps;
  modular::ResidualReport worst = modular::ResidualReport::make(pairs[0].first, pairs[0].second, ctx);
  for (auto& [a, b] : pairs) {
    auto r = modular::ResidualReport::make(a, b, ctx);
    if (r.abs_residual > worst.abs_residual) worst = r;
  }
  return worst;
}

}  // namespace singlet::variety
