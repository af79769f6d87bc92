#include "singlet/modular.hpp"

#include <cmath>

#include "singlet/characters.hpp"
#include "singlet/quadrature.hpp"

namespace singlet::modular {

ResidualReport ResidualReport::make(cplx lhs, cplx rhs, const EvalContext& ctx) {
  ResidualReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::abs(lhs - rhs);
  r.rel_residual = r.abs_residual / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  r.settings = ctx;
  return r;
}

namespace {

void require_off_axis(cplx eps) {
  if (eps.real() == 0) throw ValidationError("S-kernel needs Re(eps) != 0");
}

double correction_weight(cplx eps) {
  require_off_axis(eps);
  return eps.real() > 0 ? 0.0 : 2.0;
}

Scaled inv_eta(cplx tau) { return Scaled::from_log(-sf::log_eta(tau)); }

Scaled theta_scaled(int a, long b, cplx u, const EvalContext& ctx, sf::Weight w) {
  auto g = sf::gauss_sum(a, b, u, 0.0, ctx.tau, false, w, ctx.series_tail_tol, ctx.max_terms);
  if (!g.converged) throw ConvergenceError("theta series did not converge within max_terms");
  return g.sum;
}

Scaled virasoro_scaled(const ModelParams& P, int r, int s, const EvalContext& ctx) {
  const int N = P.N();
  long b1 = (long)r * P.p_minus - (long)s * P.p_plus;
  long b2 = (long)r * P.p_minus + (long)s * P.p_plus;
  return (theta_scaled(N, b1, 0.0, ctx, sf::Weight::One) - theta_scaled(N, b2, 0.0, ctx, sf::Weight::One)) *
         inv_eta(ctx.tau);
}

// sum_T sign * S_{(r,s),(r',s')} ch L_{r',s'}(tau); sign_n selects (-1)^{n(p+ s' + p- r')}
Scaled virasoro_image(const ModelParams& P, int r, int s, const EvalContext& ctx, int sign_n = 0) {
  Scaled acc;
  for (auto k : model::kac_table(P)) {
    double sg = ((long)sign_n * (P.p_plus * k.s + P.p_minus * k.r)) % 2 == 0 ? 1.0 : -1.0;
    acc += virasoro_scaled(P, k.r, k.s, ctx) * cplx(sg * s_virasoro(P, r, s, k.r, k.s), 0);
  }
  return acc;
}

// parity-dependent Virasoro image: n even -> L(r,s), n odd -> -L(r,p- - s)
Scaled parity_image(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  if (n % 2 == 0) return virasoro_image(P, r, s, ctx);
  return virasoro_image(P, r, P.p_minus - s, ctx) * cplx(-1, 0);
}

// kernels with the common e^{-2 pi eps x} stripped
cplx red_typical(cplx shift, double x, cplx eps) {
  return std::exp(2.0 * pi * eps * shift - 2.0 * pi * I * shift * x);
}

cplx red_false(const ModelParams& P, long b, long c, double x, cplx eps) {
  const double a = P.alpha;
  const cplx w = x + I * eps;
  return std::exp(2.0 * pi * I * double(b - P.N()) * w / a) * std::sin(2.0 * pi * double(c) * w / a) /
         std::sin(pi * a * w);
}

cplx red_atypical(const ModelParams& P, int r, int s, int n, double x, cplx eps) {
  const double a = P.alpha;
  const cplx w = x + I * eps;
  const cplx d = std::sin(pi * a * w);
  return std::exp(-pi * I * double(n) * a * w) * std::sin(2.0 * pi * r * P.p_minus * w / a) *
         std::sin(2.0 * pi * s * P.p_plus * w / a) / (d * d);
}

template <class K>
Scaled line_integral(K kern, const EvalContext& ctx, double& err) {
  const cplx tau = ctx.tau;
  auto f = [&](double x) { return kern(x) * std::exp(pi * I * tau * x * x); };
  auto q = quad::integrate_line(f, 0.0, 1.0 / std::sqrt(tau.imag()), ctx);
  err += q.error;
  return Scaled(q.value) * inv_eta(tau);
}

Scaled x_scaled(const ModelParams& P, long b, long c, const EvalContext& ctx) {
  const int N = P.N();
  const double a = P.alpha;
  const cplx u = I * a * ctx.eps * ctx.tau;
  Scaled acc;
  for (int m = 0; m < 2 * N; ++m) {
    double sn = std::sin(pi * double(c) * m / N);
    if (std::abs(sn) < 1e-15) continue;
    cplx ph = std::exp(-pi * I * double(b) * double(m) / double(N)) * sn;
    acc += theta_scaled(N, m, u, ctx, sf::Weight::One) * ph;
  }
  Scaled pref = Scaled::from_log(-pi * I * ctx.tau * ctx.eps * ctx.eps) * (I / a);
  return acc * pref * inv_eta(ctx.tau);
}

void add_false(const ModelParams& P, long b, long c, const EvalContext& ctx, Transformed& T) {
  const cplx eps = ctx.eps;
  double w = correction_weight(eps);
  T.integral += line_integral([&](double x) { return red_false(P, b, c, x, eps); }, ctx, T.quad_error);
  if (w != 0) T.correction += x_scaled(P, b, c, ctx) * cplx(w, 0);
}

Scaled y_scaled(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  const int N = P.N(), pp = P.p_plus, pm = P.p_minus;
  const double a = P.alpha;
  const cplx tau = ctx.tau, eps = ctx.eps;
  const cplx u = I * a * eps * tau;
  Scaled A, B, C, D;
  for (int m = 0; m < 2 * N; ++m) {
    double sg = ((long)m * n) % 2 == 0 ? 1.0 : -1.0;
    double sr = std::sin(pi * r * m / pp), ss = std::sin(pi * s * m / pm);
    double cr = std::cos(pi * r * m / pp), cs = std::cos(pi * s * m / pm);
    Scaled th = theta_scaled(N, m, u, ctx, sf::Weight::One);
    Scaled thd = theta_scaled(N, m, u, ctx, sf::Weight::X);
    Scaled dth = th * (-2.0 * pi * I * tau * eps) + thd * (-2.0 * pi * a * tau);
    A += dth * cplx(sg * sr * ss, 0);
    B += th * cplx(sg * sr * ss, 0);
    C += th * cplx(sg * cr * ss, 0);
    D += th * cplx(sg * sr * cs, 0);
  }
  Scaled sum = A * cplx(1.0 / (2.0 * pi * N), 0) + B * cplx(-double(n) / a, 0) +
               C * (I * double(r) / (pp * a)) + D * (I * double(s) / (pm * a));
  return sum * Scaled::from_log(-pi * I * tau * eps * eps) * inv_eta(tau);
}

void add_bulk(const ModelParams& P, int r, int s, int n, const EvalContext& ctx, Transformed& T) {
  const cplx eps = ctx.eps;
  double w = correction_weight(eps);
  if (n >= 0) T.discrete += virasoro_image(P, r, s, ctx, n) * cplx(double(n), 0);
  T.integral +=
      line_integral([&](double x) { return red_atypical(P, r, s, n, x, eps); }, ctx, T.quad_error);
  if (w != 0) T.correction += y_scaled(P, r, s, n, ctx) * cplx(w, 0);
}

void add_typical(cplx shift, const EvalContext& ctx, Transformed& T) {
  const cplx eps = ctx.eps;
  T.integral += line_integral([&](double x) { return red_typical(shift, x, eps); }, ctx, T.quad_error);
}

void add_plus(const ModelParams& P, int r, int s, int n, const EvalContext& ctx, Transformed& T) {
  if (s != P.p_minus && n >= 1) T.discrete += parity_image(P, r, s, n, ctx);
  add_false(P, (2 - n) * (long)P.N() - (long)s * P.p_plus, (long)r * P.p_minus, ctx, T);
}

void add_minus(const ModelParams& P, int r, int s, int n, const EvalContext& ctx, Transformed& T) {
  if (r != P.p_plus && n >= 0) T.discrete -= parity_image(P, r, s, n, ctx);
  add_false(P, -(long)n * P.N() + (long)r * P.p_minus, (long)s * P.p_plus, ctx, T);
}

}  // namespace

cplx s_kernel_typical(cplx shift, double x, cplx eps) {
  return std::exp(-2.0 * pi * eps * x) * red_typical(shift, x, eps);
}

cplx s_kernel_false(const ModelParams& P, long b, long c, double x, cplx eps) {
  require_off_axis(eps);
  return std::exp(-2.0 * pi * eps * x) * red_false(P, b, c, x, eps);
}

cplx s_kernel_atypical(const ModelParams& P, int r, int s, int n, double x, cplx eps) {
  require_off_axis(eps);
  return std::exp(-2.0 * pi * eps * x) * red_atypical(P, r, s, n, x, eps);
}

cplx correction_X(const ModelParams& P, long b, long c, const EvalContext& ctx) {
  ctx.validate();
  return x_scaled(P, b, c, ctx).value();
}

cplx correction_Y(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  ctx.validate();
  if (P.one_p()) throw ValidationError("correction_Y needs p+ >= 2");
  return y_scaled(P, r, s, n, ctx).value();
}

cplx correction_Y_limit(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  return (virasoro_image(P, r, s, ctx, n) * cplx(-0.5 * n, 0)).value();
}

double s_virasoro(const ModelParams& P, int r, int s, int r2, int s2) {
  const int pp = P.p_plus, pm = P.p_minus;
  double sg = ((r + s) * (r2 + s2)) % 2 == 0 ? 1.0 : -1.0;
  return sg * std::sqrt(8.0 / (pp * pm)) * std::sin(pi * r * r2 * double(pm - pp) / pp) *
         std::sin(pi * s * s2 * double(pm - pp) / pm);
}

Matrix smatrix_virasoro(const ModelParams& P) {
  auto T = model::kac_table(P);
  Matrix S(T.size(), std::vector<double>(T.size()));
  for (std::size_t i = 0; i < T.size(); ++i)
    for (std::size_t j = 0; j < T.size(); ++j) S[i][j] = s_virasoro(P, T[i].r, T[i].s, T[j].r, T[j].s);
  return S;
}

Matrix smatrix_wzw(int k) {
  if (k < 0) throw ValidationError("smatrix_wzw: level must be >= 0");
  Matrix S(k + 1, std::vector<double>(k + 1));
  for (int a = 0; a <= k; ++a)
    for (int b = 0; b <= k; ++b) S[a][b] = std::sqrt(2.0 / (k + 2)) * std::sin(pi * (a + 1) * (b + 1) / (k + 2));
  return S;
}

Transformed transformed_side(const ModelParams& P, const ModuleLabel& L, const EvalContext& ctx) {
  ctx.validate();
  model::validate(P, L);
  Transformed T;
  using namespace label;
  if (auto* t = std::get_if<Typical>(&L)) {
    add_typical(t->lambda - P.alpha_zero / 2.0, ctx, T);
  } else if (auto* v = std::get_if<Virasoro>(&L)) {
    T.discrete += virasoro_image(P, v->r, v->s, ctx);
  } else if (auto* k = std::get_if<Kernel>(&L)) {
    T.discrete += virasoro_image(P, k->r, k->s, ctx);
    add_bulk(P, k->r, k->s, 0, ctx, T);
  } else if (auto* x = std::get_if<AtypicalIPlus>(&L)) {
    add_plus(P, x->r, x->s, x->n, ctx, T);
  } else if (auto* x = std::get_if<AtypicalIMinus>(&L)) {
    add_minus(P, x->r, x->s, x->n, ctx, T);
  } else if (auto* x = std::get_if<AtypicalI>(&L)) {
    bool rb = x->r == P.p_plus, sb = x->s == P.p_minus;
    if (rb && sb)
      add_typical(model::fock_shift(P, x->r, x->s, x->n), ctx, T);
    else if (rb)
      add_minus(P, x->r, x->s, x->n, ctx, T);
    else if (sb)
      add_plus(P, x->r, x->s, x->n, ctx, T);
    else
      add_bulk(P, x->r, x->s, x->n, ctx, T);
  }
  return T;
}

Transformed transformed_false_theta(const ModelParams& P, long b, long c, const EvalContext& ctx) {
  ctx.validate();
  if (c == 0) throw ValidationError("c must be nonzero");
  Transformed T;
  add_false(P, b, c, ctx, T);
  return T;
}

namespace {
EvalContext s_image(const EvalContext& ctx) {
  EvalContext c = ctx;
  c.tau = -1.0 / ctx.tau;
  return c;
}
}  // namespace

ResidualReport verify_theta_modular(sf::ThetaIndex idx, cplx u, const EvalContext& ctx) {
  ctx.validate();
  if (idx.a < 1) throw ValidationError("verify_theta_modular: a must be positive");
  const cplx tau = ctx.tau;
  EvalContext c = ctx;
  c.tau = -1.0 / tau;
  cplx lhs = sf::theta(idx, u / tau, c).require("theta").value;
  cplx sum = 0;
  for (long b = 0; b < 2L * idx.a; ++b)
    sum += std::exp(-2.0 * pi * I * double(idx.b * b) / double(2 * idx.a)) * sf::theta({idx.a, b}, u, ctx).require("theta").value;
  cplx rhs = std::sqrt(-I * tau / double(2 * idx.a)) * std::exp(pi * I * u * u / (2.0 * idx.a * tau)) * sum;
  return ResidualReport::make(lhs, rhs, ctx);
}

ResidualReport verify_s_transform(const ModelParams& P, const ModuleLabel& L, const EvalContext& ctx) {
  cplx rhs = transformed_side(P, L, ctx).total().value();
  cplx lhs = chars::character(P, L, s_image(ctx));
  return ResidualReport::make(lhs, rhs, ctx);
}

ResidualReport verify_false_theta(const ModelParams& P, long b, long c, const EvalContext& ctx) {
  cplx rhs = transformed_false_theta(P, b, c, ctx).total().value();
  cplx lhs = sf::mixed_false_theta(P, b, c, ctx.eps, s_image(ctx)).require("false theta").value;
  return ResidualReport::make(lhs, rhs, ctx);
}

}  // namespace singlet::modular
