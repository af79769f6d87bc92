#include "singlet/qmf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "singlet/characters.hpp"
#include "singlet/quadrature.hpp"
#include "singlet/special.hpp"

namespace singlet::qmf {

namespace {

const cplx sqrt2i = std::sqrt(cplx(0, 2));

enum class Mode { Full, Signed, Half };

// sum over x = n + c of w(x) exp(2 pi i a x^2 z); Signed weights n < 0 by -1, Half keeps n >= 0
cplx lattice_sum(double a, double c, cplx z, bool weight_x, Mode mode, const EvalContext& ctx) {
  if (!(z.imag() > 0)) throw ValidationError("q-series need Im(tau) > 0");
  const double beta = 2 * pi * a * z.imag();
  const cplx ph = 2.0 * pi * I * a * z.real();
  auto term = [&](long n) {
    double x = n + c;
    cplx t = std::exp(ph * (x * x) - beta * x * x);
    if (weight_x) t *= x;
    if (mode == Mode::Signed && n < 0) t = -t;
    return t;
  };
  // |x| e^{-beta x^2} decreases once x^2 > 1/(2 beta)
  const double xmono = weight_x ? std::sqrt(1.0 / (2 * beta)) : 0.0;
  long n0 = std::lround(-c);
  if (mode == Mode::Half) n0 = std::max(n0, 0L);
  cplx sum = 0;
  double peak = 0;
  long used = 0;
  auto walk = [&](long start, long dir) {
    for (long n = start;; n += dir) {
      if (mode == Mode::Half && n < 0) return;
      cplx t = term(n);
      sum += t;
      ++used;
      peak = std::max(peak, std::abs(t));
      double x = std::abs(n + c);
      if (x > xmono && std::abs(t) < ctx.series_tail_tol * std::max(peak, 1e-300) * 1e-2) return;
      if (used > ctx.max_terms) throw ConvergenceError("q-series did not converge within max_terms");
    }
  };
  walk(n0, 1);
  walk(n0 - 1, -1);
  return sum;
}

double frac_dist(double v) { return std::abs(v - std::round(v)); }

// decay rate in Im z of the lattice sum, skipping a vanishing x = 0 term when weighted
double decay_rate(double a, double c, bool weight_x) {
  double d = frac_dist(c);
  if (d < 1e-12) {
    if (!weight_x) return 0.0;
    d = 1.0;
  }
  return 2 * pi * a * d * d;
}

double quad_rel(const EvalContext& ctx) { return std::clamp(ctx.quad_abs_tol, 1e-13, 1e-6); }

// int_0^inf g(t) dt for g decaying like exp(-rho t), sharply peaked near 0 when h is small
cplx ray_integral(const std::function<cplx(double)>& g, double h, double rho, const EvalContext& ctx) {
  if (!(rho > 0)) throw ConvergenceError("integrand does not decay along the ray");
  const double scale = 1.0 / rho;
  const double tmax = std::min(std::log(1.0 / (ctx.quad_abs_tol * 1e-3)) * scale, 1e6);
  std::vector<double> pts{0.0};
  for (double t = std::max(h, 1e-6); t < std::min(scale, tmax); t *= 2) pts.push_back(t);
  for (double t = std::max(pts.back(), 0.0) + scale; t < tmax; t += scale) pts.push_back(t);
  pts.push_back(tmax);
  pts.erase(std::unique(pts.begin(), pts.end(), [](double a, double b) { return b <= a; }), pts.end());
  auto r = quad::integrate_pieces(g, pts, quad_rel(ctx));
  if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag()))
    throw ConvergenceError("quadrature produced a non-finite value");
  return r.value;
}

void require_lower(cplx w) {
  if (!(w.imag() < 0)) throw ValidationError("w must lie in the lower half-plane");
}

void require_branch(cplx d) {
  if (d.real() <= 0 && std::abs(d.imag()) < 1e-300) throw ValidationError("contour touches the branch cut");
}

// sqrt(2i) int_{conj w}^{i inf} f(z) (z - w)^{-k} dz along z = conj w + i t
cplx eichler(const std::function<cplx(cplx)>& f, double rho, double k, cplx w, const EvalContext& ctx) {
  require_lower(w);
  const cplx wb = std::conj(w);
  auto g = [&](double t) {
    cplx z = wb + I * t;
    cplx d = z - w;
    require_branch(d);
    return f(z) * std::pow(d, -k) * I;
  };
  return sqrt2i * ray_integral(g, -w.imag(), rho, ctx);
}

// -sqrt(2i) int_0^{i inf} f(u) (u - w)^{-k} du, split at u = i; f_low(s) = f(i/s)
cplx g_integral(const std::function<cplx(cplx)>& f, const std::function<cplx(double)>& f_low, double rho_up,
                double rho_low, double k, cplx w, const EvalContext& ctx) {
  require_lower(w);
  auto up = [&](double t) {
    cplx u = I * (1.0 + t);
    cplx d = u - w;
    require_branch(d);
    return f(u) * std::pow(d, -k) * I;
  };
  auto low = [&](double t) {
    double s = 1.0 + t;
    cplx d = I / s - w;
    require_branch(d);
    return f_low(s) * std::pow(d, -k) * I / (s * s);
  };
  return -sqrt2i * (ray_integral(up, 1.0, rho_up, ctx) + ray_integral(low, 1.0, rho_low, ctx));
}

VectorResidual finish(std::vector<cplx> lhs, std::vector<cplx> rhs, const EvalContext& ctx) {
  VectorResidual out;
  double d = 0, a = 0, b = 0;
  for (std::size_t i = 0; i < lhs.size(); ++i) {
    d += std::norm(lhs[i] - rhs[i]);
    a += std::norm(lhs[i]);
    b += std::norm(rhs[i]);
  }
  out.lhs = std::move(lhs);
  out.rhs = std::move(rhs);
  out.abs_residual = std::sqrt(d);
  out.rel_residual = out.abs_residual / std::max({std::sqrt(a), std::sqrt(b), 1e-300});
  out.settings = ctx;
  return out;
}

std::vector<cplx> mat_vec(const modular::Matrix& S, const std::vector<cplx>& v) {
  std::vector<cplx> out(S.size(), 0.0);
  for (std::size_t i = 0; i < S.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += S[i][j] * v[j];
  return out;
}

void require_p(int p) {
  if (p < 2) throw ValidationError("qmf: p must be >= 2");
}

double f_rate(int j, int p) { return decay_rate(p, double(j) / (2 * p), true); }

// eta ch L as theta difference
struct VirTheta {
  int N;
  long b1, b2;
};

VirTheta vir_theta(const ModelParams& P, int r, int s) {
  return {P.N(), (long)r * P.p_minus - (long)s * P.p_plus, (long)r * P.p_minus + (long)s * P.p_plus};
}

double vir_rate(const VirTheta& v) {
  return std::min(decay_rate(v.N, v.b1 / (2.0 * v.N), false), decay_rate(v.N, v.b2 / (2.0 * v.N), false));
}

}  // namespace

cplx false_theta_F(int j, int p, cplx tau, const EvalContext& ctx) {
  require_p(p);
  return lattice_sum(p, double(j) / (2 * p), tau, false, Mode::Signed, ctx);
}

cplx weight32_f(int j, int p, cplx z, const EvalContext& ctx) {
  require_p(p);
  return lattice_sum(p, double(j) / (2 * p), z, true, Mode::Full, ctx);
}

cplx eichler_half(int j, int p, cplx w, const EvalContext& ctx) {
  require_p(p);
  return eichler([&](cplx z) { return weight32_f(j, p, z, ctx); }, f_rate(j, p), 0.5, w, ctx);
}

modular::Matrix smatrix_p(int p) {
  require_p(p);
  modular::Matrix S(p - 1, std::vector<double>(p - 1));
  for (int c = 1; c < p; ++c)
    for (int j = 1; j < p; ++j) S[c - 1][j - 1] = std::sqrt(2.0 / p) * std::sin(pi * c * j / p);
  return S;
}

VectorResidual cocycle_check_halfint(int p, cplx w, const EvalContext& ctx) {
  require_p(p);
  require_lower(w);
  const auto S = smatrix_p(p);
  const cplx wm = -1.0 / w;
  std::vector<cplx> Fw, Fm, g;
  double rho_low = 1e300;
  for (int c = 1; c < 2 * p; ++c) rho_low = std::min(rho_low, f_rate(c, p));
  for (int j = 1; j < p; ++j) {
    Fw.push_back(eichler_half(j, p, w, ctx));
    Fm.push_back(eichler_half(j, p, wm, ctx));
    auto f = [&](cplx z) { return weight32_f(j, p, z, ctx); };
    // f_j(i/s) = (is) sqrt(s/2p) sum_c e^{-pi i j c/p} f_c(is)
    auto f_low = [&](double s) {
      cplx acc = 0;
      for (int c = 1; c < 2 * p; ++c) acc += std::exp(-pi * I * double(j * c) / double(p)) * weight32_f(c, p, I * s, ctx);
      return I * s * std::sqrt(s / (2.0 * p)) * acc;
    };
    g.push_back(g_integral(f, f_low, f_rate(j, p), rho_low, 0.5, w, ctx));
  }
  const cplx pref = std::sqrt(1.0 / (w * I));
  std::vector<cplx> lhs, rhs;
  for (auto& v : Fm) lhs.push_back(pref * v);
  auto SF = mat_vec(S, Fw), Sg = mat_vec(S, g);
  for (std::size_t i = 0; i < SF.size(); ++i) rhs.push_back(-SF[i] - Sg[i]);
  return finish(lhs, rhs, ctx);
}

namespace {

cplx chi_tilde_raw(const ModelParams& P, int r, int s, cplx tau, ChiForm form, const EvalContext& ctx) {
  const long N = P.N(), pp = P.p_plus, pm = P.p_minus;
  auto half = [&](long num, bool weighted) {
    return lattice_sum(double(N), double(num) / (2.0 * N), tau, weighted, Mode::Half, ctx);
  };
  if (form == ChiForm::Difference) {
    EvalContext c = ctx;
    c.tau = tau;
    c.eps = 0;
    cplx eta_ch = sf::eta(c).value * chars::character(P, label::AtypicalI{r, s, 0}, c);
    return eta_ch - (half(2 * N + pp * s + pm * r, false) - half(2 * N - pp * s + pm * r, false));
  }
  // sum_{k>=0} (k+1) q^{N(k+A)^2} = sum x q^{N x^2} + (1 - A) sum q^{N x^2}, x = k + A
  auto weighted = [&](long num) {
    double A = double(num) / (2.0 * N);
    return half(num, true) + (1.0 - A) * half(num, false);
  };
  return weighted(2 * N - pp * s - pm * r) + weighted(2 * N + pp * s + pm * r) - weighted(2 * N - pp * s + pm * r) -
         weighted(2 * N + pp * s - pm * r);
}

}  // namespace

cplx chi_tilde(const ModelParams& P, int r, int s, cplx tau, ChiForm form, const EvalContext& ctx) {
  if (!model::in_kac_table(P, r, s)) throw ValidationError("chi_tilde: (r,s) must lie in the Kac table");
  if (!(tau.imag() > 0)) throw ValidationError("chi_tilde needs Im(tau) > 0");
  return chi_tilde_raw(P, r, s, tau, form, ctx);
}

int chi_tilde_span_dimension(const ModelParams& P, const EvalContext& ctx) {
  const auto T = model::kac_table(P);
  const int n = (int)T.size(), rows = 2 * n + 3;
  // small Im tau so that all columns have comparable size
  Eigen::MatrixXcd M(rows, n);
  for (int i = 0; i < rows; ++i) {
    cplx tau(-0.5 + double(i) / rows, 0.06 + 0.02 * i);
    for (int j = 0; j < n; ++j) M(i, j) = chi_tilde_raw(P, T[j].r, T[j].s, tau, ChiForm::Weighted, ctx);
  }
  for (int j = 0; j < n; ++j) M.col(j) /= M.col(j).norm();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-9 * sv(0)) ++rank;
  return rank;
}

cplx eta_char_virasoro(const ModelParams& P, int r, int s, cplx tau, const EvalContext& ctx) {
  const VirTheta v = vir_theta(P, r, s);
  return lattice_sum(v.N, v.b1 / (2.0 * v.N), tau, false, Mode::Full, ctx) -
         lattice_sum(v.N, v.b2 / (2.0 * v.N), tau, false, Mode::Full, ctx);
}

cplx eichler_32(const ModelParams& P, int r, int s, cplx w, const EvalContext& ctx) {
  const VirTheta v = vir_theta(P, r, s);
  return eichler([&](cplx z) { return eta_char_virasoro(P, r, s, z, ctx); }, vir_rate(v), 1.5, w, ctx);
}

VectorResidual cocycle_check_weight32(const ModelParams& P, cplx w, const EvalContext& ctx) {
  if (P.one_p()) throw ValidationError("cocycle_check_weight32 needs p+, p- >= 2");
  require_lower(w);
  const auto T = model::kac_table(P);
  const auto SM = modular::smatrix_virasoro(P);
  const std::size_t n = T.size();
  double rho_low = 1e300;
  for (auto& k : T) rho_low = std::min(rho_low, vir_rate(vir_theta(P, k.r, k.s)));
  std::vector<cplx> Gw, Gm, g;
  for (std::size_t a = 0; a < n; ++a) {
    Gw.push_back(eichler_32(P, T[a].r, T[a].s, w, ctx));
    Gm.push_back(eichler_32(P, T[a].r, T[a].s, -1.0 / w, ctx));
    auto f = [&](cplx z) { return eta_char_virasoro(P, T[a].r, T[a].s, z, ctx); };
    // eta ch L(i/s) = sqrt(s) sum_b SM_{ab} eta ch L_b(is)
    auto f_low = [&](double s) {
      cplx acc = 0;
      for (std::size_t b = 0; b < n; ++b) acc += SM[a][b] * eta_char_virasoro(P, T[b].r, T[b].s, I * s, ctx);
      return std::sqrt(s) * acc;
    };
    g.push_back(g_integral(f, f_low, vir_rate(vir_theta(P, T[a].r, T[a].s)), rho_low, 1.5, w, ctx));
  }
  const cplx pref = std::pow(1.0 / (w * I), 1.5);
  std::vector<cplx> lhs, rhs;
  for (auto& v : Gm) lhs.push_back(pref * v);
  auto SG = mat_vec(SM, Gw), Sg = mat_vec(SM, g);
  for (std::size_t i = 0; i < n; ++i) rhs.push_back(-SG[i] - Sg[i]);
  return finish(lhs, rhs, ctx);
}

std::vector<double> default_delta_schedule() { return {0.1, 0.05, 0.025}; }

RadialLimit radial_limit_check(int j, int p, rational x, const std::vector<double>& schedule, const EvalContext& ctx) {
  require_p(p);
  if (schedule.size() < 2) throw ValidationError("radial_limit_check needs at least two deltas");
  const double k = double(x.denominator());
  const double xr = boost::rational_cast<double>(x);
  RadialLimit out;
  for (double d : schedule) {
    if (!(d > 0)) throw ValidationError("radial_limit_check: deltas must be positive");
    double dd = d / (k * k);
    out.deltas.push_back(dd);
    out.upper_values.push_back(false_theta_F(j, p, cplx(xr, dd), ctx));
    out.lower_values.push_back(-I * std::sqrt(double(p)) * eichler_half(j, p, cplx(xr, -dd), ctx));
  }
  auto neville = [&](std::vector<cplx> v) {
    const auto& y = out.deltas;
    for (std::size_t lvl = 1; lvl < v.size(); ++lvl)
      for (std::size_t i = 0; i + lvl < v.size(); ++i)
        v[i] = (y[i + lvl] * v[i] - y[i] * v[i + 1]) / (y[i + lvl] - y[i]);
    return v[0];
  };
  out.upper = neville(out.upper_values);
  out.lower = neville(out.lower_values);
  out.difference = std::abs(out.upper - out.lower);
  if (!std::isfinite(out.difference)) throw ConvergenceError("radial_limit_check diverged");
  return out;
}

}  // namespace singlet::qmf
