#include "singlet/special.hpp"

#include <cmath>
#include <limits>

namespace singlet {

const SeriesValue& SeriesValue::require(const char* what) const {
  if (!converged) throw ConvergenceError(std::string(what) + ": series did not converge within max_terms");
  return *this;
}

Scaled Scaled::from_log(cplx logv) { return {std::exp(cplx(0, logv.imag())), logv.real()}; }

cplx Scaled::value() const {
  if (m == cplx(0, 0)) return 0;
  return m * std::exp(lg);
}

double Scaled::log_abs() const {
  double a = std::abs(m);
  if (a == 0) return -std::numeric_limits<double>::infinity();
  return std::log(a) + lg;
}

Scaled& Scaled::operator+=(const Scaled& o) {
  if (o.m == cplx(0, 0)) return *this;
  if (m == cplx(0, 0)) return *this = o;
  if (lg >= o.lg) {
    m += o.m * std::exp(o.lg - lg);
  } else {
    m = m * std::exp(lg - o.lg) + o.m;
    lg = o.lg;
  }
  return *this;
}

Scaled Scaled::operator*(const Scaled& o) const {
  Scaled r{m * o.m, lg + o.lg};
  return r;
}

Scaled Scaled::operator/(const Scaled& o) const {
  if (o.m == cplx(0, 0)) throw ConvergenceError("division by zero in scaled arithmetic");
  return {m / o.m, lg - o.lg};
}

namespace sf {

namespace {

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

struct Term {
  cplx logv;   // log of exp-part
  double mag;  // log |term| including weight
  double w;    // weight value
};

}  // namespace

long& term_counter() {
  thread_local long count = 0;
  return count;
}

GaussSum gauss_sum(int a, long b, cplx u, cplx eps, cplx tau, bool half, Weight wt,
                   double tol, long max_terms) {
  if (a < 1) throw ValidationError("theta index a must be >= 1");
  if (!(tau.imag() > 0)) throw ValidationError("Im(tau) must be positive");
  const double x0 = double(b) / (2.0 * a);
  const cplx c2 = 2.0 * pi * I * double(a) * tau;
  const cplx c1 = 2.0 * pi * I * u + 2.0 * pi * eps;
  const double beta = c1.real();
  const double xstar = beta / (4.0 * pi * a * tau.imag());

  auto term = [&](long k) {
    double x = double(k) + x0;
    cplx L = c2 * x * x + c1 * x;
    double w = wt == Weight::X ? x : 1.0;
    double mag = w == 0 ? neg_inf : L.real() + std::log(std::abs(w));
    return Term{L, mag, w};
  };

  double kc = std::round(xstar - x0);
  if (half && kc < 0) kc = 0;
  const long k0 = long(kc);

  GaussSum g;
  const double lg0 = term(k0).logv.real();
  cplx acc = 0;
  double peak = neg_inf;
  double tails[2] = {neg_inf, neg_inf};
  const double ltol = std::log(tol) - std::log(2.0);

  for (int dir : {+1, -1}) {
    long k = dir > 0 ? k0 : k0 - 1;
    if (half && k < 0) continue;
    while (true) {
      if (g.terms >= max_terms) {
        g.converged = false;
        break;
      }
      Term t = term(k);
      if (t.w != 0) acc += t.w * std::exp(t.logv - lg0);
      ++g.terms;
      peak = std::max(peak, t.mag);
      long kn = k + dir;
      if (half && kn < 0) break;
      Term n1 = term(kn), n2 = term(kn + dir);
      double lrho = n2.mag - n1.mag;
      if (n1.mag == neg_inf) lrho = neg_inf;
      bool away = (double(kn) + x0 - xstar) * dir > 0;
      if (away && lrho < 0) {
        double bound = n1.mag - std::log1p(-std::exp(lrho));
        if (bound < ltol + peak) {
          tails[dir > 0 ? 0 : 1] = bound;
          break;
        }
      }
      k = kn;
    }
    if (!g.converged) break;
  }
  g.sum = Scaled(acc, lg0);
  g.rel_tail = peak == neg_inf ? 0.0 : std::exp(tails[0] - peak) + std::exp(tails[1] - peak);
  g.log_peak = peak;
  term_counter() += g.terms;
  return g;
}

namespace {

SeriesValue to_series(const GaussSum& g) {
  SeriesValue s;
  s.value = g.sum.value();
  s.terms_used = g.terms;
  s.converged = g.converged;
  // plain values: tail measured against max(1, peak)
  double peak = g.log_peak == neg_inf ? 0.0 : std::exp(g.log_peak);
  s.tail_bound = g.rel_tail * peak / std::max(1.0, peak);
  return s;
}

}  // namespace

SeriesValue eta(const EvalContext& ctx) {
  const cplx tau = ctx.tau;
  if (!(tau.imag() > 0)) throw ValidationError("Im(tau) must be positive");
  const cplx q = std::exp(2.0 * pi * I * tau);
  const double aq = std::abs(q);
  cplx prod = 1.0, qn = q;
  SeriesValue s;
  long n = 1;
  for (;; ++n) {
    if (n > ctx.max_terms) {
      s.converged = false;
      break;
    }
    if (std::abs(qn) < ctx.series_tail_tol * (1.0 - aq)) break;
    prod *= (1.0 - qn);
    qn *= q;
  }
  s.terms_used = n - 1;
  term_counter() += s.terms_used;
  s.tail_bound = std::abs(qn) / (1.0 - aq);
  s.value = std::exp(2.0 * pi * I * tau / 24.0) * prod;
  return s;
}

cplx log_eta(cplx tau) {
  if (!(tau.imag() > 0)) throw ValidationError("Im(tau) must be positive");
  cplx acc = 0;
  for (int it = 0; it < 100 && tau.imag() < 0.5; ++it) {
    double k = std::round(tau.real());
    tau -= k;
    acc += I * pi * k / 12.0;
    if (std::abs(tau) < 1.0) {
      acc -= 0.5 * std::log(-I * tau);
      tau = -1.0 / tau;
    } else {
      break;
    }
  }
  const cplx q = std::exp(2.0 * pi * I * tau);
  cplx sum = 2.0 * pi * I * tau / 24.0;
  cplx qn = q;
  for (int n = 1; n < 100000 && std::abs(qn) > 1e-18; ++n) {
    sum += std::log(1.0 - qn);
    qn *= q;
  }
  return acc + sum;
}

SeriesValue theta(ThetaIndex idx, cplx u, const EvalContext& ctx) {
  return to_series(gauss_sum(idx.a, idx.b, u, 0.0, ctx.tau, false, Weight::One,
                             ctx.series_tail_tol, ctx.max_terms));
}

SeriesValue theta_deriv(ThetaIndex idx, const EvalContext& ctx, cplx u) {
  return to_series(gauss_sum(idx.a, idx.b, u, 0.0, ctx.tau, false, Weight::X,
                             ctx.series_tail_tol, ctx.max_terms));
}

SeriesValue partial_theta(ThetaIndex idx, cplx u, cplx eps, const EvalContext& ctx) {
  return to_series(gauss_sum(idx.a, idx.b, u, eps, ctx.tau, true, Weight::One,
                             ctx.series_tail_tol, ctx.max_terms));
}

SeriesValue partial_theta_deriv(ThetaIndex idx, cplx eps, const EvalContext& ctx, cplx u) {
  return to_series(gauss_sum(idx.a, idx.b, u, eps, ctx.tau, true, Weight::X,
                             ctx.series_tail_tol, ctx.max_terms));
}

SeriesValue mixed_false_theta(const ModelParams& P, long b, long c, cplx eps, const EvalContext& ctx,
                              bool deriv) {
  if (c == 0) throw ValidationError("mixed_false_theta: c must be nonzero");
  const int N = P.N();
  const cplx e = -P.alpha * eps;
  SeriesValue p1 = deriv ? partial_theta_deriv({N, b - c}, e, ctx) : partial_theta({N, b - c}, 0.0, e, ctx);
  SeriesValue p2 = deriv ? partial_theta_deriv({N, b + c}, e, ctx) : partial_theta({N, b + c}, 0.0, e, ctx);
  SeriesValue et = eta(ctx);
  SeriesValue out;
  out.value = (p1.value - p2.value) / et.value;
  out.terms_used = p1.terms_used + p2.terms_used + et.terms_used;
  out.tail_bound = std::max({p1.tail_bound, p2.tail_bound, et.tail_bound});
  out.converged = p1.converged && p2.converged && et.converged;
  return out;
}

}  // namespace sf
}  // namespace singlet
