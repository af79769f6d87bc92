#include "singlet/qdim.hpp"

#include <cmath>
#include <limits>

#include "singlet/modular.hpp"

namespace singlet::qdim {

namespace {

double parity(long k) { return (k % 2 == 0) ? 1.0 : -1.0; }

constexpr double wall_tol = 1e-12;

// discrete-regime value of I_{r,s;n}, 1 <= r <= p+, 1 <= s <= p-
double discrete_I(const ModelParams& P, int r, int s, int n, int m) {
  const int pp = P.p_plus, pm = P.p_minus;
  if (P.one_p()) {
    const int p = pm, rr = n + 1;
    if (m != 0 && m != p) return parity((long)m * (rr - 1)) * std::sin(pi * m * s / p) / std::sin(pi * m / p);
    return parity((long)(m + 1) * (rr - 1) + (m / p) * (s - 1)) * std::sin(pi * s / p) / std::sin(pi / p);
  }
  bool dp = m % pp == 0, dm = m % pm == 0;
  if (!dp && !dm)
    return parity((long)m * n) * std::sin(pi * m * r / pp) * std::sin(pi * m * s / pm) /
           (std::sin(pi * m / pp) * std::sin(pi * m / pm));
  if (dm && !dp) {
    int t = m / pm;
    return s * parity((long)t * (pm * n + 1 + s)) * std::sin(pi * t * pm * r / pp) / std::sin(pi * t * pm / pp);
  }
  if (dp && !dm) {
    int t = m / pp;
    return r * parity((long)t * (pp * n + 1 + r)) * std::sin(pi * t * pp * s / pm) / std::sin(pi * t * pp / pm);
  }
  return parity(n + m) * std::sin(pi * r / pp) * std::sin(pi * s / pm) / (std::sin(pi / pp) * std::sin(pi / pm));
}

cplx continuous_I(const ModelParams& P, int r, int s, int n, cplx eps) {
  cplx xp = std::cosh(pi * P.alpha_plus * eps);
  cplx xm = std::cosh(pi * std::abs(P.alpha_minus) * eps);
  return std::exp(P.alpha * pi * double(n) * eps) * cheb_u(r - 1, xp) * cheb_u(s - 1, xm);
}

cplx continuous_typical(const ModelParams& P, cplx shift, cplx eps) {
  return std::exp(2.0 * pi * shift * eps) * continuous_I(P, P.p_plus, P.p_minus, 0, eps);
}

ModuleLabel vacuum(const ModelParams& P) {
  if (P.one_p()) return label::AtypicalI{1, 1, 0};
  return label::Kernel{1, 1};
}

// polynomial extrapolation to y = 0 through the first `count` points
cplx neville0(const std::vector<double>& y, const std::vector<cplx>& v, std::size_t count) {
  std::vector<cplx> p(v.begin(), v.begin() + count);
  for (std::size_t lvl = 1; lvl < count; ++lvl)
    for (std::size_t i = 0; i + lvl < count; ++i)
      p[i] = (y[i + lvl] * p[i] - y[i] * p[i + 1]) / (y[i + lvl] - y[i]);
  return p[0];
}

}  // namespace

std::string to_string(const Regime& R) {
  switch (R.kind) {
    case Regime::Continuous:
      return "continuous";
    case Regime::OnWall:
      return "wall";
    default:
      return "discrete(" + std::to_string(R.k) + "," + std::to_string(R.m) + ")";
  }
}

int family_q(const ModelParams& P) { return P.one_p() ? P.p_minus : P.N(); }

double wall(const ModelParams& P, cplx eps) {
  const int q = family_q(P);
  const double sq = std::sqrt(2.0 * q);
  const double t = eps.imag() * sq;
  const long base = (long)std::floor(t);
  double best = std::numeric_limits<double>::infinity();
  for (long m = base - 2; m <= base + 3; ++m) {
    if (m % q == 0) continue;
    best = std::min(best, std::abs(double(m) - t));
  }
  return -best / sq;
}

Regime regime(const ModelParams& P, cplx eps) {
  const double B = wall(P, eps);
  Regime R;
  if (std::abs(eps.real() - B) <= wall_tol) {
    R.kind = Regime::OnWall;
  } else if (eps.real() > B) {
    R.kind = Regime::Continuous;
  } else {
    const int q = family_q(P);
    long j = std::lround(std::sqrt(2.0 * q) * eps.imag());
    long k = (long)std::floor(double(j) / (2.0 * q));
    R.kind = Regime::Discrete;
    R.k = k;
    R.m = int(j - 2L * q * k);
  }
  return R;
}

cplx cheb_u(int n, cplx x) {
  if (n < 0) return n == -1 ? cplx(0) : -cheb_u(-n - 2, x);
  cplx u0 = 1.0, u1 = 2.0 * x;
  if (n == 0) return u0;
  for (int k = 1; k < n; ++k) {
    cplx u2 = 2.0 * x * u1 - u0;
    u0 = u1;
    u1 = u2;
  }
  return u1;
}

cplx qdim_closed(const ModelParams& P, const ModuleLabel& L, cplx eps) {
  model::validate(P, L);
  using namespace label;
  if (std::holds_alternative<Virasoro>(L)) return 0.0;
  const Regime R = regime(P, eps);
  if (R.kind == Regime::OnWall) throw ValidationError("qdim_closed: eps lies on the wall");
  const bool cont = R.kind == Regime::Continuous;

  if (auto* t = std::get_if<Typical>(&L)) {
    if (!cont) return 0.0;
    return continuous_typical(P, t->lambda - P.alpha_zero / 2.0, eps);
  }
  if (std::holds_alternative<AtypicalIPlus>(L) || std::holds_alternative<AtypicalIMinus>(L)) {
    if (!cont) return 0.0;
    throw ValidationError("qdim_closed: no closed form for I+/I- labels in the continuous regime");
  }
  int r, s, n;
  if (auto* k = std::get_if<Kernel>(&L)) {
    r = k->r, s = k->s, n = 0;
  } else {
    auto& x = std::get<AtypicalI>(L);
    r = x.r, s = x.s, n = x.n;
  }
  if (cont) return continuous_I(P, r, s, n, eps);
  return discrete_I(P, r, s, n, R.m);
}

std::vector<double> default_y_schedule() { return {0.004, 0.002, 0.001}; }

NumericQdim qdim_numeric(const ModelParams& P, const ModuleLabel& L, cplx eps,
                         const std::vector<double>& ys, const EvalContext& base) {
  if (eps.real() == 0) throw ValidationError("qdim_numeric needs Re(eps) != 0");
  if (ys.empty()) throw ValidationError("qdim_numeric needs a nonempty y schedule");
  for (double y : ys)
    if (!(y > 0)) throw ValidationError("qdim_numeric: y values must be positive");
  model::validate(P, L);
  NumericQdim out;
  const ModuleLabel vac = vacuum(P);
  for (double y : ys) {
    EvalContext ctx = base;
    ctx.tau = cplx(0, 1.0 / y);
    ctx.eps = eps;
    Scaled num = modular::transformed_side(P, L, ctx).total();
    Scaled den = modular::transformed_side(P, vac, ctx).total();
    if (den.is_zero()) throw ConvergenceError("qdim_numeric: vacuum character vanished");
    cplx ratio = (num / den).value();
    if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag()))
      throw ConvergenceError("qdim_numeric: ratio overflow");
    out.y.push_back(y);
    out.ratios.push_back(ratio);
  }
  const std::size_t n = ys.size();
  out.estimate = neville0(out.y, out.ratios, n);
  out.error = n > 1 ? std::abs(out.estimate - neville0(out.y, out.ratios, n - 1)) : 0.0;
  return out;
}

Leak leak_check(const ModelParams& P, const ModuleLabel& L, int m, double delta) {
  const double im = m / std::sqrt(2.0 * family_q(P));
  Leak out;
  out.left = qdim_closed(P, L, cplx(-delta, im));
  // continuous side: linear extrapolation removes the O(delta) drift
  out.right = 2.0 * qdim_closed(P, L, cplx(delta, im)) - qdim_closed(P, L, cplx(2 * delta, im));
  return out;
}

Leak leak_check(const ModelParams& P, int r, int s, int n, int m, double delta) {
  return leak_check(P, label::AtypicalI{r, s, n}, m, delta);
}

std::vector<ScanCell> qdim_scan(const ModelParams& P, const ModuleLabel& L, const ScanGrid& g) {
  if (g.n_re < 1 || g.n_im < 1) throw ValidationError("qdim_scan: resolution must be positive");
  model::validate(P, L);
  std::vector<ScanCell> cells;
  cells.reserve(std::size_t(g.n_re) * g.n_im);
  auto coord = [](double lo, double hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };
  for (int j = 0; j < g.n_im; ++j) {
    for (int i = 0; i < g.n_re; ++i) {
      ScanCell c;
      c.re_eps = coord(g.re_min, g.re_max, g.n_re, i);
      c.im_eps = coord(g.im_min, g.im_max, g.n_im, j);
      cplx e(c.re_eps, c.im_eps);
      c.regime = regime(P, e);
      if (c.regime.kind != Regime::OnWall) {
        try {
          c.value = qdim_closed(P, L, e);
          c.has_value = true;
        } catch (const ValidationError&) {
          c.has_value = false;
        }
      }
      cells.push_back(c);
    }
  }
  return cells;
}

}  // namespace singlet::qdim
