#include "singlet/characters.hpp"

#include <algorithm>
#include <cmath>

#include "singlet/special.hpp"

namespace singlet::chars {

namespace {

cplx inv_eta(const EvalContext& ctx) { return 1.0 / sf::eta(ctx).require("eta").value; }

cplx F(const ModelParams& P, long b, long c, const EvalContext& ctx, bool deriv = false) {
  return sf::mixed_false_theta(P, b, c, ctx.eps, ctx, deriv).require("mixed false theta").value;
}

// L(r,s) for n even, -L(r,p- - s) for n odd
cplx parity_virasoro(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  if (n % 2 == 0) return char_virasoro(P, {r, s}, ctx);
  return -char_virasoro(P, {r, P.p_minus - s}, ctx);
}

cplx char_plus(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  const long N = P.N();
  cplx v = 0;
  if (s != P.p_minus && n >= 1) v += parity_virasoro(P, r, s, n, ctx);
  return v + F(P, (2 - n) * N - (long)s * P.p_plus, (long)r * P.p_minus, ctx);
}

cplx char_minus(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  const long N = P.N();
  cplx v = 0;
  if (r != P.p_plus && n >= 0) v -= parity_virasoro(P, r, s, n, ctx);
  return v + F(P, -(long)n * N + (long)r * P.p_minus, (long)s * P.p_plus, ctx);
}

cplx char_I_bulk(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  const long N = P.N();
  const int pp = P.p_plus, pm = P.p_minus;
  cplx v = 0;
  if (n >= 0) v += double(n) * parity_virasoro(P, r, s, n, ctx);
  cplx acc = 0;
  for (int nu : {+1, -1}) {
    long b1 = (2 - n) * N - (long)nu * s * pp, c1 = (long)nu * r * pm;
    long b2 = (2 - n) * N - (long)nu * r * pm, c2 = (long)nu * s * pp;
    acc += 2.0 * (F(P, b1, c1, ctx, true) + F(P, b2, c2, ctx, true));
    acc += (n + 2.0 * nu * s / pm) * F(P, b1, c1, ctx) + (n + 2.0 * nu * r / pp) * F(P, b2, c2, ctx);
  }
  return v + acc / 4.0;
}

cplx fock(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  return fock_char(model::fock_shift(P, r, s, n), ctx);
}

// sum_{k>=0} term(k) until the terms have died out
template <class Fn>
cplx tail_sum(Fn term, const EvalContext& ctx, int min_terms = 4) {
  cplx acc = 0;
  int quiet = 0;
  for (long k = 0; k < ctx.max_terms; ++k) {
    cplx t = term(k);
    acc += t;
    if (k >= min_terms && std::abs(t) <= ctx.series_tail_tol * std::max(1.0, std::abs(acc))) {
      if (++quiet >= 3) return acc;
    } else {
      quiet = 0;
    }
  }
  throw ConvergenceError("character sum did not converge within max_terms");
}

}  // namespace

cplx fock_char(cplx shift, const EvalContext& ctx) {
  cplx lg = 2.0 * pi * ctx.eps * shift + pi * I * ctx.tau * shift * shift - sf::log_eta(ctx.tau);
  return std::exp(lg);
}

cplx char_typical(const ModelParams& P, cplx lambda, const EvalContext& ctx) {
  return fock_char(lambda - P.alpha_zero / 2.0, ctx);
}

cplx char_virasoro(const ModelParams& P, KacLabel k, const EvalContext& ctx) {
  model::validate(P, label::Virasoro{k.r, k.s});
  const int N = P.N();
  long b1 = (long)k.r * P.p_minus - (long)k.s * P.p_plus;
  long b2 = (long)k.r * P.p_minus + (long)k.s * P.p_plus;
  cplx t1 = sf::theta({N, b1}, 0.0, ctx).require("theta").value;
  cplx t2 = sf::theta({N, b2}, 0.0, ctx).require("theta").value;
  return (t1 - t2) * inv_eta(ctx);
}

cplx char_atypical(const ModelParams& P, const ModuleLabel& L, const EvalContext& ctx) {
  model::validate(P, L);
  if (auto* x = std::get_if<label::AtypicalIPlus>(&L)) return char_plus(P, x->r, x->s, x->n, ctx);
  if (auto* x = std::get_if<label::AtypicalIMinus>(&L)) return char_minus(P, x->r, x->s, x->n, ctx);
  if (auto* x = std::get_if<label::AtypicalI>(&L)) {
    bool rb = x->r == P.p_plus, sb = x->s == P.p_minus;
    if (rb && sb) return fock(P, x->r, x->s, x->n, ctx);
    if (rb) return char_minus(P, x->r, x->s, x->n, ctx);
    if (sb) return char_plus(P, x->r, x->s, x->n, ctx);
    return char_I_bulk(P, x->r, x->s, x->n, ctx);
  }
  throw ValidationError("char_atypical: expects an I, I+ or I- label");
}

cplx char_kernel(const ModelParams& P, int r, int s, const EvalContext& ctx) {
  model::validate(P, label::Kernel{r, s});
  return char_virasoro(P, {r, s}, ctx) + char_I_bulk(P, r, s, 0, ctx);
}

cplx char_singlet_1p(int p, int r, int s, const EvalContext& ctx) {
  if (s < 1 || s > p) throw ValidationError("M_{r,s} needs 1 <= s <= p");
  return char_atypical(ModelParams(1, p), model::singlet_label(r, s), ctx);
}

cplx character(const ModelParams& P, const ModuleLabel& L, const EvalContext& ctx) {
  model::validate(P, L);
  if (auto* t = std::get_if<label::Typical>(&L)) return char_typical(P, t->lambda, ctx);
  if (auto* v = std::get_if<label::Virasoro>(&L)) return char_virasoro(P, {v->r, v->s}, ctx);
  if (auto* k = std::get_if<label::Kernel>(&L)) return char_kernel(P, k->r, k->s, ctx);
  return char_atypical(P, L, ctx);
}

cplx char_I_fock_sum(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  model::validate(P, label::AtypicalI{r, s, n});
  const int pp = P.p_plus, pm = P.p_minus;
  cplx v = 0;
  if (n >= 0 && r < pp && s < pm) v += double(n) * parity_virasoro(P, r, s, n, ctx);
  return v + tail_sum(
                 [&](long k) {
                   int m = n - 2 * int(k);
                   return double(k + 1) * (fock(P, pp - r, s, m - 1, ctx) + fock(P, r, pm - s, m - 3, ctx) -
                                           fock(P, r, s, m - 2, ctx) - fock(P, pp - r, pm - s, m - 2, ctx));
                 },
                 ctx, std::max(4, n + 4));
}

cplx char_Iplus_fock_sum(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  model::validate(P, label::AtypicalIPlus{r, s, n});
  cplx v = 0;
  if (s != P.p_minus && n >= 1) v += parity_virasoro(P, r, s, n, ctx);
  return v + tail_sum(
                 [&](long k) {
                   int m = n - 2 * int(k);
                   return fock(P, P.p_plus - r, s, m - 1, ctx) - fock(P, r, s, m - 2, ctx);
                 },
                 ctx, std::max(4, n + 4));
}

cplx char_Iminus_fock_sum(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  model::validate(P, label::AtypicalIMinus{r, s, n});
  cplx v = 0;
  if (r != P.p_plus && n >= 0) v -= parity_virasoro(P, r, s, n, ctx);
  return v + tail_sum(
                 [&](long k) {
                   int m = n - 2 * int(k);
                   return fock(P, r, s, m, ctx) - fock(P, r, P.p_minus - s, m - 1, ctx);
                 },
                 ctx, std::max(4, n + 4));
}

cplx char_I_from_plus(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  model::validate(P, label::AtypicalI{r, s, n});
  if (r == P.p_plus || s == P.p_minus) throw ValidationError("char_I_from_plus: bulk labels only");
  return tail_sum(
      [&](long k) {
        int m = n - 2 * int(k);
        return char_plus(P, r, s, m, ctx) - char_plus(P, r, P.p_minus - s, m - 1, ctx);
      },
      ctx, std::max(4, n + 4));
}

cplx char_I_from_minus(const ModelParams& P, int r, int s, int n, const EvalContext& ctx) {
  model::validate(P, label::AtypicalI{r, s, n});
  if (r == P.p_plus || s == P.p_minus) throw ValidationError("char_I_from_minus: bulk labels only");
  return tail_sum(
      [&](long k) {
        int m = n - 2 * int(k);
        return char_minus(P, P.p_plus - r, s, m - 1, ctx) - char_minus(P, r, s, m - 2, ctx);
      },
      ctx, std::max(4, n + 4));
}

}  // namespace singlet::chars
