#include "singlet/fusion.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace singlet::fusion {

namespace {

long long add_checked(long long a, long long b) {
  long long out;
  if (__builtin_add_overflow(a, b, &out)) throw ValidationError("fusion: integer overflow");
  return out;
}

long long mul_checked(long long a, long long b) {
  long long out;
  if (__builtin_mul_overflow(a, b, &out)) throw ValidationError("fusion: integer overflow");
  return out;
}

Poly trim(Poly p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  if (p.empty()) p.push_back(0);
  return p;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] = add_checked(out[i], -b[i]);
  return trim(out);
}

Poly neg(Poly p) {
  for (auto& c : p) c = -c;
  return p;
}

// P_{n+1} = k x P_n - P_{n-1}, with P_0 = 1, P_1 = k x
Poly u_recursion(int n, long long k) {
  if (n == -1) return {0};
  if (n < -1) return neg(u_recursion(-n - 2, k));
  Poly a{1}, b{0, k};
  if (n == 0) return a;
  for (int i = 1; i < n; ++i) {
    Poly c(b.size() + 1, 0);
    for (std::size_t j = 0; j < b.size(); ++j) c[j + 1] = mul_checked(k, b[j]);
    for (std::size_t j = 0; j < a.size(); ++j) c[j] = add_checked(c[j], -a[j]);
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

void add_term(LaurentNF& nf, int a, int b, int n, long long c) {
  if (c == 0) return;
  auto key = std::make_tuple(a, b, n);
  long long v = add_checked(nf.terms[key], c);
  if (v == 0)
    nf.terms.erase(key);
  else
    nf.terms[key] = v;
}

// X^p -> Z + Z^-1 - (2T_p(X/2) - X^p), same for Y
void reduce(const ModelParams& P, LaurentNF& nf) {
  const Poly tx = cheb_t2_half(P.p_plus), ty = cheb_t2_half(P.p_minus);
  for (;;) {
    auto it = std::find_if(nf.terms.rbegin(), nf.terms.rend(),
                           [&](auto& kv) { return std::get<0>(kv.first) >= P.p_plus; });
    if (it == nf.terms.rend()) break;
    auto [a, b, n] = it->first;
    long long c = it->second;
    nf.terms.erase(std::next(it).base());
    int rest = a - P.p_plus;
    add_term(nf, rest, b, n + 1, c);
    add_term(nf, rest, b, n - 1, c);
    for (int d = 0; d < P.p_plus; ++d)
      if (d < (int)tx.size()) add_term(nf, rest + d, b, n, mul_checked(-c, tx[d]));
  }
  for (;;) {
    auto it = std::find_if(nf.terms.begin(), nf.terms.end(),
                           [&](auto& kv) { return std::get<1>(kv.first) >= P.p_minus; });
    if (it == nf.terms.end()) break;
    auto [a, b, n] = it->first;
    long long c = it->second;
    nf.terms.erase(it);
    int rest = b - P.p_minus;
    add_term(nf, a, rest, n + 1, c);
    add_term(nf, a, rest, n - 1, c);
    for (int d = 0; d < P.p_minus; ++d)
      if (d < (int)ty.size()) add_term(nf, a, rest + d, n, mul_checked(-c, ty[d]));
  }
}

void check_atypical(const ModelParams& P, int r, int s) {
  if (r < 1 || r > P.p_plus || s < 1 || s > P.p_minus)
    throw ValidationError("fusion: atypical label (" + std::to_string(r) + "," + std::to_string(s) +
                          ") outside 1<=r<=p+, 1<=s<=p-");
}

constexpr double merge_tol = 1e-12;

}  // namespace

Poly chebyshev(ChebKind kind, int n) {
  if (kind == ChebKind::Second) return u_recursion(n, 2);
  Poly t = sub(u_recursion(n, 2), u_recursion(n - 2, 2));
  for (auto& c : t) c /= 2;
  return t;
}

double chebyshev(ChebKind kind, int n, double x) {
  auto u = [x](int k) {
    if (k == -1) return 0.0;
    bool flip = k < -1;
    if (flip) k = -k - 2;
    double a = 1, b = 2 * x;
    if (k == 0) return flip ? -a : a;
    for (int i = 1; i < k; ++i) {
      double c = 2 * x * b - a;
      a = b;
      b = c;
    }
    return flip ? -b : b;
  };
  if (kind == ChebKind::Second) return u(n);
  return 0.5 * (u(n) - u(n - 2));
}

Poly cheb_u_half(int n) { return u_recursion(n, 1); }
Poly cheb_t2_half(int n) { return sub(u_recursion(n, 1), u_recursion(n - 2, 1)); }

FusionElement FusionElement::of(const ModuleLabel& L) {
  if (auto* t = std::get_if<label::Typical>(&L)) return typ(t->lambda);
  if (auto* x = std::get_if<label::AtypicalI>(&L)) return atyp(x->r, x->s, x->n);
  throw ValidationError("fusion: only F and I labels belong to the fusion ring");
}

FusionElement FusionElement::atyp(int r, int s, int n, long long c) {
  FusionElement e;
  e.add_atypical(r, s, n, c);
  return e;
}

FusionElement FusionElement::typ(cplx lambda, long long c) {
  FusionElement e;
  e.add_typical(lambda, c);
  return e;
}

void FusionElement::add_atypical(int r, int s, int n, long long c) {
  if (c == 0) return;
  auto key = std::make_tuple(r, s, n);
  long long v = add_checked(atypical[key], c);
  if (v == 0)
    atypical.erase(key);
  else
    atypical[key] = v;
}

void FusionElement::add_typical(cplx lambda, long long c) {
  if (c == 0) return;
  for (auto it = typical.begin(); it != typical.end(); ++it) {
    if (std::abs(it->first - lambda) < merge_tol) {
      it->second = add_checked(it->second, c);
      if (it->second == 0) typical.erase(it);
      return;
    }
  }
  typical.emplace_back(lambda, c);
}

FusionElement& FusionElement::operator+=(const FusionElement& o) {
  for (auto& [k, c] : o.atypical) add_atypical(std::get<0>(k), std::get<1>(k), std::get<2>(k), c);
  for (auto& [l, c] : o.typical) add_typical(l, c);
  return *this;
}

FusionElement FusionElement::operator*(long long c) const {
  FusionElement out;
  if (c == 0) return out;
  for (auto& [k, v] : atypical) out.atypical[k] = mul_checked(v, c);
  for (auto& [l, v] : typical) out.typical.emplace_back(l, mul_checked(v, c));
  return out;
}

bool FusionElement::operator==(const FusionElement& o) const {
  FusionElement d = *this;
  d += o * -1;
  return d.empty();
}

std::string FusionElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto put = [&](long long c, const std::string& name) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    long long a = c < 0 ? -c : c;
    if (a != 1) os << a << "*";
    os << name;
    first = false;
  };
  for (auto& [k, c] : atypical)
    put(c, model::to_string(label::AtypicalI{std::get<0>(k), std::get<1>(k), std::get<2>(k)}));
  for (auto& [l, c] : typical) put(c, model::to_string(label::Typical{l}));
  if (first) os << "0";
  return os.str();
}

FusionElement operator+(FusionElement a, const FusionElement& b) {
  a += b;
  return a;
}

LaurentNF to_laurent(const ModelParams& P, const FusionElement& e) {
  if (!e.typical.empty()) throw ValidationError("to_laurent: typical classes are not in the atypical ring");
  LaurentNF nf;
  for (auto& [k, c] : e.atypical) {
    auto [r, s, n] = k;
    check_atypical(P, r, s);
    Poly ux = cheb_u_half(r - 1), uy = cheb_u_half(s - 1);
    for (std::size_t a = 0; a < ux.size(); ++a)
      for (std::size_t b = 0; b < uy.size(); ++b)
        add_term(nf, (int)a, (int)b, n, mul_checked(c, mul_checked(ux[a], uy[b])));
  }
  reduce(P, nf);
  return nf;
}

FusionElement from_laurent(const ModelParams& P, const LaurentNF& nf_in) {
  LaurentNF nf = nf_in;
  reduce(P, nf);
  FusionElement out;
  while (!nf.terms.empty()) {
    // lexicographically largest (a, b) is the leading monomial of U_a(X/2)U_b(Y/2)
    auto best = nf.terms.begin();
    for (auto it = nf.terms.begin(); it != nf.terms.end(); ++it) {
      auto [a, b, n] = it->first;
      auto [ba, bb, bn] = best->first;
      if (std::tie(a, b) > std::tie(ba, bb)) best = it;
    }
    auto [a, b, n] = best->first;
    long long c = best->second;
    out.add_atypical(a + 1, b + 1, n, c);
    LaurentNF back = to_laurent(P, FusionElement::atyp(a + 1, b + 1, n, c));
    for (auto& [k, v] : back.terms) add_term(nf, std::get<0>(k), std::get<1>(k), std::get<2>(k), -v);
  }
  return out;
}

LaurentNF multiply(const ModelParams& P, const LaurentNF& x, const LaurentNF& y) {
  LaurentNF out;
  for (auto& [k1, c1] : x.terms)
    for (auto& [k2, c2] : y.terms)
      add_term(out, std::get<0>(k1) + std::get<0>(k2), std::get<1>(k1) + std::get<1>(k2),
               std::get<2>(k1) + std::get<2>(k2), mul_checked(c1, c2));
  reduce(P, out);
  return out;
}

FusionElement fuse(const ModelParams& P, const FusionElement& a, const FusionElement& b) {
  FusionElement out;
  FusionElement aa, ba;
  aa.atypical = a.atypical;
  ba.atypical = b.atypical;
  if (!aa.empty() && !ba.empty()) out += from_laurent(P, multiply(P, to_laurent(P, aa), to_laurent(P, ba)));

  auto atyp_typ = [&](const FusionElement& at, const FusionElement& ty) {
    for (auto& [k, c] : at.atypical) {
      auto [r, s, n] = k;
      check_atypical(P, r, s);
      for (auto& [mu, d] : ty.typical)
        for (int jp = 0; jp < r; ++jp)
          for (int jm = 0; jm < s; ++jm)
            out.add_typical(mu + model::fock_weight(P, r - 2 * jp, s - 2 * jm, n), mul_checked(c, d));
    }
  };
  atyp_typ(a, b);
  atyp_typ(b, a);

  for (auto& [l, c] : a.typical)
    for (auto& [m, d] : b.typical)
      for (int jp = 0; jp < P.p_plus; ++jp)
        for (int jm = 0; jm < P.p_minus; ++jm)
          out.add_typical(l + m + double(jp) * P.alpha_plus + double(jm) * P.alpha_minus, mul_checked(c, d));
  return out;
}

cplx qdim(const ModelParams& P, const FusionElement& e, cplx eps) {
  cplx total = 0;
  for (auto& [k, c] : e.atypical)
    total += double(c) * qdim::qdim_closed(P, label::AtypicalI{std::get<0>(k), std::get<1>(k), std::get<2>(k)}, eps);
  for (auto& [l, c] : e.typical) total += double(c) * qdim::qdim_closed(P, label::Typical{l}, eps);
  return total;
}

Verlinde verlinde_coeffs(const modular::Matrix& S, std::size_t vacuum) {
  const std::size_t n = S.size();
  if (n == 0) throw ValidationError("verlinde_coeffs: empty matrix");
  for (auto& row : S)
    if (row.size() != n) throw ValidationError("verlinde_coeffs: matrix must be square");
  if (vacuum >= n) throw ValidationError("verlinde_coeffs: vacuum index out of range");
  Eigen::MatrixXd M(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) M(i, j) = S[i][j];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
  if (!lu.isInvertible()) throw ValidationError("verlinde_coeffs: matrix is singular");
  Eigen::MatrixXd Minv = lu.inverse();
  for (std::size_t l = 0; l < n; ++l)
    if (std::abs(M(vacuum, l)) < 1e-14) throw ValidationError("verlinde_coeffs: vanishing vacuum row entry");

  Verlinde out;
  out.N.assign(n, std::vector<std::vector<long long>>(n, std::vector<long long>(n, 0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        double v = 0;
        for (std::size_t l = 0; l < n; ++l) v += M(i, l) * M(j, l) * Minv(l, k) / M(vacuum, l);
        double r = std::round(v);
        out.max_deviation = std::max(out.max_deviation, std::abs(v - r));
        out.N[i][j][k] = (long long)r;
      }
  out.integral = out.max_deviation < 1e-9;
  return out;
}

std::size_t minimal_vacuum_index(const ModelParams& P) {
  auto T = model::kac_table(P);
  KacLabel v = model::kac_representative(P, 1, 1);
  for (std::size_t i = 0; i < T.size(); ++i)
    if (T[i].r == v.r && T[i].s == v.s) return i;
  throw ValidationError("minimal_vacuum_index: vacuum not in Kac table");
}

modular::ResidualReport qdim_hom_check(const ModelParams& P, cplx eps, const FusionElement& a,
                                       const FusionElement& b) {
  EvalContext ctx;
  ctx.eps = eps;
  cplx lhs = qdim(P, fuse(P, a, b), eps);
  cplx rhs = qdim(P, a, eps) * qdim(P, b, eps);
  return modular::ResidualReport::make(lhs, rhs, ctx);
}

ImageReport image_ring_check(const ModelParams& P, int m) {
  const int q = qdim::family_q(P);
  if (m < 0 || m >= 2 * q) throw ValidationError("image_ring_check: strip index must lie in [0, 2q)");
  const cplx eps(-5.0, m / std::sqrt(2.0 * q));
  const auto R = qdim::regime(P, eps);
  if (R.kind != qdim::Regime::Discrete || R.m != m) throw ValidationError("image_ring_check: strip sample failed");

  ImageReport rep;
  std::vector<ModuleLabel> gens;
  modular::Matrix S;
  std::size_t vac = 0;
  const int pp = P.p_plus, pm = P.p_minus;
  const bool dp = m % pp == 0, dm = m % pm == 0;

  if (P.one_p()) {
    rep.target = "su2(" + std::to_string(pm - 2) + ")";
    for (int s = 1; s < pm; ++s) gens.push_back(label::AtypicalI{1, s, 0});
    S = modular::smatrix_wzw(pm - 2);
  } else if ((!dp && !dm) || m % q == 0) {
    rep.target = "minimal(" + std::to_string(pp) + "," + std::to_string(pm) + ")";
    for (auto& k : model::kac_table(P)) gens.push_back(label::AtypicalI{k.r, k.s, 0});
    S = modular::smatrix_virasoro(P);
    vac = minimal_vacuum_index(P);
  } else if (dm) {
    rep.target = "su2(" + std::to_string(pp - 2) + ")";
    for (int r = 1; r < pp; ++r) gens.push_back(label::AtypicalI{r, 1, 0});
    S = modular::smatrix_wzw(pp - 2);
  } else {
    rep.target = "su2(" + std::to_string(pm - 2) + ")";
    for (int s = 1; s < pm; ++s) gens.push_back(label::AtypicalI{1, s, 0});
    S = modular::smatrix_wzw(pm - 2);
  }

  for (auto& g : gens) {
    rep.labels.push_back(model::to_string(g));
    rep.qdims.push_back(qdim::qdim_closed(P, g, eps).real());
  }
  const Verlinde V = verlinde_coeffs(S, vac);
  const auto& d = rep.qdims;
  const std::size_t n = d.size();
  double hom = std::abs(d[vac] - 1.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      double sum = 0;
      for (std::size_t c = 0; c < n; ++c) sum += double(V.N[a][b][c]) * d[c];
      hom = std::max(hom, std::abs(d[a] * d[b] - sum));
    }
  rep.hom_residual = hom;

  double ker = 0;
  for (cplx lam : {cplx(0.3, 0), cplx(-0.7, 0.2)})
    ker = std::max(ker, std::abs(qdim::qdim_closed(P, label::Typical{lam}, eps)));
  for (int r = 1; r <= pp; ++r)
    for (int s = 1; s <= pm; ++s) {
      if (r < pp) ker = std::max(ker, std::abs(qdim::qdim_closed(P, label::AtypicalIPlus{r, s, 1}, eps)));
      if (s < pm) ker = std::max(ker, std::abs(qdim::qdim_closed(P, label::AtypicalIMinus{r, s, 0}, eps)));
    }
  if (rep.target.rfind("minimal", 0) == 0)
    for (int r = 1; r < pp; ++r)
      for (int s = 1; s < pm; ++s) {
        cplx a = qdim::qdim_closed(P, label::AtypicalI{r, s, 0}, eps);
        cplx b = qdim::qdim_closed(P, label::AtypicalI{pp - r, pm - s, 0}, eps);
        ker = std::max(ker, std::abs(a - b));
      }
  rep.kernel_residual = ker;
  rep.ok = V.integral && hom < 1e-9 && ker < 1e-9;
  return rep;
}

std::vector<Relation> generator_relations(const ModelParams& P, int n_range) {
  std::vector<Relation> out;
  const int pp = P.p_plus, pm = P.p_minus;
  using FE = FusionElement;
  auto name = [](const std::string& g, int r, int s, int n) {
    return g + " x I:" + std::to_string(r) + "," + std::to_string(s) + "," + std::to_string(n);
  };
  for (int n = -n_range; n <= n_range; ++n)
    for (int r = 1; r <= pp; ++r)
      for (int s = 1; s <= pm; ++s) {
        const FE I = FE::atyp(r, s, n);
        for (int m = -n_range; m <= n_range; ++m)
          out.push_back({name("I:1,1," + std::to_string(m), r, s, n), FE::atyp(1, 1, m), I, FE::atyp(r, s, m + n)});
        if (pp >= 2) {
          FE e;
          if (r == 1)
            e = FE::atyp(2, s, n);
          else if (r < pp)
            e = FE::atyp(r - 1, s, n) + FE::atyp(r + 1, s, n);
          else
            e = FE::atyp(1, s, n - 1) + FE::atyp(pp - 1, s, n, 2) + FE::atyp(1, s, n + 1);
          out.push_back({name("I:2,1,0", r, s, n), FE::atyp(2, 1, 0), I, e});
        }
        if (pm >= 2) {
          FE e;
          if (s == 1)
            e = FE::atyp(r, 2, n);
          else if (s < pm)
            e = FE::atyp(r, s - 1, n) + FE::atyp(r, s + 1, n);
          else
            e = FE::atyp(r, 1, n - 1) + FE::atyp(r, pm - 1, n, 2) + FE::atyp(r, 1, n + 1);
          out.push_back({name("I:1,2,0", r, s, n), FE::atyp(1, 2, 0), I, e});
        }
        const cplx mu(0.21, 0);
        FE t;
        for (int jp = 0; jp < r; ++jp)
          for (int jm = 0; jm < s; ++jm) t.add_typical(mu + model::fock_weight(P, r - 2 * jp, s - 2 * jm, n), 1);
        out.push_back({name("F:0.21", r, s, n), FE::typ(mu), I, t});
      }
  const cplx lam(0.3, 0), mu(-0.45, 0.1);
  FE t;
  for (int jp = 0; jp < pp; ++jp)
    for (int jm = 0; jm < pm; ++jm) t.add_typical(lam + mu + double(jp) * P.alpha_plus + double(jm) * P.alpha_minus, 1);
  out.push_back({"F:0.3 x F:-0.45,0.1", FE::typ(lam), FE::typ(mu), t});
  return out;
}

}  // namespace singlet::fusion
