#include "singlet/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <future>
#include <iomanip>
#include <random>
#include <sstream>

#include "singlet/characters.hpp"
#include "singlet/fusion.hpp"
#include "singlet/modular.hpp"
#include "singlet/qdim.hpp"
#include "singlet/qmf.hpp"
#include "singlet/variety.hpp"

namespace singlet::acceptance {

namespace {

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) {
  return std::chrono::duration<double>(clock_type::now() - t0).count();
}

std::string sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(2) << v;
  return os.str();
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

CriterionResult make(int id, std::string name, bool pass, std::string detail) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.pass = pass;
  r.detail = std::move(detail);
  return r;
}

std::vector<cplx> random_continuous_eps(const ModelParams& P, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> re(0.02, 0.4), im(-1.0, 1.0);
  std::vector<cplx> out;
  while (int(out.size()) < count) {
    cplx e(re(rng), im(rng));
    if (qdim::regime(P, e).kind == qdim::Regime::Continuous) out.push_back(e);
  }
  return out;
}

CriterionResult c1() {
  auto t0 = clock_type::now();
  double worst = 0;
  for (auto [a, b] : {std::pair{1, 0L}, {2, 1L}, {6, 5L}})
    for (double u : {0.0, 0.1})
      for (cplx tau : {cplx(0, 1), cplx(0.3, 0.8)}) {
        EvalContext ctx;
        ctx.tau = tau;
        worst = std::max(worst, modular::verify_theta_modular({a, b}, u, ctx).abs_residual);
      }
  double t = seconds_since(t0);
  return make(1, "theta modularity", worst < 1e-10 && t < 1.0,
              "max residual " + sci(worst) + ", " + sci(t) + " s");
}

CriterionResult c2() {
  const ModelParams P(2, 3);
  double worst = 0;
  int checks = 0;
  for (double e : {0.0, 0.1}) {
    EvalContext ctx;
    ctx.tau = cplx(0, 1.3);
    ctx.eps = e;
    for (int r = 1; r <= P.p_plus; ++r)
      for (int s = 1; s <= P.p_minus; ++s)
        for (int n = -2; n <= 2; ++n) {
          cplx ref = chars::char_I_fock_sum(P, r, s, n, ctx);
          std::vector<cplx> alt{chars::character(P, label::AtypicalI{r, s, n}, ctx)};
          if (r < P.p_plus && s < P.p_minus) {
            alt.push_back(chars::char_I_from_plus(P, r, s, n, ctx));
            alt.push_back(chars::char_I_from_minus(P, r, s, n, ctx));
          }
          for (cplx a : alt) {
            worst = std::max(worst, rel(a, ref));
            ++checks;
          }
          if (r < P.p_plus) {
            worst = std::max(worst, rel(chars::character(P, label::AtypicalIPlus{r, s, n}, ctx),
                                        chars::char_Iplus_fock_sum(P, r, s, n, ctx)));
            ++checks;
          }
          if (s < P.p_minus) {
            worst = std::max(worst, rel(chars::character(P, label::AtypicalIMinus{r, s, n}, ctx),
                                        chars::char_Iminus_fock_sum(P, r, s, n, ctx)));
            ++checks;
          }
        }
  }
  return make(2, "character consistency", worst < 1e-9,
              std::to_string(checks) + " comparisons, max deviation " + sci(worst));
}

CriterionResult c3() {
  const ModelParams P(2, 3);
  EvalContext ctx;
  ctx.tau = cplx(0, 2);
  ctx.eps = 0.25;
  auto R = modular::verify_s_transform(P, label::Typical{P.alpha_zero / 2 + 0.37}, ctx);
  return make(3, "typical S-transform", R.rel_residual < 1e-6, "relative residual " + sci(R.rel_residual));
}

CriterionResult c4() {
  auto t0 = clock_type::now();
  const ModelParams P(2, 3);
  double worst = 0;
  for (ModuleLabel L : {ModuleLabel{label::AtypicalI{1, 1, 0}}, ModuleLabel{label::AtypicalI{1, 2, 1}}})
    for (double e : {0.3, -0.3}) {
      EvalContext ctx;
      ctx.tau = cplx(0, 1.7);
      ctx.eps = e;
      worst = std::max(worst, modular::verify_s_transform(P, L, ctx).rel_residual);
    }
  double t = seconds_since(t0);
  return make(4, "atypical S-transform", worst < 1e-5 && t < 60.0,
              "max relative residual " + sci(worst) + ", " + sci(t) + " s");
}

CriterionResult c5() {
  const ModelParams P(2, 3);
  auto dist = [&](double e) {
    EvalContext ctx;
    ctx.tau = cplx(0, 1);
    ctx.eps = e;
    return std::abs(modular::correction_Y(P, 1, 2, 1, ctx) - modular::correction_Y_limit(P, 1, 2, 1, ctx));
  };
  double d2 = dist(1e-2), d3 = dist(1e-3);
  double ratio = d2 / d3;
  return make(5, "Y correction limit", ratio > 8.0 && ratio < 12.0,
              "distances " + sci(d2) + ", " + sci(d3) + ", ratio " + sci(ratio));
}

CriterionResult c6() {
  const ModelParams P(2, 3);
  const cplx eps = 1e-6;
  double worst_n0 = 0, worst_n = 0, worst_k = 0;
  for (int r = 1; r <= P.p_plus; ++r)
    for (int s = 1; s <= P.p_minus; ++s)
      for (int n = -2; n <= 2; ++n) {
        double err = std::abs(qdim::qdim_closed(P, label::AtypicalI{r, s, n}, eps) - double(r * s));
        (n == 0 ? worst_n0 : worst_n) = std::max(n == 0 ? worst_n0 : worst_n, err);
      }
  bool l_zero = true;
  for (auto k : model::kac_table(P)) {
    worst_k = std::max(worst_k, std::abs(qdim::qdim_closed(P, label::Kernel{k.r, k.s}, eps) - double(k.r * k.s)));
    l_zero = l_zero && qdim::qdim_closed(P, label::Virasoro{k.r, k.s}, eps) == cplx(0, 0);
  }
  double f_err = std::abs(qdim::qdim_closed(P, label::Typical{P.alpha_zero / 2 + 0.37}, eps) - 6.0);
  bool pass = worst_n0 < 1e-5 && worst_n < 1e-5 && worst_k < 1e-5 && f_err < 1e-5 && l_zero;
  return make(6, "quantum-dimension limits", pass,
              "I n=0 " + sci(worst_n0) + ", I n!=0 " + sci(worst_n) + ", K " + sci(worst_k) + ", F " +
                  sci(f_err) + ", L zero " + (l_zero ? "yes" : "no"));
}

CriterionResult c7() {
  const ModelParams P(2, 3);
  const double a0 = P.alpha_zero;
  const std::vector<ModuleLabel> labels = {
      label::AtypicalI{1, 1, 0},  label::AtypicalI{1, 2, 0}, label::AtypicalI{2, 1, 0},
      label::AtypicalI{2, 2, 0},  label::AtypicalI{1, 1, 1}, label::AtypicalI{1, 2, -1},
      label::AtypicalI{2, 3, 1},  label::Kernel{1, 2},       label::Typical{0.3},
      label::Typical{a0 / 2 + 0.37}};
  const std::vector<cplx> eps = {{0.2, 0}, {0.1, 0.2}, {0.3, -0.4}, {0.15, 0.05}, {0.25, 0.3}};
  const std::vector<double> ys = {0.2, 0.1, 0.05};
  double worst = 0;
  int good = 0;
  for (auto& L : labels)
    for (cplx e : eps) {
      cplx closed = qdim::qdim_closed(P, L, e);
      double d = rel(qdim::qdim_numeric(P, L, e, ys).estimate, closed);
      worst = std::max(worst, d);
      good += d < 1e-3;
    }
  return make(7, "numeric vs closed qdim", worst < 1e-3,
              std::to_string(good) + "/" + std::to_string(labels.size() * eps.size()) +
                  " within 1e-3, max relative deviation " + sci(worst));
}

CriterionResult c8() {
  double worst = 0;
  int checks = 0;
  auto run = [&](const ModelParams& P, int m) {
    for (int r = 1; r <= std::max(1, P.p_plus - 1); ++r)
      for (int s = 1; s < P.p_minus; ++s)
        for (int n = -2; n <= 2; ++n) {
          auto L = qdim::leak_check(P, r, s, n, m);
          worst = std::max(worst, std::abs(L.left - L.right));
          ++checks;
        }
  };
  for (int m : {1, 2}) run(ModelParams(1, 3), m);
  for (int m : {1, 5}) run(ModelParams(2, 3), m);
  return make(8, "leak points", worst < 1e-6, std::to_string(checks) + " labels, max gap " + sci(worst));
}

CriterionResult c9() {
  std::size_t relations = 0, exact = 0;
  double worst = 0;
  for (auto [pp, pm] : {std::pair{2, 3}, {2, 5}}) {
    const ModelParams P(pp, pm);
    auto rels = fusion::generator_relations(P, 2);
    auto eps = random_continuous_eps(P, 10, 7919u * pm);
    for (auto& R : rels) {
      ++relations;
      exact += fusion::fuse(P, R.a, R.b) == R.expected;
      for (cplx e : eps) {
        cplx lhs = fusion::qdim(P, R.a, e) * fusion::qdim(P, R.b, e);
        cplx rhs = fusion::qdim(P, R.expected, e);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
      }
    }
  }
  return make(9, "generator relations", exact == relations && worst < 1e-9,
              std::to_string(exact) + "/" + std::to_string(relations) + " exact, qdim relative deviation " +
                  sci(worst));
}

long long su2_rule(int k, int a, int b, int c) {
  if ((a + b + c) % 2) return 0;
  return std::abs(a - b) <= c && c <= std::min(a + b, 2 * k - a - b) ? 1 : 0;
}

CriterionResult c10() {
  double dev = 0;
  bool ok = true;
  const ModelParams LY(2, 5);
  auto V = fusion::verlinde_coeffs(modular::smatrix_virasoro(LY), fusion::minimal_vacuum_index(LY));
  dev = std::max(dev, V.max_deviation);
  const std::size_t v = fusion::minimal_vacuum_index(LY), f = 1 - v;
  bool ly = V.N[f][f][v] == 1 && V.N[f][f][f] == 1;
  int mismatches = 0;
  for (int k = 1; k <= 6; ++k) {
    auto W = fusion::verlinde_coeffs(modular::smatrix_wzw(k), 0);
    dev = std::max(dev, W.max_deviation);
    for (int a = 0; a <= k; ++a)
      for (int b = 0; b <= k; ++b)
        for (int c = 0; c <= k; ++c) mismatches += W.N[a][b][c] != su2_rule(k, a, b, c);
  }
  ok = ly && mismatches == 0 && dev < 1e-9;
  return make(10, "Verlinde oracle", ok,
              std::string("Lee-Yang ") + (ly ? "ok" : "wrong") + ", su2 mismatches " + std::to_string(mismatches) +
                  ", max deviation " + sci(dev));
}

CriterionResult c11() {
  int strips = 0, good = 0;
  double worst = 0;
  for (int p : {3, 4, 5}) {
    const ModelParams P(1, p);
    for (int m = 1; m < 2 * p; ++m) {
      if (m == p) continue;
      auto R = fusion::image_ring_check(P, m);
      ++strips;
      good += R.ok && R.target == "su2(" + std::to_string(p - 2) + ")";
      worst = std::max({worst, R.hom_residual, R.kernel_residual});
    }
  }
  auto LY = fusion::image_ring_check(ModelParams(2, 5), 1);
  bool ly = LY.ok && LY.target == "minimal(2,5)";
  worst = std::max({worst, LY.hom_residual, LY.kernel_residual});
  return make(11, "image rings", good == strips && ly,
              std::to_string(good) + "/" + std::to_string(strips) + " (1,p) strips, Lee-Yang " +
                  (ly ? "ok" : "wrong") + ", max residual " + sci(worst));
}

// residual of the defining polynomial relative to the magnitude of its terms
double scaled_curve_residual(const ModelParams& P, const variety::CurvePoint& pt) {
  auto res = variety::curve_eval(P, pt);
  auto scale = [&](int p, cplx u) {
    double s = 0;
    auto c = fusion::cheb_t2_half(p);
    for (std::size_t k = 0; k < c.size(); ++k) s += std::abs(double(c[k])) * std::pow(std::abs(u), double(k));
    return std::abs(pt.z) * s + std::norm(pt.z) + 1.0;
  };
  if (P.one_p()) return std::abs(res[0]) / scale(P.p_minus, pt.x);
  return std::max(std::abs(res[0]) / scale(P.p_plus, pt.x), std::abs(res[1]) / scale(P.p_minus, pt.y));
}

CriterionResult c12() {
  std::vector<ModelParams> models;
  for (int p = 2; p <= 6; ++p) models.push_back(ModelParams(1, p));
  for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {3, 4}}) models.push_back(ModelParams(a, b));
  bool counts = true;
  double param = 0;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> lr(-0.5, 0.5), ar(0, 2 * pi);
  for (auto& P : models) {
    std::size_t want = P.one_p() ? std::size_t(P.p_minus - 1) : std::size_t((P.p_plus - 1) * (P.p_minus - 1) / 2);
    counts = counts && variety::singular_points(P).size() == want;
    for (int i = 0; i < 20; ++i) {
      cplx t = std::polar(std::exp(lr(rng)), ar(rng));
      param = std::max(param, scaled_curve_residual(P, variety::parametrize(P, t)));
    }
  }
  const ModelParams P(2, 3);
  double uni = 0;
  for (cplx e : random_continuous_eps(P, 5, 31337u))
    uni = std::max(uni, variety::uniformisation_check(P, e).rel_residual);
  return make(12, "fusion variety", counts && param < 1e-12 && uni < 1e-9,
              std::string("counts ") + (counts ? "ok" : "wrong") + ", parametrisation " + sci(param) +
                  ", uniformisation " + sci(uni));
}

CriterionResult c13() {
  auto t0 = clock_type::now();
  double worst = 0, sdiff = 0;
  for (int p : {2, 3, 4}) {
    for (cplx w : {cplx(-0.2, -0.6), cplx(-0.5, -0.5)})
      worst = std::max(worst, qmf::cocycle_check_halfint(p, w).abs_residual);
    auto A = qmf::smatrix_p(p);
    auto B = modular::smatrix_wzw(p - 2);
    for (std::size_t i = 0; i < A.size(); ++i)
      for (std::size_t j = 0; j < A.size(); ++j) sdiff = std::max(sdiff, std::abs(A[i][j] - B[i][j]));
  }
  double t = seconds_since(t0);
  return make(13, "half-integral cocycle", worst < 1e-4 && sdiff < 1e-14 && t < 120.0,
              "max residual " + sci(worst) + ", S difference " + sci(sdiff) + ", " + sci(t) + " s");
}

CriterionResult c14() {
  double a = qmf::cocycle_check_weight32(ModelParams(2, 3), cplx(-0.3, -0.7)).abs_residual;
  double b = qmf::cocycle_check_weight32(ModelParams(2, 5), cplx(-0.2, -0.5)).abs_residual;
  return make(14, "weight 3/2 cocycle", a < 1e-3 && b < 1e-3, "residuals " + sci(a) + ", " + sci(b));
}

CriterionResult guarded(int id, const std::function<CriterionResult()>& f) {
  auto t0 = clock_type::now();
  CriterionResult r;
  try {
    r = f();
  } catch (const std::exception& e) {
    r = make(id, "criterion " + std::to_string(id), false, std::string("error: ") + e.what());
  }
  r.seconds = seconds_since(t0);
  return r;
}

CriterionResult dispatch(int id) {
  switch (id) {
    case 1: return guarded(1, c1);
    case 2: return guarded(2, c2);
    case 3: return guarded(3, c3);
    case 4: return guarded(4, c4);
    case 5: return guarded(5, c5);
    case 6: return guarded(6, c6);
    case 7: return guarded(7, c7);
    case 8: return guarded(8, c8);
    case 9: return guarded(9, c9);
    case 10: return guarded(10, c10);
    case 11: return guarded(11, c11);
    case 12: return guarded(12, c12);
    case 13: return guarded(13, c13);
    case 14: return guarded(14, c14);
  }
  throw ValidationError("unknown criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_suite(double& wall) {
  auto t0 = clock_type::now();
  std::vector<std::future<CriterionResult>> jobs;
  for (int id = 1; id < criterion_count; ++id) jobs.push_back(std::async(std::launch::async, dispatch, id));
  std::vector<CriterionResult> out;
  for (auto& j : jobs) out.push_back(j.get());
  wall = seconds_since(t0);
  return out;
}

CriterionResult timing(double wall) {
  CriterionResult r = make(15, "full selftest time", wall < 300.0, "criteria 1-14 in " + sci(wall) + " s");
  r.seconds = wall;
  return r;
}

}  // namespace

CriterionResult run_criterion(int id) {
  if (id == criterion_count) {
    double wall = 0;
    run_suite(wall);
    return timing(wall);
  }
  if (id < 1 || id > criterion_count) throw ValidationError("criterion must be in 1..15");
  return dispatch(id);
}

std::vector<CriterionResult> run_all() {
  double wall = 0;
  auto out = run_suite(wall);
  out.push_back(timing(wall));
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << "criterion " << std::setw(2) << r.id << ": " << (r.pass ? "PASS" : "FAIL") << "  " << r.name << "  ("
     << r.detail << ")  [" << std::fixed << std::setprecision(2) << r.seconds << " s]";
  return os.str();
}

}  // namespace singlet::acceptance
