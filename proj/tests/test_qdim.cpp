#include <doctest.h>

#include <cmath>

#include "singlet/qdim.hpp"

using namespace singlet;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
}  // namespace

TEST_CASE("chebyshev recursion") {
  CHECK(qdim::cheb_u(-1, 0.3) == cplx(0, 0));
  CHECK(qdim::cheb_u(0, 0.3) == cplx(1, 0));
  for (int n = 0; n < 8; ++n) {
    double th = 0.37;
    CHECK(std::abs(qdim::cheb_u(n, std::cos(th)) - std::sin((n + 1) * th) / std::sin(th)) < 1e-13);
  }
  CHECK(std::abs(qdim::cheb_u(-3, 0.4) + qdim::cheb_u(1, 0.4)) < 1e-15);
}

TEST_CASE("regimes and walls") {
  ModelParams P(2, 3);
  CHECK(qdim::family_q(P) == 6);
  CHECK(qdim::family_q(ModelParams(1, 4)) == 4);
  for (double im : {-0.7, 0.0, 0.2, 1.3}) {
    double B = qdim::wall(P, cplx(0, im));
    CHECK(B <= 0);
    CHECK(qdim::regime(P, cplx(B + 0.01, im)).kind == qdim::Regime::Continuous);
    CHECK(qdim::regime(P, cplx(B - 0.01, im)).kind == qdim::Regime::Discrete);
    CHECK(qdim::regime(P, cplx(B, im)).kind == qdim::Regime::OnWall);
  }
  // strip index of eps = -1 + i m / sqrt(2q)
  for (int m = 0; m < 12; ++m) {
    auto R = qdim::regime(P, cplx(-1, m / std::sqrt(12.0)));
    CHECK(R.kind == qdim::Regime::Discrete);
    CHECK(R.m == m);
    CHECK(R.k == 0);
  }
  CHECK(qdim::regime(P, cplx(-1, -1 / std::sqrt(12.0))).m == 11);
  CHECK(qdim::regime(P, cplx(-1, -1 / std::sqrt(12.0))).k == -1);
}

TEST_CASE("vacuum normalisation") {
  for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {1, 3}}) {
    ModelParams P(a, b);
    CHECK(std::abs(qdim::qdim_closed(P, label::AtypicalI{1, 1, 0}, cplx(0.3, 0.2)) - 1.0) < 1e-15);
    CHECK(std::abs(qdim::qdim_closed(P, label::AtypicalI{1, 1, 0}, cplx(-1, 0)) - 1.0) < 1e-15);
  }
}

TEST_CASE("limits at small eps") {
  ModelParams P(2, 5);
  const cplx e = 1e-8;
  for (int r = 1; r <= 2; ++r)
    for (int s = 1; s <= 5; ++s) CHECK(std::abs(qdim::qdim_closed(P, label::AtypicalI{r, s, 0}, e) - double(r * s)) < 1e-10);
  CHECK(std::abs(qdim::qdim_closed(P, label::Typical{0.4}, e) - 10.0) < 1e-6);
  for (auto k : model::kac_table(P)) CHECK(qdim::qdim_closed(P, label::Virasoro{k.r, k.s}, e) == cplx(0, 0));
}

TEST_CASE("n dependence is an exponential factor") {
  ModelParams P(2, 3);
  for (cplx e : {cplx(0.2, 0.1), cplx(0.05, -0.3)})
    for (int n = -2; n <= 2; ++n) {
      cplx a = qdim::qdim_closed(P, label::AtypicalI{1, 2, n}, e);
      cplx b = qdim::qdim_closed(P, label::AtypicalI{1, 2, 0}, e);
      CHECK(std::abs(a / b - std::exp(P.alpha * pi * double(n) * e)) < 1e-13);
    }
}

TEST_CASE("closed against numeric in the continuous regime") {
  ModelParams P(2, 3);
  const ModuleLabel labels[] = {label::AtypicalI{1, 2, 0}, label::AtypicalI{2, 2, 1}, label::AtypicalI{1, 1, -1},
                                label::Kernel{1, 2}, label::Typical{0.3}};
  for (auto& L : labels)
    for (cplx e : {cplx(0.2, 0), cplx(0.1, 0.2), cplx(0.3, -0.4)}) {
      auto N = qdim::qdim_numeric(P, L, e);
      INFO(model::to_string(L), " ", e);
      CHECK(rel(N.estimate, qdim::qdim_closed(P, L, e)) < 1e-3);
    }
}

TEST_CASE("closed against numeric in the discrete regime") {
  ModelParams P(2, 3);
  for (int m : {0, 1, 2, 3}) {
    // on the real axis the approach is slow, so move away from the wall
    cplx e(m == 0 ? -3.0 : -0.8, m / std::sqrt(12.0));
    for (auto L : {ModuleLabel{label::AtypicalI{1, 2, 0}}, ModuleLabel{label::AtypicalI{2, 1, 1}}}) {
      auto N = qdim::qdim_numeric(P, L, e);
      INFO(model::to_string(L), " m=", m);
      CHECK(std::abs(N.estimate - qdim::qdim_closed(P, L, e)) < (m == 0 ? 1e-3 : 1e-6));
    }
  }
  auto M12 = model::singlet_label(1, 2);
  CHECK(std::abs(qdim::qdim_numeric(ModelParams(1, 3), M12, -1.0).estimate - 1.0) < 1e-3);
  // typical and I+ labels vanish off the continuous regime
  CHECK(qdim::qdim_closed(P, label::Typical{0.2}, cplx(-0.8, 0.1)) == cplx(0, 0));
  CHECK(qdim::qdim_closed(P, label::AtypicalIPlus{1, 1, 0}, cplx(-0.8, 0.1)) == cplx(0, 0));
  CHECK_THROWS_AS(qdim::qdim_closed(P, label::AtypicalIPlus{1, 1, 0}, cplx(0.2, 0)), ValidationError);
}

TEST_CASE("discrete values are constant on a strip") {
  ModelParams P(2, 5);
  for (int m = 1; m < 20; ++m) {
    cplx a = qdim::qdim_closed(P, label::AtypicalI{1, 3, 1}, cplx(-1.0, m / std::sqrt(20.0)));
    cplx b = qdim::qdim_closed(P, label::AtypicalI{1, 3, 1}, cplx(-2.5, m / std::sqrt(20.0) + 0.03));
    CHECK(a == b);
    CHECK(a.imag() == 0);
  }
}

TEST_CASE("leak points") {
  for (auto [a, b] : {std::pair{1, 3}, {1, 4}, {2, 3}, {2, 5}})
    for (int m = 1; m < 2 * qdim::family_q(ModelParams(a, b)); ++m) {
      ModelParams P(a, b);
      if (m % qdim::family_q(P) == 0) continue;
      for (int r = 1; r <= std::max(1, a - 1); ++r)
        for (int s = 1; s < b; ++s) {
          auto L = qdim::leak_check(P, r, s, 1, m);
          CHECK(std::abs(L.left - L.right) < 1e-6);
        }
    }
}

TEST_CASE("scan grid") {
  ModelParams P(2, 3);
  qdim::ScanGrid g;
  g.n_re = 5;
  g.n_im = 4;
  auto cells = qdim::qdim_scan(P, label::AtypicalI{1, 2, 0}, g);
  CHECK(cells.size() == 20);
  CHECK(cells.front().re_eps == -1.0);
  CHECK(cells.back().re_eps == 1.0);
  CHECK(cells.back().im_eps == 1.0);
  for (auto& c : cells)
    if (c.has_value) CHECK(c.value == qdim::qdim_closed(P, label::AtypicalI{1, 2, 0}, cplx(c.re_eps, c.im_eps)));
  g.n_re = 0;
  CHECK_THROWS_AS(qdim::qdim_scan(P, label::AtypicalI{1, 2, 0}, g), ValidationError);
}

TEST_CASE("numeric input validation") {
  ModelParams P(2, 3);
  CHECK_THROWS_AS(qdim::qdim_numeric(P, label::AtypicalI{1, 1, 0}, cplx(0, 0.2)), ValidationError);
  CHECK_THROWS_AS(qdim::qdim_numeric(P, label::AtypicalI{1, 1, 0}, 0.2, {}), ValidationError);
  CHECK_THROWS_AS(qdim::qdim_numeric(P, label::AtypicalI{1, 1, 0}, 0.2, {0.1, -0.1}), ValidationError);
}
