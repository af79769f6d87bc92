#include <doctest.h>

#include <cmath>

#include "singlet/characters.hpp"
#include "singlet/qmf.hpp"

using namespace singlet;

// mpmath values, tests/oracle/oracle.py
TEST_CASE("false theta reference values") {
  CHECK(std::abs(qmf::false_theta_F(1, 2, {0, 1}) - 0.45508669239244806) < 1e-15);
  CHECK(std::abs(qmf::false_theta_F(2, 3, {0.1, 0.5}) - cplx(0.33310420442565884, 0.061690810677684144)) < 1e-14);
}

TEST_CASE("Eichler integral reference values") {
  CHECK(std::abs(qmf::eichler_half(1, 2, {-0.2, -0.6}) - cplx(0.028235669785915873, 0.18965163327302512)) < 1e-12);
  CHECK(std::abs(qmf::eichler_half(2, 3, {-0.5, -0.5}) - cplx(0.059381395349396911, 0.034283864589829898)) < 1e-12);
}

TEST_CASE("weight 3/2 theta is odd in j") {
  for (cplx z : {cplx(0, 1), cplx(0.2, 0.4)}) {
    CHECK(std::abs(qmf::weight32_f(1, 3, z) + qmf::weight32_f(-1, 3, z)) < 1e-14);
    CHECK(std::abs(qmf::weight32_f(0, 3, z)) < 1e-14);
  }
}

TEST_CASE("S(p) is the su(2) S-matrix") {
  for (int p = 2; p <= 7; ++p) {
    auto A = qmf::smatrix_p(p);
    auto B = modular::smatrix_wzw(p - 2);
    for (std::size_t i = 0; i < A.size(); ++i)
      for (std::size_t j = 0; j < A.size(); ++j) CHECK(std::abs(A[i][j] - B[i][j]) < 1e-15);
  }
}

TEST_CASE("half-integral weight cocycle") {
  for (int p = 2; p <= 5; ++p)
    for (cplx w : {cplx(-0.2, -0.6), cplx(-0.5, -0.5), cplx(0.3, -1.2), cplx(0.05, -0.35)}) {
      auto R = qmf::cocycle_check_halfint(p, w);
      INFO("p=", p, " w=", w);
      CHECK(R.lhs.size() == std::size_t(p - 1));
      CHECK(R.abs_residual < 1e-8);
    }
}

TEST_CASE("weight 3/2 cocycle") {
  for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {3, 4}})
    for (cplx w : {cplx(-0.3, -0.7), cplx(0.1, -0.9)}) {
      auto R = qmf::cocycle_check_weight32(ModelParams(a, b), w);
      CHECK(R.abs_residual < 1e-7);
    }
  CHECK_THROWS_AS(qmf::cocycle_check_weight32(ModelParams(1, 3), {0, -1}), ValidationError);
}

TEST_CASE("eta times Virasoro character") {
  ModelParams P(2, 5);
  EvalContext c;
  c.tau = cplx(0.1, 0.9);
  for (auto k : model::kac_table(P))
    CHECK(std::abs(qmf::eta_char_virasoro(P, k.r, k.s, c.tau) - sf::eta(c).value * chars::char_virasoro(P, k, c)) < 1e-14);
}

TEST_CASE("chi tilde forms") {
  ModelParams P(2, 5);
  CHECK(std::abs(qmf::chi_tilde(P, 1, 3, {0, 1}, qmf::ChiForm::Weighted) -
                 qmf::chi_tilde(P, 1, 3, {0, 1}, qmf::ChiForm::Difference)) < 1e-12);
  // the two forms differ by the partial theta pair; the weighted sum is eta ch I_{r,s;0} itself
  for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {3, 4}, {3, 5}}) {
    ModelParams Q(a, b);
    for (auto k : model::kac_table(Q))
      for (cplx tau : {cplx(0, 1), cplx(0.2, 0.6), cplx(-0.3, 0.25)}) {
        EvalContext c;
        c.tau = tau;
        c.eps = 0;
        cplx w = qmf::chi_tilde(Q, k.r, k.s, tau, qmf::ChiForm::Weighted);
        cplx eta_ch = sf::eta(c).value * chars::character(Q, label::AtypicalI{k.r, k.s, 0}, c);
        CHECK(std::abs(w - eta_ch) < 1e-12 * std::max(1.0, std::abs(eta_ch)));
      }
  }
  CHECK(std::abs(qmf::chi_tilde(P, 1, 4, {0, 1.5}) - 9.6809259821049072e-6) < 1e-18);
  CHECK_THROWS_AS(qmf::chi_tilde(ModelParams(2, 5), 1, 1, {0, 1}), ValidationError);
}

TEST_CASE("chi tilde span dimension") {
  for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {3, 4}, {3, 5}, {4, 5}, {2, 7}, {3, 7}}) {
    ModelParams P(a, b);
    CHECK(qmf::chi_tilde_span_dimension(P) == (a - 1) * (b - 1) / 2);
  }
}

TEST_CASE("radial limits agree at rationals") {
  struct Case {
    int j, p;
    rational x;
  };
  for (auto c : {Case{1, 2, rational(0)}, Case{1, 2, rational(1, 2)}, Case{1, 3, rational(1, 3)},
                 Case{2, 3, rational(1, 2)}, Case{1, 4, rational(1, 4)}}) {
    auto R = qmf::radial_limit_check(c.j, c.p, c.x);
    INFO(c.j, " ", c.p, " ", c.x);
    CHECK(R.difference < 1e-2);
    CHECK(R.deltas.size() == 3);
  }
  CHECK_THROWS_AS(qmf::radial_limit_check(1, 2, rational(0), {0.1}), ValidationError);
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(qmf::eichler_half(1, 2, {0, 0.5}), ValidationError);
  CHECK_THROWS_AS(qmf::false_theta_F(1, 1, {0, 1}), ValidationError);
  CHECK_THROWS_AS(qmf::cocycle_check_halfint(3, {0.2, 0.1}), ValidationError);
}
