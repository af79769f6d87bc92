#include <doctest.h>

#include <cmath>

#include "singlet/characters.hpp"
#include "singlet/special.hpp"

using namespace singlet;

namespace {
EvalContext at(cplx tau, cplx eps = 0.0) {
  EvalContext c;
  c.tau = tau;
  c.eps = eps;
  return c;
}
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
}  // namespace

// Rogers-Ramanujan products, tests/oracle/oracle.py
TEST_CASE("Lee-Yang characters against product formulas") {
  ModelParams LY(2, 5);
  EvalContext c = at({0, 1});
  CHECK(std::abs(chars::char_virasoro(LY, {1, 4}, c) - 0.31603136548551461) < 1e-14);
  CHECK(std::abs(chars::char_virasoro(LY, {1, 3}, c) - 1.112476869863911) < 1e-14);
  // Kac symmetry
  CHECK(std::abs(chars::char_virasoro(LY, {1, 1}, c) - chars::char_virasoro(LY, {1, 4}, c)) < 1e-14);
}

TEST_CASE("trivial minimal model has character 1") {
  ModelParams P(2, 3);
  for (cplx tau : {cplx(0, 1), cplx(0.3, 0.5), cplx(-0.2, 2)})
    CHECK(std::abs(chars::char_virasoro(P, {1, 2}, at(tau)) - 1.0) < 1e-13);
}

TEST_CASE("Ising characters square-sum") {
  // ch0^2 + ch_{1/2}^2 + ch_{1/16}^2 relation at tau = i via theta quotients
  ModelParams P(3, 4);
  EvalContext c = at({0, 1});
  cplx c0 = chars::char_virasoro(P, {1, 1}, c), ch = chars::char_virasoro(P, {1, 3}, c),
       cs = chars::char_virasoro(P, {1, 2}, c);
  // chi0 + chi_{1/2} = sqrt(theta3 / eta), theta3(i) = pi^{1/4} / Gamma(3/4)
  double theta3 = std::pow(pi, 0.25) / std::tgamma(0.75);
  double eta = sf::eta(c).value.real();
  CHECK((c0 + ch).real() == doctest::Approx(std::sqrt(theta3 / eta)).epsilon(1e-13));
  // chi_{1/16} = sqrt(theta2 / (2 eta)), theta2(i) = theta3(i) / 2^{1/4}
  CHECK(cs.real() == doctest::Approx(std::sqrt(theta3 / std::pow(2.0, 0.25) / (2 * eta))).epsilon(1e-13));
}

TEST_CASE("fock character") {
  EvalContext c = at({0, 1.2}, 0.1);
  cplx x = 0.37;
  cplx v = chars::fock_char(x, c);
  cplx want = std::exp(2 * pi * 0.1 * x) * std::exp(2 * pi * I * c.tau * x * x / 2.0) / sf::eta(c).value;
  CHECK(std::abs(v - want) < 1e-14);
  ModelParams P(2, 3);
  CHECK(std::abs(chars::char_typical(P, P.alpha_zero / 2 + x, c) - v) < 1e-14);
}

TEST_CASE("typical reflection at eps = 0") {
  ModelParams P(2, 5);
  EvalContext c = at({0.1, 0.9});
  cplx l = 0.83;
  CHECK(std::abs(chars::char_typical(P, l, c) - chars::char_typical(P, P.alpha_zero - l, c)) < 1e-14);
  c.eps = 0.2;
  CHECK(std::abs(chars::char_typical(P, l, c) - chars::char_typical(P, P.alpha_zero - l, c)) > 1e-3);
}

TEST_CASE("resolutions agree at tau = 1.3i, eps = 0.17") {
  EvalContext c = at({0, 1.3}, 0.17);
  for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {3, 4}}) {
    ModelParams P(a, b);
    for (int r = 1; r <= a; ++r)
      for (int s = 1; s <= b; ++s)
        for (int n = -2; n <= 2; ++n) {
          cplx ref = chars::char_I_fock_sum(P, r, s, n, c);
          CHECK(rel(chars::character(P, label::AtypicalI{r, s, n}, c), ref) < 1e-11);
          if (r < a && s < b) {
            CHECK(rel(chars::char_I_from_plus(P, r, s, n, c), ref) < 1e-11);
            CHECK(rel(chars::char_I_from_minus(P, r, s, n, c), ref) < 1e-11);
          }
          if (r < a) CHECK(rel(chars::character(P, label::AtypicalIPlus{r, s, n}, c), chars::char_Iplus_fock_sum(P, r, s, n, c)) < 1e-11);
          if (s < b) CHECK(rel(chars::character(P, label::AtypicalIMinus{r, s, n}, c), chars::char_Iminus_fock_sum(P, r, s, n, c)) < 1e-11);
        }
  }
}

TEST_CASE("border labels") {
  ModelParams P(2, 3);
  EvalContext c = at({0, 1.1}, 0.05);
  // I_{p+,p-;n} is the Fock module F_{p+,p-;n}
  for (int n = -1; n <= 1; ++n) {
    cplx f = chars::fock_char(model::fock_shift(P, 2, 3, n), c);
    CHECK(rel(chars::character(P, label::AtypicalI{2, 3, n}, c), f) < 1e-13);
    CHECK(rel(chars::character(P, label::AtypicalI{1, 3, n}, c), chars::character(P, label::AtypicalIPlus{1, 3, n}, c)) < 1e-14);
    CHECK(rel(chars::character(P, label::AtypicalI{2, 1, n}, c), chars::character(P, label::AtypicalIMinus{2, 1, n}, c)) < 1e-14);
  }
}

TEST_CASE("kernel character") {
  ModelParams P(2, 5);
  EvalContext c = at({0, 0.8}, 0.1);
  for (auto k : model::kac_table(P))
    CHECK(rel(chars::character(P, label::Kernel{k.r, k.s}, c),
              chars::char_virasoro(P, k, c) + chars::character(P, label::AtypicalI{k.r, k.s, 0}, c)) < 1e-14);
}

TEST_CASE("(1,p) singlet characters") {
  for (int p : {2, 3, 4}) {
    ModelParams P(1, p);
    EvalContext c = at({0.05, 0.9}, 0.1);
    for (int r = 1; r <= 3; ++r)
      for (int s = 1; s <= p; ++s) {
        cplx v = chars::char_singlet_1p(p, r, s, c);
        CHECK(rel(v, chars::char_I_fock_sum(P, 1, s, r - 1, c)) < 1e-11);
      }
    CHECK_THROWS_AS(chars::char_singlet_1p(p, 1, p + 1, c), ValidationError);
  }
}

TEST_CASE("character depends on eps only through Fock weights") {
  ModelParams P(2, 3);
  EvalContext a = at({0, 1}, 0.0), b = at({0, 1}, 0.3);
  cplx va = chars::character(P, label::AtypicalI{1, 1, 0}, a);
  cplx vb = chars::character(P, label::AtypicalI{1, 1, 0}, b);
  CHECK(std::abs(va - vb) > 1e-6);
  CHECK(std::isfinite(va.real()));
}
