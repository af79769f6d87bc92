#include <doctest.h>

#include <cmath>

#include "singlet/model.hpp"

using namespace singlet;

TEST_CASE("model parameters") {
  ModelParams P(2, 3);
  CHECK(P.alpha_plus == doctest::Approx(std::sqrt(3.0)));
  CHECK(P.alpha_minus == doctest::Approx(-std::sqrt(4.0 / 3.0)));
  CHECK(P.alpha == doctest::Approx(std::sqrt(12.0)));
  CHECK(P.alpha_plus * P.alpha_minus == doctest::Approx(-2.0));
  CHECK(P.central_charge == rational(0));
  CHECK(ModelParams(2, 5).central_charge == rational(-22, 5));
  CHECK(ModelParams(3, 4).central_charge == rational(1, 2));
  CHECK(ModelParams(1, 2).central_charge == rational(-2));
  CHECK(ModelParams(1, 3).central_charge == rational(-7));
  CHECK(P.N() == 6);
}

TEST_CASE("central charge matches 1 - 3 alpha0^2") {
  for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {3, 4}, {3, 5}, {1, 4}, {4, 7}}) {
    ModelParams P(a, b);
    CHECK(boost::rational_cast<double>(P.central_charge) == doctest::Approx(1 - 3 * P.alpha_zero * P.alpha_zero));
  }
}

TEST_CASE("invalid parameters") {
  CHECK_THROWS_AS(ModelParams(2, 4), ValidationError);
  CHECK_THROWS_AS(ModelParams(3, 3), ValidationError);
  CHECK_THROWS_AS(ModelParams(0, 3), ValidationError);
  CHECK_THROWS_AS(ModelParams(1, 1), ValidationError);
}

TEST_CASE("kac table") {
  CHECK(model::kac_table(ModelParams(2, 3)).size() == 1);
  CHECK(model::kac_table(ModelParams(2, 5)).size() == 2);
  CHECK(model::kac_table(ModelParams(3, 4)).size() == 3);
  CHECK(model::kac_table(ModelParams(1, 4)).empty());
  for (auto [a, b] : {std::pair{2, 7}, {3, 5}, {4, 5}, {5, 7}}) {
    ModelParams P(a, b);
    auto T = model::kac_table(P);
    CHECK(T.size() == std::size_t((a - 1) * (b - 1) / 2));
    // each orbit of the Kac symmetry meets T once
    for (int r = 1; r < a; ++r)
      for (int s = 1; s < b; ++s) {
        auto k = model::kac_representative(P, r, s);
        CHECK(model::in_kac_table(P, k.r, k.s));
        CHECK(model::kac_dimension(P, r, s) == model::kac_dimension(P, k.r, k.s));
      }
  }
}

TEST_CASE("conformal dimensions") {
  ModelParams LY(2, 5);
  CHECK(model::kac_dimension(LY, 1, 3) == rational(-1, 5));
  CHECK(model::kac_dimension(LY, 1, 4) == rational(0));
  ModelParams Is(3, 4);
  CHECK(model::kac_dimension(Is, 1, 2) == rational(1, 16));
  CHECK(model::kac_dimension(Is, 1, 3) == rational(1, 2));
  CHECK(model::kac_dimension(Is, 1, 1) == rational(0));
  // typical: lambda (lambda - alpha0) / 2
  ModelParams P(2, 3);
  cplx h = model::conformal_dim(P, label::Typical{0.5});
  CHECK(h.real() == doctest::Approx(0.5 * (0.5 - P.alpha_zero) / 2));
  CHECK(std::abs(model::conformal_dim(P, label::Typical{P.alpha_zero / 2 + 0.3}) -
                 model::conformal_dim(P, label::Typical{P.alpha_zero / 2 - 0.3})) < 1e-15);
}

TEST_CASE("fock weights") {
  for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {1, 3}}) {
    ModelParams P(a, b);
    for (int r = 1; r <= a; ++r)
      for (int s = 1; s <= b; ++s)
        for (int n = -3; n <= 3; ++n)
          CHECK(model::fock_shift(P, r, s, n) == doctest::Approx(model::fock_weight(P, r, s, n) - P.alpha_zero / 2));
    CHECK(model::fock_weight(P, 1, 1, 0) == 0.0);
    CHECK(model::fock_weight(P, 1, 1, 1) == doctest::Approx(P.alpha / 2));
  }
}

TEST_CASE("label parsing round trip") {
  for (std::string s : {"I:1,2,0", "I:2,3,-1", "I+:1,1,2", "I-:2,1,0", "L:1,2", "K:1,2", "F:0.3,0", "F:0.25,-1.5"})
    CHECK(model::to_string(model::parse_label(s)) == s);
  CHECK(model::to_string(model::parse_label("F:0.3")) == "F:0.3,0");
  CHECK(model::to_string(model::parse_label("M:2,1")) == "I:1,1,1");
  for (std::string bad : {"I:1,2", "Q:1,2", "I:a,2,0", "F:", "L1,2", "F:0.3x"})
    CHECK_THROWS_AS(model::parse_label(bad), ValidationError);
}

TEST_CASE("label validation") {
  ModelParams P(2, 3);
  CHECK_NOTHROW(model::validate(P, label::AtypicalI{2, 3, 5}));
  CHECK_THROWS_AS(model::validate(P, label::AtypicalI{3, 1, 0}), ValidationError);
  CHECK_THROWS_AS(model::validate(P, label::AtypicalIPlus{2, 1, 0}), ValidationError);
  CHECK_THROWS_AS(model::validate(P, label::AtypicalIMinus{1, 3, 0}), ValidationError);
  CHECK_THROWS_AS(model::validate(P, label::Virasoro{2, 1}), ValidationError);
  CHECK_THROWS_AS(model::validate(P, label::Typical{cplx(NAN, 0)}), ValidationError);
}

TEST_CASE("context defaults and validation") {
  EvalContext c;
  CHECK(c.series_tail_tol == 1e-14);
  CHECK(c.quad_abs_tol == 1e-10);
  CHECK(c.precision_digits == 30);
  CHECK(c.max_terms == 1000000);
  CHECK_NOTHROW(c.validate());
  c.tau = cplx(0.2, 0);
  CHECK_THROWS_AS(c.validate(), ValidationError);
  c.tau = cplx(0, 1);
  c.precision_digits = 10;
  CHECK_THROWS_AS(c.validate(), ValidationError);
}
