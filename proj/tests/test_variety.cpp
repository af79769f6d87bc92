#include <doctest.h>

#include <cmath>
#include <random>

#include "singlet/qdim.hpp"
#include "singlet/variety.hpp"

using namespace singlet;

namespace {
double max_abs(const std::vector<cplx>& v) {
  double m = 0;
  for (auto z : v) m = std::max(m, std::abs(z));
  return m;
}
}  // namespace

TEST_CASE("singular point counts") {
  for (int p = 2; p <= 7; ++p) CHECK(variety::singular_points(variety::one_p(p)).size() == std::size_t(p - 1));
  for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {3, 4}, {3, 5}, {2, 7}})
    CHECK(variety::singular_points(ModelParams(a, b)).size() == std::size_t((a - 1) * (b - 1) / 2));
}

TEST_CASE("singular points lie on the curve with vanishing gradient") {
  for (int p = 2; p <= 6; ++p)
    for (auto& sp : variety::singular_points(variety::one_p(p))) {
      CHECK(max_abs(variety::curve_eval(variety::one_p(p), sp.point)) < 1e-12);
      CHECK(sp.jacobian_norm < 1e-10);
      // ordinary double points
      CHECK(std::abs(sp.hessian_det) > 1e-6);
    }
  for (auto& sp : variety::singular_points(ModelParams(3, 4)))
    CHECK(max_abs(variety::curve_eval(ModelParams(3, 4), sp.point)) < 1e-12);
}

TEST_CASE("nodes are images of two parameter values") {
  for (int p = 2; p <= 6; ++p) {
    auto P = variety::one_p(p);
    for (int k = 1; k < p; ++k) {
      auto a = variety::parametrize(P, std::polar(1.0, pi * k / p));
      auto b = variety::parametrize(P, std::polar(1.0, -pi * k / p));
      CHECK(std::abs(a.x - b.x) < 1e-13);
      CHECK(std::abs(a.z - b.z) < 1e-13);
      CHECK(std::abs(a.x - 2 * std::cos(pi * k / p)) < 1e-13);
    }
  }
}

TEST_CASE("parametrisation lands on the curve") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> lr(-0.4, 0.4), ar(0, 2 * pi);
  for (auto [a, b] : {std::pair{1, 2}, {1, 5}, {2, 3}, {2, 5}, {3, 4}})
    for (int i = 0; i < 20; ++i) {
      ModelParams P(a, b);
      cplx t = std::polar(std::exp(lr(rng)), ar(rng));
      auto pt = variety::parametrize(P, t);
      double scale = 1 + std::norm(pt.z) + std::abs(pt.z) * std::pow(std::abs(pt.x) + std::abs(pt.y) + 1, b);
      CHECK(max_abs(variety::curve_eval(P, pt)) / scale < 1e-14);
    }
  CHECK(variety::curve_eval(variety::one_p(2), {2.0, 0.0, 1.0})[0] == cplx(0, 0));
}

TEST_CASE("uniformisation") {
  std::mt19937 rng(8);
  std::uniform_real_distribution<double> re(0.01, 0.5), im(-1, 1);
  for (auto [a, b] : {std::pair{2, 3}, {2, 5}, {1, 3}, {1, 4}}) {
    ModelParams P(a, b);
    for (int i = 0; i < 5; ++i) {
      cplx e(re(rng), im(rng));
      CHECK(variety::uniformisation_check(P, e).rel_residual < 1e-12);
    }
    // z = qdim I_{1,1;1}
    cplx e(0.2, 0.3);
    CHECK(std::abs(variety::parametrize(P, variety::uniformising_t(P, e)).z -
                   qdim::qdim_closed(P, label::AtypicalI{1, 1, 1}, e)) < 1e-12);
  }
  CHECK_THROWS_AS(variety::uniformisation_check(ModelParams(2, 3), cplx(-1, 0)), ValidationError);
}

TEST_CASE("invalid points") {
  CHECK_THROWS_AS(variety::curve_eval(ModelParams(2, 3), {1.0, 1.0, 0.0}), ValidationError);
  CHECK_THROWS_AS(variety::parametrize(ModelParams(2, 3), 0.0), ValidationError);
}
