#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "singlet/modular.hpp"
#include "singlet/model.hpp"
#include "singlet/qdim.hpp"

namespace singlet::fusion {

// integer polynomial, coefficient of x^k at index k
using Poly = std::vector<long long>;

enum class ChebKind { First, Second };

// standard T_n(x), U_n(x)
Poly chebyshev(ChebKind kind, int n);
double chebyshev(ChebKind kind, int n, double x);
// monic variants U_n(x/2) and 2 T_n(x/2)
Poly cheb_u_half(int n);
Poly cheb_t2_half(int n);

struct FusionElement {
  std::map<std::tuple<int, int, int>, long long> atypical;  // (r,s,n) -> coefficient
  std::vector<std::pair<cplx, long long>> typical;          // lambda -> coefficient

  static FusionElement of(const ModuleLabel& L);
  static FusionElement atyp(int r, int s, int n, long long c = 1);
  static FusionElement typ(cplx lambda, long long c = 1);

  void add_atypical(int r, int s, int n, long long c);
  void add_typical(cplx lambda, long long c);
  FusionElement& operator+=(const FusionElement& o);
  FusionElement operator*(long long c) const;
  bool empty() const { return atypical.empty() && typical.empty(); }
  bool operator==(const FusionElement& o) const;
  std::string to_string() const;
};

FusionElement operator+(FusionElement a, const FusionElement& b);

// X^a Y^b Z^n -> coefficient, 0 <= a < p+, 0 <= b < p-
struct LaurentNF {
  std::map<std::tuple<int, int, int>, long long> terms;
  bool operator==(const LaurentNF&) const = default;
};

LaurentNF to_laurent(const ModelParams& P, const FusionElement& e);
FusionElement from_laurent(const ModelParams& P, const LaurentNF& nf);
LaurentNF multiply(const ModelParams& P, const LaurentNF& a, const LaurentNF& b);

FusionElement fuse(const ModelParams& P, const FusionElement& a, const FusionElement& b);

cplx qdim(const ModelParams& P, const FusionElement& e, cplx eps);

using Tensor = std::vector<std::vector<std::vector<long long>>>;

struct Verlinde {
  Tensor N;
  double max_deviation = 0;  // distance to the nearest integers before rounding
  bool integral = true;
};

Verlinde verlinde_coeffs(const modular::Matrix& S, std::size_t vacuum = 0);

// index of the (1,1) representative in kac_table
std::size_t minimal_vacuum_index(const ModelParams& P);

modular::ResidualReport qdim_hom_check(const ModelParams& P, cplx eps, const FusionElement& a,
                                       const FusionElement& b);

struct ImageReport {
  std::string target;            // "minimal(p+,p-)", "su2(k)" or "none"
  std::vector<std::string> labels;  // generator labels in target order
  std::vector<double> qdims;        // their strip values
  double hom_residual = 0;          // max |d_a d_b - sum N_ab^c d_c|
  double kernel_residual = 0;       // max |qdim| over kernel classes
  bool ok = false;
};

ImageReport image_ring_check(const ModelParams& P, int strip_m);

// displayed generator relations: a x b = expected
struct Relation {
  std::string name;
  FusionElement a, b, expected;
};
std::vector<Relation> generator_relations(const ModelParams& P, int n_range = 2);

}  // namespace singlet::fusion
