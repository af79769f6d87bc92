#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

namespace singlet {

using cplx = std::complex<double>;
using rational = boost::rational<long long>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr cplx I{0.0, 1.0};

// exit code 2
struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// exit code 3
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelParams {
  int p_plus = 0;
  int p_minus = 0;
  double alpha_plus = 0, alpha_minus = 0, alpha_zero = 0, alpha = 0;
  rational central_charge;

  ModelParams() = default;
  ModelParams(int pp, int pm);

  int N() const { return p_plus * p_minus; }
  bool one_p() const { return p_plus == 1; }
};

struct KacLabel {
  int r = 1, s = 1;
  bool operator==(const KacLabel&) const = default;
  auto operator<=>(const KacLabel&) const = default;
};

namespace label {
struct Typical { cplx lambda; };
struct AtypicalI { int r, s, n; };
struct AtypicalIPlus { int r, s, n; };
struct AtypicalIMinus { int r, s, n; };
struct Virasoro { int r, s; };
struct Kernel { int r, s; };
}  // namespace label

using ModuleLabel = std::variant<label::Typical, label::AtypicalI, label::AtypicalIPlus,
                                 label::AtypicalIMinus, label::Virasoro, label::Kernel>;

struct EvalContext {
  cplx tau{0.0, 1.0};
  cplx eps{0.0, 0.0};
  double series_tail_tol = 1e-14;
  long max_terms = 1000000;
  double quad_abs_tol = 1e-10;
  double quad_cutoff = 50.0;
  int precision_digits = 30;

  void validate() const;
};

namespace model {

std::vector<KacLabel> kac_table(const ModelParams& P);
bool in_kac_table(const ModelParams& P, int r, int s);
// Kac-symmetric representative (r,s) ~ (p+-r, p--s) inside T
KacLabel kac_representative(const ModelParams& P, int r, int s);

double fock_weight(const ModelParams& P, int r, int s, int n);
// lambda - alpha0/2 for F_{r,s;n}
double fock_shift(const ModelParams& P, int r, int s, int n);

rational kac_dimension(const ModelParams& P, int r, int s);
cplx conformal_dim(const ModelParams& P, const ModuleLabel& L);

void validate(const ModelParams& P, const ModuleLabel& L);

// (1,p) singlet M_{r,s} = I_{1,s;r-1}
ModuleLabel singlet_label(int r, int s);

std::string to_string(const ModuleLabel& L);
ModuleLabel parse_label(const std::string& text);

}  // namespace model
}  // namespace singlet
