#include "singlet/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

namespace singlet {

ModelParams::ModelParams(int pp, int pm) : p_plus(pp), p_minus(pm) {
  if (pp < 1 || pm < 2)
    throw ValidationError("need p_plus >= 1 and p_minus >= 2");
  if (std::gcd(pp, pm) != 1 || pp == pm)
    throw ValidationError("p_plus, p_minus must be coprime and distinct");
  alpha_plus = std::sqrt(2.0 * pm / pp);
  alpha_minus = -std::sqrt(2.0 * pp / pm);
  alpha_zero = alpha_plus + alpha_minus;
  alpha = std::sqrt(2.0 * pp * pm);
  long long d = pp - pm;
  central_charge = rational(1) - rational(6 * d * d, (long long)pp * pm);
}

void EvalContext::validate() const {
  if (!(tau.imag() > 0)) throw ValidationError("Im(tau) must be positive");
  if (!(series_tail_tol > 0)) throw ValidationError("series_tail_tol must be positive");
  if (!(quad_abs_tol > 0)) throw ValidationError("quad_abs_tol must be positive");
  if (!(quad_cutoff > 0)) throw ValidationError("quad_cutoff must be positive");
  if (precision_digits < 15) throw ValidationError("precision_digits must be >= 15");
  if (max_terms < 1) throw ValidationError("max_terms must be positive");
}

namespace model {

std::vector<KacLabel> kac_table(const ModelParams& P) {
  std::vector<KacLabel> out;
  for (int r = 1; r < P.p_plus; ++r)
    for (int s = 1; s < P.p_minus; ++s)
      if (s * P.p_plus > r * P.p_minus) out.push_back({r, s});
  return out;  // already lexicographic
}

bool in_kac_table(const ModelParams& P, int r, int s) {
  return r >= 1 && r < P.p_plus && s >= 1 && s < P.p_minus && s * P.p_plus > r * P.p_minus;
}

KacLabel kac_representative(const ModelParams& P, int r, int s) {
  if (r < 1 || r >= P.p_plus || s < 1 || s >= P.p_minus)
    throw ValidationError("Virasoro label out of range");
  if (in_kac_table(P, r, s)) return {r, s};
  return {P.p_plus - r, P.p_minus - s};
}

double fock_weight(const ModelParams& P, int r, int s, int n) {
  return 0.5 * (1 - r) * P.alpha_plus + 0.5 * (1 - s) * P.alpha_minus + 0.5 * n * P.alpha;
}

double fock_shift(const ModelParams& P, int r, int s, int n) {
  return ((double)n * P.N() - (double)r * P.p_minus + (double)s * P.p_plus) / P.alpha;
}

rational kac_dimension(const ModelParams& P, int r, int s) {
  long long a = (long long)P.p_minus * r - (long long)P.p_plus * s;
  long long d = P.p_plus - P.p_minus;
  return rational(a * a - d * d, 4LL * P.N());
}

void validate(const ModelParams& P, const ModuleLabel& L) {
  using namespace label;
  const int pp = P.p_plus, pm = P.p_minus;
  std::visit(
      [&](auto&& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Typical>) {
          if (!std::isfinite(x.lambda.real()) || !std::isfinite(x.lambda.imag()))
            throw ValidationError("typical weight must be finite");
        } else if constexpr (std::is_same_v<T, AtypicalI>) {
          if (x.r < 1 || x.r > pp || x.s < 1 || x.s > pm)
            throw ValidationError("I label needs 1<=r<=p+, 1<=s<=p-");
        } else if constexpr (std::is_same_v<T, AtypicalIPlus>) {
          if (x.r < 1 || x.r >= pp || x.s < 1 || x.s > pm)
            throw ValidationError("I+ label needs 1<=r<p+, 1<=s<=p-");
        } else if constexpr (std::is_same_v<T, AtypicalIMinus>) {
          if (x.r < 1 || x.r > pp || x.s < 1 || x.s >= pm)
            throw ValidationError("I- label needs 1<=r<=p+, 1<=s<p-");
        } else {
          if (x.r < 1 || x.r >= pp || x.s < 1 || x.s >= pm)
            throw ValidationError("Virasoro/kernel label needs 1<=r<p+, 1<=s<p-");
        }
      },
      L);
}

cplx conformal_dim(const ModelParams& P, const ModuleLabel& L) {
  validate(P, L);
  if (auto* t = std::get_if<label::Typical>(&L)) return t->lambda * (t->lambda - P.alpha_zero) / 2.0;
  if (auto* v = std::get_if<label::Virasoro>(&L)) return boost::rational_cast<double>(kac_dimension(P, v->r, v->s));
  throw ValidationError("conformal_dim: only typical and Virasoro labels");
}

ModuleLabel singlet_label(int r, int s) { return label::AtypicalI{1, s, r - 1}; }

std::string to_string(const ModuleLabel& L) {
  using namespace label;
  std::ostringstream os;
  auto shortest = [](double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
  };
  std::visit(
      [&](auto&& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, Typical>)
          os << "F:" << shortest(x.lambda.real()) << "," << shortest(x.lambda.imag());
        else if constexpr (std::is_same_v<T, AtypicalI>)
          os << "I:" << x.r << "," << x.s << "," << x.n;
        else if constexpr (std::is_same_v<T, AtypicalIPlus>)
          os << "I+:" << x.r << "," << x.s << "," << x.n;
        else if constexpr (std::is_same_v<T, AtypicalIMinus>)
          os << "I-:" << x.r << "," << x.s << "," << x.n;
        else if constexpr (std::is_same_v<T, Virasoro>)
          os << "L:" << x.r << "," << x.s;
        else
          os << "K:" << x.r << "," << x.s;
      },
      L);
  return os.str();
}

namespace {
std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

long to_int(const std::string& s) {
  std::size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (...) {
    throw ValidationError("bad integer '" + s + "'");
  }
  if (pos != s.size()) throw ValidationError("bad integer '" + s + "'");
  return v;
}

double to_real(const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (...) {
    throw ValidationError("bad number '" + s + "'");
  }
  if (pos != s.size()) throw ValidationError("bad number '" + s + "'");
  return v;
}
}  // namespace

ModuleLabel parse_label(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) throw ValidationError("label must look like KIND:args");
  std::string kind = text.substr(0, colon);
  auto args = split(text.substr(colon + 1), ',');
  auto need = [&](std::size_t k) {
    if (args.size() != k) throw ValidationError("label '" + text + "' has wrong arity");
  };
  if (kind == "F") {
    if (args.size() == 1) return label::Typical{{to_real(args[0]), 0.0}};
    need(2);
    return label::Typical{{to_real(args[0]), to_real(args[1])}};
  }
  if (kind == "I" || kind == "I+" || kind == "I-") {
    need(3);
    int r = to_int(args[0]), s = to_int(args[1]), n = to_int(args[2]);
    if (kind == "I") return label::AtypicalI{r, s, n};
    if (kind == "I+") return label::AtypicalIPlus{r, s, n};
    return label::AtypicalIMinus{r, s, n};
  }
  need(2);
  int r = to_int(args[0]), s = to_int(args[1]);
  if (kind == "L") return label::Virasoro{r, s};
  if (kind == "K") return label::Kernel{r, s};
  if (kind == "M") return singlet_label(r, s);
  throw ValidationError("unknown label kind '" + kind + "'");
}

}  // namespace model
}  // namespace singlet
