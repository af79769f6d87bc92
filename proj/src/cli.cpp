#include "singlet/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>

#include "singlet/acceptance.hpp"
#include "singlet/characters.hpp"
#include "singlet/fusion.hpp"
#include "singlet/modular.hpp"
#include "singlet/qdim.hpp"
#include "singlet/qmf.hpp"
#include "singlet/variety.hpp"

namespace singlet::cli {

namespace {

using json = nlohmann::json;

struct Options {
  int pplus = 2, pminus = 3;
  std::string label;
  std::string tau, eps, tail_tol, quad_tol, precision, max_terms;
  std::string config;
  std::string format = "json";

  std::string mode;
  std::vector<double> y;
  qdim::ScanGrid grid;
  std::string a, b;
  std::vector<int> minimal;
  int wzw = -1;
  std::string t;
  std::string check = "halfint";
  int p = 3, j = 1;
  std::string w, x = "1/2";
  std::vector<double> deltas;
  int criterion = 0;
};

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  const std::string v = trim(s);
  char* end = nullptr;
  double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(d))
    throw ValidationError("malformed " + what + ": '" + s + "'");
  return d;
}

long parse_long(const std::string& s, const std::string& what) {
  const std::string v = trim(s);
  char* end = nullptr;
  long d = std::strtol(v.c_str(), &end, 10);
  if (v.empty() || end != v.c_str() + v.size()) throw ValidationError("malformed " + what + ": '" + s + "'");
  return d;
}

// "re,im" or "re"
cplx parse_complex(const std::string& s, const std::string& what) {
  auto comma = s.find(',');
  if (comma == std::string::npos) return {parse_double(s, what), 0.0};
  if (s.find(',', comma + 1) != std::string::npos) throw ValidationError("malformed " + what + ": '" + s + "'");
  return {parse_double(s.substr(0, comma), what), parse_double(s.substr(comma + 1), what)};
}

rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  long h = parse_long(s.substr(0, slash), "rational");
  long k = slash == std::string::npos ? 1 : parse_long(s.substr(slash + 1), "rational");
  if (k <= 0) throw ValidationError("rational denominator must be positive");
  return rational(h, k);
}

void apply_setting(EvalContext& ctx, Options& o, const std::string& key, const std::string& v) {
  if (key == "tau") ctx.tau = parse_complex(v, "tau");
  else if (key == "eps") ctx.eps = parse_complex(v, "eps");
  else if (key == "tail-tol") ctx.series_tail_tol = parse_double(v, "tail-tol");
  else if (key == "quad-tol") ctx.quad_abs_tol = parse_double(v, "quad-tol");
  else if (key == "precision") ctx.precision_digits = int(parse_long(v, "precision"));
  else if (key == "max-terms") ctx.max_terms = parse_long(v, "max-terms");
  else if (key == "pplus") o.pplus = int(parse_long(v, "pplus"));
  else if (key == "pminus") o.pminus = int(parse_long(v, "pminus"));
  else throw ValidationError("unknown config key '" + key + "'");
}

// defaults < environment < config file < flags
EvalContext resolve_context(Options& o, const CLI::App& app) {
  EvalContext ctx;
  if (const char* env = std::getenv(precision_env)) ctx.precision_digits = int(parse_long(env, precision_env));
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw ValidationError("cannot read config file '" + o.config + "'");
    std::string line;
    while (std::getline(in, line)) {
      line = trim(line);
      if (line.empty() || line[0] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) throw ValidationError("config line without '=': " + line);
      const std::string key = trim(line.substr(0, eq));
      if ((key == "pplus" && app.count("--pplus")) || (key == "pminus" && app.count("--pminus"))) continue;
      apply_setting(ctx, o, key, trim(line.substr(eq + 1)));
    }
  }
  const std::pair<const char*, const std::string*> flags[] = {
      {"tau", &o.tau},           {"eps", &o.eps},         {"tail-tol", &o.tail_tol},
      {"quad-tol", &o.quad_tol}, {"precision", &o.precision}, {"max-terms", &o.max_terms}};
  for (auto& [key, val] : flags)
    if (app.count(std::string("--") + key)) apply_setting(ctx, o, key, *val);
  ctx.validate();
  return ctx;
}

struct Writer {
  int digits = 17;

  json num(double v) const {
    if (!std::isfinite(v)) return nullptr;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return std::strtod(buf, nullptr);
  }
  json cnum(cplx v) const { return json{{"re", num(v.real())}, {"im", num(v.imag())}}; }
  json cvec(const std::vector<cplx>& v) const {
    json a = json::array();
    for (auto& z : v) a.push_back(cnum(z));
    return a;
  }
  json dvec(const std::vector<double>& v) const {
    json a = json::array();
    for (double z : v) a.push_back(num(z));
    return a;
  }
  std::string text(double v) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
  }
};

struct Output {
  json params = json::object();
  json result = json::object();
  json diagnostics = json::object();
};

ModuleLabel require_label(const Options& o) {
  if (o.label.empty()) throw ValidationError("--label is required");
  return model::parse_label(o.label);
}

json residual_json(const modular::ResidualReport& R, const Writer& W) {
  return {{"lhs", W.cnum(R.lhs)},
          {"rhs", W.cnum(R.rhs)},
          {"abs_residual", W.num(R.abs_residual)},
          {"rel_residual", W.num(R.rel_residual)}};
}

json model_params(const Options& o) { return {{"pplus", o.pplus}, {"pminus", o.pminus}}; }

Output cmd_char(const Options& o, const EvalContext& ctx, const Writer& W) {
  const ModelParams P(o.pplus, o.pminus);
  const ModuleLabel L = require_label(o);
  Output out;
  out.params = model_params(o);
  out.params["label"] = model::to_string(L);
  sf::term_counter() = 0;
  cplx v = chars::character(P, L, ctx);
  out.result = {{"label", model::to_string(L)}, {"value", W.cnum(v)}, {"terms_used", sf::term_counter()}};
  if (std::holds_alternative<label::Typical>(L) || std::holds_alternative<label::Virasoro>(L))
    out.diagnostics["conformal_dim"] = W.cnum(model::conformal_dim(P, L));
  return out;
}

Output cmd_stransform(const Options& o, const EvalContext& ctx, const Writer& W) {
  const ModelParams P(o.pplus, o.pminus);
  const ModuleLabel L = require_label(o);
  Output out;
  out.params = model_params(o);
  out.params["label"] = model::to_string(L);
  out.result = residual_json(modular::verify_s_transform(P, L, ctx), W);
  out.diagnostics["regime"] = ctx.eps.real() < 0 ? "with correction" : "no correction";
  return out;
}

Output cmd_qdim(const Options& o, const EvalContext& ctx, const Writer& W) {
  const ModelParams P(o.pplus, o.pminus);
  const ModuleLabel L = require_label(o);
  const std::string mode = o.mode.empty() ? "closed" : o.mode;
  Output out;
  out.params = model_params(o);
  out.params["label"] = model::to_string(L);
  out.params["mode"] = mode;
  out.result["regime"] = qdim::to_string(qdim::regime(P, ctx.eps));
  if (mode == "closed") {
    out.result["value"] = W.cnum(qdim::qdim_closed(P, L, ctx.eps));
  } else {
    auto ys = o.y.empty() ? qdim::default_y_schedule() : o.y;
    auto N = qdim::qdim_numeric(P, L, ctx.eps, ys, ctx);
    out.result["value"] = W.cnum(N.estimate);
    out.diagnostics = {{"error", W.num(N.error)}, {"y", W.dvec(N.y)}, {"ratios", W.cvec(N.ratios)}};
  }
  return out;
}

Output cmd_scan(const Options& o, const EvalContext&, const Writer& W, std::ostream& csv) {
  const ModelParams P(o.pplus, o.pminus);
  const ModuleLabel L = require_label(o);
  auto cells = qdim::qdim_scan(P, L, o.grid);
  Output out;
  if (o.format == "csv") {
    csv << "re_eps,im_eps,re_q,im_q,regime\n";
    for (auto& c : cells) {
      csv << W.text(c.re_eps) << "," << W.text(c.im_eps) << ",";
      if (c.has_value) csv << W.text(c.value.real()) << "," << W.text(c.value.imag());
      else csv << ",";
      csv << "," << qdim::to_string(c.regime) << "\n";
    }
    return out;
  }
  out.params = model_params(o);
  out.params["label"] = model::to_string(L);
  out.params["grid"] = {{"re_min", W.num(o.grid.re_min)}, {"re_max", W.num(o.grid.re_max)},
                        {"im_min", W.num(o.grid.im_min)}, {"im_max", W.num(o.grid.im_max)},
                        {"n_re", o.grid.n_re},            {"n_im", o.grid.n_im}};
  json arr = json::array();
  for (auto& c : cells)
    arr.push_back({{"re_eps", W.num(c.re_eps)},
                   {"im_eps", W.num(c.im_eps)},
                   {"value", c.has_value ? W.cnum(c.value) : json(nullptr)},
                   {"regime", qdim::to_string(c.regime)}});
  out.result["cells"] = arr;
  out.diagnostics["cells"] = cells.size();
  return out;
}

Output cmd_fuse(const Options& o, const EvalContext& ctx, const Writer& W) {
  const ModelParams P(o.pplus, o.pminus);
  if (o.a.empty() || o.b.empty()) throw ValidationError("fuse needs --a and --b");
  const ModuleLabel A = model::parse_label(o.a), B = model::parse_label(o.b);
  auto prod = fusion::fuse(P, fusion::FusionElement::of(A), fusion::FusionElement::of(B));
  Output out;
  out.params = model_params(o);
  out.params["a"] = model::to_string(A);
  out.params["b"] = model::to_string(B);
  json terms = json::array();
  for (auto& [k, c] : prod.atypical)
    terms.push_back({{"label", model::to_string(label::AtypicalI{std::get<0>(k), std::get<1>(k), std::get<2>(k)})},
                     {"coefficient", c}});
  for (auto& [l, c] : prod.typical) terms.push_back({{"label", model::to_string(label::Typical{l})}, {"coefficient", c}});
  out.result = {{"product", prod.to_string()}, {"terms", terms}};
  if (qdim::regime(P, ctx.eps).kind == qdim::Regime::Continuous && ctx.eps.real() > 0) {
    auto R = fusion::qdim_hom_check(P, ctx.eps, fusion::FusionElement::of(A), fusion::FusionElement::of(B));
    out.diagnostics["qdim_check"] = residual_json(R, W);
  }
  return out;
}

Output cmd_verlinde(const Options& o, const EvalContext&, const Writer& W) {
  const bool has_min = !o.minimal.empty(), has_wzw = o.wzw >= 0;
  if (has_min == has_wzw) throw ValidationError("verlinde needs exactly one of --minimal p+ p- or --wzw k");
  Output out;
  modular::Matrix S;
  std::size_t vac = 0;
  json labels = json::array();
  if (has_min) {
    const ModelParams P(o.minimal.at(0), o.minimal.at(1));
    S = modular::smatrix_virasoro(P);
    vac = fusion::minimal_vacuum_index(P);
    for (auto k : model::kac_table(P)) labels.push_back(model::to_string(label::Virasoro{k.r, k.s}));
    out.params["minimal"] = o.minimal;
  } else {
    S = modular::smatrix_wzw(o.wzw);
    for (int a = 0; a <= o.wzw; ++a) labels.push_back(std::to_string(a));
    out.params["wzw"] = o.wzw;
  }
  auto V = fusion::verlinde_coeffs(S, vac);
  out.result = {{"labels", labels}, {"vacuum", labels.at(vac)}, {"tensor", V.N}};
  out.diagnostics = {{"max_deviation", W.num(V.max_deviation)}, {"integral", V.integral}};
  return out;
}

json point_json(const ModelParams& P, const variety::CurvePoint& pt, const Writer& W) {
  json j = {{"x", W.cnum(pt.x)}, {"z", W.cnum(pt.z)}};
  if (!P.one_p()) j["y"] = W.cnum(pt.y);
  return j;
}

Output cmd_variety(const Options& o, const EvalContext& ctx, const Writer& W) {
  const ModelParams P(o.pplus, o.pminus);
  const std::string mode = o.mode.empty() ? "singular" : o.mode;
  Output out;
  out.params = model_params(o);
  out.params["mode"] = mode;
  if (mode == "singular") {
    json pts = json::array();
    double worst = 0;
    for (auto& sp : variety::singular_points(P)) {
      json j = {{"description", sp.description}, {"point", point_json(P, sp.point, W)}};
      if (P.one_p()) j["hessian_det"] = W.num(sp.hessian_det);
      pts.push_back(j);
      worst = std::max({worst, sp.curve_residual, sp.jacobian_norm});
    }
    out.result = {{"count", pts.size()}, {"points", pts}};
    out.diagnostics["max_residual"] = W.num(worst);
  } else if (mode == "parametrize") {
    if (o.t.empty()) throw ValidationError("variety --mode parametrize needs --t re,im");
    const cplx t = parse_complex(o.t, "t");
    out.params["t"] = W.cnum(t);
    auto pt = variety::parametrize(P, t);
    double res = 0;
    for (cplx r : variety::curve_eval(P, pt)) res = std::max(res, std::abs(r));
    out.result = {{"point", point_json(P, pt, W)}};
    out.diagnostics["curve_residual"] = W.num(res);
  } else if (mode == "uniformise") {
    const cplx t = variety::uniformising_t(P, ctx.eps);
    out.result = {{"t", W.cnum(t)}, {"point", point_json(P, variety::parametrize(P, t), W)}};
    out.diagnostics = residual_json(variety::uniformisation_check(P, ctx.eps), W);
  } else {
    throw ValidationError("variety --mode must be singular, parametrize or uniformise");
  }
  return out;
}

json vector_residual_json(const qmf::VectorResidual& R, const Writer& W) {
  return {{"lhs", W.cvec(R.lhs)},
          {"rhs", W.cvec(R.rhs)},
          {"abs_residual", W.num(R.abs_residual)},
          {"rel_residual", W.num(R.rel_residual)}};
}

Output cmd_qmf(const Options& o, const EvalContext& ctx, const Writer& W) {
  Output out;
  out.params["check"] = o.check;
  auto w_or = [&](cplx d) { return o.w.empty() ? d : parse_complex(o.w, "w"); };
  if (o.check == "halfint") {
    const cplx w = w_or({-0.2, -0.6});
    out.params["p"] = o.p;
    out.params["w"] = W.cnum(w);
    out.result = vector_residual_json(qmf::cocycle_check_halfint(o.p, w, ctx), W);
  } else if (o.check == "weight32") {
    const ModelParams P(o.pplus, o.pminus);
    const cplx w = w_or({-0.3, -0.7});
    out.params = model_params(o);
    out.params["check"] = o.check;
    out.params["w"] = W.cnum(w);
    out.result = vector_residual_json(qmf::cocycle_check_weight32(P, w, ctx), W);
  } else if (o.check == "radial") {
    const rational x = parse_rational(o.x);
    out.params["p"] = o.p;
    out.params["j"] = o.j;
    out.params["x"] = std::to_string(x.numerator()) + "/" + std::to_string(x.denominator());
    auto R = qmf::radial_limit_check(o.j, o.p, x, o.deltas.empty() ? qmf::default_delta_schedule() : o.deltas, ctx);
    out.result = {{"upper", W.cnum(R.upper)}, {"lower", W.cnum(R.lower)}, {"difference", W.num(R.difference)}};
    out.diagnostics = {{"deltas", W.dvec(R.deltas)},
                       {"upper_values", W.cvec(R.upper_values)},
                       {"lower_values", W.cvec(R.lower_values)}};
  } else if (o.check == "chi") {
    const ModelParams P(o.pplus, o.pminus);
    out.params = model_params(o);
    out.params["check"] = o.check;
    json vals = json::array();
    double spread = 0;
    for (auto k : model::kac_table(P)) {
      cplx a = qmf::chi_tilde(P, k.r, k.s, ctx.tau, qmf::ChiForm::Weighted, ctx);
      cplx b = qmf::chi_tilde(P, k.r, k.s, ctx.tau, qmf::ChiForm::Difference, ctx);
      spread = std::max(spread, std::abs(a - b));
      vals.push_back({{"r", k.r}, {"s", k.s}, {"value", W.cnum(a)}});
    }
    out.result = {{"span_dimension", qmf::chi_tilde_span_dimension(P, ctx)}, {"values", vals}};
    out.diagnostics["form_difference"] = W.num(spread);
  } else {
    throw ValidationError("qmf --check must be halfint, weight32, radial or chi");
  }
  return out;
}

int cmd_selftest(const Options& o, const Writer& W, std::ostream& os) {
  std::vector<acceptance::CriterionResult> results;
  if (o.criterion != 0) results.push_back(acceptance::run_criterion(o.criterion));
  else results = acceptance::run_all();
  int failed = 0;
  for (auto& r : results) failed += !r.pass;
  if (o.format == "text") {
    for (auto& r : results) os << acceptance::format_line(r) << "\n";
    os << (results.size() - failed) << "/" << results.size() << " criteria passed\n";
  } else {
    json arr = json::array();
    for (auto& r : results)
      arr.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", W.num(r.seconds)}});
    json doc = {{"command", "selftest"},
                {"params", {{"criterion", o.criterion}}},
                {"context", json::object()},
                {"result", {{"criteria", arr}, {"passed", results.size() - failed}, {"total", results.size()}}},
                {"diagnostics", json::object()}};
    os << doc.dump(2) << "\n";
  }
  return failed ? 1 : 0;
}

json context_json(const EvalContext& ctx, const Writer& W) {
  return {{"tau", W.cnum(ctx.tau)},
          {"eps", W.cnum(ctx.eps)},
          {"series_tail_tol", W.num(ctx.series_tail_tol)},
          {"quad_abs_tol", W.num(ctx.quad_abs_tol)},
          {"quad_cutoff", W.num(ctx.quad_cutoff)},
          {"max_terms", ctx.max_terms},
          {"precision_digits", ctx.precision_digits}};
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"singlet: characters, modularity and fusion of singlet vertex algebras"};
  app.name("singlet");
  app.fallthrough();
  app.require_subcommand(1);
  Options o;

  app.add_option("--pplus", o.pplus, "p+ (1 for the (1,p) family)");
  app.add_option("--pminus", o.pminus, "p-");
  app.add_option("--label", o.label, "module label, e.g. I:1,2,0  F:0.3  L:1,2  K:1,2  I+:1,1,0");
  app.add_option("--tau", o.tau, "modular parameter re,im");
  app.add_option("--eps", o.eps, "regularisation parameter re,im");
  app.add_option("--tail-tol", o.tail_tol, "series tail tolerance");
  app.add_option("--quad-tol", o.quad_tol, "quadrature tolerance");
  app.add_option("--precision", o.precision, "output digits");
  app.add_option("--max-terms", o.max_terms, "series term cap");
  app.add_option("--config", o.config, "key=value config file");
  app.add_option("--format", o.format, "json, csv (qdim-scan) or text (selftest)");

  app.add_subcommand("char", "evaluate a character");
  app.add_subcommand("stransform", "S-transform residual");
  auto* qd = app.add_subcommand("qdim", "quantum dimension at one eps");
  qd->add_option("--mode", o.mode, "closed or numeric");
  qd->add_option("--y", o.y, "y schedule for numeric mode")->delimiter(',');
  auto* scan = app.add_subcommand("qdim-scan", "closed qdim over an eps grid");
  scan->add_option("--re-min", o.grid.re_min);
  scan->add_option("--re-max", o.grid.re_max);
  scan->add_option("--im-min", o.grid.im_min);
  scan->add_option("--im-max", o.grid.im_max);
  scan->add_option("--n-re", o.grid.n_re);
  scan->add_option("--n-im", o.grid.n_im);
  auto* fu = app.add_subcommand("fuse", "fusion product of two labels");
  fu->add_option("--a", o.a);
  fu->add_option("--b", o.b);
  auto* ve = app.add_subcommand("verlinde", "fusion tensor from an S-matrix");
  ve->add_option("--minimal", o.minimal, "p+ p-")->expected(2);
  ve->add_option("--wzw", o.wzw, "level k");
  auto* va = app.add_subcommand("variety", "fusion variety");
  va->add_option("--mode", o.mode, "singular, parametrize or uniformise");
  va->add_option("--t", o.t, "curve parameter re,im");
  auto* qm = app.add_subcommand("qmf", "quantum modular checks");
  qm->add_option("--check", o.check, "halfint, weight32, radial or chi");
  qm->add_option("--p", o.p);
  qm->add_option("--j", o.j);
  qm->add_option("--w", o.w, "lower half-plane point re,im");
  qm->add_option("--x", o.x, "rational h/k");
  qm->add_option("--deltas", o.deltas)->delimiter(',');
  auto* st = app.add_subcommand("selftest", "acceptance suite");
  st->add_option("--criterion", o.criterion, "run a single criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (o.format != "json" && !(o.format == "csv" && cmd == "qdim-scan") && !(o.format == "text" && cmd == "selftest"))
      throw ValidationError("--format " + o.format + " is not available for " + cmd);
    EvalContext ctx = resolve_context(o, app);
    Writer W;
    W.digits = std::min(ctx.precision_digits, 17);
    if (cmd == "selftest") return cmd_selftest(o, W, out);

    Output res;
    if (cmd == "char") res = cmd_char(o, ctx, W);
    else if (cmd == "stransform") res = cmd_stransform(o, ctx, W);
    else if (cmd == "qdim") res = cmd_qdim(o, ctx, W);
    else if (cmd == "qdim-scan") res = cmd_scan(o, ctx, W, out);
    else if (cmd == "fuse") res = cmd_fuse(o, ctx, W);
    else if (cmd == "verlinde") res = cmd_verlinde(o, ctx, W);
    else if (cmd == "variety") res = cmd_variety(o, ctx, W);
    else res = cmd_qmf(o, ctx, W);
    if (cmd == "qdim-scan" && o.format == "csv") return 0;

    json doc = {{"command", cmd},
                {"params", res.params},
                {"context", context_json(ctx, W)},
                {"result", res.result},
                {"diagnostics", res.diagnostics}};
    out << doc.dump(2) << "\n";
    return 0;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace singlet::cli
