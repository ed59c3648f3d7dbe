#include "qdet/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qdet/geninv.hpp"
#include "qdet/kernels.hpp"
#include "qdet/qmat_io.hpp"
#include "qdet/verify.hpp"

namespace qdet::cli {
namespace {

struct Options {
  std::string input;
  std::string weight;
  std::string candidate;
  std::string anchor = "r:1";
  std::string route;
  std::string kind;
  std::string mode;
  std::string emit = "text";
  std::optional<std::size_t> max_n;
  std::optional<double> lambda;
  double tol = 1e-9;
  bool check = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

struct Context {
  const Options& opt;
  std::ostream& out;
  ncdet::Limits limits;
  bool kv() const { return opt.emit == "kv"; }
};

std::size_t guard_from(const Options& opt) {
  if (opt.max_n) return *opt.max_n;
  if (const char* env = std::getenv("QDET_MAX_N"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw UsageError(std::string("QDET_MAX_N must be a nonnegative integer, got '") + env + "'");
    }
  }
  return ncdet::Limits{}.max_order;
}

Mode resolve_mode(const Options& opt, const QmatFile& f) {
  if (opt.mode.empty()) return f.mode;
  if (opt.mode == "float") return Mode::floating;
  if (f.mode == Mode::floating) throw UsageError("--mode exact requested but the input contains decimal literals");
  return Mode::exact;
}

template <Scalar T>
const QMatrix<T>& as(const QmatFile& f) {
  if constexpr (std::is_same_v<T, Rational>)
    return f.exact;
  else
    return f.approx;
}

template <Scalar T>
void emit_matrix(const Context& ctx, const QMatrix<T>& x) {
  if (!ctx.kv()) {
    ctx.out << format_qmat(x);
    return;
  }
  ctx.out << "result.rows = " << x.rows() << "\n" << "result.cols = " << x.cols() << "\n";
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      ctx.out << "entry." << i + 1 << "." << j + 1 << " = " << to_literal(x(i, j)) << "\n";
}

void emit_report(const Context& ctx, verify::VerifyReport rep, const std::string& provenance,
                 const std::string& kv_prefix) {
  rep.provenance = provenance;
  ctx.out << (ctx.kv() ? rep.to_kv(kv_prefix) : rep.to_text());
}

// Report lines are '%' comments in text mode so result matrices stay re-ingestible.
void emit_info(const Context& ctx, const std::string& key, const std::string& value, bool comment = true) {
  ctx.out << (ctx.kv() || !comment ? "" : "% ") << key << " = " << value << "\n";
}

std::string scientific(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

template <Scalar T>
verify::VerifyReport check(const std::string& kind, const QMatrix<T>& a, const QMatrix<T>* w, const QMatrix<T>& x,
                           const Options& opt) {
  const verify::CheckOptions co{opt.tol};
  if (kind == "mp") return verify::check_penrose(a, x, co);
  if (kind == "drazin") return verify::check_drazin(a, x, co);
  return verify::check_wdrazin(a, *w, x, co);
}

// Prints one route's result (optionally checked), or all routes with
// agreement and a check per computed route.
template <Scalar T>
int finish(const Context& ctx, const std::string& kind, const std::vector<geninv::RouteOutcome<T>>& outcomes,
           bool all, const QMatrix<T>& a, const QMatrix<T>* w) {
  const bool checking = ctx.opt.check || all;
  const geninv::RouteOutcome<T>* first = nullptr;
  for (const auto& o : outcomes)
    if (o.value && first == nullptr) first = &o;
  if (first == nullptr) throw PreconditionError("no applicable route");

  emit_matrix(ctx, *first->value);
  bool ok = true;
  if (all) {
    for (const auto& o : outcomes)
      emit_info(ctx, "route." + o.route, o.value ? "computed" : "refused (" + o.refusal + ")");
    const bool agree = geninv::outcomes_agree(outcomes, ctx.opt.tol);
    emit_info(ctx, "routes.agree", agree ? "true" : "false");
    ok = agree;
  } else {
    emit_info(ctx, "route", first->route);
  }
  if (checking) {
    for (const auto& o : outcomes) {
      if (!o.value) continue;
      const verify::VerifyReport rep = check(kind, a, w, *o.value, ctx.opt);
      emit_report(ctx, rep, "route " + o.route, all ? "check." + o.route : "check");
      ok = ok && rep.passed();
    }
  }
  return ok ? ExitCode::ok : ExitCode::check_failed;
}

template <Scalar T>
int run_det(const Context& ctx, const QMatrix<T>& a) {
  const std::string& anchor = ctx.opt.anchor;
  const auto colon = anchor.find(':');
  std::size_t index = 0;
  const std::string side = anchor.substr(0, colon);
  try {
    if (colon == std::string::npos || (side != "r" && side != "c")) throw std::invalid_argument(anchor);
    std::size_t used = 0;
    index = std::stoul(anchor.substr(colon + 1), &used);
    if (used != anchor.size() - colon - 1) throw std::invalid_argument(anchor);
  } catch (const std::exception&) {
    throw UsageError("--anchor must be r:<i> or c:<j> (1-based), got '" + anchor + "'");
  }
  if (!a.is_square()) throw UsageError("det requires a square matrix");
  if (index < 1 || index > a.rows())
    throw UsageError("anchor index " + std::to_string(index) + " is outside 1.." + std::to_string(a.rows()));
  const Quaternion<T> value =
      side == "r" ? ncdet::rdet(index - 1, a, ctx.limits) : ncdet::cdet(index - 1, a, ctx.limits);
  const std::string name = (side == "r" ? "rdet." : "cdet.") + std::to_string(index);
  if (ctx.kv())
    ctx.out << "det.kind = " << (side == "r" ? "rdet" : "cdet") << "\ndet.anchor = " << index
            << "\ndet.value = " << to_literal(value) << "\n";
  else
    ctx.out << name << " = " << to_literal(value) << "\n";
  return ExitCode::ok;
}

template <Scalar T>
int run_mp(const Context& ctx, const QMatrix<T>& a) {
  const std::string route = ctx.opt.route.empty() ? "cdet" : ctx.opt.route;
  if (route == "all") return finish(ctx, "mp", geninv::mp_all_routes(a, ctx.limits), true, a, static_cast<const QMatrix<T>*>(nullptr));
  const auto r = geninv::parse_mp_route(route);
  if (!r) throw UsageError("unknown mp route '" + route + "' (cdet, rdet, all)");
  std::vector<geninv::RouteOutcome<T>> one{{route, geninv::mp_inverse(a, *r, ctx.limits), {}}};
  return finish(ctx, "mp", one, false, a, static_cast<const QMatrix<T>*>(nullptr));
}

template <Scalar T>
int run_drazin(const Context& ctx, const QMatrix<T>& a) {
  if (!a.is_square()) throw UsageError("drazin requires a square matrix");
  const std::string route = ctx.opt.route.empty() ? "cdet" : ctx.opt.route;
  if (route == "all") return finish(ctx, "drazin", geninv::drazin_all_routes(a, ctx.limits), true, a, static_cast<const QMatrix<T>*>(nullptr));
  const auto r = geninv::parse_drazin_route(route);
  if (!r)
    throw UsageError("unknown drazin route '" + route +
                     "' (mp_composition, cdet, rdet, hermitian_cdet, hermitian_rdet, all)");
  std::vector<geninv::RouteOutcome<T>> one{{route, geninv::drazin(a, *r, ctx.limits), {}}};
  return finish(ctx, "drazin", one, false, a, static_cast<const QMatrix<T>*>(nullptr));
}

void emit_limit(const Context& ctx, const QMatrixD& a, const QMatrixD& w, const QMatrixD& exact) {
  const geninv::LimitEstimate est = geninv::wdrazin_limit_estimate(a, w, *ctx.opt.lambda);
  std::ostringstream lam;
  lam << *ctx.opt.lambda;
  for (const auto& [name, m] : {std::pair<std::string, const QMatrixD*>{"via_aw", &est.via_aw}, {"via_wa", &est.via_wa}}) {
    if (ctx.kv()) {
      for (std::size_t i = 0; i < m->rows(); ++i)
        for (std::size_t j = 0; j < m->cols(); ++j)
          ctx.out << "limit." << name << "." << i + 1 << "." << j + 1 << " = " << to_literal((*m)(i, j)) << "\n";
    } else {
      ctx.out << "% limit " << name << " at lambda = " << lam.str() << ":\n";
      std::istringstream rows(format_qmat(*m));
      std::string line;
      std::getline(rows, line);
      while (std::getline(rows, line)) ctx.out << "%   " << line << "\n";
    }
    emit_info(ctx, "limit." + name + ".distance", scientific(max_abs_difference(*m, exact)));
  }
}

template <Scalar T>
int run_wdrazin(const Context& ctx, const QMatrix<T>& a, const QMatrix<T>& w) {
  geninv::weighted_setup(a, w);
  const std::string route = ctx.opt.route.empty() ? "via_drazin_U" : ctx.opt.route;
  std::vector<geninv::RouteOutcome<T>> outcomes;
  const bool all = route == "all";
  if (all) {
    outcomes = geninv::wdrazin_all_routes(a, w, ctx.limits);
  } else {
    const auto r = geninv::parse_wdrazin_route(route);
    if (!r)
      throw UsageError("unknown wdrazin route '" + route +
                       "' (via_drazin_U, via_drazin_V, mp_route_V, mp_route_U, hermitian_V, hermitian_U, all)");
    outcomes.push_back({route, geninv::wdrazin(a, w, *r, ctx.limits), {}});
  }
  const int code = finish(ctx, "wdrazin", outcomes, all, a, &w);
  if (ctx.opt.lambda) {
    const QMatrix<T>& exact = *outcomes.front().value;
    if constexpr (std::is_same_v<T, Rational>)
      emit_limit(ctx, to_double(a), to_double(w), to_double(exact));
    else
      emit_limit(ctx, a, w, exact);
  }
  return code;
}

template <Scalar T>
int run_verify(const Context& ctx, const QMatrix<T>& a, const QMatrix<T>* w, const QMatrix<T>& x) {
  const std::string& kind = ctx.opt.kind;
  if (kind == "wdrazin" && w == nullptr) throw UsageError("verify --kind wdrazin needs --weight");
  const verify::VerifyReport rep = check(kind, a, w, x, ctx.opt);
  emit_report(ctx, rep, "candidate " + ctx.opt.candidate, "check");
  return rep.passed() ? ExitCode::ok : ExitCode::check_failed;
}

template <Scalar T>
void emit_matrix_info(const Context& ctx, const std::string& name, const QMatrix<T>& m) {
  emit_info(ctx, name + ".rows", std::to_string(m.rows()), false);
  emit_info(ctx, name + ".cols", std::to_string(m.cols()), false);
  emit_info(ctx, name + ".rank", std::to_string(rank(m)), false);
  if (m.is_square()) emit_info(ctx, name + ".index", std::to_string(index_of(m)), false);
  emit_info(ctx, name + ".hermitian", m.is_hermitian() ? "true" : "false", false);
}

template <Scalar T>
int run_info(const Context& ctx, const QMatrix<T>& a, const QMatrix<T>* w) {
  emit_info(ctx, "mode", std::is_same_v<T, Rational> ? "exact" : "float", false);
  emit_info(ctx, "kernels", std::string(kernels::isa_name(kernels::active_isa())), false);
  emit_info(ctx, "guard", std::to_string(ctx.limits.max_order), false);
  emit_matrix_info(ctx, "A", a);
  if (w != nullptr) {
    const geninv::WeightedSetup<T> s = geninv::weighted_setup(a, *w);
    emit_matrix_info(ctx, "W", *w);
    emit_matrix_info(ctx, "AW", s.v);
    emit_matrix_info(ctx, "WA", s.u);
    emit_info(ctx, "k", std::to_string(s.k), false);
  }
  return ExitCode::ok;
}

template <Scalar T>
int dispatch(const std::string& command, const Context& ctx, const QmatFile& a, const QmatFile* w,
             const QmatFile* candidate) {
  const QMatrix<T>& am = as<T>(a);
  const QMatrix<T>* wm = w != nullptr ? &as<T>(*w) : nullptr;
  if (command == "det") return run_det(ctx, am);
  if (command == "mp") return run_mp(ctx, am);
  if (command == "drazin") return run_drazin(ctx, am);
  if (command == "wdrazin") return run_wdrazin(ctx, am, *wm);
  if (command == "verify") return run_verify(ctx, am, wm, as<T>(*candidate));
  return run_info(ctx, am, wm);
}

void add_common(CLI::App* sub, Options& opt, bool needs_weight) {
  sub->add_option("--input,-i", opt.input, "quaternion matrix file")->required();
  auto* w = sub->add_option("--weight,-w", opt.weight, "weight matrix file W");
  if (needs_weight) w->required();
  sub->add_option("--mode", opt.mode, "exact or float (default: the file's mode)")
      ->check(CLI::IsMember({"exact", "float"}));
  sub->add_option("--max-n", opt.max_n, "largest determinant order to enumerate (default 8, env QDET_MAX_N)");
  sub->add_option("--emit", opt.emit, "text or kv")->check(CLI::IsMember({"text", "kv"}));
  sub->add_option("--tol", opt.tol, "float-mode residual threshold for checks (default 1e-9)");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Quaternion row/column determinants and generalized inverses", "qdet"};
  app.require_subcommand(1);

  auto* det = app.add_subcommand("det", "row or column determinant");
  add_common(det, opt, false);
  det->add_option("--anchor", opt.anchor, "r:<i> for rdet_i or c:<j> for cdet_j, 1-based (default r:1)");

  auto* mp = app.add_subcommand("mp", "Moore-Penrose inverse");
  add_common(mp, opt, false);
  mp->add_option("--route", opt.route, "cdet, rdet or all (default cdet)");
  mp->add_flag("--check", opt.check, "verify the Penrose equations");

  auto* dr = app.add_subcommand("drazin", "Drazin inverse");
  add_common(dr, opt, false);
  dr->add_option("--route", opt.route, "mp_composition, cdet, rdet, hermitian_cdet, hermitian_rdet or all");
  dr->add_flag("--check", opt.check, "verify the Drazin equations");

  auto* wd = app.add_subcommand("wdrazin", "W-weighted Drazin inverse");
  add_common(wd, opt, true);
  wd->add_option("--route", opt.route,
                 "via_drazin_U, via_drazin_V, mp_route_V, mp_route_U, hermitian_V, hermitian_U or all");
  wd->add_flag("--check", opt.check, "verify the W-weighted Drazin equations");
  wd->add_option("--lambda", opt.lambda, "also print both resolvent limit estimates at this lambda");

  auto* ve = app.add_subcommand("verify", "check a candidate inverse against the defining equations");
  add_common(ve, opt, false);
  ve->add_option("--kind", opt.kind, "mp, drazin or wdrazin")->required()->check(CLI::IsMember({"mp", "drazin", "wdrazin"}));
  ve->add_option("--candidate,-x", opt.candidate, "candidate inverse file")->required();

  auto* info = app.add_subcommand("info", "dimensions, ranks, indices and Hermitian flags");
  add_common(info, opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? ExitCode::ok : ExitCode::usage_error;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    Context ctx{opt, out, ncdet::Limits{guard_from(opt)}};
    const QmatFile a = read_qmat_file(opt.input);
    std::optional<QmatFile> w, x;
    if (!opt.weight.empty()) w = read_qmat_file(opt.weight);
    if (!opt.candidate.empty()) x = read_qmat_file(opt.candidate);

    Mode mode = resolve_mode(opt, a);
    // A float weight or candidate forces float mode unless exact was requested.
    for (const auto* f : {w ? &*w : nullptr, x ? &*x : nullptr}) {
      if (f == nullptr || f->mode == Mode::exact) continue;
      if (opt.mode == "exact") throw UsageError("--mode exact requested but an input contains decimal literals");
      mode = Mode::floating;
    }
    const QmatFile* wp = w ? &*w : nullptr;
    const QmatFile* xp = x ? &*x : nullptr;
    return mode == Mode::exact ? dispatch<Rational>(command, ctx, a, wp, xp)
                               : dispatch<double>(command, ctx, a, wp, xp);
  } catch (const UsageError& e) {
    err << "qdet: " << e.what() << "\n";
    return ExitCode::usage_error;
  } catch (const ParseError& e) {
    err << "qdet: " << e.what() << "\n";
    return ExitCode::usage_error;
  } catch (const DimensionError& e) {
    err << "qdet: " << e.what() << "\n";
    return ExitCode::usage_error;
  } catch (const GuardExceeded& e) {
    err << "qdet: " << e.what() << "\n";
    return ExitCode::refused;
  } catch (const PreconditionError& e) {
    err << "qdet: refused: " << e.what() << "\n";
    return ExitCode::refused;
  } catch (const DivisionByZero& e) {
    err << "qdet: refused: " << e.what() << "\n";
    return ExitCode::refused;
  } catch (const InconsistencyError& e) {
    err << "qdet: inconsistency: " << e.what() << "\n";
    return ExitCode::check_failed;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"qdet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace qdet::cli
