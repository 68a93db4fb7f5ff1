// iwrank: command-line front end for the iwasawa library.
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "iwasawa/error.hpp"
#include "iwasawa/generators.hpp"
#include "iwasawa/io.hpp"
#include "iwasawa/log_matrix.hpp"
#include "iwasawa/module_ranks.hpp"
#include "iwasawa/profile.hpp"
#include "iwasawa/rank_estimator.hpp"

using namespace iwasawa;
using io::Json;

namespace {

constexpr int kExitPrecision = 2;
constexpr int kExitInvalid = 3;

struct Global {
  std::optional<unsigned> p;
  long ap = 0;
  int nmax = 1;
  std::optional<int> precision;
  int guard = kDefaultGuard;
  unsigned threads = 0;
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 1;
};

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::precision_exhausted:
    case ErrorKind::truncation_insufficient:
    case ErrorKind::size_cap_exceeded:
      return kExitPrecision;
    default:
      return kExitInvalid;
  }
}

ContextPtr context_for(const Global& g, const Json* doc) {
  unsigned p = g.p.value_or(0);
  int precision = g.precision.value_or(kDefaultPrecision);
  if (doc) {
    const io::DocumentHeader h = io::read_header(*doc);
    if (g.p && *g.p != h.p) {
      throw InvalidInput("--p " + std::to_string(*g.p) + " disagrees with the input file (p = " + std::to_string(h.p) + ")");
    }
    p = h.p;
    if (!g.precision) precision = h.precision;
  }
  if (p == 0) throw InvalidInput("--p is required");
  return make_context(p, precision, g.guard);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void emit(const Global& g, const std::string& content) { io::write_output(g.out, content); }

void require_format(const Global& g, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (g.format == f) return;
  }
  throw InvalidInput("--format " + g.format + " is not supported by this command");
}

// ------------------------------------------------------------------ commands

int run_logmatrix(const Global& g, const std::string& convention_tag) {
  require_format(g, {"csv", "json"});
  const ContextPtr ctx = context_for(g, nullptr);
  check_ap(ctx->prime(), g.ap);
  if (g.nmax < 1) throw InvalidInput("--nmax must be at least 1");
  Convention conv = kDefaultConvention;
  ConventionResolution res;
  if (convention_tag == "auto") {
    res = resolve_convention(ctx, g.ap, g.nmax);
    conv = res.chosen;
  } else {
    bool found = false;
    for (const auto& c : Convention::all()) {
      if (c.tag() == convention_tag) {
        conv = c;
        found = true;
      }
    }
    if (!found) throw InvalidInput("unknown convention '" + convention_tag + "'");
  }
  struct Row {
    int n;
    ValuationPair direct, formula;
  };
  std::vector<Row> rows;
  for (int n = 1; n <= g.nmax; ++n) {
    rows.push_back({n, h_valuation_direct(ctx, g.ap, n, conv), h_valuation_formula(ctx->prime(), n)});
  }
  if (g.format == "csv") {
    std::ostringstream os;
    os << "n,sharp_val_num,sharp_val_den,flat_val_num,flat_val_den,formula_sharp,formula_flat,match\n";
    for (const auto& r : rows) {
      os << r.n << ',' << r.direct.first.numerator() << ',' << r.direct.first.denominator() << ','
         << r.direct.second.numerator() << ',' << r.direct.second.denominator() << ',' << r.formula.first << ','
         << r.formula.second << ',' << (r.direct == r.formula ? "true" : "false") << '\n';
    }
    emit(g, os.str());
    return 0;
  }
  Json doc;
  doc["p"] = ctx->prime();
  doc["ap"] = g.ap;
  doc["convention"] = conv.tag();
  Json table = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["n"] = r.n;
    row["sharp"] = r.direct.first.to_string();
    row["flat"] = r.direct.second.to_string();
    row["formula_sharp"] = r.formula.first.to_string();
    row["formula_flat"] = r.formula.second.to_string();
    row["match"] = r.direct == r.formula;
    table.push_back(std::move(row));
  }
  doc["levels"] = std::move(table);
  if (!res.scores.empty()) {
    Json scores = Json::object();
    for (const auto& s : res.scores) scores[s.convention.tag()] = s.matching_levels;
    doc["convention_scores"] = std::move(scores);
    doc["unresolved_levels"] = res.unresolved_levels;
  }
  emit(g, dump(doc));
  return 0;
}

int run_rankbound(const Global& g, const std::string& path) {
  require_format(g, {"csv", "json"});
  const Json doc = io::read_json_file(path);
  const ContextPtr ctx = context_for(g, &doc);
  const ColemanScenario sc = io::scenario_from_json(doc, ctx);
  if (g.nmax < 1) throw InvalidInput("--nmax must be at least 1");
  const RankReport rep = cumulative_bound(sc, g.nmax, g.threads);
  emit(g, g.format == "csv" ? io::report_csv(rep) : dump(io::to_json(rep)));
  return 0;
}

int run_coinv(const Global& g, const std::string& path, int n, const std::string& method) {
  require_format(g, {"json"});
  if (method != "direct" && method != "charsum" && method != "both") {
    throw InvalidInput("--method must be direct, charsum or both");
  }
  const Json doc = io::read_json_file(path);
  const ContextPtr ctx = context_for(g, &doc);
  const LambdaPresentation m = io::presentation_from_json(doc, ctx);
  Json out;
  out["n"] = n;
  int code = 0;
  std::optional<std::int64_t> direct, charsum;
  if (method != "direct") {
    const RankResult r = coinv_rank_charsum(m, n, g.threads);
    charsum = r.rank;
    out["charsum"] = r.rank;
    out["charsum_precision_sensitive"] = r.precision_sensitive;
  }
  if (method != "charsum") {
    try {
      const RankResult r = coinv_rank_direct(m, n);
      direct = r.rank;
      out["direct"] = r.rank;
      out["direct_precision_sensitive"] = r.precision_sensitive;
    } catch (const Error& e) {
      // With both methods the character sum still reports; the exit code carries the failure.
      if (method == "direct") throw;
      out["direct"] = nullptr;
      out["direct_error"] = std::string(to_string(e.kind())) + ": " + e.what();
      std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
      code = exit_code(e.kind());
    }
  }
  if (direct && charsum) out["agreement"] = *direct == *charsum;
  emit(g, dump(out));
  return code;
}

int run_eval(const Global& g, const std::string& path, const std::string& theta_text) {
  require_format(g, {"json"});
  const Json doc = io::read_json_file(path);
  const ContextPtr ctx = context_for(g, &doc);
  const CharacterClass theta = parse_class(ctx->prime(), theta_text);
  const CyclotomicNumber v = io::is_one_var(doc) ? eval_at_character(io::one_var_from_json(doc, ctx), theta)
                                                 : eval_at_character(io::two_var_from_json(doc, ctx), theta);
  const ZeroTest z = zero_test(v);
  Json out;
  out["class"] = theta.to_string();
  out["degree"] = class_degree(ctx->prime(), theta);
  out["value"] = io::to_json(v);
  out["valuation"] = z.numerically_zero ? std::string("zero") : z.valuation.to_string();
  out["exactly_zero"] = z.exactly_zero;
  out["precision_sensitive"] = z.precision_sensitive;
  emit(g, dump(out));
  return 0;
}

int run_weierstrass(const Global& g, const std::string& path, std::optional<int> trunc) {
  require_format(g, {"json"});
  const Json doc = io::read_json_file(path);
  const ContextPtr ctx = context_for(g, &doc);
  const OneVarSeries f = io::one_var_from_json(doc, ctx);
  emit(g, dump(io::to_json(weierstrass_prepare(f, trunc))));
  return 0;
}

int run_profile(const Global& g, const std::string& path, const ProfileGrid& grid) {
  require_format(g, {"json"});
  const Json doc = io::read_json_file(path);
  const ContextPtr ctx = context_for(g, &doc);
  const TwoVarSeries f = io::two_var_from_json(doc, ctx);
  emit(g, dump(io::to_json(valuation_profile(f, grid, g.threads))));
  return 0;
}

int run_harris(const Global& g, const std::string& path) {
  require_format(g, {"json"});
  const Json doc = io::read_json_file(path);
  const ContextPtr ctx = context_for(g, &doc);
  const LambdaPresentation m = io::presentation_from_json(doc, ctx);
  if (g.nmax < 0) throw InvalidInput("--nmax must be non-negative");
  emit(g, dump(io::to_json(harris_fit(m, g.nmax, g.threads))));
  return 0;
}

int run_gen_scenario(const Global& g, const std::string& kind) {
  require_format(g, {"json"});
  const ContextPtr ctx = context_for(g, nullptr);
  emit(g, dump(io::to_json(gen::scenario(ctx, g.ap, kind, g.seed))));
  return 0;
}

int run_gen_module(const Global& g, int degree) {
  require_format(g, {"json"});
  const ContextPtr ctx = context_for(g, nullptr);
  emit(g, dump(io::to_json(gen::random_cyclic_module(ctx, g.seed, degree))));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact p-adic tools for logarithm matrices, character values and coinvariant ranks"};
  app.require_subcommand(1);
  Global g;
  unsigned p_flag = 0;
  int precision_flag = 0;
  auto* p_opt = app.add_option("--p", p_flag, "odd prime")->envname("IWRANK_P");
  app.add_option("--ap", g.ap, "a_p, a non-zero multiple of p")->envname("IWRANK_AP");
  app.add_option("--nmax", g.nmax, "highest level")->envname("IWRANK_NMAX");
  auto* prec_opt = app.add_option("--precision", precision_flag, "working precision N in base-p digits")
                       ->envname("IWRANK_PRECISION");
  app.add_option("--guard", g.guard, "guard digits g; values of valuation >= N - g count as zero")
      ->envname("IWRANK_GUARD");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)")->envname("IWRANK_THREADS");
  app.add_option("--format", g.format, "json or csv")->envname("IWRANK_FORMAT");
  app.add_option("--out", g.out, "output file (default stdout)")->envname("IWRANK_OUT");
  app.add_option("--seed", g.seed, "seed for generated inputs")->envname("IWRANK_SEED");
  app.fallthrough();

  std::string convention = "desc-fwd-id";
  auto* logmatrix = app.add_subcommand("logmatrix", "H-row valuations against the closed form");
  logmatrix->add_option("--convention", convention, "product convention tag, or 'auto'");

  std::string scenario_path;
  auto* rankbound = app.add_subcommand("rankbound", "Xi_n counts and the cumulative rank bound");
  rankbound->add_option("--scenario", scenario_path, "scenario JSON")->required();

  std::string module_path, method = "both";
  int coinv_n = 1;
  auto* coinv = app.add_subcommand("coinv", "Z_p-rank of Gamma_n-coinvariants");
  coinv->add_option("--module", module_path, "presentation JSON")->required();
  coinv->add_option("--n", coinv_n, "level")->required();
  coinv->add_option("--method", method, "direct, charsum or both");

  std::string series_path, theta;
  auto* eval = app.add_subcommand("eval", "series value at a character class");
  eval->add_option("--series", series_path, "series JSON")->required();
  eval->add_option("--theta", theta, "class literal r,s,e")->required();

  std::optional<int> wtrunc;
  auto* weier = app.add_subcommand("weierstrass", "Weierstrass preparation of a one-variable series");
  weier->add_option("--series", series_path, "series JSON")->required();
  weier->add_option("--trunc", wtrunc, "unit truncation degree for polynomial input");

  ProfileGrid grid;
  auto* profile = app.add_subcommand("profile", "valuation-profile fit on a grid of classes");
  profile->add_option("--series", series_path, "series JSON")->required();
  profile->add_option("--rmax", grid.r_max, "largest r");
  profile->add_option("--smax", grid.s_max, "largest s");
  profile->add_option("--gap", grid.min_gap, "smallest gap tried");

  auto* harris = app.add_subcommand("harris", "growth fit rank_n = r p^(2n) + O(p^n)");
  harris->add_option("--module", module_path, "presentation JSON")->required();

  std::string kind = "sharp-unit";
  auto* gen_sc = app.add_subcommand("gen-scenario", "write a scenario file");
  gen_sc->add_option("--kind", kind, "sharp-unit, phi1, unit-dets or random");

  int gen_degree = 3;
  auto* gen_mod = app.add_subcommand("gen-module", "write a random cyclic presentation Lambda/(f)");
  gen_mod->add_option("--degree", gen_degree, "bidegree bound of f");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalid;
  }
  if (p_opt->count() > 0 || std::getenv("IWRANK_P")) g.p = p_flag;
  if (prec_opt->count() > 0 || std::getenv("IWRANK_PRECISION")) g.precision = precision_flag;

  try {
    if (*logmatrix) return run_logmatrix(g, convention);
    if (*rankbound) return run_rankbound(g, scenario_path);
    if (*coinv) return run_coinv(g, module_path, coinv_n, method);
    if (*eval) return run_eval(g, series_path, theta);
    if (*weier) return run_weierstrass(g, series_path, wtrunc);
    if (*profile) return run_profile(g, series_path, grid);
    if (*harris) return run_harris(g, module_path);
    if (*gen_sc) return run_gen_scenario(g, kind);
    if (*gen_mod) return run_gen_module(g, gen_degree);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
