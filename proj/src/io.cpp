#include "iwasawa/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "iwasawa/error.hpp"

namespace iwasawa::io {

namespace {

mpz_class parse_coefficient(const Json& c) {
  mpz_class out;
  if (c.is_number_integer()) return mpz_class(c.get<long>());
  if (!c.is_string() || out.set_str(c.get<std::string>(), 10) != 0) {
    throw InvalidInput("series coefficient must be a decimal string, got " + c.dump());
  }
  return out;
}

int parse_exponent(const Json& e) {
  if (!e.is_number_integer() || e.get<long>() < 0) throw InvalidInput("term exponent must be a non-negative integer");
  return e.get<int>();
}

void check_header(const Json& doc, const ContextPtr& ctx) {
  const DocumentHeader h = read_header(doc);
  if (h.p != ctx->prime()) {
    throw InvalidInput("document prime " + std::to_string(h.p) + " differs from p = " + std::to_string(ctx->prime()));
  }
}

template <class T>
T field(const Json& doc, const char* key) {
  if (!doc.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InvalidInput(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

DocumentHeader read_header(const Json& doc) {
  if (!doc.is_object()) throw InvalidInput("expected a JSON object");
  DocumentHeader h;
  const long p = field<long>(doc, "p");
  if (p <= 0 || !is_odd_prime(static_cast<unsigned>(p))) throw InvalidInput("p must be an odd prime");
  h.p = static_cast<unsigned>(p);
  if (doc.contains("precision")) h.precision = field<int>(doc, "precision");
  return h;
}

std::string valuation_text(const Valuation& v) { return v.to_string(); }

bool is_one_var(const Json& doc) {
  return doc.contains("vars") && doc.at("vars").is_array() && doc.at("vars").size() == 1;
}

Json to_json(const OneVarSeries& f) {
  Json doc;
  doc["p"] = f.context()->prime();
  doc["precision"] = f.context()->precision();
  doc["vars"] = Json::array({"T"});
  Json terms = Json::array();
  for (int i = 0; i <= f.degree(); ++i) {
    if (f.coefficient(i) != 0) terms.push_back(Json::array({i, f.context()->centered(f.coefficient(i)).get_str()}));
  }
  doc["terms"] = std::move(terms);
  if (f.truncation()) doc["trunc"] = *f.truncation();
  return doc;
}

Json to_json(const TwoVarSeries& f) {
  Json doc;
  doc["p"] = f.context()->prime();
  doc["precision"] = f.context()->precision();
  doc["vars"] = Json::array({"Tp", "Tq"});
  Json terms = Json::array();
  for (const auto& [ij, c] : f.terms()) {
    terms.push_back(Json::array({ij.first, ij.second, f.context()->centered(c).get_str()}));
  }
  doc["terms"] = std::move(terms);
  if (f.truncation()) doc["trunc"] = Json::array({f.truncation()->first, f.truncation()->second});
  return doc;
}

OneVarSeries one_var_from_json(const Json& doc, const ContextPtr& ctx) {
  check_header(doc, ctx);
  if (!is_one_var(doc)) throw InvalidInput("expected a one-variable series (\"vars\": [\"T\"])");
  std::optional<int> trunc;
  if (doc.contains("trunc")) trunc = field<int>(doc, "trunc");
  poly::Coeffs c;
  for (const auto& t : field<Json>(doc, "terms")) {
    if (!t.is_array() || t.size() != 2) throw InvalidInput("one-variable term must be [i, \"c\"]");
    const int i = parse_exponent(t[0]);
    if (c.size() <= static_cast<std::size_t>(i)) c.resize(i + 1, 0);
    c[i] += parse_coefficient(t[1]);
  }
  return OneVarSeries(ctx, std::move(c), trunc);
}

TwoVarSeries two_var_from_json(const Json& doc, const ContextPtr& ctx) {
  check_header(doc, ctx);
  if (is_one_var(doc)) {
    // A one-variable series read where two are expected lives in T_p.
    return TwoVarSeries::in_tp(one_var_from_json(doc, ctx));
  }
  TwoVarSeries::Truncation trunc;
  if (doc.contains("trunc")) {
    const auto t = field<std::vector<int>>(doc, "trunc");
    if (t.size() != 2) throw InvalidInput("two-variable trunc must be [Dp, Dq]");
    trunc = std::make_pair(t[0], t[1]);
  }
  TwoVarSeries f(ctx, trunc);
  for (const auto& t : field<Json>(doc, "terms")) {
    if (!t.is_array() || t.size() != 3) throw InvalidInput("two-variable term must be [i, j, \"c\"]");
    const int i = parse_exponent(t[0]);
    const int j = parse_exponent(t[1]);
    f.set(i, j, f.coefficient(i, j) + parse_coefficient(t[2]));
  }
  return f;
}

Json to_json(const LambdaPresentation& m) {
  Json doc;
  doc["p"] = m.ctx->prime();
  doc["precision"] = m.ctx->precision();
  doc["generators"] = m.generators;
  Json rels = Json::array();
  for (const auto& rel : m.relations) {
    Json row = Json::array();
    for (const auto& s : rel) row.push_back(to_json(s));
    rels.push_back(std::move(row));
  }
  doc["relations"] = std::move(rels);
  return doc;
}

LambdaPresentation presentation_from_json(const Json& doc, const ContextPtr& ctx) {
  check_header(doc, ctx);
  LambdaPresentation m{ctx, field<int>(doc, "generators"), {}};
  for (const auto& rel : field<Json>(doc, "relations")) {
    if (!rel.is_array()) throw InvalidInput("each relation must be an array of series");
    std::vector<TwoVarSeries> row;
    for (const auto& s : rel) row.push_back(two_var_from_json(s, ctx));
    m.relations.push_back(std::move(row));
  }
  m.validate();
  return m;
}

std::string scenario_key(Prime pr, Sign sg, int cls) {
  std::string k = pr == Prime::p ? "p_" : "q_";
  k += sg == Sign::sharp ? "sharp_" : "flat_";
  k += cls == 0 ? "c1" : "c2";
  return k;
}

Json to_json(const ColemanScenario& sc) {
  Json doc;
  doc["p"] = sc.ctx->prime();
  doc["ap"] = sc.ap;
  doc["precision"] = sc.ctx->precision();
  doc["twist"] = sc.twist;
  Json col = Json::object();
  for (int cls = 0; cls < 2; ++cls) {
    for (Prime pr : {Prime::p, Prime::q}) {
      for (Sign sg : {Sign::sharp, Sign::flat}) {
        const auto& slot = sc.col[static_cast<int>(pr)][static_cast<int>(sg)][cls];
        if (slot && !slot->is_zero()) col[scenario_key(pr, sg, cls)] = to_json(*slot);
      }
    }
  }
  doc["col"] = std::move(col);
  return doc;
}

ColemanScenario scenario_from_json(const Json& doc, const ContextPtr& ctx) {
  check_header(doc, ctx);
  ColemanScenario sc;
  sc.ctx = ctx;
  sc.ap = field<long>(doc, "ap");
  if (doc.contains("twist")) sc.twist = field<bool>(doc, "twist");
  const Json col = field<Json>(doc, "col");
  if (!col.is_object()) throw InvalidInput("'col' must be an object");
  for (const auto& [key, value] : col.items()) {
    bool known = false;
    for (int cls = 0; cls < 2 && !known; ++cls) {
      for (Prime pr : {Prime::p, Prime::q}) {
        for (Sign sg : {Sign::sharp, Sign::flat}) {
          if (scenario_key(pr, sg, cls) == key) {
            sc.at(pr, sg, cls) = two_var_from_json(value, ctx);
            known = true;
          }
        }
      }
    }
    if (!known) throw InvalidInput("unknown scenario entry '" + key + "'");
  }
  sc.validate();
  return sc;
}

Json to_json(const CyclotomicNumber& x) {
  Json doc;
  doc["level"] = x.level();
  Json coeffs = Json::array();
  for (std::size_t i = 0; i < x.coefficients().size(); ++i) coeffs.push_back(x.coefficient(i).to_string());
  doc["coeffs"] = std::move(coeffs);
  return doc;
}

Json to_json(const ProfileFit& fit) {
  Json doc;
  doc["a"] = fit.a;
  doc["b1"] = fit.b1;
  doc["c1"] = fit.c1;
  doc["b2"] = fit.b2;
  doc["c2"] = fit.c2;
  doc["n0"] = fit.n0;
  doc["gap"] = fit.gap;
  doc["residual_ok"] = fit.residual_ok;
  Json pts = Json::array();
  for (const auto& pt : fit.points) {
    pts.push_back(Json::array({pt.r, pt.s, pt.valuation ? pt.valuation->to_string() : std::string("zero")}));
  }
  doc["points"] = std::move(pts);
  return doc;
}

Json to_json(const RankFit& fit) {
  Json doc;
  doc["r_estimate"] = rational_to_string(Valuation::Rational(fit.r_numerator, fit.r_denominator));
  Json ranks = Json::array();
  for (const auto& [n, r] : fit.ranks) ranks.push_back(Json::array({n, r}));
  doc["ranks"] = std::move(ranks);
  doc["residual"] = rational_to_string(fit.residual);
  doc["precision_sensitive"] = fit.precision_sensitive;
  return doc;
}

Json to_json(const WeierstrassFactors& w) {
  Json doc;
  doc["mu"] = w.mu;
  doc["lambda"] = w.lambda();
  doc["unit"] = to_json(w.unit);
  doc["distinguished"] = to_json(w.distinguished);
  return doc;
}

Json to_json(const VanishingVerdict& v) {
  Json doc;
  doc["class"] = v.theta.to_string();
  doc["verdict"] = to_string(v.verdict);
  Json s = Json::array();
  for (const auto& x : v.summands) s.push_back(x ? x->to_string() : std::string("zero"));
  doc["summands"] = std::move(s);
  doc["distinct"] = v.distinct;
  doc["total"] = v.total ? v.total->to_string() : std::string("zero");
  doc["precision_sensitive"] = v.precision_sensitive;
  return doc;
}

Json to_json(const RankReport& rep) {
  Json doc;
  doc["p"] = rep.p;
  doc["ap"] = rep.ap;
  doc["precision"] = rep.precision;
  doc["twist"] = rep.twist;
  doc["offset_note"] = "B_n accumulates jump bounds from B_0 = 0; the unknown level-0 rank is an additive offset";
  Json levels = Json::array();
  for (const auto& lv : rep.levels) {
    Json l;
    l["n"] = lv.n;
    l["C_n"] = lv.c_n;
    l["jump_bound"] = lv.jump_bound;
    l["jump_cap"] = lv.jump_cap;
    l["B_n"] = lv.cumulative;
    l["indeterminate"] = lv.indeterminate;
    l["precision_sensitive"] = lv.precision_sensitive;
    Json xi = Json::array();
    for (const auto& v : lv.xi) xi.push_back(to_json(v));
    l["xi"] = std::move(xi);
    Json boundary = Json::array();
    for (const auto& c : lv.boundary) boundary.push_back(c.to_string());
    l["boundary_excluded"] = std::move(boundary);
    levels.push_back(std::move(l));
  }
  doc["levels"] = std::move(levels);
  doc["max_C_n"] = rep.max_c_n;
  doc["growth_constant"] = rational_to_string(rep.growth_constant);
  return doc;
}

std::string report_csv(const RankReport& rep) {
  std::ostringstream os;
  os << "n,C_n,jump_bound,B_n\n";
  for (const auto& lv : rep.levels) os << lv.n << ',' << lv.c_n << ',' << lv.jump_bound << ',' << lv.cumulative << '\n';
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content << std::flush;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp);
      throw InvalidInput("failed writing '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace iwasawa::io
