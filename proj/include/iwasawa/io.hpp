#pragma once

#include <string>

#include <json.hpp>

#include "iwasawa/log_matrix.hpp"
#include "iwasawa/module_ranks.hpp"
#include "iwasawa/profile.hpp"
#include "iwasawa/rank_estimator.hpp"
#include "iwasawa/series.hpp"

namespace iwasawa::io {

using Json = nlohmann::ordered_json;

/// Precision a document asks for; the guard always comes from the caller.
struct DocumentHeader {
  unsigned p = 0;
  int precision = kDefaultPrecision;
};

DocumentHeader read_header(const Json& doc);

/// Series documents: {"p", "precision", "vars": ["Tp","Tq"] or ["T"],
/// "terms": [[i, j, "c"], ...] or [[i, "c"], ...], optional "trunc"}.
/// Coefficients are written as centered decimal strings, terms sorted.
Json to_json(const OneVarSeries& f);
Json to_json(const TwoVarSeries& f);
OneVarSeries one_var_from_json(const Json& doc, const ContextPtr& ctx);
TwoVarSeries two_var_from_json(const Json& doc, const ContextPtr& ctx);
/// True when the document declares a single variable.
bool is_one_var(const Json& doc);

Json to_json(const LambdaPresentation& m);
LambdaPresentation presentation_from_json(const Json& doc, const ContextPtr& ctx);

Json to_json(const ColemanScenario& sc);
/// Parses and validates (missing entries are zero).
ColemanScenario scenario_from_json(const Json& doc, const ContextPtr& ctx);
/// Key of col[prime][sign][cls], e.g. "p_sharp_c1".
std::string scenario_key(Prime pr, Sign sg, int cls);

Json to_json(const CyclotomicNumber& x);
Json to_json(const ProfileFit& fit);
Json to_json(const RankFit& fit);
Json to_json(const WeierstrassFactors& w);
Json to_json(const VanishingVerdict& v);
Json to_json(const RankReport& rep);
std::string report_csv(const RankReport& rep);

/// "num/den" for finite valuations, "inf" otherwise.
std::string valuation_text(const Valuation& v);

Json read_json_file(const std::string& path);
/// Writes to a temporary sibling and renames it into place; "-" or "" means stdout.
void write_output(const std::string& path, const std::string& content);

}  // namespace iwasawa::io
