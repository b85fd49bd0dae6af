#include "leechps/eval.hpp"

#include <algorithm>
#include <cmath>

#include "leechps/error.hpp"

namespace leechps {

void TruncationPolicy::validate() const {
  if (n_max < 0) throw UsageError("truncation policy: nMax must be >= 0");
  if (!(lambda_radius_sq >= 0.0)) throw UsageError("truncation policy: lambdaRadiusSq must be >= 0");
  if (!(quad_tol > 0.0) || !(tol > 0.0)) throw UsageError("truncation policy: tolerances must be positive");
}

const char* tail_kind_name(TailKind k) {
  switch (k) {
    case TailKind::kRigorous: return "rigorous";
    case TailKind::kHeuristic: return "heuristic";
    case TailKind::kNone: return "none";
  }
  return "none";
}

bool EvalResult::has_flag(const std::string& f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

void EvalResult::add_flag(const std::string& f) {
  if (!has_flag(f)) flags.push_back(f);
}

nlohmann::json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

nlohmann::json to_json(const TruncationPolicy& p) {
  return {{"nMax", p.n_max}, {"lambdaRadiusSq", p.lambda_radius_sq}, {"quadTol", p.quad_tol},
          {"tol", p.tol}};
}

nlohmann::json to_json(const EvalResult& r, bool include_runtime) {
  nlohmann::json heights = nlohmann::json::array();
  for (const auto& h : r.heights)
    heights.push_back({{"n", h.n}, {"count", h.count}, {"subtotal", complex_json(h.subtotal)},
                       {"radiusSq", h.radius_sq}});
  nlohmann::json j{{"value", complex_json(r.value)},
                   {"method", r.method},
                   {"terms", r.terms},
                   {"tailEstimate", std::isfinite(r.tail_estimate) ? nlohmann::json(r.tail_estimate)
                                                                   : nlohmann::json(nullptr)},
                   {"tailKind", tail_kind_name(r.tail_kind)},
                   {"heights", heights},
                   {"flags", r.flags},
                   {"policy", to_json(r.policy)}};
  if (!r.extra.empty()) j["extra"] = r.extra;
  if (include_runtime) j["runtimeMs"] = r.runtime_ms;
  return j;
}

}  // namespace leechps
