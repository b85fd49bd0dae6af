#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leechps/error.hpp"
#include "leechps/numeric.hpp"

namespace leechps {

// Truncation data for the series evaluators.
struct TruncationPolicy {
  std::int64_t n_max = 8;           // cutoff of the n-sums (heights / moduli)
  double lambda_radius_sq = 4.0;    // explicit lambda shell radius for Fourier sums
  double quad_tol = 1e-12;          // relative tolerance of inner quadratures
  double tol = 1e-7;                // relative target for the omitted tail

  void validate() const;
};

struct HeightTerm {
  std::int64_t n = 0;
  std::uint64_t count = 0;
  Complex subtotal{};
  double radius_sq = 0.0;  // ball radius used at this height (in l/n units)
};

enum class TailKind { kRigorous, kHeuristic, kNone };
const char* tail_kind_name(TailKind k);

// Value of a truncated series plus what is known about the omitted part.
struct EvalResult {
  Complex value{};
  double tail_estimate = 0.0;
  TailKind tail_kind = TailKind::kRigorous;
  std::uint64_t terms = 0;
  std::vector<HeightTerm> heights;
  std::vector<std::string> flags;  // e.g. "formal", "no-tail-bound"
  TruncationPolicy policy;
  std::string method;
  double runtime_ms = 0.0;
  nlohmann::json extra = nlohmann::json::object();

  bool has_flag(const std::string& f) const;
  void add_flag(const std::string& f);
};

nlohmann::json to_json(const EvalResult& r, bool include_runtime = true);
nlohmann::json to_json(const TruncationPolicy& p);
nlohmann::json complex_json(Complex z);

}  // namespace leechps

namespace leechps {

// A budget ran out mid-evaluation; carries what had been summed so far.
class PartialEvaluation : public ResourceError {
 public:
  PartialEvaluation(const std::string& what, EvalResult partial)
      : ResourceError(what, partial.terms), partial_(std::move(partial)) {}
  const EvalResult& partial() const noexcept { return partial_; }

 private:
  EvalResult partial_;
};

}  // namespace leechps
