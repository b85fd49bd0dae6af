#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "leechps/eval.hpp"
#include "leechps/lattice.hpp"
#include "leechps/lorentz.hpp"
#include "leechps/numeric.hpp"

namespace leechps::analytic {

using lorentz::SliceParams;

double c_n(std::int64_t n, const SliceParams& p);

struct CoeffResult {
  lattice::Coords lambda;
  Complex a_star{};
  Complex a{};
  std::int64_t terms_used = 0;
  double tail_bound = 0.0;  // bound on |a| omitted beyond nMax
  TailKind tail_kind = TailKind::kRigorous;
  std::vector<std::string> flags;
  // The n = 1 part of a (used by the Fourier evaluator).
  Complex a_first{};
};

nlohmann::json to_json(const CoeffResult& c);

// Coefficient a_lambda(k, h, s) of the Fourier expansion, n-sum truncated at
// policy.n_max. The lattice must be a rank-24 even self-dual definite lattice.
CoeffResult fourier_coeff(const lattice::GramLattice& k, std::span<const std::int64_t> lambda,
                          const SliceParams& p, Complex s, const TruncationPolicy& policy);

// Same, from the invariants (lambda^2/2, content) that determine it.
CoeffResult fourier_coeff_invariants(int rank, std::int64_t half_norm, const lattice::Content& content,
                                     const SliceParams& p, Complex s, const TruncationPolicy& policy);

struct RadialCheck {
  Complex quadrature{};
  Complex closed{};
  double quad_error = 0.0;
};

// int_0^inf (c^2 + r^2)^-s r^23 2 pi J_11(2 pi |lambda| r) (r |lambda|)^-11 dr
// against its Bessel-K closed form; lambda_norm_sq = 0 selects the companion
// int_0^inf x^23 (1 + x^2)^-s dx = Gamma(12) Gamma(s - 12) / 2 Gamma(s).
RadialCheck radial_integral_oracle(double lambda_norm_sq, double c, Complex s, double rel_tol = 1e-12);

// sum over lambda in the lattice of exp(-alpha lambda^2) e(<lambda, v>), for a
// lattice embedded in the standard mod-8 Golay model of the Leech lattice.
// Exact up to rounding: the sum is factorised over coordinates and codewords.
Complex leech_theta(const lattice::GramLattice& k, std::span<const double> v, double alpha);

// True when the lattice basis lies in the mod-8 Golay model (and spans it).
bool has_golay_model(const lattice::GramLattice& k);

// Key under which a coefficient is stored: it is fixed by (lambda^2/2, content)
// together with the lattice and the evaluation parameters.
struct CoeffKey {
  std::string lattice_hash;
  double k = 1.0;
  double h = 0.5;
  Complex s{};
  std::int64_t n_max = 0;
  std::int64_t half_norm = 0;
  std::int64_t content = 0;  // 0 encodes `all`
};

class CoefficientStore {
 public:
  virtual ~CoefficientStore() = default;
  virtual std::optional<CoeffResult> find(const CoeffKey& key) = 0;
  virtual void insert(const CoeffKey& key, const CoeffResult& value) = 0;
};

struct FourierOptions {
  // Sum every lambda at n = 1 through the theta-function representation of the
  // Bessel kernel; when false only lambda^2 <= lambdaRadiusSq is summed and the
  // remainder is bounded.
  bool theta_bulk = true;
  CoefficientStore* store = nullptr;
};

// E(phi(v), s) from the Fourier expansion.
EvalResult fourier_poincare(const lattice::GramLattice& k, std::span<const double> v,
                            const SliceParams& p, Complex s, const TruncationPolicy& policy,
                            const Budget& budget = {}, const FourierOptions& opts = {});

}  // namespace leechps::analytic
