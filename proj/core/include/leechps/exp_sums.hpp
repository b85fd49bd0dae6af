#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leechps/arith.hpp"
#include "leechps/budget.hpp"
#include "leechps/eval.hpp"
#include "leechps/lattice.hpp"
#include "leechps/numeric.hpp"

namespace leechps::expsums {

enum class Method { kBrute, kClosed };
const char* method_name(Method m);

struct SumValue {
  Complex value{};
  Method method = Method::kBrute;
  std::uint64_t terms = 0;
};

// S(a, b, n) = sum over units r mod n of e((a r + b rbar) / n). Memoised on
// (a mod n, b mod n, n); safe for concurrent use.
SumValue kloosterman(std::int64_t a, std::int64_t b, std::int64_t n);
void clear_kloosterman_cache();

// Weil bound d(n) gcd(a, b, n)^(1/2) n^(1/2).
double weil_bound(std::int64_t a, std::int64_t b, std::int64_t n);

// sum over l in M_n(d) of e(sign <l, lambda> / n), by walking all cosets of M/n.
SumValue j_brute(const lattice::GramLattice& k, std::span<const std::int64_t> lambda,
                 std::int64_t n, std::int64_t d, const Budget& budget, int sign = 1);

// Same sum for several lambdas sharing one coset walk.
std::vector<SumValue> j_brute_many(const lattice::GramLattice& k,
                                   const std::vector<lattice::Coords>& lambdas, std::int64_t n,
                                   std::int64_t d, const Budget& budget);

// |M_n(d)| by brute force.
std::uint64_t coset_count(const lattice::GramLattice& k, std::int64_t n, std::int64_t d,
                          const Budget& budget);

// Closed form of j_{lambda,n} = j_{lambda,n}(1) for an even self-dual lattice.
SumValue j_closed(const lattice::GramLattice& k, std::span<const std::int64_t> lambda,
                  std::int64_t n);

// The closed form only sees the rank, lambda^2/2 and the content of lambda.
double j_closed_invariants(int rank, std::int64_t half_norm, const lattice::Content& c,
                           std::int64_t n);

// j_{0,n}(1) = n^(m/2 - 1) J_{m/2}(n), exact.
arith::BigInt j_zero(int rank, std::int64_t n);

struct HenselReport {
  std::int64_t p = 0, q = 0, d = 0;
  std::uint64_t expected_fiber = 0;  // p^(m-1)
  std::uint64_t base_size = 0;       // |M_q(d)|
  std::uint64_t fibers = 0;          // number of nonempty fibers
  std::uint64_t min_fiber = 0, max_fiber = 0;
  std::uint64_t total = 0;           // |M_pq(d)|
  bool ok = false;
};

HenselReport hensel_fiber_check(const lattice::GramLattice& k, std::int64_t p, std::int64_t q,
                                std::int64_t d, const Budget& budget);

// Histogram of Q(x) mod q over K/q, where Q(x) = x^2/2 for even K and
// 2bar x^2 for odd K with q odd. One walk serves every c.
struct QuadraticHistogram {
  std::int64_t q = 1;
  std::vector<std::uint64_t> counts;
  Complex theta(std::int64_t c) const;
};
QuadraticHistogram quadratic_histogram(const lattice::GramLattice& k, std::int64_t q,
                                       const Budget& budget);

SumValue gauss_theta_brute(const lattice::GramLattice& k, std::int64_t q, std::int64_t c,
                           const Budget& budget);
SumValue gauss_theta_closed_odd(const lattice::GramLattice& k, std::int64_t q, std::int64_t c);
// theta_{2^r, c}(K) for even self-dual K via theta_{2^r} = 2^rank theta_{2^(r-2)}.
SumValue gauss_theta_even_recursion(const lattice::GramLattice& k, int r, std::int64_t c,
                                    const Budget& budget);

struct DiagonalBasis {
  std::int64_t q = 1;
  std::vector<lattice::Coords> basis;  // rows u_i in the stored basis
};

DiagonalBasis diagonalize_mod_q(const lattice::GramLattice& k, std::int64_t q);

// Empty string when every invariant holds, else a description of the failure.
std::string check_diagonal_basis(const lattice::GramLattice& k, const DiagonalBasis& b);

// Sum over n <= cutoff coprime to every prime in excluded of j_{lambda,n} n^-s.
EvalResult dirichlet_j_partial(const lattice::GramLattice& k, std::span<const std::int64_t> lambda,
                               Complex s, std::int64_t cutoff,
                               const std::vector<std::int64_t>& excluded = {});

// Calibrated constant C with |j_{lambda,n}| <= C |lambda|^((m-1)/2) n^((m-1)/2 + eps),
// taken as twice the largest ratio seen over 1 <= lambda^2/2 <= 40, content 1..4,
// n <= 120. Heuristic by construction.
struct JBound {
  double constant = 0.0;
  double eps = 0.0;
  double bound(double lambda_abs, std::int64_t n, int rank) const;
};
JBound calibrated_j_bound(int rank, double eps = 0.05);

}  // namespace leechps::expsums
