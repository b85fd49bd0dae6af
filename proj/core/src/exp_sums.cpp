#include "leechps/exp_sums.hpp"

#include <chrono>
#include <limits>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>

#include "leechps/enumerate.hpp"
#include "leechps/error.hpp"

namespace leechps::expsums {

using lattice::GramLattice;

const char* method_name(Method m) { return m == Method::kBrute ? "brute" : "closed"; }

namespace {

struct KeyHash {
  std::size_t operator()(const std::tuple<std::int64_t, std::int64_t, std::int64_t>& k) const {
    auto [a, b, n] = k;
    std::size_t h = std::hash<std::int64_t>()(n);
    h ^= std::hash<std::int64_t>()(a) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::int64_t>()(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

std::shared_mutex g_kl_mutex;
std::unordered_map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, SumValue, KeyHash> g_kl_memo;

SumValue kloosterman_direct(std::int64_t a, std::int64_t b, std::int64_t n) {
  CompensatedSum<Complex> acc;
  std::uint64_t terms = 0;
  for (std::int64_t r = 0; r < n; ++r) {
    if (arith::gcd(r, n) != 1) continue;
    const std::int64_t rbar = arith::mod_inverse(r, n);
    const auto num = static_cast<std::int64_t>(
        (static_cast<__int128>(a) * r + static_cast<__int128>(b) * rbar) % n);
    acc += phase_rational(num, n);
    ++terms;
  }
  return {acc.value(), Method::kBrute, terms};
}

std::int64_t checked_pow(std::int64_t base, int exp, std::uint64_t limit, const char* what) {
  std::uint64_t acc = 1;
  for (int i = 0; i < exp; ++i) {
    if (acc > limit / static_cast<std::uint64_t>(base))
      throw ResourceError(std::string(what) + ": " + std::to_string(base) + "^" +
                              std::to_string(exp) + " exceeds the coset budget",
                          0);
    acc *= static_cast<std::uint64_t>(base);
  }
  return static_cast<std::int64_t>(acc);
}

void require_even(const GramLattice& k, const char* what) {
  if (!k.even()) throw UsageError(std::string(what) + " needs an even lattice");
}

void require_lambda(const GramLattice& k, std::span<const std::int64_t> lambda) {
  if (static_cast<int>(lambda.size()) != k.rank())
    throw UsageError("lambda has " + std::to_string(lambda.size()) + " coordinates, lattice rank is " +
                     std::to_string(k.rank()));
}

}  // namespace

SumValue kloosterman(std::int64_t a, std::int64_t b, std::int64_t n) {
  if (n < 1) throw UsageError("kloosterman: modulus must be >= 1");
  const auto key = std::make_tuple(arith::mod(a, n), arith::mod(b, n), n);
  {
    std::shared_lock lock(g_kl_mutex);
    auto it = g_kl_memo.find(key);
    if (it != g_kl_memo.end()) return it->second;
  }
  const SumValue v = kloosterman_direct(std::get<0>(key), std::get<1>(key), n);
  std::unique_lock lock(g_kl_mutex);
  g_kl_memo.emplace(key, v);
  return v;
}

void clear_kloosterman_cache() {
  std::unique_lock lock(g_kl_mutex);
  g_kl_memo.clear();
}

double weil_bound(std::int64_t a, std::int64_t b, std::int64_t n) {
  const std::int64_t g = arith::gcd(arith::gcd(a, b), n);
  return arith::divisor_count(n) * std::sqrt(static_cast<double>(g)) *
         std::sqrt(static_cast<double>(n));
}

std::vector<SumValue> j_brute_many(const GramLattice& k, const std::vector<lattice::Coords>& lambdas,
                                   std::int64_t n, std::int64_t d, const Budget& budget) {
  require_even(k, "j_brute");
  if (n < 1) throw UsageError("j_brute: modulus must be >= 1");
  std::vector<std::vector<std::int64_t>> forms;
  for (const auto& l : lambdas) {
    require_lambda(k, l);
    auto g = lattice::gram_times(k, std::span<const std::int64_t>(l));
    for (auto& x : g) x = arith::mod(x, n);
    forms.push_back(std::move(g));
  }
  const std::size_t nl = lambdas.size();
  std::vector<std::uint64_t> hist(nl * static_cast<std::size_t>(n), 0);
  std::uint64_t terms = 0;
  lattice::CosetWalker walker(k, n, budget);
  walker.walk(forms, [&](std::span<const std::int64_t>, std::int64_t nrm,
                         std::span<const std::int64_t> f) {
    if (arith::mod(nrm / 2 - d, n) != 0) return;
    ++terms;
    for (std::size_t t = 0; t < nl; ++t) ++hist[t * n + arith::mod(f[t], n)];
  });
  std::vector<SumValue> out;
  for (std::size_t t = 0; t < nl; ++t) {
    CompensatedSum<Complex> acc;
    for (std::int64_t r = 0; r < n; ++r)
      if (hist[t * n + r] != 0) acc += static_cast<double>(hist[t * n + r]) * phase_rational(r, n);
    out.push_back({acc.value(), Method::kBrute, terms});
  }
  return out;
}

SumValue j_brute(const GramLattice& k, std::span<const std::int64_t> lambda, std::int64_t n,
                 std::int64_t d, const Budget& budget, int sign) {
  if (sign != 1 && sign != -1) throw UsageError("j_brute: sign must be +1 or -1");
  lattice::Coords l(lambda.begin(), lambda.end());
  if (sign < 0)
    for (auto& x : l) x = -x;
  return j_brute_many(k, {l}, n, d, budget).front();
}

std::uint64_t coset_count(const GramLattice& k, std::int64_t n, std::int64_t d,
                          const Budget& budget) {
  std::uint64_t count = 0;
  lattice::coset_enumerate(k, n, d, budget,
                           [&](std::span<const std::int64_t>, std::int64_t) { ++count; });
  return count;
}

arith::BigInt j_zero(int rank, std::int64_t n) {
  if (rank % 2 != 0) throw UsageError("j_zero: rank must be even");
  arith::BigInt p = 1;
  for (int i = 0; i < rank / 2 - 1; ++i) p *= n;
  return p * arith::jordan_totient(rank / 2, n);
}

double j_closed_invariants(int rank, std::int64_t half_norm, const lattice::Content& c,
                           std::int64_t n) {
  if (n < 1) throw UsageError("j_closed: modulus must be >= 1");
  if (rank % 2 != 0) throw UsageError("j_closed: rank must be even");
  double value = 1.0;
  for (const auto& [p, e] : arith::factor(n)) {
    const std::int64_t q = arith::pow_int(p, e);
    const std::int64_t u = arith::mod_inverse(arith::mod(n / q, q), q);
    const int w = c.is_all() ? e : std::min(arith::valuation(*c.value, p), e);
    if (w == e) {
      value *= arith::to_double(j_zero(rank, q));
      continue;
    }
    const std::int64_t qp = arith::pow_int(p, e - w);
    std::int64_t h = half_norm;
    for (int i = 0; i < 2 * w; ++i) h /= p;
    const std::int64_t hm = arith::mod(h, qp);
    const std::int64_t u2 = static_cast<std::int64_t>(static_cast<__int128>(u) * u % qp);
    const std::int64_t arg = static_cast<std::int64_t>(static_cast<__int128>(u2) * hm % qp);
    const double s = kloosterman(1, arg, qp).value.real();
    value *= std::pow(static_cast<double>(p), (rank - 1) * w) *
             std::pow(static_cast<double>(qp), rank / 2 - 1) * s;
  }
  return value;
}

SumValue j_closed(const GramLattice& k, std::span<const std::int64_t> lambda, std::int64_t n) {
  if (!k.even() || !k.unimodular())
    throw UsageError("j_closed needs an even self-dual lattice; use j_brute for '" + k.name() + "'");
  require_lambda(k, lambda);
  const std::int64_t nrm = lattice::norm(k, lambda);
  const double v = j_closed_invariants(k.rank(), nrm / 2, lattice::content(lambda), n);
  std::uint64_t terms = 0;
  for (const auto& [p, e] : arith::factor(n)) terms += static_cast<std::uint64_t>(arith::pow_int(p, e));
  return {Complex(v, 0.0), Method::kClosed, terms};
}

HenselReport hensel_fiber_check(const GramLattice& k, std::int64_t p, std::int64_t q, std::int64_t d,
                                const Budget& budget) {
  require_even(k, "hensel_fiber_check");
  if (!arith::is_prime(p)) throw UsageError("hensel_fiber_check: p must be prime");
  if (q < 1 || (q > 1 && arith::as_prime_power(q).p != p))
    throw UsageError("hensel_fiber_check: q must be a power of p");
  if (arith::mod(d, p) == 0) throw UsageError("hensel_fiber_check: requires p not dividing d");
  const std::int64_t pq = p * q;
  checked_pow(pq, k.rank(), budget.max_cosets, "hensel_fiber_check");
  HenselReport rep;
  rep.p = p;
  rep.q = q;
  rep.d = d;
  rep.expected_fiber = static_cast<std::uint64_t>(arith::pow_int(p, k.rank() - 1));
  std::unordered_map<std::uint64_t, std::uint64_t> fibers;
  lattice::coset_enumerate(k, pq, d, budget, [&](std::span<const std::int64_t> a, std::int64_t) {
    std::uint64_t key = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it)
      key = key * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(*it % q);
    ++fibers[key];
    ++rep.total;
  });
  rep.base_size = coset_count(k, q, d, budget);
  rep.fibers = fibers.size();
  if (!fibers.empty()) {
    rep.min_fiber = rep.max_fiber = fibers.begin()->second;
    for (const auto& [key, cnt] : fibers) {
      rep.min_fiber = std::min(rep.min_fiber, cnt);
      rep.max_fiber = std::max(rep.max_fiber, cnt);
    }
  }
  rep.ok = rep.fibers == rep.base_size && rep.min_fiber == rep.expected_fiber &&
           rep.max_fiber == rep.expected_fiber;
  return rep;
}

Complex QuadraticHistogram::theta(std::int64_t c) const {
  CompensatedSum<Complex> acc;
  for (std::int64_t r = 0; r < q; ++r)
    if (counts[r] != 0)
      acc += static_cast<double>(counts[r]) *
             phase_rational(static_cast<long long>(static_cast<__int128>(arith::mod(c, q)) * r % q), q);
  return acc.value();
}

QuadraticHistogram quadratic_histogram(const GramLattice& k, std::int64_t q, const Budget& budget) {
  if (q < 1) throw UsageError("gauss theta: modulus must be >= 1");
  if (!k.even() && q % 2 == 0) throw UsageError("gauss theta: odd lattices need an odd modulus");
  const std::int64_t inv2 = k.even() || q == 1 ? 0 : arith::mod_inverse(2, q);
  QuadraticHistogram h;
  h.q = q;
  h.counts.assign(q, 0);
  lattice::CosetWalker walker(k, q, budget);
  const std::vector<std::vector<std::int64_t>> none;
  walker.walk(none, [&](std::span<const std::int64_t>, std::int64_t nrm, std::span<const std::int64_t>) {
    const std::int64_t r = k.even() ? arith::mod(nrm / 2, q)
                                    : static_cast<std::int64_t>(static_cast<__int128>(arith::mod(nrm, q)) * inv2 % q);
    ++h.counts[r];
  });
  return h;
}

namespace {
void check_theta_args(std::int64_t q, std::int64_t c) {
  if (q < 1) throw UsageError("gauss theta: modulus must be >= 1");
  if (q > 1) {
    const auto pp = arith::as_prime_power(q);
    if (c % pp.p == 0) throw UsageError("gauss theta: c must be coprime to p");
  }
}
}  // namespace

SumValue gauss_theta_brute(const GramLattice& k, std::int64_t q, std::int64_t c, const Budget& budget) {
  check_theta_args(q, c);
  const auto h = quadratic_histogram(k, q, budget);
  std::uint64_t terms = 0;
  for (auto x : h.counts) terms += x;
  return {h.theta(c), Method::kBrute, terms};
}

SumValue gauss_theta_closed_odd(const GramLattice& k, std::int64_t q, std::int64_t c) {
  if (q < 1 || q % 2 == 0) throw UsageError("gauss_theta_closed_odd: q must be an odd prime power");
  check_theta_args(q, c);
  if (q == 1) return {Complex(1.0, 0.0), Method::kClosed, 1};
  const auto pp = arith::as_prime_power(q);
  const arith::BigInt det_mod_p = k.det() % pp.p;
  if (det_mod_p == 0) throw UsageError("gauss_theta_closed_odd: p divides det(K)");
  const int m = k.rank();
  const std::int64_t inv2 = arith::mod_inverse(2, q);
  const std::int64_t a = static_cast<std::int64_t>(static_cast<__int128>(inv2) * arith::mod(c, q) % q);
  const int leg = arith::jacobi_symbol(a, q);
  arith::BigInt dm = k.det() % q;
  if (dm < 0) dm += q;
  const int det_sym = arith::jacobi_symbol(static_cast<std::int64_t>(dm), q);
  const Complex eps = arith::epsilon_factor(q);
  Complex eps_m(1.0, 0.0);
  for (int i = 0; i < m; ++i) eps_m *= eps;
  const double leg_m = (m % 2 == 0) ? 1.0 : leg;
  const Complex v = std::pow(static_cast<double>(q), 0.5 * m) * eps_m * leg_m * static_cast<double>(det_sym);
  return {v, Method::kClosed, 1};
}

SumValue gauss_theta_even_recursion(const GramLattice& k, int r, std::int64_t c, const Budget& budget) {
  if (r < 0) throw UsageError("gauss_theta_even_recursion: r must be >= 0");
  if (!k.even() || !k.unimodular())
    throw UsageError("gauss_theta_even_recursion needs an even self-dual lattice");
  if (c % 2 == 0) throw UsageError("gauss_theta_even_recursion: c must be odd");
  double scale = 1.0;
  while (r >= 2) {
    scale *= std::pow(2.0, k.rank());
    r -= 2;
  }
  SumValue base{Complex(1.0, 0.0), Method::kClosed, 1};
  if (r == 1) base = gauss_theta_brute(k, 2, c, budget);
  return {scale * base.value, Method::kClosed, base.terms};
}

DiagonalBasis diagonalize_mod_q(const GramLattice& k, std::int64_t q) {
  if (q < 3 || q % 2 == 0) throw UsageError("diagonalize_mod_q: q must be an odd prime power");
  const std::int64_t p = arith::as_prime_power(q).p;
  if (k.det() % p == 0) throw UsageError("diagonalize_mod_q: p divides det(K)");
  const int m = k.rank();
  DiagonalBasis out;
  out.q = q;
  out.basis.assign(m, lattice::Coords(m, 0));
  for (int i = 0; i < m; ++i) out.basis[i][i] = 1;
  auto& u = out.basis;
  auto ip = [&](int a, int b) {
    return lattice::inner(k, std::span<const std::int64_t>(u[a]), std::span<const std::int64_t>(u[b]));
  };
  for (int i = 0; i < m; ++i) {
    int pivot = -1;
    for (int j = i; j < m && pivot < 0; ++j)
      if (arith::mod(ip(j, j), p) != 0) pivot = j;
    if (pivot < 0) {
      // Every remaining norm is divisible by p; some pairing is not, and the
      // sum of that pair then has norm 2<u_j,u_l> mod p, a unit since p is odd.
      for (int j = i; j < m && pivot < 0; ++j)
        for (int l = j + 1; l < m && pivot < 0; ++l)
          if (arith::mod(ip(j, l), p) != 0) {
            for (int t = 0; t < m; ++t) u[l][t] += u[j][t];
            pivot = l;
          }
    }
    if (pivot < 0) throw UsageError("diagonalize_mod_q: no unit pivot; p divides det(K)");
    std::swap(u[i], u[pivot]);
    const std::int64_t t = arith::mod_inverse(arith::mod(ip(i, i), q), q);
    for (int j = i + 1; j < m; ++j) {
      const std::int64_t g = arith::mod(ip(i, j), q);
      std::int64_t coef = static_cast<std::int64_t>(static_cast<__int128>(t) * g % q);
      if (2 * coef > q) coef -= q;
      if (coef == 0) continue;
      for (int s = 0; s < m; ++s) u[j][s] -= coef * u[i][s];
    }
  }
  return out;
}

std::string check_diagonal_basis(const GramLattice& k, const DiagonalBasis& b) {
  const int m = k.rank();
  if (static_cast<int>(b.basis.size()) != m) return "basis has wrong length";
  std::vector<std::int64_t> flat;
  for (const auto& row : b.basis) {
    if (static_cast<int>(row.size()) != m) return "basis vector has wrong length";
    flat.insert(flat.end(), row.begin(), row.end());
  }
  const auto det = lattice::determinant(m, flat);
  if (det != 1 && det != -1) return "change of basis is not unimodular";
  const std::int64_t p = b.q > 1 ? arith::as_prime_power(b.q).p : 1;
  for (int i = 0; i < m; ++i) {
    const auto ui = std::span<const std::int64_t>(b.basis[i]);
    if (p > 1 && arith::mod(lattice::norm(k, ui), p) == 0)
      return "p divides u_" + std::to_string(i) + "^2";
    for (int j = i + 1; j < m; ++j)
      if (arith::mod(lattice::inner(k, ui, std::span<const std::int64_t>(b.basis[j])), b.q) != 0)
        return "q does not divide <u_" + std::to_string(i) + ", u_" + std::to_string(j) + ">";
  }
  return {};
}

double JBound::bound(double lambda_abs, std::int64_t n, int rank) const {
  return constant * std::pow(lambda_abs, 0.5 * (rank - 1)) *
         std::pow(static_cast<double>(n), 0.5 * (rank - 1) + eps);
}

JBound calibrated_j_bound(int rank, double eps) {
  static std::mutex mu;
  static std::map<std::pair<int, double>, JBound> memo;
  std::lock_guard lock(mu);
  auto it = memo.find({rank, eps});
  if (it != memo.end()) return it->second;
  JBound b;
  b.eps = eps;
  double worst = 0.0;
  for (std::int64_t c = 1; c <= 4; ++c)
    for (std::int64_t h = 1; h <= 40; ++h)
      for (std::int64_t n = 1; n <= 120; ++n) {
        const std::int64_t half = c * c * h;
        const double j = std::abs(j_closed_invariants(rank, half, lattice::Content{c}, n));
        const double env = std::pow(std::sqrt(2.0 * half), 0.5 * (rank - 1)) *
                           std::pow(static_cast<double>(n), 0.5 * (rank - 1) + eps);
        worst = std::max(worst, j / env);
      }
  b.constant = 2.0 * worst;
  memo.emplace(std::make_pair(rank, eps), b);
  return b;
}

EvalResult dirichlet_j_partial(const GramLattice& k, std::span<const std::int64_t> lambda, Complex s,
                               std::int64_t cutoff, const std::vector<std::int64_t>& excluded) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cutoff < 0) throw UsageError("dirichlet_j_partial: cutoff must be >= 0");
  for (auto p : excluded)
    if (!arith::is_prime(p)) throw UsageError("dirichlet_j_partial: excluded set must contain primes");
  require_lambda(k, lambda);
  EvalResult res;
  res.method = "closed";
  res.policy.n_max = cutoff;
  CompensatedSum<Complex> acc;
  for (std::int64_t n = 1; n <= cutoff; ++n) {
    bool skip = false;
    for (auto p : excluded) skip |= (n % p == 0);
    if (skip) continue;
    const Complex j = j_closed(k, lambda, n).value;
    acc += j * std::exp(-s * std::log(static_cast<double>(n)));
    ++res.terms;
  }
  res.value = acc.value();

  const int m = k.rank();
  const double sigma = s.real();
  const double big_n = static_cast<double>(cutoff);
  const std::int64_t nrm = lattice::norm(k, lambda);
  const double lambda_abs = std::sqrt(std::abs(static_cast<double>(nrm)));
  if (sigma > m) {
    // |j_{lambda,n}| <= |M_n(1)| = j_{0,n} <= n^(m-1).
    res.tail_estimate = cutoff == 0 ? 1.0 + 1.0 / (sigma - m)
                                    : std::pow(big_n, m - sigma) / (sigma - m);
    res.tail_kind = TailKind::kRigorous;
  } else if (nrm != 0 && sigma > 0.5 * (m + 1) + 0.05 && cutoff > 0) {
    const JBound b = calibrated_j_bound(m);
    const double a = sigma - 0.5 * (m - 1) - b.eps;
    res.tail_estimate = b.constant * std::pow(lambda_abs, 0.5 * (m - 1)) * std::pow(big_n, 1.0 - a) / (a - 1.0);
    res.tail_kind = TailKind::kHeuristic;
    res.add_flag("heuristic-tail");
  } else {
    res.tail_estimate = std::numeric_limits<double>::infinity();
    res.tail_kind = TailKind::kNone;
    res.add_flag("no-tail-bound");
  }
  res.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace leechps::expsums
