#include "leechps/fourier.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "leechps/enumerate.hpp"
#include "leechps/error.hpp"
#include "leechps/exp_sums.hpp"
#include "leechps/special.hpp"

namespace leechps::analytic {

using lattice::GramLattice;

namespace {

constexpr double kPi = std::numbers::pi;

Complex cpow_pos(double base, Complex e) { return std::exp(e * std::log(base)); }

Complex branch_prefactor(Complex s) { return 1.0 + std::exp(Complex(0.0, -kPi) * s); }

// log((h / 2 pi)^s Gamma(s)).
Complex log_g(const SliceParams& p, Complex s) {
  return s * std::log(p.h / (2.0 * kPi)) + log_gamma_complex(s);
}

double j0(int rank, std::int64_t n) { return arith::to_double(expsums::j_zero(rank, n)); }

// sum_{n >= 1} j_{0,n} n^-sigma = zeta(sigma + 1 - m) / zeta(sigma + 1 - m/2), sigma > m.
double j0_dirichlet(int rank, double sigma) {
  return zeta_real(sigma + 1.0 - rank) / zeta_real(sigma + 1.0 - 0.5 * rank);
}

double j0_partial(int rank, double sigma, std::int64_t cutoff, std::int64_t from = 1) {
  CompensatedSum<double> acc;
  for (std::int64_t n = from; n <= cutoff; ++n) acc += j0(rank, n) * std::pow(static_cast<double>(n), -sigma);
  return acc.value();
}

struct TailSum {
  double value = 0.0;
  TailKind kind = TailKind::kRigorous;
};

// Bound on sum_{n > cutoff} |j_{lambda,n}| n^-sigma.
TailSum j_tail_sum(int rank, double sigma, std::int64_t cutoff, double lambda_abs) {
  if (sigma > rank) {
    const double rest = j0_dirichlet(rank, sigma) - j0_partial(rank, sigma, cutoff);
    // Guard against the subtraction dipping below the first omitted term's size.
    const double first = j0(rank, cutoff + 1) * std::pow(static_cast<double>(cutoff + 1), -sigma);
    return {std::max(rest, first), TailKind::kRigorous};
  }
  const auto bound = expsums::calibrated_j_bound(rank);
  const double a = sigma - 0.5 * (rank - 1) - bound.eps;
  if (lambda_abs > 0.0 && a > 1.0) {
    const double nn = std::max<double>(1.0, static_cast<double>(cutoff));
    const double head = cutoff == 0 ? 1.0 : 0.0;
    return {bound.constant * std::pow(lambda_abs, 0.5 * (rank - 1)) *
                (head + std::pow(nn, 1.0 - a) / (a - 1.0)),
            TailKind::kHeuristic};
  }
  return {std::numeric_limits<double>::infinity(), TailKind::kNone};
}

void require_coeff_lattice(const GramLattice& k) {
  if (!k.positive_definite() || !k.even() || !k.unimodular())
    throw UsageError("Fourier coefficients need an even self-dual positive definite lattice");
}

}  // namespace

double c_n(std::int64_t n, const SliceParams& p) { return p.c(n); }

nlohmann::json to_json(const CoeffResult& c) {
  return {{"lambda", c.lambda},
          {"aStar", complex_json(c.a_star)},
          {"a", complex_json(c.a)},
          {"termsUsed", c.terms_used},
          {"tailBound", std::isfinite(c.tail_bound) ? nlohmann::json(c.tail_bound) : nlohmann::json(nullptr)},
          {"tailKind", tail_kind_name(c.tail_kind)},
          {"flags", c.flags}};
}

CoeffResult fourier_coeff_invariants(int rank, std::int64_t half_norm, const lattice::Content& content,
                                     const SliceParams& p_in, Complex s, const TruncationPolicy& policy) {
  policy.validate();
  const SliceParams p(p_in.k, p_in.h);
  if (rank % 2 != 0) throw UsageError("fourier_coeff: rank must be even");
  const double half = 0.5 * rank;
  const double sigma = s.real();
  CoeffResult r;
  if (sigma <= 0.5 * (rank + 1)) r.flags.push_back("no-tail-bound");
  const Complex pref0 = branch_prefactor(s);
  const Complex lg = log_g(p, s);
  const std::int64_t cutoff = policy.n_max;
  CompensatedSum<Complex> acc;
  Complex pref;
  TailSum tail;
  double envelope = 0.0;
  const double c_env = sigma >= half ? p.c(cutoff + 1) : std::sqrt(p.k) / p.h;

  if (half_norm == 0) {
    if (sigma <= half) throw PoleError("fourier_coeff: lambda = 0 needs Re s > rank/2 (Gamma pole)");
    pref = pref0 * gamma_complex(s - half) * cpow_pos(kPi, half - s);
    for (std::int64_t n = 1; n <= cutoff; ++n) {
      const Complex term = j0(rank, n) * cpow_pos(static_cast<double>(n), -s) *
                           cpow_pos(p.c_sq(n), half - s);
      acc += term;
      if (n == 1) r.a_first = pref * term;
    }
    if (sigma > rank)
      tail = j_tail_sum(rank, sigma, cutoff, 0.0);
    else
      tail = {std::numeric_limits<double>::infinity(), TailKind::kNone};
    envelope = std::pow(c_env * c_env, half - sigma);
  } else {
    const double lam = std::sqrt(2.0 * static_cast<double>(half_norm));
    pref = 2.0 * pref0 * cpow_pos(lam, s - half);
    for (std::int64_t n = 1; n <= cutoff; ++n) {
      const double j = expsums::j_closed_invariants(rank, half_norm, content, n);
      if (j == 0.0) continue;
      const double cn = p.c(n);
      const Complex term = j * cpow_pos(static_cast<double>(n), -s) * cpow_pos(cn, half - s) *
                           bessel_k(half - s, 2.0 * kPi * lam * cn);
      acc += term;
      if (n == 1) r.a_first = pref * term;
    }
    tail = j_tail_sum(rank, sigma, cutoff, lam);
    envelope = std::pow(c_env, half - sigma) * bessel_k(Complex(half - sigma, 0.0), 2.0 * kPi * lam * c_env).real();
  }
  const Complex g = std::exp(lg);
  r.a_star = pref * acc.value();
  r.a = r.a_star / g;
  r.a_first /= g;
  r.terms_used = cutoff;
  r.tail_kind = tail.kind;
  r.tail_bound = std::abs(pref) * envelope * tail.value / std::abs(g);
  if (tail.kind == TailKind::kHeuristic) r.flags.push_back("heuristic-tail");
  if (tail.kind == TailKind::kNone &&
      std::find(r.flags.begin(), r.flags.end(), "no-tail-bound") == r.flags.end())
    r.flags.push_back("no-tail-bound");
  return r;
}

CoeffResult fourier_coeff(const GramLattice& k, std::span<const std::int64_t> lambda, const SliceParams& p,
                          Complex s, const TruncationPolicy& policy) {
  require_coeff_lattice(k);
  if (static_cast<int>(lambda.size()) != k.rank()) throw UsageError("fourier_coeff: lambda has wrong dimension");
  const std::int64_t nrm = lattice::norm(k, lambda);
  CoeffResult r = fourier_coeff_invariants(k.rank(), nrm / 2, lattice::content(lambda), p, s, policy);
  r.lambda.assign(lambda.begin(), lambda.end());
  return r;
}

RadialCheck radial_integral_oracle(double lambda_norm_sq, double c, Complex s, double rel_tol) {
  using boost::math::quadrature::gauss_kronrod;
  if (!(c > 0.0)) throw DomainError("radial oracle: c must be positive");
  if (!(lambda_norm_sq >= 0.0)) throw DomainError("radial oracle: lambda^2 must be >= 0");
  const double sigma = s.real();
  RadialCheck out;
  CompensatedSum<Complex> acc;
  double err = 0.0;

  auto integrate_panel = [&](const std::function<Complex(double)>& f, double a, double b) {
    double e_re = 0.0, e_im = 0.0;
    const double re = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).real(); }, a, b, 8,
                                                           rel_tol * 1e-2, &e_re);
    const double im = gauss_kronrod<double, 61>::integrate([&](double x) { return f(x).imag(); }, a, b, 8,
                                                           rel_tol * 1e-2, &e_im);
    acc += Complex(re, im);
    err += std::hypot(e_re, e_im);
  };

  if (lambda_norm_sq == 0.0) {
    if (sigma <= 12.0) throw DomainError("radial oracle: the lambda = 0 integral diverges for Re s <= 12");
    auto f = [&](double x) { return std::pow(x, 23) * cpow_pos(1.0 + x * x, -s); };
    double a = 0.0;
    const double width = 0.25;
    while (true) {
      integrate_panel(f, a, a + width);
      a += width;
      // int_X^inf x^23 (1 + x^2)^-sigma dx <= X^(24 - 2 sigma) / (2 sigma - 24)
      const double tail = std::pow(a, 24.0 - 2.0 * sigma) / (2.0 * sigma - 24.0);
      if (a > 2.0 && tail < 1e-3 * rel_tol * std::abs(acc.value())) {
        err += tail;
        break;
      }
      if (a > 1e4) throw AccuracyError("radial oracle: integral did not converge", tail / std::abs(acc.value()));
    }
    out.quadrature = acc.value();
    out.quad_error = err;
    out.closed = gamma_complex(12.0) * gamma_complex(s - 12.0) / (2.0 * gamma_complex(s));
    return out;
  }

  if (sigma <= 6.5)
    throw DomainError("radial oracle: needs Re s > 13/2 for an absolutely convergent tail");
  const double lam = std::sqrt(lambda_norm_sq);
  const double b = 2.0 * kPi * lam;
  const double scale = 2.0 * kPi * std::pow(lam, -11.0);
  auto f = [&](double r) { return scale * std::pow(r, 12) * bessel_j11(b * r) * cpow_pos(c * c + r * r, -s); };
  const double width = std::min(0.5 * kPi / b, 0.25 * c);
  double a = 0.0;
  while (true) {
    integrate_panel(f, a, a + width);
    a += width;
    // |J_11| <= 1: tail <= scale int_R^inf r^(12 - 2 sigma) dr.
    const double tail = scale * std::pow(a, 13.0 - 2.0 * sigma) / (2.0 * sigma - 13.0);
    if (a > 4.0 * c && tail < 1e-3 * rel_tol * std::abs(acc.value())) {
      err += tail;
      break;
    }
    if (a > 1e4) throw AccuracyError("radial oracle: integral did not converge", tail / std::abs(acc.value()));
  }
  out.quadrature = acc.value();
  out.quad_error = err;
  const double x = b * c;
  out.closed = cpow_pos(b, 2.0 * s - 12.0) * std::pow(lam, -12.0) * cpow_pos(x, 12.0 - s) *
               bessel_k(12.0 - s, x) / (cpow_pos(2.0, s - 1.0) * gamma_complex(s));
  return out;
}

namespace {

bool golay_member(std::span<const std::int64_t> x) {
  const auto& words = lattice::golay_codewords();
  const std::int64_t parity = arith::mod(x[0], 2);
  std::int64_t sum = 0;
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (arith::mod(x[i], 2) != parity) return false;
    sum += x[i];
    if (arith::mod(x[i], 4) == (parity == 0 ? 2 : 3)) mask |= 1u << i;
  }
  if (arith::mod(sum, 8) != 4 * parity) return false;
  return std::binary_search(words.begin(), words.end(), mask);
}

}  // namespace

bool has_golay_model(const GramLattice& k) {
  if (!k.embedding() || k.rank() != 24 || !k.unimodular()) return false;
  const auto& e = *k.embedding();
  if (e.ambient_dim != 24 || e.denominator != 8) return false;
  for (int i = 0; i < 24; ++i)
    if (!golay_member(e.row(i))) return false;
  return true;
}

namespace {

// The mod-8 model: x in Z^24 with all x_i of one parity m, the positions where
// x_i = 2 + 2m... (mod 4) forming a codeword, and sum x_i = 4m (mod 8).
Complex golay_theta(const std::vector<double>& w, double alpha) {
  const auto& words = lattice::golay_codewords();
  // g[a][r] = sum_{y = r mod 8} exp(-alpha y^2 / 8) e(y w_a / 8)
  const auto ymax = static_cast<std::int64_t>(std::ceil(std::sqrt(8.0 * 42.0 / alpha))) + 8;
  std::array<std::array<Complex, 8>, 24> g{};
  for (int a = 0; a < 24; ++a) {
    for (std::int64_t y = -ymax; y <= ymax; ++y) {
      const double weight = std::exp(-alpha * static_cast<double>(y * y) / 8.0);
      if (weight == 0.0) continue;
      g[a][arith::mod(y, 8)] += weight * e_phase(static_cast<double>(y) * w[a] / 8.0);
    }
  }
  std::vector<Complex> low(4096), high(4096);
  auto codeword_sum = [&](const std::array<Complex, 24>& in, const std::array<Complex, 24>& out) {
    auto build = [&](std::vector<Complex>& table, int offset) {
      table[0] = 1.0;
      std::size_t size = 1;
      for (int j = 0; j < 12; ++j) {
        for (std::size_t mask = 0; mask < size; ++mask) {
          table[mask | size] = table[mask] * in[offset + j];
          table[mask] *= out[offset + j];
        }
        size <<= 1;
      }
    };
    build(low, 0);
    build(high, 12);
    CompensatedSum<Complex> acc;
    for (auto c : words) acc += low[c & 0xFFF] * high[c >> 12];
    return acc.value();
  };
  CompensatedSum<Complex> total;
  for (int t = 0; t < 8; ++t) {
    std::array<Complex, 24> in_e, out_e, in_o, out_o;
    for (int a = 0; a < 24; ++a) {
      std::array<Complex, 8> f;
      for (int r = 0; r < 8; ++r) f[r] = g[a][r] * phase_rational(static_cast<long long>(t) * r, 8);
      in_e[a] = f[2] + f[6];
      out_e[a] = f[0] + f[4];
      in_o[a] = f[3] + f[7];
      out_o[a] = f[1] + f[5];
    }
    const double sign = (t % 2 == 0) ? 1.0 : -1.0;  // e(-4t/8)
    total += 0.125 * codeword_sum(in_e, out_e);
    total += 0.125 * sign * codeword_sum(in_o, out_o);
  }
  return total.value();
}

std::vector<double> ambient_of(const GramLattice& k, std::span<const double> v) {
  const auto& e = *k.embedding();
  std::vector<double> w(24, 0.0);
  for (int i = 0; i < 24; ++i)
    for (int a = 0; a < 24; ++a) w[a] += v[i] * static_cast<double>(e.row(i)[a]);
  return w;
}

struct Mixture {
  Complex value{};
  double error = 0.0;
  int evaluations = 0;
};

// int_R exp((s - h) u - e^u) theta(pi^2 c^2 e^-u) du, i.e. the t = e^u form of
// int_0^inf t^(s - h - 1) e^-t theta(pi^2 c^2 / t) dt, with h = rank/2.
Mixture mixture_integral(const std::function<Complex(double)>& theta, double c, Complex s, double half,
                         double tol, const Budget& budget) {
  const double sigma = s.real();
  const double beta = kPi * kPi * c * c;
  // Envelope: |theta(alpha)| <= theta_0(alpha) <= 1.01 max(1, (pi/alpha)^half).
  auto log_env = [&](double u) {
    const double alpha = beta * std::exp(-u);
    return (sigma - half) * u - std::exp(u) + half * std::max(0.0, std::log(kPi / alpha)) + std::log(1.01);
  };
  // Peak of the envelope by golden-section search on a bracket.
  double lo = -20.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double m1 = lo + (hi - lo) * 0.382, m2 = lo + (hi - lo) * 0.618;
    (log_env(m1) < log_env(m2) ? lo : hi) = (log_env(m1) < log_env(m2) ? m1 : m2);
  }
  const double upeak = 0.5 * (lo + hi);
  const double lmax = log_env(upeak);
  constexpr double kDrop = 46.0;
  double ua = upeak, ub = upeak;
  while (log_env(ua) > lmax - kDrop) ua -= 0.25;
  while (log_env(ub) > lmax - kDrop) ub += 0.25;
  auto f = [&](double u) {
    return std::exp((s - half) * u - std::exp(u) - lmax) * theta(beta * std::exp(-u));
  };
  Mixture out;
  int n = 64;
  double h = (ub - ua) / n;
  Complex sum = 0.5 * (f(ua) + f(ub));
  for (int i = 1; i < n; ++i) sum += f(ua + i * h);
  out.evaluations = n + 1;
  Complex prev = sum * h;
  for (int level = 0; level < 10; ++level) {
    budget.check_time(static_cast<std::uint64_t>(out.evaluations), "theta mixture quadrature");
    Complex mids = 0.0;
    for (int i = 0; i < n; ++i) mids += f(ua + (i + 0.5) * h);
    out.evaluations += n;
    sum += mids;
    n *= 2;
    h *= 0.5;
    const Complex cur = sum * h;
    const double diff = std::abs(cur - prev);
    prev = cur;
    if (level >= 1 && diff <= tol * std::abs(cur)) {
      out.value = cur * std::exp(lmax);
      // Truncated ends contribute below e^-kDrop of the peak envelope.
      out.error = (diff + std::exp(-kDrop) * (ub - ua)) * std::exp(lmax);
      return out;
    }
  }
  throw AccuracyError("theta mixture quadrature did not converge", std::abs(prev));
}

}  // namespace

Complex leech_theta(const GramLattice& k, std::span<const double> v, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("leech_theta: alpha must be positive");
  if (static_cast<int>(v.size()) != k.rank()) throw UsageError("leech_theta: v has wrong dimension");
  if (!has_golay_model(k)) throw UsageError("leech_theta: lattice has no Golay-code embedding");
  return golay_theta(ambient_of(k, v), alpha);
}

EvalResult fourier_poincare(const GramLattice& k, std::span<const double> v, const SliceParams& p_in,
                            Complex s, const TruncationPolicy& policy, const Budget& budget,
                            const FourierOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  policy.validate();
  const SliceParams p(p_in.k, p_in.h);
  require_coeff_lattice(k);
  if (static_cast<int>(v.size()) != k.rank()) throw UsageError("fourier_poincare: v has wrong dimension");
  if (opts.theta_bulk && !has_golay_model(k))
    throw UsageError("fourier_poincare: the theta route needs a lattice built in the Golay model");
  const int m = k.rank();
  const double half = 0.5 * m;
  const double sigma = s.real();
  EvalResult res;
  res.method = "fourier";
  res.policy = policy;
  if (sigma <= 0.5 * (m + 1)) res.add_flag("no-tail-bound");

  std::vector<double> vr(v.begin(), v.end());
  for (auto& x : vr) x -= std::floor(x + 0.5);

  // Explicit shell: group by (lambda^2/2, content), which fixes a_lambda.
  struct ClassSum {
    CompensatedSum<Complex> phase;
    std::uint64_t count = 0;
  };
  std::map<std::pair<std::int64_t, std::int64_t>, ClassSum> classes;
  std::map<std::int64_t, std::uint64_t> shells;
  lattice::ShortVectorEnumerator en(k);
  const std::vector<double> zero(m, 0.0);
  en.visit(zero, policy.lambda_radius_sq, budget, [&](std::span<const std::int64_t> x, std::int64_t nrm, double) {
    const auto c = lattice::content(x);
    auto& cls = classes[{nrm / 2, c.is_all() ? 0 : *c.value}];
    cls.phase += e_phase(lattice::inner(k, x, std::span<const double>(vr)));
    ++cls.count;
    ++shells[nrm];
  });

  const Complex pref = branch_prefactor(s);
  const Complex g = std::exp(log_g(p, s));
  const Complex k1 = 2.0 * pref / g;
  CompensatedSum<Complex> value;
  double head_tail = 0.0;
  bool heuristic = false, unbounded = false;
  std::uint64_t head_vectors = 0, cache_hits = 0;
  for (const auto& [key, cls] : classes) {
    const lattice::Content content = key.second == 0 ? lattice::Content{} : lattice::Content{key.second};
    const CoeffKey ck{k.hash(), p.k, p.h, s, policy.n_max, key.first, key.second};
    std::optional<CoeffResult> cached = opts.store ? opts.store->find(ck) : std::nullopt;
    if (cached) {
      ++cache_hits;
    } else {
      cached = fourier_coeff_invariants(m, key.first, content, p, s, policy);
      if (opts.store) opts.store->insert(ck, *cached);
    }
    const CoeffResult& cr = *cached;
    const Complex a = opts.theta_bulk ? cr.a - cr.a_first : cr.a;
    value += a * cls.phase.value();
    head_tail += static_cast<double>(cls.count) * cr.tail_bound;
    heuristic |= cr.tail_kind == TailKind::kHeuristic;
    unbounded |= cr.tail_kind == TailKind::kNone;
    head_vectors += cls.count;
  }

  const double c1 = p.c(1), c2 = p.c(2);
  auto theta_zero = [&](double alpha) { return golay_theta(std::vector<double>(24, 0.0), alpha); };
  // sum over lambda of |lambda|^(sigma-h) c^(h-sigma) K_{h-sigma}(2 pi |lambda| c), optionally
  // restricted to lambda^2 > R, through the same mixture.
  auto bessel_shell_sum = [&](double c, bool outside_head) {
    std::function<Complex(double)> th;
    if (outside_head) {
      th = [&](double alpha) {
        const double full = theta_zero(alpha).real();
        double head = 0.0;
        for (const auto& [nrm, cnt] : shells) head += static_cast<double>(cnt) * std::exp(-alpha * nrm);
        return Complex(std::max(0.0, full - head) + 1e-14 * full, 0.0);
      };
    } else {
      th = [&](double alpha) { return theta_zero(alpha); };
    }
    const Mixture mx = mixture_integral(th, c, Complex(sigma, 0.0), half, policy.quad_tol, budget);
    res.extra["thetaEvaluations"] = res.extra.value("thetaEvaluations", 0) + mx.evaluations;
    return 0.5 * std::pow(kPi, half - sigma) * std::pow(c, 2.0 * half - 2.0 * sigma) * (mx.value.real() + mx.error);
  };

  double bulk = 0.0, quad_err = 0.0;
  TailKind bulk_kind = TailKind::kRigorous;
  if (sigma <= m) bulk_kind = TailKind::kNone;

  if (opts.theta_bulk) {
    const Mixture mx = mixture_integral(
        [&](double alpha) { return golay_theta(ambient_of(k, vr), alpha); }, c1, s, half, policy.quad_tol, budget);
    res.extra["thetaEvaluations"] = mx.evaluations;
    const Complex scale = k1 * 0.5 * cpow_pos(kPi, half - s) * cpow_pos(c1, 2.0 * half - 2.0 * s);
    value += scale * mx.value;
    quad_err = std::abs(scale) * mx.error;
    if (bulk_kind == TailKind::kRigorous)
      bulk = std::abs(k1) * 2.0 * bessel_shell_sum(c2, false) * (j0_dirichlet(m, sigma) - 1.0);
  } else if (bulk_kind == TailKind::kRigorous) {
    bulk = std::abs(k1) * 2.0 * bessel_shell_sum(c1, true) * j0_dirichlet(m, sigma);
  }
  if (bulk_kind == TailKind::kNone) bulk = std::numeric_limits<double>::infinity();

  res.value = value.value();
  res.tail_estimate = head_tail + quad_err + bulk;
  res.terms = head_vectors;
  if (unbounded || bulk_kind == TailKind::kNone) {
    res.tail_kind = TailKind::kNone;
    res.add_flag("no-tail-bound");
  } else if (heuristic) {
    res.tail_kind = TailKind::kHeuristic;
    res.add_flag("heuristic-tail");
  }
  res.extra["headClasses"] = classes.size();
  res.extra["headVectors"] = head_vectors;
  res.extra["cacheHits"] = cache_hits;
  res.extra["headTail"] = head_tail;
  res.extra["quadratureError"] = quad_err;
  res.extra["bulkBound"] = std::isfinite(bulk) ? nlohmann::json(bulk) : nlohmann::json(nullptr);
  res.extra["thetaBulk"] = opts.theta_bulk;
  res.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace leechps::analytic
