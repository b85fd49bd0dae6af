#include "leechps/lorentz.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "leechps/enumerate.hpp"
#include "leechps/error.hpp"
#include "leechps/exp_sums.hpp"
#include "leechps/special.hpp"

namespace leechps::lorentz {

using lattice::GramLattice;

SliceParams::SliceParams(double k_, double h_) : k(k_), h(h_) {
  if (!(k > 0.0) || !(h > 0.0) || !std::isfinite(k) || !std::isfinite(h))
    throw UsageError("slice parameters: k and h must be positive");
  if (!(nu() < 1.0))
    throw UsageError("slice parameters: nu = 2h^2/k = " + std::to_string(nu()) + " must be < 1");
}

double SliceParams::c_sq(std::int64_t n) const {
  if (n < 1) throw UsageError("c_n: n must be >= 1");
  const double nn = static_cast<double>(n);
  return k / (h * h) - 2.0 / (nn * nn);
}

double SliceParams::c(std::int64_t n) const { return std::sqrt(c_sq(n)); }

double SliceParams::kappa() const { return std::sqrt(2.0 * (1.0 - nu()) / nu()); }

namespace {

void require_rank(const GramLattice& k, std::size_t size, const char* what) {
  if (static_cast<int>(size) != k.rank())
    throw UsageError(std::string(what) + ": Leech part has wrong dimension");
}

}  // namespace

double inner(const GramLattice& k, const LorentzPoint& a, const LorentzPoint& b) {
  require_rank(k, a.leech.size(), "inner");
  require_rank(k, b.leech.size(), "inner");
  return lattice::inner(k, std::span<const double>(a.leech), std::span<const double>(b.leech)) -
         a.m * b.n - b.m * a.n;
}

std::int64_t inner(const GramLattice& k, const LorentzVector& a, const LorentzVector& b) {
  require_rank(k, a.leech.size(), "inner");
  require_rank(k, b.leech.size(), "inner");
  return lattice::inner(k, std::span<const std::int64_t>(a.leech),
                        std::span<const std::int64_t>(b.leech)) -
         a.m * b.n - b.m * a.n;
}

double norm(const GramLattice& k, const LorentzPoint& a) { return inner(k, a, a); }
std::int64_t norm(const GramLattice& k, const LorentzVector& a) { return inner(k, a, a); }

LorentzPoint to_real(const LorentzVector& x) {
  return {std::vector<double>(x.leech.begin(), x.leech.end()), static_cast<double>(x.m),
          static_cast<double>(x.n)};
}

LorentzVector rho(int rank) { return {lattice::Coords(rank, 0), 0, 1}; }

double height(const LorentzPoint& v) { return v.m; }
std::int64_t height(const LorentzVector& v) { return v.m; }

Root leech_root(const GramLattice& k, std::span<const std::int64_t> lambda) {
  return make_root(k, 1, lambda);
}

Root make_root(const GramLattice& k, std::int64_t n, std::span<const std::int64_t> l) {
  require_rank(k, l.size(), "make_root");
  if (n < 1) throw UsageError("make_root: height must be >= 1");
  const std::int64_t l2 = lattice::norm(k, l);
  if (arith::mod(l2 - 2, 2 * n) != 0)
    throw UsageError("make_root: l^2 = " + std::to_string(l2) + " is not 2 mod " + std::to_string(2 * n));
  return {lattice::Coords(l.begin(), l.end()), n, (l2 / 2 - 1) / n};
}

LorentzPoint translate(const GramLattice& k, std::span<const double> v, const LorentzPoint& x) {
  require_rank(k, v.size(), "translate");
  require_rank(k, x.leech.size(), "translate");
  LorentzPoint y = x;
  for (std::size_t i = 0; i < v.size(); ++i) y.leech[i] += x.m * v[i];
  y.n = x.n + lattice::inner(k, std::span<const double>(x.leech), v) + 0.5 * x.m * lattice::norm(k, v);
  return y;
}

LorentzVector translate(const GramLattice& k, std::span<const std::int64_t> v, const LorentzVector& x) {
  require_rank(k, v.size(), "translate");
  require_rank(k, x.leech.size(), "translate");
  LorentzVector y = x;
  for (std::size_t i = 0; i < v.size(); ++i) y.leech[i] += x.m * v[i];
  const std::int64_t v2 = lattice::norm(k, v);
  if (v2 % 2 != 0) throw UsageError("translate: exact translations need an even vector");
  y.n = x.n + lattice::inner(k, std::span<const std::int64_t>(x.leech), v) + x.m * (v2 / 2);
  return y;
}

LorentzPoint slice_point(const GramLattice& k, std::span<const double> v, const SliceParams& p) {
  require_rank(k, v.size(), "slice_point");
  LorentzPoint z;
  z.leech.assign(v.begin(), v.end());
  for (auto& x : z.leech) x *= p.h;
  z.m = p.h;
  z.n = (lattice::norm(k, std::span<const double>(z.leech)) + p.k) / (2.0 * p.h);
  return z;
}

std::vector<double> slice_inverse(const LorentzPoint& z) {
  if (z.m == 0.0) throw UsageError("slice_inverse: point has height 0");
  std::vector<double> v = z.leech;
  for (auto& x : v) x /= z.m;
  return v;
}

double root_pairing(const GramLattice& k, std::int64_t n, std::span<const std::int64_t> l,
                    std::span<const double> v, const SliceParams& p) {
  make_root(k, n, l);  // congruence check
  require_rank(k, v.size(), "root_pairing");
  std::vector<double> y(v.begin(), v.end());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] -= static_cast<double>(l[i]) / static_cast<double>(n);
  const double d2 = lattice::norm(k, std::span<const double>(y));
  return 0.5 * static_cast<double>(n) * p.h * (p.c_sq(n) + d2);
}

double root_pairing_direct(const GramLattice& k, std::int64_t n, std::span<const std::int64_t> l,
                           std::span<const double> v, const SliceParams& p) {
  const Root r = make_root(k, n, l);
  const LorentzPoint z = slice_point(k, v, p);
  return -inner(k, to_real(r.vector()), z);
}

double chamber_margin(const GramLattice& k, std::span<const double> v, const SliceParams& p,
                      double sample_radius_sq, const Budget& budget) {
  require_rank(k, v.size(), "chamber_margin");
  lattice::ShortVectorEnumerator en(k);
  double margin = std::numeric_limits<double>::infinity();
  const double c1 = p.c_sq(1);
  en.visit(v, sample_radius_sq, budget, [&](std::span<const std::int64_t>, std::int64_t, double d2) {
    margin = std::min(margin, 0.5 * p.h * (c1 + d2));
  });
  if (!(margin > 0.0))
    throw IntegrityError("chamber margin is not positive: slice point outside the Weyl chamber");
  return margin;
}

std::vector<Root> roots_of_height_near(const GramLattice& k, std::int64_t n,
                                       std::span<const double> center, double radius_sq,
                                       const Budget& budget) {
  require_rank(k, center.size(), "roots_of_height_near");
  if (n < 1) throw UsageError("roots_of_height_near: height must be >= 1");
  std::vector<double> c(center.begin(), center.end());
  for (auto& x : c) x *= static_cast<double>(n);
  const double nn = static_cast<double>(n);
  std::vector<Root> out;
  lattice::ShortVectorEnumerator en(k);
  en.visit(c, nn * nn * radius_sq, budget, [&](std::span<const std::int64_t> x, std::int64_t l2, double) {
    if (arith::mod(l2 - 2, 2 * n) != 0) return;
    out.push_back({lattice::Coords(x.begin(), x.end()), n, (l2 / 2 - 1) / n});
  });
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return a.l < b.l; });
  return out;
}

double height_tail_estimate(int rank, double density, std::int64_t n, const SliceParams& p,
                            double sigma, double radius_sq) {
  const double a = sigma - 0.5 * rank;
  if (!(a > 0.0)) return std::numeric_limits<double>::infinity();
  const double b = 0.5 * rank;
  const double c2 = p.c_sq(n);
  const double t = c2 / (c2 + std::max(radius_sq, 0.0));
  const double log_pref = std::log(density) - sigma * std::log(0.5 * static_cast<double>(n) * p.h) +
                          std::log(2.0) + b * std::log(std::numbers::pi) - std::lgamma(b) +
                          std::log(0.5) + (0.5 * rank - sigma) * std::log(c2) +
                          std::log(boost::math::beta(a, b));
  const double frac = t >= 1.0 ? 1.0 : boost::math::ibeta(a, b, t);
  return std::exp(log_pref) * frac;
}

EvalResult direct_poincare(const GramLattice& k, std::span<const double> v, const SliceParams& p,
                           Complex s, const TruncationPolicy& policy, const Budget& budget,
                           const DirectOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  policy.validate();
  require_rank(k, v.size(), "direct_poincare");
  if (!k.positive_definite()) throw UsageError("direct_poincare: Leech part must be positive definite");
  if (!k.even() || !k.unimodular()) throw UsageError("direct_poincare: needs an even self-dual lattice");
  const SliceParams checked(p.k, p.h);
  const int m = k.rank();
  const double sigma = s.real();

  EvalResult res;
  res.method = "direct";
  res.policy = policy;
  if (sigma <= m + 1) res.add_flag("formal");
  const Complex prefactor = 1.0 + std::exp(Complex(0.0, -std::numbers::pi) * s);

  lattice::ShortVectorEnumerator en(k);
  CompensatedSum<Complex> total;
  double tail = 0.0;
  const std::int64_t n_max = policy.n_max;
  auto power = [&](double base) { return std::exp(-s * std::log(base)); };

  auto finish = [&] {
    res.value = prefactor * total.value();
    res.tail_estimate = std::abs(prefactor) * tail;
    res.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  };

  try {
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const double density = arith::to_double(expsums::j_zero(m, n));
      const double nn = static_cast<double>(n);
      const double c2 = checked.c_sq(n);
      std::vector<double> center(v.begin(), v.end());
      for (auto& x : center) x *= nn;
      HeightTerm ht;
      ht.n = n;
      CompensatedSum<Complex> sub;
      double r2 = 0.0, prev_r2 = -1.0;
      double tail_n = 0.0;
      while (true) {
        const double inner_cut = prev_r2 < 0.0 ? -1.0 : nn * nn * prev_r2;
        en.visit(center, nn * nn * r2, budget, [&](std::span<const std::int64_t>, std::int64_t l2, double d2) {
          if (d2 <= inner_cut) return;
          if (arith::mod(l2 - 2, 2 * n) != 0) return;
          const double pairing = 0.5 * nn * checked.h * (c2 + d2 / (nn * nn));
          if (!(pairing > 0.0)) throw IntegrityError("root pairing is not positive");
          sub += power(pairing);
          ++ht.count;
        });
        tail_n = opts.safety * height_tail_estimate(m, density, n, checked, sigma, r2);
        const double scale = std::abs(total.value() + sub.value());
        if (!std::isfinite(tail_n) || tail_n <= policy.tol * scale / static_cast<double>(n_max)) break;
        budget.check_time(res.terms + ht.count, "direct_poincare");
        prev_r2 = r2;
        r2 += opts.radius_step;
      }
      ht.subtotal = prefactor * sub.value();
      ht.radius_sq = r2;
      total += sub.value();
      tail += tail_n;
      res.terms += ht.count;
      res.heights.push_back(ht);
    }
  } catch (const ResourceError& e) {
    tail = std::numeric_limits<double>::infinity();
    finish();
    res.add_flag("partial");
    throw PartialEvaluation(std::string("direct_poincare: ") + e.what(), res);
  }

  // Heights beyond nMax: whole-height continuum estimates, summed until they
  // are negligible, then closed off with the n^(m-1-sigma) integral.
  if (sigma > m) {
    double beyond = 0.0;
    std::int64_t n = n_max + 1;
    double last = 0.0;
    for (; n <= n_max + 20000; ++n) {
      last = opts.safety * height_tail_estimate(m, arith::to_double(expsums::j_zero(m, n)), n, checked, sigma, 0.0);
      beyond += last;
      if (last < 1e-20 * beyond) break;
    }
    beyond += last * static_cast<double>(n) / (sigma - m);
    tail += beyond;
    res.tail_kind = TailKind::kHeuristic;
    res.add_flag("heuristic-tail");
  } else {
    tail = std::numeric_limits<double>::infinity();
    res.tail_kind = TailKind::kNone;
    res.add_flag("no-tail-bound");
  }
  finish();
  return res;
}

}  // namespace leechps::lorentz
