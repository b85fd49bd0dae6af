#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leechps/budget.hpp"
#include "leechps/error.hpp"
#include "leechps/lattice.hpp"

namespace leechps::lattice {

// Fincke-Pohst enumeration (Schnorr-Euchner zig-zag order) over a positive
// definite lattice. Pruning uses a floating Cholesky factor; every emitted
// vector has its norm and distance re-verified exactly, so vectors with
// distance exactly radius_sq are always included.
class ShortVectorEnumerator {
 public:
  explicit ShortVectorEnumerator(const GramLattice& k);

  // Calls visit(x, norm(x), dist_sq) for every lattice x with
  // norm(x - center) <= radius_sq, in a fixed deterministic order. Returns the
  // number of vectors visited.
  template <class Visitor>
  std::uint64_t visit(std::span<const double> center, double radius_sq,
                      const Budget& budget, Visitor&& visitor) const;

  const GramLattice& lattice() const { return k_; }

 private:
  // Exact test of norm(x - center) <= radius_sq for non-integral centers near
  // the boundary.
  bool exact_within(std::span<const std::int64_t> x, std::span<const double> center,
                    double radius_sq) const;

  const GramLattice& k_;
  int m_;
  std::vector<double> b_;   // squared Cholesky diagonal
  std::vector<double> mu_;  // mu_[i*m + j] = R_ij / R_ii for j > i
};

// All lattice vectors within radius_sq of center, sorted lexicographically.
std::vector<Coords> short_vectors(const GramLattice& k, std::span<const double> center,
                                  double radius_sq, const Budget& budget = {});

// Exact counts {norm -> count} of vectors with norm <= radius_sq (center 0).
std::map<std::int64_t, std::uint64_t> shell_counts(const GramLattice& k,
                                                   std::int64_t radius_sq,
                                                   const Budget& budget = {});

// Enumerates shells up to radius_sq and attaches the counts as certificates.
void certify_shells(const GramLattice& k, std::int64_t radius_sq, const Budget& budget = {});

// Coset walk over M/nM in reflected n-ary Gray order. Each step changes a
// single coordinate by +-1, so the norm and any number of integer linear
// forms are updated in O(rank). Representatives have coordinates in [0, n).
class CosetWalker {
 public:
  CosetWalker(const GramLattice& k, std::int64_t n, const Budget& budget);

  std::uint64_t coset_count() const { return count_; }

  // visit(a, norm(a), forms) where forms[t] = <linear_forms[t], a>.
  template <class Visitor>
  void walk(const std::vector<std::vector<std::int64_t>>& linear_forms,
            Visitor&& visitor) const;

 private:
  const GramLattice& k_;
  std::int64_t n_;
  const Budget& budget_;
  std::uint64_t count_;
};

// Streams one representative per coset of M/n, restricted to
// M_n(d) = {l : l^2/2 = d mod n} when d is given. visit(coords, norm).
template <class Visitor>
void coset_enumerate(const GramLattice& k, std::int64_t n, std::optional<std::int64_t> d,
                     const Budget& budget, Visitor&& visitor);

// ---------------------------------------------------------------------------

template <class Visitor>
std::uint64_t ShortVectorEnumerator::visit(std::span<const double> center,
                                           double radius_sq, const Budget& budget,
                                           Visitor&& visitor) const {
  if (static_cast<int>(center.size()) != m_)
    throw UsageError("short vector enumeration: center has wrong dimension");
  if (!(radius_sq >= 0.0)) throw UsageError("short vector enumeration: radius_sq < 0");
  const int m = m_;
  std::uint64_t visited = 0;
  if (m == 0) {
    visitor(std::span<const std::int64_t>{}, std::int64_t{0}, 0.0);
    return 1;
  }

  bool integral_center = true;
  for (double c : center) integral_center &= (std::floor(c) == c);
  std::vector<double> gc(m, 0.0);
  std::vector<std::int64_t> gc_int(m, 0);
  long double cgc = 0.0L;
  for (int i = 0; i < m; ++i) {
    long double acc = 0.0L;
    std::int64_t acc_int = 0;
    for (int j = 0; j < m; ++j) {
      acc += static_cast<long double>(k_.gram(i, j)) * center[j];
      if (integral_center) acc_int += k_.gram(i, j) * static_cast<std::int64_t>(center[j]);
    }
    gc[i] = static_cast<double>(acc);
    gc_int[i] = acc_int;
    cgc += acc * center[i];
  }
  std::int64_t cgc_int = 0;
  if (integral_center)
    for (int i = 0; i < m; ++i) cgc_int += gc_int[i] * static_cast<std::int64_t>(center[i]);

  const double bound = radius_sq * (1.0 + 1e-10) + 1e-10;
  std::vector<std::int64_t> x(m, 0), dx(m, 0), ddx(m, 0);
  std::vector<double> ctr(m, 0.0), dist(m + 1, 0.0);
  // g[l] = sum_{k > l} G_lk x_k (exact); nrm[i] = sum_{j,k >= i} G_jk x_j x_k;
  // pc[i] = sum_{k >= i} x_k (Gc)_k.
  std::vector<std::int64_t> g(m, 0), nrm(m + 1, 0), pci(m + 1, 0);
  std::vector<long double> pc(m + 1, 0.0L);

  auto set_coord = [&](int i, std::int64_t value) {
    const std::int64_t delta = value - x[i];
    if (delta != 0) {
      for (int l = 0; l < i; ++l) g[l] += delta * k_.gram(l, i);
      x[i] = value;
    }
    nrm[i] = nrm[i + 1] + x[i] * (2 * g[i] + k_.gram(i, i) * x[i]);
    pc[i] = pc[i + 1] + static_cast<long double>(x[i]) * gc[i];
    pci[i] = pci[i + 1] + x[i] * gc_int[i];
  };
  auto center_at = [&](int i) {
    double c = center[i];
    const double* mu = mu_.data() + static_cast<std::size_t>(i) * m;
    for (int j = i + 1; j < m; ++j) c -= mu[j] * (static_cast<double>(x[j]) - center[j]);
    return c;
  };
  auto start_level = [&](int i) {
    ctr[i] = center_at(i);
    const double r = std::round(ctr[i]);
    set_coord(i, static_cast<std::int64_t>(r));
    dx[i] = ddx[i] = (ctr[i] >= r) ? 1 : -1;
  };
  auto advance = [&](int i) {
    set_coord(i, x[i] + dx[i]);
    ddx[i] = -ddx[i];
    dx[i] = ddx[i] - dx[i];
  };

  std::uint64_t nodes = 0;
  int i = m - 1;
  start_level(i);
  while (true) {
    if ((++nodes & 0xFFFF) == 0) budget.check_time(visited, "short vector enumeration");
    const double diff = static_cast<double>(x[i]) - ctr[i];
    const double d = dist[i + 1] + b_[i] * diff * diff;
    if (d <= bound) {
      if (i > 0) {
        dist[i] = d;
        --i;
        start_level(i);
        continue;
      }
      const std::int64_t nx = nrm[0];
      bool inside;
      double dist_sq;
      if (integral_center) {
        const std::int64_t exact = nx - 2 * pci[0] + cgc_int;
        inside = static_cast<double>(exact) <= radius_sq;
        dist_sq = static_cast<double>(exact);
      } else {
        const long double dd = static_cast<long double>(nx) - 2.0L * pc[0] + cgc;
        dist_sq = static_cast<double>(dd);
        const long double slack = 1e-9L * (1.0L + radius_sq);
        if (dd < radius_sq - slack)
          inside = true;
        else if (dd > radius_sq + slack)
          inside = false;
        else
          inside = exact_within(x, center, radius_sq);
      }
      if (inside) {
        if (visited >= budget.max_vectors)
          throw ResourceError("short vector enumeration: vector budget exceeded", visited);
        ++visited;
        visitor(std::span<const std::int64_t>(x), nx, dist_sq);
      }
      advance(0);
      continue;
    }
    ++i;
    if (i == m) break;
    advance(i);
  }
  return visited;
}

template <class Visitor>
void CosetWalker::walk(const std::vector<std::vector<std::int64_t>>& linear_forms,
                       Visitor&& visitor) const {
  const int m = k_.rank();
  const std::size_t nf = linear_forms.size();
  std::vector<std::int64_t> a(m, 0), g(m, 0), forms(nf, 0);
  std::int64_t nrm = 0;
  if (n_ == 1 || m == 0) {
    visitor(std::span<const std::int64_t>(a), nrm, std::span<const std::int64_t>(forms));
    return;
  }
  // Knuth, TAOCP 7.2.1.1 Algorithm H (loopless reflected mixed-radix Gray).
  std::vector<int> f(m + 1), o(m, 1);
  for (int j = 0; j <= m; ++j) f[j] = j;
  std::uint64_t steps = 0;
  while (true) {
    visitor(std::span<const std::int64_t>(a), nrm, std::span<const std::int64_t>(forms));
    if ((++steps & 0xFFFFF) == 0) budget_.check_time(steps, "coset walk");
    const int j = f[0];
    f[0] = 0;
    if (j == m) break;
    const std::int64_t delta = o[j];
    a[j] += delta;
    nrm += delta * (2 * g[j] + delta * k_.gram(j, j));
    const auto col = k_.gram_row(j);
    for (int l = 0; l < m; ++l) g[l] += delta * col[l];
    for (std::size_t t = 0; t < nf; ++t) forms[t] += delta * linear_forms[t][j];
    if (a[j] == 0 || a[j] == n_ - 1) {
      o[j] = -o[j];
      f[j] = f[j + 1];
      f[j + 1] = j + 1;
    }
  }
}

template <class Visitor>
void coset_enumerate(const GramLattice& k, std::int64_t n, std::optional<std::int64_t> d,
                     const Budget& budget, Visitor&& visitor) {
  if (d && !k.even())
    throw UsageError("coset_enumerate: the M_n(d) filter needs an even lattice");
  CosetWalker walker(k, n, budget);
  const std::vector<std::vector<std::int64_t>> none;
  walker.walk(none, [&](std::span<const std::int64_t> a, std::int64_t nrm,
                        std::span<const std::int64_t>) {
    if (d && arith::mod(nrm / 2 - *d, n) != 0) return;
    visitor(a, nrm);
  });
}

}  // namespace leechps::lattice
