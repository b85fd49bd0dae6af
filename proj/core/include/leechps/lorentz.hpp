#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "leechps/budget.hpp"
#include "leechps/eval.hpp"
#include "leechps/lattice.hpp"
#include "leechps/numeric.hpp"

namespace leechps::lorentz {

// Parameters of the slice {z : z^2 = -k, ht(z) = h}; requires nu = 2h^2/k < 1.
struct SliceParams {
  double k = 1.0;
  double h = 0.5;

  SliceParams() = default;
  SliceParams(double k_, double h_);  // validates
  double nu() const { return 2.0 * h * h / k; }
  // c_n = sqrt(k/h^2 - 2/n^2) and its lower bound kappa = sqrt(2(1 - nu)/nu).
  double c_sq(std::int64_t n) const;
  double c(std::int64_t n) const;
  double kappa() const;
};

// (lambda; m, n) in Lambda + II_{1,1}, real coordinates; norm lambda^2 - 2mn.
struct LorentzPoint {
  std::vector<double> leech;
  double m = 0.0;
  double n = 0.0;
};

// Integral point of L.
struct LorentzVector {
  lattice::Coords leech;
  std::int64_t m = 0;
  std::int64_t n = 0;
};

// Positive root (l; n, (l^2/2 - 1)/n) of height n.
struct Root {
  lattice::Coords l;
  std::int64_t height = 0;
  std::int64_t n_coord = 0;

  LorentzVector vector() const { return {l, height, n_coord}; }
};

double inner(const lattice::GramLattice& k, const LorentzPoint& a, const LorentzPoint& b);
std::int64_t inner(const lattice::GramLattice& k, const LorentzVector& a, const LorentzVector& b);
double norm(const lattice::GramLattice& k, const LorentzPoint& a);
std::int64_t norm(const lattice::GramLattice& k, const LorentzVector& a);

LorentzPoint to_real(const LorentzVector& x);
// rho = (0; 0, 1).
LorentzVector rho(int rank);

// ht(v) = -<v, rho> = m.
double height(const LorentzPoint& v);
std::int64_t height(const LorentzVector& v);

// s_lambda = (lambda; 1, lambda^2/2 - 1).
Root leech_root(const lattice::GramLattice& k, std::span<const std::int64_t> lambda);
// Root of height n over l; UsageError unless l^2 = 2 mod 2n.
Root make_root(const lattice::GramLattice& k, std::int64_t n, std::span<const std::int64_t> l);

// T_v(l; a, b) = (l + a v; a, b + <l, v> + a v^2/2).
LorentzPoint translate(const lattice::GramLattice& k, std::span<const double> v, const LorentzPoint& x);
// Exact version for lattice translations.
LorentzVector translate(const lattice::GramLattice& k, std::span<const std::int64_t> v,
                        const LorentzVector& x);

// phi(v) = T_v(0; h, k/2h) = (h v; h, ((h v)^2 + k) / 2h).
LorentzPoint slice_point(const lattice::GramLattice& k, std::span<const double> v, const SliceParams& p);
std::vector<double> slice_inverse(const LorentzPoint& z);

// -<r_{n,l}, phi(v)> via the completed square (n h / 2)(c_n^2 + (v - l/n)^2).
double root_pairing(const lattice::GramLattice& k, std::int64_t n, std::span<const std::int64_t> l,
                    std::span<const double> v, const SliceParams& p);
// The same quantity from the Lorentzian inner product.
double root_pairing_direct(const lattice::GramLattice& k, std::int64_t n,
                           std::span<const std::int64_t> l, std::span<const double> v,
                           const SliceParams& p);

// min of -<s_lambda, phi(v)> over lambda with (v - lambda)^2 <= sample_radius_sq
// (+infinity when the ball is empty). IntegrityError if it is not positive.
double chamber_margin(const lattice::GramLattice& k, std::span<const double> v, const SliceParams& p,
                      double sample_radius_sq, const Budget& budget = {});

// Roots (l; n, *) with (center - l/n)^2 <= radius_sq, sorted by l.
std::vector<Root> roots_of_height_near(const lattice::GramLattice& k, std::int64_t n,
                                       std::span<const double> center, double radius_sq,
                                       const Budget& budget = {});

struct DirectOptions {
  double safety = 10.0;          // multiplier on continuum tail estimates
  double radius_step = 0.5;      // growth of the per-height ball, in (l/n)^2 units
  bool deterministic = true;     // kept for interface symmetry; evaluation is sequential
};

// (1 + e(-s/2)) sum over heights n <= nMax of sum_l root_pairing^-s. Ball
// radii grow per height until the continuum tail estimate beyond the ball is
// below tol |value| / nMax. Flags "formal" when Re s <= rank + 1.
EvalResult direct_poincare(const lattice::GramLattice& k, std::span<const double> v,
                           const SliceParams& p, Complex s, const TruncationPolicy& policy,
                           const Budget& budget = {}, const DirectOptions& opts = {});

// Continuum estimate of the height-n sum of |pairing^-s| outside radius r
// around v: density j_{0,n} times the radial integral.
double height_tail_estimate(int rank, double density, std::int64_t n, const SliceParams& p,
                            double sigma, double radius_sq);

}  // namespace leechps::lorentz
