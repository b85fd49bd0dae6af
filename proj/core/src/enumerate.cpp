#include "leechps/enumerate.hpp"

#include <algorithm>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace leechps::lattice {

ShortVectorEnumerator::ShortVectorEnumerator(const GramLattice& k) : k_(k), m_(k.rank()) {
  if (!k.positive_definite())
    throw UsageError("short vector enumeration needs a positive definite lattice");
  const int m = m_;
  Eigen::MatrixXd g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) g(i, j) = static_cast<double>(k.gram(i, j));
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw IntegrityError("Cholesky factorisation failed");
  const Eigen::MatrixXd r = llt.matrixU();
  b_.resize(m);
  mu_.assign(static_cast<std::size_t>(m) * m, 0.0);
  for (int i = 0; i < m; ++i) {
    b_[i] = r(i, i) * r(i, i);
    for (int j = i + 1; j < m; ++j) mu_[static_cast<std::size_t>(i) * m + j] = r(i, j) / r(i, i);
  }
}

bool ShortVectorEnumerator::exact_within(std::span<const std::int64_t> x,
                                         std::span<const double> center,
                                         double radius_sq) const {
  using boost::multiprecision::cpp_rational;
  // Doubles are dyadic rationals, so this comparison is exact.
  std::vector<cpp_rational> y(m_);
  for (int i = 0; i < m_; ++i) {
    int e = 0;
    const double mant = std::frexp(center[i], &e);
    const auto scaled = static_cast<std::int64_t>(std::ldexp(mant, 53));
    cpp_rational c(scaled);
    if (e - 53 >= 0)
      c *= cpp_rational(boost::multiprecision::cpp_int(1) << (e - 53));
    else
      c /= cpp_rational(boost::multiprecision::cpp_int(1) << (53 - e));
    y[i] = cpp_rational(x[i]) - c;
  }
  cpp_rational acc = 0;
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < m_; ++j) acc += y[i] * k_.gram(i, j) * y[j];
  int e = 0;
  const double mant = std::frexp(radius_sq, &e);
  cpp_rational r(static_cast<std::int64_t>(std::ldexp(mant, 53)));
  if (e - 53 >= 0)
    r *= cpp_rational(boost::multiprecision::cpp_int(1) << (e - 53));
  else
    r /= cpp_rational(boost::multiprecision::cpp_int(1) << (53 - e));
  return acc <= r;
}

std::vector<Coords> short_vectors(const GramLattice& k, std::span<const double> center,
                                  double radius_sq, const Budget& budget) {
  ShortVectorEnumerator en(k);
  std::vector<Coords> out;
  en.visit(center, radius_sq, budget, [&](std::span<const std::int64_t> x, std::int64_t, double) {
    out.emplace_back(x.begin(), x.end());
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::map<std::int64_t, std::uint64_t> shell_counts(const GramLattice& k, std::int64_t radius_sq,
                                                   const Budget& budget) {
  ShortVectorEnumerator en(k);
  std::map<std::int64_t, std::uint64_t> counts;
  for (std::int64_t r = 0; r <= radius_sq; r += k.even() ? 2 : 1) counts[r] = 0;
  const std::vector<double> zero(k.rank(), 0.0);
  en.visit(zero, static_cast<double>(radius_sq), budget,
           [&](std::span<const std::int64_t>, std::int64_t nrm, double) { ++counts[nrm]; });
  return counts;
}

void certify_shells(const GramLattice& k, std::int64_t radius_sq, const Budget& budget) {
  k.attach_shell_certificate(shell_counts(k, radius_sq, budget), radius_sq);
}

CosetWalker::CosetWalker(const GramLattice& k, std::int64_t n, const Budget& budget)
    : k_(k), n_(n), budget_(budget), count_(1) {
  if (n < 1) throw UsageError("coset walk: modulus must be >= 1");
  for (int i = 0; i < k.rank(); ++i) {
    if (count_ > budget.max_cosets / static_cast<std::uint64_t>(n))
      throw ResourceError("coset walk: n^rank = " + std::to_string(n) + "^" +
                              std::to_string(k.rank()) + " exceeds the coset budget of " +
                              std::to_string(budget.max_cosets),
                          0);
    count_ *= static_cast<std::uint64_t>(n);
  }
}

}  // namespace leechps::lattice
