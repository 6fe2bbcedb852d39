#include "ebfreq/bspline.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "ebfreq/error.hpp"

namespace ebfreq {

CubicBSplineBasis::CubicBSplineBasis(int n_basis) : n_basis_(n_basis) {
  if (n_basis < kDegree + 1) {
    throw domain_error("CubicBSplineBasis: n_basis must be >= 4, got " + std::to_string(n_basis));
  }
  const int n_intervals = n_basis - kDegree;
  knots_.reserve(static_cast<std::size_t>(n_basis + kDegree + 1));
  for (int i = 0; i < kDegree; ++i) knots_.push_back(0.0);
  for (int i = 0; i <= n_intervals; ++i) {
    knots_.push_back(static_cast<double>(i) / static_cast<double>(n_intervals));
  }
  for (int i = 0; i < kDegree; ++i) knots_.push_back(1.0);
}

int CubicBSplineBasis::find_span(double p) const {
  // Index s with knots[s] <= p < knots[s+1]; p == 1 goes to the last nonempty span.
  const int last = n_basis_ - 1;
  if (p >= knots_[static_cast<std::size_t>(last + 1)]) return last;
  const auto it = std::upper_bound(knots_.begin() + kDegree, knots_.begin() + last + 1, p);
  return static_cast<int>(it - knots_.begin()) - 1;
}

void CubicBSplineBasis::evaluate(double p, std::span<double> out) const {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw domain_error("bspline_basis: p must lie in [0, 1], got " + std::to_string(p));
  }
  if (out.size() != static_cast<std::size_t>(n_basis_)) {
    throw domain_error("bspline_basis: output span has wrong size");
  }
  std::fill(out.begin(), out.end(), 0.0);

  // Triangular evaluation of the kDegree+1 nonzero functions on the span.
  const int span = find_span(p);
  std::array<double, kDegree + 1> values{};
  std::array<double, kDegree + 1> left{};
  std::array<double, kDegree + 1> right{};
  values[0] = 1.0;
  for (int j = 1; j <= kDegree; ++j) {
    left[j] = p - knots_[static_cast<std::size_t>(span + 1 - j)];
    right[j] = knots_[static_cast<std::size_t>(span + j)] - p;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      const double temp = values[r] / (right[r + 1] + left[j - r]);
      values[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    values[j] = saved;
  }
  for (int j = 0; j <= kDegree; ++j) {
    out[static_cast<std::size_t>(span - kDegree + j)] = values[j];
  }
}

std::vector<double> CubicBSplineBasis::evaluate(double p) const {
  std::vector<double> out(static_cast<std::size_t>(n_basis_));
  evaluate(p, out);
  return out;
}

std::vector<double> CubicBSplineBasis::greville() const {
  std::vector<double> xi(static_cast<std::size_t>(n_basis_));
  for (int j = 0; j < n_basis_; ++j) {
    const auto k = static_cast<std::size_t>(j);
    xi[k] = (knots_[k + 1] + knots_[k + 2] + knots_[k + 3]) / 3.0;
  }
  return xi;
}

std::vector<double> CubicBSplineBasis::integrals() const {
  std::vector<double> w(static_cast<std::size_t>(n_basis_));
  for (int j = 0; j < n_basis_; ++j) {
    const auto k = static_cast<std::size_t>(j);
    w[k] = (knots_[k + kDegree + 1] - knots_[k]) / static_cast<double>(kDegree + 1);
  }
  return w;
}

std::vector<double> bspline_basis(int n_basis, double p) {
  return CubicBSplineBasis(n_basis).evaluate(p);
}

}  // namespace ebfreq
