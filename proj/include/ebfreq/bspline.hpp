#pragma once

#include <span>
#include <vector>

namespace ebfreq {

// Cubic B-spline basis on a clamped, uniformly spaced knot vector over [0, 1].
class CubicBSplineBasis {
 public:
  static constexpr int kDegree = 3;

  explicit CubicBSplineBasis(int n_basis);

  int size() const { return n_basis_; }
  const std::vector<double>& knots() const { return knots_; }

  // Writes all n_basis values at p into out (size n_basis).
  void evaluate(double p, std::span<double> out) const;
  std::vector<double> evaluate(double p) const;

  // Greville abscissae; coefficients equal to f(greville) reproduce any linear f exactly.
  std::vector<double> greville() const;

  // Exact integral of each basis function over [0, 1].
  std::vector<double> integrals() const;

 private:
  int find_span(double p) const;

  int n_basis_;
  std::vector<double> knots_;
};

std::vector<double> bspline_basis(int n_basis, double p);

}  // namespace ebfreq
