#pragma once

#include <functional>
#include <vector>

namespace lplab {

// Radial profile f(r), r >= 0, stored as values and derivatives on a uniform
// grid and evaluated by cubic Hermite interpolation. Zero beyond rmax.
class RadialTable {
 public:
  RadialTable() = default;
  RadialTable(std::vector<double> f, std::vector<double> df, double h);

  double value(double r) const;
  double derivative(double r) const;
  double rmax() const { return h_ * static_cast<double>(f_.empty() ? 0 : f_.size() - 1); }
  double spacing() const { return h_; }
  double at_origin() const { return f_.empty() ? 0.0 : f_.front(); }

  // Returns a copy with values and derivatives multiplied by c.
  RadialTable scaled(double c) const;

 private:
  std::vector<double> f_, df_;
  double h_ = 1.0;
};

// Tabulates f(|x|) = int_{R^N} b(|xi|) exp(2 pi i x.xi) dxi for a radial
// spectrum b supported in [ra, rb], N in {1,2,3}.
RadialTable inverse_radial_transform(int N, const std::function<double(double)>& b,
                                     double ra, double rb, double rmax, double h,
                                     int nodes);

// f(0) for the same transform: |S^{N-1}| int b(r) r^{N-1} dr.
double radial_transform_at_origin(int N, const std::function<double(double)>& b,
                                  double ra, double rb, int nodes);

}  // namespace lplab
