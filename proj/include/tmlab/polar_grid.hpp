#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace tmlab {

using Point = std::complex<double>;

enum class Spacing { geometric, uniform };

// Rings i = 0 .. n_r-1 sit at t_i = log(1/r_i) with t_0 = 0 (the boundary);
// index n_r is the centre. Geometric spacing puts t_1 .. t_{n_r-1} in
// geometric progression from t_min to t_max; uniform spacing uses
// r_i = 1 - i/n_r. Values live on (n_r+1) x n_theta nodes, row-major by ring.
class PolarGrid {
 public:
  PolarGrid(int n_r, int n_theta, Spacing spacing = Spacing::geometric, double t_min = 1e-3,
            double t_max = 48.0);

  int n_r() const { return n_r_; }
  int n_theta() const { return n_theta_; }
  Spacing spacing() const { return spacing_; }
  double t_min() const { return t_min_; }
  double t_max() const { return t_max_; }

  double t(int i) const { return t_[std::size_t(i)]; }
  double r(int i) const { return i >= n_r_ ? 0.0 : r_[std::size_t(i)]; }
  const std::vector<double>& ts() const { return t_; }
  double dtheta() const { return dtheta_; }
  double theta(int k) const { return dtheta_ * k; }

  std::size_t size() const { return std::size_t(n_r_ + 1) * std::size_t(n_theta_); }
  std::size_t index(int i, int k) const {
    return std::size_t(i) * std::size_t(n_theta_) + std::size_t(k);
  }
  Point node(int i, int k) const { return std::polar(r(i), theta(k)); }

  // one angular cell of band i: between rings i and i+1, or the central
  // sector for i = n_r - 1
  double cell_area(int i) const;
  double total_area() const;
  double coarsest_cell() const;
  double local_cell_size(Point z) const;

  // piecewise bilinear interpolation in (t, theta); a cone in r inside the
  // innermost ring; 0 outside the unit disc
  double interpolate(const std::vector<double>& values, Point z) const;

  bool operator==(const PolarGrid& o) const;

 private:
  int n_r_, n_theta_;
  Spacing spacing_;
  double t_min_, t_max_;
  double dtheta_;
  std::vector<double> t_, r_;
};

using GridPtr = std::shared_ptr<const PolarGrid>;

GridPtr make_grid(int n_r, int n_theta, Spacing spacing = Spacing::geometric,
                  double t_min = 1e-3, double t_max = 48.0);

}  // namespace tmlab
