#include "tmlab/polar_grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tmlab/error.hpp"

namespace tmlab {

PolarGrid::PolarGrid(int n_r, int n_theta, Spacing spacing, double t_min, double t_max)
    : n_r_(n_r), n_theta_(n_theta), spacing_(spacing), t_min_(t_min), t_max_(t_max) {
  if (n_r < 16) throw InvalidArgument("polar grid needs n_r >= 16");
  if (n_theta < 32) throw InvalidArgument("polar grid needs n_theta >= 32");
  dtheta_ = 2.0 * std::numbers::pi / n_theta;
  t_.resize(std::size_t(n_r));
  r_.resize(std::size_t(n_r));
  if (spacing == Spacing::geometric) {
    if (!(t_min > 0.0 && t_max > t_min))
      throw InvalidArgument("geometric grid needs 0 < t_min < t_max");
    double q = std::log(t_max / t_min) / (n_r - 2);
    t_[0] = 0.0;
    for (int i = 1; i < n_r; ++i) t_[std::size_t(i)] = t_min * std::exp(q * (i - 1));
    t_.back() = t_max;
    for (int i = 0; i < n_r; ++i) r_[std::size_t(i)] = std::exp(-t_[std::size_t(i)]);
  } else {
    for (int i = 0; i < n_r; ++i) {
      r_[std::size_t(i)] = 1.0 - double(i) / n_r;
      t_[std::size_t(i)] = -std::log(r_[std::size_t(i)]);
    }
    t_[0] = 0.0;
    t_min_ = t_[1];
    t_max_ = t_.back();
  }
}

double PolarGrid::cell_area(int i) const {
  double ro = r(i), ri = r(i + 1);
  return 0.5 * dtheta_ * (ro - ri) * (ro + ri);
}

double PolarGrid::total_area() const {
  double a = 0.0;
  for (int i = 0; i < n_r_; ++i) a += cell_area(i) * n_theta_;
  return a;
}

double PolarGrid::coarsest_cell() const {
  double w = 0.0;
  for (int i = 0; i < n_r_; ++i) w = std::max({w, r(i) - r(i + 1), r(i) * dtheta_});
  return w;
}

double PolarGrid::local_cell_size(Point z) const {
  double rz = std::abs(z);
  if (rz >= 1.0) return r(0) - r(1);
  double t = -std::log(rz);
  if (t >= t_.back()) return r(n_r_ - 1);
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  int i = int(it - t_.begin()) - 1;
  return std::min(r(i) - r(i + 1), rz * dtheta_);
}

double PolarGrid::interpolate(const std::vector<double>& v, Point z) const {
  double rz = std::abs(z);
  if (rz >= 1.0) return 0.0;
  double th = std::arg(z);
  if (th < 0.0) th += 2.0 * std::numbers::pi;
  double s = th / dtheta_;
  int k = int(s);
  if (k >= n_theta_) k = n_theta_ - 1;
  double wth = s - k;
  int k1 = k + 1 == n_theta_ ? 0 : k + 1;

  const int last = n_r_ - 1;
  if (rz <= r_.back()) {
    double g = (1.0 - wth) * v[index(last, k)] + wth * v[index(last, k1)];
    double c = v[index(n_r_, 0)];
    return c + (rz / r_.back()) * (g - c);
  }
  double t = -std::log(rz);
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  int i = std::clamp(int(it - t_.begin()) - 1, 0, last - 1);
  double wt = (t - t_[std::size_t(i)]) / (t_[std::size_t(i + 1)] - t_[std::size_t(i)]);
  double a = (1.0 - wth) * v[index(i, k)] + wth * v[index(i, k1)];
  double b = (1.0 - wth) * v[index(i + 1, k)] + wth * v[index(i + 1, k1)];
  return (1.0 - wt) * a + wt * b;
}

bool PolarGrid::operator==(const PolarGrid& o) const {
  return n_r_ == o.n_r_ && n_theta_ == o.n_theta_ && spacing_ == o.spacing_ &&
         t_min_ == o.t_min_ && t_max_ == o.t_max_;
}

GridPtr make_grid(int n_r, int n_theta, Spacing spacing, double t_min, double t_max) {
  return std::make_shared<const PolarGrid>(n_r, n_theta, spacing, t_min, t_max);
}

}  // namespace tmlab
