#include "tmlab/averaging.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tmlab/error.hpp"

namespace tmlab {

namespace {

constexpr double kPi = std::numbers::pi;

// int over |x - c| < e^{-T} of the atom, 2 pi int_T^inf v(t) e^{-2t} dt
double disc_integral(const RadialProfile& v, double T) {
  T = std::max(T, 0.0);
  const auto& t = v.nodes();
  auto prim = [](double A, double B, double x) {
    double e = std::exp(-2.0 * x);
    return -e * (A + B * x) / 2.0 - B * e / 4.0;
  };
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    double a = std::max(t[i], T), b = t[i + 1];
    if (b <= a) continue;
    double B = v.slope(i), A = v.values()[i] - B * t[i];
    acc += prim(A, B, b) - prim(A, B, a);
  }
  acc += v.plateau() * std::exp(-2.0 * std::max(T, v.last_node())) / 2.0;
  return 2.0 * kPi * acc;
}

}  // namespace

double atom_ball_average(const Atom& a, double r, Point z) {
  double d = std::abs(z - a.center);
  double R = a.support_radius();
  if (d >= r + R) return 0.0;
  // the lens is not resolvable in floating point; u is smooth on that scale
  if (r < 1e-7 * d) return a(z);
  double total = 0.0;
  if (d < r) total += disc_integral(a.profile, -std::log(r - d));
  if (d > 0.0) {
    double lo = std::abs(r - d), hi = std::min(r + d, R);
    if (hi > lo) {
      // half-angle of the arc inside the ball; written to survive r << d
      auto f = [&](double rho) {
        double e = rho - d;
        double x = (r - e) * (r + e) / (4.0 * rho * d);
        double ang = 2.0 * std::asin(std::sqrt(std::clamp(x, 0.0, 1.0)));
        return a.profile(-std::log(rho)) * 2.0 * rho * ang;
      };
      std::vector<double> cuts{lo};
      for (double t : a.profile.nodes()) {
        double rho = std::exp(-t);
        if (rho > lo && rho < hi) cuts.push_back(rho);
      }
      cuts.push_back(hi);
      std::sort(cuts.begin(), cuts.end());
      if (cuts.size() > 66) {
        std::vector<double> even;
        for (int m = 0; m <= 64; ++m) even.push_back(lo + (hi - lo) * m / 64.0);
        cuts = even;
      }
      for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
            f, cuts[i], cuts[i + 1], 8, 1e-10);
    }
  }
  return total / (kPi * r * r);
}

double average(const DiscFunction& u, double r, Point z) {
  if (!(r > 0.0)) throw InvalidArgument("averaging radius must be > 0");
  double acc = 0.0;
  if (u.has_grid_part()) {
    if (std::abs(z) - r >= 1.0) {
      acc = 0.0;
    } else if (r < 0.05 * u.grid().local_cell_size(z)) {
      acc = u.grid_value(z);
    } else {
      const int np = 32;
      auto ring = [&](double rho) {
        double s = 0.0;
        for (int m = 0; m < np; ++m)
          s += u.grid_value(z + std::polar(rho, 2.0 * kPi * (m + 0.5) / np));
        return s / np * 2.0 * kPi * rho;
      };
      acc = boost::math::quadrature::gauss<double, 16>::integrate(ring, 0.0, r) / (kPi * r * r);
    }
  }
  for (const auto& a : u.atoms()) acc += atom_ball_average(a, r, z);
  return acc;
}

std::vector<double> average_field(const DiscFunction& u, double r) {
  const auto& g = u.grid();
  double h = g.coarsest_cell();
  if (r < h) {
    std::ostringstream os;
    os << "averaging radius " << r << " is below the grid resolution " << h
       << "; use a finer grid";
    throw InvalidArgument(os.str());
  }
  std::vector<double> out(g.size());
  for (int i = 0; i <= g.n_r(); ++i)
    for (int k = 0; k < g.n_theta(); ++k) {
      if (i == g.n_r() && k > 0) {
        out[g.index(i, k)] = out[g.index(i, 0)];
        continue;
      }
      out[g.index(i, k)] = average(u, r, g.node(i, k));
    }
  return out;
}

double osc_ratio(const DiscFunction& u, double r) {
  const auto& g = u.grid();
  auto s = u.sampled();
  auto Ar = average_field(s, r);
  const auto& v = s.values();
  double acc = 0.0;
  for (int i = 0; i < g.n_r(); ++i)
    for (int k = 0; k < g.n_theta(); ++k) {
      int k1 = k + 1 == g.n_theta() ? 0 : k + 1;
      double d2 = 0.0;
      for (auto idx : {g.index(i, k), g.index(i, k1), g.index(i + 1, k), g.index(i + 1, k1)})
        d2 += (Ar[idx] - v[idx]) * (Ar[idx] - v[idx]);
      acc += 0.25 * d2 * g.cell_area(i);
    }
  return std::sqrt(acc) / (r * std::sqrt(s.energy()));
}

double modulus_ratio(const DiscFunction& u, double r, const std::vector<PointPair>& pairs) {
  double l2 = lp_norm(u, 2.0);
  double worst = 0.0;
  for (const auto& p : pairs) {
    double dz = std::abs(p.a - p.b);
    if (dz == 0.0) continue;
    double drop = std::abs(std::abs(average(u, r, p.a)) - std::abs(average(u, r, p.b)));
    worst = std::max(worst, drop * std::pow(r, 1.5) / (l2 * std::sqrt(dz)));
  }
  return worst;
}

}  // namespace tmlab
