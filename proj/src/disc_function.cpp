#include "tmlab/disc_function.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tmlab/error.hpp"

namespace tmlab {

namespace {

constexpr double kPi = std::numbers::pi;
using boost::math::quadrature::gauss_kronrod;

// mean of log(1 / max(|x - b|, R)) over the circle |x - a| = rho, d = |a - b|
double log_cap_mean(double rho, double R, double d) {
  if (d == 0.0) return -std::log(std::max(rho, R));
  if (d + rho <= R) return -std::log(R);
  if (d >= rho + R) return -std::log(d);
  if (rho >= d + R) return -std::log(rho);
  double c = (rho * rho + d * d - R * R) / (2.0 * rho * d);
  double ps = std::acos(std::clamp(c, -1.0, 1.0));
  auto f = [&](double psi) {
    double s = std::sin(0.5 * psi);
    double D2 = (rho - d) * (rho - d) + 4.0 * rho * d * s * s;
    return -0.5 * std::log(D2);
  };
  double tail = ps < kPi ? gauss_kronrod<double, 15>::integrate(f, ps, kPi, 10, 1e-13) : 0.0;
  return (ps * -std::log(R) + tail) / kPi;
}

double shell(double a, double b) {
  if (std::isinf(b)) return std::exp(-2.0 * a);
  return -std::exp(-2.0 * a) * std::expm1(-2.0 * (b - a));
}

}  // namespace

double Atom::operator()(Point z) const {
  double d = std::abs(z - center);
  if (d == 0.0) return profile.plateau();
  return profile(-std::log(d));
}

double Atom::support_radius() const { return std::exp(-profile.support_start()); }

double circle_mean(const Atom& a, Point c, double rho) {
  double d = std::abs(c - a.center);
  if (rho == 0.0) return a(c);
  if (d == 0.0) return a.profile(-std::log(rho));
  if (d >= rho + a.support_radius()) return 0.0;
  const auto& t = a.profile.nodes();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    double s = a.profile.slope(i);
    if (s == 0.0) continue;
    double R0 = std::exp(-t[i]), R1 = std::exp(-t[i + 1]);
    acc += s * (log_cap_mean(rho, R1, d) - log_cap_mean(rho, R0, d));
  }
  return acc;
}

double atom_inner(const Atom& a, const Atom& b) {
  if (a.center == b.center) return grad_inner(a.profile, b.profile);
  double d = std::abs(a.center - b.center);
  if (d >= a.support_radius() + b.support_radius()) return 0.0;
  const auto& t = a.profile.nodes();
  double acc = 0.0;
  double prev = circle_mean(b, a.center, std::exp(-t[0]));
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    double next = circle_mean(b, a.center, std::exp(-t[i + 1]));
    acc += a.profile.slope(i) * (next - prev);
    prev = next;
  }
  return 2.0 * kPi * acc;
}

// ---------------------------------------------------------------------------

DiscFunction::DiscFunction(GridPtr grid) : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

DiscFunction::DiscFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  const auto& g = *grid_;
  if (values_.size() != g.size()) throw InvalidArgument("disc function value count mismatch");
  for (double v : values_)
    if (!std::isfinite(v)) throw InvalidArgument("non-finite disc function value");
  for (int k = 0; k < g.n_theta(); ++k) {
    if (values_[g.index(0, k)] != 0.0)
      throw InvalidArgument("disc function must vanish on the boundary ring");
    if (values_[g.index(g.n_r(), k)] != values_[g.index(g.n_r(), 0)])
      throw InvalidArgument("disc function centre row must be constant");
  }
}

bool DiscFunction::has_grid_part() const {
  return std::any_of(values_.begin(), values_.end(), [](double v) { return v != 0.0; });
}

void DiscFunction::add_atom(const Atom& a, double weight) {
  double reach = std::abs(a.center) + a.support_radius();
  if (!a.profile.is_zero() && reach > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "atom support reaches radius " << reach << " > 1";
    throw SupportOverflow(os.str(), reach);
  }
  if (a.profile.dim() != 2) throw InvalidArgument("disc atoms need N = 2 profiles");
  for (auto it = atoms_.begin(); it != atoms_.end(); ++it) {
    if (it->center == a.center) {
      it->profile = it->profile + a.profile.scaled(weight);
      if (it->profile.is_zero()) atoms_.erase(it);
      return;
    }
  }
  if (a.profile.is_zero() || weight == 0.0) return;
  atoms_.push_back({a.center, a.profile.scaled(weight)});
}

double DiscFunction::operator()(Point z) const {
  double v = grid_->interpolate(values_, z);
  for (const auto& a : atoms_) v += a(z);
  return v;
}

double DiscFunction::support_radius() const {
  double s = 0.0;
  const auto& g = *grid_;
  for (int i = 0; i <= g.n_r() && s == 0.0; ++i)
    for (int k = 0; k < g.n_theta(); ++k)
      if (values_[g.index(i, k)] != 0.0) {
        s = g.r(i - 1 < 0 ? 0 : i - 1);
        break;
      }
  for (const auto& a : atoms_) s = std::max(s, std::abs(a.center) + a.support_radius());
  return std::min(s, 1.0);
}

double DiscFunction::grid_energy() const {
  const auto& g = *grid_;
  const int nr = g.n_r(), nt = g.n_theta();
  const double b = g.dtheta();
  const auto& v = values_;
  double e = 0.0;
  for (int i = 0; i + 1 < nr; ++i) {
    double a = g.t(i + 1) - g.t(i);
    for (int k = 0; k < nt; ++k) {
      int k1 = k + 1 == nt ? 0 : k + 1;
      double u00 = v[g.index(i, k)], u10 = v[g.index(i + 1, k)];
      double u01 = v[g.index(i, k1)], u11 = v[g.index(i + 1, k1)];
      double p = u10 - u00, q = u01 - u00, d = u11 - u10 - u01 + u00;
      e += (b / a) * (p * p + p * d + d * d / 3.0) + (a / b) * (q * q + q * d + d * d / 3.0);
    }
  }
  // cone over the innermost ring
  double c = v[g.index(nr, 0)];
  double cone = 0.0;
  for (int k = 0; k < nt; ++k) {
    int k1 = k + 1 == nt ? 0 : k + 1;
    double A = v[g.index(nr - 1, k)] - c, B = v[g.index(nr - 1, k1)] - c;
    cone += b * (A * A + A * B + B * B) / 3.0 + (B - A) * (B - A) / b;
  }
  return e + 0.5 * cone;
}

double DiscFunction::energy() const {
  double e = has_grid_part() ? grid_energy() : 0.0;
  for (std::size_t n = 0; n < atoms_.size(); ++n) {
    const auto& a = atoms_[n];
    e += grad_inner(a.profile, a.profile);
    if (has_grid_part()) {
      // <grad g, grad a> = 2 pi sum_i slope_i (M_g(r_{i+1}) - M_g(r_i))
      const auto& t = a.profile.nodes();
      double cross = 0.0;
      double prev = grid_circle_mean(*this, a.center, std::exp(-t[0]));
      for (std::size_t i = 0; i + 1 < t.size(); ++i) {
        double next = grid_circle_mean(*this, a.center, std::exp(-t[i + 1]));
        cross += a.profile.slope(i) * (next - prev);
        prev = next;
      }
      e += 2.0 * 2.0 * kPi * cross;
    }
    for (std::size_t m = n + 1; m < atoms_.size(); ++m) e += 2.0 * atom_inner(a, atoms_[m]);
  }
  return e;
}

DiscFunction DiscFunction::sampled() const {
  const auto& g = *grid_;
  std::vector<double> v(values_);
  for (int i = 1; i <= g.n_r(); ++i)
    for (int k = 0; k < g.n_theta(); ++k) {
      double acc = 0.0;
      Point z = g.node(i, k);
      for (const auto& a : atoms_) acc += a(z);
      v[g.index(i, k)] += acc;
    }
  return DiscFunction(grid_, std::move(v));
}

DiscFunction DiscFunction::scaled(double c) const {
  DiscFunction out(grid_);
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = c * values_[i];
  for (const auto& a : atoms_) out.add_atom(a, c);
  return out;
}

DiscFunction& DiscFunction::operator+=(const DiscFunction& o) {
  if (!(grid_ == o.grid_ || *grid_ == *o.grid_))
    throw InvalidArgument("disc functions live on different grids");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  for (const auto& a : o.atoms_) add_atom(a, 1.0);
  return *this;
}

DiscFunction& DiscFunction::operator-=(const DiscFunction& o) {
  if (!(grid_ == o.grid_ || *grid_ == *o.grid_))
    throw InvalidArgument("disc functions live on different grids");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  for (const auto& a : o.atoms_) add_atom(a, -1.0);
  return *this;
}

DiscFunction operator+(DiscFunction a, const DiscFunction& b) { return a += b; }
DiscFunction operator-(DiscFunction a, const DiscFunction& b) { return a -= b; }

DiscFunction DiscFunction::from_radial(GridPtr grid, const RadialProfile& w) {
  DiscFunction u(std::move(grid));
  u.add_atom({Point(0.0, 0.0), w});
  return u;
}

// ---------------------------------------------------------------------------

double grid_circle_mean(const DiscFunction& u, Point c, double rho, int n) {
  if (!u.has_grid_part()) return 0.0;
  if (rho == 0.0) return u.grid_value(c);
  if (std::abs(c) - rho >= 1.0) return 0.0;
  if (n <= 0) n = rho < 1e-3 ? 64 : 512;
  const auto& g = u.grid();
  double acc = 0.0;
  for (int m = 0; m < n; ++m) acc += g.interpolate(u.values(), c + std::polar(rho, 2.0 * kPi * m / n));
  return acc / n;
}

double circle_mean(const DiscFunction& u, Point c, double rho) {
  double acc = grid_circle_mean(u, c, rho);
  for (const auto& a : u.atoms()) acc += circle_mean(a, c, rho);
  return acc;
}

// ---------------------------------------------------------------------------

std::vector<Cell> cell_samples(const DiscFunction& u, double patch_dt, int patch_angles) {
  struct Patch {
    Point c;
    double P;      // patch radius
    double t_end;  // innermost ring; a single disc cell lies inside
    std::vector<double> nodes;
  };
  std::vector<Patch> patches;
  const auto& atoms = u.atoms();
  std::vector<int> owner(atoms.size(), -1);
  for (std::size_t n = 0; n < atoms.size(); ++n) {
    if (owner[n] >= 0) continue;
    Patch p{atoms[n].center, 0.0, 0.0, {}};
    for (std::size_t m = n; m < atoms.size(); ++m) {
      if (owner[m] >= 0 || std::abs(atoms[m].center - p.c) > 1e-9) continue;
      owner[m] = int(patches.size());
      p.P = std::max(p.P, atoms[m].support_radius());
      p.t_end = std::max(p.t_end, atoms[m].profile.last_node());
      for (double t : atoms[m].profile.nodes()) p.nodes.push_back(t);
    }
    patches.push_back(std::move(p));
  }
  for (std::size_t a = 0; a < patches.size(); ++a)
    for (std::size_t b = 0; b < patches.size(); ++b)
      if (a != b) patches[a].P = std::min(patches[a].P, 0.5 * std::abs(patches[a].c - patches[b].c));

  std::vector<Cell> cells;
  const double dpsi = 2.0 * kPi / patch_angles;
  for (auto& p : patches) {
    double tp = -std::log(p.P);
    std::vector<double> ring{tp};
    std::sort(p.nodes.begin(), p.nodes.end());
    for (double t : p.nodes)
      if (t > ring.back()) ring.push_back(t);
    std::vector<double> fine{ring[0]};
    for (std::size_t i = 1; i < ring.size(); ++i) {
      int m = std::max(1, int(std::ceil((ring[i] - ring[i - 1]) / patch_dt)));
      for (int s = 1; s <= m; ++s) fine.push_back(ring[i - 1] + (ring[i] - ring[i - 1]) * s / m);
    }
    for (std::size_t i = 0; i + 1 < fine.size(); ++i) {
      double tm = 0.5 * (fine[i] + fine[i + 1]);
      double area = 0.5 * dpsi * shell(fine[i], fine[i + 1]);
      for (int k = 0; k < patch_angles; ++k)
        cells.push_back({u(p.c + std::polar(std::exp(-tm), dpsi * (k + 0.5))), area});
    }
    cells.push_back({u(p.c), kPi * std::exp(-2.0 * fine.back())});
  }

  const auto& g = u.grid();
  for (int i = 0; i < g.n_r(); ++i) {
    double rm = i + 1 < g.n_r() ? std::exp(-0.5 * (g.t(i) + g.t(i + 1))) : 0.5 * g.r(i);
    double area = g.cell_area(i);
    for (int k = 0; k < g.n_theta(); ++k) {
      Point z = std::polar(rm, g.dtheta() * (k + 0.5));
      bool inside = false;
      for (const auto& p : patches)
        if (std::abs(z - p.c) < p.P) {
          inside = true;
          break;
        }
      if (!inside) cells.push_back({u(z), area});
    }
  }
  return cells;
}

double lp_norm(const DiscFunction& u, double p) {
  double acc = 0.0;
  for (const auto& c : cell_samples(u)) acc += std::pow(std::abs(c.value), p) * c.area;
  return std::pow(acc, 1.0 / p);
}

}  // namespace tmlab
