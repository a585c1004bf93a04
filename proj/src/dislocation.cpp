#include "tmlab/dislocation.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tmlab/error.hpp"

namespace tmlab {

void validate(const DislocationParam& d) {
  if (d.j < 1) throw InvalidArgument("dislocation scale j must be >= 1");
  if (std::abs(d.zeta) > 1.0) throw InvalidArgument("dislocation centre outside the disc");
}

DiscFunction inflate(const RadialProfile& w, const DislocationParam& d, GridPtr grid) {
  validate(d);
  if (w.dim() != 2) throw InvalidArgument("inflate needs an N = 2 profile");
  double reach = std::abs(d.zeta) + std::exp(-d.j * w.support_start());
  if (!w.is_zero() && reach > 1.0 + 1e-12) {
    std::ostringstream os;
    os << "inflated support reaches radius " << reach << " (j = " << d.j << ", zeta = ("
       << d.zeta.real() << ", " << d.zeta.imag() << "))";
    throw SupportOverflow(os.str(), reach);
  }
  DiscFunction u(std::move(grid));
  u.add_atom({d.zeta, gauge_apply(w, 1.0 / d.j)});
  return u;
}

DiscFunction deflate(const DiscFunction& u, const DislocationParam& d) {
  return deflate(u, d, u.grid_ptr());
}

DiscFunction deflate(const DiscFunction& u, const DislocationParam& d, GridPtr out) {
  validate(d);
  const auto& g = *out;
  const double scale = 1.0 / std::sqrt(double(d.j));

  DiscFunction rest(u.grid_ptr(), u.values());
  std::vector<const Atom*> exact;
  for (const auto& a : u.atoms()) {
    if (a.center == d.zeta) exact.push_back(&a);
    else rest.add_atom(a);
  }
  bool sample = rest.has_grid_part() || !rest.atoms().empty();

  std::vector<double> v(g.size(), 0.0);
  if (sample) {
    const long nt = g.n_theta();
    for (int i = 1; i < g.n_r(); ++i) {
      double rj = std::exp(-d.j * g.t(i));
      for (int k = 0; k < nt; ++k) {
        // angle j*theta_k reduced exactly on the grid's angular lattice
        long m = (long(d.j) * k) % nt;
        Point z = d.zeta + std::polar(rj, 2.0 * std::numbers::pi * double(m) / double(nt));
        v[g.index(i, k)] = scale * rest(z);
      }
    }
    double c = scale * rest(d.zeta);
    for (int k = 0; k < g.n_theta(); ++k) v[g.index(g.n_r(), k)] = c;
  }
  DiscFunction res(out, std::move(v));
  for (const Atom* a : exact) res.add_atom({Point(0.0, 0.0), gauge_apply(a->profile, d.j)});
  return res;
}

RadialProfile radial_section(const DiscFunction& u, const DislocationParam& d,
                             const std::vector<double>& nodes) {
  validate(d);
  const double scale = 1.0 / std::sqrt(double(d.j));
  std::vector<double> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    v[i] = i == 0 ? 0.0 : scale * circle_mean(u, d.zeta, std::exp(-d.j * nodes[i]));
  return RadialProfile(nodes, std::move(v), 2);
}

}  // namespace tmlab
