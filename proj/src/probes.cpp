#include "tmlab/probes.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tmlab/error.hpp"

namespace tmlab {

namespace {

constexpr double kPi = std::numbers::pi;

// circle mean of g_d u about the origin at radius rho
double deflated_mean(const DiscFunction& u, const DislocationParam& d, double rho) {
  return circle_mean(u, d.zeta, std::pow(rho, d.j)) / std::sqrt(double(d.j));
}

}  // namespace

std::string Probe::name() const {
  std::ostringstream os;
  os << (kind == ProbeKind::moser ? "moser_a" : "bump_R") << param;
  return os.str();
}

std::vector<Probe> default_probes() {
  return {{ProbeKind::moser, 0.5}, {ProbeKind::moser, 1.0}, {ProbeKind::moser, 2.0},
          {ProbeKind::bump, 0.5},  {ProbeKind::bump, 0.9}};
}

std::vector<double> probe_pairings(const DiscFunction& u, const DislocationParam& d,
                                   const std::vector<Probe>& probes) {
  validate(d);
  std::vector<double> out;
  out.reserve(probes.size());
  for (const auto& p : probes) {
    if (!(p.param > 0.0)) throw InvalidArgument("probe parameter must be > 0");
    if (p.kind == ProbeKind::moser) {
      // the ramp is harmonic, so only the two boundary circles contribute
      double a = p.param;
      double inner = deflated_mean(u, d, std::exp(-a));
      double outer = deflated_mean(u, d, 1.0);
      out.push_back(std::sqrt(2.0 * kPi / a) * (inner - outer));
    } else {
      if (p.param > 1.0) throw InvalidArgument("bump probe radius must be <= 1");
      double R = p.param;
      auto f = [&](double rho) {
        double s = rho * rho / (R * R);
        double lap = (1.0 - s) * (36.0 * s - 12.0) / (R * R);
        return deflated_mean(u, d, rho) * lap * rho;
      };
      double I = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, 0.0, R, 6, 1e-9);
      out.push_back(-2.0 * kPi * I / std::sqrt(6.0 * kPi / 5.0));
    }
  }
  return out;
}

}  // namespace tmlab
