#include "tmlab/functional.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <sstream>

#include "tmlab/error.hpp"
#include "tmlab/parallel.hpp"

namespace tmlab {

namespace {

using boost::math::quadrature::gauss_kronrod;
using boost::math::quadrature::tanh_sinh;

[[noreturn]] void overflow(double lo, double hi, double expo, double cap) {
  std::ostringstream os;
  os << "Moser integrand exponent " << expo << " exceeds cap " << cap << " on t in [" << lo
     << ", " << hi << "]";
  throw OverflowError(os.str(), lo, hi);
}

std::vector<double> breakpoints(const RadialProfile& u, double T) {
  std::vector<double> b(u.nodes());
  if (T > b.back()) b.push_back(T);
  return b;
}

// e^{x - N t} - e^{-N t} without cancellation for small x
double excess(double x, double nt) {
  if (x < 1.0) return std::expm1(x) * std::exp(-nt);
  return std::exp(x - nt) - std::exp(-nt);
}

}  // namespace

double plateau_term(double c, double T, int N, double cap) {
  double x = moser_alpha(N) * std::pow(std::abs(c), conjugate_exp(N));
  if (x - N * T > cap) overflow(T, INFINITY, x - N * T, cap);
  return sphere_area(N) / N * excess(x, N * T);
}

double j_direct(const RadialProfile& u, const QuadratureSpec& spec) {
  const int N = u.dim();
  const double a = moser_alpha(N), q = conjugate_exp(N);
  const double T = std::max(spec.tail_cutoff, u.last_node());
  auto bp = breakpoints(u, T);

  // the exponent a|u|^q - N t is convex on each segment, so nodes bound it
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    for (double t : {bp[i], bp[i + 1]}) {
      double e = a * std::pow(std::abs(u(t)), q) - N * t;
      if (e > spec.exponent_cap) overflow(bp[i], bp[i + 1], e, spec.exponent_cap);
    }
  }

  auto f = [&](double t) { return excess(a * std::pow(std::abs(u(t)), q), N * t); };
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    double err = 0.0;
    acc += gauss_kronrod<double, 15>::integrate(f, bp[i], bp[i + 1],
                                                unsigned(spec.max_subdivisions), spec.rel_tol,
                                                &err);
  }
  return sphere_area(N) * acc + plateau_term(u.plateau(), T, N, spec.exponent_cap);
}

double j_representation(const RadialProfile& u, const QuadratureSpec& spec) {
  const int N = u.dim();
  const double q = conjugate_exp(N);
  const double T = std::max(spec.tail_cutoff, u.last_node());
  auto bp = breakpoints(u, T);

  auto expo = [&](double t) {
    double c = pairing_mstar(u, t);
    return -N * t * (1.0 - std::pow(std::abs(c), q));
  };
  for (std::size_t i = 1; i < bp.size(); ++i) {
    double e = expo(bp[i]);
    if (e > spec.exponent_cap) overflow(bp[i - 1], bp[i], e, spec.exponent_cap);
  }

  auto g = [&](double t) { return std::exp(expo(t)); };
  tanh_sinh<double> ts(std::size_t(spec.max_subdivisions / 2 + 6));
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    double err = 0.0;
    acc += ts.integrate(g, bp[i], bp[i + 1], spec.rel_tol, &err);
  }
  // past T, N t |c(t)|^q is the constant N T |c(T)|^q
  double tail = std::exp(expo(T)) / N;
  return sphere_area(N) * (acc + tail - 1.0 / N);
}

FunctionalReport j_report(const RadialProfile& u, const QuadratureSpec& spec) {
  FunctionalReport r;
  r.j_direct = j_direct(u, spec);
  r.j_repr = j_representation(u, spec);
  r.alpha = moser_alpha(u.dim());
  r.normalized = grad_norm(u) <= 1.0 + 1e-12;
  return r;
}

std::vector<MoserLimitRow> moser_limit_experiment(const std::vector<double>& L_list,
                                                  const QuadratureSpec& spec) {
  for (std::size_t i = 0; i < L_list.size(); ++i) {
    if (!(L_list[i] > 0.0)) throw InvalidArgument("L values must be > 0");
    if (i > 0 && !(L_list[i] > L_list[i - 1]))
      throw InvalidArgument("L values must be increasing");
  }
  std::vector<MoserLimitRow> rows(L_list.size());
  parallel_for(L_list.size(), [&](std::size_t i) {
    double L = L_list[i];
    auto m = make_moser_log(L);
    MoserLimitRow r;
    r.L = L;
    r.s = std::exp(-L);
    r.j_direct = j_direct(m, spec);
    r.j_repr = j_representation(m, spec);
    r.plateau = plateau_term(m.plateau(), L, 2, spec.exponent_cap);
    r.ramp = r.j_direct - r.plateau;
    rows[i] = r;
  });
  return rows;
}

}  // namespace tmlab
