#pragma once

#include <vector>

#include "tmlab/radial.hpp"

namespace tmlab {

struct QuadratureSpec {
  double rel_tol = 1e-11;
  double abs_tol = 1e-15;
  int max_subdivisions = 18;  // bisection depth per segment
  double tail_cutoff = 0.0;   // analytic tail starts at max(this, last node)
  double exponent_cap = 700.0;
};

struct FunctionalReport {
  double j_direct;
  double j_repr;
  double alpha;
  bool normalized;
};

// J(u) = omega int_0^inf (exp(alpha |u|^N') - 1) e^{-N t} dt
double j_direct(const RadialProfile& u, const QuadratureSpec& spec = {});
// same value through c(t) = <m_t^*, u>:  omega (int e^{-N t (1 - |c|^N')} dt - 1/N)
double j_representation(const RadialProfile& u, const QuadratureSpec& spec = {});
FunctionalReport j_report(const RadialProfile& u, const QuadratureSpec& spec = {});

// contribution of t >= T where u is the constant c
double plateau_term(double c, double T, int N, double cap = 700.0);

struct MoserLimitRow {
  double L, s, j_direct, j_repr, plateau, ramp;
};

std::vector<MoserLimitRow> moser_limit_experiment(const std::vector<double>& L_list,
                                                  const QuadratureSpec& spec = {});

}  // namespace tmlab
