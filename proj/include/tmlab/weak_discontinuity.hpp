#pragma once

#include <string>
#include <vector>

#include "tmlab/functional.hpp"
#include "tmlab/probes.hpp"

namespace tmlab {

// J(u) = int_B (exp(4 pi u^2) - 1) dx. A lone atom is evaluated exactly through
// its radial profile; anything else is summed over cell_samples.
double j_disc(const DiscFunction& u, const QuadratureSpec& spec = {});

struct WeakDiscontinuityReport {
  std::vector<int> k;
  std::vector<double> J;
  std::vector<double> energy;
  std::vector<std::vector<double>> pairings;  // per k, per probe (identity dislocation)
  std::vector<double> max_pairing;            // per k
  bool pairings_decay = false;                // last max <= half the first
  bool j_bounded_below = false;               // tail J >= half of max J
  std::string classification;  // moser-concentrating, vanishing, non-concentrating, indeterminate
};

WeakDiscontinuityReport weak_discontinuity_report(const std::vector<DiscFunction>& members,
                                                  const std::vector<int>& k_list,
                                                  const QuadratureSpec& spec = {});

// u_k = inflate(m^{(R)}_{s_k}, (1, zeta_k)): the Moser function with its ramp
// moved into the ball of radius R so that translated copies fit in the disc.
WeakDiscontinuityReport weak_discontinuity_demo(const std::vector<double>& s_k,
                                                const std::vector<Point>& zeta_k, GridPtr grid,
                                                double R = 0.8, const QuadratureSpec& spec = {});

}  // namespace tmlab
