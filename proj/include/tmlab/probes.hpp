#pragma once

// Fixed radial test functions about the origin, used to pair deflated
// functions against a finite probe set.

#include <string>
#include <vector>

#include "tmlab/dislocation.hpp"

namespace tmlab {

enum class ProbeKind { moser, bump };

struct Probe {
  ProbeKind kind;
  double param;  // moser: ramp length a (m_{e^{-a}}); bump: support radius R
  std::string name() const;
};

// m_{e^{-a}} for a in {0.5, 1, 2} and (1 - |z|^2/R^2)^3 for R in {0.5, 0.9}
std::vector<Probe> default_probes();

// <grad g_d u, grad phi> / ||grad phi||_2 for each probe phi
std::vector<double> probe_pairings(const DiscFunction& u, const DislocationParam& d,
                                   const std::vector<Probe>& probes);

}  // namespace tmlab
