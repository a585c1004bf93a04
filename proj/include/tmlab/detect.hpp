#pragma once

#include <vector>

#include "tmlab/dislocation.hpp"

namespace tmlab {

struct Candidate {
  DislocationParam d;
  double score;  // j^{-1/2} |A_{rho^j} u(zeta)|
  double rho;
  bool at_cap;   // maximum sat at j_max; the true scale may be larger
};

struct DetectOptions {
  std::vector<double> rho_grid{0.36787944117144233};  // e^{-1}
  int j_max = 64;
  double seed_spacing = 1.0 / 32.0;
  double seed_radius = 0.5;
  double seed_scale = 0.05;
  int max_seeds = 8;
  bool refine = true;
};

double detector_score(const DiscFunction& u, int j, double rho, Point zeta);

// candidates with score >= eps, best first; ties go to smaller j, then to
// lexicographically smaller zeta
std::vector<Candidate> concentration_detect(const DiscFunction& u, double eps,
                                            const DetectOptions& opt = {});
std::vector<Candidate> concentration_detect(const DiscFunction& u, double eps,
                                            const std::vector<double>& rho_grid, int j_max);

// Newton step on the first angular Fourier mode of u on a circle of radius
// ring about zeta; converges to the centre of a locally radial function.
Point refine_center(const DiscFunction& u, Point zeta, double ring, int iters = 30);

}  // namespace tmlab
