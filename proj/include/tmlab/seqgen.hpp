#pragma once

// Deterministic generators for the sequences under study.

#include <vector>

#include "tmlab/profiles.hpp"
#include "tmlab/rng.hpp"

namespace tmlab {

// Random piecewise linear profile with n_nodes nodes (values[0] = 0). With
// normalize, scaled to unit gradient norm.
RadialProfile random_profile(Rng& rng, int n_nodes = 6, bool normalize = true);

enum class MoserForm {
  translate,  // inflate(m^{(R)}_{s_k}, (1, zeta_k))
  scale,      // inflate(m^{(R)}_{e^{-1}}, (round(log 1/s_k), zeta_k))
};

// R is the support radius of the profile (1 gives the plain Moser function)
FunctionSequence moser_sequence(const std::vector<double>& s_k, const std::vector<Point>& zeta_k,
                                GridPtr grid, MoserForm form = MoserForm::translate,
                                double R = 1.0);

// tent on t in (2, 3) with peak 1 at t = 2.5
RadialProfile default_bump();

// w_k = k^{-1/2} sum_{i=1..k} h_{2^i} bump, k = 1..k_max (radial members)
FunctionSequence counterexample_sequence(int k_max, const RadialProfile& bump = default_bump());

// (1 - 4|z|^2)^2 (1 + x/2) on |z| < 1/2, sampled on the grid
DiscFunction bump2d(GridPtr grid);

// members w(k z), read by interpolation, zero outside the disc
FunctionSequence vanishing_sequence(const std::vector<int>& k_list, const DiscFunction& bump);

// sum of inflated terms plus angular noise of energy noise_energy per member
FunctionSequence synthetic_superposition(const std::vector<ProfileTerm>& terms,
                                         const std::vector<int>& k_list, double noise_energy,
                                         std::uint64_t seed, GridPtr grid);

// A sin^2(2 pi r) cos(m theta + phase) on r < 1/2, scaled to the given grid energy
DiscFunction angular_noise(GridPtr grid, int m, double phase, double energy);

}  // namespace tmlab
