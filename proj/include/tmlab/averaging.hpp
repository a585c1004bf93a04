#pragma once

#include <vector>

#include "tmlab/disc_function.hpp"

namespace tmlab {

// mean of u over the ball B_r(z), u extended by zero outside the disc
double average(const DiscFunction& u, double r, Point z);
double atom_ball_average(const Atom& a, double r, Point z);

// A_r u at every grid node (row-major like DiscFunction values). A_r u does
// not vanish on the boundary, so this is a plain node array.
std::vector<double> average_field(const DiscFunction& u, double r);

// ||A_r u - u||_2 / (r ||grad u||_2) for the sampled part of u
double osc_ratio(const DiscFunction& u, double r);

// max over the pairs of ||A_r u(z)| - |A_r u(z')|| r^{3/2} / (||u||_2 |z - z'|^{1/2})
struct PointPair {
  Point a, b;
};
double modulus_ratio(const DiscFunction& u, double r, const std::vector<PointPair>& pairs);

}  // namespace tmlab
