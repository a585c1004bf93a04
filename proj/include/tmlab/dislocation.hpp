#pragma once

// The operators g_{j,zeta} u(z) = j^{-1/2} u(zeta + z^j) (deflation) and the
// synthesis j^{1/2} w(|z - zeta|^{1/j}) of a radial profile (inflation).

#include <vector>

#include "tmlab/disc_function.hpp"

namespace tmlab {

struct DislocationParam {
  int j = 1;
  Point zeta{0.0, 0.0};
};

void validate(const DislocationParam& d);

// Exact: the result carries h_{1/j} w as an atom centred at zeta. Call
// sampled() on the result for grid values.
DiscFunction inflate(const RadialProfile& w, const DislocationParam& d, GridPtr grid);

// Atoms centred exactly at zeta are deflated exactly (they become h_j v at
// the origin); everything else is sampled at zeta + z^j on the output grid.
DiscFunction deflate(const DiscFunction& u, const DislocationParam& d);
DiscFunction deflate(const DiscFunction& u, const DislocationParam& d, GridPtr out);

// Angular mean of the deflation, evaluated at the given t nodes:
// j^{-1/2} times the circle mean of u about zeta at radius e^{-j t}.
RadialProfile radial_section(const DiscFunction& u, const DislocationParam& d,
                             const std::vector<double>& nodes);

}  // namespace tmlab
