#pragma once

// Functions on the closed unit disc: a sampled part on a polar grid plus a
// list of exact radial atoms. An atom is a radial profile in the local
// coordinate t = log(1/|z - centre|); this is how dislocated profiles whose
// scales fall far below the grid resolution are carried without sampling.

#include <vector>

#include "tmlab/polar_grid.hpp"
#include "tmlab/radial.hpp"

namespace tmlab {

struct Atom {
  Point center;
  RadialProfile profile;

  double operator()(Point z) const;
  double support_radius() const;  // radius of the support about the centre
};

class DiscFunction {
 public:
  explicit DiscFunction(GridPtr grid);
  DiscFunction(GridPtr grid, std::vector<double> values);

  const PolarGrid& grid() const { return *grid_; }
  GridPtr grid_ptr() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  bool has_grid_part() const;

  // atoms with exactly the same centre are merged
  void add_atom(const Atom& a, double weight = 1.0);

  double operator()(Point z) const;
  double grid_value(Point z) const { return grid_->interpolate(values_, z); }
  double support_radius() const;

  double energy() const;  // ||grad u||_2^2
  double grid_energy() const;

  DiscFunction sampled() const;  // atoms evaluated onto the grid nodes
  DiscFunction scaled(double c) const;
  DiscFunction& operator+=(const DiscFunction& o);
  DiscFunction& operator-=(const DiscFunction& o);

  static DiscFunction from_radial(GridPtr grid, const RadialProfile& w);

 private:
  GridPtr grid_;
  std::vector<double> values_;
  std::vector<Atom> atoms_;
};

DiscFunction operator+(DiscFunction a, const DiscFunction& b);
DiscFunction operator-(DiscFunction a, const DiscFunction& b);

// mean over the circle |z - c| = rho
double circle_mean(const DiscFunction& u, Point c, double rho);
double circle_mean(const Atom& a, Point c, double rho);
double grid_circle_mean(const DiscFunction& u, Point c, double rho, int n = 0);

// <grad a, grad b> for two atoms
double atom_inner(const Atom& a, const Atom& b);

// Cell decomposition of the disc used for rearrangements, L^p norms and the
// Moser functional: base grid cells plus log-polar patches about atom
// clusters. Values are point values at cell centres.
struct Cell {
  double value;
  double area;
};
std::vector<Cell> cell_samples(const DiscFunction& u, double patch_dt = 0.05,
                               int patch_angles = 64);

double lp_norm(const DiscFunction& u, double p);

}  // namespace tmlab
