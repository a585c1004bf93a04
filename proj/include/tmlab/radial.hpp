#pragma once

// Radial functions on the unit ball in the log-radial coordinate t = log(1/r).
// Profiles are piecewise linear in t, vanish at t = 0 and are constant past
// the last node.

#include <cstddef>
#include <vector>

namespace tmlab {

double sphere_area(int N);    // omega_{N-1}
double conjugate_exp(int N);  // N' = N/(N-1)
double moser_alpha(int N);    // N omega_{N-1}^{1/(N-1)}

class RadialProfile {
 public:
  RadialProfile();  // zero profile, N = 2
  RadialProfile(std::vector<double> nodes, std::vector<double> values, int N = 2);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }
  int dim() const { return N_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t segments() const { return nodes_.size() - 1; }

  double operator()(double t) const;  // 0 for t < 0, plateau past the end
  double slope(std::size_t seg) const;
  double plateau() const { return values_.back(); }
  double last_node() const { return nodes_.back(); }

  // largest t with u == 0 on [0, t]; the support is {r < exp(-t)}
  double support_start() const;
  bool is_zero() const;

  RadialProfile scaled(double c) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  int N_ = 2;
};

RadialProfile operator+(const RadialProfile& a, const RadialProfile& b);
RadialProfile operator-(const RadialProfile& a, const RadialProfile& b);

// union of node sets, both profiles resampled exactly
std::vector<double> merged_nodes(const RadialProfile& a, const RadialProfile& b);
RadialProfile resample(const RadialProfile& u, const std::vector<double>& nodes);

RadialProfile make_moser(double s, int N = 2);
RadialProfile make_moser_log(double L, int N = 2);
// ramp on [log(1/R), L] instead of [0, L], still of unit gradient norm;
// supported in the ball of radius R
RadialProfile make_moser_sub(double L, double R, int N = 2);

double grad_norm(const RadialProfile& u, int N);
inline double grad_norm(const RadialProfile& u) { return grad_norm(u, u.dim()); }
double grad_norm_pow(const RadialProfile& u);  // ||grad u||_N^N

RadialProfile gauge_apply(const RadialProfile& u, double s);

struct PairingValue {
  double closed;
  double integral;
};

PairingValue pairing_mstar_both(const RadialProfile& u, double t);
double pairing_mstar(const RadialProfile& u, double t);
double pairing_mstar_integral(const RadialProfile& u, double t);

double pointwise_bound_margin(const RadialProfile& u);
double pointwise_sup_ratio(const RadialProfile& u);

struct HardyTerms {
  double grad;    // int (du/dt)^2 dt
  double weight;  // int (u/t)^2 dt
};
HardyTerms hardy_terms(const RadialProfile& u);
double hardy_ratio(const RadialProfile& u);

// H^1_0 inner product <grad u, grad v> for N = 2, exact
double grad_inner(const RadialProfile& u, const RadialProfile& v);

}  // namespace tmlab
