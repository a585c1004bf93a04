#pragma once

// Decreasing rearrangements over relative measure (0,1] (disc area divided
// by pi) and Lorentz-Zygmund quasinorms.

#include <string>
#include <vector>

#include "tmlab/radial.hpp"

namespace tmlab {

class DiscFunction;

enum class PieceKind { step, linear, loglinear };

std::string to_string(PieceKind k);
PieceKind piece_kind_from_string(const std::string& s);

// f is values[0] on (0, b_0]. On (b_{i-1}, b_i] it is values[i] (step), or
// interpolates from values[i-1] to values[i] linearly in tau (linear) or in
// log|tau - c_i| (loglinear, c_i = offsets[i] outside [b_{i-1}, b_i]; the
// default offset 0 gives plain log tau).
class RearrangedFunction {
 public:
  RearrangedFunction();  // zero function
  RearrangedFunction(std::vector<double> breakpoints, std::vector<double> values,
                     PieceKind kind);
  RearrangedFunction(std::vector<double> breakpoints, std::vector<double> values,
                     std::vector<double> offsets);  // loglinear

  const std::vector<double>& breakpoints() const { return b_; }
  const std::vector<double>& values() const { return v_; }
  PieceKind kind() const { return kind_; }
  const std::vector<double>& offsets() const { return c_; }  // empty unless loglinear
  double offset(std::size_t i) const { return c_.empty() ? 0.0 : c_[i]; }
  std::size_t size() const { return b_.size(); }

  double operator()(double tau) const;
  double lp_norm(double p) const;  // (int_0^1 f^p dtau)^{1/p}
  RearrangedFunction scaled(double c) const;

 private:
  std::vector<double> b_;
  std::vector<double> v_;
  std::vector<double> c_;
  PieceKind kind_ = PieceKind::step;
};

struct LZIndex {
  double p;  // (1, inf]
  double q;  // (0, inf]
  double alpha;
};

struct LZValue {
  double value;
  bool divergent;
};

// tol bounds the measure error of the fitted pieces where several edges of
// |u| cross the same level band
RearrangedFunction rearrange_radial(const RadialProfile& u, double tol = 1e-12);
RearrangedFunction rearrange_disc(const DiscFunction& u);

LZValue lz_quasinorm(const RearrangedFunction& f, const LZIndex& idx);
double expl2_quasinorm(const RearrangedFunction& f);

}  // namespace tmlab
