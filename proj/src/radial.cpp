#include "tmlab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tmlab/error.hpp"

namespace tmlab {

double sphere_area(int N) {
  if (N < 2) throw InvalidArgument("dimension must be >= 2");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * N) / std::tgamma(0.5 * N);
}

double conjugate_exp(int N) { return double(N) / double(N - 1); }

double moser_alpha(int N) { return N * std::pow(sphere_area(N), 1.0 / (N - 1)); }

RadialProfile::RadialProfile() : nodes_{0.0, 1.0}, values_{0.0, 0.0}, N_(2) {}

RadialProfile::RadialProfile(std::vector<double> nodes, std::vector<double> values, int N)
    : nodes_(std::move(nodes)), values_(std::move(values)), N_(N) {
  if (N_ < 2) throw InvalidArgument("profile dimension must be >= 2");
  if (nodes_.size() < 2) throw InvalidArgument("profile needs at least 2 nodes");
  if (nodes_.size() != values_.size())
    throw InvalidArgument("profile nodes/values size mismatch");
  if (nodes_[0] != 0.0) throw InvalidArgument("first profile node must be 0");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!std::isfinite(nodes_[i]) || !std::isfinite(values_[i]))
      throw InvalidArgument("non-finite profile entry at index " + std::to_string(i));
    if (i > 0 && !(nodes_[i] > nodes_[i - 1]))
      throw InvalidArgument("profile nodes not strictly increasing at index " +
                            std::to_string(i));
  }
  if (values_[0] != 0.0) throw InvalidArgument("profile must vanish at t = 0");
}

double RadialProfile::operator()(double t) const {
  if (t <= 0.0) return 0.0;
  if (t >= nodes_.back()) return values_.back();
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), t);
  std::size_t i = std::size_t(it - nodes_.begin()) - 1;
  double w = (t - nodes_[i]) / (nodes_[i + 1] - nodes_[i]);
  return values_[i] + w * (values_[i + 1] - values_[i]);
}

double RadialProfile::slope(std::size_t seg) const {
  return (values_[seg + 1] - values_[seg]) / (nodes_[seg + 1] - nodes_[seg]);
}

double RadialProfile::support_start() const {
  std::size_t m = 0;
  while (m + 1 < values_.size() && values_[m + 1] == 0.0) ++m;
  if (m + 1 == values_.size()) return nodes_.back();
  return nodes_[m];
}

bool RadialProfile::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

RadialProfile RadialProfile::scaled(double c) const {
  std::vector<double> v(values_);
  for (auto& x : v) x *= c;
  v[0] = 0.0;
  return RadialProfile(nodes_, std::move(v), N_);
}

std::vector<double> merged_nodes(const RadialProfile& a, const RadialProfile& b) {
  std::vector<double> out;
  out.reserve(a.size() + b.size());
  std::merge(a.nodes().begin(), a.nodes().end(), b.nodes().begin(), b.nodes().end(),
             std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

RadialProfile resample(const RadialProfile& u, const std::vector<double>& nodes) {
  std::vector<double> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = u(nodes[i]);
  return RadialProfile(nodes, std::move(v), u.dim());
}

namespace {

RadialProfile combine(const RadialProfile& a, const RadialProfile& b, double sb) {
  if (a.dim() != b.dim()) throw InvalidArgument("profile dimension mismatch");
  auto nodes = merged_nodes(a, b);
  std::vector<double> v(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) v[i] = a(nodes[i]) + sb * b(nodes[i]);
  v[0] = 0.0;
  return RadialProfile(std::move(nodes), std::move(v), a.dim());
}

}  // namespace

RadialProfile operator+(const RadialProfile& a, const RadialProfile& b) {
  return combine(a, b, 1.0);
}
RadialProfile operator-(const RadialProfile& a, const RadialProfile& b) {
  return combine(a, b, -1.0);
}

RadialProfile make_moser_log(double L, int N) {
  if (!(L > 0.0) || !std::isfinite(L)) throw InvalidArgument("Moser parameter L must be > 0");
  double w = sphere_area(N);
  double p = 1.0 / conjugate_exp(N);
  double top = std::pow(w, -1.0 / N) * std::pow(L, p);
  return RadialProfile({0.0, L}, {0.0, top}, N);
}

RadialProfile make_moser(double s, int N) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidArgument("Moser parameter s must lie in (0,1)");
  return make_moser_log(std::log(1.0 / s), N);
}

RadialProfile make_moser_sub(double L, double R, int N) {
  if (!(R > 0.0 && R <= 1.0)) throw InvalidArgument("support radius must lie in (0,1]");
  double tr = std::log(1.0 / R);
  if (tr == 0.0) return make_moser_log(L, N);
  if (!(L > tr)) throw InvalidArgument("Moser parameter L must exceed log(1/R)");
  double w = sphere_area(N);
  double p = 1.0 / conjugate_exp(N);
  double top = std::pow(w, -1.0 / N) * std::pow(L - tr, p);
  return RadialProfile({0.0, tr, L}, {0.0, 0.0, top}, N);
}

double grad_norm_pow(const RadialProfile& u) {
  int N = u.dim();
  double acc = 0.0;
  for (std::size_t i = 0; i < u.segments(); ++i) {
    double dt = u.nodes()[i + 1] - u.nodes()[i];
    acc += std::pow(std::abs(u.slope(i)), N) * dt;
  }
  return sphere_area(N) * acc;
}

double grad_norm(const RadialProfile& u, int N) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.segments(); ++i) {
    double dt = u.nodes()[i + 1] - u.nodes()[i];
    acc += std::pow(std::abs(u.slope(i)), N) * dt;
  }
  return std::pow(sphere_area(N) * acc, 1.0 / N);
}

RadialProfile gauge_apply(const RadialProfile& u, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("gauge parameter must be > 0");
  double f = std::pow(s, -1.0 / conjugate_exp(u.dim()));
  std::vector<double> t(u.nodes()), v(u.values());
  for (auto& x : t) x /= s;
  for (auto& x : v) x *= f;
  return RadialProfile(std::move(t), std::move(v), u.dim());
}

double pairing_mstar(const RadialProfile& u, double t) {
  if (!(t > 0.0)) throw InvalidArgument("pairing parameter t must be > 0");
  int N = u.dim();
  return std::pow(sphere_area(N), 1.0 / N) * std::pow(t, -1.0 / conjugate_exp(N)) * u(t);
}

double pairing_mstar_integral(const RadialProfile& u, double t) {
  if (!(t > 0.0)) throw InvalidArgument("pairing parameter t must be > 0");
  int N = u.dim();
  double w = sphere_area(N);
  double c = std::pow(w, -1.0 / N) * std::pow(t, 1.0 / conjugate_exp(N) - 1.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < u.segments(); ++i) {
    double a = u.nodes()[i], b = std::min(u.nodes()[i + 1], t);
    if (b <= a) break;
    acc += u.slope(i) * (b - a);
  }
  return w * std::pow(c, N - 1) * acc;
}

PairingValue pairing_mstar_both(const RadialProfile& u, double t) {
  return {pairing_mstar(u, t), pairing_mstar_integral(u, t)};
}

double pointwise_sup_ratio(const RadialProfile& u) {
  double p = 1.0 / conjugate_exp(u.dim());
  auto ratio = [&](double t) { return std::abs(u(t)) * std::pow(t, -p); };
  double best = 0.0;
  const auto& t = u.nodes();
  for (std::size_t i = 0; i < u.segments(); ++i) {
    double b = u.slope(i);
    double a = u.values()[i] - b * t[i];
    best = std::max(best, ratio(t[i + 1]));
    if (b != 0.0) {
      double ts = p * a / (b * (1.0 - p));
      if (ts > t[i] && ts < t[i + 1]) best = std::max(best, ratio(ts));
    }
  }
  return best;
}

double pointwise_bound_margin(const RadialProfile& u) {
  if (u.is_zero()) return 0.0;
  int N = u.dim();
  return std::pow(sphere_area(N), -1.0 / N) * grad_norm(u, N) - pointwise_sup_ratio(u);
}

HardyTerms hardy_terms(const RadialProfile& u) {
  if (u.dim() != 2) throw InvalidArgument("hardy_ratio is defined for N = 2");
  HardyTerms h{0.0, 0.0};
  const auto& t = u.nodes();
  for (std::size_t i = 0; i < u.segments(); ++i) {
    double b = u.slope(i);
    double dt = t[i + 1] - t[i];
    h.grad += b * b * dt;
    if (i == 0) {
      h.weight += b * b * t[1];  // u = b t on the first segment
    } else {
      double a = u.values()[i] - b * t[i];
      h.weight += a * a * dt / (t[i] * t[i + 1]) + 2.0 * a * b * std::log(t[i + 1] / t[i]) +
                  b * b * dt;
    }
  }
  double c = u.plateau();
  h.weight += c * c / u.last_node();
  return h;
}

double hardy_ratio(const RadialProfile& u) {
  if (u.is_zero()) throw InvalidArgument("hardy_ratio of the zero profile");
  auto h = hardy_terms(u);
  return h.grad / h.weight;
}

double grad_inner(const RadialProfile& u, const RadialProfile& v) {
  auto nodes = merged_nodes(u, v);
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    double dt = nodes[i + 1] - nodes[i];
    double bu = (u(nodes[i + 1]) - u(nodes[i])) / dt;
    double bv = (v(nodes[i + 1]) - v(nodes[i])) / dt;
    acc += bu * bv * dt;
  }
  return 2.0 * std::numbers::pi * acc;
}

}  // namespace tmlab
