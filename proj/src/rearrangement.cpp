#include "tmlab/rearrangement.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <functional>
#include <limits>

#include "tmlab/disc_function.hpp"
#include "tmlab/error.hpp"

namespace tmlab {

using boost::math::quadrature::gauss;
using boost::math::quadrature::gauss_kronrod;

std::string to_string(PieceKind k) {
  switch (k) {
    case PieceKind::step: return "step";
    case PieceKind::linear: return "linear";
    case PieceKind::loglinear: return "loglinear";
  }
  return "step";
}

PieceKind piece_kind_from_string(const std::string& s) {
  if (s == "step") return PieceKind::step;
  if (s == "linear") return PieceKind::linear;
  if (s == "loglinear") return PieceKind::loglinear;
  throw InvalidArgument("unknown rearrangement kind '" + s + "'");
}

RearrangedFunction::RearrangedFunction() : b_{1.0}, v_{0.0}, kind_(PieceKind::step) {}

RearrangedFunction::RearrangedFunction(std::vector<double> breakpoints,
                                       std::vector<double> values, PieceKind kind)
    : b_(std::move(breakpoints)), v_(std::move(values)), kind_(kind) {
  if (b_.empty() || b_.size() != v_.size())
    throw InvalidArgument("rearrangement needs equal, nonempty breakpoint/value lists");
  for (std::size_t i = 0; i < b_.size(); ++i) {
    if (!(b_[i] > 0.0) || b_[i] > 1.0 + 1e-12)
      throw InvalidArgument("rearrangement breakpoints must lie in (0,1]");
    if (i > 0 && !(b_[i] > b_[i - 1]))
      throw InvalidArgument("rearrangement breakpoints must increase");
    if (!(v_[i] >= 0.0) || !std::isfinite(v_[i]))
      throw InvalidArgument("rearrangement values must be finite and nonnegative");
    if (i > 0 && v_[i] > v_[i - 1])
      throw InvalidArgument("rearrangement values must be nonincreasing");
  }
  if (std::abs(b_.back() - 1.0) > 1e-12)
    throw InvalidArgument("last rearrangement breakpoint must be 1");
  b_.back() = 1.0;
}

RearrangedFunction::RearrangedFunction(std::vector<double> breakpoints,
                                       std::vector<double> values,
                                       std::vector<double> offsets)
    : RearrangedFunction(std::move(breakpoints), std::move(values), PieceKind::loglinear) {
  if (offsets.empty()) return;
  if (offsets.size() != b_.size())
    throw InvalidArgument("rearrangement offsets must match the breakpoints");
  for (std::size_t i = 1; i < b_.size(); ++i) {
    double c = offsets[i];
    if (std::isnan(c) || (c >= b_[i - 1] && c <= b_[i]))
      throw InvalidArgument("rearrangement offset must lie outside its piece");
  }
  offsets[0] = 0.0;
  c_ = std::move(offsets);
}

namespace {

// position of tau in (a, b] on the log|tau - c| scale, 0 at a and 1 at b
double log_frac(double tau, double a, double b, double c) {
  if (std::isinf(c)) return (tau - a) / (b - a);
  return std::log1p((tau - a) / (a - c)) / std::log1p((b - a) / (a - c));
}

}  // namespace

double RearrangedFunction::operator()(double tau) const {
  if (tau <= b_[0]) return v_[0];
  if (tau >= 1.0) return v_.back();
  std::size_t i = std::size_t(std::lower_bound(b_.begin(), b_.end(), tau) - b_.begin());
  switch (kind_) {
    case PieceKind::step: return v_[i];
    case PieceKind::linear: {
      double w = (tau - b_[i - 1]) / (b_[i] - b_[i - 1]);
      return v_[i - 1] + w * (v_[i] - v_[i - 1]);
    }
    case PieceKind::loglinear: {
      double w = log_frac(tau, b_[i - 1], b_[i], offset(i));
      return v_[i - 1] + w * (v_[i] - v_[i - 1]);
    }
  }
  return 0.0;
}

double RearrangedFunction::lp_norm(double p) const {
  double acc = std::pow(v_[0], p) * b_[0];
  for (std::size_t i = 1; i < b_.size(); ++i) {
    if (kind_ == PieceKind::step) {
      acc += std::pow(v_[i], p) * (b_[i] - b_[i - 1]);
    } else if (kind_ == PieceKind::linear) {
      double a = v_[i - 1], b = v_[i];
      if (a == b) acc += std::pow(a, p) * (b_[i] - b_[i - 1]);
      else
        acc += (std::pow(a, p + 1.0) - std::pow(b, p + 1.0)) / ((p + 1.0) * (a - b)) *
               (b_[i] - b_[i - 1]);
    } else {
      double a = v_[i - 1], b = v_[i], c = offset(i);
      if (a == b) {
        acc += std::pow(a, p) * (b_[i] - b_[i - 1]);
      } else if (std::isinf(c)) {
        acc += (std::pow(a, p + 1.0) - std::pow(b, p + 1.0)) / ((p + 1.0) * (a - b)) *
               (b_[i] - b_[i - 1]);
      } else {
        // tau = b_{i-1} + (b_{i-1} - c) expm1(w l) for w in [0, 1]
        double ta = b_[i - 1], g = ta - c;
        double l = std::log1p((b_[i] - ta) / g);
        auto f = [&](double w) { return std::pow(a + w * (b - a), p) * std::exp(w * l); };
        int n = std::max(1, int(std::ceil(std::abs(l) / 2.0)));
        double part = 0.0;
        for (int k = 0; k < n; ++k)
          part += gauss<double, 20>::integrate(f, double(k) / n, double(k + 1) / n);
        acc += std::abs(part * g * l);
      }
    }
  }
  return std::pow(acc, 1.0 / p);
}

RearrangedFunction RearrangedFunction::scaled(double c) const {
  std::vector<double> v(v_);
  for (auto& x : v) x *= std::abs(c);
  if (!c_.empty()) return RearrangedFunction(b_, std::move(v), c_);
  return RearrangedFunction(b_, std::move(v), kind_);
}

// ---------------------------------------------------------------------------

namespace {

struct Seg {
  double ta, tb, pa, pb;  // |u| linear from pa at ta to pb at tb
};

// e^{-2a} - e^{-2b}
double shell(double a, double b) {
  if (std::isinf(b)) return std::exp(-2.0 * a);
  return -std::exp(-2.0 * a) * std::expm1(-2.0 * (b - a));
}

struct Distribution {
  std::vector<Seg> segs;
  double T = 0.0, c = 0.0;

  // measure of {|u| > y} (strict) or {|u| >= y}
  double operator()(double y, bool strict) const {
    auto above = [&](double v) { return strict ? v > y : v >= y; };
    double m = 0.0;
    for (const auto& s : segs) {
      bool A = above(s.pa), B = above(s.pb);
      if (A && B) {
        m += shell(s.ta, s.tb);
      } else if (A || B) {
        double tc = s.ta + (y - s.pa) / (s.pb - s.pa) * (s.tb - s.ta);
        tc = std::clamp(tc, s.ta, s.tb);
        m += A ? shell(s.ta, tc) : shell(tc, s.tb);
      }
    }
    if (above(c)) m += std::exp(-2.0 * T);
    return m;
  }
};

}  // namespace

namespace {

// offset c with (tm - c)^2 = (t1 - c)(t2 - c): tau - c geometric in the
// level. Returns t1 - c, infinite for a linear fit.
double fit_gap(double t1, double tm, double t2) {
  double d1 = tm - t1, d2 = t2 - tm;
  if (d2 == d1) return std::numeric_limits<double>::infinity();
  return d1 * d1 / (d2 - d1);
}

// tau at fraction w of the piece, in increments so a far offset stays exact
double model_tau(double t1, double t2, double gap, double w) {
  if (std::isinf(gap)) return t1 + w * (t2 - t1);
  return t1 + gap * std::expm1(w * std::log1p((t2 - t1) / gap));
}

}  // namespace

RearrangedFunction rearrange_radial(const RadialProfile& u, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("rearrangement tolerance must be > 0");
  if (u.dim() != 2) throw InvalidArgument("rearrange_radial needs an N = 2 profile");
  if (u.is_zero()) return RearrangedFunction();
  if (u.plateau() != 0.0 && std::exp(-2.0 * u.last_node()) < std::numeric_limits<double>::min())
    throw InvalidArgument("plateau measure e^{-2T} underflows; last node must be below 354");

  Distribution mu;
  const auto& t = u.nodes();
  const auto& v = u.values();
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    double a = v[i], b = v[i + 1];
    if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
      double tc = t[i] + a / (a - b) * (t[i + 1] - t[i]);
      mu.segs.push_back({t[i], tc, std::abs(a), 0.0});
      mu.segs.push_back({tc, t[i + 1], 0.0, std::abs(b)});
    } else {
      mu.segs.push_back({t[i], t[i + 1], std::abs(a), std::abs(b)});
    }
  }
  mu.T = u.last_node();
  mu.c = std::abs(u.plateau());

  std::vector<double> levels;
  for (const auto& s : mu.segs) levels.push_back(s.pa), levels.push_back(s.pb);
  levels.push_back(mu.c);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<double> tau, val, off;
  auto push = [&](double tt, double y, double c) {
    if (!(tt > 0.0)) return;
    if (!tau.empty() && tt <= tau.back()) return;
    tau.push_back(tt);
    val.push_back(y);
    off.push_back(c);
  };

  const double top = levels[0];
  // a supremum of zero measure still needs a first breakpoint
  push(std::max(mu(top, false), 1e-300), top, 0.0);

  // pieces for a band of levels crossed by several edges of |u|
  std::function<void(double, double, double, double, int)> adapt =
      [&](double y1, double t1, double y2, double t2, int depth) {
        double ym = 0.5 * (y1 + y2);
        double tm = mu(ym, true);
        double gap = fit_gap(t1, tm, t2);
        double c = t1 - gap;
        // t1 < t2 always, so the offset lies outside when gap > 0 or gap < t1 - t2
        bool ok = std::isinf(gap) || gap > 0.0 || gap < t1 - t2;
        if (ok) {
          for (double w : {0.25, 0.75}) {
            double e = model_tau(t1, t2, gap, w) - mu(y1 + w * (y2 - y1), true);
            if (!(std::abs(e) <= tol)) ok = false;
          }
        }
        if (ok || depth >= 30) {
          if (!ok) c = std::numeric_limits<double>::infinity();
          push(t2, y2, c);
          return;
        }
        adapt(y1, t1, ym, tm, depth + 1);
        adapt(ym, tm, y2, t2, depth + 1);
      };

  for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
    double hi = levels[i], lo = levels[i + 1];
    std::vector<const Seg*> moving;
    for (const auto& s : mu.segs)
      if (std::min(s.pa, s.pb) <= lo && std::max(s.pa, s.pb) >= hi) moving.push_back(&s);
    double t_lo = mu(lo, true);
    if (moving.size() == 1) {
      // tau = c + sigma e^{-2 t(y)} with t linear in the level y
      const Seg& s = *moving[0];
      double y = 0.5 * (lo + hi);
      double tc = s.ta + (y - s.pa) / (s.pb - s.pa) * (s.tb - s.ta);
      double sigma = s.pa > s.pb ? -1.0 : 1.0;
      push(t_lo, lo, mu(y, true) - sigma * std::exp(-2.0 * tc));
    } else if (moving.size() > 1) {
      adapt(hi, tau.back(), lo, t_lo, 0);
    } else {
      push(t_lo, lo, 0.0);
    }
    push(mu(lo, false), lo, 0.0);
  }
  if (tau.back() < 1.0) {
    if (1.0 - tau.back() < 1e-12) {
      tau.back() = 1.0;
    } else {
      tau.push_back(1.0);
      val.push_back(val.back());
      off.push_back(0.0);
    }
  }
  tau.back() = 1.0;
  for (std::size_t i = 1; i < tau.size(); ++i) {
    double& c = off[i];
    // rounding can put the offset on the piece; the piece is then tiny
    if (!std::isinf(c) && c >= tau[i - 1] && c <= tau[i])
      c = std::numeric_limits<double>::infinity();
  }
  return RearrangedFunction(std::move(tau), std::move(val), std::move(off));
}

// ---------------------------------------------------------------------------

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// weight t^{1/p} (log(e/t))^alpha written in x = 1 + log(1/t)
double weight_x(double x, const LZIndex& idx) {
  double w = std::pow(x, idx.alpha);
  if (!std::isinf(idx.p)) w *= std::exp((1.0 - x) / idx.p);
  return w;
}

double x_of(double tau) { return 1.0 - std::log(tau); }

LZValue sup_norm(const RearrangedFunction& f, const LZIndex& idx) {
  const auto& b = f.breakpoints();
  const auto& v = f.values();
  double best = 0.0;
  auto g = [&](double x) { return weight_x(x, idx) * f(std::exp(1.0 - x)); };
  auto consider = [&](double x) { best = std::max(best, g(x)); };

  // first piece: constant v0 on x >= x0
  if (v[0] > 0.0) {
    double x0 = x_of(b[0]);
    if (std::isinf(idx.p)) {
      if (idx.alpha > 0.0) return {kInf, true};
      best = std::max(best, v[0] * weight_x(x0, idx));
    } else {
      best = std::max(best, v[0] * weight_x(x0, idx));
      double xs = idx.alpha * idx.p;  // critical point of the weight
      if (xs > x0) best = std::max(best, v[0] * weight_x(xs, idx));
    }
  }
  for (std::size_t i = 1; i < b.size(); ++i) {
    double xl = x_of(b[i - 1]), xr = x_of(b[i]);  // xr < xl
    if (v[i - 1] == 0.0 && v[i] == 0.0) continue;
    // endpoint values taken from the table; exp(1 - x_of(b)) can land past b
    best = std::max(best, weight_x(xr, idx) * v[i]);
    best = std::max(best, weight_x(xl, idx) *
                              (f.kind() == PieceKind::step ? v[i] : v[i - 1]));
    if (f.kind() == PieceKind::step) {
      if (!std::isinf(idx.p)) {
        double xs = idx.alpha * idx.p;
        if (xs > xr && xs < xl) best = std::max(best, v[i] * weight_x(xs, idx));
      }
      continue;
    }
    if (f.kind() == PieceKind::loglinear && f.offset(i) == 0.0 && std::isinf(idx.p) &&
        idx.alpha != -1.0) {
      // f = A + B y with y = log tau = 1 - x, weight (1 - y)^alpha
      double yl = 1.0 - xl, yr = 1.0 - xr;
      double B = (v[i] - v[i - 1]) / (yr - yl);
      double A = v[i - 1] - B * yl;
      if (B != 0.0) {
        double ys = (B - idx.alpha * A) / (B * (1.0 + idx.alpha));
        if (ys > yl && ys < yr) consider(1.0 - ys);
      }
      continue;
    }
    // scan, then golden-section refine around the best sample
    const int n = 32;
    int kbest = 0;
    double gbest = -1.0;
    for (int k = 0; k <= n; ++k) {
      double x = xr + (xl - xr) * k / n;
      double gv = g(x);
      if (gv > gbest) gbest = gv, kbest = k;
    }
    double lo = xr + (xl - xr) * std::max(0, kbest - 1) / n;
    double hi = xr + (xl - xr) * std::min(n, kbest + 1) / n;
    const double r = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
      double m1 = hi - r * (hi - lo), m2 = lo + r * (hi - lo);
      if (g(m1) < g(m2)) lo = m1; else hi = m2;
    }
    consider(0.5 * (lo + hi));
    best = std::max(best, gbest);
  }
  return {best, false};
}

LZValue integral_norm(const RearrangedFunction& f, const LZIndex& idx) {
  const auto& b = f.breakpoints();
  const auto& v = f.values();
  const double q = idx.q;
  const double beta = idx.alpha * q;
  double acc = 0.0;

  // int_{x1}^{x2} weight^q dx for a constant piece
  auto const_piece = [&](double x1, double x2) -> double {
    if (std::isinf(idx.p)) {
      if (std::isinf(x2)) {
        if (beta >= -1.0) return kInf;
        return -std::pow(x1, beta + 1.0) / (beta + 1.0);
      }
      if (beta == -1.0) return std::log(x2 / x1);
      return (std::pow(x2, beta + 1.0) - std::pow(x1, beta + 1.0)) / (beta + 1.0);
    }
    auto h = [&](double x) { return std::pow(weight_x(x, idx), q); };
    return gauss_kronrod<double, 15>::integrate(h, x1, x2, 15, 1e-10);
  };

  if (v[0] > 0.0) {
    double part = const_piece(x_of(b[0]), kInf);
    if (std::isinf(part)) return {kInf, true};
    acc += std::pow(v[0], q) * part;
  }
  for (std::size_t i = 1; i < b.size(); ++i) {
    double xl = x_of(b[i - 1]), xr = x_of(b[i]);
    if (v[i - 1] == 0.0 && v[i] == 0.0) continue;
    if (f.kind() == PieceKind::step || v[i - 1] == v[i]) {
      acc += std::pow(v[i], q) * const_piece(xr, xl);
    } else if (f.kind() == PieceKind::loglinear && !std::isinf(f.offset(i))) {
      // in s = log tau on chunks that are short in both log tau and log|tau - c|
      double ta = b[i - 1], tb = b[i], c = f.offset(i);
      double l = std::log1p((tb - ta) / (ta - c));
      std::vector<double> cuts{std::log(ta), std::log(tb)};
      int nw = int(std::ceil(std::abs(l)));
      for (int k = 1; k < nw; ++k)
        cuts.push_back(std::log(ta + (ta - c) * std::expm1(l * k / nw)));
      for (double x = std::floor(cuts[0]) + 1.0; x < cuts[1]; x += 1.0) cuts.push_back(x);
      std::sort(cuts.begin(), cuts.end());
      auto h = [&](double x) {
        double w = log_frac(std::exp(x), ta, tb, c);
        return std::pow(weight_x(1.0 - x, idx) * (v[i - 1] + w * (v[i] - v[i - 1])), q);
      };
      for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        if (cuts[k + 1] > cuts[k]) acc += gauss<double, 20>::integrate(h, cuts[k], cuts[k + 1]);
    } else {
      auto h = [&](double x) {
        return std::pow(weight_x(x, idx) * f(std::exp(1.0 - x)), q);
      };
      acc += gauss_kronrod<double, 15>::integrate(h, xr, xl, 15, 1e-10);
    }
  }
  return {std::pow(acc, 1.0 / q), false};
}

}  // namespace

LZValue lz_quasinorm(const RearrangedFunction& f, const LZIndex& idx) {
  if (!(idx.p > 1.0)) throw InvalidArgument("LZ index p must lie in (1, inf]");
  if (!(idx.q > 0.0)) throw InvalidArgument("LZ index q must lie in (0, inf]");
  if (std::isinf(idx.q)) return sup_norm(f, idx);
  return integral_norm(f, idx);
}

double expl2_quasinorm(const RearrangedFunction& f) {
  return lz_quasinorm(f, {kInf, kInf, -0.5}).value;
}

RearrangedFunction rearrange_disc(const DiscFunction& u) {
  auto cells = cell_samples(u);
  double total = 0.0;
  for (auto& c : cells) {
    c.value = std::abs(c.value);
    total += c.area;
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Cell& a, const Cell& b) { return a.value > b.value; });
  std::vector<double> b, v;
  double acc = 0.0;
  for (const auto& c : cells) {
    if (!(c.area > 0.0)) continue;
    acc += c.area;
    if (!v.empty() && v.back() == c.value) b.back() = acc / total;
    else b.push_back(acc / total), v.push_back(c.value);
  }
  if (b.empty()) return {};
  b.back() = 1.0;
  // drop pieces that rounding made empty
  std::vector<double> bb{b[0]}, vv{v[0]};
  for (std::size_t i = 1; i < b.size(); ++i) {
    if (b[i] <= bb.back()) continue;
    bb.push_back(b[i]);
    vv.push_back(v[i]);
  }
  bb.back() = 1.0;
  return {std::move(bb), std::move(vv), PieceKind::step};
}

}  // namespace tmlab
