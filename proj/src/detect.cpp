#include "tmlab/detect.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "tmlab/averaging.hpp"
#include "tmlab/error.hpp"

namespace tmlab {

namespace {

bool lex_less(Point a, Point b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

bool candidate_order(const Candidate& a, const Candidate& b) {
  if (a.score != b.score) return a.score > b.score;
  if (a.d.j != b.d.j) return a.d.j < b.d.j;
  return lex_less(a.d.zeta, b.d.zeta);
}

// compass search for a local maximum of |A_r u| near z
Point climb(const DiscFunction& u, double r, Point z, double& best) {
  best = std::abs(average(u, r, z));
  double step = 0.5 * r;
  const double stop = 1e-3 * r;
  const Point dirs[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  for (int it = 0; it < 400 && step >= stop; ++it) {
    if (step < 4e-16 * std::max(1.0, std::abs(z))) break;
    Point bz = z;
    double bv = best;
    for (const auto& dz : dirs) {
      Point c = z + step * dz;
      if (std::abs(c) > 1.0) continue;
      double v = std::abs(average(u, r, c));
      if (v > bv) bv = v, bz = c;
    }
    if (bz == z) step *= 0.5;
    else z = bz, best = bv;
  }
  return z;
}

}  // namespace

double detector_score(const DiscFunction& u, int j, double rho, Point zeta) {
  return std::abs(average(u, std::pow(rho, j), zeta)) / std::sqrt(double(j));
}

Point refine_center(const DiscFunction& u, Point zeta, double ring, int iters) {
  const int n = 64;
  for (int it = 0; it < iters; ++it) {
    Point c1(0.0, 0.0);
    for (int m = 0; m < n; ++m) {
      double psi = 2.0 * std::numbers::pi * m / n;
      c1 += u(zeta + std::polar(ring, psi)) * std::polar(1.0, -psi);
    }
    c1 /= double(n);
    double m_in = circle_mean(u, zeta, ring * std::exp(-0.25));
    double m_out = circle_mean(u, zeta, ring * std::exp(0.25));
    double sigma = -(m_out - m_in) / 0.5;  // slope in t = log(1/|z - centre|)
    if (!std::isfinite(sigma) || std::abs(sigma) < 1e-300) break;
    Point delta = -2.0 * ring * std::conj(c1) / sigma;
    if (std::abs(delta) > 0.5 * ring) delta *= 0.5 * ring / std::abs(delta);
    zeta -= delta;
    if (std::abs(delta) < 1e-16 * std::max(1.0, std::abs(zeta))) break;
  }
  return zeta;
}

std::vector<Candidate> concentration_detect(const DiscFunction& u, double eps,
                                            const DetectOptions& opt) {
  if (!(eps > 0.0)) throw InvalidArgument("detection threshold must be > 0");
  if (opt.j_max < 1) throw InvalidArgument("j_max must be >= 1");
  for (double rho : opt.rho_grid)
    if (!(rho > 0.0 && rho < 1.0)) throw InvalidArgument("rho values must lie in (0,1)");

  // seeds: local maxima of |A_{r0} u| on a square lattice
  const double h = opt.seed_spacing;
  const int M = int(std::floor(opt.seed_radius / h));
  std::map<std::pair<int, int>, double> lat;
  for (int a = -M; a <= M; ++a)
    for (int b = -M; b <= M; ++b) {
      Point z(a * h, b * h);
      if (std::abs(z) > opt.seed_radius) continue;
      lat[{a, b}] = std::abs(average(u, opt.seed_scale, z));
    }
  struct Seed {
    Point z;
    double v;
  };
  std::vector<Seed> seeds;
  double vmax = 0.0;
  for (const auto& [key, v] : lat) vmax = std::max(vmax, v);
  for (const auto& [key, v] : lat) {
    if (!(v > 0.0) || v < 1e-3 * vmax) continue;
    bool peak = true;
    for (int da = -1; da <= 1 && peak; ++da)
      for (int db = -1; db <= 1; ++db) {
        if (!da && !db) continue;
        auto it = lat.find({key.first + da, key.second + db});
        if (it != lat.end() && it->second > v) {
          peak = false;
          break;
        }
      }
    if (peak) seeds.push_back({Point(key.first * h, key.second * h), v});
  }
  std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
    if (a.v != b.v) return a.v > b.v;
    return lex_less(a.z, b.z);
  });
  if (int(seeds.size()) > opt.max_seeds) seeds.resize(std::size_t(opt.max_seeds));

  std::vector<Candidate> raw;
  for (const auto& seed : seeds) {
    for (double rho : opt.rho_grid) {
      std::vector<double> score(std::size_t(opt.j_max + 1), 0.0);
      std::vector<Point> where(std::size_t(opt.j_max + 1));
      Point z = seed.z;
      for (int j = 1; j <= opt.j_max; ++j) {
        double r = std::pow(rho, j), a = 0.0;
        z = climb(u, r, z, a);
        score[std::size_t(j)] = a / std::sqrt(double(j));
        where[std::size_t(j)] = z;
      }
      for (int j = 1; j <= opt.j_max; ++j) {
        double s = score[std::size_t(j)];
        if (s < eps) continue;
        bool left = j == 1 || s > score[std::size_t(j - 1)];
        bool right = j == opt.j_max || s >= score[std::size_t(j + 1)];
        if (!left || !right) continue;
        Candidate c{{j, where[std::size_t(j)]}, s, rho, j == opt.j_max};
        if (opt.refine) {
          double r = std::pow(rho, j);
          Point zr = refine_center(u, c.d.zeta, std::pow(r, 0.8));
          if (std::abs(zr - c.d.zeta) <= r && std::abs(zr) <= 1.0) {
            double sr = detector_score(u, j, rho, zr);
            if (sr >= s * (1.0 - 1e-9)) c.d.zeta = zr, c.score = sr;
          }
        }
        raw.push_back(c);
      }
    }
  }

  std::sort(raw.begin(), raw.end(), candidate_order);
  std::vector<Candidate> out;
  for (const auto& c : raw) {
    bool dup = false;
    for (const auto& k : out) {
      double r = std::max(std::pow(c.rho, c.d.j), std::pow(k.rho, k.d.j));
      if (std::abs(c.d.zeta - k.d.zeta) < r &&
          std::abs(std::log(double(c.d.j)) - std::log(double(k.d.j))) < std::log(2.0)) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(c);
  }
  return out;
}

std::vector<Candidate> concentration_detect(const DiscFunction& u, double eps,
                                            const std::vector<double>& rho_grid, int j_max) {
  DetectOptions opt;
  opt.rho_grid = rho_grid;
  opt.j_max = j_max;
  return concentration_detect(u, eps, opt);
}

}  // namespace tmlab
