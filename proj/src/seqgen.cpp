#include "tmlab/seqgen.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "tmlab/error.hpp"
#include "tmlab/parallel.hpp"

namespace tmlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

RadialProfile random_profile(Rng& rng, int n_nodes, bool normalize) {
  if (n_nodes < 2) throw InvalidArgument("random profile needs at least 2 nodes");
  std::vector<double> t{0.0}, v{0.0};
  for (int i = 1; i < n_nodes; ++i) {
    t.push_back(t.back() + rng.uniform(0.1, 1.5));
    v.push_back(rng.uniform(-1.0, 1.0));
  }
  RadialProfile u(std::move(t), std::move(v), 2);
  if (normalize && !u.is_zero()) u = u.scaled(1.0 / grad_norm(u));
  return u;
}

FunctionSequence moser_sequence(const std::vector<double>& s_k, const std::vector<Point>& zeta_k,
                                GridPtr grid, MoserForm form, double R) {
  if (s_k.size() != zeta_k.size()) throw InvalidArgument("need one centre per member");
  for (std::size_t i = 0; i < s_k.size(); ++i) {
    if (!(s_k[i] > 0.0 && s_k[i] < 1.0)) throw InvalidArgument("s_k must lie in (0,1)");
    if (i > 0 && !(s_k[i] < s_k[i - 1])) throw InvalidArgument("s_k must be decreasing");
  }
  FunctionSequence seq;
  seq.generator = "moser";
  seq.params["form"] = form == MoserForm::translate ? 0.0 : 1.0;
  seq.params["R"] = R;
  for (std::size_t i = 0; i < s_k.size(); ++i) {
    seq.k_list.push_back(int(i) + 1);
    double L = std::log(1.0 / s_k[i]);
    ProfileTerm t;
    if (form == MoserForm::translate) {
      t.w = make_moser_sub(L, R);
      t.j = {1};
    } else {
      t.w = make_moser_sub(1.0, R);
      t.j = {std::max(1, int(std::lround(L)))};
    }
    t.zeta = {zeta_k[i]};
    seq.members.push_back(inflate(t.w, {t.j[0], t.zeta[0]}, grid));
    // the scale form plants one profile along a single track
    if (form == MoserForm::scale) {
      if (seq.truth.empty()) seq.truth.push_back({t.w, {}, {}});
      seq.truth[0].j.push_back(t.j[0]);
      seq.truth[0].zeta.push_back(t.zeta[0]);
    }
  }
  return seq;
}

RadialProfile default_bump() { return RadialProfile({0.0, 2.0, 2.5, 3.0}, {0.0, 0.0, 1.0, 0.0}); }

FunctionSequence counterexample_sequence(int k_max, const RadialProfile& bump) {
  if (k_max < 1) throw InvalidArgument("k_max must be >= 1");
  if (bump.dim() != 2) throw InvalidArgument("bump must be an N = 2 profile");
  if (bump.is_zero()) throw InvalidArgument("bump must be nonzero");
  if (bump.support_start() < 2.0 || bump.plateau() != 0.0 || bump.last_node() > 3.0)
    throw InvalidArgument("bump must be supported in t in [2, 3] and vanish at both ends");
  if (k_max > 1000) throw InvalidArgument("k_max above 1000 underflows the dyadic scales");
  FunctionSequence seq;
  seq.generator = "counterexample";
  seq.params["k_max"] = k_max;
  seq.k_list.resize(std::size_t(k_max));
  seq.radial.resize(std::size_t(k_max));
  parallel_for(std::size_t(k_max), [&](std::size_t idx) {
    int k = int(idx) + 1;
    RadialProfile acc;
    for (int i = 1; i <= k; ++i) acc = acc + gauge_apply(bump, std::ldexp(1.0, i));
    seq.k_list[idx] = k;
    seq.radial[idx] = acc.scaled(1.0 / std::sqrt(double(k)));
  });
  return seq;
}

DiscFunction bump2d(GridPtr grid) {
  const auto& g = *grid;
  std::vector<double> v(g.size(), 0.0);
  for (int i = 1; i <= g.n_r(); ++i)
    for (int k = 0; k < g.n_theta(); ++k) {
      Point z = g.node(i, k);
      double r2 = std::norm(z);
      if (r2 >= 0.25) continue;
      double b = (1.0 - 4.0 * r2) * (1.0 - 4.0 * r2);
      v[g.index(i, k)] = b * (1.0 + 0.5 * z.real());
    }
  return DiscFunction(grid, std::move(v));
}

FunctionSequence vanishing_sequence(const std::vector<int>& k_list, const DiscFunction& bump) {
  FunctionSequence seq;
  seq.generator = "vanishing";
  const auto& g = bump.grid();
  for (std::size_t n = 0; n < k_list.size(); ++n) {
    int k = k_list[n];
    if (k < 1) throw InvalidArgument("vanishing sequence needs k >= 1");
    std::vector<double> v(g.size(), 0.0);
    for (int i = 1; i <= g.n_r(); ++i)
      for (int a = 0; a < g.n_theta(); ++a) v[g.index(i, a)] = bump(double(k) * g.node(i, a));
    double c = v[g.index(g.n_r(), 0)];
    for (int a = 0; a < g.n_theta(); ++a) v[g.index(g.n_r(), a)] = c;
    seq.k_list.push_back(k);
    seq.members.emplace_back(bump.grid_ptr(), std::move(v));
  }
  return seq;
}

DiscFunction angular_noise(GridPtr grid, int m, double phase, double energy) {
  const auto& g = *grid;
  std::vector<double> v(g.size(), 0.0);
  for (int i = 1; i < g.n_r(); ++i) {
    double r = g.r(i);
    if (r >= 0.5) continue;
    double s = std::sin(2.0 * kPi * r);
    for (int k = 0; k < g.n_theta(); ++k) v[g.index(i, k)] = s * s * std::cos(m * g.theta(k) + phase);
  }
  DiscFunction u(grid, std::move(v));
  double e = u.grid_energy();
  if (energy == 0.0 || e == 0.0) return DiscFunction(grid);
  return u.scaled(std::sqrt(energy / e));
}

FunctionSequence synthetic_superposition(const std::vector<ProfileTerm>& terms,
                                         const std::vector<int>& k_list, double noise_energy,
                                         std::uint64_t seed, GridPtr grid) {
  if (noise_energy < 0.0) throw InvalidArgument("noise energy must be >= 0");
  for (const auto& t : terms)
    if (t.j.size() != k_list.size() || t.zeta.size() != k_list.size())
      throw InvalidArgument("each term needs one (j, zeta) per k");
  for (std::size_t a = 0; a < terms.size(); ++a)
    for (std::size_t b = a + 1; b < terms.size(); ++b)
      if (!orthogonality_check(terms[a], terms[b])) {
        std::ostringstream os;
        os << "terms " << a << " and " << b << " collide: neither their centres nor their scales"
           << " separate";
        throw InvalidArgument(os.str());
      }
  FunctionSequence seq;
  seq.generator = "superposition";
  seq.params["noise_energy"] = noise_energy;
  seq.params["seed"] = double(seed);
  seq.k_list = k_list;
  seq.truth = terms;
  seq.noise_energy = noise_energy;
  Rng rng(seed);
  std::vector<double> phase(k_list.size());
  for (auto& p : phase) p = 2.0 * kPi * rng.uniform();
  seq.members.assign(k_list.size(), DiscFunction(grid));
  parallel_for(k_list.size(), [&](std::size_t i) {
    DiscFunction u = angular_noise(grid, 8 + 2 * k_list[i], phase[i], noise_energy);
    for (const auto& t : terms) u += inflate(t.w, {t.j[i], t.zeta[i]}, grid);
    seq.members[i] = std::move(u);
  });
  return seq;
}

}  // namespace tmlab
