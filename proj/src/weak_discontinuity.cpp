#include "tmlab/weak_discontinuity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tmlab/error.hpp"
#include "tmlab/parallel.hpp"

namespace tmlab {

double j_disc(const DiscFunction& u, const QuadratureSpec& spec) {
  if (!u.has_grid_part()) {
    if (u.atoms().empty()) return 0.0;
    if (u.atoms().size() == 1) return j_direct(u.atoms()[0].profile, spec);
  }
  const double alpha = 4.0 * std::numbers::pi;
  double acc = 0.0;
  for (const auto& c : cell_samples(u)) {
    double x = alpha * c.value * c.value;
    if (x > spec.exponent_cap) {
      std::ostringstream os;
      os << "Moser integrand exponent " << x << " exceeds the cap " << spec.exponent_cap;
      throw OverflowError(os.str(), 0.0, 0.0);
    }
    acc += std::expm1(x) * c.area;
  }
  return acc;
}

WeakDiscontinuityReport weak_discontinuity_report(const std::vector<DiscFunction>& members,
                                                  const std::vector<int>& k_list,
                                                  const QuadratureSpec& spec) {
  if (members.size() != k_list.size() || members.empty())
    throw InvalidArgument("need one k per member and at least one member");
  const auto probes = default_probes();
  const std::size_t n = members.size();
  WeakDiscontinuityReport rep;
  rep.k = k_list;
  rep.J.resize(n);
  rep.energy.resize(n);
  rep.pairings.resize(n);
  rep.max_pairing.resize(n);
  parallel_for(n, [&](std::size_t i) {
    rep.J[i] = j_disc(members[i], spec);
    rep.energy[i] = members[i].energy();
    rep.pairings[i] = probe_pairings(members[i], {1, Point(0.0, 0.0)}, probes);
    double m = 0.0;
    for (double p : rep.pairings[i]) m = std::max(m, std::abs(p));
    rep.max_pairing[i] = m;
  });

  rep.pairings_decay = n > 1 && rep.max_pairing.back() <= 0.5 * rep.max_pairing.front();
  double jmax = *std::max_element(rep.J.begin(), rep.J.end());
  double tail_min = *std::min_element(rep.J.begin() + std::ptrdiff_t(n / 2), rep.J.end());
  rep.j_bounded_below = jmax > 0.0 && tail_min >= 0.5 * jmax;
  if (!rep.pairings_decay) rep.classification = "non-concentrating";
  else if (rep.j_bounded_below) rep.classification = "moser-concentrating";
  else if (rep.J.back() < 0.1 * jmax) rep.classification = "vanishing";
  else rep.classification = "indeterminate";
  return rep;
}

WeakDiscontinuityReport weak_discontinuity_demo(const std::vector<double>& s_k,
                                                const std::vector<Point>& zeta_k, GridPtr grid,
                                                double R, const QuadratureSpec& spec) {
  if (s_k.size() != zeta_k.size() || s_k.empty())
    throw InvalidArgument("need one centre per concentration parameter");
  if (!(R > 0.0 && R <= 1.0)) throw InvalidArgument("support radius R must lie in (0,1]");
  std::vector<DiscFunction> members;
  std::vector<int> ks;
  for (std::size_t i = 0; i < s_k.size(); ++i) {
    if (!(s_k[i] > 0.0 && s_k[i] < R)) throw InvalidArgument("need 0 < s_k < R");
    auto w = make_moser_sub(std::log(1.0 / s_k[i]), R);
    members.push_back(inflate(w, {1, zeta_k[i]}, grid));
    ks.push_back(int(i) + 1);
  }
  return weak_discontinuity_report(members, ks, spec);
}

}  // namespace tmlab
