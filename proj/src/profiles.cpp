#include "tmlab/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tmlab/error.hpp"
#include "tmlab/parallel.hpp"
#include "tmlab/probes.hpp"
#include "tmlab/rearrangement.hpp"
#include "tmlab/rng.hpp"

namespace tmlab {

namespace {

double remainder_expl2(const DiscFunction& u) { return expl2_quasinorm(rearrange_disc(u)); }

std::vector<double> section_nodes() {
  std::vector<double> t;
  for (int i = 0; i <= 1024; ++i) t.push_back(i / 512.0);
  for (int i = 1; i <= 128; ++i) t.push_back(2.0 + i / 64.0);
  return t;
}

// candidate nearest to the anchor centre among those within half the best score
const Candidate* follow(const std::vector<Candidate>& cands, Point anchor, double radius) {
  if (cands.empty()) return nullptr;
  const Candidate* best = nullptr;
  for (const auto& c : cands) {
    if (c.score < 0.5 * cands.front().score || std::abs(c.d.zeta - anchor) > radius) continue;
    if (!best || std::abs(c.d.zeta - anchor) < std::abs(best->d.zeta - anchor)) best = &c;
  }
  return best;
}

Point snap_to_atom(const DiscFunction& u, Point z) {
  for (const auto& a : u.atoms())
    if (std::abs(a.center - z) < 1e-10) return a.center;
  return z;
}

// weak-limit proxy: angular means of the last k_tail deflations, with the part
// whose circles would leave the disc for some k dropped
RadialProfile estimate_profile(const std::vector<DiscFunction>& rem, const ProfileTerm& term,
                               const std::vector<double>& nodes, int k_tail) {
  const std::size_t n = rem.size();
  std::vector<std::size_t> tail;
  for (std::size_t i = n; i-- > 0 && int(tail.size()) < k_tail;)
    if (term.j[i] > 0) tail.push_back(i);
  std::vector<RadialProfile> sec(tail.size());
  parallel_for(tail.size(), [&](std::size_t m) {
    std::size_t i = tail[m];
    sec[m] = radial_section(rem[i], {term.j[i], term.zeta[i]}, nodes);
  });
  std::vector<double> avg(nodes.size(), 0.0);
  for (const auto& s : sec)
    for (std::size_t p = 0; p < nodes.size(); ++p) avg[p] += s.values()[p] / double(sec.size());

  double t_fit = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (term.j[i] > 0)
      t_fit = std::max(t_fit, std::log(1.0 / (1.0 - std::abs(term.zeta[i]))) / term.j[i]);
  std::vector<double> tn{0.0}, tv{0.0};
  if (t_fit > 0.0) tn.push_back(t_fit), tv.push_back(0.0);
  for (std::size_t p = 1; p < nodes.size(); ++p)
    if (nodes[p] > t_fit) tn.push_back(nodes[p]), tv.push_back(avg[p]);
  return RadialProfile(std::move(tn), std::move(tv), 2);
}

void synthesize(std::vector<DiscFunction>& u, const ProfileTerm& term, double sign) {
  GridPtr grid = u[0].grid_ptr();
  parallel_for(u.size(), [&](std::size_t i) {
    if (term.j[i] <= 0) return;
    auto a = inflate(term.w, {term.j[i], term.zeta[i]}, grid);
    if (sign > 0) u[i] += a;
    else u[i] -= a;
  });
}

}  // namespace

DiscFunction FunctionSequence::disc_member(std::size_t i, GridPtr grid) const {
  if (!is_radial()) return members.at(i);
  if (!grid) grid = make_grid(128, 128);
  return DiscFunction::from_radial(grid, radial.at(i));
}

void FunctionSequence::validate(double energy_bound) const {
  std::size_t n = is_radial() ? radial.size() : members.size();
  if (!radial.empty() && !members.empty())
    throw InvalidArgument("a sequence holds either disc or radial members");
  if (n != k_list.size()) throw InvalidArgument("sequence needs one k per member");
  for (std::size_t i = 1; i < k_list.size(); ++i)
    if (k_list[i] <= k_list[i - 1]) throw InvalidArgument("k_list must be increasing");
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (!(members[i].grid() == members[0].grid()))
      throw InvalidArgument("sequence members live on different grids");
  }
  for (std::size_t i = 0; i < n; ++i) {
    double e = is_radial() ? grad_norm_pow(radial[i]) : members[i].energy();
    if (!std::isfinite(e) || e > energy_bound) {
      std::ostringstream os;
      os << "member k = " << k_list[i] << " has energy " << e << " above the bound "
         << energy_bound;
      throw InvalidArgument(os.str());
    }
  }
}

std::vector<double> Decomposition::term_energy() const {
  std::vector<double> e;
  for (const auto& t : terms) e.push_back(grad_inner(t.w, t.w));
  return e;
}

double Decomposition::energy() const {
  double s = 0.0;
  for (double e : term_energy()) s += e;
  return s;
}

std::size_t tail_start(std::size_t n) {
  std::size_t len = std::max((n + 1) / 2, std::min<std::size_t>(2, n));
  return n - len;
}

Decomposition extract(const FunctionSequence& seq, double eps_stop, int max_terms,
                      const ExtractOptions& opt) {
  if (!(eps_stop > 0.0)) throw InvalidArgument("eps_stop must be > 0");
  if (max_terms < 0) throw InvalidArgument("max_terms must be >= 0");
  if (opt.k_tail < 1) throw InvalidArgument("k_tail must be >= 1");
  seq.validate();
  const std::size_t n = seq.size();
  Decomposition D;
  D.k_list = seq.k_list;
  if (n == 0) return D;

  GridPtr grid = seq.is_radial() ? make_grid(128, 128) : seq.members[0].grid_ptr();
  std::vector<DiscFunction> rem;
  for (std::size_t i = 0; i < n; ++i) rem.push_back(seq.disc_member(i, grid));
  D.input_energy.resize(n);
  parallel_for(n, [&](std::size_t i) { D.input_energy[i] = rem[i].energy(); });
  for (std::size_t i = tail_start(n); i < n; ++i)
    D.input_energy_limsup = std::max(D.input_energy_limsup, D.input_energy[i]);

  const auto nodes = section_nodes();
  const double thr = opt.detect_factor * eps_stop;
  double q = remainder_expl2(rem.back());
  double e = rem.back().energy();
  int rises = 0;

  while (int(D.terms.size()) < max_terms && q >= eps_stop) {
    std::vector<std::vector<Candidate>> cands(n);
    cands[n - 1] = concentration_detect(rem[n - 1], thr, opt.detect);
    if (cands[n - 1].empty()) break;
    const Point anchor = cands[n - 1].front().d.zeta;
    parallel_for(n - 1, [&](std::size_t i) {
      cands[i] = concentration_detect(rem[i], thr, opt.detect);
    });

    ProfileTerm term;
    term.j.assign(n, 0);
    term.zeta.assign(n, Point(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      const Candidate* c = i + 1 == n ? &cands[i].front() : follow(cands[i], anchor, opt.track_radius);
      if (!c) continue;
      term.j[i] = c->d.j;
      term.zeta[i] = snap_to_atom(rem[i], c->d.zeta);
    }

    term.w = estimate_profile(rem, term, nodes, opt.k_tail);
    if (term.w.is_zero()) break;

    std::vector<DiscFunction> next(rem);
    synthesize(next, term, -1.0);
    double q2 = remainder_expl2(next.back());
    double e2 = next.back().energy();
    if (q2 > q * (1.0 + 1e-9)) {
      std::ostringstream os;
      os << "term " << D.terms.size() + 1 << " raised the exp L^2 remainder at k = "
         << D.k_list.back() << " from " << q << " to " << q2;
      throw ExtractionError(os.str());
    }
    rises = e2 > e ? rises + 1 : 0;
    if (rises >= 2) {
      std::ostringstream os;
      os << "remainder energy rose twice in a row (now " << e2 << " at k = " << D.k_list.back()
         << ")";
      throw ExtractionError(os.str());
    }
    rem = std::move(next);
    D.terms.push_back(std::move(term));
    q = q2;
    e = e2;
  }

  // backfitting: re-estimate each profile with the other terms removed
  for (int sweep = 0; sweep < opt.refit_sweeps && D.terms.size() > 1; ++sweep) {
    for (auto& term : D.terms) {
      std::vector<DiscFunction> with(rem);
      synthesize(with, term, 1.0);
      ProfileTerm cand = term;
      cand.w = estimate_profile(with, cand, nodes, opt.k_tail);
      std::vector<DiscFunction> next(with);
      synthesize(next, cand, -1.0);
      double q2 = remainder_expl2(next.back());
      if (q2 > q) continue;
      term = std::move(cand);
      rem = std::move(next);
      q = q2;
    }
  }

  D.remainder_expl2.resize(n);
  D.remainder_energy.resize(n);
  parallel_for(n, [&](std::size_t i) {
    D.remainder_expl2[i] = remainder_expl2(rem[i]);
    D.remainder_energy[i] = rem[i].energy();
  });
  D.remainder = std::move(rem);
  return D;
}

bool orthogonality_check(const ProfileTerm& a, const ProfileTerm& b, double delta, double Delta) {
  if (a.j.size() != b.j.size() || a.zeta.size() != a.j.size() || b.zeta.size() != b.j.size())
    throw InvalidArgument("orthogonality check needs terms over the same k list");
  const std::size_t n = a.j.size();
  std::vector<double> dz, gap;
  for (std::size_t i = tail_start(n); i < n; ++i) {
    if (a.j[i] <= 0 || b.j[i] <= 0) continue;
    dz.push_back(std::abs(a.zeta[i] - b.zeta[i]));
    gap.push_back(std::abs(std::log(double(a.j[i])) - std::log(double(b.j[i]))));
  }
  if (dz.empty()) return false;
  bool apart = std::all_of(dz.begin(), dz.end(), [&](double x) { return x >= delta; });
  if (apart) return true;
  if (gap.size() < 2) return false;
  for (std::size_t i = 0; i < gap.size(); ++i) {
    if (gap[i] < Delta) return false;
    if (i > 0 && gap[i] < gap[i - 1]) return false;
  }
  return gap.back() > gap.front();
}

EnergyLedger energy_ledger(const Decomposition& d) {
  EnergyLedger L;
  L.term_energy = d.term_energy();
  for (double e : L.term_energy) L.sum += e;
  L.limsup = d.input_energy_limsup;
  L.slack = L.limsup - L.sum;
  L.ok = L.slack >= -1e-6;
  return L;
}

DWeakReport dweak_test(const FunctionSequence& seq, int probe_count, const DWeakOptions& opt) {
  if (probe_count < 1) throw InvalidArgument("probe_count must be >= 1");
  seq.validate();
  const std::size_t n = seq.size();
  DWeakReport rep;
  rep.k = seq.k_list;
  if (n == 0) return rep;
  auto probes = default_probes();
  if (std::size_t(probe_count) < probes.size()) probes.resize(std::size_t(probe_count));

  GridPtr grid = opt.grid ? opt.grid : make_grid(128, 128);
  std::vector<DiscFunction> u;
  for (std::size_t i = 0; i < n; ++i) u.push_back(seq.disc_member(i, grid));

  std::vector<Track> tracks;
  tracks.push_back({"identity", std::vector<int>(n, 1), std::vector<Point>(n, Point(0.0, 0.0))});
  Rng rng(opt.seed);
  for (int m = 0; m < opt.random_tracks; ++m) {
    int j = std::clamp(int(std::lround(std::exp(rng.uniform() * std::log(double(opt.j_max))))), 1,
                       opt.j_max);
    double rad = 0.5 * std::sqrt(rng.uniform());
    Point z = std::polar(rad, 2.0 * std::numbers::pi * rng.uniform());
    tracks.push_back({"random", std::vector<int>(n, j), std::vector<Point>(n, z)});
  }
  std::vector<std::vector<Candidate>> cands(n);
  DetectOptions dopt;
  dopt.j_max = opt.j_max;
  parallel_for(n, [&](std::size_t i) { cands[i] = concentration_detect(u[i], opt.detect_eps, dopt); });
  Track guided{"detector", std::vector<int>(n, 0), std::vector<Point>(n, Point(0.0, 0.0))};
  for (std::size_t i = 0; i < n; ++i)
    if (!cands[i].empty()) guided.j[i] = cands[i][0].d.j, guided.zeta[i] = cands[i][0].d.zeta;
  tracks.push_back(guided);
  for (const auto& c : cands.back())
    tracks.push_back({"detector", std::vector<int>(n, c.d.j), std::vector<Point>(n, c.d.zeta)});
  rep.tracks_tested = tracks.size();

  std::vector<std::vector<double>> val(tracks.size(), std::vector<double>(n, 0.0));
  parallel_for(tracks.size() * n, [&](std::size_t idx) {
    std::size_t t = idx / n, i = idx % n;
    const auto& tr = tracks[t];
    if (tr.j[i] <= 0) return;
    double m = 0.0;
    for (double p : probe_pairings(u[i], {tr.j[i], tr.zeta[i]}, probes)) m = std::max(m, std::abs(p));
    val[t][i] = m;
  });

  rep.max_pairing.assign(n, 0.0);
  const std::size_t t0 = tail_start(n);
  double best = -1.0;
  for (std::size_t t = 0; t < tracks.size(); ++t) {
    double tail = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      rep.max_pairing[i] = std::max(rep.max_pairing[i], val[t][i]);
      if (i >= t0) tail += val[t][i] / double(n - t0);
    }
    if (tail > best) {
      best = tail;
      rep.witness = tracks[t];
    }
  }
  rep.witness_pairing = best;
  return rep;
}

}  // namespace tmlab
