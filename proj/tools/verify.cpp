#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "commands.hpp"
#include "tmlab/averaging.hpp"
#include "tmlab/error.hpp"
#include "tmlab/rearrangement.hpp"
#include "tmlab/seqgen.hpp"
#include "tmlab/weak_discontinuity.hpp"

namespace tmlab::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

struct Suite {
  std::string name;
  std::vector<Check> checks;

  void add(const std::string& n, bool ok, double worst) {
    std::ostringstream os;
    os.precision(6);
    os << "worst " << worst;
    checks.push_back({n, ok, os.str()});
  }
  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

template <class F>
void guarded(Suite& s, const std::string& name, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    s.checks.push_back({name, false, std::string("threw: ") + e.what()});
  }
}

// (1/pi) int_B |u|^p dx for a radial profile
double radial_power_mean(const RadialProfile& u, double p) {
  const auto& t = u.nodes();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    auto f = [&](double x) { return std::pow(std::abs(u(x)), p) * std::exp(-2.0 * x); };
    acc += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, t[i], t[i + 1], 10, 1e-13);
  }
  acc += std::pow(std::abs(u.plateau()), p) * std::exp(-2.0 * u.last_node()) / 2.0;
  return 2.0 * acc;
}

RearrangedFunction random_rearranged(Rng& rng) {
  int n = rng.integer(2, 8);
  std::vector<double> b, v;
  double x = 1.0;
  for (int i = 0; i < n; ++i) {
    b.push_back(x);
    x *= rng.uniform(0.01, 0.5);
  }
  std::reverse(b.begin(), b.end());
  double y = rng.uniform(0.1, 1.0);
  for (int i = 0; i < n; ++i) {
    v.push_back(y);
    y *= rng.uniform(0.3, 1.0);
  }
  return {b, v, PieceKind::step};
}

Suite suite_radial(std::uint64_t seed) {
  Suite s{"radial", {}};
  Rng rng(seed);
  double w_hom = 0, w_law = 0, w_iso = 0, w_cs = -kInf, w_id = 0, w_pt = kInf, w_h = kInf;
  for (int n = 0; n < 1000; ++n) {
    auto u = random_profile(rng, rng.integer(2, 8), n % 2 == 0);
    double c = rng.uniform(-3.0, 3.0);
    if (n < 200) {
      w_hom = std::max(w_hom, std::abs(grad_norm(u.scaled(c)) - std::abs(c) * grad_norm(u)));
      double a = std::exp(rng.uniform(-2.0, 2.0)), b = std::exp(rng.uniform(-2.0, 2.0));
      auto l = gauge_apply(gauge_apply(u, a), b), r = gauge_apply(u, a * b);
      for (std::size_t i = 0; i < l.size(); ++i)
        w_law = std::max({w_law, std::abs(l.nodes()[i] - r.nodes()[i]) / (1.0 + r.nodes()[i]),
                          std::abs(l.values()[i] - r.values()[i]) / (1.0 + std::abs(r.values()[i]))});
      w_iso = std::max(w_iso, std::abs(grad_norm(gauge_apply(u, a)) - grad_norm(u)));
      double t = rng.uniform(0.05, 10.0);
      double pm = pairing_mstar(u, t);
      w_cs = std::max(w_cs, pm * pm - grad_norm(u) * grad_norm(u));
      double mt = std::exp(-rng.uniform(0.1, 10.0));
      auto g = gauge_apply(make_moser(mt), a), m = make_moser(std::pow(mt, 1.0 / a));
      for (std::size_t i = 0; i < g.size(); ++i)
        w_id = std::max({w_id, std::abs(g.nodes()[i] - m.nodes()[i]) / (1.0 + m.nodes()[i]),
                         std::abs(g.values()[i] - m.values()[i])});
    }
    auto un = u.scaled(1.0 / grad_norm(u));
    w_pt = std::min(w_pt, pointwise_bound_margin(un));
    w_h = std::min(w_h, hardy_ratio(u));
  }
  s.add("grad_norm_homogeneous", w_hom <= 1e-12, w_hom);
  s.add("gauge_group_law", w_law <= 1e-12, w_law);
  s.add("gauge_isometry", w_iso <= 1e-12, w_iso);
  s.add("pairing_cauchy_schwarz", w_cs <= 1e-12, w_cs);
  s.add("moser_gauge_identity", w_id <= 1e-12, w_id);
  s.add("pointwise_margin", w_pt >= -1e-12, w_pt);
  s.add("hardy_ratio", w_h >= 0.25 - 1e-9, w_h);
  return s;
}

Suite suite_functional(std::uint64_t seed, const QuadratureSpec& q) {
  Suite s{"functional", {}};
  Rng rng(seed + 1);
  guarded(s, "representation_agreement", [&] {
    double worst = 0.0, wmono = -kInf, wneg = kInf;
    for (int n = 0; n < 20; ++n) {
      auto u = random_profile(rng, rng.integer(2, 7), true);
      double a = j_direct(u, q), b = j_representation(u, q);
      worst = std::max(worst, std::abs(a - b) / std::max(a, 1e-300));
      wmono = std::max(wmono, a - j_direct(u.scaled(1.1), q));
      wneg = std::min(wneg, a);
    }
    s.add("representation_agreement", worst <= 1e-6, worst);
    s.add("monotone_in_modulus", wmono <= 0.0, wmono);
    s.add("nonnegative", wneg >= 0.0 && j_direct(RadialProfile(), q) == 0.0, wneg);
  });
  guarded(s, "subcritical_concentration", [&] {
    double prev = kInf;
    bool dec = true;
    for (double L : {16.0, 64.0, 256.0, 1024.0}) {
      double J = j_direct(make_moser_log(L).scaled(0.9), q);
      dec = dec && J < prev;
      prev = J;
    }
    s.add("subcritical_concentration", dec && prev < 0.05, prev);
  });
  return s;
}

Suite suite_rearrangement(std::uint64_t seed) {
  Suite s{"rearrangement", {}};
  Rng rng(seed + 2);
  double weq = 0.0, wmon = -kInf, wsc = 0.0, wint = -kInf;
  for (int n = 0; n < 100; ++n) {
    auto u = random_profile(rng, rng.integer(2, 7), true);
    auto f = rearrange_radial(u);
    for (double p : {1.0, 2.0, 4.0}) {
      double a = std::pow(f.lp_norm(p), p), b = radial_power_mean(u, p);
      weq = std::max(weq, std::abs(a - b) / std::max(b, 1e-300));
    }
    auto g = rearrange_radial(u.scaled(1.3));
    for (double tau : {1e-6, 1e-3, 0.1, 0.5, 0.9})
      wmon = std::max(wmon, f(tau) - g(tau));
    auto r = random_rearranged(rng);
    double c = rng.uniform(0.1, 5.0);
    for (LZIndex idx : {LZIndex{kInf, kInf, -0.5}, LZIndex{kInf, 2.0, -1.0}, LZIndex{4.0, 3.0, 0.5}}) {
      double a = lz_quasinorm(r.scaled(c), idx).value, b = c * lz_quasinorm(r, idx).value;
      wsc = std::max(wsc, std::abs(a - b) / b);
    }
    double qq = rng.uniform(2.05, 20.0);
    double lhs = lz_quasinorm(r, {kInf, qq, -1.0 / qq - 0.5}).value;
    double rhs = std::pow(lz_quasinorm(r, {kInf, 2.0, -1.0}).value, 2.0 / qq) *
                 std::pow(expl2_quasinorm(r), 1.0 - 2.0 / qq);
    wint = std::max(wint, lhs / rhs - 1.0);
  }
  s.add("equimeasurable", weq <= 1e-8, weq);
  s.add("monotone", wmon <= 1e-12, wmon);
  s.add("scaling", wsc <= 1e-9, wsc);
  s.add("interpolation", wint <= 1e-8, wint);
  return s;
}

Suite suite_disc2d(const RunConfig& cfg) {
  Suite s{"disc2d", {}};
  guarded(s, "atom_energy", [&] {
    auto grid = make_grid(cfg.grid_nr, cfg.grid_ntheta);
    auto w = make_moser_sub(1.0, 0.8);
    double worst = 0.0;
    for (int j : {1, 4, 16}) {
      auto u = inflate(w, {j, Point(0.1, -0.05)}, grid);
      worst = std::max(worst, std::abs(u.energy() - 1.0));
      auto d = deflate(u, {j, Point(0.1, -0.05)});
      worst = std::max(worst, std::abs(d.energy() - 1.0));
    }
    s.add("atom_energy", worst <= 1e-9, worst);

    auto b = bump2d(grid);
    double sup = 0.0;
    for (double v : b.values()) sup = std::max(sup, std::abs(v));
    double wc = -kInf, wl = 0.0;
    for (double r : {0.05, 0.2}) {
      for (Point z : {Point(0, 0), Point(0.3, 0.1), Point(-0.2, 0.4)}) {
        double a = average(b, r, z);
        wc = std::max(wc, std::abs(a) - sup);
        wl = std::max(wl, std::abs(average(b.scaled(2.5), r, z) - 2.5 * a));
      }
    }
    s.add("average_contractive", wc <= 1e-12, wc);
    s.add("average_linear", wl <= 1e-12, wl);
  });
  return s;
}

Suite suite_profiles(const RunConfig& cfg) {
  Suite s{"profiles", {}};
  guarded(s, "orthogonality_examples", [&] {
    std::vector<int> k{1, 2, 3, 4, 5, 6, 7, 8};
    ProfileTerm a{make_moser_log(1.0), {}, {}}, b = a, c = a, d = a;
    for (int x : k) {
      a.j.push_back(x), a.zeta.push_back(0.0);
      b.j.push_back(x * x), b.zeta.push_back(0.0);
      c.j.push_back(x), c.zeta.push_back(0.4);
    }
    d = a;
    bool ok = !orthogonality_check(a, d) && orthogonality_check(a, b) && orthogonality_check(a, c);
    s.add("orthogonality_examples", ok, ok ? 0.0 : 1.0);
  });
  guarded(s, "empty_decomposition", [&] {
    FunctionSequence z;
    auto grid = make_grid(cfg.grid_nr, cfg.grid_ntheta);
    z.k_list = {1, 2, 3};
    z.members.assign(3, DiscFunction(grid));
    auto D = extract(z, cfg.eps_stop, cfg.max_terms);
    auto L = energy_ledger(D);
    bool ok = D.terms.empty() && L.sum == 0.0 && L.ok && D.remainder_expl2.back() == 0.0;
    s.add("empty_decomposition", ok, L.slack);
  });
  return s;
}

Suite suite_seqgen(const RunConfig& cfg) {
  Suite s{"seqgen", {}};
  guarded(s, "deterministic", [&] {
    auto grid = make_grid(cfg.grid_nr, cfg.grid_ntheta);
    ProfileTerm t{make_moser_sub(1.0, std::exp(-0.1)), {2, 4, 6}, {0.1, 0.1, 0.1}};
    auto a = synthetic_superposition({t}, {1, 2, 3}, 0.01, cfg.seed, grid);
    auto b = synthetic_superposition({t}, {1, 2, 3}, 0.01, cfg.seed, grid);
    bool ok = true;
    for (std::size_t i = 0; i < a.size(); ++i)
      ok = ok && to_json(a.members[i]).dump() == to_json(b.members[i]).dump();
    auto c1 = counterexample_sequence(16), c2 = counterexample_sequence(16);
    for (std::size_t i = 0; i < c1.size(); ++i)
      ok = ok && to_json(c1.radial[i]).dump() == to_json(c2.radial[i]).dump();
    s.add("deterministic", ok, ok ? 0.0 : 1.0);
  });
  guarded(s, "counterexample_triple", [&] {
    auto seq = counterexample_sequence(32);
    double e0 = grad_norm(seq.radial[0]), h0 = hardy_terms(seq.radial[0]).weight;
    double ref = expl2_quasinorm(rearrange_radial(seq.radial.back())) * std::sqrt(32.0);
    double we = 0.0, wh = 0.0, wr = 1.0;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto& w = seq.radial[i];
      we = std::max(we, std::abs(grad_norm(w) - e0));
      wh = std::max(wh, std::abs(hardy_terms(w).weight - h0));
      double r = expl2_quasinorm(rearrange_radial(w)) * std::sqrt(double(seq.k_list[i])) / ref;
      wr = std::max({wr, r, 1.0 / r});
    }
    s.add("counterexample_energy", we <= 1e-10, we);
    s.add("counterexample_hardy_weight", wh <= 1e-10, wh);
    s.add("counterexample_expl2_rate", wr <= 1.5, wr);
  });
  guarded(s, "moser_J_increasing", [&] {
    auto grid = make_grid(cfg.grid_nr, cfg.grid_ntheta);
    std::vector<double> sk;
    std::vector<Point> z;
    for (int k = 1; k <= 10; ++k) sk.push_back(std::exp(-double(k))), z.push_back(0.1);
    auto seq = moser_sequence(sk, z, grid, MoserForm::translate, 0.8);
    double prev = -kInf, worst = kInf;
    for (const auto& u : seq.members) {
      double J = j_disc(u, cfg.quad);
      worst = std::min(worst, J - prev);
      prev = J;
    }
    s.add("moser_J_increasing", worst > 0.0, worst);
  });
  guarded(s, "vanishing_energy", [&] {
    auto grid = make_grid(std::max(cfg.grid_nr, 256), cfg.grid_ntheta);
    auto seq = vanishing_sequence({1, 2, 4, 8}, bump2d(grid));
    double e0 = seq.members[0].energy(), worst = 0.0, prev = kInf;
    bool dec = true;
    for (const auto& u : seq.members) {
      worst = std::max(worst, std::abs(u.energy() / e0 - 1.0));
      double q = expl2_quasinorm(rearrange_disc(u));
      dec = dec && q < prev;
      prev = q;
    }
    s.add("vanishing_energy", worst <= 0.02, worst);
    s.add("vanishing_expl2_decreasing", dec, prev);
  });
  return s;
}

void validate_input(const std::filesystem::path& p) {
  json j = read_json(p);
  if (j.contains("k_list")) load_sequence(p);
  else if (j.contains("breakpoints")) rearranged_from_json(j);
  else if (j.contains("n_r")) disc_from_json(j);
  else profile_from_json(j);
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  for (const auto& p : cfg.inputs) {
    try {
      validate_input(p);
    } catch (const LoadError& e) {
      throw LoadError(p.string() + ": " + e.what());
    }
  }
  std::vector<Suite> suites{suite_radial(cfg.seed), suite_functional(cfg.seed, cfg.quad),
                            suite_rearrangement(cfg.seed), suite_disc2d(cfg),
                            suite_profiles(cfg), suite_seqgen(cfg)};
  json rep = {{"version", defaults().at("version")}, {"suites", json::object()}};
  bool all = true;
  std::string first;
  for (const auto& s : suites) {
    json checks = json::array();
    for (const auto& c : s.checks) {
      checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      out << (c.passed ? "ok   " : "FAIL ") << s.name << '.' << c.name << "  " << c.detail << '\n';
      if (!c.passed && first.empty()) first = s.name + "." + c.name;
    }
    rep["suites"][s.name] = {{"passed", s.passed()}, {"checks", checks}};
    all = all && s.passed();
  }
  rep["passed"] = all;
  write_json(cfg.out / "verify_report.json", rep);
  if (!all) {
    err << "verify: first failing invariant: " << first << '\n';
    return 1;
  }
  return 0;
}

}  // namespace tmlab::cli
