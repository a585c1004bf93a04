// Prints one PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "tmlab/dislocation.hpp"
#include "tmlab/functional.hpp"
#include "tmlab/profiles.hpp"
#include "tmlab/rearrangement.hpp"
#include "tmlab/seqgen.hpp"
#include "tmlab/weak_discontinuity.hpp"

using namespace tmlab;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome ac1() {
  double worst = 0.0;
  for (double s : {std::exp(-1.0), std::exp(-5.0), std::exp(-20.0), 1.0 - 1e-6})
    worst = std::max(worst, std::abs(grad_norm(make_moser(s)) - 1.0));
  return {worst <= 1e-10, fmt("max |grad_norm(m_s) - 1| = %.3g (tol 1e-10)", worst)};
}

Outcome ac2() {
  Rng rng(2);
  double node = 0.0, inv = 0.0;
  for (int n = 0; n < 50; ++n) {
    double s = std::exp(rng.uniform(-3.0, 3.0));
    double t = std::exp(-rng.uniform(0.01, 30.0));
    auto g = gauge_apply(make_moser(t), s);
    auto m = make_moser(std::pow(t, 1.0 / s));
    if (g.size() != m.size()) return {false, "node count differs"};
    for (std::size_t i = 0; i < g.size(); ++i) {
      node = std::max(node, std::abs(g.nodes()[i] - m.nodes()[i]) / (1.0 + m.nodes()[i]));
      node = std::max(node, std::abs(g.values()[i] - m.values()[i]));
    }
    auto w = random_profile(rng, rng.integer(2, 7), false);
    inv = std::max(inv, std::abs(grad_norm(gauge_apply(w, s)) - grad_norm(w)) / (1.0 + grad_norm(w)));
  }
  return {node <= 1e-12 && inv <= 1e-12,
          fmt("node mismatch %.3g, grad_norm drift %.3g (tol 1e-12)", node, inv)};
}

Outcome ac3() {
  Rng rng(3);
  double worst = 0.0, self = 0.0;
  for (int n = 0; n < 100; ++n) {
    auto u = random_profile(rng, rng.integer(2, 7), true);
    auto both = pairing_mstar_both(u, rng.uniform(0.05, 8.0));
    worst = std::max(worst, std::abs(both.closed - both.integral));
  }
  for (double t : {0.1, 1.0, 7.5, 40.0})
    self = std::max(self, std::abs(pairing_mstar(make_moser(std::exp(-t)), t) - 1.0));
  return {worst <= 1e-10 && self <= 1e-10,
          fmt("closed vs integral %.3g, <m_t*, m_t> - 1 = %.3g (tol 1e-10)", worst, self)};
}

Outcome ac4() {
  Rng rng(4);
  double worst = 0.0;
  for (int n = 0; n < 100; ++n) {
    auto u = random_profile(rng, rng.integer(2, 7), true);
    double a = j_direct(u), b = j_representation(u);
    worst = std::max(worst, std::abs(a - b) / a);
  }
  return {worst <= 1e-6, fmt("max relative gap %.3g (tol 1e-6)", worst)};
}

Outcome ac5() {
  const std::vector<double> L{1.0, 2.0, 5.0, 10.0, 25.0, 50.0};
  auto rows = moser_limit_experiment(L);
  bool inc = true;
  std::string js;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0 && !(rows[i].j_direct > rows[i - 1].j_direct)) inc = false;
    js += fmt("%s%g:%.6f", i ? " " : "", rows[i].L, rows[i].j_direct);
  }
  double g25 = std::abs(rows[4].j_direct - 2.0 * kPi), g50 = std::abs(rows[5].j_direct - 2.0 * kPi);
  bool near = g50 <= 0.05 * 2.0 * kPi, shrink = g50 < g25;
  return {inc && near && shrink,
          fmt("increasing=%s, |J(50) - 2pi|/2pi = %.4f (tol 0.05), gap 25->50 %.4f->%.4f; J: %s",
              inc ? "yes" : "no", g50 / (2.0 * kPi), g25, g50, js.c_str())};
}

DiscFunction bump(GridPtr g, Point c, double R) {
  std::vector<double> v(g->size(), 0.0);
  for (int i = 1; i <= g->n_r(); ++i)
    for (int k = 0; k < g->n_theta(); ++k) {
      Point z = g->node(i, k);
      double s = std::norm(z - c) / (R * R);
      if (s < 1.0) v[g->index(i, k)] = std::pow(1.0 - s, 3) * (1.0 + 0.5 * (z - c).real());
    }
  return DiscFunction(g, v);
}

Outcome ac6() {
  Rng rng(6);
  struct Case {
    int j;
    Point c;
    double R;
  };
  std::vector<Case> cases;
  for (int n = 0; n < 8; ++n) {
    int j = n == 0 ? 32 : rng.integer(1, 32);
    Point c(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3));
    cases.push_back({j, c, rng.uniform(0.3, 1.0 - std::abs(c))});
  }
  std::vector<double> dev;
  double lo = 1e9, hi = 0.0;
  for (int n : {128, 256, 512}) {
    auto g = make_grid(n, n);
    double d = 0.0;
    for (const auto& cs : cases) {
      auto u = bump(g, cs.c, cs.R);
      double r = std::sqrt(deflate(u, {cs.j, cs.c}).grid_energy() / u.grid_energy());
      d = std::max(d, std::abs(r - 1.0));
      if (n == 512) lo = std::min(lo, r), hi = std::max(hi, r);
    }
    dev.push_back(d);
  }
  bool ok = lo >= 0.98 && hi <= 1.02 && dev[1] < dev[0] && dev[2] < dev[1];
  return {ok, fmt("ratio range at n_r=512 [%.5f, %.5f]; max |ratio-1| 128/256/512: %.3g %.3g %.3g", lo,
                  hi, dev[0], dev[1], dev[2])};
}

Outcome ac7() {
  Rng rng(7);
  double hr = 1e9, pm = 1e9, eq = 0.0;
  for (int n = 0; n < 1000; ++n) {
    auto u = random_profile(rng, rng.integer(2, 8), n % 2 == 0);
    hr = std::min(hr, hardy_ratio(u));
    pm = std::min(pm, pointwise_bound_margin(u));
  }
  for (double s : {0.5, std::exp(-3.0), std::exp(-25.0)})
    eq = std::max(eq, std::abs(pointwise_bound_margin(make_moser(s))));
  bool ok = hr >= 0.25 - 1e-9 && pm >= -1e-12 && eq <= 1e-9;
  return {ok, fmt("min hardy ratio %.6f, min margin %.3g, equality defect at m_s %.3g", hr, pm, eq)};
}

Outcome ac8() {
  const double kInf = std::numeric_limits<double>::infinity();
  auto seq = counterexample_sequence(64);
  double e1 = grad_norm(seq.radial[0]), h1 = hardy_terms(seq.radial[0]).weight;
  auto f64 = rearrange_radial(seq.radial.back());
  double ref = expl2_quasinorm(f64) * 8.0;
  double de = 0.0, dh = 0.0, fr = 1.0, m1_min = kInf;
  bool half_below = true;
  double half1 = lz_quasinorm(rearrange_radial(seq.radial[0]), {kInf, 2.0, -0.5}).value;
  double m1_first = lz_quasinorm(rearrange_radial(seq.radial[0]), {kInf, 2.0, -1.0}).value;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& w = seq.radial[i];
    de = std::max(de, std::abs(grad_norm(w) - e1));
    dh = std::max(dh, std::abs(hardy_terms(w).weight - h1));
    auto f = rearrange_radial(w);
    double r = expl2_quasinorm(f) * std::sqrt(double(seq.k_list[i])) / ref;
    fr = std::max({fr, r, 1.0 / r});
    // +inf for every bounded nonzero function, so this holds only in the extended reals
    double half = lz_quasinorm(f, {kInf, 2.0, -0.5}).value;
    half_below = half_below && half >= 0.5 * half1;
    m1_min = std::min(m1_min, lz_quasinorm(f, {kInf, 2.0, -1.0}).value);
  }
  bool ok = de <= 1e-10 && dh <= 1e-10 && fr <= 1.5 && half_below;
  return {ok, fmt("energy drift %.3g, weight drift %.3g, expl2*sqrt(k) spread %.4f (tol 1.5), "
                  "(inf,2,-1/2) = %g for all k; info: (inf,2,-1) min/k=1 = %.4f",
                  de, dh, fr, half1, m1_min / m1_first)};
}

double term_error(const ProfileTerm& got, const RadialProfile& w, int j_last) {
  return grad_norm(gauge_apply(got.w, 1.0 / got.j.back()) - gauge_apply(w, 1.0 / j_last)) /
         grad_norm(w);
}

Outcome ac9() {
  auto g = make_grid(128, 128);
  auto w = make_moser_sub(1.0, std::exp(-0.1));
  std::string detail;
  bool ok = true;
  for (int n_terms : {1, 2}) {
    std::vector<int> ks;
    for (int k = n_terms == 1 ? 1 : 2; k <= 10; ++k) ks.push_back(k);
    std::vector<Point> centres = n_terms == 1 ? std::vector<Point>{Point(0.1, 0.0)}
                                              : std::vector<Point>{Point(0.2, 0.0), Point(-0.2, 0.0)};
    std::vector<ProfileTerm> terms;
    for (Point c : centres) {
      ProfileTerm t{w, {}, {}};
      for (int k : ks) t.j.push_back(2 * k), t.zeta.push_back(c);
      terms.push_back(t);
    }
    auto seq = synthetic_superposition(terms, ks, 0.01, 7, g);
    auto D = extract(seq, 0.05, 5);
    auto L = energy_ledger(D);
    double err = 0.0;
    bool matched = D.terms.size() == terms.size();
    if (matched) {
      for (Point c : centres) {
        const ProfileTerm* best = nullptr;
        for (const auto& t : D.terms)
          if (!best || std::abs(t.zeta.back() - c) < std::abs(best->zeta.back() - c)) best = &t;
        matched = matched && std::abs(best->zeta.back() - c) <= 0.05;
        err = std::max(err, term_error(*best, w, 20));
      }
      for (std::size_t a = 0; a < D.terms.size(); ++a)
        for (std::size_t b = a + 1; b < D.terms.size(); ++b)
          matched = matched && orthogonality_check(D.terms[a], D.terms[b]);
    }
    bool pass = matched && err <= 0.05 && L.slack >= 0.0 && L.slack <= 0.02;
    ok = ok && pass;
    detail += fmt("%s%d-term: found %zu, H1 error %.4f, slack %.5f", n_terms == 1 ? "" : "; ", n_terms,
                  D.terms.size(), err, L.slack);
  }
  return {ok, detail};
}

Outcome ac10() {
  auto g = make_grid(128, 128);
  std::vector<double> s;
  std::vector<Point> z;
  for (int k = 1; k <= 16; ++k) s.push_back(std::exp(-double(k))), z.push_back(Point(0.2 * (1.0 - 1.0 / k), 0.0));
  auto rep = weak_discontinuity_demo(s, z, g, 0.8);
  bool mono = true, jpi = true;
  for (std::size_t i = 0; i < rep.k.size(); ++i) {
    if (i > 0 && rep.max_pairing[i] > rep.max_pairing[i - 1]) mono = false;
    if (rep.k[i] >= 5 && rep.J[i] < kPi) jpi = false;
  }
  bool decay = rep.max_pairing.back() <= 0.5 * rep.max_pairing.front();
  double minJ = 1e9;
  for (std::size_t i = 4; i < rep.J.size(); ++i) minJ = std::min(minJ, rep.J[i]);

  // ||grad w|| = 0.9 concentrated along j_k = 2^k
  auto w = make_moser(std::exp(-1.0)).scaled(0.9);
  std::vector<double> Js;
  for (int k = 1; k <= 10; ++k)
    Js.push_back(j_disc(inflate(w, {1 << k, Point(0.0, 0.0)}, g)));
  bool sub = Js.back() < 0.05;
  for (std::size_t i = 1; i < Js.size(); ++i) sub = sub && Js[i] < Js[i - 1];
  return {mono && decay && jpi && sub,
          fmt("pairings %.4f -> %.4f (nonincreasing=%s), min J for k>=5 %.4f (>= pi), "
              "subcritical J(k=10) = %.5f (< 0.05)",
              rep.max_pairing.front(), rep.max_pairing.back(), mono ? "yes" : "no", minJ, Js.back())};
}

int cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "tmlab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(int(argv.size()), argv.data(), out, err);
}

std::string file_bytes(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::string s((std::istreambuf_iterator<char>(in)), {});
  // the CSV comment line carries a timestamp
  if (p.extension() == ".csv") s = s.substr(s.find('\n') + 1);
  return s;
}

Outcome ac11() {
  auto root = fs::temp_directory_path() / ("tmlab_acceptance_" + std::to_string(getpid()));
  fs::remove_all(root);
  std::vector<fs::path> dirs{root / "a", root / "b"};
  for (const auto& d : dirs) {
    for (const char* kind : {"moser", "counterexample", "vanishing", "superposition"})
      if (cli_run({"generate", "--out", d.string(), "--kind", kind}) != 0)
        return {false, std::string("generate ") + kind + " failed"};
    if (cli_run({"generate", "--out", (d / "two").string(), "--kind", "superposition", "--terms", "2"}) != 0)
      return {false, "generate two-term superposition failed"};
    if (cli_run({"decompose", "--out", (d / "dec").string(), "--input",
                 (d / "superposition" / "manifest.json").string()}) != 0)
      return {false, "decompose failed"};
  }
  std::size_t files = 0, differ = 0;
  for (const auto& e : fs::recursive_directory_iterator(dirs[0])) {
    if (!e.is_regular_file()) continue;
    auto rel = fs::relative(e.path(), dirs[0]);
    ++files;
    if (!fs::exists(dirs[1] / rel) || file_bytes(e.path()) != file_bytes(dirs[1] / rel)) ++differ;
  }
  fs::remove_all(root);
  return {files > 0 && differ == 0, fmt("%zu files compared, %zu differ", files, differ)};
}

}  // namespace

int main() {
  std::vector<std::pair<const char*, std::function<Outcome()>>> acs{
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},   {"AC5", ac5},  {"AC6", ac6},
      {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11}};
  int failed = 0;
  for (const auto& [name, fn] : acs) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%-4s %s  %s  [%.1fs]\n", name, o.pass ? "PASS" : "FAIL", o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria failed\n", failed, acs.size());
  return failed ? 1 : 0;
}
