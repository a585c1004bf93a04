#include <cmath>

#include "doctest.h"
#include "tmlab/error.hpp"
#include "tmlab/json_io.hpp"
#include "tmlab/rearrangement.hpp"
#include "tmlab/seqgen.hpp"
#include "tmlab/weak_discontinuity.hpp"

using namespace tmlab;

TEST_CASE("random profiles are reproducible") {
  Rng a(5), b(5), c(6);
  for (int n = 0; n < 20; ++n) {
    auto u = random_profile(a, 6), v = random_profile(b, 6), w = random_profile(c, 6);
    CHECK(u.nodes() == v.nodes());
    CHECK(u.values() == v.values());
    CHECK(u.values() != w.values());
    CHECK(grad_norm(u) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("generators are deterministic") {
  auto g = make_grid(64, 64);
  ProfileTerm t{make_moser_sub(1.0, std::exp(-0.1)), {2, 4, 6}, {0.1, 0.1, 0.1}};
  auto a = synthetic_superposition({t}, {1, 2, 3}, 0.01, 3, g);
  auto b = synthetic_superposition({t}, {1, 2, 3}, 0.01, 3, g);
  auto c = synthetic_superposition({t}, {1, 2, 3}, 0.01, 4, g);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(to_json(a.members[i]).dump() == to_json(b.members[i]).dump());
    CHECK(to_json(a.members[i]).dump() != to_json(c.members[i]).dump());
  }
  auto c1 = counterexample_sequence(12), c2 = counterexample_sequence(12);
  for (std::size_t i = 0; i < c1.size(); ++i)
    CHECK(to_json(c1.radial[i]).dump() == to_json(c2.radial[i]).dump());
}

TEST_CASE("moser sequence") {
  auto g = make_grid(64, 64);
  auto one = moser_sequence({std::exp(-1.0)}, {Point(0.0, 0.0)}, g);
  auto ref = inflate(make_moser(std::exp(-1.0)), {1, Point(0.0, 0.0)}, g);
  REQUIRE(one.members.size() == 1);
  REQUIRE(one.members[0].atoms().size() == 1);
  CHECK(one.members[0].atoms()[0].profile.nodes() == ref.atoms()[0].profile.nodes());
  CHECK(one.members[0].atoms()[0].profile.values() == ref.atoms()[0].profile.values());

  std::vector<double> s;
  std::vector<Point> z;
  for (int k = 1; k <= 8; ++k) s.push_back(std::exp(-double(k))), z.push_back(Point(0.2 * (1.0 - 1.0 / k), 0.0));
  for (auto form : {MoserForm::translate, MoserForm::scale}) {
    auto seq = moser_sequence(s, z, g, form, 0.8);
    for (const auto& u : seq.members) CHECK(u.energy() == doctest::Approx(1.0).epsilon(1e-10));
  }
  auto sc = moser_sequence(s, z, g, MoserForm::scale, 0.8);
  REQUIRE(sc.truth.size() == 1);
  CHECK(sc.truth[0].j == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8});
  CHECK(sc.truth[0].zeta == z);
  CHECK(moser_sequence(s, z, g, MoserForm::translate, 0.8).truth.empty());
  CHECK_THROWS_AS(moser_sequence({0.1, 0.2}, {0.0, 0.0}, g), InvalidArgument);
  CHECK_THROWS_AS(moser_sequence({0.1}, {0.0, 0.0}, g), InvalidArgument);
  CHECK_THROWS_AS(moser_sequence({0.1}, {Point(0.5, 0.0)}, g, MoserForm::translate, 0.8), SupportOverflow);
}

TEST_CASE("moser sequence J increasing along the schedule") {
  // J peaks near s = e^{-5} and decreases afterwards, so this property fails
  // on the computed values
  auto g = make_grid(64, 64);
  std::vector<double> s;
  std::vector<Point> z;
  for (int k = 1; k <= 10; ++k) s.push_back(std::exp(-double(k))), z.push_back(Point(0.1, 0.0));
  auto seq = moser_sequence(s, z, g, MoserForm::translate, 0.8);
  for (std::size_t i = 1; i < seq.size(); ++i) CHECK(j_disc(seq.members[i]) > j_disc(seq.members[i - 1]));
}

TEST_CASE("counterexample sequence") {
  auto seq = counterexample_sequence(64);
  REQUIRE(seq.size() == 64);
  double e1 = grad_norm(seq.radial[0]);
  double h1 = hardy_terms(seq.radial[0]).weight;
  std::vector<double> C;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& w = seq.radial[i];
    CHECK(grad_norm(w) == doctest::Approx(e1).epsilon(1e-12));
    CHECK(hardy_terms(w).weight == doctest::Approx(h1).epsilon(1e-12));
    int k = seq.k_list[i];
    if (k == 4 || k == 8 || k == 16 || k == 32 || k == 64)
      C.push_back(expl2_quasinorm(rearrange_radial(w)) * std::sqrt(double(k)));
  }
  // w_1 is the bump at scale 2
  CHECK(e1 == doctest::Approx(grad_norm(gauge_apply(default_bump(), 2.0))).epsilon(1e-12));
  for (double c : C) {
    CHECK(c <= 1.5 * C.front());
    CHECK(c >= C.front() / 1.5);
  }
  // supports are pairwise disjoint: the last member has k separate tents
  const auto& w = seq.radial[7];
  int bumps = 0;
  for (std::size_t i = 1; i + 1 < w.size(); ++i)
    if (w.values()[i] > w.values()[i - 1] && w.values()[i] > w.values()[i + 1]) ++bumps;
  CHECK(bumps == 8);
  CHECK_THROWS_AS(counterexample_sequence(0), InvalidArgument);
  CHECK_THROWS_AS(counterexample_sequence(4, RadialProfile({0.0, 1.0, 2.5, 3.0}, {0.0, 0.0, 1.0, 0.0})),
                  InvalidArgument);
}

TEST_CASE("vanishing sequence") {
  auto g = make_grid(256, 128);
  auto b = bump2d(g);
  auto seq = vanishing_sequence({1, 2, 4, 8}, b);
  for (std::size_t n = 0; n < b.values().size(); ++n)
    CHECK(seq.members[0].values()[n] == doctest::Approx(b.values()[n]).epsilon(1e-12));
  double e0 = seq.members[0].energy(), prev = 1e9;
  for (const auto& u : seq.members) {
    CHECK(std::abs(u.energy() / e0 - 1.0) <= 0.02);
    double q = expl2_quasinorm(rearrange_disc(u));
    CHECK(q < prev);
    prev = q;
  }
}

TEST_CASE("synthetic superposition") {
  auto g = make_grid(128, 128);
  auto noise = angular_noise(g, 12, 0.3, 0.01);
  CHECK(noise.grid_energy() == doctest::Approx(0.01).epsilon(1e-12));
  CHECK(angular_noise(g, 12, 0.3, 0.0).values() == DiscFunction(g).values());

  ProfileTerm a{make_moser_sub(1.0, std::exp(-0.1)), {2, 4, 6}, std::vector<Point>(3, Point(0.1, 0.0))};
  ProfileTerm b = a;
  CHECK_THROWS_AS(synthetic_superposition({a, b}, {1, 2, 3}, 0.0, 1, g), InvalidArgument);
  CHECK_THROWS_AS(synthetic_superposition({a}, {1, 2}, 0.0, 1, g), InvalidArgument);
  CHECK_THROWS_AS(synthetic_superposition({a}, {1, 2, 3}, -1.0, 1, g), InvalidArgument);

  auto seq = synthetic_superposition({a}, {1, 2, 3}, 0.01, 1, g);
  REQUIRE(seq.truth.size() == 1);
  CHECK(seq.truth[0].j == a.j);
  for (const auto& u : seq.members) CHECK(u.energy() == doctest::Approx(1.01).epsilon(2e-3));

  // noise alone: nothing to extract above twice its quasinorm
  auto quiet = synthetic_superposition({}, {1, 2, 3, 4}, 0.01, 2, g);
  double q = 0.0;
  for (const auto& u : quiet.members) q = std::max(q, expl2_quasinorm(rearrange_disc(u)));
  CHECK(q > 0.0);
  CHECK(extract(quiet, 2.0 * q, 5).terms.empty());
}
