#include "tmlab/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "tmlab/error.hpp"

namespace tmlab {

namespace fs = std::filesystem;

namespace {

template <class F>
auto guarded(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const LoadError&) {
    throw;
  } catch (const std::exception& e) {
    throw LoadError("invalid " + what + ": " + e.what());
  }
}

json point(Point z) { return json::array({z.real(), z.imag()}); }

Point point_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw LoadError("point must be [x, y]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

std::string member_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "member_%03zu.json", i + 1);
  return buf;
}

}  // namespace

json to_json(const RadialProfile& u) {
  return {{"n", u.dim()}, {"nodes", u.nodes()}, {"values", u.values()}};
}

RadialProfile profile_from_json(const json& j) {
  return guarded("profile", [&] {
    return RadialProfile(j.at("nodes").get<std::vector<double>>(),
                         j.at("values").get<std::vector<double>>(), j.value("n", 2));
  });
}

json to_json(const DiscFunction& u) {
  const auto& g = u.grid();
  json atoms = json::array();
  for (const auto& a : u.atoms()) atoms.push_back({{"center", point(a.center)}, {"profile", to_json(a.profile)}});
  return {{"n_r", g.n_r()},
          {"n_theta", g.n_theta()},
          {"spacing", g.spacing() == Spacing::geometric ? "geometric" : "uniform"},
          {"t_min", g.t_min()},
          {"t_max", g.t_max()},
          {"values", u.values()},
          {"atoms", atoms}};
}

DiscFunction disc_from_json(const json& j) {
  return guarded("disc function", [&] {
    std::string sp = j.value("spacing", "geometric");
    if (sp != "geometric" && sp != "uniform") throw LoadError("unknown spacing '" + sp + "'");
    auto grid = make_grid(j.at("n_r").get<int>(), j.at("n_theta").get<int>(),
                          sp == "geometric" ? Spacing::geometric : Spacing::uniform,
                          j.value("t_min", 1e-3), j.value("t_max", 48.0));
    DiscFunction u(grid, j.at("values").get<std::vector<double>>());
    if (j.contains("atoms"))
      for (const auto& a : j.at("atoms"))
        u.add_atom({point_from(a.at("center")), profile_from_json(a.at("profile"))});
    return u;
  });
}

json to_json(const RearrangedFunction& f) {
  json j{{"breakpoints", f.breakpoints()}, {"values", f.values()}, {"kind", to_string(f.kind())}};
  if (!f.offsets().empty()) {
    // null marks a piece that is linear in tau (infinite offset)
    json o = json::array();
    for (double c : f.offsets()) o.push_back(std::isinf(c) ? json(nullptr) : json(c));
    j["offsets"] = o;
  }
  return j;
}

RearrangedFunction rearranged_from_json(const json& j) {
  return guarded("rearranged function", [&] {
    auto b = j.at("breakpoints").get<std::vector<double>>();
    auto v = j.at("values").get<std::vector<double>>();
    auto kind = piece_kind_from_string(j.value("kind", "step"));
    if (!j.contains("offsets")) return RearrangedFunction(std::move(b), std::move(v), kind);
    if (kind != PieceKind::loglinear) throw InvalidArgument("offsets need kind loglinear");
    std::vector<double> c;
    for (const auto& x : j.at("offsets"))
      c.push_back(x.is_null() ? std::numeric_limits<double>::infinity() : x.get<double>());
    return RearrangedFunction(std::move(b), std::move(v), std::move(c));
  });
}

json to_json(const ProfileTerm& t) {
  json z = json::array();
  for (auto p : t.zeta) z.push_back(point(p));
  return {{"profile", to_json(t.w)}, {"j", t.j}, {"zeta", z}};
}

ProfileTerm term_from_json(const json& j) {
  return guarded("profile term", [&] {
    ProfileTerm t;
    t.w = profile_from_json(j.at("profile"));
    t.j = j.at("j").get<std::vector<int>>();
    for (const auto& p : j.at("zeta")) t.zeta.push_back(point_from(p));
    if (t.j.size() != t.zeta.size()) throw LoadError("term j and zeta lengths differ");
    return t;
  });
}

json read_json(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw LoadError("cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const std::exception& e) {
    throw LoadError(p.string() + ": " + e.what());
  }
}

void write_json(const fs::path& p, const json& j) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << j.dump(2) << '\n';
}

void save_sequence(const FunctionSequence& seq, const fs::path& dir, std::uint64_t seed) {
  fs::create_directories(dir);
  json files = json::array();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    std::string name = member_name(i);
    write_json(dir / name, seq.is_radial() ? to_json(seq.radial[i]) : to_json(seq.members[i]));
    files.push_back(name);
  }
  json truth = json::array();
  for (const auto& t : seq.truth) truth.push_back(to_json(t));
  json m = {{"generator", seq.generator},
            {"params", seq.params},
            {"seed", seed},
            {"k_list", seq.k_list},
            {"member_kind", seq.is_radial() ? "profile" : "disc"},
            {"members", files},
            {"truth", truth},
            {"noise_energy", seq.noise_energy}};
  write_json(dir / "manifest.json", m);
}

FunctionSequence load_sequence(const fs::path& manifest) {
  json m = read_json(manifest);
  return guarded("sequence manifest " + manifest.string(), [&] {
    FunctionSequence seq;
    seq.generator = m.value("generator", "");
    if (m.contains("params")) seq.params = m.at("params").get<std::map<std::string, double>>();
    seq.k_list = m.at("k_list").get<std::vector<int>>();
    std::string kind = m.value("member_kind", "disc");
    if (kind != "disc" && kind != "profile") throw LoadError("unknown member_kind '" + kind + "'");
    fs::path base = manifest.parent_path();
    for (const auto& f : m.at("members")) {
      fs::path p = base / f.get<std::string>();
      json mj = read_json(p);
      try {
        if (kind == "profile") seq.radial.push_back(profile_from_json(mj));
        else seq.members.push_back(disc_from_json(mj));
      } catch (const LoadError& e) {
        throw LoadError(p.string() + ": " + e.what());
      }
    }
    if (m.contains("truth"))
      for (const auto& t : m.at("truth")) seq.truth.push_back(term_from_json(t));
    seq.noise_energy = m.value("noise_energy", 0.0);
    seq.validate();
    return seq;
  });
}

json save_decomposition(const Decomposition& d, const fs::path& dir) {
  fs::create_directories(dir);
  json terms = json::array();
  auto energies = d.term_energy();
  for (std::size_t n = 0; n < d.terms.size(); ++n) {
    std::string name = "term_" + std::to_string(n + 1) + ".json";
    write_json(dir / name, to_json(d.terms[n].w));
    json z = json::array();
    for (auto p : d.terms[n].zeta) z.push_back(point(p));
    terms.push_back({{"profile", name}, {"j", d.terms[n].j}, {"zeta", z}, {"energy", energies[n]}});
  }
  auto L = energy_ledger(d);
  return {{"k_list", d.k_list},
          {"terms", terms},
          {"remainder_expl2", d.remainder_expl2},
          {"remainder_energy", d.remainder_energy},
          {"input_energy", d.input_energy},
          {"energy_ledger",
           {{"term_energy", L.term_energy},
            {"sum", L.sum},
            {"input_limsup", L.limsup},
            {"slack", L.slack},
            {"ok", L.ok}}}};
}

}  // namespace tmlab
