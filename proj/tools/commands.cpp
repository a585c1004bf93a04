#include "commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "defaults.hpp"
#include "tmlab/error.hpp"
#include "tmlab/rearrangement.hpp"
#include "tmlab/seqgen.hpp"

namespace tmlab::cli {

namespace fs = std::filesystem;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double num(const json& j) {
  if (j.is_string()) {
    auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    throw InvalidArgument("expected a number or \"inf\", got '" + s + "'");
  }
  return j.get<double>();
}

std::string timestamp() {
  std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

GridPtr config_grid(const RunConfig& cfg) { return make_grid(cfg.grid_nr, cfg.grid_ntheta); }

json value_json(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

json defaults() { return json::parse(kDefaultsJson); }

RunConfig default_config() {
  json d = defaults();
  RunConfig c;
  c.seed = d.at("seed").get<std::uint64_t>();
  c.grid_nr = d.at("grid").at("n_r");
  c.grid_ntheta = d.at("grid").at("n_theta");
  const auto& q = d.at("quadrature");
  c.quad.rel_tol = q.at("rel_tol");
  c.quad.abs_tol = q.at("abs_tol");
  c.quad.max_subdivisions = q.at("max_subdivisions");
  c.quad.exponent_cap = q.at("exponent_cap");
  c.eps_stop = d.at("eps_stop");
  c.j_max = d.at("j_max");
  c.max_terms = d.at("max_terms");
  c.L_list = d.at("moser_limit").at("L").get<std::vector<double>>();
  c.k_max = d.at("counterexample").at("k_max");
  for (const auto& t : d.at("norms").at("indices"))
    c.indices.push_back({num(t.at(0)), num(t.at(1)), num(t.at(2))});
  c.terms = d.at("generate").at("terms");
  c.noise_energy = d.at("generate").at("noise_energy");
  return c;
}

LZIndex parse_index(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "inf") v.push_back(kInf);
    else {
      std::size_t pos = 0;
      double x = std::stod(tok, &pos);
      if (pos != tok.size()) throw InvalidArgument("bad number '" + tok + "' in index");
      v.push_back(x);
    }
  }
  if (v.size() != 3) throw InvalidArgument("index must be p,q,alpha: '" + s + "'");
  return {v[0], v[1], v[2]};
}

void write_csv(const fs::path& p, const std::string& command,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << "# tmlab " << command << " " << timestamp() << '\n';
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  char buf[64];
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", r[i]);
      out << (i ? "," : "") << buf;
    }
    out << '\n';
  }
}

int cmd_moser_limit(const RunConfig& cfg, std::ostream& out) {
  auto rows = moser_limit_experiment(cfg.L_list, cfg.quad);
  std::vector<std::vector<double>> csv;
  json recs = json::array();
  for (const auto& r : rows) {
    csv.push_back({r.L, r.s, r.j_direct, r.j_repr, r.plateau, r.ramp});
    recs.push_back({{"L", r.L}, {"s", r.s}, {"J_direct", r.j_direct}, {"J_repr", r.j_repr},
                    {"plateau", r.plateau}, {"ramp", r.ramp}});
  }
  write_csv(cfg.out / "moser_limit.csv", "moser-limit", {"L", "s", "J_direct", "J_repr", "plateau", "ramp"}, csv);
  write_json(cfg.out / "moser_limit.json", recs);
  out << "wrote " << rows.size() << " rows to " << (cfg.out / "moser_limit.csv").string() << '\n';
  return 0;
}

int cmd_counterexample(const RunConfig& cfg, std::ostream& out) {
  auto seq = counterexample_sequence(cfg.k_max);
  std::vector<std::vector<double>> csv(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& w = seq.radial[i];
    auto f = rearrange_radial(w);
    double e = expl2_quasinorm(f);
    auto half = lz_quasinorm(f, {kInf, 2.0, -0.5});
    auto one = lz_quasinorm(f, {kInf, 2.0, -1.0});
    double k = seq.k_list[i];
    csv[i] = {k, grad_norm(w), hardy_terms(w).weight, e, e * std::sqrt(k), half.value,
              one.value};
  }
  json recs = json::array();
  for (const auto& r : csv)
    recs.push_back({{"k", r[0]}, {"grad_norm", r[1]}, {"hardy_weight", r[2]}, {"expl2", r[3]},
                    {"expl2_sqrt_k", r[4]}, {"lz_inf_2_m0.5", value_json(r[5])},
                    {"lz_inf_2_m1", value_json(r[6])}});
  write_csv(cfg.out / "counterexample.csv", "counterexample",
            {"k", "grad_norm", "hardy_weight", "expl2", "expl2_sqrt_k", "lz_inf_2_m0.5", "lz_inf_2_m1"},
            csv);
  write_json(cfg.out / "counterexample.json", recs);
  out << "wrote " << csv.size() << " rows to " << (cfg.out / "counterexample.csv").string() << '\n';
  return 0;
}

int cmd_norms(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() != 1) throw InvalidArgument("norms needs exactly one --input file");
  json j = read_json(cfg.inputs[0]);
  RearrangedFunction f;
  if (j.contains("breakpoints")) f = rearranged_from_json(j);
  else if (j.contains("n_r")) f = rearrange_disc(disc_from_json(j));
  else f = rearrange_radial(profile_from_json(j));
  std::vector<std::vector<double>> csv;
  json recs = json::array();
  for (const auto& idx : cfg.indices) {
    auto v = lz_quasinorm(f, idx);
    csv.push_back({idx.p, idx.q, idx.alpha, v.value, v.divergent ? 1.0 : 0.0});
    recs.push_back({{"p", value_json(idx.p)}, {"q", value_json(idx.q)}, {"alpha", idx.alpha},
                    {"value", value_json(v.value)}, {"divergent", v.divergent}});
  }
  write_csv(cfg.out / "norms.csv", "norms", {"p", "q", "alpha", "value", "divergent"}, csv);
  write_json(cfg.out / "norms.json", recs);
  out << "wrote " << csv.size() << " rows to " << (cfg.out / "norms.csv").string() << '\n';
  return 0;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out) {
  const int kmax = cfg.k_max;
  if (kmax < 1) throw InvalidArgument("--k-max must be >= 1");
  FunctionSequence seq;
  if (cfg.kind == "moser") {
    std::vector<double> s;
    std::vector<Point> z;
    for (int k = 1; k <= kmax; ++k) {
      s.push_back(std::exp(-double(k)));
      z.push_back({0.2 * (1.0 - 1.0 / k), 0.0});
    }
    seq = moser_sequence(s, z, config_grid(cfg), MoserForm::translate, 0.8);
  } else if (cfg.kind == "counterexample") {
    seq = counterexample_sequence(kmax);
  } else if (cfg.kind == "vanishing") {
    std::vector<int> ks;
    for (int k = 1; k <= kmax; ++k) ks.push_back(k);
    seq = vanishing_sequence(ks, bump2d(config_grid(cfg)));
  } else if (cfg.kind == "superposition") {
    if (cfg.terms != 1 && cfg.terms != 2) throw InvalidArgument("--terms must be 1 or 2");
    auto w = make_moser_sub(1.0, std::exp(-0.1));
    std::vector<int> ks;
    for (int k = cfg.terms == 1 ? 1 : 2; k <= kmax; ++k) ks.push_back(k);
    std::vector<ProfileTerm> terms(std::size_t(cfg.terms));
    for (std::size_t n = 0; n < terms.size(); ++n) {
      terms[n].w = w;
      Point z = cfg.terms == 1 ? Point(0.1, 0.0) : Point(n ? -0.2 : 0.2, 0.0);
      for (int k : ks) terms[n].j.push_back(2 * k), terms[n].zeta.push_back(z);
    }
    seq = synthetic_superposition(terms, ks, cfg.noise_energy, cfg.seed, config_grid(cfg));
  } else {
    throw InvalidArgument("unknown generator kind '" + cfg.kind + "'");
  }
  fs::path dir = cfg.out / cfg.kind;
  save_sequence(seq, dir, cfg.seed);
  out << "wrote " << seq.size() << " members to " << (dir / "manifest.json").string() << '\n';
  return 0;
}

int cmd_decompose(const RunConfig& cfg, std::ostream& out) {
  if (cfg.inputs.size() != 1) throw InvalidArgument("decompose needs exactly one --input manifest");
  auto seq = load_sequence(cfg.inputs[0]);
  ExtractOptions opt;
  opt.detect.j_max = cfg.j_max;
  auto D = extract(seq, cfg.eps_stop, cfg.max_terms, opt);
  json rec = save_decomposition(D, cfg.out);
  rec["eps_stop"] = cfg.eps_stop;
  rec["manifest"] = cfg.inputs[0].filename().string();
  write_json(cfg.out / "decomposition.json", rec);
  std::vector<std::vector<double>> csv;
  for (std::size_t i = 0; i < D.k_list.size(); ++i)
    csv.push_back({double(D.k_list[i]), D.input_energy[i], D.remainder_energy[i],
                   D.remainder_expl2[i]});
  write_csv(cfg.out / "decomposition.csv", "decompose",
            {"k", "input_energy", "remainder_energy", "remainder_expl2"}, csv);
  out << "extracted " << D.terms.size() << " term(s); wrote "
      << (cfg.out / "decomposition.json").string() << '\n';
  return 0;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg = default_config();
  CLI::App app{"tmlab: Trudinger-Moser concentration laboratory"};
  app.require_subcommand(1);
  app.set_version_flag("--version", defaults().at("version").get<std::string>());

  std::vector<std::string> index_strs;
  auto common = [&](CLI::App* s) {
    s->add_option("--out", cfg.out, "output directory");
    s->add_option("--seed", cfg.seed, "random seed");
    s->add_option("--grid-nr", cfg.grid_nr, "radial cells")->check(CLI::Range(16, 1 << 16));
    s->add_option("--grid-ntheta", cfg.grid_ntheta, "angular cells")->check(CLI::Range(32, 1 << 16));
    s->add_option("--rel-tol", cfg.quad.rel_tol, "quadrature relative tolerance")
        ->check(CLI::PositiveNumber);
    s->add_option("--eps-stop", cfg.eps_stop, "extraction stop threshold")->check(CLI::PositiveNumber);
    s->add_option("--j-max", cfg.j_max, "largest detected scale")->check(CLI::Range(1, 4096));
  };
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  common(verify);
  verify->add_option("--input", cfg.inputs, "files to validate (profile, disc, rearranged, manifest)");
  auto* ml = app.add_subcommand("moser-limit", "J(m_s) along s = exp(-L)");
  common(ml);
  ml->add_option("--L", cfg.L_list, "increasing L values")->delimiter(',');
  auto* ce = app.add_subcommand("counterexample", "energy, Hardy weight and norms of w_k");
  common(ce);
  ce->add_option("--k-max", cfg.k_max, "largest k");
  auto* nm = app.add_subcommand("norms", "Lorentz-Zygmund quasinorms of a stored function");
  common(nm);
  nm->add_option("--input", cfg.inputs, "profile, disc or rearranged function file")->required();
  nm->add_option("--index", index_strs, "p,q,alpha (repeatable; inf allowed)");
  auto* gen = app.add_subcommand("generate", "write a sequence manifest");
  common(gen);
  gen->add_option("--kind", cfg.kind, "moser | counterexample | vanishing | superposition");
  int gen_k_max = defaults().at("generate").at("k_max");
  gen->add_option("--k-max", gen_k_max, "largest k");
  gen->add_option("--terms", cfg.terms, "planted terms for superposition (1 or 2)");
  gen->add_option("--noise-energy", cfg.noise_energy, "noise energy for superposition");
  auto* dec = app.add_subcommand("decompose", "extract a profile decomposition");
  common(dec);
  dec->add_option("--input", cfg.inputs, "sequence manifest")->required();
  dec->add_option("--max-terms", cfg.max_terms, "term limit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  try {
    if (!index_strs.empty()) {
      cfg.indices.clear();
      for (const auto& s : index_strs) cfg.indices.push_back(parse_index(s));
    }
    if (gen->parsed()) cfg.k_max = gen_k_max;
    if (verify->parsed()) return cmd_verify(cfg, out, err);
    if (ml->parsed()) return cmd_moser_limit(cfg, out);
    if (ce->parsed()) return cmd_counterexample(cfg, out);
    if (nm->parsed()) return cmd_norms(cfg, out);
    if (gen->parsed()) return cmd_generate(cfg, out);
    if (dec->parsed()) return cmd_decompose(cfg, out);
  } catch (const LoadError& e) {
    err << "load error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << app.get_subcommands().front()->get_name() << ": " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace tmlab::cli
