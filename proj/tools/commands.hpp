#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "tmlab/functional.hpp"
#include "tmlab/json_io.hpp"

namespace tmlab::cli {

struct RunConfig {
  std::string command;
  std::vector<std::filesystem::path> inputs;
  std::filesystem::path out = "out";
  QuadratureSpec quad;
  int grid_nr = 128;
  int grid_ntheta = 128;
  double eps_stop = 0.05;
  int j_max = 64;
  int max_terms = 5;
  std::uint64_t seed = 1;

  std::vector<double> L_list;
  int k_max = 32;
  std::vector<LZIndex> indices;
  std::string kind = "superposition";
  int terms = 1;
  double noise_energy = 0.01;
};

json defaults();
RunConfig default_config();

// parse and dispatch; returns the process exit status
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_moser_limit(const RunConfig& cfg, std::ostream& out);
int cmd_counterexample(const RunConfig& cfg, std::ostream& out);
int cmd_norms(const RunConfig& cfg, std::ostream& out);
int cmd_generate(const RunConfig& cfg, std::ostream& out);
int cmd_decompose(const RunConfig& cfg, std::ostream& out);

// CSV with a timestamped comment line, header, and %.17g fields
void write_csv(const std::filesystem::path& p, const std::string& command,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

LZIndex parse_index(const std::string& s);  // "p,q,alpha"; p and q accept "inf"

}  // namespace tmlab::cli
