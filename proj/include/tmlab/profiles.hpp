#pragma once

// Constructive profile decomposition: detect a concentration, recover its
// radial profile from deflations, subtract the synthesized term, repeat.

#include <map>
#include <string>
#include <vector>

#include "tmlab/detect.hpp"
#include "tmlab/dislocation.hpp"

namespace tmlab {

struct ProfileTerm {
  RadialProfile w;
  std::vector<int> j;       // per k; 0 where the term was not found
  std::vector<Point> zeta;  // per k
};

// Either disc members or radial members (about the origin), not both.
struct FunctionSequence {
  std::string generator;
  std::map<std::string, double> params;
  std::vector<int> k_list;
  std::vector<DiscFunction> members;
  std::vector<RadialProfile> radial;
  // planted data, when the generator knows it
  std::vector<ProfileTerm> truth;
  double noise_energy = 0.0;

  bool is_radial() const { return !radial.empty(); }
  std::size_t size() const { return k_list.size(); }
  // disc member i; radial members become an atom at the origin of grid
  DiscFunction disc_member(std::size_t i, GridPtr grid = nullptr) const;
  // throws InvalidArgument; energies must stay below energy_bound
  void validate(double energy_bound = 1e3) const;
};

struct Decomposition {
  std::vector<int> k_list;
  std::vector<ProfileTerm> terms;
  std::vector<double> remainder_expl2;   // per k
  std::vector<double> remainder_energy;  // per k
  std::vector<double> input_energy;      // per k
  double input_energy_limsup = 0.0;      // max over the tail (last half of k)
  std::vector<DiscFunction> remainder;   // not serialized

  std::vector<double> term_energy() const;
  double energy() const;
};

struct ExtractOptions {
  int k_tail = 3;              // deflations averaged into a profile
  double detect_factor = 0.5;  // detection threshold relative to eps_stop
  double track_radius = 0.2;   // candidates farther from the anchor centre are ignored
  int refit_sweeps = 1;        // backfitting passes once all terms are found
  DetectOptions detect;
};

Decomposition extract(const FunctionSequence& seq, double eps_stop, int max_terms,
                      const ExtractOptions& opt = {});

// last half of the k indices (at least two when available)
std::size_t tail_start(std::size_t n);

bool orthogonality_check(const ProfileTerm& a, const ProfileTerm& b, double delta = 0.1,
                         double Delta = 0.69314718055994531);

struct EnergyLedger {
  std::vector<double> term_energy;
  double sum = 0.0;
  double limsup = 0.0;
  double slack = 0.0;
  bool ok = true;  // slack >= -1e-6
};
EnergyLedger energy_ledger(const Decomposition& d);

struct Track {
  std::string origin;  // identity, random, detector
  std::vector<int> j;
  std::vector<Point> zeta;
};

struct DWeakReport {
  std::vector<int> k;
  std::vector<double> max_pairing;  // per k, over all tracks and probes
  Track witness;                    // track with the largest tail pairing
  double witness_pairing = 0.0;     // mean over the tail of its max |pairing|
  std::size_t tracks_tested = 0;
};

struct DWeakOptions {
  int random_tracks = 32;
  int j_max = 64;
  double detect_eps = 1e-3;
  unsigned long long seed = 1;
  GridPtr grid;  // used for radial sequences; defaults to 128 x 128
};

DWeakReport dweak_test(const FunctionSequence& seq, int probe_count,
                       const DWeakOptions& opt = {});

}  // namespace tmlab
