#pragma once

#include <filesystem>
#include <json.hpp>
#include <string>

#include "tmlab/profiles.hpp"
#include "tmlab/rearrangement.hpp"

namespace tmlab {

using json = nlohmann::json;

// All loaders validate and throw LoadError naming the offending field.

json to_json(const RadialProfile& u);
RadialProfile profile_from_json(const json& j);

// {n_r, n_theta, spacing, t_min, t_max, values (row-major by ring), atoms}
json to_json(const DiscFunction& u);
DiscFunction disc_from_json(const json& j);

json to_json(const RearrangedFunction& f);
RearrangedFunction rearranged_from_json(const json& j);

json to_json(const ProfileTerm& t);
ProfileTerm term_from_json(const json& j);

json read_json(const std::filesystem::path& p);
void write_json(const std::filesystem::path& p, const json& j);

// Manifest plus one file per member in dir; member file names are relative
// to the manifest.
void save_sequence(const FunctionSequence& seq, const std::filesystem::path& dir,
                   std::uint64_t seed);
FunctionSequence load_sequence(const std::filesystem::path& manifest);

// writes <dir>/term_<n>.json profile files and returns the decomposition record
json save_decomposition(const Decomposition& d, const std::filesystem::path& dir);

}  // namespace tmlab
