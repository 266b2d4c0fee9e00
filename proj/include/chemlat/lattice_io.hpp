#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chemlat/lattice.hpp"

namespace chemlat {

// One row per line, cells '0'/'1' with optional spaces or tabs between
// them. '#' starts a comment; blank lines are skipped. Throws InputError
// with the offending line number on bad characters, ConfigError on shape.
Relation parse_relation(std::string_view text);
Relation read_relation_file(const std::filesystem::path& path);
std::string format_relation(const Relation& rel);

struct BlockSpec {
  std::vector<unsigned> sizes;
  std::vector<unsigned> overlap;
  bool fill = false;
};

// "blocks=4,4;fill" or "blocks=3,3,2;overlap=3;fill". Throws ConfigError.
BlockSpec parse_block_spec(std::string_view spec);

// Hasse diagram, edges pointing upward, one rank per element size.
std::string to_dot(const Lattice& lat);

nlohmann::json laws_to_json(const Lattice& lat, const LawReport& report);

}  // namespace chemlat
