#pragma once

#include "quadline/curves.hpp"
#include "quadline/diagram.hpp"
#include "quadline/enumeration.hpp"
#include "quadline/lines.hpp"

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace quadline {

// The six traced bisector configurations, in slot order.
ConfigurationTuple trace_tuple(const LineSet& lines, const VertexSolver& solver);
ConfigurationTuple trace_tuple(const LineSet& lines);

// A line set known to realize one topology, with its published label.
struct ReferenceWitness {
    std::string label;
    std::array<long, 9> params;
    int vertices = 0;
    LineSet lines() const;
};
// Witnesses I..XV plus one for every topology found beyond them.
const std::vector<ReferenceWitness>& reference_witnesses();

struct AtlasEntry {
    int id = 0;  // position in (vertex count, canonical key) order
    std::string label;
    int vertices = 0;
    ConfigurationTuple tuple;
    std::string key;  // canonical_key(tuple)
    std::string gamma_nearest, gamma_farthest;  // canonical map codes
    std::optional<LineSet> witness;
    // Branch links are derived data and not part of the stored entry.
    bool operator==(const AtlasEntry& o) const {
        return id == o.id && label == o.label && vertices == o.vertices && tuple.slots == o.tuple.slots &&
               key == o.key && gamma_nearest == o.gamma_nearest && gamma_farthest == o.gamma_farthest &&
               witness == o.witness;
    }
};

struct Atlas {
    std::vector<AtlasEntry> entries;

    const AtlasEntry* by_key(std::string_view key) const;
    const AtlasEntry* by_gamma_farthest(std::string_view code) const;
    const AtlasEntry* by_id(int id) const;
    const AtlasEntry* by_label(std::string_view label) const;
    // Entries per vertex count 0, 2, 4, 6, 8.
    std::array<int, 5> histogram() const;
    bool operator==(const Atlas&) const = default;
};

// Assembles every tuple and labels it by tracing the reference witnesses.
// Tuples must come sorted as the search returns them. Throws
// std::runtime_error when a tuple does not assemble.
Atlas build_atlas(const std::vector<ConfigurationTuple>& tuples);

// Line-oriented text under a "quadline-atlas v1" header.
std::string serialize_atlas(const Atlas& atlas);
struct ParsedAtlas {
    std::optional<Atlas> value;
    ParseError error;
};
ParsedAtlas parse_atlas(std::string_view text);

inline constexpr const char* kAtlasFileName = "atlas.txt";
// QUADLINE_ATLAS_DIR when set, otherwise the data directory of the build.
std::filesystem::path default_atlas_dir();
// Throws std::runtime_error when the file is missing or malformed.
Atlas load_atlas(const std::filesystem::path& dir = default_atlas_dir());
void save_atlas(const Atlas& atlas, const std::filesystem::path& dir);

std::string histogram_string(const std::array<int, 5>& h);

}  // namespace quadline
