#pragma once

#include "quadline/diagram.hpp"

#include <array>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace quadline {

using Direction = std::array<double, 3>;

// The six bisector circles at infinity for four line directions. Bit s of
// `poles` flips which pole of slot s the right side runs towards; that bit
// depends on the line offsets, not on the directions. Ends are numbered by
// trisector and sign code as in identify_ends. nullopt when the directions
// are too close to degenerate for double precision.
std::optional<std::array<CircleData, 6>> circles_at_infinity(const std::array<Direction, 4>& dirs, unsigned poles);

// The same circles with their geometry: the unit direction of every end and
// the arc after it sampled as a polyline from that end to the next one.
struct CircleGeometry {
    std::array<Direction, 16> end_dir{};
    std::array<std::vector<Direction>, 16> arc_path;
};
struct PictureAtInfinity {
    std::array<CircleData, 6> circles;
    std::array<CircleGeometry, 6> geometry;
};
std::optional<PictureAtInfinity> picture_at_infinity(const std::array<Direction, 4>& dirs, unsigned poles);

// Pairs (nearest, farthest) of canonical map codes realized by some choice
// of directions and pole bits. Computed once per process by deterministic
// sampling until no new pair has appeared for a long stretch.
const std::set<std::pair<std::string, std::string>>& realizable_infinity_types();

}  // namespace quadline
