#pragma once

#include "quadline/atlas.hpp"
#include "quadline/infinity.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace quadline {

// A pipeline stage failed on an input that passed the general-position check.
class ClassificationError : public std::runtime_error {
public:
    ClassificationError(std::string stage, const std::string& what)
        : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

// Bit s is set when, far out along u_i x u_j for slot s = (i, j), line i is
// farther than line j. Decided exactly from squared distances at two radii.
// Throws DegenerateInput when the offset term vanishes.
unsigned anomaly_poles(const LineSet& lines);

// The farthest-line map on the sphere of directions.
struct SphericalMap {
    GammaMap map;  // faces labeled by the farthest line
    std::vector<Direction> vertex_dirs;
    std::vector<std::array<int, 2>> edge_lines;  // the two lines tied along each edge
    std::vector<std::vector<Direction>> edge_paths;  // sampled from first to second vertex
    std::vector<int> face_cell;  // 0..2 among the faces of the same line
    std::array<Direction, 4> line_dirs{};
    unsigned poles = 0;

    // Face containing direction v, or -1 when v is too close to an edge.
    int locate(const Direction& v) const;
};
SphericalMap gaussian_map_fvd(const LineSet& lines);

// The line farthest from R * v, by exact squared distances at R = 1e6.
int farthest_line_at(const LineSet& lines, const Direction& v);

struct LocatedTwist {
    std::array<int, 2> vertices{};  // global vertex ids of the traced input
    std::vector<int> slots;  // bisectors on which the pair is a full twist
    std::array<std::array<std::array<double, 2>, 3>, 2> boxes{};  // x, y, z ranges per vertex
    bool operator==(const LocatedTwist&) const = default;
};

// Repeatedly removes vertex pairs that form a full twist on at least two
// bisectors. Throws ClassificationError when a removal leaves some
// bisector invalid.
struct TwistReduction {
    ConfigurationTuple base;
    std::vector<LocatedTwist> twists;
};
TwistReduction reduce_full_twists(const ConfigurationTuple& traced);

// Both routes must agree: the farthest map up to relabeling and reflection,
// and the traced tuple with full twists removed.
int match_atlas(const Atlas& atlas, const SphericalMap& map, const std::array<Configuration, 6>& configs);

struct TopologyLabel {
    int base_id = -1;
    std::string base_label;
    int base_vertices = 0;
    std::vector<LocatedTwist> full_twists;
    int total_vertices = 0;
    bool operator==(const TopologyLabel&) const = default;
};
// Requires the vertex count to exceed the base count by twice the number of
// located twists.
TopologyLabel locate_full_twists(const LineSet& lines, const Atlas& atlas, int base_id);

struct ClassificationReport {
    GeneralPositionReport general_position;
    int vertex_count = 0;
    std::array<Configuration, 6> configurations;
    TopologyLabel label;
    FeatureCounts nearest, farthest;
    std::array<int, 4> farthest_cells_per_line{};
    int bounded_faces = 0;
    GammaMap gamma_nearest, gamma_farthest;
};
// Throws DegenerateInput for inputs in special position and
// ClassificationError for any later stage.
ClassificationReport classify(const LineSet& lines, const Atlas& atlas);

std::string format_report(const ClassificationReport& r);
struct ParsedReport {
    std::optional<ClassificationReport> value;
    ParseError error;
};
ParsedReport parse_report(std::string_view text);

// Rotation-system text for a map: one line per face listing its darts.
std::string format_gamma(const GammaMap& m);

}  // namespace quadline
