#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace quadline {

enum class FaceLabel : unsigned char { NVD, FVD, VD2 };
std::string to_string(FaceLabel l);

// An end of a branch on the bounding circle, packed as color*8 + branch*2 + end.
struct EndToken {
    int color = 0;
    int branch = 0;
    int end = 0;
    std::uint8_t pack() const { return static_cast<std::uint8_t>(color * 8 + branch * 2 + end); }
    static EndToken unpack(std::uint8_t t) { return {t / 8, (t / 2) % 4, t % 2}; }
    bool operator==(const EndToken&) const = default;
};

// A segment of a branch between consecutive nodes (end, vertices, end), with
// the face on its left (relative to the branch direction) or its right.
struct EdgeRef {
    int color = 0;
    int branch = 0;
    int segment = 0;
    bool left = true;
    bool operator==(const EdgeRef&) const = default;
};

struct Twist {
    std::array<int, 2> vertices{};
    enum class Kind { Full, Partial } kind = Kind::Partial;
    // The red and blue branch through both vertices.
    std::array<int, 2> branches{};
    int face = -1;
};

// Overlay of two trisector-like curves (color 0 red, color 1 blue) in a disk.
// The 16 ends sit on the circle counterclockwise, four per side in the order
// right, top, left, bottom; each side holds two ends of each color. Every
// branch lists the vertices it crosses from end 0 to end 1.
class Configuration {
public:
    std::array<std::uint8_t, 16> order{};
    std::array<std::array<std::vector<int>, 4>, 2> sequences;
    // +1 when (red forward, blue forward, red backward, blue backward) is the
    // counterclockwise order at the vertex, -1 otherwise.
    std::vector<int> rotation;

    int vertex_count() const { return static_cast<int>(rotation.size()); }
    int position_of(EndToken t) const;
    // Branch of the given color through vertex v.
    int branch_at(int color, int v) const;

    bool operator==(const Configuration&) const = default;
};

// Faces, labels and adjacency of a configuration.
struct Overlay {
    struct Face {
        std::vector<int> half_edges;  // boundary, face on the left
        FaceLabel label = FaceLabel::VD2;
        std::array<bool, 2> nvd{};  // per-curve label (true = NVD side)
        bool bounded = true;
    };
    std::vector<Face> faces;  // interior faces only
    // Face index on each side of each branch segment: [color][branch][segment] = {left, right}.
    std::array<std::array<std::vector<std::array<int, 2>>, 4>, 2> segment_faces;
    // Faces adjacent to the circle, by arc index p (between order[p] and order[p+1]).
    std::array<int, 16> arc_face{};
};

// nullopt when the rotation data does not describe a planar overlay.
std::optional<Overlay> build_overlay(const Configuration& c);
bool is_valid(const Configuration& c);

// Per-curve NVD flag of the circle arc after position p.
bool arc_is_nvd(const Configuration& c, int color, int p);
// Structural roles, per color: index of the middle branch and of the U branch.
std::array<int, 2> middle_and_u(const Configuration& c, int color);

std::vector<Configuration> enumerate_simple_configurations(int* raw_count = nullptr);

// Asymptote arrangements of the red curve against the blue one, as colors in
// ascending coordinate order. Up to the y-mirror that fixes the blue shape,
// four horizontal cases remain; all six vertical cases are distinct.
const std::array<std::array<int, 4>, 4>& horizontal_cases();
const std::array<std::array<int, 4>, 6>& vertical_cases();

// Simple configuration from asymptote orders. horizontal/vertical list the
// colors of the four asymptotes in ascending coordinate order (exactly two of
// each color); shapes give each curve's middle axis as 0 left-vertical,
// 1 right-vertical, 2 lower-horizontal, 3 upper-horizontal.
Configuration simple_configuration(const std::array<int, 4>& horizontal, const std::array<int, 4>& vertical,
                                   int red_shape, int blue_shape = 1);

std::vector<Twist> detect_twists(const Configuration& c);

// Two new crossings between a red and a blue edge that bound a common face.
// Rejects edges of a full-twist face, which would nest one full twist in another.
// Throws std::invalid_argument if the edges do not share that face or the
// result would exceed the vertex budget.
Configuration insert_twist(const Configuration& c, const EdgeRef& red, const EdgeRef& blue, int budget = 8);
// Throws std::invalid_argument for partial twists.
Configuration remove_full_twist(const Configuration& c, const Twist& t);
// Drops two vertices (lo < hi) and renumbers the rest; nullopt when the
// result is not a valid overlay.
std::optional<Configuration> remove_vertex_pair(const Configuration& c, int lo, int hi);

// Minimal encoding over quarter turns, mirror and color swap.
std::string canonical_form(const Configuration& c);
// Plain encoding of the configuration as stored (no symmetry reduction).
std::string encode(const Configuration& c);
std::optional<Configuration> decode(const std::string& s);

// Symmetry images. quarter_turns rotates the picture counterclockwise.
Configuration rotate(const Configuration& c, int quarter_turns);
Configuration mirror(const Configuration& c);
Configuration swap_colors(const Configuration& c);
// Relabels branches (and, unless told otherwise, vertices) into
// first-appearance order.
Configuration normalize(const Configuration& c, bool renumber_vertices = true);

// Number of ends of `color` lying on the NVD arcs of the other curve: the
// curve's contribution to the unbounded NVD map.
int nvd_contribution(const Configuration& c, int color);

// Interval relation between the two curves' asymptote pairs along the
// vertical (axis 0: x values, read on the top side) or horizontal (axis 1)
// direction: 0 disjoint, 1 interleaved, 2 red inside blue, 3 blue inside red.
int asymptote_relation(const Configuration& c, int axis);

}  // namespace quadline
