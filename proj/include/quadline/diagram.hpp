#pragma once

#include "quadline/enumeration.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace quadline {

enum class Diagram : unsigned char { Nearest, Farthest };

// (edges, faces, cells) of the 3D diagram of n lines with V vertices.
std::array<int, 3> combinatorics_counts(int n, int vertices, Diagram d);
// (vertices, edges, faces) of the two maps at infinity, nearest first.
std::array<std::array<int, 3>, 2> gamma_counts(int n);

// A map on the sphere of directions. Vertices are trisector ends, edges are
// circle arcs of the bisectors, faces are the cells at infinity, each given
// as a cycle of darts (2*edge for first->second, 2*edge+1 backwards) with
// all faces oriented coherently.
struct GammaMap {
    int vertex_count = 0;
    std::vector<std::array<int, 2>> edges;
    std::vector<std::vector<int>> faces;
    std::vector<int> face_line;  // line whose cell the face is

    int euler_characteristic() const {
        return vertex_count - static_cast<int>(edges.size()) + static_cast<int>(faces.size());
    }
};

// What one bisector shows at infinity: the global id of the trisector end
// at each circle position and the label of the arc after it.
struct CircleData {
    std::array<int, 16> end{};  // trisector (by missing line) * 8 + local end id
    std::array<FaceLabel, 16> arc{};
};

// Map at infinity of the given label (NVD or FVD) from the six circles.
std::optional<GammaMap> gamma_from_circles(const std::array<CircleData, 6>& circles, FaceLabel label,
                                           std::string* why = nullptr);

// Canonical code of a map up to line relabeling, orientation-preserving
// homeomorphism and, when allowed, reflection.
std::string canonical_code(const GammaMap& m, bool with_reflection = true);
GammaMap reflected(const GammaMap& m);

// A trisector segment: trisector (by missing line), global branch, index of
// the segment along the branch.
struct SegmentRef {
    int trisector = 0;
    int branch = 0;
    int segment = 0;
    bool operator==(const SegmentRef&) const = default;
};

struct FeatureCounts {
    int edges = 0;
    int faces = 0;
    int cells = 0;
    bool operator==(const FeatureCounts&) const = default;
};

struct DiagramSummary {
    int topology = -1;  // atlas id once matched, otherwise -1
    int vertices = 0;
    FeatureCounts nearest, farthest;
    GammaMap gamma_nearest, gamma_farthest;
    std::array<int, 4> farthest_cells_per_line{};
    bool nearest_skeleton_connected = true;
    bool farthest_skeleton_connected = true;
    std::vector<SegmentRef> bounded_nearest_edges, bounded_farthest_edges;
    int bounded_faces = 0;
};

// Glues the six pictures along shared segments. nullopt (with the failed
// check in `why`) when no end gluing yields a consistent diagram.
// A gluing must also produce maps at infinity that some choice of line
// directions realizes.
std::optional<DiagramSummary> assemble_diagram(const ConfigurationTuple& t, std::string* why = nullptr);
// Every distinct outcome (by the pair of maps at infinity), for uniqueness checks.
std::vector<DiagramSummary> assemble_diagrams(const ConfigurationTuple& t, bool first_only = false,
                                              std::string* why = nullptr);

}  // namespace quadline
