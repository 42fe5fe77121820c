#pragma once

#include "quadline/classifier.hpp"
#include "quadline/curves.hpp"

#include <optional>
#include <string>
#include <vector>

namespace quadline {

struct Viewport {
    double xmin = -1, xmax = 1, ymin = -1, ymax = 1;
};

struct RenderOptions {
    std::optional<Viewport> viewport;  // default: asymptotes and vertices, padded 20%
    int width = 640;
    bool labels = true;
};

// Real curves of one traced bisector in its frame coordinates: sampled
// branches, dashed asymptotes, vertex dots, nearest and farthest faces tinted.
// `vertices` are the vertex boxes of the whole line set.
std::string render_bisector_svg(const LineSet& lines, const BisectorTrace& trace, const std::vector<VertexBox>& vertices,
                                const RenderOptions& options = {});
// Viewport used when none is given: asymptotes and vertices, padded 20%.
Viewport auto_viewport(const BisectorTrace& trace, const std::vector<VertexBox>& vertices);

// Schematic disk picture of a configuration: ends on the circle, branches
// through the vertices, boundary arcs tinted by the label of the face inside.
std::string render_configuration_svg(const Configuration& c, const RenderOptions& options = {});

// The farthest map on the sphere, upper and lower hemispheres side by side.
std::string render_gamma_svg(const SphericalMap& map, const RenderOptions& options = {});

}  // namespace quadline
