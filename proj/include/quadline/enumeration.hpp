#pragma once

#include "quadline/configuration.hpp"

#include <array>
#include <map>
#include <string>
#include <vector>

namespace quadline {

// Bisector slots of a tuple in the order {1,2},{1,3},{1,4},{2,3},{2,4},{3,4}
// (0-based pairs below). The red curve of slot (i,j) is the trisector through
// the smaller remaining line, the blue one through the larger.
inline constexpr std::array<std::array<int, 2>, 6> kSlotPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
int slot_of(int i, int j);
// Line left out by the trisector drawn in `color` on `slot`.
int missing_line(int slot, int color);
// Slot and color on which trisector `missing` is drawn, one entry per host.
std::array<std::array<int, 2>, 3> hosts_of(int missing);

// How a host curve maps onto its trisector: host branch b is global branch
// branch[b], traversed backwards when reversed[b].
struct CurveLink {
    std::array<int, 4> branch{0, 1, 2, 3};
    std::array<bool, 4> reversed{};
    bool operator==(const CurveLink&) const = default;
};

// Six configurations sharing one global vertex numbering, plus the branch
// correspondence of every curve with its trisector. Global branches of a
// trisector are numbered by its first host (in slot order), whose link is the
// identity.
struct ConfigurationTuple {
    std::array<Configuration, 6> slots;
    std::array<std::array<CurveLink, 2>, 6> links;

    int vertex_count() const { return slots[0].vertex_count(); }
};

// Phase 1: simple configurations closed under twist insertion on VD2 faces,
// skipping anything with a full twist. Keyed by canonical form.
std::map<std::string, Configuration> phase1_generate(int budget = 8);

// Phase 2: admissible bisector class and no double nesting.
bool phase2_filter(const Configuration& c);
// Unordered pair of the curves' NVD contributions, smaller first.
std::array<int, 2> bisector_class(const Configuration& c);
// True when the curve's middle branch runs between the bottom and top sides.
bool vertical_middle(const Configuration& c, int color);

struct SearchStats {
    long candidates = 0;  // complete six-slot assemblies
    std::map<std::string, long> rejected;  // by filter name
};

// Phase 3: consistent six-tuples, deduplicated up to relabeling of the lines
// and of the vertices, sorted by (vertex count, canonical key).
std::vector<ConfigurationTuple> phase3_search(const std::map<std::string, Configuration>& configs, int jobs = 1,
                                              SearchStats* stats = nullptr);

// A way of gluing the six pictures: the dihedral image (0..7, mirror first
// when >= 4, then quarter turns) that puts each slot into its true frame, and
// the branch correspondence implied by matching ends across hosts.
struct EndGluing {
    std::array<int, 6> frame{};
    std::array<std::array<CurveLink, 2>, 6> links;
};

// All gluings under which every end of every trisector is seen consistently
// by its three hosts: same branch, same vertices, same labels, one U host per
// side branch. Ends are matched by the signs of their direction against the
// three lines, read from the side they leave through and their rank on it.
std::vector<EndGluing> identify_ends(const ConfigurationTuple& t);

// Canonical key of a tuple under line relabeling and vertex renumbering.
std::string canonical_key(const ConfigurationTuple& t);

// Tuple filters shared by the search and by the classifier. Each returns an
// empty string on success, otherwise the name of the failed check.
std::string check_tuple(const ConfigurationTuple& t);

}  // namespace quadline
