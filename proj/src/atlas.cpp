#include "quadline/atlas.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#ifndef QUADLINE_DATA_DIR
#define QUADLINE_DATA_DIR "data"
#endif

namespace quadline {

ConfigurationTuple trace_tuple(const LineSet& lines, const VertexSolver& solver) {
    ConfigurationTuple t;
    for (int s = 0; s < 6; ++s) {
        auto [i, j] = kSlotPairs[static_cast<size_t>(s)];
        t.slots[static_cast<size_t>(s)] = to_configuration(trace_bisector(lines, {i, j}, solver));
    }
    return t;
}

ConfigurationTuple trace_tuple(const LineSet& lines) { return trace_tuple(lines, VertexSolver(lines)); }

LineSet ReferenceWitness::lines() const {
    auto q = [&](size_t k) { return Rational(params[k]); };
    return LineSet(q(0), {q(1), q(2), q(3), q(4)}, {q(5), q(6), q(7), q(8)});
}

const std::vector<ReferenceWitness>& reference_witnesses() {
    static const std::vector<ReferenceWitness> w{
        {"I", {-9, 2, -2, 1, -3, -1, 1, -1, -5}, 0},
        {"II", {-3, -16, -12, -3, 9, -10, 1, 9, -11}, 2},
        {"III", {-4, 5, 10, 3, 4, 5, 6, -1, 1}, 2},
        {"IV", {4, -9, -8, -6, -1, 10, -1, 0, -1}, 2},
        {"V", {1, -19, 11, 7, 16, -11, 1, -12, 6}, 4},
        {"VI", {16, -10, 3, 0, -1, 5, 1, 2, 5}, 4},
        {"VII", {4, 7, 9, 1, 10, -3, -10, 6, -8}, 4},
        {"VIII", {2, -19, -4, -13, 20, 14, -18, -3, 9}, 4},
        {"IX", {10, 8, -15, -2, 15, 12, 9, -2, 4}, 4},
        {"X", {1, -18, -5, -4, -16, 11, -18, -6, -3}, 6},
        {"XI", {1, 29, 4, 2, 20, 11, 25, 0, -3}, 6},
        {"XII", {2, 3, -6, -3, 16, -1, -12, -3, -19}, 6},
        {"XIII", {5, 7, -10, 0, 2, 16, 7, 0, -16}, 6},
        {"XIV", {3, 17, 9, 0, 19, 11, -16, 2, -8}, 6},
        {"XV", {9, 32, -26, 14, 38, 11, -40, 12, -15}, 6},
        // Found by random sampling; twist-free with four vertices.
        {"XVI", {2, -18, 9, 14, -9, -16, 0, 3, 16}, 4},
    };
    return w;
}

const AtlasEntry* Atlas::by_key(std::string_view key) const {
    for (const auto& e : entries)
        if (e.key == key) return &e;
    return nullptr;
}

const AtlasEntry* Atlas::by_gamma_farthest(std::string_view code) const {
    for (const auto& e : entries)
        if (e.gamma_farthest == code) return &e;
    return nullptr;
}

const AtlasEntry* Atlas::by_id(int id) const {
    for (const auto& e : entries)
        if (e.id == id) return &e;
    return nullptr;
}

const AtlasEntry* Atlas::by_label(std::string_view label) const {
    for (const auto& e : entries)
        if (e.label == label) return &e;
    return nullptr;
}

std::array<int, 5> Atlas::histogram() const {
    std::array<int, 5> h{};
    for (const auto& e : entries)
        if (e.vertices >= 0 && e.vertices <= 8 && e.vertices % 2 == 0) ++h[static_cast<size_t>(e.vertices / 2)];
    return h;
}

std::string histogram_string(const std::array<int, 5>& h) {
    std::string s;
    for (size_t k = 0; k < h.size(); ++k) s += (k ? " " : "") + std::to_string(2 * k) + ":" + std::to_string(h[k]);
    return s;
}

Atlas build_atlas(const std::vector<ConfigurationTuple>& tuples) {
    Atlas atlas;
    for (const auto& t : tuples) {
        AtlasEntry e;
        e.id = static_cast<int>(atlas.entries.size());
        e.vertices = t.vertex_count();
        e.tuple = t;
        e.key = canonical_key(t);
        std::string why;
        auto d = assemble_diagram(t, &why);
        if (!d) throw std::runtime_error("atlas tuple " + std::to_string(e.id) + " does not assemble: " + why);
        e.gamma_nearest = canonical_code(d->gamma_nearest);
        e.gamma_farthest = canonical_code(d->gamma_farthest);
        atlas.entries.push_back(std::move(e));
    }
    for (const auto& w : reference_witnesses()) {
        LineSet lines = w.lines();
        std::string key = canonical_key(trace_tuple(lines));
        for (auto& e : atlas.entries)
            if (e.key == key && e.label.empty()) {
                e.label = w.label;
                e.witness = lines;
            }
    }
    // Unwitnessed entries are numbered on from the last witness label.
    int next = static_cast<int>(reference_witnesses().size());
    for (auto& e : atlas.entries)
        if (e.label.empty()) e.label = "#" + std::to_string(++next);
    return atlas;
}

std::string serialize_atlas(const Atlas& atlas) {
    std::ostringstream os;
    os << "quadline-atlas v1\n";
    os << "entries " << atlas.entries.size() << "\n";
    for (const auto& e : atlas.entries) {
        os << "entry " << e.id << " " << e.label << " " << e.vertices << "\n";
        if (e.witness) os << "witness " << format_lineset(*e.witness) << "\n";
        for (int s = 0; s < 6; ++s) {
            auto [i, j] = kSlotPairs[static_cast<size_t>(s)];
            os << "slot " << i + 1 << "," << j + 1 << " " << encode(e.tuple.slots[static_cast<size_t>(s)]) << "\n";
        }
        os << "key " << e.key << "\n";
        os << "gamma-nearest " << e.gamma_nearest << "\n";
        os << "gamma-farthest " << e.gamma_farthest << "\n";
        os << "end\n";
    }
    return os.str();
}

ParsedAtlas parse_atlas(std::string_view text) {
    ParsedAtlas out;
    Atlas atlas;
    std::optional<AtlasEntry> cur;
    int slots = 0;
    int lineno = 0;
    size_t expected = 0;
    bool header = false;
    auto fail = [&](int col, std::string msg) {
        out.error = {std::max(lineno, 1), col, std::move(msg)};
        return out;
    };
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "quadline-atlas v1") return fail(1, "expected header 'quadline-atlas v1'");
            header = true;
            continue;
        }
        auto sp = line.find(' ');
        std::string word = line.substr(0, sp);
        std::string rest = sp == std::string::npos ? "" : line.substr(sp + 1);
        int col = static_cast<int>(word.size()) + 2;
        if (word == "entries") {
            try {
                expected = std::stoul(rest);
            } catch (const std::exception&) {
                return fail(col, "bad entry count");
            }
        } else if (word == "entry") {
            if (cur) return fail(1, "entry without end");
            std::istringstream fields(rest);
            AtlasEntry e;
            if (!(fields >> e.id >> e.label >> e.vertices)) return fail(col, "expected: entry <id> <label> <vertices>");
            cur = std::move(e);
            slots = 0;
        } else if (!cur) {
            return fail(1, "'" + word + "' outside an entry");
        } else if (word == "witness") {
            auto p = parse_lineset(rest);
            if (!p.value) return fail(col + p.error.column - 1, p.error.message);
            cur->witness = *p.value;
        } else if (word == "slot") {
            auto sp2 = rest.find(' ');
            if (sp2 == std::string::npos || slots >= 6) return fail(col, "bad slot line");
            auto [i, j] = kSlotPairs[static_cast<size_t>(slots)];
            if (rest.substr(0, sp2) != std::to_string(i + 1) + "," + std::to_string(j + 1))
                return fail(col, "slots must come in the order 1,2 1,3 1,4 2,3 2,4 3,4");
            auto c = decode(rest.substr(sp2 + 1));
            if (!c || !is_valid(*c)) return fail(col + static_cast<int>(sp2) + 1, "bad configuration encoding");
            cur->tuple.slots[static_cast<size_t>(slots++)] = *c;
        } else if (word == "key") {
            cur->key = rest;
        } else if (word == "gamma-nearest") {
            cur->gamma_nearest = rest;
        } else if (word == "gamma-farthest") {
            cur->gamma_farthest = rest;
        } else if (word == "end") {
            if (slots != 6) return fail(1, "entry needs six slots");
            if (cur->key != canonical_key(cur->tuple)) return fail(1, "stored key does not match the slots");
            atlas.entries.push_back(std::move(*cur));
            cur.reset();
        } else {
            return fail(1, "unknown record '" + word + "'");
        }
    }
    if (!header) return fail(1, "empty atlas");
    if (cur) return fail(1, "missing end");
    if (atlas.entries.size() != expected) return fail(1, "entry count does not match");
    out.value = std::move(atlas);
    return out;
}

std::filesystem::path default_atlas_dir() {
    if (const char* env = std::getenv("QUADLINE_ATLAS_DIR"); env && *env) return env;
    return QUADLINE_DATA_DIR;
}

Atlas load_atlas(const std::filesystem::path& dir) {
    auto path = dir / kAtlasFileName;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read atlas " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    auto parsed = parse_atlas(ss.str());
    if (!parsed.value)
        throw std::runtime_error(path.string() + ":" + std::to_string(parsed.error.line) + ":" +
                                 std::to_string(parsed.error.column) + ": " + parsed.error.message);
    return std::move(*parsed.value);
}

void save_atlas(const Atlas& atlas, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto path = dir / kAtlasFileName;
    std::ofstream out(path);
    out << serialize_atlas(atlas);
    if (!out) throw std::runtime_error("cannot write atlas " + path.string());
}

}  // namespace quadline
