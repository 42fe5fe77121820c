// One PASS/FAIL line per acceptance criterion. Exit status is nonzero when
// any criterion fails.

#include "quadline/classifier.hpp"
#include "witnesses.hpp"

#include <Eigen/Core>
#include <unsupported/Eigen/Polynomials>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

using namespace quadline;
using namespace quadline::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool pass = true;
    std::string detail;
};

const Atlas& atlas() {
    static const Atlas a = load_atlas();
    return a;
}

// Integer line sets with coefficients in [-20, 20] that pass the general-position check.
class RandomLines {
public:
    explicit RandomLines(unsigned seed) : rng_(seed) {}
    LineSet next() {
        std::uniform_int_distribution<int> d(-20, 20);
        for (;;) {
            std::array<long, 9> p{};
            for (auto& x : p) x = d(rng_);
            if (p[0] == 0) continue;
            LineSet lines = make_lines(p);
            if (check_general_position(lines).pass) return lines;
        }
    }
    std::mt19937& rng() { return rng_; }

private:
    std::mt19937 rng_;
};

Direction random_direction(std::mt19937& rng) {
    std::normal_distribution<double> n;
    Direction v{n(rng), n(rng), n(rng)};
    double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    return {v[0] / len, v[1] / len, v[2] / len};
}

// ---------------------------------------------------------------- floating-point vertex count

// Number of real roots of the intersection resultant from a companion-matrix
// eigenvalue solver in long double. nullopt when two roots are closer than
// 1e-4 or a root is neither clearly real nor clearly complex.
std::optional<int> float_vertex_count(const LineSet& lines) {
    QPoly exact = intersection_polynomial(trisector_polynomial(lines, 2), trisector_polynomial(lines, 3));
    if (exact.degree() < 1) return std::nullopt;
    std::vector<long double> res;
    long double scale = 0;
    for (const auto& c : exact.coeffs()) {
        res.push_back(static_cast<long double>(c.get_d()));
        scale = std::max(scale, std::fabs(res.back()));
    }
    Eigen::Matrix<long double, Eigen::Dynamic, 1> coeffs(static_cast<Eigen::Index>(res.size()));
    for (std::size_t k = 0; k < res.size(); ++k) coeffs[static_cast<Eigen::Index>(k)] = res[k] / scale;
    Eigen::PolynomialSolver<long double, Eigen::Dynamic> solver(coeffs);
    const auto& roots = solver.roots();
    int real = 0;
    for (Eigen::Index i = 0; i < roots.size(); ++i) {
        std::complex<long double> z = roots[i];
        for (Eigen::Index j = i + 1; j < roots.size(); ++j)
            if (std::abs(z - roots[j]) <= 1e-4L) return std::nullopt;
        long double im = std::fabs(z.imag());
        if (im < 1e-9L * std::max(1.0L, std::abs(z)))
            ++real;
        else if (im <= 1e-4L)
            return std::nullopt;
    }
    return real;
}

// ---------------------------------------------------------------- criteria

Outcome atlas_regeneration() {
    auto start = Clock::now();
    auto configs = phase1_generate();
    int jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    auto tuples = phase3_search(configs, jobs);
    double took = seconds_since(start);
    std::array<int, 5> hist{};
    for (const auto& t : tuples) ++hist[static_cast<std::size_t>(t.vertex_count() / 2)];
    std::string h = histogram_string(hist);
    std::ostringstream os;
    os << tuples.size() << " tuples, histogram " << h << ", " << static_cast<int>(took) << " s"
       << " (want 15 tuples, 0:1 2:3 4:5 6:6 8:0, under 600 s)";
    return {tuples.size() == 15 && h == "0:1 2:3 4:5 6:6 8:0" && took < 600, os.str()};
}

Outcome witness_classification(std::vector<ClassificationReport>& reports) {
    int ok = 0;
    std::string bad;
    for (const auto& w : witnesses()) {
        LineSet lines = make_lines(w.params);
        try {
            auto r = classify(lines, atlas());
            const AtlasEntry* e = atlas().by_id(r.label.base_id);
            ConfigurationTuple traced;
            traced.slots = r.configurations;
            bool match = e && e->label == w.id && r.vertex_count == w.vertices && r.label.total_vertices == w.vertices &&
                         r.label.full_twists.empty() && canonical_key(traced) == e->key;
            if (match)
                ++ok;
            else
                bad += " " + w.id + "->" + r.label.base_label;
            reports.push_back(std::move(r));
        } catch (const std::exception& ex) {
            bad += " " + w.id + ": " + ex.what();
        }
    }
    return {ok == 15, std::to_string(ok) + "/15 witnesses match" + bad};
}

Outcome eight_vertices() {
    LineSet lines = make_lines(kEightVertex);
    int v = vertex_count(lines);
    auto r = classify(lines, atlas());
    TopologyLabel label = locate_full_twists(lines, atlas(), r.label.base_id);
    int twists = static_cast<int>(label.full_twists.size());
    std::ostringstream os;
    os << "vertex_count " << v << " = base " << label.base_label << " (" << label.base_vertices << ") + 2 x " << twists
       << " full twists";
    return {v == 8 && label.total_vertices == 8 && label.base_vertices + 2 * twists == 8, os.str()};
}

Outcome parity() {
    auto start = Clock::now();
    RandomLines gen(20240101);
    int ok = 0;
    std::map<int, int> seen;
    for (int k = 0; k < 200; ++k) {
        int v = vertex_count(gen.next());
        ++seen[v];
        ok += v % 2 == 0 && v >= 0 && v <= 8;
    }
    double took = seconds_since(start);
    std::ostringstream os;
    os << ok << "/200 even and at most 8 in " << std::fixed;
    os.precision(2);
    os << took << " s; counts";
    for (auto [v, n] : seen) os << " " << v << ":" << n;
    return {ok == 200 && took < 60, os.str()};
}

Outcome count_formulas(std::vector<DiagramSummary>& assembled) {
    int ok = 0;
    auto g = gamma_counts(4);
    auto map_counts = [](const GammaMap& m) {
        return std::array<int, 3>{m.vertex_count, static_cast<int>(m.edges.size()), static_cast<int>(m.faces.size())};
    };
    for (const auto& e : atlas().entries) {
        auto d = assemble_diagram(e.tuple);
        if (!d) continue;
        int v = e.vertices;
        ok += d->nearest == FeatureCounts{2 * v + 6, v + 9, 4} && d->farthest == FeatureCounts{2 * v + 10, v + 21, 12} &&
              map_counts(d->gamma_nearest) == g[0] && map_counts(d->gamma_farthest) == g[1];
        assembled.push_back(std::move(*d));
    }
    int n = static_cast<int>(atlas().entries.size());
    return {ok == n && static_cast<int>(assembled.size()) == n,
            std::to_string(ok) + "/" + std::to_string(n) + " assembled topologies satisfy the counts"};
}

Outcome cells_per_line(const std::vector<DiagramSummary>& assembled, const std::vector<ClassificationReport>& reports) {
    const std::array<int, 4> three{3, 3, 3, 3};
    int ok = 0;
    for (const auto& d : assembled) ok += d.farthest_cells_per_line == three;
    for (const auto& r : reports) ok += r.farthest_cells_per_line == three;
    int n = static_cast<int>(assembled.size() + reports.size());
    return {ok == n && n > 0,
            std::to_string(ok) + "/" + std::to_string(n) + " topologies and witnesses have 3 farthest cells per line"};
}

Outcome gamma_distinctness(const std::vector<DiagramSummary>& assembled) {
    std::set<std::string> far, near;
    for (const auto& d : assembled) {
        far.insert(canonical_code(d.gamma_farthest));
        near.insert(canonical_code(d.gamma_nearest));
    }
    std::ostringstream os;
    os << far.size() << " distinct farthest maps over " << assembled.size() << " topologies, " << near.size()
       << " distinct nearest maps";
    return {far.size() == assembled.size() && near.size() == 2, os.str()};
}

Outcome oracle_agreement() {
    RandomLines gen(31337);
    int count_agree = 0, count_checked = 0, labels_agree = 0, labels_checked = 0, skipped_maps = 0;
    std::string bad;
    for (int k = 0; k < 100; ++k) {
        LineSet lines = gen.next();
        if (auto f = float_vertex_count(lines)) {
            ++count_checked;
            int exact = vertex_count(lines);
            if (exact == *f)
                ++count_agree;
            else
                bad += " [" + format_lineset(lines) + ": " + std::to_string(exact) + " vs " + std::to_string(*f) + "]";
        }
        try {
            SphericalMap m = gaussian_map_fvd(lines);
            for (int s = 0; s < 50; ++s) {
                Direction v = random_direction(gen.rng());
                int face = m.locate(v);
                if (face < 0) continue;
                ++labels_checked;
                labels_agree += m.map.face_line[static_cast<std::size_t>(face)] == farthest_line_at(lines, v);
            }
        } catch (const DegenerateInput&) {
            ++skipped_maps;
        } catch (const std::exception& ex) {
            bad += " [" + format_lineset(lines) + ": " + ex.what() + "]";
        }
    }
    std::ostringstream os;
    os << "vertex counts " << count_agree << "/" << count_checked << " conclusive agree; map labels " << labels_agree
       << "/" << labels_checked << " located directions agree";
    if (skipped_maps) os << "; " << skipped_maps << " maps too close to a tie";
    os << bad;
    return {count_agree == count_checked && labels_agree == labels_checked && count_checked >= 90 && labels_checked >= 4000,
            os.str()};
}

Outcome asymptote_invariance() {
    RandomLines gen(4242);
    std::uniform_int_distribution<int> num(-50, 50), den(1, 9);
    int ok = 0;
    for (int k = 0; k < 50; ++k) {
        LineSet lines = gen.next();
        auto shift = [&] { return Rational(num(gen.rng()), den(gen.rng())); };
        auto p3 = lines.params(0), p4 = lines.params(1);
        p3[0] += shift();
        p3[1] += shift();
        p4[0] += shift();
        p4[1] += shift();
        LineSet moved(lines.a(), p3, p4);
        bool same = true;
        for (int i : {2, 3}) {
            auto before = trisector_polynomial(lines, i), after = trisector_polynomial(moved, i);
            same = same && before.vertical_asymptotes == after.vertical_asymptotes &&
                   before.horizontal_asymptotes == after.horizontal_asymptotes;
        }
        ok += same;
    }
    return {ok == 50, std::to_string(ok) + "/50 translated line sets keep every asymptote"};
}

// Red and blue half-edges bounding interior face f.
std::vector<std::pair<EdgeRef, EdgeRef>> edge_pairs_on(const Overlay& o, int f) {
    std::array<std::vector<EdgeRef>, 2> sides;
    for (int col = 0; col < 2; ++col)
        for (int b = 0; b < 4; ++b) {
            const auto& segs = o.segment_faces[static_cast<std::size_t>(col)][static_cast<std::size_t>(b)];
            for (std::size_t s = 0; s < segs.size(); ++s)
                for (int side = 0; side < 2; ++side)
                    if (segs[s][static_cast<std::size_t>(side)] == f)
                        sides[static_cast<std::size_t>(col)].push_back({col, b, static_cast<int>(s), side == 0});
        }
    std::vector<std::pair<EdgeRef, EdgeRef>> out;
    for (const auto& r : sides[0])
        for (const auto& b : sides[1]) out.emplace_back(r, b);
    return out;
}

Outcome twist_round_trip() {
    int configs = 0, round_trips = 0, round_trip_ok = 0, partial_ok = 0, partial = 0, nested = 0, nested_rejected = 0;
    for (const auto& e : atlas().entries)
        for (const auto& c : e.tuple.slots) {
            auto o = build_overlay(c);
            if (!o) return {false, "atlas configuration without an overlay"};
            bool has_vd2 = std::any_of(o->faces.begin(), o->faces.end(),
                                       [](const Overlay::Face& f) { return f.label == FaceLabel::VD2; });
            if (!has_vd2) continue;
            ++configs;
            for (int f = 0; f < static_cast<int>(o->faces.size()); ++f) {
                FaceLabel label = o->faces[static_cast<std::size_t>(f)].label;
                for (const auto& [red, blue] : edge_pairs_on(*o, f)) {
                    Configuration t = insert_twist(c, red, blue);
                    std::optional<Twist> added;
                    for (const auto& tw : detect_twists(t))
                        if (tw.vertices == std::array<int, 2>{c.vertex_count(), c.vertex_count() + 1}) added = tw;
                    if (!added) return {false, "inserted twist not detected"};
                    if (label == FaceLabel::VD2) {
                        ++partial;
                        try {
                            remove_full_twist(t, *added);
                        } catch (const std::invalid_argument&) {
                            ++partial_ok;
                        }
                        continue;
                    }
                    ++round_trips;
                    round_trip_ok += added->kind == Twist::Kind::Full &&
                                     canonical_form(remove_full_twist(t, *added)) == canonical_form(c);
                    auto ot = build_overlay(t);
                    for (const auto& [r2, b2] : edge_pairs_on(*ot, added->face)) {
                        ++nested;
                        try {
                            insert_twist(t, r2, b2);
                        } catch (const std::invalid_argument&) {
                            ++nested_rejected;
                        }
                    }
                }
            }
        }
    std::ostringstream os;
    os << configs << " configurations with a VD2 face; " << round_trip_ok << "/" << round_trips
       << " nearest/farthest insertions restore the canonical form; " << partial_ok << "/" << partial
       << " partial twists refused; " << nested_rejected << "/" << nested << " nested insertions rejected";
    return {configs > 0 && round_trips > 0 && round_trip_ok == round_trips && partial_ok == partial && nested > 0 &&
                nested_rejected == nested,
            os.str()};
}

}  // namespace

int main() {
    std::vector<ClassificationReport> reports;
    std::vector<DiagramSummary> assembled;
    const std::vector<std::pair<int, std::function<Outcome()>>> criteria{
        {1, atlas_regeneration},
        {2, [&] { return witness_classification(reports); }},
        {3, eight_vertices},
        {4, parity},
        {5, [&] { return count_formulas(assembled); }},
        {6, [&] { return cells_per_line(assembled, reports); }},
        {7, [&] { return gamma_distinctness(assembled); }},
        {8, oracle_agreement},
        {9, asymptote_invariance},
        {10, twist_round_trip},
    };
    int failed = 0;
    for (const auto& [n, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& ex) {
            o = {false, std::string("exception: ") + ex.what()};
        }
        failed += !o.pass;
        std::printf("criterion %d: %s  %s\n", n, o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
