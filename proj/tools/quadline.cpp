#include "quadline/classifier.hpp"
#include "quadline/render.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace quadline;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;

// Thrown to leave a subcommand with a specific exit code; the message is
// already printed.
struct Exit {
    int code;
};

LineSet read_lineset(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << path << ": cannot open\n";
        throw Exit{kExitInput};
    }
    std::stringstream ss;
    ss << in.rdbuf();
    auto parsed = parse_lineset(ss.str());
    if (!parsed.value) {
        std::cerr << path << ":" << parsed.error.line << ":" << parsed.error.column << ": " << parsed.error.message << "\n";
        throw Exit{kExitInput};
    }
    return *parsed.value;
}

void require_general_position(const LineSet& lines) {
    auto report = check_general_position(lines);
    if (!report.pass) {
        std::cerr << "degenerate input: condition " << report.condition << " ("
                  << general_position_condition_name(report.condition) << "): " << report.detail << "\n";
        throw Exit{kExitDegenerate};
    }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path);
    out << text;
    if (!out) {
        std::cerr << path.string() << ": cannot write\n";
        throw Exit{kExitFailure};
    }
}

std::string pair_tag(LinePair p) { return std::to_string(p.first + 1) + std::to_string(p.second + 1); }

LinePair parse_pair(const std::string& text) {
    int i = 0, j = 0;
    char comma = 0;
    std::istringstream in(text);
    if (!(in >> i >> comma >> j) || comma != ',' || i < 1 || j > 4 || i >= j) {
        std::cerr << "--pair expects i,j with 1 <= i < j <= 4\n";
        throw Exit{kExitInput};
    }
    return {i - 1, j - 1};
}

Atlas open_atlas() {
    try {
        return load_atlas();
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        throw Exit{kExitFailure};
    }
}

int cmd_check(const std::string& file) {
    LineSet lines = read_lineset(file);
    auto report = check_general_position(lines);
    if (report.pass) {
        std::cout << "pass\n";
        return 0;
    }
    std::cout << "fail: condition " << report.condition << " (" << general_position_condition_name(report.condition)
              << "): " << report.detail << "\n";
    return kExitInput;
}

int cmd_count(const std::string& file) {
    LineSet lines = read_lineset(file);
    require_general_position(lines);
    std::cout << vertex_count(lines) << "\n";
    return 0;
}

int cmd_bisector(const std::string& file, const std::string& pair_text, const std::string& svg) {
    LineSet lines = read_lineset(file);
    require_general_position(lines);
    LinePair pair = parse_pair(pair_text);
    VertexSolver solver(lines);
    BisectorTrace trace = trace_bisector(lines, pair, solver);
    std::cout << encode(to_configuration(trace)) << "\n";
    if (!svg.empty()) write_file(svg, render_bisector_svg(lines, trace, solver.boxes(64)));
    return 0;
}

int cmd_classify(const std::string& file, const std::string& report_path, const std::string& svg_dir) {
    LineSet lines = read_lineset(file);
    require_general_position(lines);
    Atlas atlas = open_atlas();
    ClassificationReport report;
    try {
        report = classify(lines, atlas);
    } catch (const ClassificationError& e) {
        std::cerr << "classification failed at stage " << e.stage() << ": " << e.what() << "\n";
        std::cerr << "input: " << format_lineset(lines) << "\n";
        return kExitFailure;
    }
    std::string text = format_report(report);
    if (report_path.empty())
        std::cout << text;
    else
        write_file(report_path, text);
    if (!svg_dir.empty()) {
        VertexSolver solver(lines);
        auto boxes = solver.boxes(64);
        for (const auto& [i, j] : kSlotPairs) {
            LinePair pair{i, j};
            write_file(std::filesystem::path(svg_dir) / ("bisector-" + pair_tag(pair) + ".svg"),
                       render_bisector_svg(lines, trace_bisector(lines, pair, solver), boxes));
        }
        write_file(std::filesystem::path(svg_dir) / "gamma-farthest.svg", render_gamma_svg(gaussian_map_fvd(lines)));
    }
    std::cout << "topology " << report.label.base_label << " vertices " << report.label.total_vertices
              << " full-twists " << report.label.full_twists.size() << "\n";
    return 0;
}

int cmd_enumerate(const std::string& atlas_out, int jobs) {
    auto start = std::chrono::steady_clock::now();
    auto configs = phase1_generate();
    SearchStats stats;
    auto tuples = phase3_search(configs, jobs, &stats);
    Atlas atlas = build_atlas(tuples);
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << tuples.size() << " tuples\n";
    std::cout << histogram_string(atlas.histogram()) << "\n";
    std::cerr << "phase 1: " << configs.size() << " configurations; candidates " << stats.candidates;
    for (const auto& [name, n] : stats.rejected) std::cerr << "; " << name << " " << n;
    std::cerr << "; " << seconds << " s\n";
    for (const auto& e : atlas.entries) std::cerr << "  " << e.id << " " << e.label << " V=" << e.vertices << "\n";
    if (!atlas_out.empty()) save_atlas(atlas, atlas_out);
    return tuples.size() == 15 ? 0 : kExitFailure;
}

int cmd_atlas(std::optional<int> id) {
    Atlas atlas = open_atlas();
    if (!id) {
        std::cout << atlas.entries.size() << " entries, " << histogram_string(atlas.histogram()) << "\n";
        for (const auto& e : atlas.entries)
            std::cout << e.id << " " << e.label << " V=" << e.vertices
                      << (e.witness ? " witness " + format_lineset(*e.witness) : std::string()) << "\n";
        return 0;
    }
    const AtlasEntry* e = atlas.by_id(*id);
    if (!e) {
        std::cerr << "no atlas entry with id " << *id << "\n";
        return kExitInput;
    }
    Atlas one;
    one.entries.push_back(*e);
    std::cout << serialize_atlas(one);
    return 0;
}

int cmd_formulas(int n, std::optional<int> v) {
    if (n < 2) {
        std::cerr << "--n must be at least 2\n";
        return kExitInput;
    }
    auto line = [](const char* name, std::array<int, 3> c) {
        std::cout << name << " (E=" << c[0] << ",F=" << c[1] << ",C=" << c[2] << ")\n";
    };
    std::vector<int> vs;
    if (v)
        vs.push_back(*v);
    else
        for (int k = 0; k <= 8; k += 2) vs.push_back(k);
    for (int vv : vs) {
        std::cout << "V=" << vv << "\n";
        line("NVD", combinatorics_counts(n, vv, Diagram::Nearest));
        line("FVD", combinatorics_counts(n, vv, Diagram::Farthest));
    }
    auto g = gamma_counts(n);
    std::cout << "Gamma(NVD) (V=" << g[0][0] << ",E=" << g[0][1] << ",F=" << g[0][2] << ")\n";
    std::cout << "Gamma(FVD) (V=" << g[1][0] << ",E=" << g[1][1] << ",F=" << g[1][2] << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Voronoi diagrams of four lines in space: tracing, enumeration and classification"};
    app.require_subcommand(1);

    std::string file, pair, svg, report, svg_dir, atlas_out;
    int jobs = static_cast<int>(std::max(1U, std::thread::hardware_concurrency()));
    std::optional<int> id, v;
    int n = 4;

    auto* check = app.add_subcommand("check", "general-position report; exit 2 when it fails");
    check->add_option("lineset", file, "line-set file")->required();
    auto* count = app.add_subcommand("count", "number of Voronoi vertices");
    count->add_option("lineset", file, "line-set file")->required();
    auto* bisector = app.add_subcommand("bisector", "traced configuration of one bisector");
    bisector->add_option("lineset", file, "line-set file")->required();
    bisector->add_option("--pair", pair, "line pair i,j")->required();
    bisector->add_option("--svg", svg, "write an SVG picture");
    auto* cls = app.add_subcommand("classify", "topology, full twists and feature counts");
    cls->add_option("lineset", file, "line-set file")->required();
    cls->add_option("--report", report, "write the report here instead of stdout");
    cls->add_option("--svg-dir", svg_dir, "write bisector and map pictures here");
    auto* enumerate = app.add_subcommand("enumerate", "run the full search");
    enumerate->add_option("--atlas-out", atlas_out, "write the atlas to this directory");
    enumerate->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    auto* atlas = app.add_subcommand("atlas", "stored atlas entries");
    atlas->add_option("--id", id, "one entry in full");
    auto* formulas = app.add_subcommand("formulas", "combinatorial counts");
    formulas->add_option("--n", n, "number of lines")->required();
    formulas->add_option("--v", v, "number of vertices");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*check) return cmd_check(file);
        if (*count) return cmd_count(file);
        if (*bisector) return cmd_bisector(file, pair, svg);
        if (*cls) return cmd_classify(file, report, svg_dir);
        if (*enumerate) return cmd_enumerate(atlas_out, jobs);
        if (*atlas) return cmd_atlas(id);
        if (*formulas) return cmd_formulas(n, v);
    } catch (const Exit& e) {
        return e.code;
    } catch (const DegenerateInput& e) {
        std::cerr << "degenerate input: condition " << e.condition() << " ("
                  << general_position_condition_name(e.condition()) << "): " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}
