#include "quadline/atlas.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <set>

using namespace quadline;

namespace {

std::vector<ConfigurationTuple> tuples_of(const Atlas& a) {
    std::vector<ConfigurationTuple> out;
    for (const auto& e : a.entries) out.push_back(e.tuple);
    return out;
}

int error_line(std::string_view text) {
    auto p = parse_atlas(text);
    CHECK_FALSE(p.value);
    return p.error.line;
}

}  // namespace

TEST_CASE("bundled atlas") {
    Atlas a = load_atlas();
    REQUIRE(a.entries.size() == 16);
    CHECK(histogram_string(a.histogram()) == "0:1 2:3 4:6 6:6 8:0");
    std::set<std::string> labels, keys;
    for (const auto& e : a.entries) {
        CHECK(e.key == canonical_key(e.tuple));
        CHECK(e.vertices == e.tuple.vertex_count());
        REQUIRE(e.witness);
        labels.insert(e.label);
        keys.insert(e.key);
    }
    CHECK(labels.size() == 16);
    CHECK(keys.size() == 16);
    CHECK(a.by_label("X")->vertices == 6);
    CHECK(a.by_id(0)->label == "I");
    CHECK(a.by_key("nonsense") == nullptr);
}

TEST_CASE("rebuilding the bundled atlas reproduces it") {
    Atlas a = load_atlas();
    CHECK(build_atlas(tuples_of(a)) == a);
}

TEST_CASE("atlas text round trip") {
    Atlas a = load_atlas();
    std::string text = serialize_atlas(a);
    auto p = parse_atlas(text);
    REQUIRE(p.value);
    CHECK(*p.value == a);
    CHECK(serialize_atlas(*p.value) == text);
}

TEST_CASE("atlas parse errors carry the line") {
    Atlas a = load_atlas();
    Atlas one;
    one.entries.push_back(a.entries[3]);
    std::string text = serialize_atlas(one);
    CHECK(error_line("") == 1);
    CHECK(error_line("quadline-atlas v2\n") == 1);
    CHECK(error_line("quadline-atlas v1\nentries 1\nslot 1,2 x\n") == 3);

    std::string bad_slot = text;
    bad_slot.replace(bad_slot.find("slot 1,3"), 8, "slot 1,4");
    CHECK(error_line(bad_slot) == 6);

    std::string bad_key = text;
    auto k = bad_key.find("key ") + 4;
    bad_key[k] = bad_key[k] == '0' ? '1' : '0';
    CHECK(error_line(bad_key) == 14);

    std::string bad_count = text;
    bad_count.replace(bad_count.find("entries 1"), 9, "entries 2");
    CHECK(error_line(bad_count) == 14);
}

TEST_CASE("atlas directory override") {
    auto dir = std::filesystem::temp_directory_path() / "quadline-atlas-override";
    std::filesystem::remove_all(dir);
    Atlas a = load_atlas();
    Atlas two;
    two.entries = {a.entries[0], a.entries[1]};
    save_atlas(two, dir);
    ::setenv("QUADLINE_ATLAS_DIR", dir.c_str(), 1);
    CHECK(default_atlas_dir() == dir);
    CHECK(load_atlas().entries.size() == 2);
    ::unsetenv("QUADLINE_ATLAS_DIR");
    CHECK(load_atlas().entries.size() == 16);
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS(load_atlas(dir), std::runtime_error);
}
