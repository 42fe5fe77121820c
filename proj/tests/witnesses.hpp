#pragma once

#include "quadline/lines.hpp"

#include <array>
#include <string>

namespace quadline::testing {

struct Witness {
    std::string id;
    std::array<long, 9> params;
    int vertices;
};

inline const std::array<Witness, 15>& witnesses() {
    static const std::array<Witness, 15> w{{
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
    }};
    return w;
}

inline LineSet make_lines(const std::array<long, 9>& p) {
    auto q = [&](std::size_t k) { return Rational(p[k]); };
    return LineSet(q(0), {q(1), q(2), q(3), q(4)}, {q(5), q(6), q(7), q(8)});
}

inline const std::array<long, 9> kEightVertex{10, 14, -6, -9, -5, -19, 5, 13, 11};

}  // namespace quadline::testing
