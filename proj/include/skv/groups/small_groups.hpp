#pragma once

#include <string>

#include "skv/groups/finite_group.hpp"

namespace skv::small_groups {

inline skv::FiniteGroup s3() { return skv::FiniteGroup::from_permutations({{1, 0, 2}, {1, 2, 0}}); }

inline skv::FiniteGroup d4() { return skv::FiniteGroup::from_permutations({{1, 2, 3, 0}, {0, 3, 2, 1}}); }

inline skv::FiniteGroup c6() { return skv::FiniteGroup::cyclic(6); }

/// Quaternion group; element 4*s + u stands for (-1)^s * {1, i, j, k}[u].
inline skv::FiniteGroup q8() {
    // unit products: table[a][b] = (sign, unit)
    const int sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    std::vector<std::vector<skv::Elem>> t(8, std::vector<skv::Elem>(8));
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int s = (a / 4 + b / 4 + sign[a % 4][b % 4]) % 2;
            t[a][b] = static_cast<skv::Elem>(4 * s + unit[a % 4][b % 4]);
        }
    return skv::FiniteGroup::from_table(t);
}

/// The groups of the algebra suites by name.
inline skv::FiniteGroup named(const std::string& name) {
    if (name == "S3") return s3();
    if (name == "D4") return d4();
    if (name == "Q8") return q8();
    if (name == "C6") return c6();
    throw skv::InvalidArgument("unknown group name '" + name + "' (expected S3, D4, Q8 or C6)");
}

}  // namespace skv::small_groups
