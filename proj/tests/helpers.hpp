#pragma once

#include <random>

#include "wittlift/witt.hpp"

namespace wittlift::test {

inline std::mt19937_64 rng(uint64_t seed) { return std::mt19937_64(seed); }

inline FqElem random_fq(const FieldDesc* fd, std::mt19937_64& g) {
    std::uniform_int_distribution<long> dist(0, fd->q() - 1);
    return FqElem::from_index(fd, dist(g));
}

inline WittVec random_witt(const WittRing* R, std::mt19937_64& g) {
    std::uniform_int_distribution<long> dist(0, R->size() - 1);
    return R->from_enum_index(dist(g));
}

inline WittVec random_witt_unit(const WittRing* R, std::mt19937_64& g) {
    for (;;) {
        WittVec v = random_witt(R, g);
        if (v.is_unit()) return v;
    }
}

} // namespace wittlift::test
