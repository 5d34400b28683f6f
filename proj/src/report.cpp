#include "wittlift/report.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "wittlift/error.hpp"
#include "wittlift/lifting.hpp"
#include "wittlift/yoneda.hpp"

namespace wittlift {

Budgets Budgets::current() {
    Budgets b{kBruteForceBudget, kLinkedEnumBudget};
    if (const char* env = std::getenv("WITTLIFT_BUDGET")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v > 0) {
            b.brute_force = v;
            b.linked = v;
        }
    }
    return b;
}

uint64_t fnv1a(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string digest_hex(const std::string& bytes) {
    static const char* hexd = "0123456789abcdef";
    uint64_t h = fnv1a(bytes);
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[size_t(i)] = hexd[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::string digest_of_files(const std::vector<std::string>& paths) {
    std::ostringstream all;
    for (const auto& p : paths) {
        std::ifstream in(p, std::ios::binary);
        require(bool(in), errc::parse_error, "cannot open " + p);
        all << in.rdbuf();
    }
    return digest_hex(all.str());
}

} // namespace wittlift
