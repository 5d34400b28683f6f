#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "wittlift/witt.hpp"

// Solving the universal Witt polynomial families. The ghost recursion for
// the sum family reads
//   S_n = ( w_n(X) + w_n(Y) - sum_{i<n} p^i S_i^(p^(n-i)) ) / p^n,
// and similarly for products (ghost product) and negation (ghost negation).
// All arithmetic is exact arithmetic in Z/p^(n+1): a residue mod p^(n+1)
// determines divisibility by p^n and the quotient mod p, and a polynomial
// congruence mod p determines its p^k-th power mod p^(k+1). Every coefficient
// of the numerator is asserted divisible by p^n before dividing; a violation
// aborts with internal_integrality_failure.

namespace wittlift {

namespace {

constexpr int kVars = 2 * kMaxWittLen;
using Mono = std::array<uint32_t, kVars>;

struct MonoHash {
    size_t operator()(const Mono& m) const {
        size_t h = 1469598103934665603ull;
        for (uint32_t v : m) {
            h ^= v;
            h *= 1099511628211ull;
        }
        return h;
    }
};

using Sparse = std::unordered_map<Mono, long long, MonoHash>;

long long powll(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

void add_term(Sparse& poly, const Mono& m, long long c, long long mod) {
    c %= mod;
    if (c < 0) c += mod;
    if (c == 0) return;
    auto [it, fresh] = poly.emplace(m, c);
    if (!fresh) {
        it->second = (it->second + c) % mod;
        if (it->second == 0) poly.erase(it);
    }
}

Sparse mul(const Sparse& a, const Sparse& b, long long mod) {
    Sparse r;
    r.reserve(a.size() + b.size());
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            Mono m;
            for (int v = 0; v < kVars; ++v) m[size_t(v)] = ma[size_t(v)] + mb[size_t(v)];
            add_term(r, m, (ca * cb) % mod, mod);
            require(r.size() <= kWittTermBudget, errc::budget_exceeded,
                    "universal Witt polynomial exceeds the term budget");
        }
    }
    return r;
}

Sparse power(const Sparse& a, long long e, long long mod) {
    Sparse acc;
    acc.emplace(Mono{}, 1 % mod);
    Sparse base = a;
    while (e > 0) {
        if (e & 1) acc = mul(acc, base, mod);
        e >>= 1;
        if (e) base = mul(base, base, mod);
    }
    return acc;
}

Sparse from_poly(const WittPoly& p) {
    Sparse r;
    for (const auto& t : p.terms) {
        Mono m{};
        for (auto [v, e] : t.factors) m[size_t(v)] = e;
        r.emplace(m, t.coeff);
    }
    return r;
}

WittPoly finish_level(Sparse numerator, int p, int n, long long mod_np1,
                      std::array<uint32_t, kVars>& maxexp) {
    long long pn = powll(p, n);
    WittPoly out;
    for (auto& [m, c] : numerator) {
        require(c % pn == 0, errc::internal_integrality_failure,
                "ghost recursion produced a non-integral coefficient at level " +
                    std::to_string(n));
        long long red = (c / pn) % p;
        if (red == 0) continue;
        WittPoly::Term t;
        t.coeff = int(red);
        for (int v = 0; v < kVars; ++v)
            if (m[size_t(v)] > 0) {
                t.factors.emplace_back(uint8_t(v), m[size_t(v)]);
                maxexp[size_t(v)] = std::max(maxexp[size_t(v)], m[size_t(v)]);
            }
        out.terms.push_back(std::move(t));
    }
    (void)mod_np1;
    std::sort(out.terms.begin(), out.terms.end(), [](const WittPoly::Term& a, const WittPoly::Term& b) {
        return a.factors != b.factors ? a.factors < b.factors : a.coeff < b.coeff;
    });
    return out;
}

// p^i * (lift of prev mod p)^(p^(n-i)), correct mod p^(n+1).
Sparse scaled_prev_power(const WittPoly& prev, int p, int i, int n) {
    long long mod_pow = powll(p, n - i + 1);
    Sparse powed = power(from_poly(prev), powll(p, n - i), mod_pow);
    long long pi = powll(p, i), mod = powll(p, n + 1);
    Sparse r;
    for (const auto& [m, c] : powed) add_term(r, m, (c * pi) % mod, mod);
    return r;
}

Mono var_power(int v, uint32_t e) {
    Mono m{};
    m[size_t(v)] = e;
    return m;
}

} // namespace

std::string WittPoly::str(int d) const {
    std::ostringstream os;
    if (terms.empty()) return "0";
    bool first = true;
    for (const auto& t : terms) {
        if (!first) os << " + ";
        first = false;
        if (t.coeff != 1 || t.factors.empty()) os << t.coeff;
        bool started = t.factors.empty() || t.coeff != 1;
        for (auto [v, e] : t.factors) {
            if (started) os << "*";
            started = true;
            os << (v < d ? "X" : "Y") << int(v < d ? v : v - d);
            if (e > 1) os << "^" << e;
        }
    }
    return os.str();
}

const WittPolyFamily& witt_polynomials(int p, int d) {
    require(d >= 1 && d <= kMaxWittLen, errc::bad_length,
            "Witt length d must be in [1," + std::to_string(kMaxWittLen) + "]");
    require(p >= 2 && p <= kMaxPrime, errc::bad_request, "p out of supported range");

    static std::mutex mu;
    static std::map<std::pair<int, int>, WittPolyFamily> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, d});
    if (it != cache.end()) return it->second;

    WittPolyFamily fam;
    fam.p = p;
    fam.d = d;
    for (int n = 0; n < d; ++n) {
        long long mod = powll(p, n + 1);
        // sum: w_n(X) + w_n(Y) - carried terms
        Sparse num;
        for (int i = 0; i <= n; ++i) {
            long long pi = powll(p, i);
            uint32_t e = uint32_t(powll(p, n - i));
            add_term(num, var_power(i, e), pi, mod);
            add_term(num, var_power(d + i, e), pi, mod);
        }
        for (int i = 0; i < n; ++i)
            for (const auto& [m, c] : scaled_prev_power(fam.sum[size_t(i)], p, i, n))
                add_term(num, m, -c, mod);
        fam.sum.push_back(finish_level(std::move(num), p, n, mod, fam.max_exp_sum));

        // product: w_n(X) * w_n(Y) - carried terms
        Sparse nump;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                if (i + j > n) continue; // p^(i+j) = 0 mod p^(n+1) only when i+j > n
                Mono m{};
                m[size_t(i)] = uint32_t(powll(p, n - i));
                m[size_t(d + j)] += uint32_t(powll(p, n - j));
                add_term(nump, m, powll(p, i + j), mod);
            }
        for (int i = 0; i < n; ++i)
            for (const auto& [m, c] : scaled_prev_power(fam.prod[size_t(i)], p, i, n))
                add_term(nump, m, -c, mod);
        fam.prod.push_back(finish_level(std::move(nump), p, n, mod, fam.max_exp_prod));

        // negation: -w_n(X) - carried terms
        Sparse numn;
        for (int i = 0; i <= n; ++i)
            add_term(numn, var_power(i, uint32_t(powll(p, n - i))), -powll(p, i), mod);
        for (int i = 0; i < n; ++i)
            for (const auto& [m, c] : scaled_prev_power(fam.neg[size_t(i)], p, i, n))
                add_term(numn, m, -c, mod);
        fam.neg.push_back(finish_level(std::move(numn), p, n, mod, fam.max_exp_neg));

        for (const auto* fp : {&fam.sum, &fam.prod, &fam.neg}) fam.total_terms += fp->back().terms.size();
        require(fam.total_terms <= kWittTermBudget, errc::budget_exceeded,
                "universal Witt polynomial family for p=" + std::to_string(p) +
                    ", d=" + std::to_string(d) + " exceeds the term budget");
    }
    return cache.emplace(std::make_pair(p, d), std::move(fam)).first->second;
}

} // namespace wittlift
