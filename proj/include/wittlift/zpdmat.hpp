#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wittlift/smith.hpp"

namespace wittlift {

// The coefficient ring Z/p^d used by all flattened linear algebra.
struct ZpdRing {
    using Elem = long;
    int p = 0;
    int d = 0;
    long mod = 0;

    ZpdRing() = default;
    ZpdRing(int p_, int d_) : p(p_), d(d_) {
        mod = 1;
        for (int i = 0; i < d; ++i) mod *= p;
    }

    int nilpotency() const { return d; }
    long zero() const { return 0; }
    long one() const { return 1 % mod; }
    bool is_zero(long e) const { return e == 0; }
    long norm(long e) const {
        long r = e % mod;
        return r < 0 ? r + mod : r;
    }
    long add(long a, long b) const {
        long s = a + b;
        return s >= mod ? s - mod : s;
    }
    long sub(long a, long b) const {
        long s = a - b;
        return s < 0 ? s + mod : s;
    }
    long mul(long a, long b) const { return (a * b) % mod; }
    long neg(long a) const { return a == 0 ? 0 : mod - a; }
    int val(long e) const {
        if (e == 0) return d;
        int v = 0;
        while (e % p == 0) {
            e /= p;
            ++v;
        }
        return v;
    }
    long pshift(int v) const {
        long r = 1 % mod;
        for (int i = 0; i < v; ++i) r = (r * p) % mod;
        return r;
    }
    long div_pow(long e, int v) const {
        long q = e;
        for (int i = 0; i < v; ++i) q /= p;
        return q;
    }
    long unit_inv(long u) const { // u prime to p
        long t = 1, base = u, e = mod / p * (p - 1) - 1; // |units| - 1
        while (e > 0) {
            if (e & 1) t = mul(t, base);
            base = mul(base, base);
            e >>= 1;
        }
        return t;
    }
};

using ZpdMat = SmithMat<ZpdRing>;
using ZpdVec = std::vector<long>;

// U*A*V = diag(p^(v_i)) with all four transforms materialized.
struct NormalFormResult {
    ZpdRing R;
    int rows = 0, cols = 0;
    SmithResult<ZpdRing> nf;
    const std::vector<int>& valuations() const { return nf.val; }
    // number of diagonal entries with valuation < d
    int rank() const;
};

NormalFormResult normal_form(const ZpdRing& R, const ZpdMat& A);

ZpdMat zmul(const ZpdRing& R, const ZpdMat& A, const ZpdMat& B);
ZpdVec zapply(const ZpdRing& R, const ZpdMat& A, const ZpdVec& x);
ZpdMat zadd(const ZpdRing& R, const ZpdMat& A, const ZpdMat& B);
ZpdMat zsub(const ZpdRing& R, const ZpdMat& A, const ZpdMat& B);
ZpdMat zhstack(const ZpdMat& A, const ZpdMat& B);
ZpdMat zvstack(const ZpdMat& A, const ZpdMat& B);
ZpdMat ztranspose(const ZpdMat& A);
ZpdMat zcol(const ZpdMat& A, int j);
bool zequal(const ZpdMat& A, const ZpdMat& B);
bool zis_zero(const ZpdMat& A);
std::string zstr(const ZpdMat& A);

// Solve A x = b; false when unsolvable.
bool zsolve(const ZpdRing& R, const NormalFormResult& nf, const ZpdVec& b, ZpdVec& x);
// Kernel generators as columns.
ZpdMat zkernel(const ZpdRing& R, const NormalFormResult& nf);
// Inverse of a square matrix; not_invertible if any valuation > 0.
ZpdMat zinverse(const ZpdRing& R, const ZpdMat& A);
// Is every column of B in the column span of A?
bool zspans(const ZpdRing& R, const NormalFormResult& nfA, const ZpdMat& B);

} // namespace wittlift
