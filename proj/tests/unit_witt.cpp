#include <boost/multiprecision/cpp_int.hpp>
#include <map>

#include "doctest.h"
#include "helpers.hpp"
#include "wittlift/witt.hpp"

using namespace wittlift;
using test::random_witt;
using test::random_witt_unit;

namespace {

// Independent oracle: solve the ghost recursion over the rationals with
// arbitrary-precision arithmetic, assert that every solved coefficient is an
// integer, and reduce mod p. Deliberately separate from the production
// solver (different representation, different arithmetic route).
using rat = boost::multiprecision::cpp_rational;
using ratpoly = std::map<std::vector<int>, rat>; // exponent vector over 2d vars

ratpoly rp_mul(const ratpoly& a, const ratpoly& b) {
    ratpoly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) {
            std::vector<int> m(ma.size());
            for (size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            rat& slot = r[m];
            slot += ca * cb;
            if (slot == 0) r.erase(m);
        }
    return r;
}

ratpoly rp_pow(ratpoly a, long e) {
    ratpoly acc;
    acc[std::vector<int>(a.begin()->first.size(), 0)] = 1;
    while (e > 0) {
        if (e & 1) acc = rp_mul(acc, a);
        e >>= 1;
        if (e) a = rp_mul(a, a);
    }
    return acc;
}

void rp_axpy(ratpoly& r, const ratpoly& a, const rat& s) {
    for (const auto& [m, c] : a) {
        rat& slot = r[m];
        slot += c * s;
        if (slot == 0) r.erase(m);
    }
}

ratpoly rp_var(int nvars, int v, long e) {
    std::vector<int> m(size_t(nvars), 0);
    m[size_t(v)] = int(e);
    ratpoly r;
    r[m] = 1;
    return r;
}

struct RatFamilies {
    std::vector<ratpoly> sum, prod, neg;
};

RatFamilies rational_witt_oracle(int p, int d) {
    int nv = 2 * d;
    auto ghost = [&](int n, bool ys) {
        ratpoly w;
        rat pi = 1;
        long e = 1;
        for (int i = 0; i < n; ++i) e *= p;
        for (int i = 0; i <= n; ++i) {
            rp_axpy(w, rp_var(nv, (ys ? d : 0) + i, e), pi);
            pi *= p;
            e /= p;
        }
        return w;
    };
    RatFamilies F;
    for (int n = 0; n < d; ++n) {
        rat pn = 1;
        for (int i = 0; i < n; ++i) pn *= p;

        auto solve = [&](ratpoly target, const std::vector<ratpoly>& prev) {
            // subtract sum_{i<n} p^i prev_i^(p^(n-i)), then divide by p^n
            rat ppow = 1;
            for (int i = 0; i < n; ++i) {
                long ex = 1;
                for (int k = 0; k < n - i; ++k) ex *= p;
                rp_axpy(target, rp_pow(prev[size_t(i)], ex), -ppow);
                ppow *= p;
            }
            ratpoly out;
            for (const auto& [m, c] : target) {
                rat q = c / pn;
                REQUIRE(boost::multiprecision::denominator(q) == 1); // integrality
                out[m] = q;
            }
            return out;
        };

        ratpoly gs = ghost(n, false);
        rp_axpy(gs, ghost(n, true), 1);
        F.sum.push_back(solve(std::move(gs), F.sum));

        F.prod.push_back(solve(rp_mul(ghost(n, false), ghost(n, true)), F.prod));

        ratpoly gn;
        rp_axpy(gn, ghost(n, false), -1);
        F.neg.push_back(solve(std::move(gn), F.neg));
    }
    return F;
}

// Reduce a rational-oracle polynomial mod p into the production term layout.
std::map<std::vector<int>, int> rp_mod_p(const ratpoly& a, int p) {
    std::map<std::vector<int>, int> r;
    for (const auto& [m, c] : a) {
        bigint num = boost::multiprecision::numerator(c);
        long red = long(num % p);
        if (red < 0) red += p;
        if (red) r[m] = int(red);
    }
    return r;
}

std::map<std::vector<int>, int> production_terms(const WittPoly& poly, int d) {
    std::map<std::vector<int>, int> r;
    for (const auto& t : poly.terms) {
        std::vector<int> m(size_t(2 * d), 0);
        for (auto [v, e] : t.factors) m[size_t(v)] = int(e);
        r[m] = t.coeff;
    }
    return r;
}

const FieldDesc* F2 = FieldDesc::get(2, 1);
const FieldDesc* F3 = FieldDesc::get(3, 1);
const FieldDesc* F4 = FieldDesc::get(2, 2, {1, 1, 1});

WittVec wv(const WittRing* R, std::vector<long> coord_idx) {
    std::vector<FqElem> c;
    for (long i : coord_idx) c.push_back(FqElem::from_index(R->field(), i));
    return R->from_coords(c);
}

} // namespace

TEST_CASE("universal polynomials match the classical closed forms") {
    const auto& f22 = witt_polynomials(2, 2);
    // S_1 = X_1 + Y_1 + X_0*Y_0 over F_2
    auto terms = production_terms(f22.sum[1], 2);
    REQUIRE(terms.size() == 3);
    CHECK(terms[{0, 1, 0, 0}] == 1);
    CHECK(terms[{0, 0, 0, 1}] == 1);
    CHECK(terms[{1, 0, 1, 0}] == 1);

    const auto& f32 = witt_polynomials(3, 2);
    // S_1 = X_1 + Y_1 - X_0^2 Y_0 - X_0 Y_0^2 over F_3
    auto t3 = production_terms(f32.sum[1], 2);
    REQUIRE(t3.size() == 4);
    CHECK(t3[{0, 1, 0, 0}] == 1);
    CHECK(t3[{0, 0, 0, 1}] == 1);
    CHECK(t3[{2, 0, 1, 0}] == 2);
    CHECK(t3[{1, 0, 2, 0}] == 2);

    // d = 1: S_0 = X_0 + Y_0, P_0 = X_0*Y_0 for any p
    for (int p : {2, 3, 5, 7, 11, 13}) {
        const auto& f = witt_polynomials(p, 1);
        auto s0 = production_terms(f.sum[0], 1);
        REQUIRE(s0.size() == 2);
        CHECK(s0[{1, 0}] == 1);
        CHECK(s0[{0, 1}] == 1);
        auto p0 = production_terms(f.prod[0], 1);
        REQUIRE(p0.size() == 1);
        CHECK(p0[{1, 1}] == 1);
    }
}

TEST_CASE("production families agree with the exact-rational oracle") {
    for (auto [p, d] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}}) {
        auto oracle = rational_witt_oracle(p, d);
        const auto& fam = witt_polynomials(p, d);
        for (int n = 0; n < d; ++n) {
            CHECK(production_terms(fam.sum[size_t(n)], d) == rp_mod_p(oracle.sum[size_t(n)], p));
            CHECK(production_terms(fam.prod[size_t(n)], d) == rp_mod_p(oracle.prod[size_t(n)], p));
            CHECK(production_terms(fam.neg[size_t(n)], d) == rp_mod_p(oracle.neg[size_t(n)], p));
        }
    }
}

TEST_CASE("ring operation examples") {
    const WittRing* R22 = WittRing::get(F2, 2);
    CHECK(wv(R22, {1, 0}) + wv(R22, {1, 0}) == wv(R22, {0, 1}));
    CHECK(wv(R22, {0, 1}) * wv(R22, {0, 1}) == wv(R22, {0, 0}));

    const WittRing* R32 = WittRing::get(F3, 2);
    CHECK(wv(R32, {1, 0}) + wv(R32, {1, 0}) == wv(R32, {2, 1}));
}

TEST_CASE("verschiebung is the coordinate shift") {
    const WittRing* R2 = WittRing::get(F3, 2);
    CHECK(R2->verschiebung(wv(R2, {1, 0})) == wv(R2, {0, 1}));
    const WittRing* R3 = WittRing::get(F3, 3);
    CHECK(R3->verschiebung(wv(R3, {2, 1, 2})) == wv(R3, {0, 2, 1}));
    const WittRing* R1 = WittRing::get(F3, 1);
    CHECK(R1->verschiebung(wv(R1, {2})) == R1->zero());
}

TEST_CASE("frobenius: prime-field identity, F_4 squaring, F o V = V o F = p") {
    const WittRing* R = WittRing::get(F3, 3);
    auto g = test::rng(11);
    for (int i = 0; i < 20; ++i) {
        WittVec a = random_witt(R, g);
        CHECK(R->frobenius(a) == a);
    }
    const WittRing* R4 = WittRing::get(F4, 1);
    WittVec omega = R4->teichmuller(FqElem::gen(F4));
    CHECK(R4->frobenius(omega) == R4->teichmuller(FqElem::gen(F4) * FqElem::gen(F4)));

    for (const FieldDesc* fd : {F2, F3, F4}) {
        for (int d = 1; d <= 3; ++d) {
            const WittRing* W = WittRing::get(fd, d);
            auto h = test::rng(uint64_t(1000 + fd->q() * 10 + d));
            for (int i = 0; i < 25; ++i) {
                WittVec a = random_witt(W, h);
                WittVec pa = a.scaled(fd->p());
                CHECK(W->frobenius(W->verschiebung(a)) == pa);
                CHECK(W->verschiebung(W->frobenius(a)) == pa);
            }
        }
    }
}

TEST_CASE("teichmuller lift: endpoints and multiplicativity") {
    const WittRing* R = WittRing::get(F2, 2);
    CHECK(R->teichmuller(FqElem::one(F2)) == R->one());
    CHECK(R->teichmuller(FqElem::zero(F2)) == R->zero());
    CHECK(R->teichmuller(FqElem::one(F2)) + R->teichmuller(FqElem::one(F2)) == wv(R, {0, 1}));

    const WittRing* R4 = WittRing::get(F4, 3);
    auto g = test::rng(7);
    for (int i = 0; i < 30; ++i) {
        FqElem x = test::random_fq(F4, g), y = test::random_fq(F4, g);
        CHECK(R4->teichmuller(x * y) == R4->teichmuller(x) * R4->teichmuller(y));
    }
}

TEST_CASE("ghost components and ghost comparison") {
    const WittRing* R = WittRing::get(F2, 2);
    GhostVec g1 = R->ghost(wv(R, {1, 0}));
    CHECK(g1.values == std::vector<bigint>{1, 1});
    GhostVec g2 = R->ghost(wv(R, {0, 1}));
    CHECK(g2.values == std::vector<bigint>{0, 2});
    CHECK(R->ghost_compare(WittOp::add, wv(R, {1, 0}), wv(R, {1, 0})));

    for (int p : {2, 3, 5}) {
        for (int d = 1; d <= 4; ++d) {
            const WittRing* W = WittRing::get(FieldDesc::get(p, 1), d);
            auto g = test::rng(uint64_t(p * 100 + d));
            for (int i = 0; i < 30; ++i) {
                WittVec a = random_witt(W, g), b = random_witt(W, g);
                CHECK(W->ghost_compare(WittOp::add, a, b));
                CHECK(W->ghost_compare(WittOp::mul, a, b));
                CHECK(W->ghost_compare(WittOp::neg, a, b));
            }
        }
    }
}

TEST_CASE("Z/p^d identification") {
    const WittRing* R22 = WittRing::get(F2, 2);
    CHECK(R22->to_residue(wv(R22, {0, 1})) == 2);
    CHECK(R22->from_residue(2) == wv(R22, {0, 1}));
    const WittRing* R32 = WittRing::get(F3, 2);
    CHECK(R32->to_residue(wv(R32, {1, 0})) == 1);
    CHECK(R32->from_residue(1) == wv(R32, {1, 0}));

    for (int p : {2, 3, 5}) {
        for (int d = 1; d <= (p == 2 ? 4 : p == 3 ? 3 : 2); ++d) {
            const WittRing* W = WittRing::get(FieldDesc::get(p, 1), d);
            long pd = W->pd();
            // bijection
            std::vector<bool> seen(size_t(pd), false);
            for (long i = 0; i < W->size(); ++i) {
                long z = W->to_residue(W->from_enum_index(i));
                CHECK(!seen[size_t(z)]);
                seen[size_t(z)] = true;
                CHECK(W->from_residue(z) == W->from_enum_index(i));
            }
            // full pairwise ring homomorphism at these small sizes
            for (long x = 0; x < pd; ++x)
                for (long y = 0; y < pd; ++y) {
                    WittVec a = W->from_residue(x), b = W->from_residue(y);
                    CHECK(W->to_residue(a + b) == (x + y) % pd);
                    CHECK(W->to_residue(a * b) == (x * y) % pd);
                }
        }
    }
}

TEST_CASE("reduce is truncation and a ring homomorphism") {
    const WittRing* R = WittRing::get(F3, 3);
    auto g = test::rng(23);
    for (int i = 0; i < 40; ++i) {
        WittVec a = random_witt(R, g), b = random_witt(R, g);
        for (int r = 1; r <= 3; ++r) {
            WittVec ra = R->reduce(a, r);
            CHECK(ra.ring()->d() == r);
            for (int k = 0; k < r; ++k) CHECK(ra.coord(k) == a.coord(k));
            CHECK(R->reduce(a + b, r) == ra + R->reduce(b, r));
            CHECK(R->reduce(a * b, r) == ra * R->reduce(b, r));
        }
        CHECK(R->reduce(a, 3) == a);
    }
}

TEST_CASE("ring axioms on random triples") {
    for (const FieldDesc* fd : {F2, F3, F4}) {
        for (int d : {1, 2, 3}) {
            const WittRing* R = WittRing::get(fd, d);
            auto g = test::rng(uint64_t(fd->q() * 31 + d));
            for (int i = 0; i < 20; ++i) {
                WittVec a = random_witt(R, g), b = random_witt(R, g), c = random_witt(R, g);
                CHECK((a + b) + c == a + (b + c));
                CHECK(a + b == b + a);
                CHECK((a * b) * c == a * (b * c));
                CHECK(a * b == b * a);
                CHECK(a * (b + c) == a * b + a * c);
                CHECK(a + R->zero() == a);
                CHECK(a * R->one() == a);
                CHECK(a + (-a) == R->zero());
            }
        }
    }
}

TEST_CASE("unit inverses") {
    for (const FieldDesc* fd : {F2, F3, F4}) {
        const WittRing* R = WittRing::get(fd, 3);
        auto g = test::rng(uint64_t(fd->q()));
        for (int i = 0; i < 25; ++i) {
            WittVec a = random_witt_unit(R, g);
            CHECK(a * a.inv() == R->one());
        }
        CHECK_THROWS_AS(R->inverse(R->verschiebung(R->one())), Error);
    }
}

TEST_CASE("error paths: mixed rings, bad lengths, unsupported field") {
    const WittRing* R22 = WittRing::get(F2, 2);
    const WittRing* R23 = WittRing::get(F2, 3);
    CHECK_THROWS_AS(R22->one() + R23->one(), Error);
    CHECK_THROWS_AS(R22->reduce(R22->one(), 3), Error);
    const WittRing* R4 = WittRing::get(F4, 2);
    CHECK_THROWS_AS(R4->ghost(R4->one()), Error);
    CHECK_THROWS_AS(R4->to_residue(R4->one()), Error);
}

TEST_CASE("teichmuller splits the residue projection on units") {
    for (const FieldDesc* fd : {F2, F3, F4}) {
        const WittRing* R = WittRing::get(fd, 3);
        for (long i = 1; i < fd->q(); ++i) {
            FqElem x = FqElem::from_index(fd, i);
            CHECK(R->teichmuller(x).coord(0) == x);
            CHECK(R->reduce(R->teichmuller(x), 1) == WittRing::get(fd, 1)->teichmuller(x));
        }
    }
}
