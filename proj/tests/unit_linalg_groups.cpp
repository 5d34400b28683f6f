#include <numeric>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "wittlift/groups.hpp"
#include "wittlift/zpdmat.hpp"

using namespace wittlift;

namespace {

ZpdMat zm(const ZpdRing& R, int rows, int cols, std::vector<long> vals) {
    ZpdMat A = ZpdMat::zeros(R, rows, cols);
    for (size_t i = 0; i < vals.size(); ++i) A.a[i] = R.norm(vals[i]);
    return A;
}

// 2x2 permutation fixtures
GroupPtr C2() { return FiniteGroup::from_permutations(2, {{1, 0}}); }
GroupPtr C4() { return FiniteGroup::from_permutations(4, {{1, 2, 3, 0}}); }
GroupPtr S3() { return FiniteGroup::from_permutations(3, {{1, 2, 0}, {1, 0, 2}}); }
GroupPtr V4() { return FiniteGroup::from_permutations(4, {{1, 0, 3, 2}, {2, 3, 0, 1}}); }

} // namespace

TEST_CASE("normal form: identity, single entries, and the 2x2 example checked by brute force") {
    ZpdRing R(2, 2); // Z/4
    auto nf1 = normal_form(R, ZpdMat::identity(R, 3));
    CHECK(nf1.valuations() == std::vector<int>{0, 0, 0});

    auto nf2 = normal_form(R, zm(R, 1, 1, {2}));
    CHECK(nf2.valuations() == std::vector<int>{1});

    ZpdMat A = zm(R, 2, 2, {2, 1, 0, 2});
    auto nf = normal_form(R, A);
    // U*A*V == D exactly
    CHECK(zequal(zmul(R, zmul(R, nf.nf.U, A), nf.nf.V), nf.nf.D));
    CHECK(zequal(zmul(R, nf.nf.U, nf.nf.Uinv), ZpdMat::identity(R, 2)));
    CHECK(zequal(zmul(R, nf.nf.V, nf.nf.Vinv), ZpdMat::identity(R, 2)));
    // brute-force kernel and image over all of (Z/4)^2 as the oracle
    std::set<std::pair<long, long>> kernel_brute, image_brute;
    for (long x = 0; x < 4; ++x)
        for (long y = 0; y < 4; ++y) {
            ZpdVec v{x, y};
            ZpdVec w = zapply(R, A, v);
            image_brute.insert({w[0], w[1]});
            if (w[0] == 0 && w[1] == 0) kernel_brute.insert({x, y});
        }
    // engine kernel spans exactly the brute kernel
    ZpdMat K = zkernel(R, nf);
    std::set<std::pair<long, long>> kernel_span;
    std::vector<long> coef(size_t(K.cols), 0);
    for (long code = 0; code < 16; ++code) {
        long c = code;
        for (int j = 0; j < K.cols && j < 2; ++j) {
            coef[size_t(j)] = c % 4;
            c /= 4;
        }
        ZpdVec v(2, 0);
        for (int j = 0; j < K.cols; ++j)
            for (int i = 0; i < 2; ++i) v[size_t(i)] = R.add(v[size_t(i)], R.mul(K.at(i, j), coef[size_t(j)]));
        kernel_span.insert({v[0], v[1]});
    }
    CHECK(kernel_span == kernel_brute);
    // solvability matches brute image
    for (long x = 0; x < 4; ++x)
        for (long y = 0; y < 4; ++y) {
            ZpdVec b{x, y}, sol;
            bool ok = zsolve(R, nf, b, sol);
            CHECK(ok == bool(image_brute.count({x, y})));
            if (ok) {
                ZpdVec w = zapply(R, A, sol);
                CHECK(w == b);
            }
        }
}

TEST_CASE("normal form: random matrices reproduce U*A*V = D with ascending valuations") {
    auto g = test::rng(99);
    for (int p : {2, 3, 5}) {
        for (int d : {1, 2, 3}) {
            ZpdRing R(p, d);
            std::uniform_int_distribution<long> dist(0, R.mod - 1);
            for (int trial = 0; trial < 20; ++trial) {
                int rows = 1 + int(g() % 5), cols = 1 + int(g() % 5);
                ZpdMat A = ZpdMat::zeros(R, rows, cols);
                for (auto& v : A.a) v = dist(g);
                auto nf = normal_form(R, A);
                CHECK(zequal(zmul(R, zmul(R, nf.nf.U, A), nf.nf.V), nf.nf.D));
                CHECK(zequal(zmul(R, nf.nf.Uinv, nf.nf.U), ZpdMat::identity(R, rows)));
                CHECK(zequal(zmul(R, nf.nf.Vinv, nf.nf.V), ZpdMat::identity(R, cols)));
                for (size_t i = 1; i < nf.valuations().size(); ++i)
                    CHECK(nf.valuations()[i - 1] <= nf.valuations()[i]);
                // D is diagonal with the stated valuations
                for (int i = 0; i < rows; ++i)
                    for (int j = 0; j < cols; ++j) {
                        if (i != j) CHECK(nf.nf.D.at(i, j) == 0);
                        else if (i < int(nf.valuations().size()))
                            CHECK(nf.nf.D.at(i, j) == R.pshift(nf.valuations()[size_t(i)]) % R.mod);
                    }
            }
        }
    }
}

TEST_CASE("matrix inverse over Z/p^d") {
    ZpdRing R(2, 3);
    ZpdMat A = zm(R, 2, 2, {1, 2, 3, 7});
    ZpdMat Ainv = zinverse(R, A);
    CHECK(zequal(zmul(R, A, Ainv), ZpdMat::identity(R, 2)));
    CHECK_THROWS_AS(zinverse(R, zm(R, 2, 2, {2, 0, 0, 1})), Error);
}

TEST_CASE("group construction examples") {
    CHECK(C2()->order() == 2);
    auto s3 = S3();
    CHECK(s3->order() == 6);
    CHECK_FALSE(s3->is_abelian());
    auto v4 = V4();
    CHECK(v4->order() == 4);
    for (int g = 0; g < 4; ++g) CHECK(v4->element_order(g) == (g == 0 ? 1 : 2));
    CHECK_THROWS_AS(FiniteGroup::from_permutations(2, {{0, 0}}), Error);
}

TEST_CASE("from_table validates and normalizes") {
    // C3 with identity at index 1
    std::vector<std::vector<int>> t{{2, 0, 1}, {0, 1, 2}, {1, 2, 0}};
    auto G = FiniteGroup::from_table(t);
    CHECK(G->order() == 3);
    CHECK(G->mul(0, 1) == 1);
    CHECK(G->is_cyclic());
    std::vector<std::vector<int>> bad{{0, 1}, {1, 1}};
    CHECK_THROWS_AS(FiniteGroup::from_table(bad), Error);
}

TEST_CASE("subgroup enumeration with independent subset recount") {
    CHECK(C4()->subgroups().size() == 3);
    CHECK(S3()->subgroups().size() == 6);
    CHECK(FiniteGroup::from_permutations(1, {})->subgroups().size() == 1);

    // independent recount: test every identity-containing subset for closure
    for (auto G : {C2(), C4(), S3(), V4()}) {
        int n = G->order();
        int count = 0;
        for (long mask = 0; mask < (1L << (n - 1)); ++mask) {
            std::vector<int> subset{0};
            for (int b = 0; b < n - 1; ++b)
                if (mask & (1L << b)) subset.push_back(b + 1);
            bool closed = true;
            for (int a : subset)
                for (int b : subset) {
                    bool ok = std::find(subset.begin(), subset.end(), G->mul(a, b)) != subset.end();
                    closed = closed && ok;
                }
            if (closed) ++count;
        }
        CHECK(count == int(G->subgroups().size()));
        for (const auto& S : G->subgroups()) {
            auto sg = S.as_group(); // validates closure internally
            CHECK(sg.group->order() == S.order());
        }
    }
}

TEST_CASE("sylow subgroups") {
    auto s3 = S3();
    CHECK(s3->sylow(3).order() == 3);
    CHECK(s3->sylow(2).order() == 2);
    CHECK(s3->sylow(5).order() == 1);
    auto v4 = V4();
    CHECK(v4->sylow(2).order() == 4);
}

TEST_CASE("orbits and stabilizers") {
    auto c2 = C2();
    GSet triv = GSet::trivial(c2, 3);
    auto o1 = orbits(triv);
    CHECK(o1.size() == 3);
    for (const auto& o : o1) CHECK(o.stabilizer.order() == 2);

    GSet reg = GSet::regular(c2);
    auto o2 = orbits(reg);
    CHECK(o2.size() == 1);
    CHECK(o2[0].stabilizer.order() == 1);

    GSet prod = GSet::product(reg, reg);
    auto o3 = orbits(prod);
    CHECK(o3.size() == 2);
    for (const auto& o : o3) {
        CHECK(o.points.size() == 2);
        CHECK(o.stabilizer.order() == 1);
        CHECK(int(o.points.size()) * o.stabilizer.order() == c2->order());
    }

    // orbit-stabilizer on coset spaces of S3
    auto s3 = S3();
    for (const auto& H : s3->subgroups()) {
        GSet cs = GSet::cosets(s3, H.elements);
        cs.validate();
        for (const auto& o : orbits(cs))
            CHECK(int(o.points.size()) * o.stabilizer.order() == s3->order());
    }
}

TEST_CASE("abelianization and commutators") {
    auto s3 = S3();
    CHECK(s3->commutator_subgroup().size() == 3);
    auto ab = s3->abelianization();
    CHECK(ab.group->order() == 2);
    auto v4 = V4();
    CHECK(v4->abelianization().group->order() == 4);
}
