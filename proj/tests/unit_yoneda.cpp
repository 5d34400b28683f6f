#include "doctest.h"
#include "helpers.hpp"
#include "wittlift/yoneda.hpp"

using namespace wittlift;

namespace {

const FieldDesc* F2 = FieldDesc::get(2, 1);
const FieldDesc* F3 = FieldDesc::get(3, 1);

GroupPtr C2() { return FiniteGroup::from_permutations(2, {{1, 0}}); }
GroupPtr C3() { return FiniteGroup::from_permutations(3, {{1, 2, 0}}); }

// the nonzero class in H^1(C2, F_2) with trivial outer terms
Cochain nonzero_c2_cocycle(const GModule& hom) {
    Cochain c = Cochain::zero(hom, 1);
    c.at1(1)[0] = hom.ring()->one();
    return c;
}

} // namespace

TEST_CASE("split extensions have zero class; the nonzero class gives the regular module") {
    auto c2 = C2();
    const WittRing* W = WittRing::get(F2, 1);
    GModule triv = GModule::trivial(W, c2, {1});
    GModule hom = hom_module(triv, triv);

    Extension1 split = extension_of_class(Cochain::zero(hom, 1), triv, triv);
    ExtClass1 cls = class_of_extension(split);
    CHECK(cls.coords == std::vector<long>{0});

    Extension1 reg = extension_of_class(nonzero_c2_cocycle(hom), triv, triv);
    ExtClass1 cls2 = class_of_extension(reg);
    CHECK(cls2.coords == std::vector<long>{1});
    // middle is the regular representation: the generator acts by [[1,1],[0,1]]
    CHECK(reg.mid.action(1).at(0, 1) == W->one());
    CHECK(reg.mid.action(1).at(0, 0) == W->one());
    // ... which is conjugate to the swap permutation matrix over F_2
    GModule perm = GModule::permutation(W, GSet::regular(c2));
    WMatrix T = WMatrix::zeros(W, 2, 2);
    T.at(0, 0) = W->one();
    T.at(1, 0) = W->one();
    T.at(1, 1) = W->one();
    CHECK(T * perm.action(1) == reg.mid.action(1) * T);
}

TEST_CASE("round trip on classes for random cocycles") {
    struct Case {
        GroupPtr G;
        const FieldDesc* fd;
        int d;
    };
    for (auto [G, fd, d] : {Case{C2(), F2, 1}, Case{C2(), F2, 2}, Case{C3(), F3, 1}, Case{C3(), F3, 2}}) {
        const WittRing* W = WittRing::get(fd, d);
        GModule quo = GModule::trivial(W, G, std::vector<int>(1, d));
        GModule sub = GModule::permutation(W, GSet::regular(G));
        GModule hom = hom_module(quo, sub);
        CohomologyGroup h1 = cohomology_group(hom, 1);
        // every class: build the extension and recover the class
        long total = h1.order();
        for (long code = 0; code < total; ++code) {
            std::vector<long> coords;
            long c = code;
            for (int w : h1.torsion_exps) {
                long mod = 1;
                for (int i = 0; i < w; ++i) mod *= fd->p();
                coords.push_back(c % mod);
                c /= mod;
            }
            Cochain z = h1.rep_combination(coords);
            Extension1 e = extension_of_class(z, quo, sub);
            ExtClass1 back = class_of_extension(e);
            CHECK(back.coords == coords);
        }
    }
}

TEST_CASE("class is independent of the chosen section") {
    auto c2 = C2();
    const WittRing* W = WittRing::get(F2, 2);
    GModule triv = GModule::trivial(W, c2, {2});
    GModule hom = hom_module(triv, triv);
    // extension with c(g) = 2 over Z/4
    Cochain z = Cochain::zero(hom, 1);
    z.at1(1)[0] = W->from_int(2);
    Extension1 e = extension_of_class(z, triv, triv);

    WMatrix s1 = default_section(e);
    // second section: add an element of the image of the inclusion
    WMatrix s2 = s1;
    s2.at(0, 0) = s2.at(0, 0) + W->from_int(3);
    ExtClass1 c1 = class_with_section(e, s1);
    ExtClass1 c2cls = class_with_section(e, s2);
    CHECK(c1.coords == c2cls.coords);
    CHECK_FALSE(c1.h1.is_coboundary(c1.cocycle));
    // the two cocycles differ by an exact coboundary
    CHECK(c1.h1.is_coboundary(c1.cocycle.sub(c2cls.cocycle)));
}

TEST_CASE("transform: pushforward identity, pullback along zero, Baer sum with split") {
    auto c2 = C2();
    const WittRing* W = WittRing::get(F2, 1);
    GModule triv = GModule::trivial(W, c2, {1});
    GModule hom = hom_module(triv, triv);
    Extension1 e = extension_of_class(nonzero_c2_cocycle(hom), triv, triv);

    Extension1 epush = pushforward(e, GModMap::identity(triv));
    CHECK(class_of_extension(epush).coords == std::vector<long>{1});

    Extension1 epull = pullback(e, GModMap::zero(triv, triv));
    CHECK(class_of_extension(epull).coords == std::vector<long>{0});

    Extension1 split = extension_of_class(Cochain::zero(hom, 1), triv, triv);
    Extension1 esum = baer_sum(e, split);
    CHECK(class_of_extension(esum).coords == std::vector<long>{1});
    Extension1 etwice = baer_sum(e, e);
    CHECK(class_of_extension(etwice).coords == std::vector<long>{0});
}

TEST_CASE("pushforward and pullback commute on classes") {
    auto c2 = C2();
    const WittRing* W = WittRing::get(F2, 2);
    GModule quo = GModule::trivial(W, c2, {2});
    Character sgn = Character::from_values(W, c2, {W->one(), W->from_int(3)});
    GModule sub = direct_sum(sgn.rank1_module(), GModule::trivial(W, c2, {2}));
    GModule hom = hom_module(quo, sub);
    CohomologyGroup h1 = cohomology_group(hom, 1);
    REQUIRE(!h1.is_zero());
    Extension1 e = extension_of_class(h1.reps[0], quo, sub);

    // f: sub -> sub by doubling; g: quo -> quo by multiplication with 3
    WMatrix fmat = WMatrix::identity(W, sub.rank()).scaled(W->from_int(2));
    GModMap f{sub, sub, fmat};
    WMatrix gmat = WMatrix::identity(W, 1).scaled(W->from_int(3));
    GModMap g{quo, quo, gmat};
    REQUIRE(f.is_equivariant());
    REQUIRE(g.is_equivariant());

    Extension1 fg = pushforward(pullback(e, g), f);
    Extension1 gf = pullback(pushforward(e, f), g);
    GModule hom2 = hom_module(quo, sub);
    ExtClass1 a = class_of_extension(fg);
    ExtClass1 b = class_of_extension(gf);
    CHECK(a.coords == b.coords);
}

TEST_CASE("linked_brute agrees with class equality") {
    auto c2 = C2();
    const WittRing* W = WittRing::get(F2, 1);
    GModule triv = GModule::trivial(W, c2, {1});
    GModule hom = hom_module(triv, triv);
    Extension1 split = extension_of_class(Cochain::zero(hom, 1), triv, triv);
    Extension1 reg = extension_of_class(nonzero_c2_cocycle(hom), triv, triv);

    CHECK(linked_brute(split, split));
    CHECK(linked_brute(reg, reg));
    CHECK_FALSE(linked_brute(split, reg));
    CHECK_FALSE(linked_brute(reg, split));

    // a rebuilt extension with the same class is linked to the original
    Extension1 rebuilt = baer_sum(reg, split);
    CHECK(linked_brute(reg, rebuilt));

    // over Z/4 with the order-2 class
    const WittRing* W4 = WittRing::get(F2, 2);
    GModule triv4 = GModule::trivial(W4, c2, {2});
    GModule hom4 = hom_module(triv4, triv4);
    Cochain z = Cochain::zero(hom4, 1);
    z.at1(1)[0] = W4->from_int(2);
    Extension1 e4 = extension_of_class(z, triv4, triv4);
    Extension1 s4 = extension_of_class(Cochain::zero(hom4, 1), triv4, triv4);
    CHECK(linked_brute(e4, e4));
    CHECK_FALSE(linked_brute(e4, s4));
    CHECK(linked_brute(s4, baer_sum(e4, e4)));
}

TEST_CASE("exactness validation rejects broken data") {
    auto c2 = C2();
    const WittRing* W = WittRing::get(F2, 1);
    GModule triv = GModule::trivial(W, c2, {1});
    GModule mid = GModule::trivial(W, c2, {1, 1});
    WMatrix incl = WMatrix::zeros(W, 2, 1);
    WMatrix proj = WMatrix::zeros(W, 1, 2);
    // zero inclusion is not injective
    proj.at(0, 1) = W->one();
    CHECK_THROWS_AS(Extension1::make(triv, mid, triv, incl, proj), Error);
    // non-exact middle: incl and proj hit the same coordinate
    incl.at(1, 0) = W->one();
    CHECK_THROWS_AS(Extension1::make(triv, mid, triv, incl, proj), Error);
}
