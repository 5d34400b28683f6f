#pragma once

#include "wittlift/cohomology.hpp"

namespace wittlift {

inline constexpr long kLinkedEnumBudget = 1L << 16;

// A short exact sequence 0 -> sub -> mid -> quo -> 0 of modules over one
// group and ring, with quo free. Exactness is verified on the flat lattices.
struct Extension1 {
    GModule sub, mid, quo;
    WMatrix incl; // mid.rank x sub.rank
    WMatrix proj; // quo.rank x mid.rank

    static Extension1 make(GModule sub, GModule mid, GModule quo, WMatrix incl, WMatrix proj);
    void validate() const;
};

// The class of an extension in H^1(G, Hom(quo, sub)).
struct ExtClass1 {
    GModule hom;              // Hom(quo, sub)
    Cochain cocycle;          // values in hom
    CohomologyGroup h1;       // presentation of H^1(G, hom)
    std::vector<long> coords; // class coordinates
};

// A W-linear section of proj (not equivariant in general): proj o s = id.
WMatrix default_section(const Extension1& e);
// The extension class computed through the given section.
ExtClass1 class_with_section(const Extension1& e, const WMatrix& s);
ExtClass1 class_of_extension(const Extension1& e);

// The middle module sub ⊕ quo with action [[rho_sub, c(g) rho_quo], [0, rho_quo]].
Extension1 extension_of_class(const Cochain& c, const GModule& quo, const GModule& sub);

Extension1 pushforward(const Extension1& e, const GModMap& f); // f: sub -> sub'
Extension1 pullback(const Extension1& e, const GModMap& g);    // g: quo' -> quo
Extension1 baer_sum(const Extension1& e1, const Extension1& e2);

// Exhaustive search for an equivariant middle map phi: mid1 -> mid2 with
// phi o incl1 = incl2 and proj2 o phi = proj1. Independent of the class
// machinery; agrees with class equality at n = 1.
bool linked_brute(const Extension1& e1, const Extension1& e2, long budget = kLinkedEnumBudget);

} // namespace wittlift
