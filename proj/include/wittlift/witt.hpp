#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "wittlift/fq.hpp"

namespace wittlift {

using bigint = boost::multiprecision::cpp_int;

class WittRing;

// One universal Witt polynomial in the variables X_0..X_{d-1}, Y_0..Y_{d-1}
// (encoded 0..d-1 and d..2d-1), with coefficients reduced mod p. Terms are
// sorted for reproducibility.
struct WittPoly {
    struct Term {
        int coeff; // in [1, p)
        std::vector<std::pair<uint8_t, uint32_t>> factors; // (var, exp), exp >= 1
    };
    std::vector<Term> terms;
    std::string str(int d) const; // human-readable, X0,X1,..,Y0,..
};

// The sum / product / negation families for a fixed (p, d), solved from the
// ghost-component recursion with an exact divisibility check on every
// coefficient (internal_integrality_failure on violation).
struct WittPolyFamily {
    int p = 0;
    int d = 0;
    std::vector<WittPoly> sum;   // S_0..S_{d-1}
    std::vector<WittPoly> prod;  // P_0..P_{d-1}
    std::vector<WittPoly> neg;   // N_0..N_{d-1}
    std::array<uint32_t, 2 * kMaxWittLen> max_exp_sum{}, max_exp_prod{}, max_exp_neg{};
    size_t total_terms = 0;
};

// Solve the families for (p, d). Results are cached per (p, d); the cache is
// initialize-once, read-many. term_budget guards combinatorial blowup for
// large (p, d) pairs.
const WittPolyFamily& witt_polynomials(int p, int d);

inline constexpr size_t kWittTermBudget = 3'000'000;

// An element of W_d(F_q): d coordinates in F_q, flattened row-major into a
// fixed inline buffer (d <= 5, m <= 4). Elements interoperate only within the
// same interned ring.
class WittVec {
public:
    WittVec() : ring_(nullptr), c_{} {}

    const WittRing* ring() const { return ring_; }
    FqElem coord(int i) const;
    std::vector<FqElem> coords() const;
    bool is_zero() const;
    bool is_unit() const; // first coordinate nonzero

    WittVec operator+(const WittVec& o) const;
    WittVec operator-(const WittVec& o) const;
    WittVec operator*(const WittVec& o) const;
    WittVec operator-() const;
    WittVec inv() const;
    WittVec pow(long e) const;
    WittVec scaled(long k) const; // k * a, integer scalar

    bool operator==(const WittVec& o) const { return ring_ == o.ring_ && c_ == o.c_; }
    bool operator!=(const WittVec& o) const { return !(*this == o); }
    bool operator<(const WittVec& o) const { return c_ < o.c_; } // within one ring

    std::string str() const;

private:
    friend class WittRing;
    const WittRing* ring_;
    std::array<uint8_t, kMaxWittLen * kMaxExtDegree> c_;
};

// Ghost components of a prime-field Witt vector, over the integers:
// w_n = sum_{i<=n} p^i x_i^(p^(n-i)) from the canonical coordinate lifts.
struct GhostVec {
    int d = 0;
    std::vector<bigint> values;
};

enum class WittOp { add, mul, neg };

// Interned ring descriptor W_d(F_q). All operations are pure; the polynomial
// families are materialized lazily under a once-flag.
class WittRing {
public:
    static const WittRing* get(const FieldDesc* fd, int d);

    const FieldDesc* field() const { return fd_; }
    int d() const { return d_; }
    int p() const { return fd_->p(); }
    long size() const; // q^d

    WittVec zero() const;
    WittVec one() const;
    WittVec from_coords(const std::vector<FqElem>& coords) const;
    WittVec teichmuller(const FqElem& x) const;
    WittVec from_int(long v) const; // v * 1, any m
    // Enumeration order: coordinate-lex, least-significant coordinate first.
    WittVec from_enum_index(long idx) const;
    long enum_index(const WittVec& a) const;

    WittVec add(const WittVec& a, const WittVec& b) const;
    WittVec mul(const WittVec& a, const WittVec& b) const;
    WittVec neg(const WittVec& a) const;
    WittVec inverse(const WittVec& a) const; // not_a_unit unless is_unit
    WittVec verschiebung(const WittVec& a) const;
    WittVec frobenius(const WittVec& a, int i = 1) const; // coordinatewise p^i-th power
    WittVec frobenius_inv(const WittVec& a, int i = 1) const;

    // Truncation to the first r coordinates, a ring homomorphism onto W_r(F_q).
    WittVec reduce(const WittVec& a, int r) const;
    // Coordinate padding W_e(F_q) -> W_d(F_q), e <= d (the canonical
    // Teichmueller–Verschiebung set-theoretic section; not additive).
    WittVec lift_pad(const WittVec& a) const;

    // W_d(F_p) <-> Z/p^d, m = 1 only.
    long to_residue(const WittVec& a) const;
    WittVec from_residue(long z) const;
    long pd() const; // p^d, m = 1 helper

    // Verification plumbing (m = 1): exact integer ghost components.
    GhostVec ghost(const WittVec& a) const;
    // Recompute `op` on ghost vectors over Z and compare with the ring result
    // at every precision p^(n+1).
    bool ghost_compare(WittOp op, const WittVec& a, const WittVec& b) const;

    const WittPolyFamily& polys() const;

    WittRing(const WittRing&) = delete;
    WittRing& operator=(const WittRing&) = delete;

private:
    WittRing(const FieldDesc* fd, int d) : fd_(fd), d_(d) {}
    WittVec eval_family(const std::vector<WittPoly>& fam,
                        const std::array<uint32_t, 2 * kMaxWittLen>& maxexp, const WittVec& a,
                        const WittVec& b) const;
    void check_mine(const WittVec& a) const;

    const FieldDesc* fd_;
    int d_;
};

} // namespace wittlift
