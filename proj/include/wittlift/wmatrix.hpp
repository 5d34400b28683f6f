#pragma once

#include "wittlift/smith.hpp"
#include "wittlift/witt.hpp"

namespace wittlift {

// Ring traits for the Smith engine over W_d(F_q). The maximal ideal is (p),
// and the p-valuation of a Witt vector is the index of its first nonzero
// coordinate.
struct WittElemRing {
    const WittRing* W = nullptr;
    using Elem = WittVec;

    int nilpotency() const { return W->d(); }
    WittVec zero() const { return W->zero(); }
    WittVec one() const { return W->one(); }
    bool is_zero(const WittVec& e) const { return e.is_zero(); }
    WittVec add(const WittVec& a, const WittVec& b) const { return a + b; }
    WittVec sub(const WittVec& a, const WittVec& b) const { return a - b; }
    WittVec mul(const WittVec& a, const WittVec& b) const { return a * b; }
    WittVec neg(const WittVec& a) const { return -a; }
    WittVec unit_inv(const WittVec& u) const { return u.inv(); }
    int val(const WittVec& e) const {
        for (int i = 0; i < W->d(); ++i)
            if (!e.coord(i).is_zero()) return i;
        return W->d();
    }
    WittVec pshift(int v) const {
        long pv = 1;
        for (int i = 0; i < v; ++i) pv *= W->p();
        return W->from_int(pv);
    }
    // e = p^v * result; requires val(e) >= v. p^v x = V^v(F^v(x)), so divide
    // by shifting coordinates down and undoing the Frobenius.
    WittVec div_pow(const WittVec& e, int v) const {
        if (v == 0) return e;
        std::vector<FqElem> coords;
        for (int i = v; i < W->d(); ++i) coords.push_back(e.coord(i));
        for (int i = 0; i < v; ++i) coords.push_back(FqElem::zero(W->field()));
        return W->frobenius_inv(W->from_coords(coords), v);
    }
};

struct WMatrix {
    const WittRing* W = nullptr;
    int rows = 0, cols = 0;
    std::vector<WittVec> a;

    static WMatrix zeros(const WittRing* W, int r, int c);
    static WMatrix identity(const WittRing* W, int n);
    WittVec& at(int i, int j) { return a[size_t(i) * size_t(cols) + size_t(j)]; }
    const WittVec& at(int i, int j) const { return a[size_t(i) * size_t(cols) + size_t(j)]; }

    WMatrix operator*(const WMatrix& o) const;
    WMatrix operator+(const WMatrix& o) const;
    WMatrix operator-(const WMatrix& o) const;
    WMatrix scaled(const WittVec& s) const;
    WMatrix transpose() const;
    bool operator==(const WMatrix& o) const;
    std::vector<WittVec> apply(const std::vector<WittVec>& x) const;

    WMatrix reduced(int r) const;       // entrywise truncation to W_r
    WMatrix lifted(const WittRing* Wbig) const; // entrywise coordinate padding
    WMatrix frobenius(int i) const;     // entrywise
    WMatrix inverse() const;            // not_invertible when singular
    std::string str() const;
};

WMatrix whstack(const WMatrix& A, const WMatrix& B);
WMatrix wvstack(const WMatrix& A, const WMatrix& B);
WMatrix wkron(const WMatrix& A, const WMatrix& B); // Kronecker product

using WittSmith = SmithResult<WittElemRing>;
WittSmith wsnf(const WMatrix& A);
// Solve A x = b; false when unsolvable.
bool wsolve(const WMatrix& A, const WittSmith& nf, const std::vector<WittVec>& b,
            std::vector<WittVec>& x);
WMatrix wkernel(const WMatrix& A, const WittSmith& nf);

} // namespace wittlift
