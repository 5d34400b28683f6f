#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wittlift/error.hpp"

namespace wittlift {

// Maximum extension degree of the coefficient field and maximum Witt length
// supported by the public interface.
inline constexpr int kMaxExtDegree = 4;
inline constexpr int kMaxWittLen = 5;
inline constexpr int kMaxPrime = 13;

// Descriptor of a finite field F_q, q = p^m, presented as F_p[x]/(modulus).
// Instances are interned and immutable; identity comparison is pointer
// comparison. For m = 1 the modulus is the canonical degree-1 polynomial x.
class FieldDesc {
public:
    // modulus: coefficients c_0..c_m ascending, monic, irreducible over F_p.
    static const FieldDesc* get(int p, int m, std::vector<int> modulus);
    static const FieldDesc* get(int p, int m); // m == 1, or a default modulus lookup failure

    int p() const { return p_; }
    int m() const { return m_; }
    long q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }
    std::string describe() const;

    // Rows of x^(m+k) reduced mod (p, modulus), k = 0..m-2.
    const std::array<std::array<uint8_t, kMaxExtDegree>, kMaxExtDegree>& red_rows() const {
        return red_;
    }

    // Index-based multiplication table and coordinate decoding, materialized
    // for small fields (q <= 64) to speed up polynomial evaluation.
    bool has_tables() const { return !mul_.empty(); }
    uint16_t mul_index(long a, long b) const { return mul_[size_t(a * q_ + b)]; }
    const std::array<uint8_t, kMaxExtDegree>& decode_index(long a) const { return dec_[size_t(a)]; }

    FieldDesc(const FieldDesc&) = delete;
    FieldDesc& operator=(const FieldDesc&) = delete;

private:
    FieldDesc(int p, int m, std::vector<int> modulus);

    int p_;
    int m_;
    long q_;
    std::vector<int> modulus_;
    std::array<std::array<uint8_t, kMaxExtDegree>, kMaxExtDegree> red_{};
    std::vector<uint16_t> mul_;
    std::vector<std::array<uint8_t, kMaxExtDegree>> dec_;
};

// An element of F_q in polynomial-basis coordinates. Value type; the field
// pointer identifies the ring, and mixed-field arithmetic throws.
class FqElem {
public:
    FqElem() : fd_(nullptr), c_{} {}
    FqElem(const FieldDesc* fd, std::array<uint8_t, kMaxExtDegree> coords) : fd_(fd), c_(coords) {}

    static FqElem zero(const FieldDesc* fd);
    static FqElem one(const FieldDesc* fd);
    static FqElem from_int(const FieldDesc* fd, long v); // v mod p, as a scalar
    // The class of x (generator of the polynomial basis); requires m >= 2.
    static FqElem gen(const FieldDesc* fd);
    // Element with coordinate vector given by the base-p digits of idx in [0, q).
    static FqElem from_index(const FieldDesc* fd, long idx);

    const FieldDesc* field() const { return fd_; }
    int coord(int i) const { return c_[size_t(i)]; }
    long index() const; // inverse of from_index
    bool is_zero() const;
    std::vector<int> coords() const;

    FqElem operator+(const FqElem& o) const;
    FqElem operator-(const FqElem& o) const;
    FqElem operator*(const FqElem& o) const;
    FqElem operator-() const;
    FqElem inv() const;        // throws not_a_unit on zero
    FqElem pow(long e) const;  // e may be negative for units
    FqElem frobenius() const;  // x -> x^p
    FqElem frobenius_inv() const;
    FqElem scaled(long k) const; // multiplication by the scalar k mod p

    bool operator==(const FqElem& o) const { return fd_ == o.fd_ && c_ == o.c_; }
    bool operator!=(const FqElem& o) const { return !(*this == o); }

    std::string str() const;

private:
    void check_same(const FqElem& o) const;

    const FieldDesc* fd_;
    std::array<uint8_t, kMaxExtDegree> c_;
};

// F_p[y] helpers used by the irreducibility check and field embeddings.
namespace fppoly {
// Polynomials over F_p as ascending coefficient vectors with no trailing zeros.
std::vector<int> trim(std::vector<int> a);
std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b, int p);
std::vector<int> mod(std::vector<int> a, const std::vector<int>& f, int p);
bool is_irreducible(const std::vector<int>& f, int p);
} // namespace fppoly

} // namespace wittlift
