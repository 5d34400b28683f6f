#include "wittlift/fq.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace wittlift {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int k = 2; k * k <= p; ++k)
        if (p % k == 0) return false;
    return true;
}

int imod(long v, int p) {
    long r = v % p;
    return int(r < 0 ? r + p : r);
}

} // namespace

namespace fppoly {

std::vector<int> trim(std::vector<int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b, int p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = imod(r[i + j] + long(a[i]) * b[j], p);
    return trim(r);
}

std::vector<int> mod(std::vector<int> a, const std::vector<int>& f, int p) {
    a = trim(std::move(a));
    int df = int(f.size()) - 1;
    // f monic
    while (int(a.size()) - 1 >= df) {
        int lead = a.back();
        int shift = int(a.size()) - 1 - df;
        for (int i = 0; i <= df; ++i) a[size_t(i + shift)] = imod(a[size_t(i + shift)] - long(lead) * f[size_t(i)], p);
        a = trim(std::move(a));
    }
    return a;
}

bool is_irreducible(const std::vector<int>& f, int p) {
    int d = int(f.size()) - 1;
    if (d < 1) return false;
    if (d == 1) return true;
    // Trial division by every monic polynomial of degree 1..d/2. The degrees
    // in play are at most kMaxExtDegree, so exhaustion is cheap.
    for (int dg = 1; dg <= d / 2; ++dg) {
        long count = 1;
        for (int i = 0; i < dg; ++i) count *= p;
        for (long code = 0; code < count; ++code) {
            std::vector<int> g(size_t(dg) + 1, 0);
            long c = code;
            for (int i = 0; i < dg; ++i) {
                g[size_t(i)] = int(c % p);
                c /= p;
            }
            g[size_t(dg)] = 1;
            if (mod(f, g, p).empty()) return false;
        }
    }
    return true;
}

} // namespace fppoly

FieldDesc::FieldDesc(int p, int m, std::vector<int> modulus)
    : p_(p), m_(m), modulus_(std::move(modulus)) {
    q_ = 1;
    for (int i = 0; i < m_; ++i) q_ *= p_;
    // Precompute x^(m+k) mod f for k = 0..m-2 (enough for degree-(2m-2) products).
    if (m_ >= 2) {
        std::vector<int> xm(size_t(m_) + 1, 0);
        xm[size_t(m_)] = 1;
        std::vector<int> cur = fppoly::mod(xm, modulus_, p_);
        for (int k = 0; k + 2 <= m_; ++k) {
            for (int i = 0; i < m_; ++i)
                red_[size_t(k)][size_t(i)] = uint8_t(i < int(cur.size()) ? cur[size_t(i)] : 0);
            // multiply by x and reduce
            std::vector<int> nxt(size_t(m_) + 1, 0);
            for (int i = 0; i < int(cur.size()); ++i) nxt[size_t(i) + 1] = cur[size_t(i)];
            cur = fppoly::mod(nxt, modulus_, p_);
        }
    }
    if (q_ <= 64) {
        mul_.resize(size_t(q_ * q_));
        dec_.resize(size_t(q_));
        for (long a = 0; a < q_; ++a) {
            FqElem ea = FqElem::from_index(this, a);
            for (int l = 0; l < kMaxExtDegree; ++l)
                dec_[size_t(a)][size_t(l)] = uint8_t(l < m_ ? ea.coord(l) : 0);
            for (long b = 0; b < q_; ++b)
                mul_[size_t(a * q_ + b)] = uint16_t((ea * FqElem::from_index(this, b)).index());
        }
    }
}

const FieldDesc* FieldDesc::get(int p, int m, std::vector<int> modulus) {
    require(is_prime(p), errc::bad_request, "p must be prime, got " + std::to_string(p));
    require(p <= kMaxPrime, errc::budget_exceeded,
            "p = " + std::to_string(p) + " exceeds the supported bound " + std::to_string(kMaxPrime));
    require(m >= 1 && m <= kMaxExtDegree, errc::bad_request,
            "extension degree m must be in [1," + std::to_string(kMaxExtDegree) + "]");
    for (int& c : modulus) c = imod(c, p);
    modulus = fppoly::trim(std::move(modulus));
    if (m == 1 && modulus.empty()) modulus = {0, 1}; // canonical x
    require(int(modulus.size()) == m + 1, errc::bad_request, "modulus degree must equal m");
    require(modulus.back() == 1, errc::bad_request, "modulus must be monic");
    require(fppoly::is_irreducible(modulus, p), errc::bad_request, "modulus is reducible over F_p");

    static std::mutex mu;
    static std::map<std::tuple<int, int, std::vector<int>>, const FieldDesc*> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(p, m, modulus);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const FieldDesc* fd = new FieldDesc(p, m, modulus); // interned for process lifetime
    cache.emplace(std::move(key), fd);
    return fd;
}

const FieldDesc* FieldDesc::get(int p, int m) {
    require(m == 1, errc::bad_request, "a modulus polynomial is required when m > 1");
    return get(p, 1, {0, 1});
}

std::string FieldDesc::describe() const {
    std::ostringstream os;
    os << "F_" << q_;
    if (m_ > 1) {
        os << " = F_" << p_ << "[x]/(";
        bool first = true;
        for (int i = m_; i >= 0; --i) {
            int c = modulus_[size_t(i)];
            if (c == 0) continue;
            if (!first) os << "+";
            first = false;
            if (i == 0 || c != 1) os << c;
            if (i >= 1) os << "x";
            if (i >= 2) os << "^" << i;
        }
        os << ")";
    }
    return os.str();
}

void FqElem::check_same(const FqElem& o) const {
    require(fd_ == o.fd_, errc::mixed_rings, "field mismatch in F_q arithmetic");
}

FqElem FqElem::zero(const FieldDesc* fd) { return FqElem(fd, {}); }

FqElem FqElem::one(const FieldDesc* fd) { return from_int(fd, 1); }

FqElem FqElem::from_int(const FieldDesc* fd, long v) {
    std::array<uint8_t, kMaxExtDegree> c{};
    c[0] = uint8_t(imod(v, fd->p()));
    return FqElem(fd, c);
}

FqElem FqElem::gen(const FieldDesc* fd) {
    require(fd->m() >= 2, errc::bad_request, "polynomial generator needs m >= 2");
    std::array<uint8_t, kMaxExtDegree> c{};
    c[1] = 1;
    return FqElem(fd, c);
}

FqElem FqElem::from_index(const FieldDesc* fd, long idx) {
    require(idx >= 0 && idx < fd->q(), errc::bad_request, "field element index out of range");
    std::array<uint8_t, kMaxExtDegree> c{};
    for (int i = 0; i < fd->m(); ++i) {
        c[size_t(i)] = uint8_t(idx % fd->p());
        idx /= fd->p();
    }
    return FqElem(fd, c);
}

long FqElem::index() const {
    long idx = 0;
    for (int i = fd_->m() - 1; i >= 0; --i) idx = idx * fd_->p() + c_[size_t(i)];
    return idx;
}

bool FqElem::is_zero() const {
    for (int i = 0; i < fd_->m(); ++i)
        if (c_[size_t(i)] != 0) return false;
    return true;
}

std::vector<int> FqElem::coords() const {
    std::vector<int> v(size_t(fd_->m()));
    for (int i = 0; i < fd_->m(); ++i) v[size_t(i)] = c_[size_t(i)];
    return v;
}

FqElem FqElem::operator+(const FqElem& o) const {
    check_same(o);
    std::array<uint8_t, kMaxExtDegree> r{};
    int p = fd_->p();
    for (int i = 0; i < fd_->m(); ++i) {
        int s = c_[size_t(i)] + o.c_[size_t(i)];
        r[size_t(i)] = uint8_t(s >= p ? s - p : s);
    }
    return FqElem(fd_, r);
}

FqElem FqElem::operator-(const FqElem& o) const {
    check_same(o);
    std::array<uint8_t, kMaxExtDegree> r{};
    int p = fd_->p();
    for (int i = 0; i < fd_->m(); ++i) {
        int s = c_[size_t(i)] - o.c_[size_t(i)];
        r[size_t(i)] = uint8_t(s < 0 ? s + p : s);
    }
    return FqElem(fd_, r);
}

FqElem FqElem::operator-() const {
    std::array<uint8_t, kMaxExtDegree> r{};
    int p = fd_->p();
    for (int i = 0; i < fd_->m(); ++i) r[size_t(i)] = uint8_t(c_[size_t(i)] == 0 ? 0 : p - c_[size_t(i)]);
    return FqElem(fd_, r);
}

FqElem FqElem::operator*(const FqElem& o) const {
    check_same(o);
    int p = fd_->p(), m = fd_->m();
    if (m == 1) {
        std::array<uint8_t, kMaxExtDegree> r{};
        r[0] = uint8_t((int(c_[0]) * o.c_[0]) % p);
        return FqElem(fd_, r);
    }
    // schoolbook product then reduction by the precomputed rows
    int prod[2 * kMaxExtDegree - 1] = {};
    for (int i = 0; i < m; ++i) {
        if (c_[size_t(i)] == 0) continue;
        for (int j = 0; j < m; ++j) prod[i + j] += int(c_[size_t(i)]) * o.c_[size_t(j)];
    }
    const auto& red = fd_->red_rows();
    std::array<uint8_t, kMaxExtDegree> r{};
    for (int i = 0; i < m; ++i) {
        long acc = prod[i];
        for (int k = 0; k + 2 <= m; ++k) acc += long(prod[m + k]) * red[size_t(k)][size_t(i)];
        r[size_t(i)] = uint8_t(imod(acc, p));
    }
    return FqElem(fd_, r);
}

FqElem FqElem::scaled(long k) const {
    std::array<uint8_t, kMaxExtDegree> r{};
    int p = fd_->p();
    for (int i = 0; i < fd_->m(); ++i) r[size_t(i)] = uint8_t(imod(long(c_[size_t(i)]) * imod(k, p), p));
    return FqElem(fd_, r);
}

FqElem FqElem::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    FqElem acc = one(fd_);
    FqElem base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

FqElem FqElem::inv() const {
    require(!is_zero(), errc::not_a_unit, "inverse of zero in " + fd_->describe());
    return pow(fd_->q() - 2);
}

FqElem FqElem::frobenius() const { return pow(fd_->p()); }

FqElem FqElem::frobenius_inv() const {
    // On F_q the Frobenius has order m, so its inverse is the (m-1)-st power.
    FqElem r = *this;
    for (int i = 0; i + 1 < fd_->m(); ++i) r = r.frobenius();
    return r;
}

std::string FqElem::str() const {
    std::ostringstream os;
    os << "[";
    for (int i = 0; i < fd_->m(); ++i) {
        if (i) os << ",";
        os << int(c_[size_t(i)]);
    }
    os << "]";
    return os.str();
}

} // namespace wittlift
