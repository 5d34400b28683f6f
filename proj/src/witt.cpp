#include "wittlift/witt.hpp"

#include <map>
#include <mutex>
#include <sstream>

namespace wittlift {

namespace {

long powl_checked(long b, int e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

const WittRing* WittRing::get(const FieldDesc* fd, int d) {
    require(d >= 1 && d <= kMaxWittLen, errc::bad_length, "Witt length out of range");
    static std::mutex mu;
    static std::map<std::pair<const FieldDesc*, int>, const WittRing*> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({fd, d});
    if (it != cache.end()) return it->second;
    const WittRing* r = new WittRing(fd, d); // interned for process lifetime
    cache.emplace(std::make_pair(fd, d), r);
    return r;
}

const WittPolyFamily& WittRing::polys() const { return witt_polynomials(fd_->p(), d_); }

void WittRing::check_mine(const WittVec& a) const {
    require(a.ring() == this, errc::mixed_rings, "Witt vectors from different rings");
}

long WittRing::size() const { return powl_checked(fd_->q(), d_); }

long WittRing::pd() const {
    require(fd_->m() == 1, errc::unsupported_field, "Z/p^d view needs a prime field");
    return powl_checked(fd_->p(), d_);
}

FqElem WittVec::coord(int i) const {
    std::array<uint8_t, kMaxExtDegree> c{};
    int m = ring_->field()->m();
    for (int j = 0; j < m; ++j) c[size_t(j)] = c_[size_t(i * m + j)];
    return FqElem(ring_->field(), c);
}

std::vector<FqElem> WittVec::coords() const {
    std::vector<FqElem> v;
    v.reserve(size_t(ring_->d()));
    for (int i = 0; i < ring_->d(); ++i) v.push_back(coord(i));
    return v;
}

bool WittVec::is_zero() const { return *this == ring_->zero(); }

bool WittVec::is_unit() const { return !coord(0).is_zero(); }

WittVec WittVec::operator+(const WittVec& o) const { return ring_->add(*this, o); }
WittVec WittVec::operator-(const WittVec& o) const { return ring_->add(*this, ring_->neg(o)); }
WittVec WittVec::operator*(const WittVec& o) const { return ring_->mul(*this, o); }
WittVec WittVec::operator-() const { return ring_->neg(*this); }
WittVec WittVec::inv() const { return ring_->inverse(*this); }

WittVec WittVec::pow(long e) const {
    if (e < 0) return inv().pow(-e);
    WittVec acc = ring_->one();
    WittVec base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

WittVec WittVec::scaled(long k) const {
    long p = ring_->p();
    long mod = 1;
    for (int i = 0; i < ring_->d(); ++i) mod *= p;
    k %= mod;
    if (k < 0) k += mod;
    WittVec acc = ring_->zero();
    WittVec base = *this;
    while (k > 0) {
        if (k & 1) acc = acc + base;
        base = base + base;
        k >>= 1;
    }
    return acc;
}

std::string WittVec::str() const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < ring_->d(); ++i) {
        if (i) os << ",";
        os << coord(i).str();
    }
    os << ")";
    return os.str();
}

WittVec WittRing::zero() const {
    WittVec v;
    v.ring_ = this;
    return v;
}

WittVec WittRing::one() const { return teichmuller(FqElem::one(fd_)); }

WittVec WittRing::from_coords(const std::vector<FqElem>& coords) const {
    require(int(coords.size()) == d_, errc::bad_length, "coordinate count must equal d");
    WittVec v = zero();
    int m = fd_->m();
    for (int i = 0; i < d_; ++i) {
        require(coords[size_t(i)].field() == fd_, errc::mixed_rings, "coordinate field mismatch");
        for (int j = 0; j < m; ++j) v.c_[size_t(i * m + j)] = uint8_t(coords[size_t(i)].coord(j));
    }
    return v;
}

WittVec WittRing::teichmuller(const FqElem& x) const {
    require(x.field() == fd_, errc::mixed_rings, "Teichmueller lift field mismatch");
    WittVec v = zero();
    int m = fd_->m();
    for (int j = 0; j < m; ++j) v.c_[size_t(j)] = uint8_t(x.coord(j));
    return v;
}

WittVec WittRing::from_int(long v) const {
    long p = fd_->p();
    long mod = powl_checked(p, d_);
    v %= mod;
    if (v < 0) v += mod;
    return one().scaled(v);
}

WittVec WittRing::from_enum_index(long idx) const {
    require(idx >= 0 && idx < size(), errc::bad_request, "enum index out of range");
    std::vector<FqElem> coords;
    for (int i = 0; i < d_; ++i) {
        coords.push_back(FqElem::from_index(fd_, idx % fd_->q()));
        idx /= fd_->q();
    }
    return from_coords(coords);
}

long WittRing::enum_index(const WittVec& a) const {
    check_mine(a);
    long idx = 0;
    for (int i = d_ - 1; i >= 0; --i) idx = idx * fd_->q() + a.coord(i).index();
    return idx;
}

WittVec WittRing::eval_family(const std::vector<WittPoly>& fam,
                              const std::array<uint32_t, 2 * kMaxWittLen>& maxexp,
                              const WittVec& a, const WittVec& b) const {
    // Table-driven path for small fields: elements as indices, products as
    // table lookups, coordinates accumulated as plain integers.
    if (fd_->has_tables()) {
        long q = fd_->q();
        int m = fd_->m(), p = fd_->p();
        std::array<std::vector<uint16_t>, 2 * kMaxWittLen> pows;
        for (int v = 0; v < 2 * d_; ++v) {
            uint32_t me = maxexp[size_t(v)];
            auto& tab = pows[size_t(v)];
            tab.resize(me + 1);
            tab[0] = uint16_t(1 % q);
            uint16_t base = uint16_t(v < d_ ? a.coord(v).index() : b.coord(v - d_).index());
            for (uint32_t e = 1; e <= me; ++e) tab[e] = fd_->mul_index(tab[e - 1], base);
        }
        std::vector<FqElem> out;
        out.reserve(size_t(d_));
        for (int n = 0; n < d_; ++n) {
            int acc[kMaxExtDegree] = {};
            for (const auto& t : fam[size_t(n)].terms) {
                uint16_t idx = uint16_t(t.coeff); // scalar c has index c
                for (auto [v, e] : t.factors) idx = fd_->mul_index(idx, pows[size_t(v)][size_t(e)]);
                const auto& dec = fd_->decode_index(idx);
                for (int l = 0; l < m; ++l) acc[l] += dec[size_t(l)];
            }
            std::array<uint8_t, kMaxExtDegree> c{};
            for (int l = 0; l < m; ++l) c[size_t(l)] = uint8_t(acc[l] % p);
            out.push_back(FqElem(fd_, c));
        }
        return from_coords(out);
    }
    // Shared power tables across all d output coordinates.
    std::array<std::vector<FqElem>, 2 * kMaxWittLen> pows;
    for (int v = 0; v < 2 * d_; ++v) {
        uint32_t me = maxexp[size_t(v)];
        auto& tab = pows[size_t(v)];
        tab.reserve(me + 1);
        tab.push_back(FqElem::one(fd_));
        FqElem base = v < d_ ? a.coord(v) : b.coord(v - d_);
        for (uint32_t e = 1; e <= me; ++e) tab.push_back(tab.back() * base);
    }
    std::vector<FqElem> out;
    out.reserve(size_t(d_));
    for (int n = 0; n < d_; ++n) {
        FqElem acc = FqElem::zero(fd_);
        for (const auto& t : fam[size_t(n)].terms) {
            FqElem prod = FqElem::from_int(fd_, t.coeff);
            for (auto [v, e] : t.factors) prod = prod * pows[size_t(v)][size_t(e)];
            acc = acc + prod;
        }
        out.push_back(acc);
    }
    return from_coords(out);
}

WittVec WittRing::add(const WittVec& a, const WittVec& b) const {
    check_mine(a);
    check_mine(b);
    const auto& fam = polys();
    return eval_family(fam.sum, fam.max_exp_sum, a, b);
}

WittVec WittRing::mul(const WittVec& a, const WittVec& b) const {
    check_mine(a);
    check_mine(b);
    const auto& fam = polys();
    return eval_family(fam.prod, fam.max_exp_prod, a, b);
}

WittVec WittRing::neg(const WittVec& a) const {
    check_mine(a);
    const auto& fam = polys();
    return eval_family(fam.neg, fam.max_exp_neg, a, a);
}

WittVec WittRing::inverse(const WittVec& a) const {
    check_mine(a);
    require(a.is_unit(), errc::not_a_unit, "Witt vector with zero first coordinate");
    // Newton iteration from the Teichmueller inverse of the residue; the
    // defect 1 - a*b squares into V^(2^t), so ceil(log2 d) rounds suffice.
    WittVec b = teichmuller(a.coord(0).inv());
    for (int t = 0; t < 3 && (a * b) != one(); ++t) {
        WittVec e = one() - a * b;
        b = b + b * e;
    }
    require(a * b == one(), errc::internal_integrality_failure, "unit inverse iteration failed");
    return b;
}

WittVec WittRing::verschiebung(const WittVec& a) const {
    check_mine(a);
    std::vector<FqElem> coords;
    coords.push_back(FqElem::zero(fd_));
    for (int i = 0; i + 1 < d_; ++i) coords.push_back(a.coord(i));
    return from_coords(coords);
}

WittVec WittRing::frobenius(const WittVec& a, int i) const {
    check_mine(a);
    std::vector<FqElem> coords;
    for (int n = 0; n < d_; ++n) {
        FqElem c = a.coord(n);
        for (int k = 0; k < i % fd_->m(); ++k) c = c.frobenius();
        coords.push_back(c);
    }
    return from_coords(coords);
}

WittVec WittRing::frobenius_inv(const WittVec& a, int i) const {
    int m = fd_->m();
    int k = (m - (i % m)) % m;
    return k == 0 ? a : frobenius(a, k);
}

WittVec WittRing::reduce(const WittVec& a, int r) const {
    check_mine(a);
    require(r >= 1 && r <= d_, errc::bad_length, "truncation length must be in [1,d]");
    const WittRing* target = WittRing::get(fd_, r);
    std::vector<FqElem> coords;
    for (int i = 0; i < r; ++i) coords.push_back(a.coord(i));
    return target->from_coords(coords);
}

WittVec WittRing::lift_pad(const WittVec& a) const {
    require(a.ring()->field() == fd_ && a.ring()->d() <= d_, errc::bad_length,
            "coordinate padding needs a shorter vector over the same field");
    std::vector<FqElem> coords;
    for (int i = 0; i < a.ring()->d(); ++i) coords.push_back(a.coord(i));
    while (int(coords.size()) < d_) coords.push_back(FqElem::zero(fd_));
    return from_coords(coords);
}

long WittRing::to_residue(const WittVec& a) const {
    check_mine(a);
    require(fd_->m() == 1, errc::unsupported_field, "Z/p^d identification needs m = 1");
    // a = sum V^i(teich(a_i)) maps to sum p^i * tau(a_i), where tau(c) is the
    // Teichmueller representative c^(p^(d-1)) in Z/p^d.
    long p = fd_->p(), mod = powl_checked(p, d_);
    long z = 0;
    for (int i = 0; i < d_; ++i) {
        long c = a.coord(i).coord(0);
        long tau = c % p;
        for (int k = 0; k + 1 < d_; ++k) { // c^(p^(d-1)) mod p^d
            long t = 1, e = p;
            long base = tau;
            while (e > 0) {
                if (e & 1) t = (t * base) % mod;
                base = (base * base) % mod;
                e >>= 1;
            }
            tau = t;
        }
        long pi = powl_checked(p, i);
        z = (z + tau % mod * pi) % mod;
    }
    return z;
}

WittVec WittRing::from_residue(long z) const {
    require(fd_->m() == 1, errc::unsupported_field, "Z/p^d identification needs m = 1");
    long p = fd_->p(), mod = powl_checked(p, d_);
    z %= mod;
    if (z < 0) z += mod;
    // Successive Teichmueller subtraction at shrinking precision.
    std::vector<FqElem> coords;
    long level_mod = mod;
    for (int i = 0; i < d_; ++i) {
        long c = z % p;
        coords.push_back(FqElem::from_int(fd_, c));
        long tau = c;
        for (int k = 0; k + 1 < d_ - i; ++k) {
            long t = 1, e = p, base = tau;
            while (e > 0) {
                if (e & 1) t = (t * base) % level_mod;
                base = (base * base) % level_mod;
                e >>= 1;
            }
            tau = t;
        }
        z = ((z - tau) % level_mod + level_mod) % level_mod;
        z /= p;
        level_mod /= p;
    }
    return from_coords(coords);
}

GhostVec WittRing::ghost(const WittVec& a) const {
    check_mine(a);
    require(fd_->m() == 1, errc::unsupported_field, "ghost components need m = 1");
    GhostVec g;
    g.d = d_;
    for (int n = 0; n < d_; ++n) {
        bigint w = 0;
        for (int i = 0; i <= n; ++i) {
            bigint x = a.coord(i).coord(0);
            bigint term = 1;
            long e = powl_checked(fd_->p(), n - i);
            term = boost::multiprecision::pow(x, unsigned(e));
            bigint pi = boost::multiprecision::pow(bigint(fd_->p()), unsigned(i));
            w += pi * term;
        }
        g.values.push_back(w);
    }
    return g;
}

bool WittRing::ghost_compare(WittOp op, const WittVec& a, const WittVec& b) const {
    GhostVec ga = ghost(a), gb = ghost(b);
    WittVec c = op == WittOp::add ? add(a, b) : op == WittOp::mul ? mul(a, b) : neg(a);
    GhostVec gc = ghost(c);
    for (int n = 0; n < d_; ++n) {
        bigint expect;
        if (op == WittOp::add)
            expect = ga.values[size_t(n)] + gb.values[size_t(n)];
        else if (op == WittOp::mul)
            expect = ga.values[size_t(n)] * gb.values[size_t(n)];
        else
            expect = -ga.values[size_t(n)];
        bigint mod = boost::multiprecision::pow(bigint(fd_->p()), unsigned(n + 1));
        if ((gc.values[size_t(n)] - expect) % mod != 0) return false;
    }
    return true;
}

} // namespace wittlift
