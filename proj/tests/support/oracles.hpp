#pragma once

// Reference implementations used only to cross-check the library.  Nothing
// here calls into quadcode's arithmetic: fields are schoolbook polynomial
// arithmetic over Z/p, subspaces are brute-force spans, quadrics are
// classified from their zero sets alone.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using Poly = std::vector<std::uint32_t>; // c_0, c_1, ..., low degree first

/// GF(p^k) by polynomial arithmetic.  Elements use the same base-p digit
/// encoding as the library so that values can be compared directly.
class PolyGF {
  public:
    PolyGF(unsigned p, unsigned k) : p_(p), k_(k) {
        q_ = 1;
        for (unsigned i = 0; i < k; ++i) q_ *= p;
        if (k == 1) {
            modulus_ = {0, 1};
            return;
        }
        // Every monic polynomial making x a generator of the multiplicative
        // group; keep the smallest coefficient vector read from c_0 upward.
        std::vector<Poly> found;
        for (std::uint32_t enc = 0; enc < q_; ++enc) {
            Poly m = digits(enc);
            m.push_back(1);
            modulus_ = m;
            if (m[0] != 0 && order_of_x() == q_ - 1) found.push_back(m);
        }
        if (found.empty()) throw std::logic_error("no primitive polynomial found");
        modulus_ = *std::min_element(found.begin(), found.end());
    }

    unsigned p() const { return p_; }
    unsigned k() const { return k_; }
    std::uint32_t q() const { return q_; }
    const Poly& modulus() const { return modulus_; }

    Poly digits(std::uint32_t a) const {
        Poly d(k_, 0);
        for (unsigned i = 0; i < k_; ++i, a /= p_) d[i] = a % p_;
        return d;
    }
    std::uint32_t encode(const Poly& d) const {
        std::uint32_t a = 0;
        for (unsigned i = k_; i-- > 0;) a = a * p_ + (i < d.size() ? d[i] : 0);
        return a;
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        Poly x = digits(a), y = digits(b);
        for (unsigned i = 0; i < k_; ++i) x[i] = (x[i] + y[i]) % p_;
        return encode(x);
    }
    std::uint32_t neg(std::uint32_t a) const {
        Poly x = digits(a);
        for (auto& c : x) c = (p_ - c) % p_;
        return encode(x);
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (k_ == 1) return static_cast<std::uint32_t>((std::uint64_t(a) * b) % p_);
        const Poly x = digits(a), y = digits(b);
        Poly prod(2 * k_, 0);
        for (unsigned i = 0; i < k_; ++i)
            for (unsigned j = 0; j < k_; ++j) prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
        // Reduce with the monic modulus from the top degree down.
        for (unsigned d = 2 * k_ - 1; d >= k_; --d) {
            const std::uint32_t c = prod[d];
            if (c == 0) continue;
            for (unsigned i = 0; i <= k_; ++i) prod[d - k_ + i] = (prod[d - k_ + i] + p_ * p_ - c * modulus_[i]) % p_;
        }
        prod.resize(k_);
        return encode(prod);
    }

    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
        std::uint32_t r = 1;
        for (std::uint64_t i = 0; i < e; ++i) r = mul(r, a);
        return r;
    }

    /// Brute-force inverse.
    std::uint32_t inv(std::uint32_t a) const {
        for (std::uint32_t b = 1; b < q_; ++b)
            if (mul(a, b) == 1) return b;
        throw std::domain_error("zero has no inverse");
    }

    std::uint64_t order(std::uint32_t a) const {
        std::uint32_t r = a;
        for (std::uint64_t n = 1; n <= q_; ++n, r = mul(r, a))
            if (r == 1) return n;
        return 0;
    }

  private:
    std::uint64_t order_of_x() const { return order(k_ == 1 ? 0 : p_); }

    unsigned p_, k_;
    std::uint32_t q_ = 0;
    Poly modulus_;
};

/// Smallest primitive root modulo a prime, found by brute force.
inline std::uint32_t least_primitive_root(unsigned p) {
    const PolyGF F(p, 1);
    for (std::uint32_t g = 1; g < p; ++g)
        if (F.order(g) == p - 1) return g;
    throw std::logic_error("no primitive root");
}

using Vec = std::vector<std::uint32_t>;

/// Every vector in the row span, enumerated by brute force over coefficient
/// tuples.  Only for tiny q^rank.
template <class Fld>
std::set<Vec> span_vectors(const Fld& F, const std::vector<Vec>& rows, std::size_t n) {
    std::set<Vec> out;
    const std::size_t r = rows.size();
    std::vector<std::uint32_t> a(r, 0);
    while (true) {
        Vec v(n, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < n; ++j) v[j] = F.add(v[j], F.mul(a[i], rows[i][j]));
        out.insert(v);
        std::size_t i = 0;
        while (i < r && ++a[i] == F.q()) a[i++] = 0;
        if (i == r) break;
    }
    return out;
}

/// log_q of a power of q.
inline unsigned log_q(std::uint64_t size, std::uint64_t q) {
    unsigned d = 0;
    while (size > 1) {
        if (size % q) throw std::logic_error("not a power of q");
        size /= q;
        ++d;
    }
    return d;
}

/// Subspace distance from explicit vector sets: dim U + dim W - 2 dim(U ∩ W).
template <class Fld>
unsigned distance_by_counting(const Fld& F, const std::vector<Vec>& U, const std::vector<Vec>& W, std::size_t n) {
    const auto su = span_vectors(F, U, n), sw = span_vectors(F, W, n);
    std::size_t common = 0;
    for (const auto& v : su) common += sw.count(v);
    return log_q(su.size(), F.q()) + log_q(sw.size(), F.q()) - 2 * log_q(common, F.q());
}

enum class Kind { RepeatedLine, BiLine, ImaginaryBiLine, Conic };

/// Classification from the zero set in PG(2, q) only: 2q+1 zeros is a
/// bi-line, one zero an imaginary bi-line, and q+1 zeros a repeated line
/// when they are collinear and a conic otherwise.
template <class Fld>
Kind classify_by_zeros(const Fld& F, const Vec& c) {
    auto eval = [&](const Vec& x) {
        const std::uint32_t m[6] = {F.mul(x[0], x[0]), F.mul(x[1], x[1]), F.mul(x[2], x[2]),
                                    F.mul(x[0], x[1]), F.mul(x[0], x[2]), F.mul(x[1], x[2])};
        std::uint32_t s = 0;
        for (int i = 0; i < 6; ++i) s = F.add(s, F.mul(c[i], m[i]));
        return s;
    };
    std::vector<Vec> zeros;
    const std::uint32_t q = F.q();
    for (std::uint32_t a = 0; a < q; ++a)
        for (std::uint32_t b = 0; b < q; ++b) {
            // Normalized points (1,a,b), (0,1,a), (0,0,1).
            if (eval({1, a, b}) == 0) zeros.push_back({1, a, b});
        }
    for (std::uint32_t a = 0; a < q; ++a)
        if (eval({0, 1, a}) == 0) zeros.push_back({0, 1, a});
    if (eval({0, 0, 1}) == 0) zeros.push_back({0, 0, 1});

    if (zeros.size() == 2 * q + 1) return Kind::BiLine;
    if (zeros.size() == 1) return Kind::ImaginaryBiLine;
    if (zeros.size() != q + 1) throw std::logic_error("impossible zero count");
    auto det3 = [&](const Vec& x, const Vec& y, const Vec& z) {
        std::uint32_t d = F.mul(x[0], F.sub(F.mul(y[1], z[2]), F.mul(y[2], z[1])));
        d = F.sub(d, F.mul(x[1], F.sub(F.mul(y[0], z[2]), F.mul(y[2], z[0]))));
        return F.add(d, F.mul(x[2], F.sub(F.mul(y[0], z[1]), F.mul(y[1], z[0]))));
    };
    return det3(zeros[0], zeros[1], zeros[2]) == 0 ? Kind::RepeatedLine : Kind::Conic;
}

/// Determinant of a 3x3 matrix given row-major.
template <class Fld>
std::uint32_t det3(const Fld& F, const std::uint32_t* m) {
    auto minor = [&](int a, int b, int c, int d) { return F.sub(F.mul(m[a], m[d]), F.mul(m[b], m[c])); };
    std::uint32_t d = F.mul(m[0], minor(4, 5, 7, 8));
    d = F.sub(d, F.mul(m[1], minor(3, 5, 6, 8)));
    return F.add(d, F.mul(m[2], minor(3, 4, 6, 7)));
}

} // namespace oracle
