#include "quadcode/galois.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace quadcode {

namespace {

using Poly = std::vector<std::int64_t>; // coefficients mod p, low degree first

void trim(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& f, std::int64_t p) {
    trim(a);
    // f is monic
    const std::size_t df = f.size() - 1;
    while (a.size() >= f.size()) {
        const std::int64_t c = a.back();
        const std::size_t shift = a.size() - 1 - df;
        for (std::size_t i = 0; i <= df; ++i) {
            a[shift + i] = ((a[shift + i] - c * f[i]) % p + p) % p;
        }
        trim(a);
    }
    return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return poly_mod(std::move(r), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::int64_t p) {
    Poly result{1};
    base = poly_mod(std::move(base), f, p);
    while (e > 0) {
        if (e & 1u) result = poly_mulmod(result, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1u;
    }
    return result;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Monic polynomial of degree d whose lower coefficients are the base-p digits of idx.
Poly monic_from_index(std::uint64_t idx, unsigned d, unsigned p) {
    Poly f(d + 1, 0);
    for (unsigned i = 0; i < d; ++i) {
        f[i] = static_cast<std::int64_t>(idx % p);
        idx /= p;
    }
    f[d] = 1;
    return f;
}

bool irreducible(const Poly& f, unsigned p) {
    const unsigned d = static_cast<unsigned>(f.size() - 1);
    for (unsigned dg = 1; dg <= d / 2; ++dg) {
        const std::uint64_t count = ipow(p, dg);
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            if (poly_mod(f, monic_from_index(idx, dg, p), p).empty()) return false;
        }
    }
    return true;
}

bool primitive(const Poly& f, unsigned p) {
    const unsigned d = static_cast<unsigned>(f.size() - 1);
    const std::uint64_t n = ipow(p, d) - 1;
    const Poly x{0, 1};
    if (poly_powmod(x, n, f, p) != Poly{1}) return false;
    for (std::uint64_t r : prime_factors(n)) {
        if (poly_powmod(x, n / r, f, p) == Poly{1}) return false;
    }
    return true;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool prime_power(unsigned q, unsigned& p, unsigned& k) {
    if (q < 2) return false;
    auto f = prime_factors(q);
    if (f.size() != 1) return false;
    p = static_cast<unsigned>(f[0]);
    k = 0;
    while (q > 1) {
        q /= p;
        ++k;
    }
    return true;
}

FieldPtr Field::make(unsigned p, unsigned k) {
    if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
    if (k < 1) throw std::invalid_argument("extension degree must be at least 1");
    static std::mutex mutex;
    static std::map<std::pair<unsigned, unsigned>, FieldPtr> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find({p, k});
    if (it != cache.end()) return it->second;
    FieldPtr f(new Field(p, k));
    cache.emplace(std::pair{p, k}, f);
    return f;
}

FieldPtr Field::of_order(unsigned q) {
    unsigned p = 0, k = 0;
    if (!prime_power(q, p, k)) throw std::invalid_argument("field order must be a prime power");
    return make(p, k);
}

Field::Field(unsigned p, unsigned k) : p_(p), k_(k) {
    const std::uint64_t order = ipow(p, k);
    if (order > (1u << 20)) throw std::invalid_argument("field order too large");
    order_ = static_cast<Elem>(order);

    if (k == 1) {
        modulus_ = {0, 1};
        for (Elem g = 1; g < p; ++g) {
            std::uint64_t x = g;
            std::uint64_t ord = 1;
            while (x != 1) {
                x = x * g % p;
                ++ord;
            }
            if (ord == p - 1) {
                generator_ = g;
                break;
            }
        }
    } else {
        // Lexicographic order on (c_0, ..., c_{k-1}): c_0 is the most significant digit.
        const std::uint64_t count = ipow(p, k);
        for (std::uint64_t idx = ipow(p, k - 1); idx < count; ++idx) {
            Poly f = monic_from_index(idx, k, p);
            std::reverse(f.begin(), f.begin() + k);
            if (irreducible(f, p) && primitive(f, p)) {
                modulus_.assign(f.begin(), f.end());
                break;
            }
        }
        if (modulus_.empty()) throw std::logic_error("no primitive polynomial found");
        generator_ = p; // residue of x
    }

    // Exponential/log tables by repeated multiplication with the generator.
    exp_.resize(2 * static_cast<std::size_t>(order_ - 1));
    log_.assign(order_, 0);
    std::vector<std::int64_t> cur(k, 0);
    cur[0] = 1;
    for (Elem i = 0; i + 1 < order_; ++i) {
        Elem enc = 0;
        for (unsigned j = k; j-- > 0;) enc = enc * p + static_cast<Elem>(cur[j]);
        exp_[i] = enc;
        exp_[i + order_ - 1] = enc;
        log_[enc] = i;
        if (k == 1) {
            cur[0] = cur[0] * generator_ % p;
        } else {
            const std::int64_t top = cur[k - 1];
            for (unsigned j = k - 1; j > 0; --j) cur[j] = cur[j - 1];
            cur[0] = 0;
            for (unsigned j = 0; j < k; ++j) {
                cur[j] = ((cur[j] - top * static_cast<std::int64_t>(modulus_[j])) % p + p) % p;
            }
        }
    }

    neg_.resize(order_);
    for (Elem a = 0; a < order_; ++a) {
        Elem r = 0, scale = 1, x = a;
        for (unsigned j = 0; j < k; ++j) {
            const Elem d = x % p;
            x /= p;
            r += ((p - d) % p) * scale;
            scale *= p;
        }
        neg_[a] = r;
    }
    if (order_ <= 1024) {
        add_table_.resize(static_cast<std::size_t>(order_) * order_);
        for (Elem a = 0; a < order_; ++a) {
            for (Elem b = 0; b < order_; ++b) add_table_[a * order_ + b] = add_slow(a, b);
        }
    }
}

Elem Field::add_slow(Elem a, Elem b) const {
    if (k_ == 1) return (a + b) % p_;
    Elem r = 0, scale = 1;
    for (unsigned j = 0; j < k_; ++j) {
        r += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return r;
}

Elem Field::inv(Elem a) const {
    if (a == 0) throw std::domain_error("inverse of zero");
    return exp_[(order_ - 1 - log_[a]) % (order_ - 1)];
}

Elem Field::pow(Elem a, std::int64_t e) const {
    if (a == 0) {
        if (e > 0) return 0;
        if (e == 0) return 1;
        throw std::domain_error("negative power of zero");
    }
    const std::int64_t n = order_ - 1;
    std::int64_t r = e % n;
    if (r < 0) r += n;
    return exp_[static_cast<std::uint64_t>(log_[a]) * static_cast<std::uint64_t>(r) % n];
}

std::uint64_t Field::multiplicative_order(Elem a) const {
    if (a == 0) throw std::domain_error("order of zero");
    const std::uint64_t n = order_ - 1;
    return n / std::gcd<std::uint64_t>(n, log_[a]);
}

Elem Field::from_int(std::int64_t n) const {
    std::int64_t r = n % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Elem>(r);
}

std::vector<Elem> Field::to_poly(Elem a) const {
    std::vector<Elem> c(k_);
    for (unsigned j = 0; j < k_; ++j) {
        c[j] = a % p_;
        a /= p_;
    }
    return c;
}

Elem Field::from_poly(std::span<const Elem> coeffs) const {
    if (coeffs.size() > k_) throw std::invalid_argument("polynomial degree exceeds field degree");
    Elem r = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) {
        if (coeffs[j] >= p_) throw std::invalid_argument("coefficient out of range");
        r = r * p_ + coeffs[j];
    }
    return r;
}

std::string Field::name() const {
    return "GF(" + std::to_string(order_) + ")";
}

FieldElement::FieldElement(FieldPtr field, Elem value) : field_(std::move(field)), value_(value) {
    if (!field_) throw std::invalid_argument("null field");
    if (!field_->is_valid(value_)) throw std::invalid_argument("element encoding out of range");
}

const Field& FieldElement::same_field(const FieldElement& o) const {
    if (field_ != o.field_ &&
        (field_->characteristic() != o.field_->characteristic() || field_->degree() != o.field_->degree())) {
        throw std::invalid_argument("operands belong to different fields");
    }
    return *field_;
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    return {field_, same_field(o).add(value_, o.value_)};
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    return {field_, same_field(o).sub(value_, o.value_)};
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
    return {field_, same_field(o).mul(value_, o.value_)};
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
    return {field_, same_field(o).div(value_, o.value_)};
}
FieldElement FieldElement::operator-() const { return {field_, field_->neg(value_)}; }
FieldElement FieldElement::inv() const { return {field_, field_->inv(value_)}; }
FieldElement FieldElement::pow(std::int64_t e) const { return {field_, field_->pow(value_, e)}; }
bool FieldElement::operator==(const FieldElement& o) const {
    return value_ == o.value_ && field_->characteristic() == o.field_->characteristic() &&
           field_->degree() == o.field_->degree();
}

Tower::Tower(FieldPtr base, unsigned m) : base_(std::move(base)), m_(m) {
    if (m < 1) throw std::invalid_argument("tower degree must be at least 1");
    ext_ = Field::make(base_->characteristic(), base_->degree() * m);
    const Field& B = *base_;
    const Field& E = *ext_;
    const std::uint64_t q = B.order();

    if (B.degree() == 1) {
        embed_image_ = B.generator();
        embed_.resize(q);
        for (Elem a = 0; a < q; ++a) embed_[a] = a;
    } else {
        // Generator of the order-(q-1) subgroup, then the first power that is
        // a root of the base modulus and still has order q-1.
        const Elem u = E.exp((E.order() - 1) / (q - 1));
        auto modulus = B.modulus();
        bool found = false;
        for (std::uint64_t e = 1; e < q - 1 && !found; ++e) {
            if (std::gcd<std::uint64_t>(e, q - 1) != 1) continue;
            const Elem h = E.pow(u, static_cast<std::int64_t>(e));
            Elem acc = 0;
            for (std::size_t j = modulus.size(); j-- > 0;) acc = E.add(E.mul(acc, h), modulus[j]);
            if (acc == 0) {
                embed_image_ = h;
                found = true;
            }
        }
        if (!found) throw std::logic_error("no embedding of base field found");
        embed_.resize(q);
        for (Elem a = 0; a < q; ++a) {
            auto digits = B.to_poly(a);
            Elem acc = 0;
            for (std::size_t j = digits.size(); j-- > 0;) acc = E.add(E.mul(acc, embed_image_), digits[j]);
            embed_[a] = acc;
        }
    }
    restrict_.assign(E.order(), kNone);
    for (Elem a = 0; a < q; ++a) restrict_[embed_[a]] = a;
}

std::optional<Elem> Tower::restrict(Elem a) const {
    if (restrict_[a] == kNone) return std::nullopt;
    return restrict_[a];
}

Elem Tower::frobenius(Elem a, int i) const {
    int r = i % static_cast<int>(m_);
    if (r < 0) r += static_cast<int>(m_);
    std::uint64_t e = 1;
    const std::uint64_t n = ext_->order() - 1;
    for (int j = 0; j < r; ++j) e = e * base_->order() % n;
    if (r == 0) return a;
    return ext_->pow(a, static_cast<std::int64_t>(e));
}

Elem Tower::trace(Elem a) const {
    Elem s = 0;
    for (unsigned j = 0; j < m_; ++j) s = ext_->add(s, frobenius(a, static_cast<int>(j)));
    auto r = restrict(s);
    if (!r) throw std::logic_error("trace left the base field");
    return *r;
}

std::vector<Elem> Tower::components(Elem a) const {
    std::vector<Elem> out(m_);
    for (unsigned j = 0; j < m_; ++j) out[j] = trace(ext_->mul(ext_->exp(j), a));
    return out;
}

} // namespace quadcode
