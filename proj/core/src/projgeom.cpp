#include "quadcode/projgeom.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace quadcode {

void Matrix::append_row(std::span<const Elem> v) {
    if (rows == 0 && cols == 0) cols = v.size();
    if (v.size() != cols) throw std::invalid_argument("row length mismatch");
    data.insert(data.end(), v.begin(), v.end());
    ++rows;
}

std::size_t rref_inplace(const Field& F, Elem* data, std::size_t rows, std::size_t cols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && data[piv * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r) std::swap_ranges(data + piv * cols, data + (piv + 1) * cols, data + r * cols);
        Elem* prow = data + r * cols;
        if (prow[c] != 1) {
            const Elem s = F.inv(prow[c]);
            for (std::size_t j = c; j < cols; ++j) prow[j] = F.mul(prow[j], s);
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            Elem* row = data + i * cols;
            const Elem f = row[c];
            if (f == 0) continue;
            for (std::size_t j = c; j < cols; ++j) {
                if (prow[j] != 0) row[j] = F.sub(row[j], F.mul(f, prow[j]));
            }
        }
        ++r;
    }
    return r;
}

std::size_t rref(const Field& F, Matrix& m) {
    const std::size_t r = rref_inplace(F, m.data.data(), m.rows, m.cols);
    m.data.resize(r * m.cols);
    m.rows = r;
    return r;
}

std::size_t rank(const Field& F, Matrix m) {
    return rref_inplace(F, m.data.data(), m.rows, m.cols);
}

Matrix nullspace(const Field& F, const Matrix& m) {
    Matrix red = m;
    rref(F, red);
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < red.rows; ++i) {
        std::size_t c = 0;
        while (red(i, c) == 0) ++c;
        pivots.push_back(c);
    }
    Matrix out(0, m.cols);
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (std::find(pivots.begin(), pivots.end(), f) != pivots.end()) continue;
        std::vector<Elem> x(m.cols, 0);
        x[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = F.neg(red(i, f));
        out.append_row(x);
    }
    rref(F, out);
    return out;
}

Elem determinant(const Field& F, Matrix m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows;
    Elem det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && m(piv, c) == 0) ++piv;
        if (piv == n) return 0;
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
            det = F.neg(det);
        }
        det = F.mul(det, m(c, c));
        const Elem inv = F.inv(m(c, c));
        for (std::size_t i = c + 1; i < n; ++i) {
            const Elem f = F.mul(m(i, c), inv);
            if (f == 0) continue;
            for (std::size_t j = c; j < n; ++j) m(i, j) = F.sub(m(i, j), F.mul(f, m(c, j)));
        }
    }
    return det;
}

std::string ProjPoint::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < coords.size(); ++i) os << (i ? "," : "") << coords[i];
    os << ')';
    return os.str();
}

ProjPoint normalize(const Field& F, std::span<const Elem> v) {
    auto it = std::find_if(v.begin(), v.end(), [](Elem x) { return x != 0; });
    if (it == v.end()) throw std::invalid_argument("zero vector has no projective point");
    ProjPoint P{std::vector<Elem>(v.begin(), v.end())};
    if (*it != 1) {
        const Elem s = F.inv(*it);
        for (auto& x : P.coords) x = F.mul(x, s);
    }
    return P;
}

std::vector<ProjPoint> enumerate_points(const Field& F, unsigned n) {
    const Elem q = F.order();
    std::vector<ProjPoint> out;
    out.reserve(point_count(q, n));
    for (unsigned lead = n + 1; lead-- > 0;) {
        const unsigned tail = n - lead;
        std::vector<Elem> v(n + 1, 0);
        v[lead] = 1;
        std::uint64_t count = 1;
        for (unsigned i = 0; i < tail; ++i) count *= q;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            std::uint64_t x = idx;
            for (unsigned j = n + 1; j-- > lead + 1;) {
                v[j] = static_cast<Elem>(x % q);
                x /= q;
            }
            out.push_back(ProjPoint{v});
        }
    }
    return out;
}

std::uint64_t point_count(std::uint64_t q, unsigned n) {
    std::uint64_t s = 0, t = 1;
    for (unsigned i = 0; i <= n; ++i) {
        s += t;
        t *= q;
    }
    return s;
}

std::uint64_t gaussian_binomial(unsigned n, unsigned k, std::uint64_t q) {
    if (k > n) return 0;
    // product over i < k of (q^(n-i) - 1) / (q^(i+1) - 1), kept exact by
    // multiplying first and dividing in order.
    auto qp = [q](unsigned e) {
        std::uint64_t r = 1;
        for (unsigned i = 0; i < e; ++i) r *= q;
        return r;
    };
    std::uint64_t num = 1, den = 1;
    for (unsigned i = 0; i < k; ++i) {
        num *= qp(n - i) - 1;
        den *= qp(i + 1) - 1;
    }
    return num / den;
}

Elem dot(const Field& F, std::span<const Elem> a, std::span<const Elem> b) {
    Elem s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s = F.add(s, F.mul(a[i], b[i]));
    return s;
}

std::array<Elem, 3> cross(const Field& F, std::span<const Elem> a, std::span<const Elem> b) {
    return {F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])), F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
            F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))};
}

bool on_line(const Field& F, const ProjLine2& l, const ProjPoint& P) {
    return dot(F, l.dual.coords, P.coords) == 0;
}

ProjLine2 line_through(const Field& F, const ProjPoint& P, const ProjPoint& Q) {
    if (P == Q) throw std::invalid_argument("line_through needs two distinct points");
    const auto c = cross(F, P.coords, Q.coords);
    return ProjLine2{normalize(F, c)};
}

std::vector<ProjPoint> points_on(const Field& F, const ProjLine2& l) {
    Matrix m(1, 3);
    for (int i = 0; i < 3; ++i) m(0, i) = l.dual[i];
    const Matrix basis = nullspace(F, m);
    std::vector<ProjPoint> out;
    out.reserve(F.order() + 1);
    for (Elem t = 0; t < F.order(); ++t) {
        std::array<Elem, 3> v{};
        for (int i = 0; i < 3; ++i) v[i] = F.add(basis(0, i), F.mul(t, basis(1, i)));
        out.push_back(normalize(F, v));
    }
    out.push_back(normalize(F, basis.row(1)));
    std::sort(out.begin(), out.end());
    return out;
}

bool collinear(const Field& F, const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
    Matrix m(3, 3);
    for (int i = 0; i < 3; ++i) {
        m(0, i) = a[i];
        m(1, i) = b[i];
        m(2, i) = c[i];
    }
    return determinant(F, m) == 0;
}

namespace {

void check_shape(const Field& F, std::size_t ambient) {
    if (ambient == 0 || ambient > Subspace::kMaxAmbient) throw std::invalid_argument("unsupported ambient dimension");
    if (F.order() > 65536) throw std::invalid_argument("subspaces need a field of order at most 65536");
}

} // namespace

Subspace Subspace::span(const Field& F, std::size_t ambient, std::span<const Elem> rows) {
    check_shape(F, ambient);
    if (rows.size() % ambient != 0) throw std::invalid_argument("row data is not a multiple of the ambient dimension");
    const std::size_t nrows = rows.size() / ambient;
    Subspace s;
    s.ambient_ = static_cast<std::uint8_t>(ambient);
    std::array<Elem, 72> stack{};
    std::vector<Elem> heap;
    Elem* buf = stack.data();
    if (rows.size() > stack.size()) {
        heap.assign(rows.begin(), rows.end());
        buf = heap.data();
    } else {
        std::copy(rows.begin(), rows.end(), buf);
    }
    const std::size_t r = rref_inplace(F, buf, nrows, ambient);
    s.rank_ = static_cast<std::uint8_t>(r);
    for (std::size_t i = 0; i < r * ambient; ++i) s.e_[i] = static_cast<std::uint16_t>(buf[i]);
    return s;
}

Subspace Subspace::span(const Field& F, const std::vector<ProjPoint>& points) {
    if (points.empty()) throw std::invalid_argument("span of no points");
    std::vector<Elem> rows;
    for (const auto& P : points) rows.insert(rows.end(), P.coords.begin(), P.coords.end());
    return span(F, points.front().size(), rows);
}

Subspace Subspace::span(const Field& F, const Matrix& rows) {
    return span(F, rows.cols, rows.data);
}

Subspace Subspace::from_echelon(const Field& F, std::size_t ambient, std::span<const Elem> rows) {
    Subspace s = span(F, ambient, rows);
    if (s.rank_ * ambient != rows.size()) throw std::invalid_argument("basis rows are linearly dependent");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (s.e_[i] != rows[i]) throw std::invalid_argument("basis is not in reduced row-echelon form");
    }
    return s;
}

std::vector<Elem> Subspace::row(std::size_t r) const {
    return {e_.begin() + r * ambient_, e_.begin() + (r + 1) * ambient_};
}

std::vector<Elem> Subspace::flat() const {
    return {e_.begin(), e_.begin() + rank_ * ambient_};
}

Matrix Subspace::matrix() const {
    Matrix m(rank_, ambient_);
    for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = e_[i];
    return m;
}

std::vector<std::size_t> Subspace::pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t r = 0; r < rank_; ++r) {
        std::size_t c = 0;
        while (at(r, c) == 0) ++c;
        out.push_back(c);
    }
    return out;
}

bool Subspace::contains(const Field& F, std::span<const Elem> v) const {
    if (v.size() != ambient_) throw std::invalid_argument("vector length does not match ambient dimension");
    std::array<Elem, kMaxAmbient> w{};
    std::copy(v.begin(), v.end(), w.begin());
    for (std::size_t r = 0; r < rank_; ++r) {
        std::size_t c = 0;
        while (at(r, c) == 0) ++c;
        const Elem f = w[c];
        if (f == 0) continue;
        for (std::size_t j = c; j < ambient_; ++j) w[j] = F.sub(w[j], F.mul(f, at(r, j)));
    }
    return std::all_of(w.begin(), w.begin() + ambient_, [](Elem x) { return x == 0; });
}

bool Subspace::contains(const Field& F, const Subspace& other) const {
    for (std::size_t r = 0; r < other.rank(); ++r) {
        if (!contains(F, other.row(r))) return false;
    }
    return true;
}

std::vector<ProjPoint> Subspace::points(const Field& F) const {
    std::vector<ProjPoint> out;
    if (rank_ == 0) return out;
    const auto coeffs = enumerate_points(F, rank_ - 1u);
    out.reserve(coeffs.size());
    for (const auto& a : coeffs) {
        std::vector<Elem> v(ambient_, 0);
        for (std::size_t r = 0; r < rank_; ++r) {
            if (a[r] == 0) continue;
            for (std::size_t j = 0; j < ambient_; ++j) v[j] = F.add(v[j], F.mul(a[r], at(r, j)));
        }
        out.push_back(ProjPoint{std::move(v)});
    }
    return out;
}

std::uint64_t Subspace::key(std::uint64_t q) const {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(rank_) * ambient_; ++i) k = k * q + e_[i];
    return k;
}

std::string Subspace::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rank_; ++r) {
        os << (r ? "; " : "");
        for (std::size_t c = 0; c < ambient_; ++c) os << (c ? " " : "") << at(r, c);
    }
    os << ']';
    return os.str();
}

std::size_t SubspaceHash::operator()(const Subspace& s) const noexcept {
    std::uint64_t h = 1469598103934665603ull ^ (s.rank() * 31 + s.ambient());
    for (std::size_t r = 0; r < s.rank(); ++r) {
        for (std::size_t c = 0; c < s.ambient(); ++c) {
            h ^= s.at(r, c);
            h *= 1099511628211ull;
        }
    }
    return static_cast<std::size_t>(h);
}

std::size_t stacked_rank(const Field& F, const Subspace& U, const Subspace& W) {
    if (U.ambient() != W.ambient()) throw std::invalid_argument("ambient dimension mismatch");
    const std::size_t n = U.ambient();
    std::array<Elem, 2 * Subspace::kMaxAmbient * Subspace::kMaxAmbient> buf{};
    std::size_t k = 0;
    for (std::size_t r = 0; r < U.rank(); ++r)
        for (std::size_t c = 0; c < n; ++c) buf[k++] = U.at(r, c);
    for (std::size_t r = 0; r < W.rank(); ++r)
        for (std::size_t c = 0; c < n; ++c) buf[k++] = W.at(r, c);
    return rref_inplace(F, buf.data(), U.rank() + W.rank(), n);
}

Subspace join(const Field& F, const Subspace& U, const Subspace& W) {
    if (U.ambient() != W.ambient()) throw std::invalid_argument("ambient dimension mismatch");
    auto rows = U.flat();
    auto w = W.flat();
    rows.insert(rows.end(), w.begin(), w.end());
    return Subspace::span(F, U.ambient(), rows);
}

Subspace meet(const Field& F, const Subspace& U, const Subspace& W) {
    if (U.ambient() != W.ambient()) throw std::invalid_argument("ambient dimension mismatch");
    // U ∩ W = ann(ann U + ann W)
    Matrix annU = nullspace(F, U.matrix());
    const Matrix annW = nullspace(F, W.matrix());
    for (std::size_t r = 0; r < annW.rows; ++r) annU.append_row(annW.row(r));
    annU.cols = U.ambient();
    const Matrix both = nullspace(F, annU);
    if (both.rows == 0) {
        std::vector<Elem> none;
        return Subspace::span(F, U.ambient(), none);
    }
    return Subspace::span(F, both);
}

SumMeetDims dim_sum_meet(const Field& F, const Subspace& U, const Subspace& W) {
    const std::size_t sum = stacked_rank(F, U, W);
    return {sum, U.rank() + W.rank() - sum};
}

void for_each_subspace(const Field& F, unsigned n, unsigned k, const std::function<void(const Subspace&)>& fn) {
    if (k > n || n > Subspace::kMaxAmbient) throw std::invalid_argument("bad subspace shape");
    const Elem q = F.order();
    std::vector<unsigned> piv(k);
    for (unsigned i = 0; i < k; ++i) piv[i] = i;
    std::vector<Elem> m(static_cast<std::size_t>(k) * n);
    while (true) {
        // free positions: right of the row's pivot, not in a pivot column
        std::vector<std::size_t> free;
        std::fill(m.begin(), m.end(), 0);
        for (unsigned r = 0; r < k; ++r) {
            m[r * n + piv[r]] = 1;
            for (unsigned c = piv[r] + 1; c < n; ++c) {
                if (std::find(piv.begin(), piv.end(), c) == piv.end()) free.push_back(r * n + c);
            }
        }
        std::vector<Elem> digit(free.size(), 0);
        bool done = false;
        while (!done) {
            for (std::size_t i = 0; i < free.size(); ++i) m[free[i]] = digit[i];
            fn(Subspace::from_echelon(F, n, m));
            std::size_t i = free.size();
            while (true) {
                if (i == 0) {
                    done = true;
                    break;
                }
                --i;
                if (++digit[i] < q) break;
                digit[i] = 0;
            }
        }
        // next pivot combination
        int i = static_cast<int>(k) - 1;
        while (i >= 0 && piv[i] == n - k + static_cast<unsigned>(i)) --i;
        if (i < 0) break;
        ++piv[i];
        for (unsigned j = static_cast<unsigned>(i) + 1; j < k; ++j) piv[j] = piv[j - 1] + 1;
    }
}

std::vector<Subspace> enumerate_planes5(const Field& F, unsigned max_q) {
    if (F.order() > max_q) throw std::out_of_range("plane enumeration bound exceeded");
    std::vector<Subspace> out;
    out.reserve(gaussian_binomial(6, 3, F.order()));
    for_each_subspace(F, 6, 3, [&](const Subspace& s) { out.push_back(s); });
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace quadcode
