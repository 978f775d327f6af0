#include "quadcode/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "json.hpp"

namespace quadcode {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Coefficients (2 x 3, flattened) of every line of a projective plane, in
// terms of the plane's own basis.
std::vector<std::array<Elem, 6>> plane_line_coefficients(const Field& F) {
    std::vector<std::array<Elem, 6>> out;
    for_each_subspace(F, 3, 2, [&](const Subspace& s) {
        std::array<Elem, 6> c{};
        for (std::size_t r = 0; r < 2; ++r)
            for (std::size_t j = 0; j < 3; ++j) c[r * 3 + j] = s.at(r, j);
        out.push_back(c);
    });
    return out;
}

std::uint64_t line_key(const Field& F, const Subspace& plane, const std::array<Elem, 6>& c) {
    const std::size_t n = plane.ambient();
    std::array<Elem, 12> rows{};
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t j = 0; j < n; ++j) {
            Elem v = 0;
            for (std::size_t k = 0; k < 3; ++k) v = F.add(v, F.mul(c[r * 3 + k], plane.at(k, j)));
            rows[r * n + j] = v;
        }
    return Subspace::span(F, n, std::span<const Elem>(rows.data(), 2 * n)).key(F.order());
}

void line_keys_into(const Field& F, const Subspace& plane, const std::vector<std::array<Elem, 6>>& coeffs,
                    std::vector<std::uint64_t>& out) {
    out.clear();
    for (const auto& c : coeffs) out.push_back(line_key(F, plane, c));
}

std::uint64_t point_key(std::uint64_t q, const ProjPoint& P) {
    std::uint64_t k = 0;
    for (Elem x : P.coords) k = k * q + x;
    return k;
}

void require_planes(const std::vector<Subspace>& planes) {
    for (const auto& p : planes) {
        if (p.rank() != 3) throw std::invalid_argument("codewords must be planes");
    }
}

} // namespace

unsigned subspace_distance(const Field& F, const Subspace& U, const Subspace& W) {
    if (U.ambient() != W.ambient()) throw std::invalid_argument("subspaces live in different ambient spaces");
    const std::size_t s = stacked_rank(F, U, W);
    return static_cast<unsigned>(2 * s - U.rank() - W.rank());
}

unsigned resolve_threads(unsigned requested) {
    if (requested) return requested;
    if (const char* env = std::getenv("QUADCODE_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::string_view to_string(VerifyMethod m) {
    return m == VerifyMethod::Naive ? "naive" : "lineindex";
}

VerificationReport verify_naive(const Field& F, const std::vector<Subspace>& planes, unsigned threads) {
    const auto t0 = Clock::now();
    VerificationReport rep;
    rep.q = F.order();
    rep.M = planes.size();
    rep.method = VerifyMethod::Naive;
    const std::size_t M = planes.size();
    const unsigned T = std::min<unsigned>(resolve_threads(threads), std::max<std::size_t>(1, M));

    struct Best {
        unsigned d = 7;
        std::pair<std::size_t, std::size_t> pair{};
    };
    std::vector<Best> best(T);
    auto work = [&](unsigned t) {
        Best b;
        // rows i = t, t+T, ... keep the load roughly even
        for (std::size_t i = t; i < M; i += T) {
            for (std::size_t j = i + 1; j < M; ++j) {
                const unsigned d = subspace_distance(F, planes[i], planes[j]);
                if (d < b.d || (d == b.d && std::make_pair(i, j) < b.pair)) b = {d, {i, j}};
            }
        }
        best[t] = b;
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < T; ++t) pool.emplace_back(work, t);
    work(0);
    for (auto& th : pool) th.join();

    Best b;
    for (const auto& x : best) {
        if (x.d < b.d || (x.d == b.d && x.pair < b.pair)) b = x;
    }
    if (M >= 2) {
        rep.min_distance = b.d;
        if (b.d < 4) rep.worst_pair = b.pair;
    }
    rep.elapsed = seconds_since(t0);
    return rep;
}

std::vector<std::uint64_t> line_keys(const Field& F, const Subspace& plane) {
    if (plane.rank() != 3) throw std::invalid_argument("line keys need a plane");
    std::vector<std::uint64_t> out;
    line_keys_into(F, plane, plane_line_coefficients(F), out);
    return out;
}

VerificationReport verify_line_index(const Field& F, const std::vector<Subspace>& planes) {
    const auto t0 = Clock::now();
    require_planes(planes);
    VerificationReport rep;
    rep.q = F.order();
    rep.M = planes.size();
    rep.method = VerifyMethod::LineIndex;
    if (planes.size() < 2) {
        rep.elapsed = seconds_since(t0);
        return rep;
    }

    const auto coeffs = plane_line_coefficients(F);
    std::vector<std::pair<std::uint64_t, std::size_t>> index;
    index.reserve(planes.size() * coeffs.size());
    std::vector<std::uint64_t> keys;
    for (std::size_t i = 0; i < planes.size(); ++i) {
        line_keys_into(F, planes[i], coeffs, keys);
        for (auto k : keys) index.emplace_back(k, i);
    }
    std::sort(index.begin(), index.end());

    std::set<std::pair<std::size_t, std::size_t>> sharing;
    for (std::size_t a = 0; a < index.size();) {
        std::size_t b = a;
        while (b < index.size() && index[b].first == index[a].first) ++b;
        for (std::size_t x = a; x < b; ++x)
            for (std::size_t y = x + 1; y < b; ++y) sharing.emplace(index[x].second, index[y].second);
        a = b;
    }

    if (!sharing.empty()) {
        unsigned best = 7;
        for (const auto& pr : sharing) {
            const unsigned d = subspace_distance(F, planes[pr.first], planes[pr.second]);
            if (d < best) {
                best = d;
                rep.worst_pair = pr;
            }
        }
        rep.min_distance = best;
    } else {
        std::vector<std::uint64_t> pts;
        for (const auto& p : planes)
            for (const auto& P : p.points(F)) pts.push_back(point_key(F.order(), P));
        std::sort(pts.begin(), pts.end());
        rep.min_distance = std::adjacent_find(pts.begin(), pts.end()) != pts.end() ? 4u : 6u;
    }
    rep.elapsed = seconds_since(t0);
    return rep;
}

ExtensionReport completeness_check(const Field& F, const std::vector<Subspace>& code, unsigned threads,
                                   unsigned max_q) {
    const auto t0 = Clock::now();
    if (F.order() > max_q) throw std::out_of_range("plane enumeration is limited to q <= " + std::to_string(max_q));
    require_planes(code);
    ExtensionReport rep;
    rep.q = F.order();

    const auto coeffs = plane_line_coefficients(F);
    std::vector<std::uint64_t> covered;
    {
        std::vector<std::uint64_t> keys;
        for (const auto& p : code) {
            line_keys_into(F, p, coeffs, keys);
            covered.insert(covered.end(), keys.begin(), keys.end());
        }
        std::sort(covered.begin(), covered.end());
        covered.erase(std::unique(covered.begin(), covered.end()), covered.end());
    }
    // rejects on the first covered line
    auto compatible = [&](const Subspace& s) {
        return std::none_of(coeffs.begin(), coeffs.end(), [&](const std::array<Elem, 6>& c) {
            return std::binary_search(covered.begin(), covered.end(), line_key(F, s, c));
        });
    };

    const unsigned T = resolve_threads(threads);
    constexpr std::size_t kChunk = 1 << 15;
    std::vector<Subspace> buffer;
    buffer.reserve(kChunk);
    std::vector<char> ok;
    auto flush = [&] {
        ok.assign(buffer.size(), 0);
        auto work = [&](unsigned t) {
            for (std::size_t i = t; i < buffer.size(); i += T) ok[i] = compatible(buffer[i]);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 1; t < T; ++t) pool.emplace_back(work, t);
        work(0);
        for (auto& th : pool) th.join();
        for (std::size_t i = 0; i < buffer.size(); ++i) {
            if (ok[i]) rep.addable.push_back(buffer[i]);
        }
        rep.candidates += buffer.size();
        buffer.clear();
    };
    for_each_subspace(F, 6, 3, [&](const Subspace& s) {
        buffer.push_back(s);
        if (buffer.size() == kChunk) flush();
    });
    flush();
    std::sort(rep.addable.begin(), rep.addable.end());

    std::unordered_set<std::uint64_t> taken;
    std::vector<std::uint64_t> keys;
    for (const auto& s : rep.addable) {
        line_keys_into(F, s, coeffs, keys);
        if (std::any_of(keys.begin(), keys.end(), [&](std::uint64_t k) { return taken.count(k) > 0; })) continue;
        rep.greedy_added.push_back(s);
        taken.insert(keys.begin(), keys.end());
    }
    rep.elapsed = seconds_since(t0);
    return rep;
}

bool setwise_invariant(const Field& F, const std::vector<Subspace>& sorted_planes, const LiftedElement& g) {
    return std::all_of(sorted_planes.begin(), sorted_planes.end(), [&](const Subspace& s) {
        return std::binary_search(sorted_planes.begin(), sorted_planes.end(), g.apply(F, s));
    });
}

bool ParameterReport::sizes_match() const {
    return counts.bundle_orbit == expected.bundle_orbit && counts.net == expected.net &&
           counts.pi_e == expected.pi_e && counts.pi_i == expected.pi_i && M == expected.total();
}

ParameterReport parameter_report(const Context& ctx, const Code& code, const VerificationReport& v) {
    const Field& F = ctx.F();
    ParameterReport r;
    r.q = ctx.q;
    r.counts = {code.count(Provenance::BundleOrbit), code.count(Provenance::NetN), code.count(Provenance::PiE),
                code.count(Provenance::PiI)};
    r.expected = expected_sizes(ctx.q);
    r.M = code.planes.size();
    r.min_distance = v.min_distance;
    auto spaces = code.spaces();
    std::sort(spaces.begin(), spaces.end());
    r.singer_invariant = setwise_invariant(F, spaces, lift(F, ctx.singer.generator));
    r.frob_invariant = setwise_invariant(F, spaces, lift(F, ctx.singer.frob));
    return r;
}

std::string to_text(const ParameterReport& r) {
    std::ostringstream os;
    os << "q: " << r.q << '\n'
       << "parameters: (6, " << r.M << ", "
       << (r.min_distance ? std::to_string(*r.min_distance) : std::string("-")) << "; 3)_" << r.q << '\n'
       << "bundle-orbit: " << r.counts.bundle_orbit << " (expected " << r.expected.bundle_orbit << ")\n"
       << "net: " << r.counts.net << " (expected " << r.expected.net << ")\n"
       << "pi-e: " << r.counts.pi_e << " (expected " << r.expected.pi_e << ")\n"
       << "pi-i: " << r.counts.pi_i << " (expected " << r.expected.pi_i << ")\n"
       << "M: " << r.M << " (expected " << r.expected.total() << ")\n"
       << "singer-invariant: " << (r.singer_invariant ? "yes" : "no") << '\n'
       << "frobenius-invariant: " << (r.frob_invariant ? "yes" : "no") << '\n';
    return os.str();
}

std::string to_json(const ParameterReport& r) {
    nlohmann::ordered_json j;
    j["q"] = r.q;
    j["M"] = r.M;
    j["expected_M"] = r.expected.total();
    j["min_distance"] = r.min_distance ? nlohmann::ordered_json(*r.min_distance) : nlohmann::ordered_json(nullptr);
    j["families"] = {{"bundle-orbit", r.counts.bundle_orbit},
                     {"net", r.counts.net},
                     {"pi-e", r.counts.pi_e},
                     {"pi-i", r.counts.pi_i}};
    j["singer_invariant"] = r.singer_invariant;
    j["frobenius_invariant"] = r.frob_invariant;
    return j.dump(2);
}

} // namespace quadcode
