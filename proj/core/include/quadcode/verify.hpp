#pragma once

// Subspace-distance verification of plane codes, the completeness search, and
// the parameter summary printed by the command-line tool.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "quadcode/construction.hpp"
#include "quadcode/groups.hpp"
#include "quadcode/projgeom.hpp"

namespace quadcode {

/// dim(U + W) - dim(U ∩ W), vector dimensions.  Throws std::invalid_argument
/// on ambient mismatch.
unsigned subspace_distance(const Field& F, const Subspace& U, const Subspace& W);

/// Worker count: `requested` if nonzero, else $QUADCODE_THREADS, else the
/// hardware concurrency.
unsigned resolve_threads(unsigned requested = 0);

enum class VerifyMethod { Naive, LineIndex };
std::string_view to_string(VerifyMethod m);

struct VerificationReport {
    unsigned q = 0;
    std::size_t M = 0;
    /// Empty when the code has fewer than two planes.
    std::optional<unsigned> min_distance;
    /// Smallest index pair attaining min_distance, set only when it is below 4.
    std::optional<std::pair<std::size_t, std::size_t>> worst_pair;
    double elapsed = 0;
    VerifyMethod method = VerifyMethod::Naive;

    bool ok() const { return !min_distance || *min_distance >= 4; }
};

/// All pairs.
VerificationReport verify_naive(const Field& F, const std::vector<Subspace>& planes, unsigned threads = 0);
/// Index of canonical line keys; exact distances only for pairs sharing a
/// line, and a point index to tell 4 from 6 otherwise.  All planes must have
/// rank 3.
VerificationReport verify_line_index(const Field& F, const std::vector<Subspace>& planes);

/// Keys of the q^2+q+1 lines of a plane, unsorted.
std::vector<std::uint64_t> line_keys(const Field& F, const Subspace& plane);

struct ExtensionReport {
    unsigned q = 0;
    std::uint64_t candidates = 0;
    /// Planes meeting every codeword in at most a point, sorted.
    std::vector<Subspace> addable;
    /// Greedy augmentation taking addable planes in lexicographic order.
    std::vector<Subspace> greedy_added;
    double elapsed = 0;
};

/// Streams every plane of PG(5, q).  Throws std::out_of_range for q > max_q.
ExtensionReport completeness_check(const Field& F, const std::vector<Subspace>& code, unsigned threads = 0,
                                   unsigned max_q = 5);

/// Image of every plane is again in `sorted_planes`.
bool setwise_invariant(const Field& F, const std::vector<Subspace>& sorted_planes, const LiftedElement& g);

struct ParameterReport {
    unsigned q = 0;
    FamilySizes counts{};
    FamilySizes expected{};
    std::size_t M = 0;
    std::optional<unsigned> min_distance;
    bool singer_invariant = false;
    bool frob_invariant = false;

    bool sizes_match() const;
};

ParameterReport parameter_report(const Context& ctx, const Code& code, const VerificationReport& v);
std::string to_text(const ParameterReport& r);
std::string to_json(const ParameterReport& r);

} // namespace quadcode
