#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "binomcoll/exact.hpp"
#include "binomcoll/extfloat.hpp"

namespace binomcoll {

enum class ScanMode { Collisions, Near };

struct ScanConfig {
    // Table size: diagonals i = 0..max_index-1 hold C(i+k, k).
    std::uint64_t max_index = 0;
    ScanMode mode = ScanMode::Collisions;
    unsigned near_exponent = 3;
    unsigned precision_bits = 128;
    bool exact_mode = false;
    // Recompute every table value with binom_exact and compare. Quadratic
    // number of bignum binomials; meant for small test runs.
    bool deep_check = false;
};

// C(n,k) == C(m,l), k < l.
struct CollisionRecord {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t m = 0;
    std::uint64_t l = 0;
    ExactValue value;

    friend bool operator==(const CollisionRecord&, const CollisionRecord&) = default;
};

// C(m,l) - C(n,k) == d > 0 and C(m,l) >= d^e. value is C(m,l).
struct NearCollisionRecord {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    std::uint64_t m = 0;
    std::uint64_t l = 0;
    ExactValue d;
    ExactValue value;

    friend bool operator==(const NearCollisionRecord&, const NearCollisionRecord&) = default;
};

using ScanRecord = std::variant<CollisionRecord, NearCollisionRecord>;
using ScanSink = std::function<void(const ScanRecord&)>;

struct ScanStats {
    std::uint64_t pops = 0;
    // Overlapping interval comparisons resolved with exact arithmetic.
    std::uint64_t exact_compares = 0;
    // Successors whose table neighbor was not in place and had to be
    // recomputed exactly (approximate mode only).
    std::uint64_t neighbor_recomputes = 0;
    std::uint64_t collisions = 0;
    std::uint64_t near_collisions = 0;
    std::uint64_t max_window = 0;
};

class ScanConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class ScanInvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

void validate(const ScanConfig& config);

// Walks every C(m,k) with 2 <= k <= m/2 and m - k < max_index in
// nondecreasing order and reports collisions (and, in Near mode, near
// collisions) to `sink` as they are found. Every record is verified with
// exact arithmetic before it is emitted.
ScanStats scan(const ScanConfig& config, const ScanSink& sink);

std::vector<ScanRecord> scan_all(const ScanConfig& config, ScanStats* stats = nullptr);

// Interval around C(n, k) accumulated the way the approximate scan builds
// it: exact values of row n - depth are converted to `precision` bits and
// then combined by `depth` levels of Pascal additions.
Interval pascal_interval(std::uint64_t n, std::uint64_t k, unsigned depth, unsigned precision);

struct PairClass {
    enum class Kind { Collision, NearCollision, Neither };
    Kind kind = Kind::Neither;
    ExactValue d;
};

// Both pairs must be normalized and distinct.
PairClass classify_pair(const BinomPair& a, const BinomPair& b, unsigned near_exponent);

} // namespace binomcoll
