#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

#include "binomcoll/scan.hpp"

namespace binomcoll {

// Search C(m, l) = C(n, k) for 2 <= k < l and C(m, l) <= max_value.
struct SievePlan {
    std::uint32_t k = 2;
    std::uint32_t l = 3;
    mpz_class max_value;
    std::uint32_t prime_bound = 500;

    friend bool operator==(const SievePlan&, const SievePlan&) = default;
};

class SieveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Candidate m values in [m_min, m_max] as a bitmap; only primes listed in
// primes_done have been applied.
class SieveState {
public:
    SieveState() = default;
    explicit SieveState(const SievePlan& plan);
    SieveState(const SievePlan& plan, std::uint64_t m_min, std::uint64_t m_max,
               std::vector<std::uint64_t> words, std::vector<std::uint32_t> primes_done);

    const SievePlan& plan() const noexcept { return plan_; }
    bool empty_range() const noexcept { return m_max_ < m_min_; }
    std::uint64_t m_min() const noexcept { return m_min_; }
    std::uint64_t m_max() const noexcept { return m_max_; }
    std::uint64_t survivor_count() const noexcept { return count_; }
    const std::vector<std::uint32_t>& primes_done() const noexcept { return primes_done_; }
    const std::vector<std::uint64_t>& words() const noexcept { return words_; }

    bool contains(std::uint64_t m) const noexcept;
    std::vector<std::uint64_t> survivors() const;

    // Removes every m congruent to a residue in `bad` modulo p.
    void remove_residues(std::uint32_t p, const std::vector<std::uint32_t>& bad);

    friend bool operator==(const SieveState&, const SieveState&) = default;

private:
    SievePlan plan_;
    std::uint64_t m_min_ = 1;
    std::uint64_t m_max_ = 0;
    std::vector<std::uint64_t> words_;
    std::uint64_t count_ = 0;
    std::vector<std::uint32_t> primes_done_;
};

void validate(const SievePlan& plan);

// Largest m with C(m, l) <= bound, or nullopt when C(2l, l) > bound.
std::optional<std::uint64_t> largest_row_below(std::uint32_t l, const mpz_class& bound);

// Residues a mod p with C(a, l) mod p outside the image of n -> C(n, k).
std::vector<std::uint32_t> bad_residues(std::uint32_t k, std::uint32_t l, std::uint32_t p);

// Primes p with l < p <= prime_bound, ascending.
std::vector<std::uint32_t> sieve_primes(const SievePlan& plan);

struct SieveProgress {
    std::uint32_t prime = 0;
    std::uint64_t remaining = 0;
};

struct SieveOptions {
    // Called after each prime is applied; returning false stops the run
    // before the exact verification step.
    std::function<bool(const SieveState&, const SieveProgress&)> on_prime;
    // Worker threads for computing bad residues ahead of application.
    unsigned jobs = 1;
};

struct SieveResult {
    SieveState state;
    // False when on_prime requested a stop.
    bool completed = false;
    std::vector<CollisionRecord> collisions;
    // m values that passed every prime but are not C(n, k) for any n.
    std::vector<std::uint64_t> false_survivors;

    // Verified survivors, i.e. the m of every collision.
    std::vector<std::uint64_t> survivors() const;
};

SieveResult sieve_pair(const SievePlan& plan, const std::optional<SieveState>& checkpoint = std::nullopt,
                       const SieveOptions& options = {});

} // namespace binomcoll
