#include "binomcoll/sieve.hpp"

#include <algorithm>
#include <bit>
#include <future>
#include <string>

#include "binomcoll/exact.hpp"
#include "binomcoll/image.hpp"

namespace binomcoll {

namespace {

// 2^34 candidate bits is a 2 GiB bitmap.
constexpr std::uint64_t kMaxRange = std::uint64_t{1} << 34;

std::uint64_t word_count(std::uint64_t bits) { return (bits + 63) / 64; }

} // namespace

void validate(const SievePlan& plan)
{
    if (plan.k < 2 || plan.l <= plan.k) {
        throw std::invalid_argument("sieve plan needs 2 <= k < l (k=" + std::to_string(plan.k)
                                    + ", l=" + std::to_string(plan.l) + ")");
    }
    if (plan.max_value < 0) {
        throw std::invalid_argument("sieve plan max_value must be non-negative");
    }
}

std::optional<std::uint64_t> largest_row_below(std::uint32_t l, const mpz_class& bound)
{
    std::uint64_t lo = 2 * std::uint64_t{l};
    if (binom_exact(lo, l) > bound) {
        return std::nullopt;
    }
    std::uint64_t hi = 2 * lo;
    while (binom_exact(hi, l) <= bound) {
        if (hi > (std::uint64_t{1} << 62)) {
            throw SieveError("largest_row_below: row bound exceeds 2^62");
        }
        lo = hi;
        hi *= 2;
    }
    // C(lo, l) <= bound < C(hi, l)
    while (hi - lo > 1) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (binom_exact(mid, l) <= bound) {
            lo = mid;
        }
        else {
            hi = mid;
        }
    }
    return lo;
}

std::vector<std::uint32_t> bad_residues(std::uint32_t k, std::uint32_t l, std::uint32_t p)
{
    if (p <= l) {
        throw std::invalid_argument("bad_residues: need p > l");
    }
    std::vector<bool> attainable(p, false);
    for (std::uint32_t r : binomial_residues(k, p)) {
        attainable[r] = true;
    }
    const std::vector<std::uint32_t> top = binomial_residues(l, p);
    std::vector<std::uint32_t> bad;
    for (std::uint32_t a = 0; a < p; ++a) {
        if (!attainable[top[a]]) {
            bad.push_back(a);
        }
    }
    return bad;
}

std::vector<std::uint32_t> sieve_primes(const SievePlan& plan)
{
    std::vector<std::uint32_t> primes = primes_up_to(plan.prime_bound);
    std::erase_if(primes, [&](std::uint32_t p) { return p <= plan.l; });
    return primes;
}

SieveState::SieveState(const SievePlan& plan) : plan_(plan)
{
    validate(plan);
    m_min_ = 2 * std::uint64_t{plan.l};
    const auto top = largest_row_below(plan.l, plan.max_value);
    if (!top) {
        m_max_ = m_min_ - 1;
        return;
    }
    m_max_ = *top;
    const std::uint64_t bits = m_max_ - m_min_ + 1;
    if (bits > kMaxRange) {
        throw SieveError("candidate range of " + std::to_string(bits) + " rows exceeds the bitmap limit");
    }
    words_.assign(word_count(bits), ~std::uint64_t{0});
    if (bits % 64 != 0) {
        words_.back() = (std::uint64_t{1} << (bits % 64)) - 1;
    }
    count_ = bits;
}

SieveState::SieveState(const SievePlan& plan, std::uint64_t m_min, std::uint64_t m_max,
                       std::vector<std::uint64_t> words, std::vector<std::uint32_t> primes_done)
    : plan_(plan), m_min_(m_min), m_max_(m_max), words_(std::move(words)),
      primes_done_(std::move(primes_done))
{
    validate(plan);
    const std::uint64_t bits = m_max_ >= m_min_ ? m_max_ - m_min_ + 1 : 0;
    if (words_.size() != word_count(bits)) {
        throw SieveError("survivor bitmap size does not match the m range");
    }
    if (bits % 64 != 0 && (words_.back() >> (bits % 64)) != 0) {
        throw SieveError("survivor bitmap has bits beyond m_max");
    }
    for (std::uint64_t w : words_) {
        count_ += static_cast<std::uint64_t>(std::popcount(w));
    }
}

bool SieveState::contains(std::uint64_t m) const noexcept
{
    if (m < m_min_ || m > m_max_) {
        return false;
    }
    const std::uint64_t off = m - m_min_;
    return ((words_[off / 64] >> (off % 64)) & 1) != 0;
}

std::vector<std::uint64_t> SieveState::survivors() const
{
    std::vector<std::uint64_t> out;
    out.reserve(count_);
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t bits = words_[w];
        while (bits != 0) {
            const int b = std::countr_zero(bits);
            out.push_back(m_min_ + 64 * w + static_cast<std::uint64_t>(b));
            bits &= bits - 1;
        }
    }
    return out;
}

void SieveState::remove_residues(std::uint32_t p, const std::vector<std::uint32_t>& bad)
{
    if (!empty_range()) {
        for (std::uint32_t a : bad) {
            const std::uint64_t first = m_min_ + (a + p - m_min_ % p) % p;
            for (std::uint64_t m = first; m <= m_max_; m += p) {
                const std::uint64_t off = m - m_min_;
                const std::uint64_t mask = std::uint64_t{1} << (off % 64);
                std::uint64_t& word = words_[off / 64];
                if ((word & mask) != 0) {
                    word &= ~mask;
                    --count_;
                }
            }
        }
    }
    primes_done_.push_back(p);
}

std::vector<std::uint64_t> SieveResult::survivors() const
{
    std::vector<std::uint64_t> out;
    for (const CollisionRecord& c : collisions) {
        out.push_back(c.m);
    }
    return out;
}

SieveResult sieve_pair(const SievePlan& plan, const std::optional<SieveState>& checkpoint,
                       const SieveOptions& options)
{
    validate(plan);
    SieveResult result;
    if (checkpoint) {
        if (!(checkpoint->plan() == plan)) {
            throw SieveError("checkpoint was written for a different plan");
        }
        result.state = *checkpoint;
    }
    else {
        result.state = SieveState(plan);
    }
    SieveState& state = result.state;

    std::vector<std::uint32_t> pending = sieve_primes(plan);
    std::erase_if(pending, [&](std::uint32_t p) {
        return std::find(state.primes_done().begin(), state.primes_done().end(), p)
               != state.primes_done().end();
    });

    const std::size_t batch = std::max(1u, options.jobs);
    std::size_t next = 0;
    while (next < pending.size() && state.survivor_count() > 0) {
        const std::size_t end = std::min(pending.size(), next + batch);
        std::vector<std::vector<std::uint32_t>> bad(end - next);
        if (batch == 1) {
            bad[0] = bad_residues(plan.k, plan.l, pending[next]);
        }
        else {
            std::vector<std::future<std::vector<std::uint32_t>>> work;
            for (std::size_t i = next; i < end; ++i) {
                work.push_back(std::async(std::launch::async, bad_residues, plan.k, plan.l, pending[i]));
            }
            for (std::size_t i = 0; i < work.size(); ++i) {
                bad[i] = work[i].get();
            }
        }
        for (std::size_t i = next; i < end && state.survivor_count() > 0; ++i) {
            state.remove_residues(pending[i], bad[i - next]);
            if (options.on_prime
                && !options.on_prime(state, SieveProgress{pending[i], state.survivor_count()})) {
                return result;
            }
        }
        next = end;
    }

    for (std::uint64_t m : state.survivors()) {
        mpz_class value = binom_exact(m, plan.l);
        if (auto n = is_binomial(value, plan.k)) {
            result.collisions.push_back(
                CollisionRecord{n->get_ui(), plan.k, m, plan.l, std::move(value)});
        }
        else {
            result.false_survivors.push_back(m);
        }
    }
    result.completed = true;
    return result;
}

} // namespace binomcoll
