#include "binomcoll/scan.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>

#include "binomcoll/extfloat.hpp"

namespace binomcoll {

namespace {

struct ExactPolicy {
    using Value = mpz_class;

    struct Seen {
        BinomPair pair;
        Value value;
    };

    Value from_exact(const mpz_class& v) const { return v; }
    static bool key_less(const Value& a, const Value& b) { return a < b; }
    static IntervalOrder compare(const Value& a, const Value& b)
    {
        const int c = cmp(a, b);
        return c < 0 ? IntervalOrder::Less : c > 0 ? IntervalOrder::Greater : IntervalOrder::Overlapping;
    }
    static Value add(const Value& a, const Value& b) { return pascal_step(a, b); }
    static const mpz_class& exact_of(Seen& s) { return s.value; }
    static bool holds(const Value& v, const mpz_class& exact) { return v == exact; }

    // Largest admissible difference floor(x^(1/e)).
    static Value near_slack(const Value& x, unsigned e) { return iroot(x, e); }
    static bool below_with_slack(const Value& e, const Value& slack, const Value& x)
    {
        return e + slack < x;
    }
};

struct ApproxPolicy {
    using Value = Interval;
    unsigned precision;

    struct Seen {
        BinomPair pair;
        Value value;
        std::optional<mpz_class> exact;
    };

    Value from_exact(const mpz_class& v) const { return ext_from_exact(v, precision); }
    static bool key_less(const Value& a, const Value& b)
    {
        return std::tie(a.lo, a.hi) < std::tie(b.lo, b.hi);
    }
    static IntervalOrder compare(const Value& a, const Value& b) { return interval_compare(a, b); }
    static Value add(const Value& a, const Value& b) { return interval_add(a, b); }
    static const mpz_class& exact_of(Seen& s)
    {
        if (!s.exact) {
            s.exact = binom_exact(s.pair);
        }
        return *s.exact;
    }
    static bool holds(const Value& v, const mpz_class& exact) { return v.contains(exact); }

    // A power of two at least x^(1/e): x < 2^(top_bit+1).
    Value near_slack(const Value& x, unsigned e) const
    {
        const std::int64_t bits = x.hi.top_bit() + 1;
        const std::int64_t c = (bits + static_cast<std::int64_t>(e) - 1) / static_cast<std::int64_t>(e);
        return Interval::point(ExtFloat::power_of_two(c, precision));
    }
    static bool below_with_slack(const Value& e, const Value& slack, const Value& x)
    {
        return interval_add(e, slack).hi < x.lo;
    }
};

constexpr bool kIsExact(const ExactPolicy*) { return true; }
constexpr bool kIsExact(const ApproxPolicy*) { return false; }

template <typename Policy>
class Scanner {
public:
    using Value = typename Policy::Value;
    using Seen = typename Policy::Seen;

    Scanner(const ScanConfig& config, Policy policy, const ScanSink& sink)
        : config_(config), policy_(policy), sink_(sink)
    {}

    ScanStats run()
    {
        const auto size = static_cast<std::uint32_t>(config_.max_index);
        values_.reserve(size);
        kcur_.assign(size, 2);
        for (std::uint32_t i = 0; i < size; ++i) {
            const mpz_class n = i + 2;
            values_.push_back(policy_.from_exact(n * (n - 1) / 2));
        }
        // Diagonals 0 and 1 hold no admissible entry (k = 2 > i).
        for (std::uint32_t i = 2; i < size; ++i) {
            heap_.push_back(i);
        }
        for (std::size_t j = heap_.size() / 2; j-- > 0;) {
            sift_down(j);
        }

        while (!heap_.empty()) {
            const std::uint32_t slot = heap_.front();
            visit(slot);
            const std::uint32_t k = kcur_[slot];
            if (k < slot) {
                advance(slot);
                sift_down(0);
            }
            else {
                heap_.front() = heap_.back();
                heap_.pop_back();
                if (!heap_.empty()) {
                    sift_down(0);
                }
            }
        }
        return stats_;
    }

private:
    // True when slot a should be popped before slot b: smaller value first,
    // larger k first among equal keys.
    bool before(std::uint32_t a, std::uint32_t b) const
    {
        if (Policy::key_less(values_[a], values_[b])) {
            return true;
        }
        if (Policy::key_less(values_[b], values_[a])) {
            return false;
        }
        return kcur_[a] != kcur_[b] ? kcur_[a] > kcur_[b] : a < b;
    }

    void sift_down(std::size_t j)
    {
        const std::size_t n = heap_.size();
        const std::uint32_t moving = heap_[j];
        for (;;) {
            std::size_t child = 2 * j + 1;
            if (child >= n) {
                break;
            }
            if (child + 1 < n && before(heap_[child + 1], heap_[child])) {
                ++child;
            }
            if (!before(heap_[child], moving)) {
                break;
            }
            heap_[j] = heap_[child];
            j = child;
        }
        heap_[j] = moving;
    }

    // Replaces C(i+k, k) in slot i with C(i+k+1, k+1).
    void advance(std::uint32_t slot)
    {
        const std::uint64_t k = kcur_[slot];
        const std::uint64_t row = slot + k;
        if (k + 1 == slot) {
            // C(2i-1, i) == C(2i-1, i-1), the current value itself.
            values_[slot] = Policy::add(values_[slot], values_[slot]);
        }
        else if (kcur_[slot - 1] == k + 1) {
            if (config_.deep_check && !Policy::holds(values_[slot - 1], binom_exact(row, k + 1))) {
                throw ScanInvariantError("table slot " + std::to_string(slot - 1)
                                         + " does not hold C(" + std::to_string(row) + ","
                                         + std::to_string(k + 1) + ")");
            }
            values_[slot] = Policy::add(values_[slot], values_[slot - 1]);
        }
        else if constexpr (kIsExact(static_cast<Policy*>(nullptr))) {
            throw ScanInvariantError("table slot " + std::to_string(slot - 1) + " is at index "
                                     + std::to_string(kcur_[slot - 1]) + ", expected "
                                     + std::to_string(k + 1));
        }
        else {
            ++stats_.neighbor_recomputes;
            values_[slot] = Policy::add(values_[slot], policy_.from_exact(binom_exact(row, k + 1)));
        }
        kcur_[slot] = static_cast<std::uint32_t>(k + 1);
        if (config_.deep_check && !Policy::holds(values_[slot], binom_exact(row + 1, k + 1))) {
            throw ScanInvariantError("slot " + std::to_string(slot) + " lost C("
                                     + std::to_string(row + 1) + "," + std::to_string(k + 1) + ")");
        }
    }

    void visit(std::uint32_t slot)
    {
        ++stats_.pops;
        const std::uint64_t k = kcur_[slot];
        Seen current{BinomPair{slot + k, k}, values_[slot]};

        if constexpr (kIsExact(static_cast<Policy*>(nullptr))) {
            if (last_popped_ && current.value < *last_popped_) {
                throw ScanInvariantError("pop order decreased at C(" + std::to_string(slot + k) + ","
                                         + std::to_string(k) + ")");
            }
            last_popped_ = current.value;
        }

        const bool near = config_.mode == ScanMode::Near;
        if (near) {
            const Value slack = policy_.near_slack(current.value, config_.near_exponent);
            std::erase_if(window_, [&](const Seen& e) {
                return Policy::below_with_slack(e.value, slack, current.value);
            });
        }
        else {
            std::erase_if(window_, [&](const Seen& e) {
                return Policy::compare(e.value, current.value) == IntervalOrder::Less;
            });
        }

        std::vector<ScanRecord> found;
        for (Seen& earlier : window_) {
            if (!near && Policy::compare(earlier.value, current.value) != IntervalOrder::Overlapping) {
                continue;
            }
            if (!kIsExact(static_cast<Policy*>(nullptr))) {
                ++stats_.exact_compares;
            }
            const mpz_class& a = Policy::exact_of(earlier);
            const mpz_class& b = Policy::exact_of(current);
            const int c = cmp(a, b);
            if (c == 0) {
                const auto& [lo, hi] = earlier.pair.k < current.pair.k
                                           ? std::tie(earlier.pair, current.pair)
                                           : std::tie(current.pair, earlier.pair);
                found.emplace_back(CollisionRecord{lo.n, lo.k, hi.n, hi.k, a});
                continue;
            }
            if (!near) {
                continue;
            }
            const auto& [small, large] = c < 0 ? std::tie(earlier, current) : std::tie(current, earlier);
            const mpz_class& small_value = c < 0 ? a : b;
            const mpz_class& large_value = c < 0 ? b : a;
            mpz_class d = large_value - small_value;
            mpz_class bound;
            mpz_pow_ui(bound.get_mpz_t(), d.get_mpz_t(), config_.near_exponent);
            if (large_value >= bound) {
                found.emplace_back(NearCollisionRecord{small.pair.n, small.pair.k, large.pair.n,
                                                       large.pair.k, std::move(d), large_value});
            }
        }

        window_.push_back(std::move(current));
        stats_.max_window = std::max<std::uint64_t>(stats_.max_window, window_.size());

        std::sort(found.begin(), found.end(), [](const ScanRecord& x, const ScanRecord& y) {
            auto key = [](const ScanRecord& r) {
                return std::visit(
                    [](const auto& v) { return std::tuple(v.k, v.n, v.l, v.m); }, r);
            };
            return key(x) < key(y);
        });
        for (const ScanRecord& r : found) {
            if (std::holds_alternative<CollisionRecord>(r)) {
                ++stats_.collisions;
            }
            else {
                ++stats_.near_collisions;
            }
            sink_(r);
        }
    }

    const ScanConfig& config_;
    Policy policy_;
    const ScanSink& sink_;
    std::vector<Value> values_;
    std::vector<std::uint32_t> kcur_;
    std::vector<std::uint32_t> heap_;
    std::vector<Seen> window_;
    std::optional<mpz_class> last_popped_;
    ScanStats stats_;
};

} // namespace

void validate(const ScanConfig& config)
{
    if (config.max_index < 1 || config.max_index > (std::uint64_t{1} << 31)) {
        throw ScanConfigError("max_index must lie in [1, 2^31]");
    }
    if (config.near_exponent < 1) {
        throw ScanConfigError("near_exponent must be at least 1");
    }
    if (config.precision_bits < ExtFloat::kMinPrecision
        || config.precision_bits > ExtFloat::kMaxPrecision) {
        throw ScanConfigError("precision_bits must lie in [8, 128], got "
                              + std::to_string(config.precision_bits));
    }
}

ScanStats scan(const ScanConfig& config, const ScanSink& sink)
{
    validate(config);
    if (config.exact_mode) {
        return Scanner<ExactPolicy>(config, ExactPolicy{}, sink).run();
    }
    return Scanner<ApproxPolicy>(config, ApproxPolicy{config.precision_bits}, sink).run();
}

std::vector<ScanRecord> scan_all(const ScanConfig& config, ScanStats* stats)
{
    std::vector<ScanRecord> out;
    const ScanStats s = scan(config, [&](const ScanRecord& r) { out.push_back(r); });
    if (stats != nullptr) {
        *stats = s;
    }
    return out;
}

Interval pascal_interval(std::uint64_t n, std::uint64_t k, unsigned depth, unsigned precision)
{
    if (depth > n) {
        throw std::invalid_argument("pascal_interval: depth exceeds the row");
    }
    const std::uint64_t row = n - depth;
    // Seeds C(row, j) for j = k - depth .. k; indices below zero contribute 0.
    std::vector<Interval> level;
    level.reserve(depth + 1);
    mpz_class c;
    for (unsigned t = 0; t <= depth; ++t) {
        const auto j = static_cast<std::int64_t>(k) - static_cast<std::int64_t>(depth) + t;
        if (j < 0) {
            level.push_back(Interval::point(ExtFloat::zero(precision)));
            continue;
        }
        const auto uj = static_cast<std::uint64_t>(j);
        if (c == 0) {
            c = binom_exact(row, uj);
        }
        else {
            // C(row, j) = C(row, j-1) * (row - j + 1) / j
            c *= row - uj + 1;
            mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), uj);
        }
        level.push_back(ext_from_exact(c, precision));
    }
    for (unsigned d = 0; d < depth; ++d) {
        for (std::size_t t = 0; t + 1 < level.size(); ++t) {
            level[t] = interval_add(level[t], level[t + 1]);
        }
        level.pop_back();
    }
    return level.front();
}

PairClass classify_pair(const BinomPair& a, const BinomPair& b, unsigned near_exponent)
{
    if (!is_normalized(a) || !is_normalized(b)) {
        throw std::invalid_argument("classify_pair: pairs must satisfy 2 <= k <= n/2");
    }
    if (a == b) {
        throw std::invalid_argument("classify_pair: pairs must be distinct");
    }
    const mpz_class va = binom_exact(a);
    const mpz_class vb = binom_exact(b);
    if (va == vb) {
        return {PairClass::Kind::Collision, 0};
    }
    mpz_class d = abs(va - vb);
    mpz_class bound;
    mpz_pow_ui(bound.get_mpz_t(), d.get_mpz_t(), near_exponent);
    if ((va > vb ? va : vb) >= bound) {
        return {PairClass::Kind::NearCollision, std::move(d)};
    }
    return {PairClass::Kind::Neither, 0};
}

} // namespace binomcoll
