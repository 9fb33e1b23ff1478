#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace binomcoll {

enum class Rounding { Down, Up };

// Non-negative number sig * 2^exp with a significand of `precision` bits
// whose top bit is set, or the canonical zero (sig == 0, exp == 0).
// The exponent is a full signed 64-bit integer, so magnitudes far beyond
// any hardware float format are representable.
class ExtFloat {
public:
    using Significand = unsigned __int128;

    static constexpr unsigned kMinPrecision = 8;
    static constexpr unsigned kMaxPrecision = 128;
    static constexpr unsigned kDefaultPrecision = 128;

    ExtFloat() = default;

    static ExtFloat zero(unsigned precision = kDefaultPrecision);
    static ExtFloat power_of_two(std::int64_t e, unsigned precision = kDefaultPrecision);

    // sig must be nonzero and fit into `precision` bits; it is shifted up to
    // normalized form without loss.
    static ExtFloat from_parts(Significand sig, std::int64_t exp,
                               unsigned precision = kDefaultPrecision);

    // a + b rounded toward -inf (Down) or +inf (Up). Both operands must carry
    // the same precision.
    static ExtFloat add(const ExtFloat& a, const ExtFloat& b, Rounding mode);

    bool is_zero() const noexcept { return sig_ == 0; }
    Significand significand() const noexcept { return sig_; }
    std::int64_t exponent() const noexcept { return exp_; }
    unsigned precision() const noexcept { return prec_; }

    // floor(log2(value)); undefined for zero.
    std::int64_t top_bit() const noexcept { return exp_ + static_cast<std::int64_t>(prec_) - 1; }

    // The adjacent representable value above this one.
    ExtFloat next_up() const;

    // Exact value as a rational. Cost grows with |exponent|.
    mpq_class to_rational() const;

    friend bool operator==(const ExtFloat& a, const ExtFloat& b) noexcept
    {
        return a.sig_ == b.sig_ && a.exp_ == b.exp_;
    }
    friend std::strong_ordering operator<=>(const ExtFloat& a, const ExtFloat& b) noexcept;

private:
    ExtFloat(Significand sig, std::int64_t exp, unsigned prec) noexcept
        : sig_(sig), exp_(exp), prec_(prec)
    {}

    Significand sig_ = 0;
    std::int64_t exp_ = 0;
    unsigned prec_ = kDefaultPrecision;
};

// Closed interval [lo, hi] with lo rounded down and hi rounded up.
struct Interval {
    ExtFloat lo;
    ExtFloat hi;

    static Interval point(const ExtFloat& x) { return {x, x}; }

    bool is_point() const noexcept { return lo == hi; }
    // True iff lo <= v <= hi.
    bool contains(const mpz_class& v) const;

    friend bool operator==(const Interval&, const Interval&) = default;
};

enum class IntervalOrder { Less, Greater, Overlapping };

// Tightest `precision`-bit interval around v.
Interval ext_from_exact(const mpz_class& v, unsigned precision = ExtFloat::kDefaultPrecision);

Interval interval_add(const Interval& a, const Interval& b);

// Less iff a.hi < b.lo, Greater iff a.lo > b.hi, Overlapping otherwise.
IntervalOrder interval_compare(const Interval& a, const Interval& b);

// hi - lo as an exact rational.
mpq_class interval_width(const Interval& a);

// Largest digit count ext_to_decimal accepts at a given precision:
// floor(precision * log10(2)) - 1.
unsigned max_decimal_digits(unsigned precision);

// Scientific rendering "d.ddd...eE" rounded to nearest at `digits`
// significant digits, lowercase 'e', no '+' on positive exponents.
std::string ext_to_decimal(const ExtFloat& x, unsigned digits);

// Decimal rendering of an exact integer in the same format.
std::string exact_to_decimal(const mpz_class& v, unsigned digits);

// Parses "d.ddde[-]E" (as produced above) into an exact rational.
mpq_class parse_decimal(const std::string& text);

} // namespace binomcoll
