#include "binomcoll/extfloat.hpp"

#include <cmath>
#include <stdexcept>

namespace binomcoll {

static_assert(GMP_LIMB_BITS == 64, "significand import assumes 64-bit limbs");

namespace {

using Sig = ExtFloat::Significand;

void check_precision(unsigned precision)
{
    if (precision < ExtFloat::kMinPrecision || precision > ExtFloat::kMaxPrecision) {
        throw std::invalid_argument("ExtFloat precision must lie in [8, 128] bits, got "
                                    + std::to_string(precision));
    }
}

unsigned bit_length(Sig v) noexcept
{
    const auto hi = static_cast<std::uint64_t>(v >> 64);
    if (hi != 0) {
        return 128 - static_cast<unsigned>(__builtin_clzll(hi));
    }
    const auto lo = static_cast<std::uint64_t>(v);
    return lo == 0 ? 0 : 64 - static_cast<unsigned>(__builtin_clzll(lo));
}

Sig top_mask(unsigned precision) noexcept { return Sig{1} << (precision - 1); }

mpz_class to_mpz(Sig v)
{
    mpz_class r = static_cast<unsigned long>(v >> 64);
    r <<= 64;
    r += static_cast<unsigned long>(static_cast<std::uint64_t>(v));
    return r;
}

Sig low_bits_to_sig(const mpz_class& v)
{
    const auto lo = static_cast<std::uint64_t>(mpz_getlimbn(v.get_mpz_t(), 0));
    const auto hi = mpz_size(v.get_mpz_t()) > 1
                        ? static_cast<std::uint64_t>(mpz_getlimbn(v.get_mpz_t(), 1))
                        : std::uint64_t{0};
    return (Sig{hi} << 64) | Sig{lo};
}

mpz_class pow10(unsigned long e)
{
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
    return r;
}

// Renders num/den (> 0) with `digits` significant digits, rounding half up.
// `exp10` is an estimate of floor(log10(num/den)); off-by-a-few is fine.
std::string render_scientific(const mpz_class& num, const mpz_class& den,
                              std::int64_t exp10, unsigned digits)
{
    const mpz_class upper = pow10(digits);
    const mpz_class lower = pow10(digits - 1);
    mpz_class q;
    for (;;) {
        const std::int64_t shift = exp10 - static_cast<std::int64_t>(digits) + 1;
        mpz_class n = num;
        mpz_class d = den;
        if (shift >= 0) {
            d *= pow10(static_cast<unsigned long>(shift));
        }
        else {
            n *= pow10(static_cast<unsigned long>(-shift));
        }
        q = (2 * n + d) / (2 * d);
        if (q >= upper) {
            ++exp10;
        }
        else if (q < lower) {
            --exp10;
        }
        else {
            break;
        }
    }
    const std::string body = q.get_str();
    std::string out(1, body[0]);
    if (digits > 1) {
        out += '.';
        out.append(body, 1, std::string::npos);
    }
    out += 'e';
    out += std::to_string(exp10);
    return out;
}

std::string zero_scientific(unsigned digits)
{
    std::string out = "0";
    if (digits > 1) {
        out += '.';
        out.append(digits - 1, '0');
    }
    return out + "e0";
}

} // namespace

ExtFloat ExtFloat::zero(unsigned precision)
{
    check_precision(precision);
    return ExtFloat(0, 0, precision);
}

ExtFloat ExtFloat::power_of_two(std::int64_t e, unsigned precision)
{
    check_precision(precision);
    return ExtFloat(top_mask(precision), e - static_cast<std::int64_t>(precision) + 1, precision);
}

ExtFloat ExtFloat::from_parts(Significand sig, std::int64_t exp, unsigned precision)
{
    check_precision(precision);
    const unsigned len = bit_length(sig);
    if (len == 0 || len > precision) {
        throw std::invalid_argument("ExtFloat::from_parts: significand out of range");
    }
    const unsigned shift = precision - len;
    return ExtFloat(sig << shift, exp - static_cast<std::int64_t>(shift), precision);
}

ExtFloat ExtFloat::next_up() const
{
    if (is_zero()) {
        throw std::domain_error("ExtFloat::next_up of zero");
    }
    const Sig top = top_mask(prec_);
    Sig s = sig_ + 1;
    std::int64_t e = exp_;
    // All-ones significand rolls over to the next power of two.
    if (prec_ == kMaxPrecision ? s == 0 : s == top << 1) {
        s = top;
        ++e;
    }
    return ExtFloat(s, e, prec_);
}

ExtFloat ExtFloat::add(const ExtFloat& a, const ExtFloat& b, Rounding mode)
{
    if (a.prec_ != b.prec_) {
        throw std::invalid_argument("ExtFloat::add: precision mismatch");
    }
    if (a.is_zero()) {
        return b;
    }
    if (b.is_zero()) {
        return a;
    }
    const ExtFloat& big = a < b ? b : a;
    const ExtFloat& small = a < b ? a : b;
    const unsigned prec = big.prec_;
    const Sig top = top_mask(prec);

    // Equal precision and big >= small imply big.exp_ >= small.exp_.
    const std::int64_t shift = big.exp_ - small.exp_;
    Sig addend = 0;
    bool sticky = false;
    if (shift >= 128) {
        sticky = true;
    }
    else if (shift > 0) {
        addend = small.sig_ >> shift;
        sticky = (small.sig_ & ((Sig{1} << shift) - 1)) != 0;
    }
    else {
        addend = small.sig_;
    }

    Sig s = big.sig_ + addend;
    std::int64_t e = big.exp_;
    const bool carry = prec == kMaxPrecision ? s < big.sig_ : (s >> prec) != 0;
    if (carry) {
        sticky = sticky || (s & 1) != 0;
        s >>= 1;
        if (prec == kMaxPrecision) {
            s |= top;
        }
        ++e;
    }
    ExtFloat r(s, e, prec);
    if (sticky && mode == Rounding::Up) {
        return r.next_up();
    }
    return r;
}

mpq_class ExtFloat::to_rational() const
{
    mpq_class r(to_mpz(sig_));
    if (exp_ >= 0) {
        mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(exp_));
    }
    else {
        mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-exp_));
    }
    return r;
}

std::strong_ordering operator<=>(const ExtFloat& a, const ExtFloat& b) noexcept
{
    if (a.is_zero() || b.is_zero()) {
        return !a.is_zero() <=> !b.is_zero();
    }
    if (auto c = a.top_bit() <=> b.top_bit(); c != 0) {
        return c;
    }
    if (a.prec_ == b.prec_) {
        return a.sig_ <=> b.sig_;
    }
    const unsigned p = a.prec_ > b.prec_ ? a.prec_ : b.prec_;
    return (a.sig_ << (p - a.prec_)) <=> (b.sig_ << (p - b.prec_));
}

bool Interval::contains(const mpz_class& v) const
{
    const mpq_class q(v);
    return lo.to_rational() <= q && q <= hi.to_rational();
}

Interval ext_from_exact(const mpz_class& v, unsigned precision)
{
    check_precision(precision);
    if (v < 0) {
        throw std::invalid_argument("ext_from_exact: negative value");
    }
    if (v == 0) {
        return Interval::point(ExtFloat::zero(precision));
    }
    const std::size_t len = mpz_sizeinbase(v.get_mpz_t(), 2);
    if (len <= precision) {
        return Interval::point(ExtFloat::from_parts(low_bits_to_sig(v), 0, precision));
    }
    const auto shift = static_cast<mp_bitcnt_t>(len - precision);
    mpz_class t;
    mpz_tdiv_q_2exp(t.get_mpz_t(), v.get_mpz_t(), shift);
    const bool inexact = mpz_scan1(v.get_mpz_t(), 0) < shift;
    const ExtFloat lo =
        ExtFloat::from_parts(low_bits_to_sig(t), static_cast<std::int64_t>(shift), precision);
    return {lo, inexact ? lo.next_up() : lo};
}

Interval interval_add(const Interval& a, const Interval& b)
{
    return {ExtFloat::add(a.lo, b.lo, Rounding::Down), ExtFloat::add(a.hi, b.hi, Rounding::Up)};
}

IntervalOrder interval_compare(const Interval& a, const Interval& b)
{
    if (a.hi < b.lo) {
        return IntervalOrder::Less;
    }
    if (a.lo > b.hi) {
        return IntervalOrder::Greater;
    }
    return IntervalOrder::Overlapping;
}

mpq_class interval_width(const Interval& a)
{
    return a.hi.to_rational() - a.lo.to_rational();
}

unsigned max_decimal_digits(unsigned precision)
{
    return static_cast<unsigned>(std::floor(precision * std::log10(2.0))) - 1;
}

std::string ext_to_decimal(const ExtFloat& x, unsigned digits)
{
    if (digits == 0 || digits > max_decimal_digits(x.precision())) {
        throw std::invalid_argument("ext_to_decimal: " + std::to_string(digits)
                                    + " digits exceed the " + std::to_string(x.precision())
                                    + "-bit significand");
    }
    if (x.is_zero()) {
        return zero_scientific(digits);
    }
    mpz_class num = to_mpz(x.significand());
    mpz_class den = 1;
    if (x.exponent() >= 0) {
        num <<= static_cast<mp_bitcnt_t>(x.exponent());
    }
    else {
        den <<= static_cast<mp_bitcnt_t>(-x.exponent());
    }
    const long double log2_value =
        static_cast<long double>(x.exponent()) + std::log2(static_cast<long double>(x.significand()));
    const auto exp10 =
        static_cast<std::int64_t>(std::floor(log2_value * 0.30102999566398119521373889472449302677L));
    return render_scientific(num, den, exp10, digits);
}

std::string exact_to_decimal(const mpz_class& v, unsigned digits)
{
    if (digits == 0) {
        throw std::invalid_argument("exact_to_decimal: digits must be positive");
    }
    if (v < 0) {
        throw std::invalid_argument("exact_to_decimal: negative value");
    }
    if (v == 0) {
        return zero_scientific(digits);
    }
    const auto exp10 = static_cast<std::int64_t>(mpz_sizeinbase(v.get_mpz_t(), 10)) - 1;
    return render_scientific(v, 1, exp10, digits);
}

mpq_class parse_decimal(const std::string& text)
{
    const auto epos = text.find('e');
    if (epos == std::string::npos || epos == 0) {
        throw std::invalid_argument("parse_decimal: missing exponent in '" + text + "'");
    }
    std::string mantissa;
    std::size_t frac = 0;
    bool seen_dot = false;
    for (std::size_t i = 0; i < epos; ++i) {
        const char c = text[i];
        if (c == '.' && !seen_dot) {
            seen_dot = true;
        }
        else if (c >= '0' && c <= '9') {
            mantissa += c;
            frac += seen_dot ? 1 : 0;
        }
        else {
            throw std::invalid_argument("parse_decimal: bad mantissa in '" + text + "'");
        }
    }
    const std::int64_t e = std::stoll(text.substr(epos + 1)) - static_cast<std::int64_t>(frac);
    mpq_class r(mpz_class(mantissa, 10));
    if (e >= 0) {
        r *= pow10(static_cast<unsigned long>(e));
    }
    else {
        r /= pow10(static_cast<unsigned long>(-e));
    }
    r.canonicalize();
    return r;
}

} // namespace binomcoll
