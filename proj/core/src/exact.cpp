#include "binomcoll/exact.hpp"

#include <stdexcept>

namespace binomcoll {

ExactValue binom_exact(std::uint64_t n, std::uint64_t k)
{
    if (k > n) {
        return 0;
    }
    if (k > n - k) {
        k = n - k;
    }
    mpz_class r = 1;
    const std::uint64_t base = n - k;
    for (std::uint64_t j = 1; j <= k; ++j) {
        // r == C(base + j - 1, j - 1) here, so the division is exact.
        mpz_mul_ui(r.get_mpz_t(), r.get_mpz_t(), base + j);
        mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), j);
    }
    return r;
}

ExactValue binom_exact(const mpz_class& n, std::uint64_t k)
{
    if (n < 0) {
        throw std::invalid_argument("binom_exact: negative row");
    }
    if (mpz_fits_ulong_p(n.get_mpz_t()) != 0) {
        return binom_exact(static_cast<std::uint64_t>(n.get_ui()), k);
    }
    // n exceeds 64 bits, so k < n and no symmetry reduction applies.
    mpz_class r = 1;
    mpz_class factor = n - k;
    for (std::uint64_t j = 1; j <= k; ++j) {
        ++factor;
        r *= factor;
        mpz_divexact_ui(r.get_mpz_t(), r.get_mpz_t(), j);
    }
    return r;
}

std::optional<mpz_class> is_binomial(const mpz_class& v, std::uint64_t k)
{
    if (v < 1 || k < 2) {
        throw std::invalid_argument("is_binomial: requires v >= 1 and k >= 2");
    }
    // C(n, k) is strictly increasing in n for n >= 2k >= 4.
    mpz_class lo = 2 * k;
    if (binom_exact(lo, k) > v) {
        return std::nullopt;
    }
    mpz_class hi = 2 * lo;
    while (binom_exact(hi, k) < v) {
        lo = hi;
        hi *= 2;
    }
    // Invariant: C(lo, k) <= v <= C(hi, k).
    while (hi - lo > 1) {
        mpz_class mid = (lo + hi) / 2;
        if (binom_exact(mid, k) <= v) {
            lo = mid;
        }
        else {
            hi = mid;
        }
    }
    if (binom_exact(lo, k) == v) {
        return lo;
    }
    if (binom_exact(hi, k) == v) {
        return hi;
    }
    return std::nullopt;
}

mpz_class iroot(const mpz_class& v, unsigned long k)
{
    if (v < 0 || k == 0) {
        throw std::invalid_argument("iroot: requires v >= 0 and k >= 1");
    }
    mpz_class r;
    mpz_root(r.get_mpz_t(), v.get_mpz_t(), k);
    return r;
}

} // namespace binomcoll
