#pragma once

#include <cstdint>
#include <optional>

#include <gmpxx.h>

namespace binomcoll {

using ExactValue = mpz_class;

// One binomial coefficient C(n, k). Search records additionally require
// 2 <= k and 2k <= n.
struct BinomPair {
    std::uint64_t n = 0;
    std::uint64_t k = 0;

    friend constexpr bool operator==(const BinomPair&, const BinomPair&) = default;
    friend constexpr auto operator<=>(const BinomPair&, const BinomPair&) = default;
};

constexpr bool is_normalized(const BinomPair& p) noexcept
{
    return p.k >= 2 && 2 * p.k <= p.n;
}

// C(n, k) by the running product r <- r * (n - k + j) / j; 0 when k > n.
ExactValue binom_exact(std::uint64_t n, std::uint64_t k);
ExactValue binom_exact(const mpz_class& n, std::uint64_t k);

inline ExactValue binom_exact(const BinomPair& p) { return binom_exact(p.n, p.k); }

// Pascal's rule: C(n+k, k) + C(n+k, k+1) = C(n+k+1, k+1).
inline ExactValue pascal_step(const ExactValue& current, const ExactValue& neighbor)
{
    return current + neighbor;
}

// The unique n >= 2k with C(n, k) == v, if any. Requires v >= 1 and k >= 2.
std::optional<mpz_class> is_binomial(const mpz_class& v, std::uint64_t k);

// Integer k-th root, rounded down.
mpz_class iroot(const mpz_class& v, unsigned long k);

} // namespace binomcoll
