#pragma once

// Brute-force references used only by tests. None of these go through the
// running-product binomial, the priority queue or the interval layer.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline mpz_class factorial(unsigned long n)
{
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

// n! / (k! (n-k)!)
inline mpz_class binom_factorial(unsigned long n, unsigned long k)
{
    if (k > n) {
        return 0;
    }
    return factorial(n) / (factorial(k) * factorial(n - k));
}

inline mpz_class binom_gmp(unsigned long n, unsigned long k)
{
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

using Quad = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t, std::uint64_t>;

// All pairs (m, k), 2 <= k <= m/2, m - k < N, bucketed by exact value;
// returns every pairwise equality as (n,k,m,l) with k < l.
inline std::set<Quad> brute_collisions(std::uint64_t N)
{
    std::map<mpz_class, std::vector<std::pair<std::uint64_t, std::uint64_t>>> buckets;
    for (std::uint64_t i = 2; i < N; ++i) {
        for (std::uint64_t k = 2; k <= i; ++k) {
            buckets[binom_gmp(i + k, k)].emplace_back(i + k, k);
        }
    }
    std::set<Quad> out;
    for (const auto& [value, pairs] : buckets) {
        for (std::size_t a = 0; a < pairs.size(); ++a) {
            for (std::size_t b = a + 1; b < pairs.size(); ++b) {
                auto p = pairs[a];
                auto q = pairs[b];
                if (p.second > q.second) {
                    std::swap(p, q);
                }
                out.emplace(p.first, p.second, q.first, q.second);
            }
        }
    }
    return out;
}

struct NearQuad {
    std::uint64_t n, k, m, l;
    mpz_class d;
    friend bool operator<(const NearQuad& a, const NearQuad& b)
    {
        return std::tie(a.n, a.k, a.m, a.l) < std::tie(b.n, b.k, b.m, b.l);
    }
};

// Every pair with 0 < C(m,l) - C(n,k) = d and C(m,l) >= d^e, by sorting all
// values and walking back from each one.
inline std::set<NearQuad> brute_near(std::uint64_t N, unsigned e)
{
    std::vector<std::tuple<mpz_class, std::uint64_t, std::uint64_t>> all;
    for (std::uint64_t i = 2; i < N; ++i) {
        for (std::uint64_t k = 2; k <= i; ++k) {
            all.emplace_back(binom_gmp(i + k, k), i + k, k);
        }
    }
    std::sort(all.begin(), all.end());
    std::set<NearQuad> out;
    for (std::size_t j = 0; j < all.size(); ++j) {
        const auto& [v, m, l] = all[j];
        for (std::size_t t = j; t-- > 0;) {
            const auto& [u, n, k] = all[t];
            const mpz_class d = v - u;
            mpz_class bound;
            mpz_pow_ui(bound.get_mpz_t(), d.get_mpz_t(), e);
            if (bound > v) {
                break;
            }
            if (d > 0) {
                out.insert(NearQuad{n, k, m, l, d});
            }
        }
    }
    return out;
}

} // namespace oracle
