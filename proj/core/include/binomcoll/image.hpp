#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace binomcoll {

bool is_prime(std::uint64_t p);
std::vector<std::uint32_t> primes_up_to(std::uint32_t bound);

// Legendre symbol (a/p) for an odd prime p: -1, 0 or 1.
int legendre(std::int64_t a, std::uint64_t p);

// Residues of n(n-1)...(n-k+1)/k! at n = 0..p-1, i.e. C(n,k) mod p for
// every residue class. Requires p prime and p > k.
std::vector<std::uint32_t> binomial_residues(std::uint32_t k, std::uint32_t p);

struct ImageStats {
    std::uint32_t k = 0;
    std::uint32_t p = 0;
    std::vector<std::uint32_t> image; // sorted
    std::uint64_t size = 0;           // A(k, p)
    mpq_class density;                // A(k, p) / p
};

// Image of n -> C(n,k) on F_p. k >= 1, p prime, p > k.
ImageStats image_mod_p(std::uint32_t k, std::uint32_t p);

// Known closed forms for A(3,p) (p >= 5) and A(4,p) (p > 5).
std::uint64_t closed_form_A(std::uint32_t k, std::uint64_t p);
bool has_closed_form_A(std::uint32_t k, std::uint64_t p);

// Limiting image density: sum_{i=1..k} (-1)^(i-1)/i! for odd k,
// sum_{i=1..k/2} (-1)^(i-1)/(2^i i!) for even k.
mpq_class density_limit(std::uint32_t k);

} // namespace binomcoll
