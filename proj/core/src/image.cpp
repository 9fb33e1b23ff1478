#include "binomcoll/image.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace binomcoll {

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t p)
{
    unsigned __int128 result = 1;
    unsigned __int128 b = base % p;
    while (e != 0) {
        if ((e & 1) != 0) {
            result = result * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

} // namespace

bool is_prime(std::uint64_t p)
{
    if (p < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t bound)
{
    std::vector<std::uint32_t> out;
    if (bound < 2) {
        return out;
    }
    std::vector<bool> composite(bound + 1, false);
    for (std::uint32_t i = 2; i <= bound; ++i) {
        if (composite[i]) {
            continue;
        }
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t{i} * i; j <= bound; j += i) {
            composite[j] = true;
        }
    }
    return out;
}

int legendre(std::int64_t a, std::uint64_t p)
{
    if (p < 3 || p % 2 == 0) {
        throw std::invalid_argument("legendre: p must be an odd prime");
    }
    const auto sp = static_cast<std::int64_t>(p);
    const auto r = static_cast<std::uint64_t>(((a % sp) + sp) % sp);
    if (r == 0) {
        return 0;
    }
    // Euler's criterion.
    return pow_mod(r, (p - 1) / 2, p) == 1 ? 1 : -1;
}

std::vector<std::uint32_t> binomial_residues(std::uint32_t k, std::uint32_t p)
{
    if (k >= p) {
        throw std::domain_error("binomial_residues: need p > k so that k! is invertible mod p (k="
                                + std::to_string(k) + ", p=" + std::to_string(p) + ")");
    }
    std::uint64_t fact = 1;
    for (std::uint32_t j = 2; j <= k; ++j) {
        fact = fact * j % p;
    }
    const std::uint64_t inv_fact = pow_mod(fact, p - 2, p);
    std::vector<std::uint32_t> out(p);
    for (std::uint32_t n = 0; n < p; ++n) {
        std::uint64_t prod = inv_fact;
        for (std::uint32_t j = 0; j < k; ++j) {
            prod = prod * ((n + p - j) % p) % p;
        }
        out[n] = static_cast<std::uint32_t>(prod);
    }
    return out;
}

ImageStats image_mod_p(std::uint32_t k, std::uint32_t p)
{
    if (k < 1) {
        throw std::invalid_argument("image_mod_p: k must be at least 1");
    }
    if (!is_prime(p)) {
        throw std::invalid_argument("image_mod_p: " + std::to_string(p) + " is not prime");
    }
    ImageStats stats;
    stats.k = k;
    stats.p = p;
    std::vector<bool> hit(p, false);
    for (std::uint32_t r : binomial_residues(k, p)) {
        hit[r] = true;
    }
    for (std::uint32_t r = 0; r < p; ++r) {
        if (hit[r]) {
            stats.image.push_back(r);
        }
    }
    stats.size = stats.image.size();
    stats.density = mpq_class(static_cast<unsigned long>(stats.size), p);
    stats.density.canonicalize();
    return stats;
}

bool has_closed_form_A(std::uint32_t k, std::uint64_t p)
{
    return is_prime(p) && ((k == 3 && p >= 5) || (k == 4 && p > 5));
}

std::uint64_t closed_form_A(std::uint32_t k, std::uint64_t p)
{
    if (!has_closed_form_A(k, p)) {
        throw std::invalid_argument("closed_form_A: no closed form for k=" + std::to_string(k)
                                    + ", p=" + std::to_string(p));
    }
    if (k == 3) {
        // (2p + 1)/3 for p = 1 mod 6, (2p - 1)/3 for p = -1 mod 6.
        return p % 6 == 1 ? (2 * p + 1) / 3 : (2 * p - 1) / 3;
    }
    const std::int64_t numerator = 3 * static_cast<std::int64_t>(p) + 4 + legendre(-1, p)
                                   + 2 * legendre(5, p) - 2 * legendre(10, p);
    if (numerator % 8 != 0) {
        throw std::logic_error("closed_form_A: non-integral value for p=" + std::to_string(p));
    }
    return static_cast<std::uint64_t>(numerator / 8);
}

mpq_class density_limit(std::uint32_t k)
{
    if (k < 1) {
        throw std::invalid_argument("density_limit: k must be at least 1");
    }
    mpq_class sum = 0;
    mpz_class fact = 1;
    mpz_class pow2 = 1;
    const bool even = k % 2 == 0;
    const std::uint32_t terms = even ? k / 2 : k;
    for (std::uint32_t i = 1; i <= terms; ++i) {
        fact *= i;
        if (even) {
            pow2 *= 2;
        }
        mpq_class term(1);
        term /= mpq_class(fact * pow2);
        if (i % 2 == 1) {
            sum += term;
        }
        else {
            sum -= term;
        }
    }
    sum.canonicalize();
    return sum;
}

} // namespace binomcoll
