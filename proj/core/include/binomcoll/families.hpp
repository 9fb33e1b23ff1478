#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace binomcoll {

// Integer polynomial, coefficients from the constant term upward.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<mpz_class> coeffs);

    // Horner evaluation.
    mpz_class operator()(const mpz_class& x) const;
    std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
    const std::vector<mpz_class>& coefficients() const noexcept { return coeffs_; }
    // e.g. "24x^3-36x^2+15x-1"
    std::string to_string() const;

private:
    std::vector<mpz_class> coeffs_;
};

// C(n(x), k_left) + C(d_arg(x), 2) = C(a(x), 2) for all integers x >= 1.
struct IdentityFamily {
    int id = 0;
    unsigned k_left = 0;
    Polynomial n_poly;
    Polynomial d_arg_poly;
    Polynomial a_poly;
};

const std::vector<IdentityFamily>& identity_families();
// Throws std::out_of_range for ids outside 1..7.
const IdentityFamily& identity_family(int id);

struct IdentityEvaluation {
    int id = 0;
    mpz_class x;
    mpz_class n_arg;
    mpz_class d_arg;
    mpz_class a_arg;
    mpz_class left_big;   // C(n_arg, k_left)
    mpz_class left_small; // C(d_arg, 2)
    mpz_class right;      // C(a_arg, 2)
    mpz_class d;          // == left_small
    bool holds = false;
    // d == 0: an equality of binomials, not a near collision.
    bool trivial() const { return d == 0; }
};

IdentityEvaluation identity_eval(int id, const mpz_class& x);

// Degree in x of the big binomials over the degree of the difference term.
mpq_class identity_quality(int id);

mpz_class fibonacci(unsigned i);

// C(n, k) = C(m, l) with n = F(2i+2)F(2i+3), k = F(2i)F(2i+3), (m, l) = (n-1, k+1).
struct FibonacciFamilyMember {
    unsigned i = 0;
    mpz_class n;
    mpz_class k;
    mpz_class m;
    mpz_class l;
};

FibonacciFamilyMember fibonacci_member(unsigned i);

struct FibonacciReport {
    FibonacciFamilyMember member;
    // n(k+1) == (n-k)(n-k-1), equivalent to C(n,k) == C(n-1,k+1).
    bool criterion = false;
    bool exact_checked = false;
    bool exact_equal = false;
    mpz_class value; // C(n, k) when exact_checked
};

FibonacciReport verify_fibonacci(unsigned i, bool exact);

} // namespace binomcoll
