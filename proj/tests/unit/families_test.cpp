#include <set>

#include <gtest/gtest.h>

#include "binomcoll/catalog.hpp"
#include "binomcoll/families.hpp"
#include "binomcoll/scan.hpp"
#include "oracles.hpp"

using namespace binomcoll;

namespace {

// Power-sum evaluation, independent of Horner.
mpz_class eval_naive(const Polynomial& p, long x)
{
    mpz_class sum = 0;
    const mpz_class base = x;
    for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
        mpz_class term;
        mpz_pow_ui(term.get_mpz_t(), base.get_mpz_t(), i);
        sum += p.coefficients()[i] * term;
    }
    return sum;
}

mpz_class binom_any(const mpz_class& n, unsigned long k)
{
    mpz_class r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

mpz_class pow5(const mpz_class& d)
{
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), d.get_mpz_t(), 5);
    return r;
}

} // namespace

TEST(Polynomial, HornerAndFormatting)
{
    const Polynomial p({-1, 15, -36, 24});
    EXPECT_EQ(p.degree(), 3u);
    EXPECT_EQ(p(2), 24 * 8 - 36 * 4 + 30 - 1);
    EXPECT_EQ(p.to_string(), "24x^3-36x^2+15x-1");
    EXPECT_EQ(Polynomial({3, -12, 12}).to_string(), "12x^2-12x+3");
    EXPECT_EQ(Polynomial({0, 1}).to_string(), "x");
    EXPECT_EQ(Polynomial(std::vector<mpz_class>{}).to_string(), "0");
}

TEST(Families, IdentityOneExamples)
{
    const auto e2 = identity_eval(1, 2);
    EXPECT_EQ(e2.n_arg, 27);
    EXPECT_EQ(e2.left_big, 2925);
    EXPECT_EQ(e2.d, 1);
    EXPECT_EQ(e2.right, 2926);
    EXPECT_EQ(e2.a_arg, 77);
    EXPECT_TRUE(e2.holds);
    EXPECT_FALSE(e2.trivial());

    const auto f2 = identity_eval(2, 2);
    EXPECT_EQ(f2.n_arg, 29);
    EXPECT_EQ(f2.right, 3655);
    EXPECT_EQ(f2.a_arg, 86);

    const auto e1 = identity_eval(1, 1);
    EXPECT_TRUE(e1.holds);
    EXPECT_TRUE(e1.trivial());
    EXPECT_EQ(e1.left_big, 1);
    EXPECT_EQ(e1.right, 1);
}

TEST(Families, Errors)
{
    EXPECT_THROW(identity_family(0), std::out_of_range);
    EXPECT_THROW(identity_family(8), std::out_of_range);
    EXPECT_THROW(identity_eval(1, 0), std::invalid_argument);
    EXPECT_EQ(identity_families().size(), 7u);
}

TEST(Families, TranscriptionAtSmallX)
{
    for (const IdentityFamily& f : identity_families()) {
        for (long x : {1L, 2L}) {
            const mpz_class n = eval_naive(f.n_poly, x);
            const mpz_class d = eval_naive(f.d_arg_poly, x);
            const mpz_class a = eval_naive(f.a_poly, x);
            EXPECT_EQ(binom_any(n, f.k_left) + binom_any(d, 2), binom_any(a, 2)) << "family " << f.id << " x=" << x;
            const auto ev = identity_eval(f.id, x);
            EXPECT_EQ(ev.n_arg, n);
            EXPECT_EQ(ev.a_arg, a);
        }
    }
}

TEST(Families, IdentitiesHoldUpToThousand)
{
    for (int id = 1; id <= 7; ++id) {
        for (int x = 1; x <= 1000; ++x) {
            const auto ev = identity_eval(id, x);
            ASSERT_TRUE(ev.holds) << id << " " << x;
            ASSERT_EQ(ev.left_big + ev.left_small, ev.right);
        }
    }
}

TEST(Families, Qualities)
{
    const int expected[] = {3, 3, 5, 5, 5, 3, 3};
    for (int id = 1; id <= 7; ++id) {
        EXPECT_EQ(identity_quality(id), mpq_class(expected[id - 1])) << id;
    }
}

TEST(Families, ExponentBounds)
{
    // Every family meets C(a,2) >= d^3 once d > 0. Quality 5 families also
    // meet d^5; quality 3 families eventually fall below it.
    for (int id = 1; id <= 7; ++id) {
        int fifth_failures = 0;
        int first_failure = 0;
        for (int x = 2; x <= 1000; ++x) {
            const auto ev = identity_eval(id, x);
            ASSERT_GT(ev.d, 0);
            mpz_class cube;
            mpz_pow_ui(cube.get_mpz_t(), ev.d.get_mpz_t(), 3);
            ASSERT_GE(ev.right, cube) << id << " " << x;
            if (ev.right < pow5(ev.d)) {
                ++fifth_failures;
                if (first_failure == 0) {
                    first_failure = x;
                }
            }
        }
        if (id >= 3 && id <= 5) {
            EXPECT_EQ(fifth_failures, 0) << id;
        }
        else if (id <= 2) {
            EXPECT_EQ(first_failure, 11) << id;
            EXPECT_EQ(fifth_failures, 990) << id;
        }
        else {
            EXPECT_EQ(first_failure, 2) << id;
        }
    }
}

TEST(Fibonacci, Members)
{
    EXPECT_EQ(fibonacci(0), 0);
    EXPECT_EQ(fibonacci(1), 1);
    EXPECT_EQ(fibonacci(10), 55);
    const auto m1 = fibonacci_member(1);
    EXPECT_EQ(m1.n, 15);
    EXPECT_EQ(m1.k, 5);
    EXPECT_EQ(m1.m, 14);
    EXPECT_EQ(m1.l, 6);
    const auto m2 = fibonacci_member(2);
    EXPECT_EQ(m2.n, 104);
    EXPECT_EQ(m2.k, 39);
    EXPECT_EQ(fibonacci_member(3).n, 714);
    EXPECT_EQ(fibonacci_member(3).k, 272);
    const auto m4 = fibonacci_member(4);
    EXPECT_EQ(m4.n, 4895);
    EXPECT_EQ(m4.k, 1869);
    EXPECT_EQ(m4.m, 4894);
    EXPECT_EQ(m4.l, 1870);
    EXPECT_THROW(fibonacci_member(0), std::invalid_argument);
}

TEST(Fibonacci, CriterionAndExactEquality)
{
    for (unsigned i = 1; i <= 20; ++i) {
        const auto r = verify_fibonacci(i, false);
        EXPECT_TRUE(r.criterion) << i;
        EXPECT_FALSE(r.exact_checked);
        const mpz_class& n = r.member.n;
        const mpz_class& k = r.member.k;
        EXPECT_EQ(n * (k + 1), (n - k) * (n - k - 1)) << i;
    }
    for (unsigned i = 1; i <= 4; ++i) {
        const auto r = verify_fibonacci(i, true);
        ASSERT_TRUE(r.exact_checked);
        EXPECT_TRUE(r.exact_equal) << i;
        const unsigned long n = r.member.n.get_ui();
        const unsigned long k = r.member.k.get_ui();
        EXPECT_EQ(r.value, oracle::binom_gmp(n, k));
        EXPECT_EQ(r.value, oracle::binom_gmp(n - 1, k + 1));
    }
    EXPECT_EQ(verify_fibonacci(1, true).value, 3003);
}

TEST(Catalog, Shape)
{
    const auto rows = catalog();
    ASSERT_EQ(rows.size(), 29u);
    std::size_t sporadic = 0;
    std::size_t dbl = 0;
    std::size_t d1 = 0;
    for (const auto& r : rows) {
        sporadic += r.group == "sporadic";
        dbl += r.group == "double";
        d1 += r.group == "d1";
    }
    EXPECT_EQ(sporadic, 6u);
    EXPECT_EQ(dbl, 3u);
    EXPECT_EQ(d1, 20u);
    EXPECT_EQ(rows.back().value, "12864662659597529");
}

TEST(Catalog, VerifiesExactly)
{
    const CatalogReport report = verify_catalog();
    EXPECT_TRUE(report.ok());
    EXPECT_EQ(report.rows.size(), 29u);
    for (const auto& row : report.rows) {
        EXPECT_TRUE(row.ok) << row.entry.n << "," << row.entry.k << ": " << row.detail;
        const mpz_class big = binom_any(row.entry.m, row.entry.l);
        const mpz_class small = binom_any(row.entry.n, row.entry.k);
        EXPECT_EQ(big.get_str(), std::string(row.entry.value));
        EXPECT_EQ(big - small, row.entry.kind == CatalogKind::Collision ? 0 : 1);
    }
}

TEST(Catalog, DifferenceOneRowsMatchScan)
{
    constexpr std::uint64_t N = 2000;
    const std::set<std::pair<std::uint64_t, std::uint64_t>> shapes{{2, 3}, {2, 4}, {2, 6}, {3, 4},
                                                                  {4, 6}, {4, 8}, {2, 8}};
    auto shape_of = [](std::uint64_t k, std::uint64_t l) { return std::pair{std::min(k, l), std::max(k, l)}; };

    std::set<oracle::Quad> expected;
    for (const auto& e : catalog()) {
        if (e.kind == CatalogKind::NearCollisionD1 && shapes.count(shape_of(e.k, e.l)) && e.n - e.k < N
            && e.m - e.l < N) {
            expected.emplace(e.n, e.k, e.m, e.l);
        }
    }

    ScanConfig c;
    c.max_index = N;
    c.mode = ScanMode::Near;
    std::set<oracle::Quad> found;
    scan(c, [&](const ScanRecord& r) {
        if (const auto* q = std::get_if<NearCollisionRecord>(&r)) {
            if (q->d == 1 && shapes.count(shape_of(q->k, q->l))) {
                found.emplace(q->n, q->k, q->m, q->l);
            }
        }
    });
    EXPECT_EQ(found, expected);
    EXPECT_FALSE(expected.empty());
}
