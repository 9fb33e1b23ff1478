#include "binomcoll/families.hpp"

#include <stdexcept>

#include "binomcoll/exact.hpp"

namespace binomcoll {

namespace {

// Coefficients from the highest power down, as printed.
Polynomial from_leading(std::initializer_list<const char*> coeffs)
{
    std::vector<mpz_class> c;
    for (const char* s : coeffs) {
        c.emplace_back(s, 10);
    }
    return Polynomial(std::vector<mpz_class>(c.rbegin(), c.rend()));
}

std::vector<IdentityFamily> build_families()
{
    std::vector<IdentityFamily> f;
    f.push_back({1, 3, from_leading({"12", "-12", "3"}), from_leading({"1", "0"}),
                 from_leading({"24", "-36", "15", "-1"})});
    f.push_back({2, 3, from_leading({"12", "-12", "5"}), from_leading({"1", "0"}),
                 from_leading({"24", "-36", "21", "-4"})});
    f.push_back({3, 5, from_leading({"60", "-60", "15"}), from_leading({"1", "0"}),
                 from_leading({"3600", "-9000", "8700", "-4050", "905", "-77"})});
    f.push_back({4, 5, from_leading({"60", "-60", "19"}), from_leading({"1", "0"}),
                 from_leading({"3600", "-9000", "9300", "-4950", "1355", "-152"})});
    f.push_back({5, 5, from_leading({"240", "-240", "62"}), from_leading({"3", "-1"}),
                 from_leading({"115200", "-288000", "288000", "-144000", "35995", "-3597"})});
    f.push_back({6, 9, from_leading({"11340", "11340", "2835"}),
                 from_leading({"22680", "34020", "17001", "2831"}),
                 from_leading({"4134207084840000", "18603931881780000", "37201301530092000",
                               "43386206573682000", "32522432635935900", "16249739546454750",
                               "5411800833695550", "1158443736409575", "144626588131776",
                               "8023467184451"})});
    f.push_back({7, 9, from_leading({"11340", "11340", "2843"}),
                 from_leading({"22680", "34020", "17019", "2840"}),
                 from_leading({"4134207084840000", "18603931881780000", "37214425997028000",
                               "43432142207958000", "32591336087349900", "16307159089299750",
                               "5440510606648950", "1167056670132675", "146062077851076",
                               "8126002273751"})});
    return f;
}

} // namespace

Polynomial::Polynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs))
{
    while (coeffs_.size() > 1 && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

mpz_class Polynomial::operator()(const mpz_class& x) const
{
    mpz_class acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

std::string Polynomial::to_string() const
{
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
        const mpz_class& c = coeffs_[i];
        if (c == 0 && coeffs_.size() > 1) {
            continue;
        }
        const mpz_class mag = abs(c);
        if (!out.empty() || c < 0) {
            out += c < 0 ? "-" : "+";
        }
        if (mag != 1 || i == 0) {
            out += mag.get_str();
        }
        if (i >= 1) {
            out += "x";
        }
        if (i >= 2) {
            out += "^" + std::to_string(i);
        }
    }
    return out.empty() ? "0" : out;
}

const std::vector<IdentityFamily>& identity_families()
{
    static const std::vector<IdentityFamily> families = build_families();
    return families;
}

const IdentityFamily& identity_family(int id)
{
    if (id < 1 || id > 7) {
        throw std::out_of_range("unknown identity family " + std::to_string(id) + " (expected 1..7)");
    }
    return identity_families()[static_cast<std::size_t>(id - 1)];
}

IdentityEvaluation identity_eval(int id, const mpz_class& x)
{
    const IdentityFamily& fam = identity_family(id);
    if (x < 1) {
        throw std::invalid_argument("identity_eval: x must be at least 1");
    }
    IdentityEvaluation ev;
    ev.id = id;
    ev.x = x;
    ev.n_arg = fam.n_poly(x);
    ev.d_arg = fam.d_arg_poly(x);
    ev.a_arg = fam.a_poly(x);
    ev.left_big = binom_exact(ev.n_arg, fam.k_left);
    ev.left_small = binom_exact(ev.d_arg, 2);
    ev.right = binom_exact(ev.a_arg, 2);
    ev.d = ev.left_small;
    ev.holds = ev.left_big + ev.left_small == ev.right;
    return ev;
}

mpq_class identity_quality(int id)
{
    const IdentityFamily& fam = identity_family(id);
    const std::size_t big = fam.k_left * fam.n_poly.degree();
    if (big != 2 * fam.a_poly.degree()) {
        throw std::logic_error("identity family " + std::to_string(id)
                               + ": the two big binomials differ in degree");
    }
    mpq_class q(static_cast<unsigned long>(big), static_cast<unsigned long>(2 * fam.d_arg_poly.degree()));
    q.canonicalize();
    return q;
}

mpz_class fibonacci(unsigned i)
{
    mpz_class prev = 0;
    mpz_class cur = 1;
    if (i == 0) {
        return prev;
    }
    for (unsigned j = 1; j < i; ++j) {
        mpz_class next = cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

FibonacciFamilyMember fibonacci_member(unsigned i)
{
    if (i < 1) {
        throw std::invalid_argument("fibonacci_member: i must be at least 1");
    }
    FibonacciFamilyMember f;
    f.i = i;
    const mpz_class f3 = fibonacci(2 * i + 3);
    f.n = fibonacci(2 * i + 2) * f3;
    f.k = fibonacci(2 * i) * f3;
    f.m = f.n - 1;
    f.l = f.k + 1;
    return f;
}

FibonacciReport verify_fibonacci(unsigned i, bool exact)
{
    FibonacciReport r;
    r.member = fibonacci_member(i);
    const mpz_class& n = r.member.n;
    const mpz_class& k = r.member.k;
    r.criterion = n * (k + 1) == (n - k) * (n - k - 1);
    if (exact) {
        if (!mpz_fits_ulong_p(k.get_mpz_t()) || !mpz_fits_ulong_p(r.member.l.get_mpz_t())) {
            throw std::invalid_argument("verify_fibonacci: member too large for exact binomials");
        }
        r.value = binom_exact(n, k.get_ui());
        r.exact_checked = true;
        r.exact_equal = r.value == binom_exact(r.member.m, r.member.l.get_ui());
    }
    return r;
}

} // namespace binomcoll
