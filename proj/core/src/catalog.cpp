#include "binomcoll/catalog.hpp"

#include <array>

#include "binomcoll/exact.hpp"
#include "binomcoll/scan.hpp"

namespace binomcoll {

namespace {

using K = CatalogKind;

constexpr std::array kCatalog{
    CatalogEntry{16, 2, 10, 3, "120", K::Collision, "sporadic"},
    CatalogEntry{21, 2, 10, 4, "210", K::Collision, "sporadic"},
    CatalogEntry{56, 2, 22, 3, "1540", K::Collision, "sporadic"},
    CatalogEntry{120, 2, 36, 3, "7140", K::Collision, "sporadic"},
    CatalogEntry{153, 2, 19, 5, "11628", K::Collision, "sporadic"},
    CatalogEntry{221, 2, 17, 8, "24310", K::Collision, "sporadic"},

    CatalogEntry{78, 2, 15, 5, "3003", K::Collision, "double"},
    CatalogEntry{78, 2, 14, 6, "3003", K::Collision, "double"},
    CatalogEntry{15, 5, 14, 6, "3003", K::Collision, "double"},

    CatalogEntry{6, 3, 7, 2, "21", K::NearCollisionD1, "d1"},
    CatalogEntry{7, 3, 9, 2, "36", K::NearCollisionD1, "d1"},
    CatalogEntry{11, 2, 8, 3, "56", K::NearCollisionD1, "d1"},
    CatalogEntry{10, 5, 23, 2, "253", K::NearCollisionD1, "d1"},
    CatalogEntry{12, 4, 32, 2, "496", K::NearCollisionD1, "d1"},
    CatalogEntry{16, 3, 34, 2, "561", K::NearCollisionD1, "d1"},
    CatalogEntry{60, 2, 23, 3, "1771", K::NearCollisionD1, "d1"},
    CatalogEntry{27, 3, 77, 2, "2926", K::NearCollisionD1, "d1"},
    CatalogEntry{29, 3, 86, 2, "3655", K::NearCollisionD1, "d1"},
    CatalogEntry{34, 3, 21, 4, "5985", K::NearCollisionD1, "d1"},
    CatalogEntry{22, 5, 230, 2, "26335", K::NearCollisionD1, "d1"},
    CatalogEntry{260, 3, 2407, 2, "2895621", K::NearCollisionD1, "d1"},
    CatalogEntry{93, 4, 2417, 2, "2919736", K::NearCollisionD1, "d1"},
    CatalogEntry{62, 5, 3598, 2, "6471003", K::NearCollisionD1, "d1"},
    CatalogEntry{28, 11, 6554, 2, "21474181", K::NearCollisionD1, "d1"},
    CatalogEntry{665, 3, 9879, 2, "48792381", K::NearCollisionD1, "d1"},
    CatalogEntry{135, 5, 26333, 2, "346700278", K::NearCollisionD1, "d1"},
    CatalogEntry{139, 5, 28358, 2, "402073903", K::NearCollisionD1, "d1"},
    CatalogEntry{19630, 3, 1587767, 2, "1260501229261", K::NearCollisionD1, "d1"},
    CatalogEntry{160403633, 2, 425779, 3, "12864662659597529", K::NearCollisionD1, "d1"},
};

std::string row_name(const CatalogEntry& e)
{
    return "(" + std::to_string(e.n) + "," + std::to_string(e.k) + "," + std::to_string(e.m) + ","
           + std::to_string(e.l) + ")";
}

CatalogRowCheck check_row(const CatalogEntry& e)
{
    CatalogRowCheck row{e, false, {}};
    const BinomPair a{e.n, e.k};
    const BinomPair b{e.m, e.l};
    if (!is_normalized(a) || !is_normalized(b)) {
        row.detail = row_name(e) + ": pair outside 2 <= k <= n/2";
        return row;
    }
    const mpz_class left = binom_exact(a);
    const mpz_class right = binom_exact(b);
    const mpz_class stored(std::string(e.value), 10);
    if (right != stored) {
        row.detail = row_name(e) + ": C(m,l) = " + right.get_str() + ", stored " + stored.get_str();
        return row;
    }
    const PairClass cls = classify_pair(a, b, 3);
    if (e.kind == CatalogKind::Collision) {
        if (left != right || cls.kind != PairClass::Kind::Collision || e.k >= e.l) {
            row.detail = row_name(e) + ": not a collision (C(n,k) = " + left.get_str() + ")";
            return row;
        }
    }
    else if (right - left != 1 || cls.kind != PairClass::Kind::NearCollision || cls.d != 1) {
        row.detail = row_name(e) + ": difference is " + mpz_class(right - left).get_str() + ", not 1";
        return row;
    }
    row.ok = true;
    return row;
}

} // namespace

std::span<const CatalogEntry> catalog() { return kCatalog; }

CatalogReport verify_catalog()
{
    CatalogReport report;
    for (const CatalogEntry& e : kCatalog) {
        report.rows.push_back(check_row(e));
        if (!report.rows.back().ok) {
            ++report.mismatches;
        }
    }
    return report;
}

std::string_view to_string(CatalogKind kind)
{
    return kind == CatalogKind::Collision ? "collision" : "near";
}

} // namespace binomcoll
