#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace binomcoll {

enum class CatalogKind { Collision, NearCollisionD1 };

// Known collisions C(n,k) = C(m,l) and difference-one near collisions
// C(m,l) = C(n,k) + 1.
struct CatalogEntry {
    std::uint64_t n;
    std::uint64_t k;
    std::uint64_t m;
    std::uint64_t l;
    std::string_view value; // C(m, l), decimal
    CatalogKind kind;
    std::string_view group; // "sporadic", "double" or "d1"
};

std::span<const CatalogEntry> catalog();

struct CatalogRowCheck {
    CatalogEntry entry;
    bool ok = false;
    std::string detail; // empty when ok
};

struct CatalogReport {
    std::vector<CatalogRowCheck> rows;
    std::size_t mismatches = 0;
    bool ok() const noexcept { return mismatches == 0; }
};

// Recomputes every row with exact binomials and classify_pair at exponent 3.
CatalogReport verify_catalog();

std::string_view to_string(CatalogKind kind);

} // namespace binomcoll
