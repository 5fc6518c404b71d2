/// Groups imported from the literature; used only as labelled certificates.
#pragma once

#include <optional>
#include <string>

#include "spaces.hpp"

namespace a2h {

struct LiteratureFact {
    SpaceId space;
    int dim = 0;
    CanonicalGroup group;
    std::string citation;
};

inline std::optional<LiteratureFact> literature_fact(const SpaceId& id, int dim) {
    const int b = id.connectivity_dim();
    const int k = dim - b;
    auto fact = [&](CanonicalGroup g, std::string cite) { return LiteratureFact{id, dim, std::move(g), std::move(cite)}; };
    switch (id.kind) {
        case SpaceKind::MooreBottom:
        case SpaceKind::MooreTop: {
            if (id.r.is_inf()) return std::nullopt;
            const unsigned r = id.r.get();
            if (k == 2 && b >= 5)
                return fact(r == 1 ? CanonicalGroup::cyclic(2) : CanonicalGroup(0, {1, 1}),
                            "Baues, (n-1)-connected (n+3)-dimensional polyhedra, Sec. 2");
            if (k == 3 && b == 4)
                return fact(CanonicalGroup(0, {std::min(2u, r - 1), r + 1, 1}),
                            "homotopy of mod 2^r Moore spaces, Sec. 3.3");
            if (k == 3 && b >= 5 && r == 1)
                return fact(CanonicalGroup(0, {1, 1}), "Wu, homotopy of mod 2 Moore spaces, Lemma 5.2 / Thm 5.11");
            if (k == 4 && b == 4 && r == 1)
                return fact(CanonicalGroup(0, {1, 1}), "Wu, homotopy of mod 2 Moore spaces");
            return std::nullopt;
        }
        case SpaceKind::CEta:
            if (b == 4 && dim == 7) return fact(CanonicalGroup(1, {1}), "Mukai, Prop. 8.2");
            if (b >= 5 && k == 3) return fact(CanonicalGroup::cyclic(2), "Mukai, Prop. 8.2");
            if (b == 4 && dim == 8) return fact(CanonicalGroup::cyclic(1), "Mukai, Prop. 8.4");
            return std::nullopt;
        default: return std::nullopt;
    }
}

}  // namespace a2h
