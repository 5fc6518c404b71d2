/**
 * Exact-sequence engine: induced maps, fiber groups, five-term sequences,
 * extension resolution and the top-level compute_pi.
 *
 * For C_f with pinch p: C_f -> ΣX and fiber F,
 *   π_{m+1}(ΣX) --∂--> π_m(F) --> π_m(C_f) --> π_m(ΣX) --∂--> π_{m-1}(F),
 * with ∂(Σξ) = j∘f∘ξ and π_m(F) read off the simplified J_2 skeleton.
 */
#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "literature.hpp"

namespace a2h {

struct EngineConfig {
    TodaConfig toda;
    /// R4 (suspension), R5 (comparison) and R6 (literature) certificates
    bool transfer_certificates = true;
    unsigned exponent_cap = kDefaultExponentCap;
};

struct TraceStep {
    std::string rule;
    std::string citation;
    std::vector<std::string> before;
    std::string after;
    std::vector<std::string> elements;
    int depth = 0;
    friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct DerivationTrace {
    std::vector<TraceStep> steps;

    void add(std::string rule, std::string citation, std::vector<std::string> before, std::string after,
             std::vector<std::string> elements = {}) {
        steps.push_back({std::move(rule), std::move(citation), std::move(before), std::move(after), std::move(elements), 0});
    }
    /// Append a sub-derivation one level deeper.
    void nest(const DerivationTrace& sub) {
        for (auto s : sub.steps) {
            ++s.depth;
            steps.push_back(std::move(s));
        }
    }
    friend bool operator==(const DerivationTrace&, const DerivationTrace&) = default;
};

struct AmbiguousReport {
    SpaceId space;
    int dim = 0;
    CanonicalGroup coker, ker;
    std::set<CanonicalGroup> candidates;
    std::string reason;
};

class AmbiguousError : public std::runtime_error {
  public:
    explicit AmbiguousError(AmbiguousReport r)
        : std::runtime_error("ambiguous extension for pi_" + std::to_string(r.dim) + "(" + r.space.str() + "): " +
                             render_set(r.candidates)),
          report(std::move(r)) {}
    AmbiguousReport report;
};

// ---------------------------------------------------------------------------
// Induced homomorphisms
// ---------------------------------------------------------------------------

inline Element basis_element(const WedgeGroup& g, std::size_t i) {
    Element e(g.wedge, g.m);
    e.add_key(g.basis[i], 1);
    return e;
}

/// mu_* : π_m(source) -> π_m(target) over the catalog bases.
inline GroupHom hom_of_map(const WedgeMap& mu, int m, const TodaConfig& cfg = {}) {
    WedgeGroup src = pi_wedge(m, mu.source), tgt = pi_wedge(m, mu.target);
    IntMatrix M(tgt.basis.size(), src.basis.size());
    for (std::size_t i = 0; i < src.basis.size(); ++i) {
        auto v = mu.apply(basis_element(src, i), cfg).coords(tgt);
        for (std::size_t r = 0; r < v.size(); ++r) M(r, i) = v[r];
    }
    return GroupHom(src.presented(), tgt.presented(), M);
}

inline Wedge suspend_wedge(Wedge w) {
    for (int& d : w) ++d;
    return w;
}

inline WedgeMap suspend_map(const WedgeMap& mu) {
    WedgeMap out{suspend_wedge(mu.source), suspend_wedge(mu.target), {}};
    for (const auto& c : mu.components) out.components.push_back(suspend(c));
    return out;
}

enum class Induced { F, SigmaF };

inline GroupHom induced_hom(const CofibrationSpec& c, int m, Induced which = Induced::F, const TodaConfig& cfg = {}) {
    WedgeMap f = c.as_map();
    return hom_of_map(which == Induced::F ? f : suspend_map(f), m, cfg);
}

// ---------------------------------------------------------------------------
// Fiber groups
// ---------------------------------------------------------------------------

/// π_m of a fiber skeleton; the first base.basis.size() generators are j∘(basis of π_m(Y)).
struct FiberGroup {
    FiberSkeleton sk;
    int m = 0;
    WedgeGroup base;
    PresentedGroup group;
    std::vector<std::string> relations_rendered;
};

inline std::vector<BigInt> padded(std::vector<BigInt> v, std::size_t n) {
    v.resize(n);
    return v;
}

inline FiberGroup pi_of_skeleton(const FiberSkeleton& sk, int m, const TodaConfig& cfg = {}) {
    if (m + 1 > sk.up_to)
        throw CatalogError("pi_" + std::to_string(m) + " needs the skeleton through dim " + std::to_string(m + 1));
    FiberGroup out{sk, m, pi_wedge(m, sk.base), {}, {}};
    const int y_min = *std::min_element(sk.base.begin(), sk.base.end());
    const Wedge W = sk.attaching_wedge();
    if (!W.empty()) {
        int w_min = *std::min_element(W.begin(), W.end());
        if (m > w_min + y_min - 2)
            throw CatalogError("pi_" + std::to_string(m) + " of the fiber is beyond the range of the secondary sequence (<= " +
                               std::to_string(w_min + y_min - 2) + ")");
        for (std::size_t a = 0; a < W.size(); ++a)
            for (std::size_t b = a + 1; b < W.size(); ++b)
                if (m >= W[a] + W[b] - 1) throw CatalogError("fiber: cross terms among attaching cells are outside the catalog");
    }

    std::vector<std::string> names;
    for (const auto& k : out.base.basis) names.push_back("j∘" + render_key(sk.base, k));
    std::vector<std::vector<BigInt>> cols;
    for (std::size_t i = 0; i < out.base.orders.size(); ++i)
        if (out.base.orders[i] != 0) {
            std::vector<BigInt> c(out.base.basis.size());
            c[i] = out.base.orders[i];
            cols.push_back(c);
        }

    // gamma_*: π_m(W) -> π_m(Y)
    for (const auto& cell : sk.cells) {
        const int w = cell.dim - 1;
        for (const auto& b : sphere_basis(w, m - w)) {
            Element img = compose(cell.attach, b.word, cfg);
            if (img.is_zero()) continue;
            cols.push_back(img.coords(out.base));
            out.relations_rendered.push_back(img.render() + " = 0");
        }
    }

    // lifts: free kernel of π_m(ΣW) -> π_{m-1}(Y), Σξ ↦ γ∘ξ
    if (!sk.cells.empty()) {
        Wedge sw = suspend_wedge(W);
        WedgeGroup src = pi_wedge(m, sw), tgt = pi_wedge(m - 1, sk.base);
        IntMatrix M(tgt.basis.size(), src.basis.size());
        for (std::size_t i = 0; i < src.basis.size(); ++i) {
            const BasisKey& key = src.basis[i];
            if (key.bracket) throw CatalogError("fiber: bracket in π_m(ΣW) is outside the catalog");
            auto v = compose(sk.cells[key.a].attach, key.word, cfg).coords(tgt);
            for (std::size_t r = 0; r < v.size(); ++r) M(r, i) = v[r];
        }
        if (src.basis.size() > 0) {
            GroupHom d(src.presented(), tgt.presented(), M);
            CanonicalGroup k = kernel(d).group.canonical();
            if (!k.torsion.empty())
                throw CatalogError("fiber: torsion in the kernel of the secondary boundary needs an extension");
            for (std::size_t i = 0; i < k.free_rank; ++i) names.push_back("lift" + std::to_string(i + 1));
        }
    }

    // null-attached cells are wedge spheres
    for (const auto& cell : sk.split) {
        if (m >= cell.dim + y_min - 1) throw CatalogError("fiber: Whitehead products with a split cell are outside the catalog");
        for (const auto& b : sphere_basis(cell.dim, m - cell.dim)) {
            names.push_back(cell.label() + "∘" + render_word(cell.dim, b.word));
            if (b.order != 0) {
                std::vector<BigInt> c(names.size());
                c.back() = b.order;
                cols.push_back(c);
            }
        }
    }

    IntMatrix rel(names.size(), 0);
    for (auto& c : cols) rel.append_column(padded(c, names.size()));
    out.group = PresentedGroup(std::move(names), std::move(rel));
    return out;
}

/// ∂: π_{m+1}(ΣX) -> π_m(F), ∂(Σξ) = j∘f∘ξ.
inline GroupHom boundary_hom(const CofibrationSpec& c, const FiberGroup& fib, const TodaConfig& cfg = {}) {
    const int m = fib.m;
    WedgeGroup src = pi_wedge(m + 1, suspend_wedge(c.X));
    WedgeMap f = c.as_map();
    IntMatrix M(fib.group.rank(), src.basis.size());
    for (std::size_t i = 0; i < src.basis.size(); ++i) {
        Element xi = desuspend(basis_element(src, i));
        auto v = f.apply(xi, cfg).coords(fib.base);
        for (std::size_t r = 0; r < v.size(); ++r) M(r, i) = v[r];
    }
    return GroupHom(src.presented(), fib.group, M);
}

/// Finite-order bookkeeping of a homomorphism: |im| · |ker| = |source|, |coker| · |im| = |target|.
inline void exactness_audit(const GroupHom& h, const std::string& where) {
    CanonicalGroup src = h.source().canonical(), tgt = h.target().canonical();
    CanonicalGroup im = image_canonical(h), ker = kernel(h).group.canonical();
    CanonicalGroup cok = cokernel(h).group.canonical();
    if (src.free_rank != im.free_rank + ker.free_rank || tgt.free_rank != im.free_rank + cok.free_rank)
        throw AlgebraError("exactness audit failed (ranks) at " + where);
    if (src.is_finite() && im.log_order() + ker.log_order() != src.log_order())
        throw AlgebraError("exactness audit failed (source order) at " + where);
    if (tgt.is_finite() && im.log_order() + cok.log_order() != tgt.log_order())
        throw AlgebraError("exactness audit failed (target order) at " + where);
}

// ---------------------------------------------------------------------------
// Five-term sequences
// ---------------------------------------------------------------------------

struct ExtensionProblem {
    SpaceId space;
    int m = 0;
    CofibrationSpec cof;
    FiberGroup fiber_m, fiber_m1;
    GroupHom d_m, d_m1;
    PresentedGroup coker;
    KernelResult ker;
    WedgeGroup sigma_x;  ///< π_m(ΣX); kernel coordinates refer to this basis
    CanonicalGroup coker_c, ker_c;
    bool cokernel_of_f = false;  ///< no non-null cell below m+2: coker is that of f_*
};

inline std::vector<std::string> render_columns(const GroupHom& h) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < h.source().rank(); ++i) {
        std::string img;
        const auto col = h.matrix().column(i);
        bool first = true;
        for (std::size_t r = 0; r < col.size(); ++r) {
            if (col[r] == 0) continue;
            img += (first ? "" : " + ") + (col[r] == 1 ? std::string() : col[r].str() + "·") + h.target().generators[r];
            first = false;
        }
        out.push_back(h.source().generators[i] + " ↦ " + (first ? "0" : img));
    }
    return out;
}

inline ExtensionProblem five_term(const SpaceId& space, int m, const EngineConfig& cfg, DerivationTrace& trace) {
    CofibrationSpec c = cofibration(space);
    trace.add("cofibration", "mapping cone of f: X -> Y", {}, c.render());

    FiberSkeleton sk = skeleton(c, m + 1, cfg.toda);
    trace.add("fiber-skeleton", "relative James construction, J_2 attaching maps [j_a, f∘j_b]", {}, sk.render());

    FiberGroup fm = pi_of_skeleton(sk, m, cfg.toda);
    FiberGroup fm1 = pi_of_skeleton(skeleton(c, m, cfg.toda), m - 1, cfg.toda);
    trace.add("fiber-group", "secondary sequence of the fiber skeleton", fm.relations_rendered,
              "pi_" + std::to_string(m) + "(F) = " + fm.group.canonical().pretty());
    trace.add("fiber-group", "secondary sequence of the fiber skeleton", fm1.relations_rendered,
              "pi_" + std::to_string(m - 1) + "(F) = " + fm1.group.canonical().pretty());

    GroupHom dm = boundary_hom(c, fm, cfg.toda);
    GroupHom dm1 = boundary_hom(c, fm1, cfg.toda);
    exactness_audit(dm, "∂ into pi_" + std::to_string(m) + "(F)");
    exactness_audit(dm1, "∂ into pi_" + std::to_string(m - 1) + "(F)");

    bool low_cells = false;
    for (const auto& cell : sk.cells) low_cells |= cell.dim <= m + 1;
    CokernelResult cok = cokernel(dm);
    KernelResult ker = kernel(dm1);
    ExtensionProblem p{space,
                       m,
                       c,
                       fm,
                       fm1,
                       dm,
                       dm1,
                       cok.group,
                       ker,
                       pi_wedge(m, suspend_wedge(c.X)),
                       cok.group.canonical(),
                       ker.group.canonical(),
                       !low_cells};
    trace.add(p.cokernel_of_f ? "cokernel-of-f" : "boundary-cokernel",
              p.cokernel_of_f ? "fiber agrees with Y in this range; coker of f_*" : "∂(Σξ) = j∘f∘ξ",
              render_columns(dm), "Coker = " + p.coker_c.pretty());
    trace.add("boundary-kernel", "∂(Σξ) = j∘f∘ξ", render_columns(dm1), "Ker = " + p.ker_c.pretty());
    return p;
}

}  // namespace a2h

