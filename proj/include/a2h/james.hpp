/**
 * Low skeleta of the fiber of a pinch map C_f -> ΣX through the J_2 filtration.
 *
 * For f: X -> Y between wedges of spheres, F ≃ J(M_f, X) and
 * J_2 = Y ∪ C(desuspended Y∧X), the cell for (Y_a, X_b) attached by [j_a, f∘j_b].
 */
#pragma once

#include <algorithm>
#include <string>
#include <tuple>
#include <vector>

#include "toda.hpp"

namespace a2h {

/// f: X -> Y given componentwise; f[b] lives in pi_{X[b]}(Y).
struct CofibrationSpec {
    Wedge X, Y;
    std::vector<Element> f;
    std::string name;

    void validate() const {
        if (f.size() != X.size()) throw CatalogError(name + ": one component per X summand required");
        for (std::size_t b = 0; b < X.size(); ++b)
            if (f[b].wedge() != Y || f[b].dim() != X[b]) throw CatalogError(name + ": component " + std::to_string(b + 1) + " has the wrong ambient");
    }
    bool is_null() const {
        return std::all_of(f.begin(), f.end(), [](const Element& e) { return e.is_zero(); });
    }
    WedgeMap as_map() const { return WedgeMap{X, Y, f}; }
    int y_min() const { return *std::min_element(Y.begin(), Y.end()); }
    int x_min() const { return *std::min_element(X.begin(), X.end()); }
    /// Dimension of the bottom J_3 cell; skeleta must stay strictly below it.
    int j3_bottom() const { return y_min() + 2 * x_min(); }

    std::string render() const {
        std::string out = name + ": " + render_wedge(X) + " -> " + render_wedge(Y) + "; f = (";
        for (std::size_t b = 0; b < f.size(); ++b) out += (b ? ", " : "") + f[b].render();
        return out + ")";
    }
};

struct Cell {
    int dim = 0;
    std::size_t y = 0, x = 0;  ///< the (Y_a, X_b) pair it comes from
    Element attach;            ///< in pi_{dim-1}(Y)
    std::string label() const { return "e" + std::to_string(dim) + "(" + std::to_string(y + 1) + "," + std::to_string(x + 1) + ")"; }
};

struct FiberSkeleton {
    Wedge base;
    std::vector<Cell> cells;   ///< non-null attachments
    std::vector<Cell> split;   ///< null attachments: wedge sphere summands
    int up_to = 0;             ///< all J_2 cells of dim <= up_to are present

    /// Desuspended cell dimensions: the W of the secondary cofibration W -> base.
    Wedge attaching_wedge() const {
        Wedge w;
        for (const auto& c : cells) w.push_back(c.dim - 1);
        return w;
    }

    /// "(S5 v S4) U_g C(S7 v S8 v S8); g = (...)"
    std::string render() const {
        std::string out = "(" + render_wedge(base) + ")";
        for (const auto& c : split) out += " v S" + std::to_string(c.dim);
        if (cells.empty()) return out;
        out += " U_g C(" + render_wedge(attaching_wedge()) + "); g = (";
        for (std::size_t i = 0; i < cells.size(); ++i) out += (i ? ", " : "") + cells[i].attach.render();
        return out + ")";
    }
};

/// All J_2 attaching maps [j_a, f∘j_b] for cells of dimension <= max_dim, ordered by (dim, a, b).
inline std::vector<Cell> j2_attaching(const CofibrationSpec& c, int max_dim, const TodaConfig& cfg = {}) {
    c.validate();
    std::vector<Cell> out;
    for (std::size_t a = 0; a < c.Y.size(); ++a)
        for (std::size_t b = 0; b < c.X.size(); ++b) {
            int dim = c.Y[a] + c.X[b];
            if (dim > max_dim) continue;
            Element ja = Element::incl(c.Y, a);
            out.push_back({dim, a, b, whitehead(ja, c.f[b], cfg)});
        }
    std::stable_sort(out.begin(), out.end(), [](const Cell& l, const Cell& r) {
        return std::tie(l.dim, l.y, l.x) < std::tie(r.dim, r.y, r.x);
    });
    return out;
}

/// Every J_2 attaching map, however high; throws if any leaves the catalog.
inline std::vector<Cell> j2_attaching(const CofibrationSpec& c, const TodaConfig& cfg = {}) {
    int top = 0;
    for (int y : c.Y)
        for (int x : c.X) top = std::max(top, y + x);
    return j2_attaching(c, top, cfg);
}

/// Split null-attached cells off as wedge summands.
inline FiberSkeleton simplify_skeleton(FiberSkeleton s) {
    std::vector<Cell> keep;
    for (auto& c : s.cells) (c.attach.is_zero() ? s.split : keep).push_back(std::move(c));
    s.cells = std::move(keep);
    std::stable_sort(s.split.begin(), s.split.end(), [](const Cell& l, const Cell& r) {
        return std::tie(l.dim, l.y, l.x) < std::tie(r.dim, r.y, r.x);
    });
    return s;
}

/// Simplified J_2 skeleton through dimension up_to.
inline FiberSkeleton skeleton(const CofibrationSpec& c, int up_to, const TodaConfig& cfg = {}) {
    c.validate();
    if (up_to >= c.j3_bottom())
        throw CatalogError("skeleton through dim " + std::to_string(up_to) + " reaches the J_3 cell in dim " +
                           std::to_string(c.j3_bottom()));
    FiberSkeleton s{c.Y, j2_attaching(c, up_to, cfg), {}, up_to};
    return simplify_skeleton(std::move(s));
}

}  // namespace a2h
