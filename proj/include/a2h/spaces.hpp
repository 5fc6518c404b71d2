/**
 * Indecomposable A_n^2-complexes as cofibrations, ∞ conventions and wedge bookkeeping.
 *
 * Chang complexes use Y = S^{n+1} ∨ S^n (j1 = S^{n+1}, j2 = S^n) whenever both bottom cells exist.
 * Conventions: 2^∞ = 0, ε_∞ = 0.
 */
#pragma once

#include <map>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include "james.hpp"

namespace a2h {

/// Finite exponent >= 1 or ∞.
struct ExtNat {
    std::optional<unsigned> value;  ///< nullopt = ∞

    static ExtNat inf() { return {}; }
    static ExtNat of(unsigned v) { return {v}; }
    bool is_inf() const { return !value; }
    unsigned get() const {
        if (!value) throw CatalogError("finite exponent expected");
        return *value;
    }
    /// 2^x with 2^∞ = 0
    BigInt pow2() const { return value ? a2h::pow2(*value) : BigInt(0); }
    /// ε_1 = 1, otherwise 0 (including ∞)
    unsigned epsilon() const { return value == 1u ? 1u : 0u; }
    std::string str() const { return value ? std::to_string(*value) : "inf"; }
    friend bool operator==(const ExtNat&, const ExtNat&) = default;
    friend auto operator<=>(const ExtNat& a, const ExtNat& b) {
        if (a.is_inf() || b.is_inf()) return a.is_inf() <=> b.is_inf();
        return *a.value <=> *b.value;
    }
};

enum class SpaceKind { Sphere, MooreBottom, MooreTop, CEta, Cr, Cs, Crs };

/// n is the bottom cell dimension; MooreTop(n) is M^{n+1}, i.e. bottom cell n+1.
struct SpaceId {
    SpaceKind kind = SpaceKind::Sphere;
    int n = 0;
    ExtNat r = ExtNat::of(1), s = ExtNat::of(1);

    static SpaceId sphere(int d) { return {SpaceKind::Sphere, d, {}, {}}; }
    static SpaceId moore(int k, ExtNat r) { return {SpaceKind::MooreBottom, k, r, {}}; }
    static SpaceId moore_top(int n, ExtNat r) { return {SpaceKind::MooreTop, n, r, {}}; }
    static SpaceId ceta(int n) { return {SpaceKind::CEta, n, {}, {}}; }
    static SpaceId cr(int n, ExtNat r) { return {SpaceKind::Cr, n, r, {}}; }
    static SpaceId cs(int n, ExtNat s) { return {SpaceKind::Cs, n, {}, s}; }
    static SpaceId crs(int n, ExtNat r, ExtNat s) { return {SpaceKind::Crs, n, r, s}; }

    bool uses_r() const {
        return kind == SpaceKind::MooreBottom || kind == SpaceKind::MooreTop || kind == SpaceKind::Cr || kind == SpaceKind::Crs;
    }
    bool uses_s() const { return kind == SpaceKind::Cs || kind == SpaceKind::Crs; }
    /// Bottom cell of the complex.
    int connectivity_dim() const { return kind == SpaceKind::MooreTop ? n + 1 : n; }

    /// Key used for comparisons: unused parameters are ignored.
    auto key() const {
        return std::make_tuple(static_cast<int>(kind), n, uses_r() ? r : ExtNat::of(0), uses_s() ? s : ExtNat::of(0));
    }
    friend bool operator==(const SpaceId& a, const SpaceId& b) { return a.key() == b.key(); }
    friend bool operator<(const SpaceId& a, const SpaceId& b) { return a.key() < b.key(); }

    /// Grammar of the command line: S^{d}, M{r}^{k}, Ceta^{k}, C{r}^{k}, C^{k,s}, C{r}^{k,s}.
    std::string str() const {
        auto br = [](const ExtNat& x) { return "{" + x.str() + "}"; };
        switch (kind) {
            case SpaceKind::Sphere: return "S^{" + std::to_string(n) + "}";
            case SpaceKind::MooreBottom: return "M" + br(r) + "^{" + std::to_string(n) + "}";
            case SpaceKind::MooreTop: return "M" + br(r) + "^{" + std::to_string(n + 1) + "}";
            case SpaceKind::CEta: return "Ceta^{" + std::to_string(n + 2) + "}";
            case SpaceKind::Cr: return "C" + br(r) + "^{" + std::to_string(n + 2) + "}";
            case SpaceKind::Cs: return "C^{" + std::to_string(n + 2) + "," + s.str() + "}";
            case SpaceKind::Crs: return "C" + br(r) + "^{" + std::to_string(n + 2) + "," + s.str() + "}";
        }
        return "?";
    }
};

inline constexpr unsigned kDefaultExponentCap = 64;

inline void check_params(const SpaceId& id, unsigned cap = kDefaultExponentCap) {
    auto check = [&](const ExtNat& x, const char* what) {
        if (x.is_inf()) return;
        if (x.get() < 1) throw CatalogError(std::string(what) + " must be >= 1");
        if (x.get() > cap) throw CatalogError(std::string(what) + " exceeds the exponent cap " + std::to_string(cap));
    };
    if (id.uses_r()) check(id.r, "r");
    if (id.uses_s()) check(id.s, "s");
    if (id.connectivity_dim() < 3) throw CatalogError(id.str() + ": bottom cell below dimension 3 is not supported");
}

class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline ExtNat parse_extnat(const std::string& t) {
    if (t == "inf" || t == "∞") return ExtNat::inf();
    try {
        unsigned long v = std::stoul(t);
        if (v == 0) throw ParseError("exponent must be >= 1");
        return ExtNat::of(static_cast<unsigned>(v));
    } catch (const std::logic_error&) {
        throw ParseError("bad exponent '" + t + "'");
    }
}

inline SpaceId parse_space(const std::string& text) {
    static const std::regex sphere(R"(S\^\{?(\d+)\}?)");
    static const std::regex moore(R"(M\{?(\d+|inf)\}?\^\{?(\d+)\}?)");
    static const std::regex ceta(R"(Ceta\^\{?(\d+)\}?)");
    static const std::regex cr(R"(C\{?(\d+|inf)\}?\^\{?(\d+)\}?)");
    static const std::regex cs(R"(C\^\{(\d+),(\d+|inf)\})");
    static const std::regex crs(R"(C\{?(\d+|inf)\}?\^\{(\d+),(\d+|inf)\})");
    std::smatch m;
    auto dim = [](const std::string& t) { return std::stoi(t); };
    if (std::regex_match(text, m, sphere)) return SpaceId::sphere(dim(m[1]));
    if (std::regex_match(text, m, moore)) return SpaceId::moore(dim(m[2]), parse_extnat(m[1]));
    if (std::regex_match(text, m, ceta)) return SpaceId::ceta(dim(m[1]) - 2);
    if (std::regex_match(text, m, cs)) return SpaceId::cs(dim(m[1]) - 2, parse_extnat(m[2]));
    if (std::regex_match(text, m, crs)) return SpaceId::crs(dim(m[2]) - 2, parse_extnat(m[1]), parse_extnat(m[3]));
    if (std::regex_match(text, m, cr)) return SpaceId::cr(dim(m[2]) - 2, parse_extnat(m[1]));
    throw ParseError("cannot parse space '" + text + "'");
}

/// The defining cofibration X -> Y (spheres have none).
inline CofibrationSpec cofibration(const SpaceId& id) {
    check_params(id);
    using L = Letter;
    const int n = id.n;
    switch (id.kind) {
        case SpaceKind::Sphere: throw CatalogError("a sphere is not presented as a mapping cone here");
        case SpaceKind::MooreBottom:
        case SpaceKind::MooreTop: {
            int k = id.connectivity_dim();
            Wedge W{k};
            return {W, W, {Element::incl(W, 0, {}, id.r.pow2())}, "2^" + id.r.str() + "·iota" + std::to_string(k)};
        }
        case SpaceKind::CEta: {
            Wedge X{n + 1}, Y{n};
            return {X, Y, {Element::incl(Y, 0, {L::Eta})}, "eta" + std::to_string(n)};
        }
        case SpaceKind::Cr: {
            Wedge X{n + 1, n}, Y{n};
            return {X, Y, {Element::incl(Y, 0, {L::Eta}), Element::incl(Y, 0, {}, id.r.pow2())}, "(eta, 2^r)"};
        }
        case SpaceKind::Cs: {
            Wedge X{n + 1}, Y{n + 1, n};
            Element f = Element::incl(Y, 0, {}, id.s.pow2()) + Element::incl(Y, 1, {L::Eta});
            return {X, Y, {f}, "2^s·j1 + j2∘eta"};
        }
        case SpaceKind::Crs: {
            Wedge X{n + 1, n}, Y{n + 1, n};
            Element f1 = Element::incl(Y, 0, {}, id.s.pow2()) + Element::incl(Y, 1, {L::Eta});
            Element f2 = Element::incl(Y, 1, {}, id.r.pow2());
            return {X, Y, {f1, f2}, "(2^s·j1 + j2∘eta, 2^r·j2)"};
        }
    }
    throw CatalogError("unknown space kind");
}

/// Splits ∞-parameter spaces into indecomposable wedge summands.
inline std::vector<SpaceId> wedge_reduction(const SpaceId& id) {
    const int n = id.n;
    switch (id.kind) {
        case SpaceKind::MooreBottom:
        case SpaceKind::MooreTop:
            if (id.r.is_inf()) {
                int k = id.connectivity_dim();
                return {SpaceId::sphere(k), SpaceId::sphere(k + 1)};
            }
            break;
        case SpaceKind::Cr:
            if (id.r.is_inf()) return {SpaceId::ceta(n), SpaceId::sphere(n + 1)};
            break;
        case SpaceKind::Cs:
            if (id.s.is_inf()) return {SpaceId::ceta(n), SpaceId::sphere(n + 1)};
            break;
        case SpaceKind::Crs:
            if (id.r.is_inf() && id.s.is_inf()) return {SpaceId::ceta(n), SpaceId::sphere(n + 1), SpaceId::sphere(n + 1)};
            if (id.s.is_inf()) return {SpaceId::cr(n, id.r), SpaceId::sphere(n + 1)};
            if (id.r.is_inf()) return {SpaceId::cs(n, id.s), SpaceId::sphere(n + 1)};
            break;
        default: break;
    }
    return {id};
}

/// Extra Hilton summands in pi_m(A ∨ S^{n+1}) beyond pi_m(A) ⊕ pi_m(S^{n+1}); a closed catalog.
inline std::vector<SpaceId> hilton_cross_terms(const std::vector<SpaceId>& summands, int m) {
    if (summands.size() != 2 || summands[1].kind != SpaceKind::Sphere)
        throw CatalogError("cross terms are catalogued only for (A, sphere) pairs");
    const SpaceId& a = summands[0];
    const int n = a.n;
    if (summands[1].n != n + 1) throw CatalogError("cross terms: sphere must be S^{n+1}");
    if (m < 2 * n) return {};
    if (n == 4 && m == 8) {
        if (a.kind == SpaceKind::Cr) return {SpaceId::cr(8, a.r)};
        if (a.kind == SpaceKind::Cs) return {SpaceId::cs(8, a.s)};
    }
    throw CatalogError("no catalogued cross terms for (" + a.str() + ", " + summands[1].str() + ") in dim " + std::to_string(m));
}

/// Cellular homology H_d of the mapping cone, from the degree parts of f.
inline std::map<int, CanonicalGroup> cellular_homology(const CofibrationSpec& c) {
    std::map<int, CanonicalGroup> out;
    std::vector<int> dims;
    for (int y : c.Y) dims.push_back(y);
    for (int x : c.X) dims.push_back(x + 1);
    std::sort(dims.begin(), dims.end());
    dims.erase(std::unique(dims.begin(), dims.end()), dims.end());
    for (int d : dims) {
        std::vector<std::size_t> ys, xs_in, xs_out;
        for (std::size_t a = 0; a < c.Y.size(); ++a)
            if (c.Y[a] == d) ys.push_back(a);
        for (std::size_t b = 0; b < c.X.size(); ++b) {
            if (c.X[b] + 1 == d + 1) xs_in.push_back(b);   // cells of dim d+1 hitting Y_d
            if (c.X[b] + 1 == d) xs_out.push_back(b);      // cells of dim d
        }
        auto degree = [&](std::size_t b, std::size_t a) -> BigInt {
            auto it = c.f[b].terms().find(BasisKey{false, a, 0, {}});
            return it == c.f[b].terms().end() ? BigInt(0) : it->second;
        };
        IntMatrix rel(ys.size(), xs_in.size());
        for (std::size_t i = 0; i < ys.size(); ++i)
            for (std::size_t k = 0; k < xs_in.size(); ++k) rel(i, k) = degree(xs_in[k], ys[i]);
        CanonicalGroup g = canonical_from_relations(rel);
        // cycles among X cells of dim d: kernel of their boundary into Y_{d-1}
        std::vector<std::size_t> ylow;
        for (std::size_t a = 0; a < c.Y.size(); ++a)
            if (c.Y[a] == d - 1) ylow.push_back(a);
        IntMatrix bd(ylow.size(), xs_out.size());
        for (std::size_t i = 0; i < ylow.size(); ++i)
            for (std::size_t k = 0; k < xs_out.size(); ++k) bd(i, k) = degree(xs_out[k], ylow[i]);
        std::size_t rank = 0;
        if (bd.rows() && bd.cols())
            for (const auto& dd : snf(bd).diagonal()) rank += dd != 0;
        g.free_rank += xs_out.size() - rank;
        if (!g.is_trivial()) out[d] = g;
    }
    return out;
}

}  // namespace a2h
