/**
 * Closed-form expected tables for π_{n+3} and π_{n+4}, concurrent regeneration and verification.
 *
 * Rows: n=3 (reference only), n=4, then n=5 and the stable row (computed at the first stable n).
 */
#pragma once

#include <future>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "resolve.hpp"

namespace a2h {

enum class Family { Mn, Mn1, Ceta, Cr, Cs, Crs };
enum class RowClass { N3, N4, N5, Stable };

inline const std::vector<Family>& all_families() {
    static const std::vector<Family> f{Family::Mn, Family::Mn1, Family::Ceta, Family::Cr, Family::Cs, Family::Crs};
    return f;
}

inline std::vector<RowClass> rows_of(int table) {
    if (table == 1) return {RowClass::N3, RowClass::N4, RowClass::Stable};
    return {RowClass::N3, RowClass::N4, RowClass::N5, RowClass::Stable};
}

/// The n at which a row is evaluated.
inline int row_n(int table, RowClass row) {
    switch (row) {
        case RowClass::N3: return 3;
        case RowClass::N4: return 4;
        case RowClass::N5: return 5;
        case RowClass::Stable: return table == 1 ? 5 : 6;
    }
    return 0;
}

inline std::string row_label(int table, RowClass row) {
    if (row == RowClass::Stable) return table == 1 ? "n>=5" : "n>=6";
    return "n=" + std::to_string(row_n(table, row));
}

inline std::string family_label(Family f) {
    switch (f) {
        case Family::Mn: return "M^n";
        case Family::Mn1: return "M^{n+1}";
        case Family::Ceta: return "C_eta^{n+2}";
        case Family::Cr: return "C_r^{n+2}";
        case Family::Cs: return "C^{n+2,s}";
        case Family::Crs: return "C_r^{n+2,s}";
    }
    return "?";
}

inline bool family_uses_r(Family f) { return f == Family::Mn || f == Family::Mn1 || f == Family::Cr || f == Family::Crs; }
inline bool family_uses_s(Family f) { return f == Family::Cs || f == Family::Crs; }

inline SpaceId space_for(int n, Family f, ExtNat r, ExtNat s) {
    switch (f) {
        case Family::Mn: return SpaceId::moore(n, r);
        case Family::Mn1: return SpaceId::moore(n + 1, r);
        case Family::Ceta: return SpaceId::ceta(n);
        case Family::Cr: return SpaceId::cr(n, r);
        case Family::Cs: return SpaceId::cs(n, s);
        case Family::Crs: return SpaceId::crs(n, r, s);
    }
    throw CatalogError("unknown family");
}

inline int table_dim(int table, int n) { return n + (table == 1 ? 3 : 4); }

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

namespace detail {

/// Sum of cyclic groups; entry e > 0 is Z/2^e, e == 0 is dropped, -1 is Z_(2).
inline CanonicalGroup sum(std::initializer_list<int> exps) {
    CanonicalGroup g;
    for (int e : exps) {
        if (e < 0) ++g.free_rank;
        else if (e > 0) g.torsion.push_back(static_cast<unsigned>(e));
    }
    g.normalize();
    return g;
}
constexpr int Z = -1;
inline int mn(int a, int b) { return std::min(a, b); }
inline CanonicalGroup twos(int k) {
    CanonicalGroup g;
    for (int i = 0; i < k; ++i) g.torsion.push_back(1);
    return g;
}

inline CanonicalGroup table1(RowClass row, Family f, int r, int s) {
    const int eps = r == 1 ? 1 : 0;
    switch (row) {
        case RowClass::N3:
            switch (f) {
                case Family::Mn: return r <= 2 ? twos(2 - eps) + sum({r + 1}) : sum({1, 2, r});
                case Family::Mn1: return r == 1 ? sum({2}) : twos(2);
                case Family::Ceta: return sum({1});
                case Family::Cr: return twos(2 - eps) + sum({r + eps});
                case Family::Cs: return twos(2) + sum({s});
                case Family::Crs: return twos(3 - eps) + sum({mn(r, s), r + eps});
            }
            break;
        case RowClass::N4:
            switch (f) {
                case Family::Mn: return sum({1, r + 1, mn(r - 1, 2)});
                case Family::Mn1: return r == 1 ? sum({2}) : twos(2);
                case Family::Ceta: return sum({1, Z});
                case Family::Cr: return twos(2 - eps) + sum({r + 1});
                case Family::Cs: return twos(2) + sum({Z});
                case Family::Crs: return twos(3 - eps) + sum({r + 1});
            }
            break;
        default:
            switch (f) {
                case Family::Mn: return sum({1, mn(r, 3)});
                case Family::Mn1: return r == 1 ? sum({2}) : twos(2);
                case Family::Ceta: return sum({2});
                case Family::Cr: return sum({1, mn(r, 2)});
                case Family::Cs: return sum({1, 2});
                case Family::Crs: return twos(2) + sum({mn(r, 2)});
            }
            break;
    }
    throw CatalogError("table 1: no such cell");
}

inline CanonicalGroup table2(RowClass row, Family f, int r, int s) {
    const int eps = r == 1 ? 1 : 0;
    switch (row) {
        case RowClass::N3:
            switch (f) {
                case Family::Mn: return twos(2) + sum({(1 - eps) * 2});
                case Family::Mn1: return sum({1, r + 1, mn(r - 1, 2)});
                case Family::Ceta: return sum({Z});
                case Family::Cr: return sum({2, r + 1});
                case Family::Cs: return sum({mn(s, 2), s + 2});
                case Family::Crs: return sum({2, s + 2, mn(s - eps, 2), mn(r + 1, s + 1)});
            }
            break;
        case RowClass::N4:
            switch (f) {
                case Family::Mn: return twos(2 - eps) + sum({mn(r, 3)});
                case Family::Mn1: return sum({1, mn(r, 3)});
                case Family::Ceta: return sum({1});
                case Family::Cr: return sum({1, mn(r + 1, 3)});
                case Family::Cs: return sum({1, mn(s, 3), s + 1});
                case Family::Crs: return sum({1, mn(r, s + 1), mn(r + 1, 3), mn(s, 3)});
            }
            break;
        case RowClass::N5:
            switch (f) {
                case Family::Mn:
                case Family::Mn1: return sum({1, mn(r, 3)});
                case Family::Ceta: return sum({1});
                case Family::Cr: return sum({1, mn(r + 1, 3)});
                case Family::Cs: return sum({1, mn(s, 3)});
                case Family::Crs: return sum({1, mn(r + 1, 3), mn(s, 3)});
            }
            break;
        case RowClass::Stable:
            switch (f) {
                case Family::Mn: return sum({mn(r, 3)});
                case Family::Mn1: return sum({1, mn(r, 3)});
                case Family::Ceta: return {};
                case Family::Cr: return sum({mn(r + 1, 3)});
                case Family::Cs: return sum({mn(s, 3)});
                case Family::Crs: return sum({mn(r + 1, 3), mn(s, 3)});
            }
            break;
    }
    throw CatalogError("table 2: no such cell");
}

inline CanonicalGroup closed_form(int table, RowClass row, Family f, int r, int s) {
    return table == 1 ? table1(row, f, r, s) : table2(row, f, r, s);
}

/// π_{m}(S^{n+1}) for the extra wedge summand, m = n+3 or n+4.
inline CanonicalGroup sphere_summand(int table, int n) {
    if (table == 1) return sum({1});
    if (n == 3) return sum({Z, 2});
    return sum({3});
}

/// Hilton cross terms of the wedge extractions, as closed forms.
inline CanonicalGroup cross_summand(int table, int n, Family indecomposable, int param) {
    if (table == 2 && n == 4) return indecomposable == Family::Cr ? sum({param}) : sum({Z});
    return {};
}

}  // namespace detail

/// Expected group of a cell; nullopt when the cell is not defined (∞ outside C_r^{n+2,s}).
inline std::optional<CanonicalGroup> expected_cell(int table, RowClass row, Family f, ExtNat r, ExtNat s) {
    const int n = row_n(table, row);
    if (f == Family::Crs) {
        if (r.is_inf() && s.is_inf()) return std::nullopt;
        if (s.is_inf())
            return detail::closed_form(table, row, Family::Cr, r.get(), 1) + detail::sphere_summand(table, n) +
                   detail::cross_summand(table, n, Family::Cr, static_cast<int>(r.get()));
        if (r.is_inf())
            return detail::closed_form(table, row, Family::Cs, 1, s.get()) + detail::sphere_summand(table, n) +
                   detail::cross_summand(table, n, Family::Cs, static_cast<int>(s.get()));
        return detail::closed_form(table, row, f, static_cast<int>(r.get()), static_cast<int>(s.get()));
    }
    if (family_uses_r(f) && r.is_inf()) return std::nullopt;
    if (family_uses_s(f) && s.is_inf()) return std::nullopt;
    int rv = family_uses_r(f) ? static_cast<int>(r.get()) : 1;
    int sv = family_uses_s(f) ? static_cast<int>(s.get()) : 1;
    return detail::closed_form(table, row, f, rv, sv);
}

// ---------------------------------------------------------------------------
// Regeneration and verification
// ---------------------------------------------------------------------------

struct CellKey {
    int table = 1;
    RowClass row = RowClass::N4;
    Family family = Family::Mn;
    ExtNat r, s;
    friend bool operator<(const CellKey& a, const CellKey& b) {
        return std::make_tuple(a.table, static_cast<int>(a.row), static_cast<int>(a.family), a.r, a.s) <
               std::make_tuple(b.table, static_cast<int>(b.row), static_cast<int>(b.family), b.r, b.s);
    }
    std::string str() const {
        return "table " + std::to_string(table) + ", " + row_label(table, row) + ", " + family_label(family) +
               ", r=" + r.str() + ", s=" + s.str();
    }
};

enum class CellStatus { Match, Mismatch, NotApplicable, Reference, Ambiguous, Error };

inline std::string status_name(CellStatus s) {
    switch (s) {
        case CellStatus::Match: return "match";
        case CellStatus::Mismatch: return "mismatch";
        case CellStatus::NotApplicable: return "n/a";
        case CellStatus::Reference: return "reference";
        case CellStatus::Ambiguous: return "ambiguous";
        case CellStatus::Error: return "error";
    }
    return "?";
}

struct CellResult {
    CellKey key;
    std::optional<SpaceId> space;
    int dim = 0;
    std::optional<CanonicalGroup> computed, expected;
    CellStatus status = CellStatus::NotApplicable;
    std::string message;
};

struct TableOptions {
    std::vector<ExtNat> r_values{ExtNat::of(1), ExtNat::of(2), ExtNat::of(3), ExtNat::of(4), ExtNat::inf()};
    std::vector<ExtNat> s_values{ExtNat::of(1), ExtNat::of(2), ExtNat::of(3), ExtNat::of(4), ExtNat::inf()};
    EngineConfig engine;
    /// fault injection: replaces expected values
    std::map<CellKey, CanonicalGroup> expected_override;
    bool parallel = true;
};

inline CellResult evaluate_cell(const CellKey& key, const TableOptions& opt) {
    CellResult out{key, std::nullopt, 0, std::nullopt, std::nullopt, CellStatus::NotApplicable, {}};
    out.expected = expected_cell(key.table, key.row, key.family, key.r, key.s);
    if (auto it = opt.expected_override.find(key); it != opt.expected_override.end()) out.expected = it->second;
    if (!out.expected) {
        out.message = "n/a";
        return out;
    }
    const int n = row_n(key.table, key.row);
    out.space = space_for(n, key.family, key.r, key.s);
    out.dim = table_dim(key.table, n);
    if (key.row == RowClass::N3) {
        out.status = CellStatus::Reference;
        out.message = "reference (not derived)";
        return out;
    }
    try {
        out.computed = compute_pi(*out.space, out.dim, opt.engine).group;
        out.status = *out.computed == *out.expected ? CellStatus::Match : CellStatus::Mismatch;
    } catch (const AmbiguousError& e) {
        out.status = CellStatus::Ambiguous;
        out.message = render_set(e.report.candidates);
    } catch (const std::exception& e) {
        out.status = CellStatus::Error;
        out.message = e.what();
    }
    return out;
}

/// All cells of a table in deterministic order: (r, s) pairs, then rows, then families.
inline std::vector<CellKey> table_cells(int table, const TableOptions& opt) {
    std::vector<CellKey> keys;
    for (const auto& r : opt.r_values)
        for (const auto& s : opt.s_values)
            for (RowClass row : rows_of(table))
                for (Family f : all_families()) keys.push_back({table, row, f, r, s});
    return keys;
}

inline std::vector<CellResult> regenerate(int table, const TableOptions& opt) {
    auto keys = table_cells(table, opt);
    std::vector<CellResult> out(keys.size());
    if (!opt.parallel) {
        for (std::size_t i = 0; i < keys.size(); ++i) out[i] = evaluate_cell(keys[i], opt);
        return out;
    }
    std::vector<std::future<CellResult>> futs;
    futs.reserve(keys.size());
    for (const auto& k : keys) futs.push_back(std::async(std::launch::async, evaluate_cell, k, std::cref(opt)));
    for (std::size_t i = 0; i < futs.size(); ++i) out[i] = futs[i].get();
    return out;
}

inline std::string cell_text(const CellResult& c) {
    switch (c.status) {
        case CellStatus::Match: return c.computed->pretty();
        case CellStatus::Mismatch: return "MISMATCH " + c.computed->pretty() + " (expected " + c.expected->pretty() + ")";
        case CellStatus::NotApplicable: return "n/a";
        case CellStatus::Reference: return c.expected->pretty() + " (reference)";
        case CellStatus::Ambiguous: return "AMBIGUOUS " + c.message;
        case CellStatus::Error: return "ERROR " + c.message;
    }
    return "?";
}

inline std::string render_markdown(int table, const std::vector<CellResult>& cells) {
    std::ostringstream os;
    os << "# Table " << table << ": pi_{n+" << (table == 1 ? 3 : 4) << "}\n";
    std::map<std::pair<std::string, std::string>, std::vector<const CellResult*>> by_pair;
    std::vector<std::pair<std::string, std::string>> order;
    for (const auto& c : cells) {
        auto key = std::make_pair(c.key.r.str(), c.key.s.str());
        if (!by_pair.count(key)) order.push_back(key);
        by_pair[key].push_back(&c);
    }
    for (const auto& key : order) {
        os << "\n## r=" << key.first << ", s=" << key.second << "\n\n|   |";
        for (Family f : all_families()) os << " " << family_label(f) << " |";
        os << "\n|---|";
        for (std::size_t i = 0; i < all_families().size(); ++i) os << "---|";
        os << "\n";
        const auto& list = by_pair[key];
        for (RowClass row : rows_of(table)) {
            os << "| " << row_label(table, row) << " |";
            for (const auto* c : list)
                if (c->key.row == row) os << " " << cell_text(*c) << " |";
            os << "\n";
        }
    }
    return os.str();
}

struct VerifyReport {
    std::vector<CellResult> cells;
    std::vector<std::string> failures;
    std::size_t checked = 0, matched = 0;
    bool ok() const { return failures.empty(); }
};

/// π_{n+4}(M^{n+1}) in table 2 must equal π_{(n+1)+3}(M^{n+1}) in table 1 (computed and closed form).
inline std::vector<std::string> suspension_consistency(const std::vector<CellResult>& t1, const std::vector<CellResult>& t2) {
    std::vector<std::string> out;
    auto find = [](const std::vector<CellResult>& v, RowClass row, Family f, const ExtNat& r) -> const CellResult* {
        for (const auto& c : v)
            if (c.key.row == row && c.key.family == f && c.key.r == r) return &c;
        return nullptr;
    };
    const std::vector<std::pair<RowClass, RowClass>> pairs{{RowClass::N4, RowClass::Stable}, {RowClass::N5, RowClass::Stable},
                                                           {RowClass::Stable, RowClass::Stable}};
    std::set<std::string> seen;
    for (const auto& c : t2) {
        if (c.key.family != Family::Mn1 || c.key.r.is_inf()) continue;
        for (auto [r2, r1] : pairs) {
            if (c.key.row != r2) continue;
            const CellResult* other = find(t1, r1, Family::Mn, c.key.r);
            if (!other) continue;
            std::string tag = row_label(2, r2) + " r=" + c.key.r.str();
            if (!seen.insert(tag).second) continue;
            if (c.expected && other->expected && !(*c.expected == *other->expected))
                out.push_back("suspension consistency (closed forms) fails at " + tag);
            if (c.computed && other->computed && !(*c.computed == *other->computed))
                out.push_back("suspension consistency (computed) fails at " + tag);
        }
    }
    return out;
}

inline VerifyReport verify_table(int table, const TableOptions& opt) {
    VerifyReport rep;
    rep.cells = regenerate(table, opt);
    for (const auto& c : rep.cells) {
        if (c.status == CellStatus::NotApplicable || c.status == CellStatus::Reference) continue;
        ++rep.checked;
        if (c.status == CellStatus::Match) ++rep.matched;
        else rep.failures.push_back(c.key.str() + ": " + cell_text(c));
    }
    if (table == 2) {
        auto t1 = regenerate(1, opt);
        for (auto& f : suspension_consistency(t1, rep.cells)) rep.failures.push_back(f);
    }
    return rep;
}

}  // namespace a2h
