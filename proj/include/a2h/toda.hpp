/**
 * Generator calculus for 2-local pi_{n+k}(S^n), k <= 4, and wedges of spheres.
 *
 * A class in pi_{n+k}(S^n) is a word of letters read left to right as a composite:
 * the first letter is a map into S^n, each later letter maps into the source
 * sphere of its predecessor.  Letters:
 *   Eta      eta_k   (stem 1)
 *   Nu       nu_k    (stem 3, k >= 4; nu_4 is the Hopf map, not a suspension)
 *   NuPrime  Sigma^{k-3} nu'  (stem 3; nu' on S^3, Sigma nu' on S^4, = 2 nu_k for k >= 5)
 * Words are normalized by a small confluent rewrite system into catalog basis words.
 */
#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abelian.hpp"

namespace a2h {

class CatalogError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class Letter : unsigned char { Eta, Nu, NuPrime };

using Word = std::vector<Letter>;
/// Linear combination of words on a fixed base sphere.
using WordComb = std::map<Word, BigInt>;

struct TodaConfig {
    /// [iota_4, iota_4] = sign * (2 nu_4 - Sigma nu')
    int whitehead_sign = +1;
};

inline int letter_stem(Letter l) { return l == Letter::Eta ? 1 : 3; }

inline int word_stem(const Word& w) {
    int s = 0;
    for (Letter l : w) s += letter_stem(l);
    return s;
}

inline void add_to(WordComb& acc, const Word& w, const BigInt& c) {
    if (c == 0) return;
    BigInt& slot = acc[w];
    slot += c;
    if (slot == 0) acc.erase(w);
}

inline std::string letter_name(Letter l, int sphere) {
    switch (l) {
        case Letter::Eta: return "eta" + std::to_string(sphere);
        case Letter::Nu: return "nu" + std::to_string(sphere);
        case Letter::NuPrime:
            if (sphere == 3) return "nu'";
            if (sphere == 4) return "SigmaNu'";
            return "Sigma" + std::to_string(sphere - 3) + "nu'";
    }
    return "?";
}

inline std::string render_word(int n, const Word& w) {
    if (w.empty()) return "iota" + std::to_string(n);
    std::string out;
    int k = n;
    for (std::size_t i = 0; i < w.size(); ++i) {
        out += (i ? "∘" : "") + letter_name(w[i], k);
        k += letter_stem(w[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sphere catalog
// ---------------------------------------------------------------------------

struct BasisWord {
    Word word;
    BigInt order;  ///< 0 for a free (Z_(2)) summand
};

/// Basis of pi_{n+stem}(S^n) for the catalog range; throws outside it.
inline std::vector<BasisWord> sphere_basis(int n, int stem) {
    using L = Letter;
    if (stem < 0) return {};
    if (n < 3) throw CatalogError("sphere catalog starts at S^3 (got S^" + std::to_string(n) + ")");
    switch (stem) {
        case 0: return {{{}, 0}};
        case 1: return {{{L::Eta}, 2}};
        case 2: return {{{L::Eta, L::Eta}, 2}};
        case 3:
            if (n == 3) return {{{L::NuPrime}, 4}};
            if (n == 4) return {{{L::Nu}, 0}, {{L::NuPrime}, 4}};
            return {{{L::Nu}, 8}};
        case 4:
            if (n == 3) return {{{L::NuPrime, L::Eta}, 2}};
            if (n == 4) return {{{L::Nu, L::Eta}, 2}, {{L::NuPrime, L::Eta}, 2}};
            if (n == 5) return {{{L::Nu, L::Eta}, 2}};
            return {};
        default:
            throw CatalogError("stem " + std::to_string(stem) + " is outside the catalog (stems 0..4)");
    }
}

inline std::optional<BigInt> basis_order(int n, const Word& w) {
    for (auto& b : sphere_basis(n, word_stem(w)))
        if (b.word == w) return b.order;
    return std::nullopt;
}

/// Every letter a suspension at the sphere it maps into.
inline bool is_suspension(int n, const Word& w) {
    int k = n;
    for (Letter l : w) {
        bool ok = (l == Letter::Eta && k >= 3) || (l == Letter::Nu && k >= 5) || (l == Letter::NuPrime && k >= 4);
        if (!ok) return false;
        k += letter_stem(l);
    }
    return true;
}

namespace detail {

struct Rewrite {
    std::size_t pos, len;
    WordComb replacement;  ///< words on the sphere at `pos`
};

inline std::optional<Rewrite> find_rewrite(int n, const Word& w) {
    using L = Letter;
    int k = n;
    for (std::size_t p = 0; p < w.size(); ++p) {
        auto at = [&](std::size_t off) -> std::optional<L> {
            if (p + off < w.size()) return w[p + off];
            return std::nullopt;
        };
        if (w[p] == L::Nu && k < 4) throw CatalogError("nu_" + std::to_string(k) + " does not exist; use nu'");
        if (w[p] == L::NuPrime && k >= 5) return Rewrite{p, 1, {{{L::Nu}, 2}}};
        if (w[p] == L::Eta && at(1) == L::Eta && at(2) == L::Eta) {
            if (k >= 5) return Rewrite{p, 3, {{{L::Nu}, 4}}};
            return Rewrite{p, 3, {{{L::NuPrime}, 2}}};
        }
        if (w[p] == L::Eta && at(1) == L::Nu) {
            if (k >= 5) return Rewrite{p, 2, {}};
            return Rewrite{p, 2, {{{L::NuPrime, L::Eta}, 1}}};
        }
        if (w[p] == L::Nu && at(1) == L::Eta && k >= 6) return Rewrite{p, 2, {}};
        k += letter_stem(w[p]);
    }
    return std::nullopt;
}

inline int sphere_at(int n, const Word& w, std::size_t pos) {
    int k = n;
    for (std::size_t i = 0; i < pos; ++i) k += letter_stem(w[i]);
    return k;
}

}  // namespace detail

/// Normal form of a single word on S^n, coefficients reduced modulo basis orders.
inline WordComb normalize_word(int n, const Word& w, const BigInt& coeff = 1) {
    WordComb out;
    if (coeff == 0) return out;
    if (word_stem(w) > 4) throw CatalogError("composite " + render_word(n, w) + " has stem > 4");
    auto rw = detail::find_rewrite(n, w);
    if (!rw) {
        auto ord = basis_order(n, w);
        if (!ord) throw CatalogError("no catalog rule for " + render_word(n, w));
        BigInt c = *ord == 0 ? coeff : mod_floor(coeff, *ord);
        if (c != 0) out[w] = c;
        return out;
    }
    Word prefix(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(rw->pos));
    Word suffix(w.begin() + static_cast<std::ptrdiff_t>(rw->pos + rw->len), w.end());
    const int k = detail::sphere_at(n, w, rw->pos);
    if (!suffix.empty() && rw->replacement.size() + 0 > 0) {
        int ks = k + word_stem(Word(w.begin() + static_cast<std::ptrdiff_t>(rw->pos),
                                    w.begin() + static_cast<std::ptrdiff_t>(rw->pos + rw->len)));
        bool single_unit = rw->replacement.size() == 1 && rw->replacement.begin()->second == 1;
        if (!single_unit && !is_suspension(ks, suffix))
            throw CatalogError("cannot right-compose " + render_word(ks, suffix) + " (not a suspension)");
    }
    for (const auto& [rep, c] : rw->replacement) {
        Word next = prefix;
        next.insert(next.end(), rep.begin(), rep.end());
        next.insert(next.end(), suffix.begin(), suffix.end());
        for (const auto& [nw, nc] : normalize_word(n, next, coeff * c)) add_to(out, nw, nc);
    }
    // reduce after merging
    WordComb reduced;
    for (const auto& [nw, nc] : out) {
        auto ord = basis_order(n, nw);
        BigInt c = (!ord || *ord == 0) ? nc : mod_floor(nc, *ord);
        add_to(reduced, nw, c);
    }
    return reduced;
}

inline WordComb normalize_comb(int n, const WordComb& comb) {
    WordComb out;
    for (const auto& [w, c] : comb)
        for (const auto& [nw, nc] : normalize_word(n, w, c)) add_to(out, nw, nc);
    WordComb reduced;
    for (const auto& [w, c] : out) {
        auto ord = basis_order(n, w);
        add_to(reduced, w, (!ord || *ord == 0) ? c : mod_floor(c, *ord));
    }
    return reduced;
}

/// Sigma: the same letters one sphere higher, renormalized.
inline WordComb suspend_word(int n, const Word& w, const BigInt& c = 1) { return normalize_word(n + 1, w, c); }

/// [iota_n, iota_n] as a combination of words on S^n.
inline WordComb whitehead_square(int n, const TodaConfig& cfg = {}) {
    using L = Letter;
    switch (n) {
        case 3:
        case 7: return {};
        case 4: return normalize_comb(4, {{{L::Nu}, 2 * cfg.whitehead_sign}, {{L::NuPrime}, -cfg.whitehead_sign}});
        case 5: return {{{L::Nu, L::Eta}, 1}};
        default: throw CatalogError("[iota_" + std::to_string(n) + ", iota_" + std::to_string(n) + "] is outside the catalog");
    }
}

/// Hopf invariant H(w) in pi_*(S^{2n-1}); nullopt when w is a suspension (H = 0).
inline std::optional<Word> hopf_invariant(int n, const Word& w) {
    using L = Letter;
    if (is_suspension(n, w)) return std::nullopt;
    if (n == 4 && w == Word{L::Nu}) return Word{};
    if (n == 4 && w == Word{L::Nu, L::Eta}) return Word{L::Eta};
    if (n == 3 && w == Word{L::NuPrime}) return Word{L::Eta};
    if (n == 3 && w == Word{L::NuPrime, L::Eta}) return Word{L::Eta, L::Eta};
    throw CatalogError("unknown Hopf invariant for " + render_word(n, w));
}

/// (k iota_n) ∘ w = k w + binom(k,2) [iota_n, iota_n] ∘ H(w).
inline WordComb left_degree_compose(const BigInt& k, int n, const Word& w, const TodaConfig& cfg = {}) {
    WordComb out = normalize_word(n, w, k);
    auto h = hopf_invariant(n, w);
    if (!h) return out;
    BigInt binom = k * (k - 1) / 2;
    if (binom == 0) return out;
    WordComb sq = whitehead_square(n, cfg);
    for (const auto& [sw, sc] : sq) {
        Word cat = sw;
        cat.insert(cat.end(), h->begin(), h->end());
        for (const auto& [nw, nc] : normalize_word(n, cat, sc * binom)) add_to(out, nw, nc);
    }
    return normalize_comb(n, out);
}

/// left_degree_compose for the degree 2^r map.
inline WordComb left_degree_compose_pow2(unsigned r, int n, const Word& w, const TodaConfig& cfg = {}) {
    return left_degree_compose(pow2(r), n, w, cfg);
}

// ---------------------------------------------------------------------------
// Wedges of spheres
// ---------------------------------------------------------------------------

/// Dimensions of the wedge summands, in order (j_1, j_2, ...).
using Wedge = std::vector<int>;

inline std::string render_wedge(const Wedge& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) out += (i ? " v S" : "S") + std::to_string(w[i]);
    return out.empty() ? "*" : out;
}

/// Basis symbol of pi_m of a wedge: j_a ∘ word, or the Whitehead bracket [j_a, j_b] (a < b).
struct BasisKey {
    bool bracket = false;
    std::size_t a = 0, b = 0;
    Word word;
    friend auto operator<=>(const BasisKey&, const BasisKey&) = default;
    friend bool operator==(const BasisKey&, const BasisKey&) = default;
};

inline std::string render_key(const Wedge& w, const BasisKey& k) {
    if (k.bracket) return "[j" + std::to_string(k.a + 1) + ",j" + std::to_string(k.b + 1) + "]";
    std::string j = "j" + std::to_string(k.a + 1);
    if (k.word.empty()) return j;
    return j + "∘" + render_word(w[k.a], k.word);
}

/// pi_m(W) with its catalog basis.
struct WedgeGroup {
    Wedge wedge;
    int m = 0;
    std::vector<BasisKey> basis;
    std::vector<BigInt> orders;

    PresentedGroup presented() const {
        std::vector<std::string> names;
        for (const auto& k : basis) names.push_back(render_key(wedge, k));
        return PresentedGroup::diagonal(std::move(names), orders);
    }
    std::optional<std::size_t> index_of(const BasisKey& k) const {
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (basis[i] == k) return i;
        return std::nullopt;
    }
    CanonicalGroup canonical() const { return presented().canonical(); }
};

/// pi_m(W): summand groups plus [j_a, j_b] exactly when m = n_a + n_b - 1.
inline WedgeGroup pi_wedge(int m, const Wedge& w) {
    WedgeGroup g{w, m, {}, {}};
    for (std::size_t i = 0; i < w.size(); ++i)
        for (auto& b : sphere_basis(w[i], m - w[i])) {
            g.basis.push_back({false, i, 0, b.word});
            g.orders.push_back(b.order);
        }
    for (std::size_t a = 0; a < w.size(); ++a)
        for (std::size_t b = a + 1; b < w.size(); ++b) {
            int bottom = w[a] + w[b] - 1;
            if (m == bottom) {
                g.basis.push_back({true, a, b, {}});
                g.orders.push_back(0);
            } else if (m > bottom) {
                throw CatalogError("pi_" + std::to_string(m) + "(" + render_wedge(w) +
                                   ") needs Hilton terms beyond the bottom Whitehead product");
            }
        }
    return g;
}

inline WedgeGroup pi_sphere(int m, int n) { return pi_wedge(m, Wedge{n}); }

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// An element of pi_m(W) in catalog coordinates.
class Element {
  public:
    Element() = default;
    Element(Wedge w, int m) : wedge_(std::move(w)), m_(m) {}

    static Element zero(const Wedge& w, int m) { return Element(w, m); }
    /// c · j_i ∘ word (word on S^{w[i]})
    static Element incl(const Wedge& w, std::size_t i, const Word& word = {}, const BigInt& c = 1) {
        Element e(w, w.at(i) + word_stem(word));
        e.add_summand_word(i, word, c);
        return e;
    }
    static Element bracket(const Wedge& w, std::size_t a, std::size_t b, const BigInt& c = 1) {
        if (a == b) throw CatalogError("bracket of a summand with itself: use whitehead()");
        Element e(w, w.at(a) + w.at(b) - 1);
        int sign = 1;
        if (a > b) {
            std::swap(a, b);
            if ((w[a] * w[b]) % 2 != 0) sign = -1;
        }
        e.add_key({true, a, b, {}}, c * sign);
        return e;
    }

    const Wedge& wedge() const { return wedge_; }
    int dim() const { return m_; }
    const std::map<BasisKey, BigInt>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_summand_word(std::size_t i, const Word& word, const BigInt& c) {
        if (wedge_.at(i) + word_stem(word) != m_) throw CatalogError("dimension mismatch adding " + render_word(wedge_[i], word));
        for (const auto& [nw, nc] : normalize_word(wedge_[i], word, c)) add_key({false, i, 0, nw}, nc);
    }

    void add_key(const BasisKey& k, const BigInt& c) {
        if (c == 0) return;
        BigInt& slot = terms_[k];
        slot += c;
        BigInt ord = order_of(k);
        if (ord != 0) slot = mod_floor(slot, ord);
        if (slot == 0) terms_.erase(k);
    }

    BigInt order_of(const BasisKey& k) const {
        if (k.bracket) {
            if (m_ != wedge_[k.a] + wedge_[k.b] - 1) throw CatalogError("bracket with a tail is outside the catalog");
            return 0;
        }
        auto o = basis_order(wedge_[k.a], k.word);
        if (!o) throw CatalogError("not a basis word: " + render_key(wedge_, k));
        return *o;
    }

    Element& operator+=(const Element& o) {
        check_same_ambient(o);
        for (const auto& [k, c] : o.terms_) add_key(k, c);
        return *this;
    }
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a += b * BigInt(-1); }
    friend Element operator*(const Element& a, const BigInt& s) {
        Element out(a.wedge_, a.m_);
        for (const auto& [k, c] : a.terms_) out.add_key(k, c * s);
        return out;
    }
    friend Element operator*(const BigInt& s, const Element& a) { return a * s; }
    friend bool operator==(const Element& a, const Element& b) {
        return a.wedge_ == b.wedge_ && a.m_ == b.m_ && a.terms_ == b.terms_;
    }

    /// Coordinates over pi_wedge(m, W).basis.
    std::vector<BigInt> coords(const WedgeGroup& g) const {
        if (g.wedge != wedge_ || g.m != m_) throw CatalogError("coords: ambient mismatch");
        std::vector<BigInt> v(g.basis.size());
        for (const auto& [k, c] : terms_) {
            auto idx = g.index_of(k);
            if (!idx) throw CatalogError("element term " + render_key(wedge_, k) + " not in basis");
            v[*idx] = c;
        }
        return v;
    }
    static Element from_coords(const WedgeGroup& g, const std::vector<BigInt>& v) {
        Element e(g.wedge, g.m);
        for (std::size_t i = 0; i < v.size(); ++i) e.add_key(g.basis[i], v[i]);
        return e;
    }

    /// Deterministic rendering, e.g. "4·j2∘nu5 + j2∘SigmaNu'∘eta7".
    std::string render() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            std::string coeff;
            BigInt a = c;
            bool neg = a < 0;
            if (neg) a = -a;
            if (a != 1) coeff = a.str() + "·";
            out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
            out += coeff + render_key(wedge_, k);
            first = false;
        }
        return out;
    }

  private:
    void check_same_ambient(const Element& o) const {
        if (o.wedge_ != wedge_ || o.m_ != m_) throw CatalogError("adding elements of different homotopy groups");
    }

    Wedge wedge_;
    int m_ = 0;
    std::map<BasisKey, BigInt> terms_;
};

/// alpha ∘ beta for alpha in pi_k(W) and beta a word on S^k.
inline Element compose(const Element& alpha, const Word& beta, const TodaConfig& cfg = {}) {
    const int k = alpha.dim();
    Element out(alpha.wedge(), k + word_stem(beta));
    if (alpha.is_zero()) return out;
    if (is_suspension(k, beta)) {
        for (const auto& [key, c] : alpha.terms()) {
            if (key.bracket) {
                if (!beta.empty()) throw CatalogError("bracket ∘ " + render_word(k, beta) + " is outside the catalog");
                out.add_key(key, c);
                continue;
            }
            Word cat = key.word;
            cat.insert(cat.end(), beta.begin(), beta.end());
            out.add_summand_word(key.a, cat, c);
        }
        return out;
    }
    if (alpha.terms().size() != 1)
        throw CatalogError("right-distribution of " + render_word(k, beta) + " over a sum requires a suspension");
    const auto& [key, c] = *alpha.terms().begin();
    if (key.bracket) throw CatalogError("bracket ∘ non-suspension is outside the catalog");
    for (const auto& [w, d] : left_degree_compose(c, k, beta, cfg)) {
        Word cat = key.word;
        cat.insert(cat.end(), w.begin(), w.end());
        out.add_summand_word(key.a, cat, d);
    }
    return out;
}

/// alpha ∘ (combination of words on S^k); left composition is additive.
inline Element compose(const Element& alpha, const WordComb& beta, int target_dim, const TodaConfig& cfg = {}) {
    Element out(alpha.wedge(), target_dim);
    for (const auto& [w, c] : beta) {
        if (alpha.dim() + word_stem(w) != target_dim) throw CatalogError("compose: dimension mismatch");
        out += compose(alpha, w, cfg) * c;
    }
    return out;
}

/// Whitehead product [a, b] in pi_{p+q-1}(W), expanded bilinearly over suspension terms.
inline Element whitehead(const Element& a, const Element& b, const TodaConfig& cfg = {}) {
    if (a.wedge() != b.wedge()) throw CatalogError("whitehead: different ambients");
    const Wedge& W = a.wedge();
    Element out(W, a.dim() + b.dim() - 1);
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            if (ka.bracket || kb.bracket) throw CatalogError("iterated Whitehead products are outside the catalog");
            const int na = W[ka.a], nb = W[kb.a];
            if (!is_suspension(na, ka.word) || !is_suspension(nb, kb.word))
                throw CatalogError("whitehead: bilinear expansion needs suspension factors");
            Word smash;
            if (!ka.word.empty() && !kb.word.empty())
                throw CatalogError("smash of two non-identity classes is outside the catalog");
            smash = ka.word.empty() ? kb.word : ka.word;
            const BigInt c = ca * cb;
            if (ka.a != kb.a) {
                if (!smash.empty()) throw CatalogError("[j_a, j_b] with a tail is outside the catalog");
                out += Element::bracket(W, ka.a, kb.a, c);
            } else {
                for (const auto& [sw, sc] : whitehead_square(na, cfg)) {
                    Word cat = sw;
                    cat.insert(cat.end(), smash.begin(), smash.end());
                    out.add_summand_word(ka.a, cat, c * sc);
                }
            }
        }
    return out;
}

/// Sigma: pi_m(W) -> pi_{m+1}(Sigma W); Whitehead products suspend to zero.
inline Element suspend(const Element& e) {
    Wedge up = e.wedge();
    for (int& d : up) ++d;
    Element out(up, e.dim() + 1);
    for (const auto& [k, c] : e.terms())
        if (!k.bracket) out.add_summand_word(k.a, k.word, c);
    return out;
}

/// A preimage under Sigma, term by term; throws for non-suspension classes.
inline Element desuspend(const Element& e) {
    Wedge down = e.wedge();
    for (int& d : down) --d;
    Element out(down, e.dim() - 1);
    for (const auto& [k, c] : e.terms()) {
        if (k.bracket) throw CatalogError("Whitehead product " + render_key(e.wedge(), k) + " is not a suspension");
        out.add_summand_word(k.a, k.word, c);
    }
    if (!(suspend(out) == e)) throw CatalogError("no desuspension of " + e.render() + " in the catalog");
    return out;
}

/// Map between wedges given componentwise: mu ∘ j_i = components[i].
struct WedgeMap {
    Wedge source, target;
    std::vector<Element> components;

    Element apply(const Element& x, const TodaConfig& cfg = {}) const {
        if (x.wedge() != source) throw CatalogError("WedgeMap::apply: source mismatch");
        Element out(target, x.dim());
        for (const auto& [k, c] : x.terms()) {
            if (k.bracket) {
                out += whitehead(components[k.a], components[k.b], cfg) * c;
            } else {
                out += compose(components[k.a], k.word, cfg) * c;
            }
        }
        return out;
    }
};

}  // namespace a2h
