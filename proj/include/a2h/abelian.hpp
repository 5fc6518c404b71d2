/**
 * Exact integer linear algebra and 2-local finitely generated abelian groups.
 *
 * Everything here works over the integers with arbitrary precision; 2-localization
 * is applied only when reading invariant factors (odd parts are units).
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace a2h {

using BigInt = boost::multiprecision::cpp_int;

class AlgebraError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

/// 2-adic valuation; v2(0) is undefined and throws.
inline unsigned v2(const BigInt& x) {
    if (x == 0) throw AlgebraError("v2 of zero");
    return static_cast<unsigned>(boost::multiprecision::lsb(boost::multiprecision::abs(x)));
}

/// Non-negative residue of a modulo m (m > 0).
inline BigInt mod_floor(const BigInt& a, const BigInt& m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r;
}

// ---------------------------------------------------------------------------
// IntMatrix
// ---------------------------------------------------------------------------

class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<BigInt> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows_ * cols_) throw AlgebraError("IntMatrix: entry count does not match shape");
    }
    IntMatrix(std::initializer_list<std::initializer_list<long long>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        for (const auto& row : init) {
            if (row.size() != cols_) throw AlgebraError("IntMatrix: ragged initializer");
            for (long long v : row) data_.emplace_back(v);
        }
    }

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const std::vector<BigInt>& entries() const { return data_; }

    BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::vector<BigInt> column(std::size_t c) const {
        std::vector<BigInt> v(rows_);
        for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
        return v;
    }

    void append_column(const std::vector<BigInt>& v) {
        if (v.size() != rows_) throw AlgebraError("append_column: length mismatch");
        std::vector<BigInt> next;
        next.reserve(rows_ * (cols_ + 1));
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) next.push_back((*this)(r, c));
            next.push_back(v[r]);
        }
        data_ = std::move(next);
        ++cols_;
    }

    /// [this | other]
    IntMatrix hconcat(const IntMatrix& other) const {
        if (other.rows_ != rows_) throw AlgebraError("hconcat: row mismatch");
        IntMatrix out(rows_, cols_ + other.cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
            for (std::size_t c = 0; c < other.cols_; ++c) out(r, cols_ + c) = other(r, c);
        }
        return out;
    }

    IntMatrix top_rows(std::size_t k) const {
        IntMatrix out(k, cols_);
        for (std::size_t r = 0; r < k; ++r)
            for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
        return out;
    }

    IntMatrix select_columns(const std::vector<std::size_t>& idx) const {
        IntMatrix out(rows_, idx.size());
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < idx.size(); ++k) out(r, k) = (*this)(r, idx[k]);
        return out;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const BigInt& x) { return x == 0; });
    }

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
        if (a.cols_ != b.rows_) throw AlgebraError("matrix product: shape mismatch");
        IntMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const BigInt& aik = a(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    std::vector<BigInt> apply(const std::vector<BigInt>& v) const {
        if (v.size() != cols_) throw AlgebraError("apply: length mismatch");
        std::vector<BigInt> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
        return out;
    }

    std::string str() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t r = 0; r < rows_; ++r) {
            os << (r ? ", [" : "[");
            for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c);
            os << ']';
        }
        os << ']';
        return os.str();
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
inline BigInt determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw AlgebraError("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t c = 0; c < n; ++c) std::swap(a(k, c), a(p, c));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

struct SmithForm {
    IntMatrix S, U, V;  ///< U * M * V == S
    std::vector<BigInt> diagonal() const {
        std::vector<BigInt> d;
        for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
        return d;
    }
    std::size_t rank() const {
        std::size_t k = 0;
        for (const auto& d : diagonal())
            if (d != 0) ++k;
        return k;
    }
};

namespace detail {

inline void row_axpy(IntMatrix& a, std::size_t dst, std::size_t src, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c) a(dst, c) -= q * a(src, c);
}
inline void col_axpy(IntMatrix& a, std::size_t dst, std::size_t src, const BigInt& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < a.rows(); ++r) a(r, dst) -= q * a(r, src);
}
inline void row_swap(IntMatrix& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
}
inline void col_swap(IntMatrix& a, std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a(r, i), a(r, j));
}

}  // namespace detail

/// Smith normal form with unimodular transforms: U·M·V = S, d1 | d2 | ..., d_i >= 0.
inline SmithForm snf(const IntMatrix& m) {
    using namespace detail;
    const std::size_t R = m.rows(), C = m.cols();
    IntMatrix A = m, U = IntMatrix::identity(R), V = IntMatrix::identity(C);
    const std::size_t diag = std::min(R, C);

    for (std::size_t t = 0; t < diag; ++t) {
        // pivot: smallest nonzero |entry| in the trailing block
        auto place_min = [&](bool whole_block) -> bool {
            bool found = false;
            BigInt best;
            std::size_t bi = t, bj = t;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j) {
                    if (!whole_block && i != t && j != t) continue;
                    if (A(i, j) == 0) continue;
                    BigInt a = boost::multiprecision::abs(A(i, j));
                    if (!found || a < best) {
                        found = true;
                        best = a;
                        bi = i;
                        bj = j;
                    }
                }
            if (!found) return false;
            row_swap(A, t, bi);
            row_swap(U, t, bi);
            col_swap(A, t, bj);
            col_swap(V, t, bj);
            return true;
        };
        if (!place_min(true)) break;

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (A(i, t) == 0) continue;
                BigInt q = A(i, t) / A(t, t);
                row_axpy(A, i, t, q);
                row_axpy(U, i, t, q);
                if (A(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (A(t, j) == 0) continue;
                BigInt q = A(t, j) / A(t, t);
                col_axpy(A, j, t, q);
                col_axpy(V, j, t, q);
                if (A(t, j) != 0) clean = false;
            }
            if (!clean) {
                place_min(false);
                continue;
            }
            // divisibility of the trailing block by the pivot
            bool divides = true;
            for (std::size_t i = t + 1; i < R && divides; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (A(i, j) % A(t, t) != 0) {
                        row_axpy(A, t, i, BigInt(-1));
                        row_axpy(U, t, i, BigInt(-1));
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (A(t, t) < 0) {
            for (std::size_t c = 0; c < C; ++c) A(t, c) = -A(t, c);
            for (std::size_t c = 0; c < R; ++c) U(t, c) = -U(t, c);
        }
    }
    return {std::move(A), std::move(U), std::move(V)};
}

/// Basis of the integer nullspace {x : M x = 0}, as columns.
inline IntMatrix nullspace(const IntMatrix& m) {
    SmithForm f = snf(m);
    std::vector<std::size_t> idx;
    for (std::size_t j = f.rank(); j < m.cols(); ++j) idx.push_back(j);
    return f.V.select_columns(idx);
}

/// Basis of the lattice spanned by the columns of m.
inline IntMatrix column_basis(const IntMatrix& m) {
    SmithForm f = snf(m);
    IntMatrix spanned = m * f.V;
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < f.rank(); ++j) idx.push_back(j);
    return spanned.select_columns(idx);
}

// ---------------------------------------------------------------------------
// Canonical 2-local groups
// ---------------------------------------------------------------------------

/// Z_(2)^free_rank ⊕ ⊕ Z/2^e, exponents sorted descending.
struct CanonicalGroup {
    std::size_t free_rank = 0;
    std::vector<unsigned> torsion;

    CanonicalGroup() = default;
    CanonicalGroup(std::size_t free, std::vector<unsigned> exps) : free_rank(free), torsion(std::move(exps)) {
        normalize();
    }

    static CanonicalGroup trivial() { return {}; }
    static CanonicalGroup cyclic(unsigned e) { return CanonicalGroup(0, {e}); }
    static CanonicalGroup free(std::size_t k = 1) { return CanonicalGroup(k, {}); }

    void normalize() {
        torsion.erase(std::remove(torsion.begin(), torsion.end(), 0u), torsion.end());
        std::sort(torsion.begin(), torsion.end(), std::greater<>());
    }

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
    bool is_finite() const { return free_rank == 0; }
    bool is_cyclic() const { return free_rank + torsion.size() <= 1; }

    /// log2 of the order; meaningful only for finite groups
    unsigned log_order() const {
        unsigned s = 0;
        for (unsigned e : torsion) s += e;
        return s;
    }
    BigInt order() const {
        if (!is_finite()) throw AlgebraError("order of an infinite group");
        return pow2(log_order());
    }
    /// exponent log2 (largest cyclic summand)
    unsigned log_exponent() const { return torsion.empty() ? 0u : torsion.front(); }

    friend CanonicalGroup operator+(CanonicalGroup a, const CanonicalGroup& b) {
        a.free_rank += b.free_rank;
        a.torsion.insert(a.torsion.end(), b.torsion.begin(), b.torsion.end());
        a.normalize();
        return a;
    }
    friend bool operator==(const CanonicalGroup&, const CanonicalGroup&) = default;
    friend auto operator<=>(const CanonicalGroup&, const CanonicalGroup&) = default;

    /// "Z2 + Z8 + Z(2)": torsion ascending, free summands last, "0" when trivial.
    std::string pretty() const {
        if (is_trivial()) return "0";
        std::vector<std::string> parts;
        for (auto it = torsion.rbegin(); it != torsion.rend(); ++it) parts.push_back("Z" + pow2(*it).str());
        for (std::size_t i = 0; i < free_rank; ++i) parts.push_back("Z(2)");
        std::string out;
        for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? " + " : "") + parts[i];
        return out;
    }
};

inline std::ostream& operator<<(std::ostream& os, const CanonicalGroup& g) { return os << g.pretty(); }

/// Canonical form of the cokernel of a relation matrix (rows = generators).
inline CanonicalGroup canonical_from_relations(const IntMatrix& relations) {
    CanonicalGroup g;
    if (relations.cols() == 0) {
        g.free_rank = relations.rows();
        return g;
    }
    SmithForm f = snf(relations);
    std::size_t rank = 0;
    for (const auto& d : f.diagonal()) {
        if (d == 0) continue;
        ++rank;
        if (d % 2 == 0) g.torsion.push_back(v2(d));
    }
    g.free_rank = relations.rows() - rank;
    g.normalize();
    return g;
}

// ---------------------------------------------------------------------------
// Presented groups and homomorphisms
// ---------------------------------------------------------------------------

/// Cokernel presentation: named generators modulo the column span of `relations`.
struct PresentedGroup {
    std::vector<std::string> generators;
    IntMatrix relations;

    PresentedGroup() = default;
    PresentedGroup(std::vector<std::string> gens, IntMatrix rels)
        : generators(std::move(gens)), relations(std::move(rels)) {
        if (relations.rows() != generators.size())
            throw AlgebraError("PresentedGroup: relation rows must equal generator count");
    }

    /// Direct sum of cyclic groups; order 0 means a free summand.
    static PresentedGroup diagonal(std::vector<std::string> gens, const std::vector<BigInt>& orders) {
        std::vector<std::size_t> finite;
        for (std::size_t i = 0; i < orders.size(); ++i)
            if (orders[i] != 0) finite.push_back(i);
        IntMatrix rel(gens.size(), finite.size());
        for (std::size_t k = 0; k < finite.size(); ++k) rel(finite[k], k) = orders[finite[k]];
        return {std::move(gens), std::move(rel)};
    }

    std::size_t rank() const { return generators.size(); }
    CanonicalGroup canonical() const { return canonical_from_relations(relations); }

    /// 2-local membership of v in the relation lattice, i.e. v == 0 in the group.
    bool is_zero(const std::vector<BigInt>& v) const {
        if (v.size() != rank()) throw AlgebraError("is_zero: length mismatch");
        if (std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; })) return true;
        IntMatrix ext = relations;
        if (ext.rows() == 0) return true;
        ext.append_column(v);
        return canonical_from_relations(ext) == canonical();
    }
    bool equal(const std::vector<BigInt>& a, const std::vector<BigInt>& b) const {
        std::vector<BigInt> d(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
        return is_zero(d);
    }
};

inline CanonicalGroup canonical_form(const PresentedGroup& p) { return p.canonical(); }

/// Homomorphism of presented groups; `matrix` is (target gens) x (source gens).
class GroupHom {
  public:
    GroupHom(PresentedGroup source, PresentedGroup target, IntMatrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {
        if (matrix_.rows() != target_.rank() || matrix_.cols() != source_.rank())
            throw AlgebraError("GroupHom: matrix shape does not match source/target ranks");
        for (std::size_t c = 0; c < source_.relations.cols(); ++c)
            if (!target_.is_zero(matrix_.apply(source_.relations.column(c))))
                throw AlgebraError("GroupHom: ill-defined (a source relation does not map into the target relations)");
    }

    const PresentedGroup& source() const { return source_; }
    const PresentedGroup& target() const { return target_; }
    const IntMatrix& matrix() const { return matrix_; }

  private:
    PresentedGroup source_, target_;
    IntMatrix matrix_;
};

struct KernelResult {
    PresentedGroup group;  ///< generators are the columns of `inclusion` (source coordinates)
    IntMatrix inclusion;   ///< source gens x kernel gens
};

/// Kernel of h on 2-localized groups.
inline KernelResult kernel(const GroupHom& h) {
    const auto& src = h.source();
    const auto& tgt = h.target();
    const std::size_t a = src.rank();
    // preimage lattice {x : M x in span(R_t)}
    IntMatrix stacked = h.matrix().hconcat(tgt.relations);
    IntMatrix preimage;
    if (a == 0) {
        preimage = IntMatrix(0, 0);
    } else if (stacked.rows() == 0) {
        preimage = IntMatrix::identity(a);
    } else {
        preimage = column_basis(nullspace(stacked).top_rows(a));
    }
    const std::size_t l = preimage.cols();
    // relations: {c : L c in span(R_s)}
    IntMatrix rel(l, 0);
    if (l > 0) {
        IntMatrix both = preimage.hconcat(src.relations);
        rel = column_basis(nullspace(both).top_rows(l));
    }
    std::vector<std::string> names;
    for (std::size_t k = 0; k < l; ++k) {
        std::ostringstream os;
        os << "k" << k << "(";
        bool first = true;
        for (std::size_t i = 0; i < a; ++i) {
            if (preimage(i, k) == 0) continue;
            os << (first ? "" : "+") << preimage(i, k) << "*" << src.generators[i];
            first = false;
        }
        os << ")";
        names.push_back(os.str());
    }
    return {PresentedGroup(std::move(names), rel), preimage};
}

struct CokernelResult {
    PresentedGroup group;
    IntMatrix projection;  ///< identity on target generators
};

inline CokernelResult cokernel(const GroupHom& h) {
    const auto& tgt = h.target();
    return {PresentedGroup(tgt.generators, tgt.relations.hconcat(h.matrix())), IntMatrix::identity(tgt.rank())};
}

/// Canonical form of the image of h (source modulo the preimage lattice).
inline CanonicalGroup image_canonical(const GroupHom& h) {
    KernelResult k = kernel(h);
    if (k.inclusion.rows() == 0) return {};
    return canonical_from_relations(k.inclusion);
}

// ---------------------------------------------------------------------------
// Summand arithmetic and extensions
// ---------------------------------------------------------------------------

/// X with X ⊕ h ≅ g; throws when h is not a summand of g.
inline CanonicalGroup subtract_summand(const CanonicalGroup& g, const CanonicalGroup& h) {
    if (h.free_rank > g.free_rank) throw AlgebraError("subtract_summand: " + h.pretty() + " is not a summand of " + g.pretty());
    std::multiset<unsigned> pool(g.torsion.begin(), g.torsion.end());
    for (unsigned e : h.torsion) {
        auto it = pool.find(e);
        if (it == pool.end()) throw AlgebraError("subtract_summand: " + h.pretty() + " is not a summand of " + g.pretty());
        pool.erase(it);
    }
    return CanonicalGroup(g.free_rank - h.free_rank, std::vector<unsigned>(pool.begin(), pool.end()));
}

/// Isomorphism classes of E in 0 -> coker -> E -> ker -> 0, ker cyclic.
inline std::set<CanonicalGroup> extension_candidates(const CanonicalGroup& coker, const CanonicalGroup& ker) {
    if (!ker.is_cyclic()) throw AlgebraError("extension_candidates: kernel " + ker.pretty() + " is not cyclic");
    if (ker.is_trivial()) return {coker};
    if (ker.free_rank == 1) return {coker + ker};
    const unsigned a = ker.torsion.front();

    // summands of coker: torsion exponents, then free (exponent 0 marks free)
    std::vector<unsigned> summands(coker.torsion.begin(), coker.torsion.end());
    for (std::size_t i = 0; i < coker.free_rank; ++i) summands.push_back(0);
    const std::size_t k = summands.size();

    // Ext(Z/2^a, C) = C / 2^a C; up to automorphisms of each cyclic summand the
    // class coordinate can be taken to be 0 or 2^j with j < min(e, a).
    std::vector<std::vector<BigInt>> choices(k);
    for (std::size_t i = 0; i < k; ++i) {
        unsigned lim = summands[i] == 0 ? a : std::min(summands[i], a);
        choices[i].push_back(0);
        for (unsigned j = 0; j < lim; ++j) choices[i].push_back(pow2(j));
    }

    std::set<CanonicalGroup> out;
    std::vector<std::size_t> pick(k, 0);
    for (;;) {
        IntMatrix rel(k + 1, 0);
        for (std::size_t i = 0; i < k; ++i) {
            if (summands[i] == 0) continue;
            std::vector<BigInt> col(k + 1);
            col[i] = pow2(summands[i]);
            rel.append_column(col);
        }
        std::vector<BigInt> glue(k + 1);
        for (std::size_t i = 0; i < k; ++i) glue[i] = -choices[i][pick[i]];
        glue[k] = pow2(a);
        rel.append_column(glue);
        out.insert(canonical_from_relations(rel));

        std::size_t pos = 0;
        while (pos < k && ++pick[pos] == choices[pos].size()) pick[pos++] = 0;
        if (pos == k) break;
    }
    return out;
}

inline std::string render_set(const std::set<CanonicalGroup>& s) {
    std::string out = "{";
    bool first = true;
    for (const auto& g : s) {
        out += (first ? "" : ", ") + g.pretty();
        first = false;
    }
    return out + "}";
}

}  // namespace a2h
