// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "a2h/a2h.hpp"
#include "oracles.hpp"

using namespace a2h;
using L = Letter;

namespace {

ExtNat e(unsigned v) { return ExtNat::of(v); }

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void check(bool cond, const std::string& what) {
        if (!cond) {
            pass = false;
            if (notes.size() < 20) notes.push_back(what);
        }
    }
};

std::vector<ExtNat> wide_range() {
    std::vector<ExtNat> v;
    for (unsigned i = 1; i <= 7; ++i) v.push_back(e(i));
    v.push_back(ExtNat::inf());
    return v;
}

const Cell* find_cell(const std::vector<Cell>& cs, std::size_t y, std::size_t x) {
    for (const auto& c : cs)
        if (c.y == y && c.x == x) return &c;
    return nullptr;
}

bool used_transfer(const DerivationTrace& t) {
    for (const auto& s : t.steps) {
        bool transfer = s.rule.rfind("R4", 0) == 0 || s.rule.rfind("R5", 0) == 0 || s.rule.rfind("R6", 0) == 0;
        if (transfer && s.after.rfind("failed", 0) != 0 && s.after.rfind("rejected", 0) != 0) return true;
    }
    return false;
}

std::string pow2_coeff(unsigned k) { return k == 0 ? "" : pow2(k).str() + "·"; }

// 1: both tables regenerate and agree with the closed forms, in under ten seconds
Outcome table_regeneration() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (int t : {1, 2}) {
        VerifyReport rep = verify_table(t, TableOptions{});
        std::ostringstream ss;
        ss << "table " << t << ": " << rep.matched << "/" << rep.checked << " cells match";
        o.check(rep.ok(), ss.str());
        for (const auto& f : rep.failures) o.check(false, f);
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(secs < 10.0, "runtime " + std::to_string(secs) + " s");
    return o;
}

// 2: boundary of nu5, the attaching maps of the fiber cells, and the presentation of pi_8 of the fiber
Outcome generator_level() {
    Outcome o;
    for (unsigned r = 1; r <= 3; ++r) {
        auto c = cofibration(SpaceId::crs(4, e(r), e(2)));
        FiberGroup fib = pi_of_skeleton(skeleton(c, 8), 7);
        GroupHom d = boundary_hom(c, fib);
        WedgeGroup src = pi_wedge(8, suspend_wedge(c.X));
        auto col = src.index_of({false, 1, 0, {L::Nu}});
        auto nu = fib.base.index_of({false, 1, 0, {L::Nu}});
        auto snu = fib.base.index_of({false, 1, 0, {L::NuPrime}});
        if (!col || !nu || !snu) {
            o.check(false, "missing basis element for r=" + std::to_string(r));
            continue;
        }
        const BigInt p = pow2(r);
        o.check(d.matrix()(*nu, *col) == p * p, "coefficient of j nu4 at r=" + std::to_string(r));
        o.check(mod_floor(d.matrix()(*snu, *col) + (p / 2) * (p - 1), 4) == 0, "coefficient of j Sigma nu' at r=" + std::to_string(r));
    }
    for (unsigned r = 1; r <= 3; ++r)
        for (unsigned s = 1; s <= 3; ++s) {
            const std::string tag = " (r=" + std::to_string(r) + ", s=" + std::to_string(s) + ")";
            auto c = cofibration(SpaceId::crs(4, e(r), e(s)));
            FiberSkeleton sk = skeleton(c, 9);
            const Wedge& Y = c.Y;
            const long long k = 1LL << r;
            const Cell* e8 = find_cell(sk.cells, 1, 1);
            const Cell* e9a = find_cell(sk.cells, 0, 1);
            const Cell* e9b = find_cell(sk.cells, 1, 0);
            o.check(sk.cells.size() == 3 && e8 && e9a && e9b, "three fiber cells" + tag);
            if (!e8 || !e9a || !e9b) continue;
            o.check(e8->attach == Element::incl(Y, 1, {L::Nu}, 2 * k) - Element::incl(Y, 1, {L::NuPrime}, k), "e8 attaching map" + tag);
            o.check(e9a->attach == Element::bracket(Y, 0, 1, pow2(r)), "e9 attaching map on [j1,j2]" + tag);
            o.check(e9b->attach == Element::bracket(Y, 0, 1, pow2(s)) + Element::incl(Y, 1, {L::NuPrime, L::Eta}),
                    "e9 attaching map with the eta term" + tag);

            FiberGroup fib = pi_of_skeleton(sk, 8);
            o.check(fib.group.canonical() == CanonicalGroup(0, {3, 1, std::min(r, s + 1)}), "pi_8 of the fiber" + tag);
            std::set<std::string> rels(fib.relations_rendered.begin(), fib.relations_rendered.end());
            const std::string want1 = pow2_coeff(r) + "[j1,j2] = 0";
            const std::string want2 = "j2∘SigmaNu'∘eta7 + " + pow2_coeff(s) + "[j1,j2] = 0";
            o.check(rels.count(want1), "relation " + want1 + tag);
            o.check(rels.count(want2), "relation " + want2 + tag);
            o.check(rels.size() == 2, "exactly two relations" + tag);
        }
    return o;
}

// 3: lemma-level values over a wider parameter range
Outcome regressions() {
    Outcome o;
    TableOptions opt;
    opt.r_values = wide_range();
    opt.s_values = wide_range();
    for (int t : {1, 2}) {
        VerifyReport rep = verify_table(t, opt);
        std::ostringstream ss;
        ss << "table " << t << " over r,s in {1..7,inf}: " << rep.matched << "/" << rep.checked << " cells match";
        o.check(rep.ok(), ss.str());
        std::size_t pattern = 0, other = 0;
        for (const auto& c : rep.cells) {
            o.check(c.status != CellStatus::Error && c.status != CellStatus::Ambiguous, c.key.str() + ": " + c.message);
            if (c.status != CellStatus::Mismatch) continue;
            // the top summand of pi_8(C^{6,s}) at half the closed-form order, s >= 3
            bool known = c.key.row == RowClass::N4 && (c.key.family == Family::Cs || c.key.family == Family::Crs) &&
                         !c.key.s.is_inf() && c.key.s.get() >= 3 && c.computed && c.expected &&
                         c.computed->log_order() + 1 == c.expected->log_order();
            (known ? pattern : other) += 1;
        }
        if (pattern + other > 0)
            o.check(false, std::to_string(pattern) + " mismatches in pi_8(C^{6,s}) and pi_8(C_r^{6,s}), s >= 3, one factor of 2 short; " +
                               std::to_string(other) + " elsewhere");
    }
    return o;
}

// 4: Smith normal form on random matrices
Outcome snf_properties() {
    Outcome o;
    std::mt19937_64 rng(4);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    std::uniform_int_distribution<long long> ent(-1024, 1024);
    for (int trial = 0; trial < 100; ++trial) {
        IntMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = ent(rng);
        SmithForm f = snf(m);
        o.check(f.U * m * f.V == f.S, "U*M*V != S for " + m.str());
        BigInt du = determinant(f.U), dv = determinant(f.V);
        o.check((du == 1 || du == -1) && (dv == 1 || dv == -1), "non-unimodular transform for " + m.str());
        for (std::size_t i = 0; i < f.S.rows(); ++i)
            for (std::size_t j = 0; j < f.S.cols(); ++j)
                if (i != j) o.check(f.S(i, j) == 0, "off-diagonal entry for " + m.str());
        auto d = f.diagonal();
        for (std::size_t i = 0; i + 1 < d.size(); ++i) {
            o.check(d[i] >= 0, "negative diagonal for " + m.str());
            o.check(d[i] == 0 ? d[i + 1] == 0 : d[i + 1] % d[i] == 0, "divisibility chain for " + m.str());
        }
    }
    return o;
}

// 5: extension enumeration against brute force, and certificates inside the candidate sets
Outcome extension_oracle() {
    Outcome o;
    const unsigned max_log = 6;
    auto table = oracle::extension_table(max_log);
    for (unsigned lc = 0; lc < max_log; ++lc)
        for (const auto& C : oracle::groups_of_log_order(lc))
            for (unsigned a = 1; lc + a <= max_log; ++a) {
                CanonicalGroup K = CanonicalGroup::cyclic(a);
                std::set<CanonicalGroup> want;
                for (const auto& [E, pairs] : table)
                    if (pairs.count({C, K})) want.insert(E);
                o.check(extension_candidates(C, K) == want, "Ext(" + K.pretty() + ", " + C.pretty() + ")");
            }
    for (int n : {4, 5, 6})
        for (int k : {3, 4})
            for (unsigned r = 1; r <= 4; ++r)
                for (unsigned s = 1; s <= 4; ++s)
                    for (const SpaceId& id : {SpaceId::crs(n, e(r), e(s)), SpaceId::moore(n, e(r)), SpaceId::moore(n + 1, e(r))}) {
                        DerivationTrace t;
                        ExtensionProblem p = five_term(id, id.connectivity_dim() + k, {}, t);
                        auto cands = extension_candidates(p.coker_c, p.ker_c);
                        o.check(cands.count(compute_pi(id, id.connectivity_dim() + k).group), id.str() + " outside its candidates");
                    }
    return o;
}

// 6: sign convention, stabilization in r, suspension consistency
Outcome robustness() {
    Outcome o;
    TableOptions pos, neg;
    neg.engine.toda.whitehead_sign = -1;
    for (int t : {1, 2}) {
        auto a = regenerate(t, pos), b = regenerate(t, neg);
        o.check(a.size() == b.size(), "cell count under sign toggle");
        for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
            o.check(a[i].computed == b[i].computed, a[i].key.str() + " changes with the sign of [iota4,iota4]");
    }

    TableOptions wide;
    wide.r_values = {e(4), e(5), e(6), e(7)};
    for (int t : {1, 2}) {
        auto cells = regenerate(t, wide);
        std::map<std::tuple<RowClass, Family, ExtNat>, std::vector<const CellResult*>> groups;
        for (const auto& c : cells) groups[{c.key.row, c.key.family, c.key.s}].push_back(&c);
        for (const auto& [key, v] : groups) {
            bool expected_constant = true, computed_constant = true;
            for (const auto* c : v) {
                expected_constant &= c->expected == v.front()->expected;
                computed_constant &= c->computed == v.front()->computed;
            }
            // unstable rows grow with r by design; there the closed form is not constant either
            if (expected_constant) o.check(computed_constant, v.front()->key.str() + " not constant for r >= 4");
        }
    }

    auto t1 = regenerate(1, pos), t2 = regenerate(2, pos);
    for (const auto& f : suspension_consistency(t1, t2)) o.check(false, f);
    return o;
}

// 7: without transfer certificates, ambiguity appears exactly where a certificate did the work
Outcome honesty() {
    Outcome o;
    EngineConfig off;
    off.transfer_certificates = false;
    std::size_t ambiguous = 0;
    for (int t : {1, 2}) {
        for (const auto& c : regenerate(t, TableOptions{})) {
            if (!c.space || !c.computed) continue;
            PiResult on = compute_pi(*c.space, c.dim);
            const bool needs = used_transfer(on.trace);
            try {
                PiResult r = compute_pi(*c.space, c.dim, off);
                o.check(!needs, c.key.str() + " settled without the certificate it used");
                o.check(r.group == on.group, c.key.str() + " gives a different answer without certificates");
            } catch (const AmbiguousError& err) {
                ++ambiguous;
                o.check(needs, c.key.str() + " ambiguous although no certificate was needed");
                o.check(err.report.candidates.size() > 1, c.key.str() + " reported with a single candidate");
            }
        }
    }
    o.check(ambiguous > 0, "no cell became ambiguous");
    // pi_{n+3}(M^{n+1}) at r=1, n = 4, 5: Z4 with certificates, ambiguous without
    for (int n : {4, 5}) {
        SpaceId id = SpaceId::moore(n + 1, e(1));
        const std::string tag = "pi_" + std::to_string(n + 3) + "(" + id.str() + ")";
        o.check(compute_pi(id, n + 3).group == CanonicalGroup::cyclic(2), tag + " with certificates");
        try {
            compute_pi(id, n + 3, off);
            o.check(false, tag + " settled without certificates");
        } catch (const AmbiguousError& err) {
            o.check(err.report.candidates == std::set<CanonicalGroup>{CanonicalGroup::cyclic(2), CanonicalGroup(0, {1, 1})},
                    tag + " candidates " + render_set(err.report.candidates));
        }
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"table regeneration against the closed forms", table_regeneration},
        {"generator-level boundary, attaching maps and fiber presentation", generator_level},
        {"lemma-level regressions for r, s in {1..7, inf}", regressions},
        {"Smith normal form properties on 100 random matrices", snf_properties},
        {"extension enumeration oracle and certificate membership", extension_oracle},
        {"sign toggle, r-stabilization, suspension consistency", robustness},
        {"honesty without transfer certificates", honesty},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + ex.what());
        }
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << "\n";
        for (const auto& n : o.notes) std::cout << "    " << n << "\n";
        failed += !o.pass;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
    return failed == 0 ? 0 : 1;
}
