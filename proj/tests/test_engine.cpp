#include <gtest/gtest.h>

#include "a2h/a2h.hpp"

using namespace a2h;
using L = Letter;

namespace {

ExtNat e(unsigned v) { return ExtNat::of(v); }

std::size_t index_of(const WedgeGroup& g, const BasisKey& k) {
    auto i = g.index_of(k);
    if (!i) throw std::runtime_error("missing basis key " + render_key(g.wedge, k));
    return *i;
}

CanonicalGroup direct_route(const SpaceId& id, int m, const EngineConfig& cfg = {}) {
    DerivationTrace t;
    ExtensionProblem p = five_term(id, m, cfg, t);
    return resolve_extension(p, cfg, t);
}

}  // namespace

TEST(Boundary, DegreeMapOnNu) {
    // ∂(nu5 on the S^5 summand of ΣX) = (2^r iota4)∘nu4 = 2^{2r} nu4 - 2^{r-1}(2^r - 1) Sigma nu'
    for (unsigned r = 1; r <= 3; ++r) {
        auto c = cofibration(SpaceId::crs(4, e(r), e(2)));
        FiberGroup fib = pi_of_skeleton(skeleton(c, 8), 7);
        GroupHom d = boundary_hom(c, fib);
        WedgeGroup src = pi_wedge(8, suspend_wedge(c.X));
        std::size_t col = index_of(src, {false, 1, 0, {L::Nu}});
        std::size_t nu = index_of(fib.base, {false, 1, 0, {L::Nu}});
        std::size_t snu = index_of(fib.base, {false, 1, 0, {L::NuPrime}});
        const BigInt p = pow2(r);
        EXPECT_EQ(d.matrix()(nu, col), p * p) << "r=" << r;
        EXPECT_EQ(mod_floor(d.matrix()(snu, col) + (p / 2) * (p - 1), 4), 0) << "r=" << r;
    }
}

TEST(Fiber, StemFourGroupOfTheFiber) {
    for (unsigned r = 1; r <= 3; ++r)
        for (unsigned s = 1; s <= 3; ++s) {
            auto c = cofibration(SpaceId::crs(4, e(r), e(s)));
            FiberGroup fib = pi_of_skeleton(skeleton(c, 9), 8);
            EXPECT_EQ(fib.group.canonical(), CanonicalGroup(0, {3, 1, std::min(r, s + 1)})) << "r=" << r << " s=" << s;
        }
}

TEST(Fiber, RelationFromTheMixedCell) {
    auto c = cofibration(SpaceId::crs(4, e(4), e(3)));
    FiberGroup fib = pi_of_skeleton(skeleton(c, 9), 8);
    bool found = false;
    for (const auto& rel : fib.relations_rendered) found |= rel == "j2∘SigmaNu'∘eta7 + 8·[j1,j2] = 0";
    EXPECT_TRUE(found);
}

TEST(Fiber, OutOfRangeIsRefused) {
    auto c = cofibration(SpaceId::crs(4, e(1), e(1)));
    EXPECT_THROW(pi_of_skeleton(skeleton(c, 9), 9), CatalogError);
}

TEST(Compute, SpheresAndLowDimensions) {
    EXPECT_EQ(compute_pi(SpaceId::sphere(5), 8).group, CanonicalGroup::cyclic(3));
    EXPECT_EQ(compute_pi(SpaceId::sphere(5), 5).group, CanonicalGroup::free());
    EXPECT_TRUE(compute_pi(SpaceId::crs(5, e(1), e(1)), 4).group.is_trivial());
    EXPECT_THROW(compute_pi(SpaceId::sphere(5), 10), CatalogError);
    EXPECT_THROW(compute_pi(SpaceId::crs(3, e(1), e(1)), 6), CatalogError);
    EXPECT_THROW(compute_pi(SpaceId::cr(4, ExtNat::inf()), 7), CatalogError);
}

TEST(Compute, LiteratureValuesAgreeWithTheEngine) {
    // whenever the exact sequence alone decides, the imported value is cross-checked
    EXPECT_EQ(compute_pi(SpaceId::ceta(4), 7).group, CanonicalGroup(1, {1}));
    EXPECT_EQ(compute_pi(SpaceId::ceta(5), 8).group, CanonicalGroup::cyclic(2));
    EXPECT_EQ(compute_pi(SpaceId::ceta(4), 8).group, CanonicalGroup::cyclic(1));
    EXPECT_EQ(compute_pi(SpaceId::moore(5, e(1)), 8).group, CanonicalGroup(0, {1, 1}));
    EXPECT_EQ(compute_pi(SpaceId::moore(4, e(1)), 8).group, CanonicalGroup(0, {1, 1}));
}

TEST(Compute, Regressions) {
    EXPECT_EQ(compute_pi(SpaceId::crs(4, e(1), e(1)), 7).group, CanonicalGroup(0, {2, 1, 1}));
    EXPECT_EQ(compute_pi(SpaceId::cs(4, e(2)), 8).group, CanonicalGroup(0, {3, 2, 1}));
    EXPECT_EQ(compute_pi(SpaceId::cs(5, e(3)), 9).group, CanonicalGroup(0, {3, 1}));
    EXPECT_EQ(compute_pi(SpaceId::cs(6, e(2)), 10).group, CanonicalGroup::cyclic(2));
    EXPECT_EQ(compute_pi(SpaceId::moore(4, e(3)), 8).group, CanonicalGroup(0, {3, 1, 1}));
    EXPECT_EQ(compute_pi(SpaceId::crs(5, e(2), e(2)), 9).group, CanonicalGroup(0, {3, 2, 1}));
}

TEST(Compute, StabilizesInTheExponent) {
    for (unsigned r = 3; r <= 10; ++r) {
        EXPECT_EQ(compute_pi(SpaceId::moore(5, e(r)), 8).group, compute_pi(SpaceId::moore(5, e(3)), 8).group);
        EXPECT_EQ(compute_pi(SpaceId::moore(4, e(r)), 8).group, compute_pi(SpaceId::moore(4, e(3)), 8).group);
        EXPECT_EQ(compute_pi(SpaceId::crs(5, e(r), e(2)), 9).group, compute_pi(SpaceId::crs(5, e(3), e(2)), 9).group);
        EXPECT_EQ(compute_pi(SpaceId::crs(6, e(r), e(r)), 10).group, compute_pi(SpaceId::crs(6, e(3), e(3)), 10).group);
    }
}

TEST(Compute, LargeExponentsStayExact) {
    // 2^{2r} for r = 40 overflows 64-bit arithmetic
    EXPECT_EQ(compute_pi(SpaceId::moore(4, e(40)), 7).group, CanonicalGroup(0, {41, 2, 1}));
    EXPECT_EQ(compute_pi(SpaceId::moore(5, e(40)), 9).group, compute_pi(SpaceId::moore(5, e(10)), 9).group);
}

TEST(Compute, SignConventionDoesNotChangeGroups) {
    EngineConfig neg;
    neg.toda.whitehead_sign = -1;
    std::vector<std::pair<SpaceId, int>> cases;
    for (unsigned r : {1u, 2u, 3u})
        for (unsigned s : {1u, 2u, 3u})
            for (int n : {4, 5, 6}) {
                cases.push_back({SpaceId::crs(n, e(r), e(s)), n + 3});
                cases.push_back({SpaceId::crs(n, e(r), e(s)), n + 4});
                cases.push_back({SpaceId::moore(n, e(r)), n + 3});
                cases.push_back({SpaceId::moore(n, e(r)), n + 4});
            }
    for (const auto& [id, m] : cases) EXPECT_EQ(compute_pi(id, m).group, compute_pi(id, m, neg).group) << id.str() << " m=" << m;
}

TEST(Compute, CertificatesLandInTheCandidateSet) {
    for (int n : {4, 5, 6})
        for (int k : {3, 4})
            for (unsigned r : {1u, 2u, 3u, 4u})
                for (unsigned s : {1u, 2u, 3u, 4u}) {
                    SpaceId id = SpaceId::crs(n, e(r), e(s));
                    DerivationTrace t;
                    ExtensionProblem p = five_term(id, n + k, {}, t);
                    auto cands = extension_candidates(p.coker_c, p.ker_c);
                    EXPECT_TRUE(cands.count(compute_pi(id, n + k).group)) << id.str();
                }
}

TEST(Compute, WithoutTransfersAmbiguityIsReported) {
    EngineConfig off;
    off.transfer_certificates = false;
    SpaceId id = SpaceId::moore(4, e(1));
    EXPECT_NO_THROW(compute_pi(id, 7));
    try {
        compute_pi(id, 7, off);
        FAIL() << "expected an ambiguous extension";
    } catch (const AmbiguousError& err) {
        EXPECT_EQ(err.report.candidates.size(), 2u);
        EXPECT_TRUE(err.report.candidates.count(compute_pi(id, 7).group));
        EXPECT_EQ(err.report.dim, 7);
    }
    // cases settled by the sequence alone do not need transfers
    EXPECT_EQ(compute_pi(SpaceId::moore(6, ExtNat::inf()), 9, off).group, compute_pi(SpaceId::moore(6, ExtNat::inf()), 9).group);
    EXPECT_EQ(compute_pi(SpaceId::ceta(4), 7, off).group, CanonicalGroup(1, {1}));
}

TEST(Compute, DirectRouteAgreesWithWedgeExtraction) {
    // C^{n+2,s} from its own cofibration versus from C^{n+2}_{∞,s} minus the sphere and cross terms
    for (int n : {4, 5, 6})
        for (int k : {3, 4})
            for (unsigned s = 1; s <= 4; ++s) {
                SpaceId id = SpaceId::cs(n, e(s));
                EXPECT_EQ(direct_route(id, n + k), compute_pi(id, n + k).group) << id.str() << " m=" << n + k;
            }
}

TEST(Trace, IsDeterministicAndReplays) {
    SpaceId id = SpaceId::crs(4, e(2), e(3));
    PiResult a = compute_pi(id, 8), b = compute_pi(id, 8);
    EXPECT_EQ(a.trace, b.trace);
    ASSERT_FALSE(a.trace.steps.empty());
    EXPECT_EQ(a.trace.steps.front().rule, "cofibration");
    EXPECT_EQ(a.trace.steps.back().rule, "result");

    json doc = result_to_json(id, 8, a, true);
    auto ok = replay(doc);
    EXPECT_TRUE(ok.ok) << ok.message;
    EXPECT_EQ(ok.group, a.group);

    json round = json::parse(doc.dump());
    EXPECT_EQ(trace_from_json(round.at("trace")), a.trace);

    json bad_step = doc;
    bad_step["trace"][1]["after"] = "tampered";
    EXPECT_FALSE(replay(bad_step).ok);

    json bad_group = doc;
    bad_group["torsion"] = std::vector<unsigned>{1};
    EXPECT_FALSE(replay(bad_group).ok);

    json no_trace = result_to_json(id, 8, a, false);
    EXPECT_FALSE(replay(no_trace).ok);
}

TEST(Trace, RecordsTheSettlingRule) {
    auto has_rule = [](const PiResult& r, const std::string& prefix) {
        for (const auto& s : r.trace.steps)
            if (s.rule.rfind(prefix, 0) == 0) return true;
        return false;
    };
    EXPECT_TRUE(has_rule(compute_pi(SpaceId::moore(5, e(2)), 8), "R5"));
    EXPECT_TRUE(has_rule(compute_pi(SpaceId::moore(5, e(1)), 7), "R6"));
    EXPECT_TRUE(has_rule(compute_pi(SpaceId::crs(5, e(2), e(2)), 9), "R4"));
    EXPECT_TRUE(has_rule(compute_pi(SpaceId::moore(6, ExtNat::inf()), 9), "R0"));
}

TEST(Trace, ConfigRoundTrip) {
    EngineConfig c;
    c.toda.whitehead_sign = -1;
    c.transfer_certificates = false;
    c.exponent_cap = 12;
    EngineConfig back = config_from_json(config_to_json(c));
    EXPECT_EQ(back.toda.whitehead_sign, -1);
    EXPECT_FALSE(back.transfer_certificates);
    EXPECT_EQ(back.exponent_cap, 12u);
}
