/**
 * Extension resolution (certificates R0..R7) and compute_pi.
 *
 *   R0 f = 0: the pinch map has a section
 *   R1 trivial kernel, R2 trivial cokernel, R3 free kernel
 *   R4 suspension transfer from (n-1, m-1)
 *   R5 comparison transfer from a split problem mapping into this one
 *   R6 literature fact
 *   R7 enumeration of Ext(ker, coker)
 */
#pragma once

#include <functional>
#include <optional>
#include <string>

#include "engine.hpp"

namespace a2h {

struct PiResult {
    CanonicalGroup group;
    DerivationTrace trace;
};

inline PiResult compute_pi(const SpaceId& space, int m, const EngineConfig& cfg = {});

// ---------------------------------------------------------------------------
// Certificate registry
// ---------------------------------------------------------------------------

enum class CertKind { Suspension, CofibMap, PrecomposeEta, Literature };

struct Certificate {
    CertKind kind;
    SpaceId top;       ///< the problem transferred from
    int top_dim = 0;
    WedgeMap mu_prime; ///< X_top -> X
    WedgeMap mu;       ///< Y_top -> Y
};

inline std::string cert_rule(CertKind k) {
    switch (k) {
        case CertKind::Suspension: return "R4-suspension";
        case CertKind::CofibMap: return "R5-cofibration-map";
        case CertKind::PrecomposeEta: return "R5-precompose-eta";
        case CertKind::Literature: return "R6-literature";
    }
    return "?";
}

inline SpaceId lower_space(SpaceId id) {
    --id.n;
    return id;
}

/// Which transfer certificate the extension at (space, m) is settled by, if any.
inline std::optional<Certificate> certificate_for(const SpaceId& space, int m) {
    const int b = space.connectivity_dim();
    const int k = m - b;
    auto lit = [&]() -> std::optional<Certificate> {
        if (literature_fact(space, m)) return Certificate{CertKind::Literature, space, m, {}, {}};
        return std::nullopt;
    };
    auto susp = [&]() { return Certificate{CertKind::Suspension, lower_space(space), m - 1, {}, {}}; };
    switch (space.kind) {
        case SpaceKind::MooreBottom:
        case SpaceKind::MooreTop: {
            if (space.r.is_inf()) return std::nullopt;
            const unsigned r = space.r.get();
            if (k == 2 && b >= 5) return lit();
            if (k == 3 && b == 4) return lit();
            if (k == 3 && b >= 5) {
                if (r == 1) return lit();
                return Certificate{CertKind::PrecomposeEta, space, m - 1, {}, {}};
            }
            if (k == 4 && b == 4) {
                if (r == 1) return lit();
                Wedge W{4};
                SpaceId top = SpaceId::moore(4, ExtNat::of(1));
                return Certificate{CertKind::CofibMap, top, m, WedgeMap{W, W, {Element::incl(W, 0)}},
                                   WedgeMap{W, W, {Element::incl(W, 0, {}, pow2(r - 1))}}};
            }
            if (k == 4 && b == 5) return susp();
            return std::nullopt;
        }
        case SpaceKind::CEta: return lit();
        case SpaceKind::Crs: {
            const int n = space.n;
            if (k == 3 && n == 4) {
                Wedge S4{4}, XY{5, 4};
                return Certificate{CertKind::CofibMap, SpaceId::moore(4, space.r), m, WedgeMap{S4, XY, {Element::incl(XY, 1)}},
                                   WedgeMap{S4, XY, {Element::incl(XY, 1)}}};
            }
            if (k == 4 && n == 4) {
                Wedge S4{4}, XY{5, 4};
                if (space.s == ExtNat::of(1))
                    return Certificate{CertKind::CofibMap, SpaceId::moore(4, space.r), m,
                                       WedgeMap{S4, XY, {Element::incl(XY, 1)}}, WedgeMap{S4, XY, {Element::incl(XY, 1)}}};
                BigInt c = space.s.is_inf() ? BigInt(0) : pow2(space.s.get() - 1);
                return Certificate{CertKind::CofibMap, SpaceId::crs(4, space.r, ExtNat::of(1)), m,
                                   WedgeMap{XY, XY, {Element::incl(XY, 0), Element::incl(XY, 1)}},
                                   WedgeMap{XY, XY, {Element::incl(XY, 0, {}, c), Element::incl(XY, 1)}}};
            }
            if ((k == 3 || k == 4) && n >= 5) return susp();
            return std::nullopt;
        }
        default: return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Kernel transfer maps
// ---------------------------------------------------------------------------

struct KernelTransfer {
    bool lands_in_kernel = false;
    bool injective = false;
    CanonicalGroup image;
};

/// Push the generators of the top kernel through theta into π_m(ΣX) of `p`.
inline KernelTransfer transfer_kernel(const ExtensionProblem& top, const ExtensionProblem& p,
                                      const std::function<Element(const Element&)>& theta) {
    const IntMatrix& inc = top.ker.inclusion;
    IntMatrix T(p.sigma_x.basis.size(), inc.cols());
    for (std::size_t c = 0; c < inc.cols(); ++c) {
        Element xi = Element::from_coords(top.sigma_x, inc.column(c));
        auto v = theta(xi).coords(p.sigma_x);
        for (std::size_t r = 0; r < v.size(); ++r) T(r, c) = v[r];
    }
    KernelTransfer out;
    out.lands_in_kernel = true;
    for (std::size_t c = 0; c < T.cols(); ++c)
        out.lands_in_kernel &= p.d_m1.target().is_zero(p.d_m1.matrix().apply(T.column(c)));
    GroupHom h(top.ker.group, p.d_m1.source(), T);
    out.injective = kernel(h).group.canonical().is_trivial();
    out.image = image_canonical(h);
    return out;
}

// ---------------------------------------------------------------------------
// Resolution
// ---------------------------------------------------------------------------

inline CanonicalGroup resolve_extension(const ExtensionProblem& p, const EngineConfig& cfg, DerivationTrace& trace);

inline ExtensionProblem problem_for(const SpaceId& space, int m, const EngineConfig& cfg, DerivationTrace& trace) {
    return five_term(space, m, cfg, trace);
}

/// Resolve the problem at (space, m) and report whether it came out split.
inline bool resolves_split(const SpaceId& space, int m, const EngineConfig& cfg, DerivationTrace& trace,
                           std::optional<ExtensionProblem>& out) {
    DerivationTrace sub;
    out.emplace(problem_for(space, m, cfg, sub));
    CanonicalGroup g = resolve_extension(*out, cfg, sub);
    trace.nest(sub);
    return g == out->coker_c + out->ker_c;
}

inline std::optional<CanonicalGroup> try_transfer(const ExtensionProblem& p, const Certificate& cert, const EngineConfig& cfg,
                                                  DerivationTrace& trace, const std::set<CanonicalGroup>& cands) {
    const std::string rule = cert_rule(cert.kind);
    if (cert.kind == CertKind::Literature) {
        auto fact = literature_fact(p.space, p.m);
        if (!fact) return std::nullopt;
        if (!cands.count(fact->group)) {
            trace.add(rule, fact->citation, {"candidates " + render_set(cands)}, "rejected: " + fact->group.pretty() + " is not an extension");
            return std::nullopt;
        }
        bool split = fact->group == p.coker_c + p.ker_c;
        trace.add(rule, fact->citation, {"Coker = " + p.coker_c.pretty(), "Ker = " + p.ker_c.pretty()},
                  fact->group.pretty() + (split ? " (split)" : " (non-split)"));
        return fact->group;
    }

    std::optional<ExtensionProblem> top;
    bool split;
    try {
        split = resolves_split(cert.top, cert.top_dim, cfg, trace, top);
    } catch (const AmbiguousError& e) {
        trace.add(rule, "top problem", {}, std::string("failed: ") + e.what());
        return std::nullopt;
    }
    const std::string top_name = "pi_" + std::to_string(cert.top_dim) + "(" + cert.top.str() + ")";
    if (!split) {
        trace.add(rule, "top problem", {top_name}, "failed: top sequence does not split");
        return std::nullopt;
    }

    std::function<Element(const Element&)> theta;
    std::vector<std::string> hyp{top_name + " split"};
    switch (cert.kind) {
        case CertKind::Suspension: theta = [](const Element& x) { return suspend(x); }; break;
        case CertKind::PrecomposeEta:
            theta = [&](const Element& x) { return compose(x, Word{Letter::Eta}, cfg.toda); };
            break;
        case CertKind::CofibMap: {
            // f ∘ mu' = mu ∘ f_top, checked on every X_top summand
            WedgeMap f = p.cof.as_map();
            for (std::size_t b = 0; b < cert.mu_prime.components.size(); ++b) {
                Element lhs = f.apply(cert.mu_prime.components[b], cfg.toda);
                Element rhs = cert.mu.apply(top->cof.f[b], cfg.toda);
                if (!(lhs == rhs)) {
                    trace.add(rule, "comparison map", {lhs.render(), rhs.render()}, "failed: square does not commute");
                    return std::nullopt;
                }
            }
            hyp.push_back("f∘mu' = mu∘f' verified");
            WedgeMap smu = suspend_map(cert.mu_prime);
            theta = [smu, &cfg](const Element& x) { return smu.apply(x, cfg.toda); };
            break;
        }
        case CertKind::Literature: break;
    }

    KernelTransfer kt = transfer_kernel(*top, p, theta);
    hyp.push_back("Ker' = " + top->ker_c.pretty() + " -> Ker = " + p.ker_c.pretty());
    if (!kt.lands_in_kernel || !kt.injective) {
        trace.add(rule, "kernel transfer", hyp, "failed: kernel map not injective into Ker");
        return std::nullopt;
    }
    const bool iso = kt.image == p.ker_c;
    if (cert.kind == CertKind::Suspension && !iso) {
        trace.add(rule, "kernel transfer", hyp, "failed: suspension is not onto Ker");
        return std::nullopt;
    }
    if (!iso) {
        const unsigned bound = top->ker_c.log_order();
        hyp.push_back("exp(Coker) = 2^" + std::to_string(p.coker_c.log_exponent()) + ", |Ker'| = 2^" + std::to_string(bound));
        if (p.coker_c.log_exponent() > bound) {
            trace.add(rule, "exponent bound", hyp, "failed: exponent bound");
            return std::nullopt;
        }
    } else {
        hyp.push_back("kernel map is an isomorphism");
    }
    CanonicalGroup g = p.coker_c + p.ker_c;
    trace.add(rule, cert.kind == CertKind::Suspension ? "suspension of a split sequence" : "split sequence mapping in", hyp,
              g.pretty() + " (split)");
    return g;
}

inline CanonicalGroup resolve_extension(const ExtensionProblem& p, const EngineConfig& cfg, DerivationTrace& trace) {
    const auto cands = extension_candidates(p.coker_c, p.ker_c);
    auto accept = [&](CanonicalGroup g, const std::string& rule, const std::string& cite) {
        if (!cands.count(g)) throw AlgebraError(rule + " produced " + g.pretty() + " outside " + render_set(cands));
        trace.add(rule, cite, {"Coker = " + p.coker_c.pretty(), "Ker = " + p.ker_c.pretty()}, g.pretty());
        return g;
    };
    std::optional<CanonicalGroup> g;
    if (p.cof.is_null()) g = accept(p.coker_c + p.ker_c, "R0-section", "f = 0: the pinch map has a section");
    else if (p.ker_c.is_trivial()) g = accept(p.coker_c, "R1-trivial-kernel", "exact sequence");
    else if (p.coker_c.is_trivial()) g = accept(p.ker_c, "R2-trivial-cokernel", "exact sequence");
    else if (p.ker_c.free_rank == 1) g = accept(p.coker_c + p.ker_c, "R3-free-kernel", "free quotients split");

    if (g) {
        if (auto fact = literature_fact(p.space, p.m)) {
            bool agree = fact->group == *g;
            trace.add("cross-check", fact->citation, {fact->group.pretty()}, agree ? "agrees" : "DISAGREES");
            if (!agree) throw AlgebraError("literature cross-check failed for " + p.space.str());
        }
        return *g;
    }

    if (cfg.transfer_certificates) {
        if (auto cert = certificate_for(p.space, p.m)) {
            if (auto r = try_transfer(p, *cert, cfg, trace, cands)) {
                if (!cands.count(*r)) throw AlgebraError("certificate result outside the candidate set");
                return *r;
            }
        }
    }

    if (cands.size() == 1) return accept(*cands.begin(), "R7-enumeration", "Ext(Ker, Coker) has one class");
    trace.add("R7-enumeration", "Ext(Ker, Coker)", {"Coker = " + p.coker_c.pretty(), "Ker = " + p.ker_c.pretty()},
              "ambiguous: " + render_set(cands));
    throw AmbiguousError({p.space, p.m, p.coker_c, p.ker_c, cands, "no certificate settles the extension"});
}

// ---------------------------------------------------------------------------
// compute_pi
// ---------------------------------------------------------------------------

inline PiResult compute_pi(const SpaceId& space, int m, const EngineConfig& cfg) {
    check_params(space, cfg.exponent_cap);
    PiResult out;
    const std::string label = "pi_" + std::to_string(m) + "(" + space.str() + ")";
    const int b = space.connectivity_dim();
    if (m < b) {
        out.trace.add("below-connectivity", "Hurewicz", {}, label + " = 0");
        return out;
    }
    if (m - b > 4) throw CatalogError(label + ": stems above 4 are outside the catalog");

    if (space.kind == SpaceKind::Sphere) {
        out.group = pi_sphere(m, space.n).canonical();
        out.trace.add("sphere-catalog", "Toda generators", {}, label + " = " + out.group.pretty());
        return out;
    }
    if (b < 4) throw CatalogError(label + ": complexes with bottom cell below 4 are reference data only");

    if (space.kind == SpaceKind::Cr || space.kind == SpaceKind::Cs) {
        const bool is_r = space.kind == SpaceKind::Cr;
        if ((is_r ? space.r : space.s).is_inf()) throw CatalogError(space.str() + " is a wedge, not an indecomposable complex");
        SpaceId whole = is_r ? SpaceId::crs(space.n, space.r, ExtNat::inf()) : SpaceId::crs(space.n, ExtNat::inf(), space.s);
        PiResult w = compute_pi(whole, m, cfg);
        out.trace.nest(w.trace);
        CanonicalGroup g = w.group;
        std::vector<std::string> parts{whole.str() + " = " + space.str() + " v S^{" + std::to_string(space.n + 1) + "}",
                                       "pi_" + std::to_string(m) + "(" + whole.str() + ") = " + g.pretty()};
        PiResult sph = compute_pi(SpaceId::sphere(space.n + 1), m, cfg);
        g = subtract_summand(g, sph.group);
        parts.push_back("minus pi_" + std::to_string(m) + "(S^{" + std::to_string(space.n + 1) + "}) = " + sph.group.pretty());
        for (const auto& x : hilton_cross_terms({space, SpaceId::sphere(space.n + 1)}, m)) {
            PiResult cr = compute_pi(x, m, cfg);
            out.trace.nest(cr.trace);
            g = subtract_summand(g, cr.group);
            parts.push_back("minus cross term pi_" + std::to_string(m) + "(" + x.str() + ") = " + cr.group.pretty());
        }
        out.group = g;
        out.trace.add("wedge-extraction", "Hilton decomposition of a wedge", parts, label + " = " + g.pretty());
        return out;
    }

    ExtensionProblem p = five_term(space, m, cfg, out.trace);
    out.group = resolve_extension(p, cfg, out.trace);
    out.trace.add("result", "0 -> Coker -> pi -> Ker -> 0", {}, label + " = " + out.group.pretty());
    return out;
}

}  // namespace a2h
