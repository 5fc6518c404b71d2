/// JSON form of groups and derivation traces; replay re-derives and compares.
#pragma once

#include <string>

#include <json.hpp>

#include "resolve.hpp"

namespace a2h {

using nlohmann::json;

inline json to_json(const CanonicalGroup& g) {
    return json{{"free_rank", g.free_rank}, {"torsion", g.torsion}, {"pretty", g.pretty()}};
}

inline CanonicalGroup group_from_json(const json& j) {
    return CanonicalGroup(j.at("free_rank").get<std::size_t>(), j.at("torsion").get<std::vector<unsigned>>());
}

inline json to_json(const DerivationTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps)
        steps.push_back({{"rule", s.rule},
                         {"citation", s.citation},
                         {"before", s.before},
                         {"after", s.after},
                         {"elements", s.elements},
                         {"depth", s.depth}});
    return steps;
}

inline DerivationTrace trace_from_json(const json& j) {
    DerivationTrace t;
    for (const auto& s : j)
        t.steps.push_back({s.at("rule"), s.at("citation"), s.at("before").get<std::vector<std::string>>(), s.at("after"),
                           s.at("elements").get<std::vector<std::string>>(), s.at("depth")});
    return t;
}

inline json config_to_json(const EngineConfig& c) {
    return {{"whitehead_sign", c.toda.whitehead_sign},
            {"transfer_certificates", c.transfer_certificates},
            {"exponent_cap", c.exponent_cap}};
}

inline EngineConfig config_from_json(const json& j) {
    EngineConfig c;
    c.toda.whitehead_sign = j.value("whitehead_sign", 1);
    c.transfer_certificates = j.value("transfer_certificates", true);
    c.exponent_cap = j.value("exponent_cap", kDefaultExponentCap);
    return c;
}

/// {space, dim, free_rank, torsion, pretty, trace?, config?}
inline json result_to_json(const SpaceId& space, int dim, const PiResult& r, bool with_trace, const EngineConfig& cfg = {}) {
    json j{{"space", space.str()},
           {"dim", dim},
           {"free_rank", r.group.free_rank},
           {"torsion", r.group.torsion},
           {"pretty", r.group.pretty()}};
    if (with_trace) {
        j["trace"] = to_json(r.trace);
        j["config"] = config_to_json(cfg);
    }
    return j;
}

struct ReplayOutcome {
    bool ok = false;
    std::string message;
    CanonicalGroup group;
};

/// Re-run the derivation recorded in `doc` and require identical steps and result.
inline ReplayOutcome replay(const json& doc) {
    ReplayOutcome out;
    SpaceId space = parse_space(doc.at("space").get<std::string>());
    int dim = doc.at("dim").get<int>();
    EngineConfig cfg = config_from_json(doc.value("config", json::object()));
    if (!doc.contains("trace")) {
        out.message = "document carries no trace";
        return out;
    }
    DerivationTrace recorded = trace_from_json(doc.at("trace"));
    CanonicalGroup claimed(doc.at("free_rank").get<std::size_t>(), doc.at("torsion").get<std::vector<unsigned>>());
    PiResult again = compute_pi(space, dim, cfg);
    out.group = again.group;
    if (!(again.group == claimed)) {
        out.message = "result differs: recorded " + claimed.pretty() + ", replayed " + again.group.pretty();
        return out;
    }
    const auto& a = recorded.steps;
    const auto& b = again.trace.steps;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i)
        if (!(a[i] == b[i])) {
            out.message = "step " + std::to_string(i + 1) + " differs (" + a[i].rule + " vs " + b[i].rule + ")";
            return out;
        }
    if (a.size() != b.size()) {
        out.message = "step count differs: " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
        return out;
    }
    out.ok = true;
    out.message = "replayed " + std::to_string(b.size()) + " steps; " + again.group.pretty();
    return out;
}

}  // namespace a2h
