// a2h: 2-local pi_{n+3}, pi_{n+4} of spheres, Moore spaces and Chang complexes.
//
// Exit codes: 0 ok, 1 parse/input error, 2 ambiguous extension, 3 out of range, 4 verification failure.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "a2h/a2h.hpp"

namespace {

using a2h::json;

enum Exit { kOk = 0, kParse = 1, kAmbiguous = 2, kRange = 3, kVerify = 4 };

std::vector<a2h::ExtNat> parse_range(const std::string& text) {
    std::vector<a2h::ExtNat> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(a2h::parse_extnat(tok));
    return out;
}

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), {}}; }

a2h::BigInt json_int(const json& v) {
    if (v.is_string()) return a2h::BigInt(v.get<std::string>());
    return a2h::BigInt(v.get<long long>());
}

json matrix_json(const a2h::IntMatrix& m) {
    json e = json::array();
    for (const auto& x : m.entries()) e.push_back(x.str());
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", e}};
}

int cmd_pi(const std::string& space_text, int m, bool trace, const std::string& format, const a2h::EngineConfig& cfg) {
    a2h::SpaceId space;
    try {
        space = a2h::parse_space(space_text);
        a2h::check_params(space, cfg.exponent_cap);
    } catch (const a2h::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    } catch (const a2h::CatalogError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRange;
    }
    try {
        a2h::PiResult r = a2h::compute_pi(space, m, cfg);
        if (format == "json") {
            std::cout << a2h::result_to_json(space, m, r, trace, cfg).dump(2) << "\n";
        } else {
            std::cout << r.group.pretty() << "\n";
            if (trace)
                for (const auto& s : r.trace.steps) {
                    std::string pad(2 * static_cast<std::size_t>(s.depth), ' ');
                    std::cout << pad << "[" << s.rule << "] " << s.after << "\n";
                    for (const auto& b : s.before) std::cout << pad << "    " << b << "\n";
                }
        }
        return kOk;
    } catch (const a2h::AmbiguousError& e) {
        const auto& rep = e.report;
        if (format == "json") {
            json c = json::array();
            for (const auto& g : rep.candidates) c.push_back(a2h::to_json(g));
            std::cout << json{{"space", space.str()}, {"dim", m}, {"ambiguous", true}, {"candidates", c},
                              {"coker", a2h::to_json(rep.coker)}, {"ker", a2h::to_json(rep.ker)}}
                             .dump(2)
                      << "\n";
        } else {
            std::cout << "ambiguous: " << a2h::render_set(rep.candidates) << "\n";
        }
        return kAmbiguous;
    } catch (const a2h::CatalogError& e) {
        std::cerr << "out of range: " << e.what() << "\n";
        return kRange;
    }
}

json cells_json(const std::vector<a2h::CellResult>& cells) {
    json arr = json::array();
    for (const auto& c : cells) {
        json j{{"table", c.key.table},
               {"row", a2h::row_label(c.key.table, c.key.row)},
               {"family", a2h::family_label(c.key.family)},
               {"r", c.key.r.str()},
               {"s", c.key.s.str()},
               {"status", a2h::status_name(c.status)}};
        if (c.space) j["space"] = c.space->str(), j["dim"] = c.dim;
        if (c.computed) j["computed"] = a2h::to_json(*c.computed);
        if (c.expected) j["expected"] = a2h::to_json(*c.expected);
        if (!c.message.empty()) j["message"] = c.message;
        arr.push_back(j);
    }
    return arr;
}

int cmd_snf(const std::string& matrix_text, const std::string& file) {
    json doc;
    try {
        if (!matrix_text.empty()) {
            doc = json::parse(matrix_text);
        } else if (!file.empty()) {
            std::ifstream in(file);
            if (!in) throw std::runtime_error("cannot open " + file);
            doc = json::parse(read_all(in));
        } else {
            doc = json::parse(read_all(std::cin));
        }
        std::size_t rows = doc.at("rows"), cols = doc.at("cols");
        const auto& e = doc.at("entries");
        if (e.size() != rows * cols) throw std::runtime_error("entries length must equal rows*cols");
        std::vector<a2h::BigInt> entries;
        for (const auto& v : e) entries.push_back(json_int(v));
        a2h::IntMatrix m(rows, cols, entries);
        a2h::SmithForm f = a2h::snf(m);
        if (!(f.U * m * f.V == f.S)) {
            std::cerr << "internal error: U*M*V != S\n";
            return kParse;
        }
        json diag = json::array();
        for (const auto& d : f.diagonal()) diag.push_back(d.str());
        std::cout << json{{"S", matrix_json(f.S)}, {"U", matrix_json(f.U)}, {"V", matrix_json(f.V)}, {"diagonal", diag}}.dump(2)
                  << "\n";
        return kOk;
    } catch (const std::exception& ex) {
        std::cerr << "error: malformed matrix: " << ex.what() << "\n";
        return kParse;
    }
}

int cmd_replay(const std::string& file) {
    try {
        json doc;
        if (file.empty() || file == "-") {
            doc = json::parse(read_all(std::cin));
        } else {
            std::ifstream in(file);
            if (!in) throw std::runtime_error("cannot open " + file);
            doc = json::parse(read_all(in));
        }
        a2h::ReplayOutcome r = a2h::replay(doc);
        std::cout << (r.ok ? "ok: " : "FAILED: ") << r.message << "\n";
        return r.ok ? kOk : kVerify;
    } catch (const a2h::AmbiguousError& e) {
        std::cerr << e.what() << "\n";
        return kAmbiguous;
    } catch (const a2h::CatalogError& e) {
        std::cerr << e.what() << "\n";
        return kRange;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-local homotopy groups of A_n^2-complexes in stems 3 and 4"};
    app.require_subcommand(1);

    std::string space, format = "text", r_text = "1,2,3,4,inf", s_text = "1,2,3,4,inf", matrix, file;
    int m = 0, which = 1, sign = 1;
    unsigned cap = a2h::kDefaultExponentCap;
    bool trace = false, no_transfer = false, serial = false;

    auto add_engine_flags = [&](CLI::App* c) {
        c->add_option("--sign", sign, "sign of [iota4, iota4] = ±(2nu4 - SigmaNu')")->check(CLI::IsMember({-1, 1}));
        c->add_flag("--no-transfer", no_transfer, "disable suspension, comparison and literature certificates");
        c->add_option("--cap", cap, "exponent cap for r and s");
    };

    auto* pi = app.add_subcommand("pi", "compute one homotopy group");
    pi->add_option("--space", space, "S^{d}, M{r}^{k}, Ceta^{k}, C{r}^{k}, C^{k,s}, C{r}^{k,s}")->required();
    pi->add_option("--m", m, "dimension")->required();
    pi->add_flag("--trace", trace, "print the derivation trace");
    pi->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
    add_engine_flags(pi);

    auto* table = app.add_subcommand("table", "regenerate a table");
    auto* verify = app.add_subcommand("verify", "compare a regenerated table with the closed forms");
    for (auto* c : {table, verify}) {
        c->add_option("--which", which, "1 (pi_{n+3}) or 2 (pi_{n+4})")->check(CLI::IsMember({1, 2}));
        c->add_option("--r", r_text, "comma-separated r values (inf allowed)");
        c->add_option("--s", s_text, "comma-separated s values (inf allowed)");
        c->add_flag("--serial", serial, "compute cells sequentially");
        add_engine_flags(c);
    }
    table->add_option("--format", format, "markdown or json")->check(CLI::IsMember({"markdown", "json", "text"}));
    verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

    auto* snf = app.add_subcommand("snf", "Smith normal form of {rows, cols, entries}");
    snf->add_option("--matrix", matrix, "matrix as JSON (default: read stdin)");
    snf->add_option("--file", file, "read the matrix from a file");

    auto* rep = app.add_subcommand("replay", "re-run a trace produced by `pi --trace --format json`");
    rep->add_option("file", file, "trace file (default: stdin)");
    rep->group("");  // developer command

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kParse;
    }

    a2h::EngineConfig cfg;
    cfg.toda.whitehead_sign = sign;
    cfg.transfer_certificates = !no_transfer;
    cfg.exponent_cap = cap;

    if (*pi) return cmd_pi(space, m, trace, format, cfg);
    if (*snf) return cmd_snf(matrix, file);
    if (*rep) return cmd_replay(file);

    a2h::TableOptions opt;
    try {
        opt.r_values = parse_range(r_text);
        opt.s_values = parse_range(s_text);
        for (const auto& x : opt.r_values)
            if (!x.is_inf() && x.get() > cap) throw a2h::ParseError("r exceeds the exponent cap");
        for (const auto& x : opt.s_values)
            if (!x.is_inf() && x.get() > cap) throw a2h::ParseError("s exceeds the exponent cap");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kParse;
    }
    opt.engine = cfg;
    opt.parallel = !serial;

    if (*table) {
        auto cells = a2h::regenerate(which, opt);
        if (format == "json") std::cout << cells_json(cells).dump(2) << "\n";
        else std::cout << a2h::render_markdown(which, cells);
        return kOk;
    }

    a2h::VerifyReport report = a2h::verify_table(which, opt);
    if (format == "json") {
        std::cout << json{{"table", which},
                          {"checked", report.checked},
                          {"matched", report.matched},
                          {"failures", report.failures},
                          {"ok", report.ok()}}
                         .dump(2)
                  << "\n";
    } else {
        std::cout << "table " << which << ": " << report.matched << "/" << report.checked << " derived cells match\n";
        for (const auto& f : report.failures) std::cout << "FAIL " << f << "\n";
        std::cout << (report.ok() ? "PASS" : "FAIL") << "\n";
    }
    return report.ok() ? kOk : kVerify;
}
