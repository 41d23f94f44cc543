#include <behave/cli.hpp>

#include <behave/hankel.hpp>
#include <behave/problem_io.hpp>
#include <behave/property_suite.hpp>
#include <behave/set_algebra.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <omp.h>

#include <algorithm>
#include <sstream>

namespace behave::cli {

namespace {

using Json = nlohmann::ordered_json;

Json symbol_json(const Symbol& s) {
    if (const auto* i = std::get_if<std::int64_t>(&s)) return Json(*i);
    return Json(std::get<std::string>(s));
}

Json behaviour_json(const Behaviour& b) {
    Json j;
    j["horizon"] = b.space().horizon();
    Json vars = Json::object();
    for (const auto& v : b.space().variables()) {
        Json alpha = Json::array();
        for (const auto& s : v.alphabet()) alpha.push_back(symbol_json(s));
        vars[v.name()] = alpha;
    }
    j["variables"] = vars;
    Json rows = Json::array();
    for (std::size_t i = 0; i < b.size(); ++i) {
        Json row = Json::object();
        for (const auto& [name, seq] : b.trajectory(i).signals) {
            Json s = Json::array();
            for (const auto& sym : seq) s.push_back(symbol_json(sym));
            row[name] = s;
        }
        rows.push_back(row);
    }
    j["rows"] = rows;
    return j;
}

void section(std::ostream& os, const std::string& title, const Behaviour& b) {
    os << "== " << title << "\n" << to_text(b);
}

const char* pass(bool ok) { return ok ? "pass" : "fail"; }

struct Globals {
    std::string format = "text";
    std::size_t cap = 0;
    int threads = 0;
    bool json() const { return format == "json"; }
};

int cmd_compose(const std::string& file, const Globals& g, std::ostream& out) {
    const InterconnectedSystem sys = io::to_system(io::load_document(file));
    const Behaviour b = compose(sys);
    if (g.json()) {
        out << Json{{"composed", behaviour_json(b)}}.dump(2) << "\n";
    } else {
        section(out, "composed", b);
    }
    return kOk;
}

int cmd_reconstruct(const std::string& file, const std::string& mode, const Globals& g, std::ostream& out) {
    const InterconnectedSystem sys = io::to_system(io::load_document(file));
    const std::size_t n_sub = sys.subsystems.size();
    std::size_t n_full = 0;
    if (mode == "projections") {
        n_full = 0;
    } else if (mode.rfind("hybrid:", 0) == 0) {
        const std::string digits = mode.substr(7);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) || digits.size() > 9)
            throw Error(ErrorKind::ValidationError, "mode '" + mode + "': expected hybrid:<n>");
        n_full = std::stoul(digits);
        if (n_full > n_sub)
            throw Error(ErrorKind::ValidationError, "hybrid:" + digits + " exceeds the " + std::to_string(n_sub) +
                                                        " subsystems");
    } else {
        throw Error(ErrorKind::ValidationError, "unknown mode '" + mode + "' (projections or hybrid:<n>)");
    }
    const Behaviour composed = compose(sys);
    std::vector<Behaviour> full, projections;
    for (std::size_t i = 0; i < n_sub; ++i) {
        if (i < n_full)
            full.push_back(sys.subsystems[i]);
        else
            projections.push_back(local_projection(sys, i));
    }
    const Behaviour rebuilt = reconstruct_hybrid(full, projections, sys.network);
    const bool equal = rebuilt == composed;
    if (g.json()) {
        Json j;
        j["mode"] = mode;
        j["full_subsystems"] = n_full;
        j["reconstructed"] = behaviour_json(rebuilt);
        j["composed"] = behaviour_json(composed);
        j["equal"] = equal;
        out << j.dump(2) << "\n";
    } else {
        out << "mode " << mode << " (first " << n_full << " of " << n_sub << " subsystems known in full)\n";
        for (std::size_t i = n_full; i < n_sub; ++i)
            section(out, "projection " + std::to_string(i) + " " + to_string(sys.variables_of(i)), projections[i - n_full]);
        section(out, "reconstructed", rebuilt);
        section(out, "composed", composed);
        out << "equality check " << (equal ? "PASS" : "FAIL") << "\n";
    }
    return equal ? kOk : kCheckFailed;
}

int cmd_synthesize(const std::string& file, const SynthesisOptions& opts, const Globals& g, std::ostream& out) {
    const SynthesisProblem p = io::to_problem(io::load_document(file));
    const SynthesisResult r = synthesize(p, opts);
    out << (g.json() ? synthesis_json(p, r) : synthesis_text(p, r));
    return r.exists() ? kOk : kInfeasible;
}

int cmd_verify(const std::string& file, const std::string& controllers_file, bool allow_empty, const Globals& g,
               std::ostream& out) {
    const SynthesisProblem p = io::to_problem(io::load_document(file));
    const std::vector<Behaviour> controllers = io::to_controllers(io::load_document(controllers_file));
    const Behaviour plant = verify::brute_compose(p.plant);
    const Behaviour cb = verify::brute_controller_behaviour(controllers, p.controller_network);
    const Behaviour achieved = verify::implement(plant, controllers, p.controller_network, p.plant_controller_network);
    const verify::Problem1Report rep = verify::check_problem1(achieved, cb, p, allow_empty);
    if (g.json()) {
        Json j;
        j["achieved"] = behaviour_json(achieved);
        j["controller_behaviour"] = behaviour_json(cb);
        j["within_spec"] = rep.within_spec;
        j["free_preserved"] = rep.free_preserved;
        j["within_restriction"] = rep.within_restriction;
        j["nonempty"] = rep.nonempty;
        j["ok"] = rep.ok(allow_empty);
        j["spec_witness"] = behaviour_json(rep.spec_witness);
        j["freeness_witness"] = behaviour_json(rep.freeness_witness);
        j["restriction_witness"] = behaviour_json(rep.restriction_witness);
        out << j.dump(2) << "\n";
    } else {
        section(out, "controller behaviour", cb);
        section(out, "achieved", achieved);
        out << "within_spec " << pass(rep.within_spec) << "\n";
        out << "free_preserved " << pass(rep.free_preserved) << "\n";
        out << "within_restriction " << pass(rep.within_restriction) << "\n";
        out << "nonempty " << pass(rep.nonempty) << (allow_empty ? " (not required)" : "") << "\n";
        if (!rep.within_spec) section(out, "spec witness", rep.spec_witness);
        if (!rep.free_preserved) section(out, "freeness witness", rep.freeness_witness);
        if (!rep.within_restriction) section(out, "restriction witness", rep.restriction_witness);
        out << "result " << (rep.ok(allow_empty) ? "PASS" : "FAIL") << "\n";
    }
    return rep.ok(allow_empty) ? kOk : kCheckFailed;
}

int cmd_oracle(const std::string& file, const verify::OracleCaps& caps, const Globals& g, std::ostream& out) {
    const SynthesisProblem p = io::to_problem(io::load_document(file));
    const auto size = verify::oracle_search_size(p);
    const auto found = verify::exhaustive_necessity_oracle(p, caps);
    if (g.json()) {
        Json j;
        j["families"] = size ? Json(*size) : Json(nullptr);
        j["found"] = found.has_value();
        if (found) {
            j["family_index"] = found->family_index;
            Json cs = Json::array();
            for (const auto& c : found->controllers) cs.push_back(behaviour_json(c));
            j["controllers"] = cs;
            j["achieved"] = behaviour_json(found->achieved);
        }
        out << j.dump(2) << "\n";
    } else {
        out << "families " << (size ? std::to_string(*size) : std::string("overflow")) << "\n";
        if (found) {
            out << "found family " << found->family_index << "\n";
            for (std::size_t j = 0; j < found->controllers.size(); ++j)
                section(out, "controller " + std::to_string(j + 1) + " " + to_string(p.controller_partition[j]),
                        found->controllers[j]);
            section(out, "achieved", found->achieved);
        } else {
            out << "none\n";
        }
    }
    return found ? kOk : kInfeasible;
}

int cmd_suite(std::uint64_t seed, std::size_t cases, const std::string& dir, const Globals& g, std::ostream& out) {
    verify::SuiteConfig cfg;
    cfg.seed = seed;
    cfg.cases = cases;
    cfg.counterexample_dir = dir;
    const verify::SuiteReport report = verify::run_property_suite(cfg);
    if (g.json()) {
        Json j;
        j["seed"] = report.seed;
        j["cases"] = report.cases;
        Json props = Json::array();
        for (const auto& t : report.properties) {
            Json pj;
            pj["name"] = t.name;
            pj["checked"] = t.checked;
            pj["failed"] = t.failed;
            pj["strict"] = t.strict;
            if (t.failed) {
                pj["first_failing_case"] = t.first_failing_case;
                pj["counterexample"] = t.counterexample;
                if (!t.counterexample_file.empty()) pj["counterexample_file"] = t.counterexample_file;
            }
            props.push_back(pj);
        }
        j["properties"] = props;
        j["failed"] = report.failures();
        out << j.dump(2) << "\n";
    } else {
        out << report.text();
    }
    return report.failures() == 0 ? kOk : kCheckFailed;
}

std::vector<std::string> split_tokens(const std::string& s) {
    std::string t = s;
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream in(t);
    std::vector<std::string> out;
    for (std::string tok; in >> tok;) out.push_back(tok);
    return out;
}

int cmd_hankel(const std::string& file, std::size_t L, const std::string& free_spec, const std::string& query,
               const Globals& g, std::ostream& out) {
    const lti::RealTrajectory w = lti::parse_trajectory(io::read_file(file));
    const lti::RationalMatrix H = lti::hankel(w, L);
    const std::size_t r = lti::rank(H);

    std::optional<bool> free_ok;
    std::vector<std::size_t> blocks;
    if (!free_spec.empty()) {
        for (const auto& tok : split_tokens(free_spec)) {
            if (!std::all_of(tok.begin(), tok.end(), ::isdigit) || tok.size() > 9)
                throw Error(ErrorKind::ParseError, "--free: '" + tok + "' is not a block index");
            blocks.push_back(std::stoul(tok));
        }
        free_ok = lti::free_rows_check(w, blocks, L);
    }
    std::optional<bool> span_ok;
    if (!query.empty()) {
        std::vector<lti::Rational> v;
        for (const auto& tok : split_tokens(query)) v.push_back(lti::parse_rational(tok));
        span_ok = lti::in_span(H, v);
    }

    if (g.json()) {
        Json j;
        j["L"] = L;
        j["rows"] = H.rows();
        j["cols"] = H.cols();
        j["rank"] = r;
        Json m = Json::array();
        for (std::size_t i = 0; i < H.rows(); ++i) {
            Json row = Json::array();
            for (std::size_t c = 0; c < H.cols(); ++c) row.push_back(lti::to_string(H(i, c)));
            m.push_back(row);
        }
        j["hankel"] = m;
        if (free_ok) j["free_rows_full_rank"] = *free_ok;
        if (span_ok) j["in_span"] = *span_ok;
        out << j.dump(2) << "\n";
    } else {
        out << "hankel L=" << L << " " << H.rows() << "x" << H.cols() << "\n";
        for (std::size_t i = 0; i < H.rows(); ++i) {
            for (std::size_t c = 0; c < H.cols(); ++c) out << (c ? " " : "") << lti::to_string(H(i, c));
            out << "\n";
        }
        out << "rank " << r << "\n";
        if (free_ok) out << "free_rows_full_rank " << pass(*free_ok) << "\n";
        if (span_ok) out << "in_span " << pass(*span_ok) << "\n";
    }
    return (free_ok.value_or(true) && span_ok.value_or(true)) ? kOk : kCheckFailed;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::ParseError: return kParse;
        case ErrorKind::EnumerationCapExceeded:
        case ErrorKind::SearchSpaceTooLarge: return kLimit;
        case ErrorKind::NotSynthesizable: return kInfeasible;
        case ErrorKind::InternalInconsistency: return kCheckFailed;
        default: return kValidation;
    }
}

std::string synthesis_text(const SynthesisProblem& p, const SynthesisResult& r) {
    std::ostringstream os;
    const VariableSet wp = p.plant_vars();
    os << "verdict " << (r.exists() ? "exists" : "none") << "\n";
    os << "coverage " << pass(r.verdict.coverage) << "\n";
    os << "freeness " << pass(r.verdict.freeness) << "\n";
    os << "fast_path " << to_string(r.fast_path) << "\n";
    os << "plant_observable_from_controller " << (r.plant_observable_from_controller ? "true" : "false") << "\n";
    os << "controller_observable_from_plant " << (r.controller_observable_from_plant ? "true" : "false") << "\n";
    os << "identities " << (r.identities.all() ? "hold" : "violated") << "\n";
    section(os, "plant", r.plant);
    section(os, "desired", r.desired);
    section(os, "out", r.aux.out);
    section(os, "ex", r.aux.ex);
    section(os, "in", r.aux.in);
    section(os, "xi", r.aux.xi);
    section(os, "multiplicities", r.multiplicities);
    if (!r.verdict.coverage) section(os, "coverage witness", r.verdict.coverage_witness);
    if (!r.verdict.freeness) section(os, "freeness witness", r.verdict.freeness_witness);
    if (r.controlled) {
        section(os, "controlled", *r.controlled);
        section(os, "sacrificed", difference(project(r.desired, wp), *r.controlled));
        for (std::size_t j = 0; j < r.controllers.size(); ++j)
            section(os, "controller " + std::to_string(j + 1) + " " + to_string(p.controller_partition[j]),
                    r.controllers[j]);
    }
    return os.str();
}

std::string synthesis_json(const SynthesisProblem& p, const SynthesisResult& r) {
    Json j;
    j["exists"] = r.exists();
    j["coverage"] = r.verdict.coverage;
    j["freeness"] = r.verdict.freeness;
    j["fast_path"] = std::string(to_string(r.fast_path));
    j["plant_observable_from_controller"] = r.plant_observable_from_controller;
    j["controller_observable_from_plant"] = r.controller_observable_from_plant;
    j["identities_hold"] = r.identities.all();
    j["plant"] = behaviour_json(r.plant);
    j["desired"] = behaviour_json(r.desired);
    j["out"] = behaviour_json(r.aux.out);
    j["ex"] = behaviour_json(r.aux.ex);
    j["in"] = behaviour_json(r.aux.in);
    j["xi"] = behaviour_json(r.aux.xi);
    j["multiplicities"] = behaviour_json(r.multiplicities);
    j["coverage_witness"] = behaviour_json(r.verdict.coverage_witness);
    j["freeness_witness"] = behaviour_json(r.verdict.freeness_witness);
    if (r.controlled) {
        j["controlled"] = behaviour_json(*r.controlled);
        j["sacrificed"] = behaviour_json(difference(project(r.desired, p.plant_vars()), *r.controlled));
        Json cs = Json::array();
        for (std::size_t k = 0; k < r.controllers.size(); ++k) {
            Json c;
            c["block"] = std::vector<std::string>(p.controller_partition[k].begin(), p.controller_partition[k].end());
            c["behaviour"] = behaviour_json(r.controllers[k]);
            cs.push_back(c);
        }
        j["controllers"] = cs;
    }
    return j.dump(2) + "\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite behaviours: interconnection, reconstruction and distributed controller synthesis"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--cap", g.cap, "Enumeration cap in rows (default 1000000)");
    app.add_option("--threads", g.threads, "OpenMP worker count");

    std::string file, mode = "projections", controllers_file, free_spec, query, dir;
    bool allow_empty = false, pad = false, lenient = false, no_cross_check = false;
    std::uint64_t seed = 1;
    std::size_t cases = 1000, L = 0;
    verify::OracleCaps caps;

    auto* compose_cmd = app.add_subcommand("compose", "Print the composed behaviour");
    compose_cmd->add_option("file", file, "Problem document")->required();

    auto* recon = app.add_subcommand("reconstruct", "Rebuild the behaviour from local projections");
    recon->add_option("file", file, "Problem document")->required();
    recon->add_option("--mode", mode, "projections or hybrid:<n>");

    auto* synth = app.add_subcommand("synthesize", "Run controller synthesis");
    synth->add_option("file", file, "Problem document")->required();
    synth->add_flag("--pad", pad, "Pad controllers with inadmissible trajectories");
    synth->add_flag("--no-strict-identities", lenient, "Report identity violations instead of failing");
    synth->add_flag("--no-cross-check", no_cross_check, "Skip checking fast paths against the general pipeline");

    auto* ver = app.add_subcommand("verify", "Implement given controllers and check the problem conditions");
    ver->add_option("file", file, "Problem document")->required();
    ver->add_option("--controllers", controllers_file, "Document listing the controllers")->required();
    ver->add_flag("--allow-empty", allow_empty, "Accept an empty implemented behaviour");

    auto* orc = app.add_subcommand("oracle", "Exhaustive search over controller families");
    orc->add_option("file", file, "Problem document")->required();
    orc->add_flag("--allow-empty", caps.allow_empty, "Accept an empty implemented behaviour");
    orc->add_option("--max-candidates", caps.max_candidates_per_block, "Candidate rows per block");
    orc->add_option("--max-combinations", caps.max_combinations, "Controller families to enumerate");

    auto* suite = app.add_subcommand("suite", "Randomized property suite");
    suite->add_option("--seed", seed, "Run seed");
    suite->add_option("--cases", cases, "Number of cases");
    suite->add_option("--counterexamples", dir, "Directory for counterexample files");

    auto* hk = app.add_subcommand("hankel", "Hankel-matrix rank, freeness and span checks");
    hk->add_option("file", file, "Trajectory file")->required();
    hk->add_option("--L", L, "Block rows")->required();
    hk->add_option("--free", free_spec, "Free block indices, comma separated");
    hk->add_option("--query", query, "Vector to test for membership in the column span");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    if (!rev.empty()) rev.pop_back();
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "ParseError: " << e.what() << "\n";
        return kParse;
    }

    try {
        std::optional<ScopedEnumerationCap> cap;
        if (g.cap) cap.emplace(g.cap);
        if (g.threads > 0) omp_set_num_threads(g.threads);
        if (compose_cmd->parsed()) return cmd_compose(file, g, out);
        if (recon->parsed()) return cmd_reconstruct(file, mode, g, out);
        if (synth->parsed()) {
            SynthesisOptions opts;
            opts.pad_inadmissible = pad;
            opts.strict_identities = !lenient;
            opts.cross_check_fast_paths = !no_cross_check;
            return cmd_synthesize(file, opts, g, out);
        }
        if (ver->parsed()) return cmd_verify(file, controllers_file, allow_empty, g, out);
        if (orc->parsed()) return cmd_oracle(file, caps, g, out);
        if (suite->parsed()) return cmd_suite(seed, cases, dir, g, out);
        if (hk->parsed()) return cmd_hankel(file, L, free_spec, query, g, out);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kCheckFailed;
    }
    return kCheckFailed;
}

}  // namespace behave::cli
