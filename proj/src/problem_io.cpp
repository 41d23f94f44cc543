#include <behave/problem_io.hpp>

#include <behave/set_algebra.hpp>

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace behave::io {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
    throw Error(ErrorKind::ParseError, "field '" + path + "': " + msg);
}

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::ValidationError, msg); }

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end()) parse_fail(path, "missing '" + key + "'");
    return *it;
}

std::string as_string(const Json& j, const std::string& path) {
    if (!j.is_string()) parse_fail(path, "expected a string");
    return j.get<std::string>();
}

std::vector<std::string> as_strings(const Json& j, const std::string& path) {
    if (!j.is_array()) parse_fail(path, "expected an array of strings");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_string(j[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

Symbol as_symbol(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Symbol(j.get<std::int64_t>());
    if (j.is_string()) return Symbol(j.get<std::string>());
    parse_fail(path, "expected an integer or string symbol");
}

Json symbol_json(const Symbol& s) {
    if (const auto* i = std::get_if<std::int64_t>(&s)) return Json(*i);
    return Json(std::get<std::string>(s));
}

SystemDef parse_system(const Json& j, const std::string& path) {
    if (!j.is_object()) parse_fail(path, "expected an object with 'subsystems' and 'network'");
    SystemDef s;
    s.subsystems = as_strings(field(j, "subsystems", path), path + ".subsystems");
    s.network = as_string(field(j, "network", path), path + ".network");
    return s;
}

LiftedDef parse_lifted(const Json& j, const std::string& path) {
    LiftedDef d;
    if (j.is_string()) {
        d.direct = j.get<std::string>();
        return d;
    }
    if (!j.is_object()) parse_fail(path, "expected a behaviour name or {\"raw\", \"network\"}");
    d.raw = as_string(field(j, "raw", path), path + ".raw");
    d.network = as_string(field(j, "network", path), path + ".network");
    return d;
}

Json lifted_json(const LiftedDef& d) {
    if (!d.lifted()) return Json(d.direct);
    Json j;
    j["raw"] = d.raw;
    j["network"] = d.network;
    return j;
}

Json system_json(const SystemDef& s) {
    Json j;
    j["subsystems"] = s.subsystems;
    j["network"] = s.network;
    return j;
}

BehaviourDef parse_behaviour(const Json& j, const std::string& path) {
    if (!j.is_object()) parse_fail(path, "expected an object");
    BehaviourDef d;
    if (j.contains("full")) {
        d.kind = BehaviourDef::Kind::Full;
        d.vars = as_strings(j["full"], path + ".full");
    } else if (j.contains("equality")) {
        d.kind = BehaviourDef::Kind::Equality;
        d.vars = as_strings(j["equality"], path + ".equality");
    } else if (j.contains("union")) {
        d.kind = BehaviourDef::Kind::Union;
        d.refs = as_strings(j["union"], path + ".union");
    } else if (j.contains("rows")) {
        d.kind = BehaviourDef::Kind::Rows;
        d.vars = as_strings(field(j, "variables", path), path + ".variables");
        const Json& rows = j["rows"];
        if (!rows.is_array()) parse_fail(path + ".rows", "expected an array of trajectories");
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const std::string rp = path + ".rows[" + std::to_string(r) + "]";
            if (!rows[r].is_object()) parse_fail(rp, "expected an object mapping variables to sequences");
            Trajectory t;
            for (const auto& [name, seq] : rows[r].items()) {
                const std::string sp = rp + "." + name;
                if (!seq.is_array()) parse_fail(sp, "expected a sequence of symbols");
                std::vector<Symbol> symbols;
                for (std::size_t k = 0; k < seq.size(); ++k)
                    symbols.push_back(as_symbol(seq[k], sp + "[" + std::to_string(k) + "]"));
                t.signals[name] = std::move(symbols);
            }
            d.rows.push_back(std::move(t));
        }
    } else {
        parse_fail(path, "expected one of 'rows', 'full', 'equality' or 'union'");
    }
    return d;
}

Json behaviour_json(const BehaviourDef& d) {
    Json j;
    switch (d.kind) {
        case BehaviourDef::Kind::Full: j["full"] = d.vars; break;
        case BehaviourDef::Kind::Equality: j["equality"] = d.vars; break;
        case BehaviourDef::Kind::Union: j["union"] = d.refs; break;
        case BehaviourDef::Kind::Rows: {
            j["variables"] = d.vars;
            Json rows = Json::array();
            for (const auto& t : d.rows) {
                Json row = Json::object();
                for (const auto& [name, seq] : t.signals) {
                    Json s = Json::array();
                    for (const auto& sym : seq) s.push_back(symbol_json(sym));
                    row[name] = s;
                }
                rows.push_back(row);
            }
            j["rows"] = rows;
            break;
        }
    }
    return j;
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    const std::size_t end = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

const SignalVariable& declared(const ProblemDocument& doc, const std::string& var, const std::string& where) {
    for (const auto& v : doc.variables)
        if (v.name() == var) return v;
    invalid(where + ": undeclared variable '" + var + "'");
}

SignalSpace space_of(const ProblemDocument& doc, const std::vector<std::string>& vars, const std::string& where) {
    std::vector<SignalVariable> out;
    for (const auto& v : vars) out.push_back(declared(doc, v, where));
    try {
        return SignalSpace(std::move(out), doc.horizon);
    } catch (const Error& e) {
        invalid(where + ": " + e.detail());
    }
}

const BehaviourDef& definition(const ProblemDocument& doc, const std::string& name, const std::string& where) {
    for (const auto& [n, d] : doc.behaviours)
        if (n == name) return d;
    invalid(where + ": reference to undefined behaviour '" + name + "'");
}

Behaviour expand(const ProblemDocument& doc, const std::string& name, std::set<std::string>& active) {
    const std::string where = "behaviour '" + name + "'";
    const BehaviourDef& d = definition(doc, name, "reference");
    if (!active.insert(name).second) invalid(where + ": cyclic union");
    Behaviour out;
    switch (d.kind) {
        case BehaviourDef::Kind::Full: out = full_space(space_of(doc, d.vars, where)); break;
        case BehaviourDef::Kind::Equality: {
            if (d.vars.empty()) invalid(where + ": equality needs at least one variable");
            const SignalSpace space = space_of(doc, d.vars, where);
            const SignalVariable& first = declared(doc, d.vars.front(), where);
            for (const auto& v : d.vars) {
                if (declared(doc, v, where).alphabet() != first.alphabet())
                    invalid(where + ": equality over '" + d.vars.front() + "' and '" + v +
                            "' whose alphabets differ");
            }
            const Behaviour diag = full_space(SignalSpace({first}, doc.horizon));
            std::vector<Trajectory> rows;
            for (std::size_t i = 0; i < diag.size(); ++i) {
                const auto seq = diag.trajectory(i).signals.begin()->second;
                Trajectory t;
                for (const auto& v : d.vars) t.signals[v] = seq;
                rows.push_back(std::move(t));
            }
            out = make_behaviour(space, rows);
            break;
        }
        case BehaviourDef::Kind::Union: {
            if (d.refs.empty()) invalid(where + ": union of nothing");
            out = expand(doc, d.refs.front(), active);
            for (std::size_t i = 1; i < d.refs.size(); ++i) {
                const Behaviour next = expand(doc, d.refs[i], active);
                if (!(next.space() == out.space()))
                    invalid(where + ": union members '" + d.refs.front() + "' and '" + d.refs[i] +
                            "' have different schemas");
                out = unite(out, next);
            }
            break;
        }
        case BehaviourDef::Kind::Rows: {
            const SignalSpace space = space_of(doc, d.vars, where);
            for (std::size_t r = 0; r < d.rows.size(); ++r) {
                const std::string rw = where + " row " + std::to_string(r);
                for (const auto& [var, seq] : d.rows[r].signals) {
                    declared(doc, var, rw);
                    if (!space.find(var)) invalid(rw + ": variable '" + var + "' is not among " + name + "'s variables");
                    if (seq.size() != static_cast<std::size_t>(doc.horizon))
                        invalid(rw + ": variable '" + var + "' has " + std::to_string(seq.size()) +
                                " samples, horizon is " + std::to_string(doc.horizon));
                    const auto& v = space.variable(var);
                    for (const auto& s : seq)
                        if (!v.code_of(s)) invalid(rw + ": symbol " + to_string(s) + " is not in the alphabet of '" + var + "'");
                }
                for (const auto& v : d.vars)
                    if (!d.rows[r].signals.count(v)) invalid(rw + ": variable '" + v + "' is missing");
            }
            out = make_behaviour(space, d.rows);
            break;
        }
    }
    active.erase(name);
    return out;
}

template <typename F>
auto as_validation(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::ValidationError || e.kind() == ErrorKind::EnumerationCapExceeded) throw;
        invalid(where + ": " + e.detail());
    }
}

void resolve_all(const ProblemDocument& doc) {
    std::set<std::string> names;
    for (const auto& [name, d] : doc.behaviours) {
        if (!names.insert(name).second) invalid("behaviour '" + name + "' is defined twice");
    }
    for (const auto& [name, d] : doc.behaviours) resolve(doc, name);
}

InterconnectedSystem build_system(const ProblemDocument& doc, const SystemDef& s, const std::string& where) {
    InterconnectedSystem sys;
    for (const auto& n : s.subsystems) sys.subsystems.push_back(resolve(doc, n));
    sys.network.behaviour = resolve(doc, s.network);
    as_validation(where, [&] {
        sys.validate();
        return 0;
    });
    return sys;
}

VariableSet names_of(const ProblemDocument& doc, const std::vector<std::string>& vars, const std::string& where) {
    VariableSet out;
    for (const auto& v : vars) {
        declared(doc, v, where);
        if (!out.insert(v).second) invalid(where + ": variable '" + v + "' listed twice");
    }
    return out;
}

Behaviour build_lifted(const ProblemDocument& doc, const LiftedDef& d, const VariableSet& target,
                       const std::string& where) {
    if (!d.lifted()) return resolve(doc, d.direct);
    const Behaviour raw = resolve(doc, d.raw);
    const Behaviour net = resolve(doc, d.network);
    return as_validation(where, [&] { return lift_spec(raw, net, target); });
}

}  // namespace

ProblemDocument parse_document(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_of(text, e.byte)) + ": malformed JSON");
    }
    if (!j.is_object()) parse_fail("$", "document must be a JSON object");

    static const std::set<std::string> known = {
        "horizon", "variables", "behaviours", "plant", "system", "spec", "restriction", "controller_network",
        "plant_controller_network", "free_vars", "controller_partition", "controllers"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) parse_fail(key, "unknown field");

    ProblemDocument doc;
    const Json& h = field(j, "horizon", "$");
    if (!h.is_number_integer()) parse_fail("horizon", "expected an integer");
    doc.horizon = h.get<int>();
    if (doc.horizon < 1) invalid("horizon must be at least 1");

    const Json& vars = field(j, "variables", "$");
    if (!vars.is_object()) parse_fail("variables", "expected an object mapping names to alphabets");
    for (const auto& [name, alpha] : vars.items()) {
        const std::string path = "variables." + name;
        if (!alpha.is_array()) parse_fail(path, "expected an array of symbols");
        std::vector<Symbol> symbols;
        for (std::size_t k = 0; k < alpha.size(); ++k)
            symbols.push_back(as_symbol(alpha[k], path + "[" + std::to_string(k) + "]"));
        try {
            doc.variables.emplace_back(name, std::move(symbols));
        } catch (const Error& e) {
            invalid(path + ": " + e.detail());
        }
    }

    if (j.contains("behaviours")) {
        const Json& bs = j["behaviours"];
        if (!bs.is_object()) parse_fail("behaviours", "expected an object of named definitions");
        for (const auto& [name, def] : bs.items())
            doc.behaviours.emplace_back(name, parse_behaviour(def, "behaviours." + name));
    }
    if (j.contains("plant")) doc.plant = parse_system(j["plant"], "plant");
    if (j.contains("system")) doc.system = parse_system(j["system"], "system");
    if (j.contains("spec")) doc.spec = parse_lifted(j["spec"], "spec");
    if (j.contains("restriction")) doc.restriction = parse_lifted(j["restriction"], "restriction");
    if (j.contains("controller_network"))
        doc.controller_network = as_string(j["controller_network"], "controller_network");
    if (j.contains("plant_controller_network"))
        doc.plant_controller_network = as_string(j["plant_controller_network"], "plant_controller_network");
    if (j.contains("free_vars")) doc.free_vars = as_strings(j["free_vars"], "free_vars");
    if (j.contains("controller_partition")) {
        const Json& part = j["controller_partition"];
        if (!part.is_array()) parse_fail("controller_partition", "expected an array of variable lists");
        for (std::size_t i = 0; i < part.size(); ++i)
            doc.controller_partition.push_back(
                as_strings(part[i], "controller_partition[" + std::to_string(i) + "]"));
    }
    if (j.contains("controllers")) doc.controllers = as_strings(j["controllers"], "controllers");
    return doc;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ProblemDocument load_document(const std::string& path) {
    const std::string text = read_file(path);
    try {
        return parse_document(text);
    } catch (const Error& e) {
        throw Error(e.kind(), path + ": " + e.detail());
    }
}

std::string serialize(const ProblemDocument& doc) {
    Json j;
    j["horizon"] = doc.horizon;
    Json vars = Json::object();
    for (const auto& v : doc.variables) {
        Json alpha = Json::array();
        for (const auto& s : v.alphabet()) alpha.push_back(symbol_json(s));
        vars[v.name()] = alpha;
    }
    j["variables"] = vars;
    Json bs = Json::object();
    for (const auto& [name, d] : doc.behaviours) bs[name] = behaviour_json(d);
    j["behaviours"] = bs;
    if (doc.plant) j["plant"] = system_json(*doc.plant);
    if (doc.system) j["system"] = system_json(*doc.system);
    if (doc.spec) j["spec"] = lifted_json(*doc.spec);
    if (doc.restriction) j["restriction"] = lifted_json(*doc.restriction);
    if (doc.controller_network) j["controller_network"] = *doc.controller_network;
    if (doc.plant_controller_network) j["plant_controller_network"] = *doc.plant_controller_network;
    if (!doc.free_vars.empty()) j["free_vars"] = doc.free_vars;
    if (!doc.controller_partition.empty()) j["controller_partition"] = doc.controller_partition;
    if (!doc.controllers.empty()) j["controllers"] = doc.controllers;
    return j.dump(2) + "\n";
}

Behaviour resolve(const ProblemDocument& doc, const std::string& name) {
    std::set<std::string> active;
    return as_validation("behaviour '" + name + "'", [&] { return expand(doc, name, active); });
}

InterconnectedSystem to_system(const ProblemDocument& doc) {
    resolve_all(doc);
    if (doc.system) return build_system(doc, *doc.system, "system");
    if (doc.plant) return build_system(doc, *doc.plant, "plant");
    invalid("document has neither a 'system' nor a 'plant' section");
}

SynthesisProblem to_problem(const ProblemDocument& doc) {
    resolve_all(doc);
    if (!doc.plant) invalid("synthesis needs a 'plant' section");
    if (!doc.controller_network) invalid("synthesis needs 'controller_network'");
    if (!doc.plant_controller_network) invalid("synthesis needs 'plant_controller_network'");
    if (doc.controller_partition.empty()) invalid("synthesis needs a nonempty 'controller_partition'");

    SynthesisProblem p;
    p.plant = build_system(doc, *doc.plant, "plant");
    p.controller_network = resolve(doc, *doc.controller_network);
    p.plant_controller_network = resolve(doc, *doc.plant_controller_network);
    const VariableSet wp = p.plant_vars();
    const VariableSet wc = p.controller_vars();
    p.spec = doc.spec ? build_lifted(doc, *doc.spec, wp, "spec") : full_space(p.plant.network.behaviour.space());
    p.restriction = doc.restriction ? build_lifted(doc, *doc.restriction, wc, "restriction")
                                    : full_space(p.controller_network.space());
    p.free_vars = names_of(doc, doc.free_vars, "free_vars");
    for (std::size_t i = 0; i < doc.controller_partition.size(); ++i)
        p.controller_partition.push_back(
            names_of(doc, doc.controller_partition[i], "controller_partition[" + std::to_string(i) + "]"));
    p.validate();
    return p;
}

std::vector<Behaviour> to_controllers(const ProblemDocument& doc) {
    resolve_all(doc);
    if (doc.controllers.empty()) invalid("document lists no 'controllers'");
    std::vector<Behaviour> out;
    for (const auto& n : doc.controllers) out.push_back(resolve(doc, n));
    return out;
}

}  // namespace behave::io
