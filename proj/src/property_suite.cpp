#include <behave/property_suite.hpp>

#include <behave/set_algebra.hpp>
#include <behave/synthesis.hpp>
#include <behave/verify.hpp>

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace behave::verify {

namespace {

// Report order. Every name recorded by a case must appear here.
const std::vector<std::string> kProperties = {
    "subset_equivalences",
    "disjoint_iff_difference_is_identity",
    "complement_characterization",
    "product_distributes_over_intersection",
    "projection_of_intersection_is_contained",
    "projection_distributes_over_union",
    "projection_of_difference_contains",
    "projection_is_monotone",
    "algebra_no_exception",
    "compose_matches_enumeration",
    "reconstruct_from_projections",
    "reconstruct_hybrid_every_split",
    "local_projection_within_subsystem",
    "composition_within_projection_product",
    "local_projection_via_context",
    "observable_reconstruction",
    "interconnect_no_exception",
    "sandwich",
    "inner_set_nonempty",
    "inner_outer_controllers_disjoint",
    "inner_excluded_controllers_disjoint",
    "inner_excluded_controllers_cover",
    "inner_is_desired_minus_excluded",
    "excluded_form_equals_outer_form",
    "plant_observable_no_exclusions",
    "controller_observable_no_revivals",
    "fast_path_agreement",
    "implementation_matches",
    "problem_conditions_hold",
    "existence_matches_search",
    "synthesis_no_exception",
};

struct Outcome {
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::size_t strict = 0;
    std::string detail;
};

using CaseResult = std::map<std::string, Outcome>;

class Recorder {
public:
    explicit Recorder(CaseResult& r) : r_(r) {}

    void check(const std::string& name, bool ok, const std::function<std::string()>& detail, bool strict = false) {
        Outcome& o = r_[name];
        ++o.checked;
        if (strict) ++o.strict;
        if (!ok) {
            ++o.failed;
            if (o.detail.empty()) o.detail = detail();
        }
    }

private:
    CaseResult& r_;
};

bool rows_subset(const Behaviour& a, const Behaviour& b) {
    if (!(a.space() == b.space())) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!b.contains(a.row(i))) return false;
    return true;
}

// Rows of `b` for which `keep` holds, without going through the set operations under test.
template <typename Pred>
Behaviour filter_rows(const Behaviour& b, Pred keep) {
    std::vector<Code> codes;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (!keep(b.row(i))) continue;
        codes.insert(codes.end(), b.row(i).begin(), b.row(i).end());
        ++rows;
    }
    return Behaviour::from_codes(b.space(), std::move(codes), rows);
}

Behaviour random_subset(const Behaviour& b, gen::Rng& rng) {
    return filter_rows(b, [&](auto) { return rng() % 2 == 0; });
}

Behaviour complement_in(const Behaviour& whole, const Behaviour& part) {
    return filter_rows(whole, [&](auto row) { return !part.contains(row); });
}

std::string show(std::initializer_list<std::pair<const char*, const Behaviour*>> items) {
    std::string out;
    for (const auto& [label, b] : items) {
        out += std::string(label) + ":\n";
        out += to_text(*b);
    }
    return out;
}

std::string show_set(const VariableSet& s) { return "S = " + to_string(s) + "\n"; }

std::string show_problem(const SynthesisProblem& p) {
    std::string out;
    for (std::size_t i = 0; i < p.plant.subsystems.size(); ++i)
        out += "plant subsystem " + std::to_string(i) + ":\n" + to_text(p.plant.subsystems[i]);
    out += "plant network:\n" + to_text(p.plant.network.behaviour);
    out += "spec:\n" + to_text(p.spec);
    out += "controller network:\n" + to_text(p.controller_network);
    out += "restriction:\n" + to_text(p.restriction);
    out += "plant-controller network:\n" + to_text(p.plant_controller_network);
    out += "free variables: " + to_string(p.free_vars) + "\n";
    out += "controller partition:";
    for (const auto& b : p.controller_partition) out += " " + to_string(b);
    return out + "\n";
}

double density(gen::Rng& rng) {
    if (rng() % 10 == 0) return 0.0;  // keep empty behaviours in the mix
    return 0.3 + 0.6 * static_cast<double>(rng() % 1001) / 1000.0;
}

VariableSet random_names(const SignalSpace& space, gen::Rng& rng) {
    VariableSet s;
    for (const auto& v : space.variables())
        if (rng() % 2 == 0) s.insert(v.name());
    return s;
}

void algebra_case(const SetOps& ops, const SuiteSizes& sizes, gen::Rng& rng, Recorder& rec) {
    const int T = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(sizes.max_horizon));
    const std::size_t nv = 1 + rng() % sizes.max_vars;
    const SignalSpace space(gen::random_variables("a", nv, sizes.max_alphabet, rng), T);
    const Behaviour b1 = gen::random_behaviour(space, density(rng), rng);
    const Behaviour b2 = gen::random_behaviour(space, density(rng), rng);
    const Behaviour b3 = gen::random_behaviour(space, density(rng), rng);
    const VariableSet s = random_names(space, rng);

    auto subset_equivalences = [&](const Behaviour& x, const Behaviour& y) {
        const bool sub = rows_subset(x, y);
        const bool via_meet = ops.intersect(x, y) == x;
        const bool via_join = ops.unite(x, y) == y;
        const bool via_diff = ops.difference(x, y).empty();
        rec.check("subset_equivalences", sub == via_meet && sub == via_join && sub == via_diff,
                  [&] { return show({{"A1", &x}, {"A2", &y}}); });
    };
    subset_equivalences(b1, b2);
    subset_equivalences(random_subset(b2, rng), b2);

    auto disjoint = [&](const Behaviour& x, const Behaviour& y) {
        const bool lhs = ops.intersect(x, y).empty();
        const bool rhs = ops.difference(x, y) == x;
        rec.check("disjoint_iff_difference_is_identity", lhs == rhs, [&] { return show({{"A1", &x}, {"A2", &y}}); });
    };
    disjoint(b1, b2);
    disjoint(b1, complement_in(b2, b1));

    auto complement = [&](const Behaviour& whole, const Behaviour& x, const Behaviour& y) {
        const bool lhs = x == ops.difference(whole, y);
        const bool rhs = ops.intersect(x, y).empty() && ops.unite(x, y) == whole;
        rec.check("complement_characterization", lhs == rhs,
                  [&] { return show({{"A", &whole}, {"A1", &x}, {"A2", &y}}); });
    };
    const Behaviour a2 = random_subset(b3, rng);
    complement(b3, random_subset(b3, rng), a2);
    complement(b3, complement_in(b3, a2), a2);

    {
        std::vector<SignalSpace> parts;
        const std::size_t n = 2 + rng() % 2;
        for (std::size_t i = 0; i < n; ++i)
            parts.emplace_back(gen::random_variables("x" + std::to_string(i) + "_", 1, sizes.max_alphabet, rng), T);
        std::vector<Behaviour> first, second;
        for (const auto& sp : parts) {
            first.push_back(gen::random_behaviour(sp, density(rng), rng));
            second.push_back(gen::random_behaviour(sp, density(rng), rng));
        }
        Behaviour lhs = ops.intersect(first[0], second[0]);
        Behaviour p1 = first[0], p2 = second[0];
        for (std::size_t i = 1; i < n; ++i) {
            lhs = ops.product(lhs, ops.intersect(first[i], second[i]));
            p1 = ops.product(p1, first[i]);
            p2 = ops.product(p2, second[i]);
        }
        const Behaviour rhs = ops.intersect(p1, p2);
        rec.check("product_distributes_over_intersection", lhs == rhs, [&] {
            std::string out;
            for (std::size_t i = 0; i < n; ++i)
                out += "A1^" + std::to_string(i) + ":\n" + to_text(first[i]) + "A2^" + std::to_string(i) + ":\n" +
                       to_text(second[i]);
            return out;
        });
    }

    const Behaviour p1 = ops.project(b1, s);
    const Behaviour p2 = ops.project(b2, s);
    {
        const Behaviour lhs = ops.project(ops.intersect(b1, b2), s);
        const Behaviour rhs = ops.intersect(p1, p2);
        rec.check("projection_of_intersection_is_contained", rows_subset(lhs, rhs),
                  [&] { return show_set(s) + show({{"B1", &b1}, {"B2", &b2}}); }, !(lhs == rhs));
    }
    {
        const Behaviour lhs = ops.project(ops.unite(b1, b2), s);
        const Behaviour rhs = ops.unite(p1, p2);
        rec.check("projection_distributes_over_union", lhs == rhs,
                  [&] { return show_set(s) + show({{"B1", &b1}, {"B2", &b2}}); });
    }
    {
        const Behaviour lhs = ops.project(ops.difference(b1, b2), s);
        const Behaviour rhs = ops.difference(p1, p2);
        rec.check("projection_of_difference_contains", rows_subset(rhs, lhs),
                  [&] { return show_set(s) + show({{"B1", &b1}, {"B2", &b2}}); }, !(lhs == rhs));
    }
    {
        const Behaviour sub = random_subset(b2, rng);
        rec.check("projection_is_monotone", rows_subset(ops.project(sub, s), p2),
                  [&] { return show_set(s) + show({{"B1", &sub}, {"B2", &b2}}); });
    }
}

void interconnect_case(const SuiteSizes& sizes, gen::Rng& rng, Recorder& rec) {
    const InterconnectedSystem sys = gen::random_system(sizes.system, rng);
    const std::size_t n = sys.subsystems.size();
    auto show_sys = [&] {
        std::string out;
        for (std::size_t i = 0; i < n; ++i) out += "subsystem " + std::to_string(i) + ":\n" + to_text(sys.subsystems[i]);
        return out + "network:\n" + to_text(sys.network.behaviour);
    };

    const Behaviour b = compose(sys);
    rec.check("compose_matches_enumeration", b == brute_compose(sys), show_sys);

    std::vector<Behaviour> locals;
    for (std::size_t i = 0; i < n; ++i) locals.push_back(local_projection(sys, i));
    rec.check("reconstruct_from_projections", reconstruct_from_projections(locals, sys.network) == b, show_sys);

    bool hybrid_ok = true;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        std::vector<Behaviour> full, proj;
        for (std::size_t i = 0; i < n; ++i) {
            if ((mask >> i) & 1U)
                full.push_back(sys.subsystems[i]);
            else
                proj.push_back(locals[i]);
        }
        hybrid_ok = hybrid_ok && reconstruct_hybrid(full, proj, sys.network) == b;
    }
    rec.check("reconstruct_hybrid_every_split", hybrid_ok, show_sys);

    bool within = true;
    for (std::size_t i = 0; i < n; ++i) within = within && rows_subset(locals[i], sys.subsystems[i]);
    rec.check("local_projection_within_subsystem", within, show_sys);

    Behaviour prod = locals[0];
    for (std::size_t i = 1; i < n; ++i) prod = product(prod, locals[i]);
    rec.check("composition_within_projection_product", rows_subset(b, prod), show_sys);

    bool via_context = true;
    for (std::size_t i = 0; i < n; ++i) {
        InterconnectedSystem freed = sys;
        freed.subsystems[i] = full_space(sys.subsystems[i].space());
        const Behaviour ctx = project(compose(freed), sys.variables_of(i));
        via_context = via_context && locals[i] == intersect(sys.subsystems[i], ctx);
    }
    rec.check("local_projection_via_context", via_context, show_sys);

    // The first subsystem against the rest: when its variables are determined by
    // the others on [W^1 x B^rest] ∩ network, the behaviour is recovered from
    // the projection onto the rest.
    {
        InterconnectedSystem freed = sys;
        freed.subsystems[0] = full_space(sys.subsystems[0].space());
        const Behaviour carrier = compose(freed);
        const VariableSet w1 = sys.variables_of(0);
        VariableSet w2;
        for (std::size_t i = 1; i < n; ++i) {
            const auto v = sys.variables_of(i);
            w2.insert(v.begin(), v.end());
        }
        if (is_observable(carrier, w1, w2)) {
            const Behaviour rest = project(b, w2);
            const Behaviour w1_full = full_space(sys.subsystems[0].space());
            const Behaviour rhs = join_with_network({&w1_full, &rest}, sys.network);
            rec.check("observable_reconstruction", rhs == b, show_sys);
        }
    }
}

void synthesis_case(const SuiteSizes& sizes, gen::Rng& rng, Recorder& rec) {
    const SynthesisProblem p = gen::random_problem(sizes.problem, rng);
    SynthesisOptions opts;
    opts.cross_check_fast_paths = false;
    opts.strict_identities = false;
    const SynthesisResult r = synthesize(p, opts);
    auto show_p = [&] { return show_problem(p); };
    const VariableSet wp = p.plant_vars();

    rec.check("inner_outer_controllers_disjoint", r.identities.in_out_disjoint, show_p);
    rec.check("inner_excluded_controllers_disjoint", r.identities.in_ex_disjoint, show_p);
    rec.check("inner_excluded_controllers_cover", r.identities.in_ex_cover, show_p);
    rec.check("inner_is_desired_minus_excluded", r.identities.in_is_d_minus_ex, show_p);
    rec.check("excluded_form_equals_outer_form", r.identities.ex_form_is_out_form, show_p);
    if (r.plant_observable_from_controller)
        rec.check("plant_observable_no_exclusions", project(r.aux.ex, wp).empty(), show_p);
    if (r.controller_observable_from_plant) rec.check("controller_observable_no_revivals", r.aux.xi.empty(), show_p);

    if (r.exists()) {
        const Behaviour controlled = controlled_behaviour(p, r.desired, r.aux.in, r.verdict);
        const std::vector<Behaviour> controllers = controller_forms(p, r.desired, r.aux).from_in;
        rec.check("inner_set_nonempty", !r.aux.in.empty(), show_p);

        const Behaviour inner_p = project(r.aux.in, wp);
        const Behaviour desired_p = project(r.desired, wp);
        const bool sandwich = rows_subset(inner_p, controlled) && rows_subset(controlled, desired_p) &&
                              rows_subset(desired_p, intersect(r.plant, p.spec));
        rec.check("sandwich", sandwich, show_p);

        if (r.plant_observable_from_controller) {
            bool agree = controlled == desired_p;
            for (std::size_t j = 0; j < controllers.size(); ++j)
                agree = agree && controllers[j] == project(r.desired, p.controller_partition[j]);
            rec.check("fast_path_agreement", agree, show_p);
        }
        if (r.controller_observable_from_plant) rec.check("fast_path_agreement", controlled == inner_p, show_p);

        const Behaviour achieved = implement(r.plant, controllers, p.controller_network, p.plant_controller_network);
        rec.check("implementation_matches", achieved == controlled, show_p);
        const Behaviour cb = brute_controller_behaviour(controllers, p.controller_network);
        rec.check("problem_conditions_hold", check_problem1(achieved, cb, p).ok(), show_p);
    }

    const SynthesisProblem tiny = gen::random_problem(sizes.tiny_problem, rng);
    const bool verdict = synthesize(tiny, opts).exists();
    const bool found = exhaustive_necessity_oracle(tiny).has_value();
    rec.check("existence_matches_search", verdict == found, [&] {
        return show_problem(tiny) + "verdict: " + (verdict ? "exists" : "none") +
               ", search: " + (found ? "found" : "none") + "\n";
    });
}

template <typename F>
void guarded(const char* name, Recorder& rec, F&& body) {
    std::string error;
    try {
        body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    rec.check(name, error.empty(), [&] { return error + "\n"; });
}

}  // namespace

SetOps library_ops() {
    return SetOps{&behave::product, &behave::intersect, &behave::unite, &behave::difference, &behave::project};
}

std::size_t SuiteReport::failures() const {
    std::size_t n = 0;
    for (const auto& p : properties) n += p.failed;
    return n;
}

const PropertyTally* SuiteReport::find(const std::string& name) const {
    for (const auto& p : properties)
        if (p.name == name) return &p;
    return nullptr;
}

std::string SuiteReport::text() const {
    std::ostringstream os;
    os << "property-suite seed=" << seed << " cases=" << cases << "\n";
    std::size_t checked = 0, failing = 0;
    for (const auto& p : properties) {
        checked += p.checked;
        if (p.failed) ++failing;
        os << (p.failed ? "FAIL " : "PASS ") << p.name << " checked=" << p.checked << " failed=" << p.failed;
        if (p.strict) os << " strict=" << p.strict;
        if (p.failed) os << " first_case=" << p.first_failing_case;
        os << "\n";
    }
    for (const auto& p : properties) {
        if (!p.failed) continue;
        os << "counterexample " << p.name << " case=" << p.first_failing_case;
        if (!p.counterexample_file.empty()) os << " file=" << p.counterexample_file;
        os << "\n";
        std::istringstream lines(p.counterexample);
        for (std::string line; std::getline(lines, line);) os << "  " << line << "\n";
    }
    os << "summary properties=" << properties.size() << " checked=" << checked << " failed=" << failures()
       << " failing_properties=" << failing << "\n";

    nlohmann::ordered_json trailer;
    trailer["seed"] = seed;
    trailer["cases"] = cases;
    trailer["checked"] = checked;
    trailer["failed"] = failures();
    trailer["failing_properties"] = nlohmann::json::array();
    trailer["counterexample_files"] = nlohmann::json::array();
    for (const auto& p : properties) {
        if (!p.failed) continue;
        trailer["failing_properties"].push_back(p.name);
        if (!p.counterexample_file.empty()) trailer["counterexample_files"].push_back(p.counterexample_file);
    }
    os << "trailer " << trailer.dump() << "\n";
    return os.str();
}

SuiteReport run_property_suite(const SuiteConfig& config) {
    std::vector<CaseResult> results(config.cases);
    const auto n = static_cast<std::ptrdiff_t>(config.cases);
#pragma omp parallel for schedule(dynamic, 4)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto index = static_cast<std::size_t>(i);
        Recorder rec(results[index]);
        // Separate streams per group, so disabling one group leaves the others unchanged.
        if (config.algebra) {
            gen::Rng rng(gen::case_seed(config.seed, 3 * index));
            guarded("algebra_no_exception", rec, [&] { algebra_case(config.ops, config.sizes, rng, rec); });
        }
        if (config.interconnect) {
            gen::Rng rng(gen::case_seed(config.seed, 3 * index + 1));
            guarded("interconnect_no_exception", rec, [&] { interconnect_case(config.sizes, rng, rec); });
        }
        if (config.synthesis) {
            gen::Rng rng(gen::case_seed(config.seed, 3 * index + 2));
            guarded("synthesis_no_exception", rec, [&] { synthesis_case(config.sizes, rng, rec); });
        }
    }

    SuiteReport report;
    report.seed = config.seed;
    report.cases = config.cases;
    for (const auto& name : kProperties) {
        PropertyTally t;
        t.name = name;
        for (std::size_t i = 0; i < results.size(); ++i) {
            auto it = results[i].find(name);
            if (it == results[i].end()) continue;
            t.checked += it->second.checked;
            t.strict += it->second.strict;
            if (it->second.failed && !t.failed) {
                t.first_failing_case = i;
                t.counterexample = it->second.detail;
            }
            t.failed += it->second.failed;
        }
        if (t.checked == 0) continue;
        if (t.failed && !config.counterexample_dir.empty()) {
            std::filesystem::create_directories(config.counterexample_dir);
            const auto path = std::filesystem::path(config.counterexample_dir) /
                              (name + "-seed" + std::to_string(config.seed) + "-case" +
                               std::to_string(t.first_failing_case) + ".txt");
            std::ofstream(path) << t.counterexample;
            t.counterexample_file = path.string();
        }
        report.properties.push_back(std::move(t));
    }
    return report;
}

}  // namespace behave::verify
