#include <behave/synthesis.hpp>

#include <behave/kernels.hpp>
#include <behave/set_algebra.hpp>

namespace behave {

namespace {

[[noreturn]] void invalid(const std::string& msg) { throw Error(ErrorKind::ValidationError, msg); }

// (x factors) ∩ network where the factors need not cover every network variable.
Behaviour join(const Behaviour& network, std::initializer_list<const Behaviour*> factors) {
    kernels::FilterPlan plan(network, std::vector<const Behaviour*>(factors));
    return kernels::filter(plan);
}

Behaviour admissible_controllers(const SynthesisProblem& p) {
    return intersect(p.controller_network, p.restriction);
}

}  // namespace

std::string_view to_string(FastPath f) {
    switch (f) {
        case FastPath::None: return "none";
        case FastPath::PlantObservable: return "wp_observable";
        case FastPath::ControllerObservable: return "wc_observable";
    }
    return "none";
}

void SynthesisProblem::validate() const {
    try {
        plant.validate();
    } catch (const Error& e) {
        invalid("plant: " + e.detail());
    }
    const SignalSpace& wp = plant.network.behaviour.space();
    const SignalSpace& wc = controller_network.space();
    if (!(spec.space() == wp)) invalid("spec must live on exactly the plant variables " + to_string(wp.names()));
    if (!(restriction.space() == wc))
        invalid("restriction must live on exactly the controller variables " + to_string(wc.names()));
    if (wc.horizon() != wp.horizon()) invalid("controller network horizon differs from the plant's");
    for (const auto& v : wc.variables()) {
        if (wp.find(v.name())) invalid("variable '" + v.name() + "' is both a plant and a controller variable");
    }
    std::vector<SignalVariable> all = wp.variables();
    all.insert(all.end(), wc.variables().begin(), wc.variables().end());
    if (!(plant_controller_network.space() == SignalSpace(std::move(all), wp.horizon())))
        invalid("plant-controller network must live on w_p ∪ w_c with matching alphabets");
    for (const auto& f : free_vars) {
        if (!wp.find(f)) invalid("free variable '" + f + "' is not a plant variable");
    }
    VariableSet covered;
    for (const auto& block : controller_partition) {
        if (block.empty()) invalid("controller partition has an empty block");
        for (const auto& v : block) {
            if (!wc.find(v)) invalid("controller block variable '" + v + "' is not a controller variable");
            if (!covered.insert(v).second) invalid("controller variable '" + v + "' is in two blocks");
        }
    }
    if (covered != wc.names()) invalid("controller partition does not cover " + to_string(wc.names()));
}

Behaviour lift_spec(const Behaviour& raw, const Behaviour& spec_network, const VariableSet& target) {
    VariableSet expected = target;
    for (const auto& v : raw.space().variables()) {
        if (target.count(v.name()))
            throw Error(ErrorKind::OverlapError, "target variable '" + v.name() + "' also in the raw behaviour");
        expected.insert(v.name());
    }
    if (expected != spec_network.space().names())
        throw Error(ErrorKind::SchemaMismatch, "spec network variables " + to_string(spec_network.space().names()) +
                                                   " should be " + to_string(expected));
    return project(join(spec_network, {&raw}), target);
}

Behaviour plant_behaviour(const SynthesisProblem& p) { return compose(p.plant); }

Behaviour desired_behaviour(const SynthesisProblem& p) { return desired_behaviour(p, plant_behaviour(p)); }

Behaviour desired_behaviour(const SynthesisProblem& p, const Behaviour& plant) {
    const Behaviour wanted = intersect(plant, p.spec);
    const Behaviour allowed = admissible_controllers(p);
    return join(p.plant_controller_network, {&wanted, &allowed});
}

AuxiliarySets auxiliary_sets(const SynthesisProblem& p, const Behaviour& desired) {
    return auxiliary_sets(p, plant_behaviour(p), desired);
}

AuxiliarySets auxiliary_sets(const SynthesisProblem& p, const Behaviour& plant, const Behaviour& desired) {
    const VariableSet wp = p.plant_vars();
    const VariableSet wc = p.controller_vars();
    const Behaviour& net = p.plant_controller_network;
    const Behaviour allowed = admissible_controllers(p);
    const Behaviour desired_p = project(desired, wp);

    AuxiliarySets aux;
    const Behaviour undesired = difference(plant, desired_p);
    aux.out = join(net, {&undesired, &allowed});

    const Behaviour out_c = project(aux.out, wc);
    aux.ex = join(net, {&desired_p, &out_c});

    const Behaviour kept = difference(desired_p, project(aux.ex, wp));
    aux.in = join(net, {&kept, &allowed});

    const Behaviour ex_p = project(aux.ex, wp);
    const Behaviour in_c = project(aux.in, wc);
    aux.xi = join(net, {&ex_p, &in_c});
    return aux;
}

ExistenceVerdict check_existence(const SynthesisProblem& p, const Behaviour& in, const Behaviour& xi) {
    return check_existence(p, plant_behaviour(p), in, xi);
}

ExistenceVerdict check_existence(const SynthesisProblem& p, const Behaviour& plant, const Behaviour& in,
                                 const Behaviour& xi) {
    const VariableSet wp = p.plant_vars();
    const VariableSet& wf = p.free_vars;
    ExistenceVerdict v;

    v.freeness = is_free(plant, wf);
    v.freeness_witness = v.freeness ? Behaviour(plant.space().subspace(wf)) : missing_trajectories(plant, wf, 16);

    const Behaviour implemented = unite(project(in, wp), project(xi, wp));
    const Behaviour left_out = difference(plant, implemented);
    // Rows of left_out whose free part is not covered by the implemented set.
    const Behaviour uncovered = difference(project(left_out, wf), project(implemented, wf));
    v.coverage_witness = join(left_out, {&uncovered});
    v.coverage = v.coverage_witness.empty();
    return v;
}

Behaviour controlled_behaviour(const SynthesisProblem& p, const Behaviour& desired, const Behaviour& in,
                               const ExistenceVerdict& verdict) {
    if (!verdict.exists()) throw Error(ErrorKind::NotSynthesizable, "existence conditions do not hold");
    const VariableSet wp = p.plant_vars();
    const Behaviour desired_p = project(desired, wp);
    const Behaviour in_c = project(in, p.controller_vars());
    return project(join(p.plant_controller_network, {&desired_p, &in_c}), wp);
}

ControllerForms controller_forms(const SynthesisProblem& p, const Behaviour& desired, const AuxiliarySets& aux) {
    const VariableSet wc = p.controller_vars();
    const Behaviour desired_c = project(desired, wc);
    const Behaviour minus_ex = difference(desired_c, project(aux.ex, wc));
    const Behaviour minus_out = difference(desired_c, project(aux.out, wc));
    ControllerForms forms;
    for (const auto& block : p.controller_partition) {
        forms.from_in.push_back(project(aux.in, block));
        forms.from_ex.push_back(project(minus_ex, block));
        forms.from_out.push_back(project(minus_out, block));
    }
    return forms;
}

std::vector<Behaviour> controller_behaviours(const SynthesisProblem& p, const Behaviour& desired,
                                             const AuxiliarySets& aux, const ExistenceVerdict& verdict) {
    if (!verdict.exists()) throw Error(ErrorKind::NotSynthesizable, "existence conditions do not hold");
    ControllerForms forms = controller_forms(p, desired, aux);
    for (std::size_t j = 0; j < forms.from_in.size(); ++j) {
        if (!(forms.from_in[j] == forms.from_ex[j]) || !(forms.from_in[j] == forms.from_out[j])) {
            throw Error(ErrorKind::InternalInconsistency,
                        "controller block " + to_string(p.controller_partition[j]) +
                            ": projections of B_in, π(B_d)\\π(B_ex) and π(B_d)\\π(B_out) differ (" +
                            std::to_string(forms.from_in[j].size()) + "/" + std::to_string(forms.from_ex[j].size()) +
                            "/" + std::to_string(forms.from_out[j].size()) + " rows)");
        }
    }
    return std::move(forms.from_in);
}

Behaviour multiplicity_set(const SynthesisProblem& p, const Behaviour& desired) {
    return multiplicity_set(p, plant_behaviour(p), desired);
}

Behaviour multiplicity_set(const SynthesisProblem& p, const Behaviour& plant, const Behaviour& desired) {
    const Behaviour desired_c = project(desired, p.controller_vars());
    const Behaviour allowed = intersect(admissible_controllers(p), desired_c);
    return project(join(p.plant_controller_network, {&plant, &allowed}), p.plant_vars());
}

IdentityChecks check_identities(const SynthesisProblem& p, const Behaviour& desired, const AuxiliarySets& aux) {
    const VariableSet wc = p.controller_vars();
    const Behaviour d = project(desired, wc);
    const Behaviour in = project(aux.in, wc);
    const Behaviour ex = project(aux.ex, wc);
    const Behaviour out = project(aux.out, wc);
    IdentityChecks c;
    c.in_out_disjoint = intersect(in, out).empty();
    c.in_ex_disjoint = intersect(in, ex).empty();
    c.in_ex_cover = unite(in, ex) == d;
    c.in_is_d_minus_ex = in == difference(d, ex);
    c.ex_form_is_out_form = difference(d, ex) == difference(d, out);
    return c;
}

Behaviour observability_carrier(const SynthesisProblem& p, const Behaviour& plant) {
    const Behaviour allowed = admissible_controllers(p);
    return join(p.plant_controller_network, {&plant, &allowed});
}

std::vector<Behaviour> pad_controllers(const SynthesisProblem& p, const std::vector<Behaviour>& controllers) {
    std::vector<Behaviour> padded;
    padded.reserve(controllers.size());
    for (std::size_t j = 0; j < controllers.size(); ++j) {
        const VariableSet& block = p.controller_partition.at(j);
        const Behaviour reachable = project(p.controller_network, block);
        const Behaviour inadmissible = difference(full_space(reachable.space()), reachable);
        padded.push_back(unite(controllers[j], inadmissible));
    }
    return padded;
}

SynthesisResult synthesize(const SynthesisProblem& p, const SynthesisOptions& options) {
    p.validate();
    const VariableSet wp = p.plant_vars();
    const VariableSet wc = p.controller_vars();

    SynthesisResult r;
    r.plant = plant_behaviour(p);
    r.desired = desired_behaviour(p, r.plant);
    r.aux = auxiliary_sets(p, r.plant, r.desired);
    r.multiplicities = multiplicity_set(p, r.plant, r.desired);
    r.verdict = check_existence(p, r.plant, r.aux.in, r.aux.xi);
    r.identities = check_identities(p, r.desired, r.aux);

    const Behaviour carrier = observability_carrier(p, r.plant);
    r.plant_observable_from_controller = is_observable(carrier, wp, wc);
    r.controller_observable_from_plant = is_observable(carrier, wc, wp);
    if (r.plant_observable_from_controller)
        r.fast_path = FastPath::PlantObservable;
    else if (r.controller_observable_from_plant)
        r.fast_path = FastPath::ControllerObservable;

    if (!r.verdict.exists()) return r;

    std::vector<Behaviour> general_controllers;
    if (options.strict_identities) {
        general_controllers = controller_behaviours(p, r.desired, r.aux, r.verdict);
    } else {
        general_controllers = controller_forms(p, r.desired, r.aux).from_in;
    }

    auto inconsistent = [](const std::string& msg) { throw Error(ErrorKind::InternalInconsistency, msg); };
    const bool need_general = options.cross_check_fast_paths || r.fast_path == FastPath::None;
    std::optional<Behaviour> general_controlled;
    if (need_general) general_controlled = controlled_behaviour(p, r.desired, r.aux.in, r.verdict);

    switch (r.fast_path) {
        case FastPath::PlantObservable: {
            if (!project(r.aux.ex, wp).empty())
                inconsistent("w_p observable from w_c but π_{w_p}(B_ex) is nonempty");
            r.controlled = project(r.desired, wp);
            for (const auto& block : p.controller_partition) r.controllers.push_back(project(r.desired, block));
            break;
        }
        case FastPath::ControllerObservable: {
            if (!r.aux.xi.empty()) inconsistent("w_c observable from w_p but B_xi is nonempty");
            r.controlled = project(r.aux.in, wp);
            r.controllers = general_controllers;
            break;
        }
        case FastPath::None:
            r.controlled = *general_controlled;
            r.controllers = general_controllers;
            break;
    }

    if (options.cross_check_fast_paths && r.fast_path != FastPath::None) {
        if (!(*r.controlled == *general_controlled))
            inconsistent(std::string("fast path ") + std::string(to_string(r.fast_path)) +
                         " disagrees with the general controlled behaviour");
        if (r.controllers != general_controllers)
            inconsistent(std::string("fast path ") + std::string(to_string(r.fast_path)) +
                         " disagrees with the general controller behaviours");
    }

    if (options.pad_inadmissible) r.controllers = pad_controllers(p, r.controllers);
    return r;
}

}  // namespace behave
