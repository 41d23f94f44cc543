#pragma once

#include <behave/behaviour.hpp>
#include <behave/interconnect.hpp>

#include <optional>
#include <vector>

namespace behave {

/// Givens of the distributed control problem. All behaviours share one
/// horizon; `spec` lives on the plant variables w_p, `controller_network` and
/// `restriction` on the controller variables w_c, and
/// `plant_controller_network` on w_p ∪ w_c.
struct SynthesisProblem {
    InterconnectedSystem plant;
    Behaviour spec;
    Behaviour controller_network;
    Behaviour restriction;
    Behaviour plant_controller_network;
    VariableSet free_vars;
    std::vector<VariableSet> controller_partition;

    // Throws ValidationError naming the violated invariant.
    void validate() const;

    VariableSet plant_vars() const { return plant.network.behaviour.space().names(); }
    VariableSet controller_vars() const { return controller_network.space().names(); }
};

// project([full(target) x raw] ∩ network, target); the full space is never built.
Behaviour lift_spec(const Behaviour& raw, const Behaviour& spec_network, const VariableSet& target);

Behaviour plant_behaviour(const SynthesisProblem& p);

// [(B_p ∩ B_ps) x (B_c^Π ∩ B_cr)] ∩ B_pc^Π
Behaviour desired_behaviour(const SynthesisProblem& p);
Behaviour desired_behaviour(const SynthesisProblem& p, const Behaviour& plant);

struct AuxiliarySets {
    Behaviour out;  // bad plant trajectories joined with admissible controller ones
    Behaviour ex;   // desired plant trajectories sharing a controller trajectory with `out`
    Behaviour in;   // desired plant trajectories with no such sharing
    Behaviour xi;   // excluded plant trajectories revived by controller trajectories of `in`
};

AuxiliarySets auxiliary_sets(const SynthesisProblem& p, const Behaviour& desired);
AuxiliarySets auxiliary_sets(const SynthesisProblem& p, const Behaviour& plant, const Behaviour& desired);

struct ExistenceVerdict {
    bool coverage = false;  // plant trajectories left out are covered on w_f
    bool freeness = false;  // w_f free in B_p
    // Plant trajectories (over w_p) responsible for a coverage failure.
    Behaviour coverage_witness;
    // Free-variable trajectories (over w_f) missing from π_{w_f}(B_p).
    Behaviour freeness_witness;

    bool exists() const { return coverage && freeness; }
};

ExistenceVerdict check_existence(const SynthesisProblem& p, const Behaviour& in, const Behaviour& xi);
ExistenceVerdict check_existence(const SynthesisProblem& p, const Behaviour& plant, const Behaviour& in,
                                 const Behaviour& xi);

// π_{w_p}([π_{w_p}(B_d) x π_{w_c}(B_in)] ∩ B_pc^Π). Throws NotSynthesizable on a false verdict.
Behaviour controlled_behaviour(const SynthesisProblem& p, const Behaviour& desired, const Behaviour& in,
                               const ExistenceVerdict& verdict);

// The three per-block controller expressions that must coincide.
struct ControllerForms {
    std::vector<Behaviour> from_in;   // π_{w_c^j}(B_in)
    std::vector<Behaviour> from_ex;   // π_{w_c^j}(π_{w_c}(B_d) \ π_{w_c}(B_ex))
    std::vector<Behaviour> from_out;  // π_{w_c^j}(π_{w_c}(B_d) \ π_{w_c}(B_out))
};

ControllerForms controller_forms(const SynthesisProblem& p, const Behaviour& desired, const AuxiliarySets& aux);

// Returns π_{w_c^j}(B_in) per block. Throws NotSynthesizable on a false
// verdict and InternalInconsistency when the three forms disagree.
std::vector<Behaviour> controller_behaviours(const SynthesisProblem& p, const Behaviour& desired,
                                             const AuxiliarySets& aux, const ExistenceVerdict& verdict);

// {w_p ∈ B_p | ∃ w_c ∈ π_{w_c}(B_d), (w_p, w_c) ∈ (B_p x (B_c^Π ∩ B_cr)) ∩ B_pc^Π}
Behaviour multiplicity_set(const SynthesisProblem& p, const Behaviour& desired);
Behaviour multiplicity_set(const SynthesisProblem& p, const Behaviour& plant, const Behaviour& desired);

/// Set identities the existence proof relies on, evaluated on concrete sets.
struct IdentityChecks {
    bool in_out_disjoint = true;     // π_c(B_in) ∩ π_c(B_out) = ∅
    bool in_ex_disjoint = true;      // π_c(B_in) ∩ π_c(B_ex) = ∅
    bool in_ex_cover = true;         // π_c(B_in) ∪ π_c(B_ex) = π_c(B_d)
    bool in_is_d_minus_ex = true;    // π_c(B_in) = π_c(B_d) \ π_c(B_ex)
    bool ex_form_is_out_form = true; // π_c(B_d) \ π_c(B_ex) = π_c(B_d) \ π_c(B_out)

    bool all() const {
        return in_out_disjoint && in_ex_disjoint && in_ex_cover && in_is_d_minus_ex && ex_form_is_out_form;
    }
};

IdentityChecks check_identities(const SynthesisProblem& p, const Behaviour& desired, const AuxiliarySets& aux);

// [B_p x (B_c^Π ∩ B_cr)] ∩ B_pc^Π: where the w_p / w_c correspondence is read off.
Behaviour observability_carrier(const SynthesisProblem& p, const Behaviour& plant);

enum class FastPath { None, PlantObservable, ControllerObservable };

std::string_view to_string(FastPath f);

// Adds to each block every trajectory outside π_{w_c^j}(B_c^Π); these can never
// survive the controller network, so the implemented behaviour is unchanged.
std::vector<Behaviour> pad_controllers(const SynthesisProblem& p, const std::vector<Behaviour>& controllers);

struct SynthesisOptions {
#ifdef NDEBUG
    bool cross_check_fast_paths = false;
#else
    bool cross_check_fast_paths = true;
#endif
    // Throw InternalInconsistency when the controller forms disagree; otherwise
    // record it in SynthesisResult::identities and use π_{w_c^j}(B_in).
    bool strict_identities = true;
    bool pad_inadmissible = false;
};

struct SynthesisResult {
    Behaviour plant;
    Behaviour desired;
    AuxiliarySets aux;
    Behaviour multiplicities;
    ExistenceVerdict verdict;
    IdentityChecks identities;
    FastPath fast_path = FastPath::None;
    bool plant_observable_from_controller = false;
    bool controller_observable_from_plant = false;
    std::optional<Behaviour> controlled;  // set iff verdict.exists()
    std::vector<Behaviour> controllers;   // empty when the verdict is false

    bool exists() const { return verdict.exists(); }
};

SynthesisResult synthesize(const SynthesisProblem& p, const SynthesisOptions& options = {});

}  // namespace behave
