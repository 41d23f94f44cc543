#pragma once

#include <behave/behaviour.hpp>
#include <behave/synthesis.hpp>

#include <cstdint>
#include <optional>
#include <vector>

// Brute-force oracles. Nothing in here goes through the set-algebra,
// interconnect or synthesis code paths: rows are handled as plain symbol
// tuples looked up in ordered sets.
namespace behave::verify {

// (x_i subsystems) ∩ network by enumerating the full product of subsystem rows.
Behaviour brute_compose(const InterconnectedSystem& sys);

// B_c = (x_j controllers) ∩ controller_network.
Behaviour brute_controller_behaviour(const std::vector<Behaviour>& controllers, const Behaviour& controller_network);

/// Implemented plant behaviour:
///   B_c = (x_j B_c^j) ∩ B_c^Π,  B_pc^full = (B_p x B_c) ∩ B_pc^Π,  returns π_{w_p}(B_pc^full).
Behaviour implement(const Behaviour& plant, const std::vector<Behaviour>& controllers,
                    const Behaviour& controller_network, const Behaviour& pc_network);

struct Problem1Report {
    bool within_spec = false;         // achieved ⊆ B_p ∩ B_ps
    bool free_preserved = false;      // π_{w_f}(achieved) is the full space
    bool within_restriction = false;  // B_c ⊆ B_cr
    bool nonempty = false;
    bool no_free_vars = false;        // w_f = ∅
    Behaviour spec_witness;           // achieved rows outside B_p ∩ B_ps
    Behaviour freeness_witness;       // free trajectories missing from achieved
    Behaviour restriction_witness;    // rows of B_c outside B_cr

    // `allow_empty` drops the nonemptiness demand and, with no free variables,
    // treats the freeness condition as vacuous.
    bool ok(bool allow_empty = false) const;
};

Problem1Report check_problem1(const Behaviour& achieved, const Behaviour& controller_behaviour,
                              const SynthesisProblem& p, bool allow_empty = false);

struct OracleCaps {
    std::size_t max_candidates_per_block = 12;
    std::uint64_t max_combinations = std::uint64_t{1} << 20;
    bool allow_empty = false;
};

struct OracleSolution {
    std::uint64_t family_index = 0;
    std::vector<Behaviour> controllers;
    Behaviour controller_behaviour;
    Behaviour achieved;
};

/// Searches every controller family B_c^j ⊆ π_{w_c^j}(B_c^Π ∩ B_cr), in
/// canonical subset order, for one that meets the problem conditions with a nonempty
/// implemented behaviour. Throws SearchSpaceTooLarge above the caps.
std::optional<OracleSolution> exhaustive_necessity_oracle(const SynthesisProblem& p, const OracleCaps& caps = {});

// Number of families the oracle would enumerate, or nullopt past 2^63.
std::optional<std::uint64_t> oracle_search_size(const SynthesisProblem& p);

}  // namespace behave::verify
