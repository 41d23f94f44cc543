#pragma once

#include <behave/behaviour.hpp>

#include <vector>

namespace behave {

// The interconnection topology as a system of its own, over the union of all
// subsystem variables. "No interconnection" is the full space.
struct NetworkSystem {
    Behaviour behaviour;
};

struct InterconnectedSystem {
    std::vector<Behaviour> subsystems;
    NetworkSystem network;

    // Subsystem variables pairwise disjoint, their union equal to the network's
    // variables with identical alphabets, one shared horizon.
    void validate() const;

    VariableSet variables_of(std::size_t i) const;
};

// (x_i B^i) ∩ B^Π evaluated as a filtered join over the network rows.
Behaviour compose(const InterconnectedSystem& sys);

// (x_i factors[i]) ∩ B^Π where the factors must partition the network variables.
Behaviour join_with_network(const std::vector<const Behaviour*>& factors, const NetworkSystem& network);

// Rebuilds the interconnected behaviour from per-subsystem projections.
Behaviour reconstruct_from_projections(const std::vector<Behaviour>& projections, const NetworkSystem& network);

// Some subsystems known fully, the others only through projections.
Behaviour reconstruct_hybrid(const std::vector<Behaviour>& full, const std::vector<Behaviour>& projections,
                             const NetworkSystem& network);

// project(compose(sys), vars of subsystem i).
Behaviour local_projection(const InterconnectedSystem& sys, std::size_t i);

}  // namespace behave
