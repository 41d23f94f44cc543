#include <behave/interconnect.hpp>

#include <behave/kernels.hpp>
#include <behave/set_algebra.hpp>

namespace behave {

namespace {

void require_partition(const std::vector<const Behaviour*>& factors, const Behaviour& network) {
    VariableSet covered;
    for (const Behaviour* f : factors) {
        if (f->space().horizon() != network.space().horizon())
            throw Error(ErrorKind::HorizonMismatch, "subsystem horizon differs from the network's");
        for (const auto& v : f->space().variables()) {
            if (!covered.insert(v.name()).second)
                throw Error(ErrorKind::VariableClash, "variable '" + v.name() + "' belongs to two subsystems");
        }
    }
    if (covered != network.space().names())
        throw Error(ErrorKind::SchemaMismatch, "subsystem variables " + to_string(covered) +
                                                   " do not match network variables " +
                                                   to_string(network.space().names()));
}

}  // namespace

void InterconnectedSystem::validate() const {
    std::vector<const Behaviour*> factors;
    for (const auto& s : subsystems) factors.push_back(&s);
    require_partition(factors, network.behaviour);
    kernels::FilterPlan plan(network.behaviour, factors);  // checks alphabets
}

VariableSet InterconnectedSystem::variables_of(std::size_t i) const {
    if (i >= subsystems.size())
        throw Error(ErrorKind::IndexError, "subsystem index " + std::to_string(i) + " out of range (" +
                                               std::to_string(subsystems.size()) + " subsystems)");
    return subsystems[i].space().names();
}

Behaviour join_with_network(const std::vector<const Behaviour*>& factors, const NetworkSystem& network) {
    require_partition(factors, network.behaviour);
    kernels::FilterPlan plan(network.behaviour, factors);
    return kernels::filter(plan);
}

Behaviour compose(const InterconnectedSystem& sys) {
    std::vector<const Behaviour*> factors;
    for (const auto& s : sys.subsystems) factors.push_back(&s);
    return join_with_network(factors, sys.network);
}

Behaviour reconstruct_from_projections(const std::vector<Behaviour>& projections, const NetworkSystem& network) {
    return reconstruct_hybrid({}, projections, network);
}

Behaviour reconstruct_hybrid(const std::vector<Behaviour>& full, const std::vector<Behaviour>& projections,
                             const NetworkSystem& network) {
    std::vector<const Behaviour*> factors;
    for (const auto& b : full) factors.push_back(&b);
    for (const auto& b : projections) factors.push_back(&b);
    return join_with_network(factors, network);
}

Behaviour local_projection(const InterconnectedSystem& sys, std::size_t i) {
    const VariableSet vars = sys.variables_of(i);
    return project(compose(sys), vars);
}

}  // namespace behave
