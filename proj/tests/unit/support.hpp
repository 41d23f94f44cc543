#pragma once

#include <behave/behaviour.hpp>

#include <cstdint>
#include <vector>

namespace behave::test {

inline SignalVariable var(const std::string& name, std::vector<std::int64_t> alphabet) {
    std::vector<Symbol> symbols(alphabet.begin(), alphabet.end());
    return SignalVariable(name, std::move(symbols));
}

// Each tuple lists the samples of `vars` in the given order, T samples per variable.
inline Behaviour rows(const std::vector<SignalVariable>& vars, const std::vector<std::vector<std::int64_t>>& tuples,
                      int T = 1) {
    std::vector<Trajectory> trs;
    for (const auto& tuple : tuples) {
        Trajectory t;
        for (std::size_t k = 0; k < vars.size(); ++k) {
            auto& seq = t.signals[vars[k].name()];
            for (int s = 0; s < T; ++s) seq.emplace_back(tuple.at(k * static_cast<std::size_t>(T) + s));
        }
        trs.push_back(std::move(t));
    }
    return make_behaviour(SignalSpace(vars, T), trs);
}

inline Behaviour full(const std::vector<SignalVariable>& vars, int T = 1) { return full_space(SignalSpace(vars, T)); }

}  // namespace behave::test
