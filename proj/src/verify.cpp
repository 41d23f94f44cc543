#include <behave/verify.hpp>

#include <algorithm>
#include <iterator>
#include <map>
#include <set>

namespace behave::verify {

namespace {

using Tuple = std::vector<Symbol>;
using Signals = std::map<std::string, std::vector<Symbol>>;

Tuple tuple_of(const Signals& s, const SignalSpace& space) {
    Tuple t;
    t.reserve(space.width());
    for (const auto& v : space.variables()) {
        const auto& seq = s.at(v.name());
        t.insert(t.end(), seq.begin(), seq.end());
    }
    return t;
}

std::vector<Signals> signals_of(const Behaviour& b) {
    std::vector<Signals> out;
    out.reserve(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) out.push_back(b.trajectory(i).signals);
    return out;
}

std::set<Tuple> tuple_set(const Behaviour& b) {
    std::set<Tuple> out;
    for (std::size_t i = 0; i < b.size(); ++i) out.insert(tuple_of(b.trajectory(i).signals, b.space()));
    return out;
}

Behaviour to_behaviour(const SignalSpace& space, const std::vector<Signals>& rows) {
    std::vector<Trajectory> trs;
    trs.reserve(rows.size());
    for (const auto& r : rows) trs.push_back(Trajectory{r});
    return make_behaviour(space, trs);
}

// Every combination of one row per factor, merged, kept if its tuple is in `keep`.
std::vector<Signals> product_filter(const std::vector<std::vector<Signals>>& factors, const SignalSpace& space,
                                    const std::set<Tuple>& keep) {
    std::vector<Signals> out;
    for (const auto& f : factors)
        if (f.empty()) return out;
    std::vector<std::size_t> idx(factors.size(), 0);
    while (true) {
        Signals merged;
        for (std::size_t k = 0; k < factors.size(); ++k) {
            const auto& part = factors[k][idx[k]];
            merged.insert(part.begin(), part.end());
        }
        if (keep.count(tuple_of(merged, space))) out.push_back(std::move(merged));
        std::size_t k = factors.size();
        while (k-- > 0) {
            if (++idx[k] < factors[k].size()) break;
            idx[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
    }
    return out;
}

void require_cover(const std::vector<const SignalSpace*>& parts, const SignalSpace& whole, const char* what) {
    std::set<std::string> seen;
    for (const auto* s : parts) {
        if (s->horizon() != whole.horizon())
            throw Error(ErrorKind::HorizonMismatch, std::string(what) + ": horizons differ");
        for (const auto& v : s->variables()) {
            if (!seen.insert(v.name()).second)
                throw Error(ErrorKind::VariableClash, std::string(what) + ": variable '" + v.name() + "' repeated");
            auto idx = whole.find(v.name());
            if (!idx || !(whole.variables()[*idx] == v))
                throw Error(ErrorKind::SchemaMismatch,
                            std::string(what) + ": variable '" + v.name() + "' does not match the network schema");
        }
    }
    if (seen.size() != whole.variables().size())
        throw Error(ErrorKind::SchemaMismatch, std::string(what) + ": parts do not cover the network variables");
}

// Caches everything about a fixed plant and networks so repeated controller
// families are cheap to evaluate.
class Implementer {
public:
    Implementer(const Behaviour& plant, const Behaviour& controller_network, const Behaviour& pc_network)
        : plant_space_(plant.space()),
          cnet_space_(controller_network.space()),
          pc_space_(pc_network.space()),
          plant_rows_(signals_of(plant)),
          cnet_(tuple_set(controller_network)),
          pc_(tuple_set(pc_network)) {
        require_cover({&plant_space_, &cnet_space_}, pc_space_, "plant-controller network");
    }

    std::vector<Signals> controller_rows(const std::vector<Behaviour>& controllers) const {
        std::vector<const SignalSpace*> spaces;
        std::vector<std::vector<Signals>> factors;
        for (const auto& c : controllers) {
            spaces.push_back(&c.space());
            factors.push_back(signals_of(c));
        }
        require_cover(spaces, cnet_space_, "controller network");
        return product_filter(factors, cnet_space_, cnet_);
    }

    std::vector<Signals> achieved_rows(const std::vector<Signals>& controller_rows) const {
        std::vector<Signals> out;
        for (const auto& p : plant_rows_) {
            for (const auto& c : controller_rows) {
                Signals merged = p;
                merged.insert(c.begin(), c.end());
                if (pc_.count(tuple_of(merged, pc_space_))) {
                    out.push_back(p);
                    break;
                }
            }
        }
        return out;
    }

    const SignalSpace& plant_space() const { return plant_space_; }
    const SignalSpace& controller_space() const { return cnet_space_; }

private:
    SignalSpace plant_space_, cnet_space_, pc_space_;
    std::vector<Signals> plant_rows_;
    std::set<Tuple> cnet_, pc_;
};

class Problem1Checker {
public:
    explicit Problem1Checker(const SynthesisProblem& p)
        : wanted_(intersection(tuple_set(brute_compose(p.plant)), tuple_set(p.spec))),
          restriction_(tuple_set(p.restriction)),
          free_vars_(p.free_vars) {}

    Problem1Report check(const SignalSpace& achieved_space, const std::vector<Signals>& achieved,
                         const SignalSpace& controller_space, const std::vector<Signals>& controller_rows) const {
        Problem1Report r;
        r.nonempty = !achieved.empty();

        std::vector<Signals> bad;
        for (const auto& row : achieved)
            if (!wanted_.count(tuple_of(row, achieved_space))) bad.push_back(row);
        r.within_spec = bad.empty();
        r.spec_witness = to_behaviour(achieved_space, bad);

        bad.clear();
        for (const auto& row : controller_rows)
            if (!restriction_.count(tuple_of(row, controller_space))) bad.push_back(row);
        r.within_restriction = bad.empty();
        r.restriction_witness = to_behaviour(controller_space, bad);

        const SignalSpace free_space = achieved_space.subspace(free_vars_);
        std::set<Tuple> seen;
        for (const auto& row : achieved) seen.insert(tuple_of(row, free_space));
        const auto card = free_space.cardinality();
        r.free_preserved = card && seen.size() == *card;
        r.no_free_vars = free_vars_.empty();

        // Odometer over the free space, collecting up to 16 missing tuples.
        std::vector<Signals> missing;
        if (!r.free_preserved) {
            const auto& vars = free_space.variables();
            const std::size_t horizon = static_cast<std::size_t>(free_space.horizon());
            std::vector<std::size_t> digit(free_space.width(), 0);
            while (missing.size() < 16) {
                Tuple t;
                Signals s;
                for (std::size_t v = 0; v < vars.size(); ++v) {
                    auto& seq = s[vars[v].name()];
                    for (std::size_t k = 0; k < horizon; ++k) seq.push_back(vars[v].alphabet()[digit[v * horizon + k]]);
                    t.insert(t.end(), seq.begin(), seq.end());
                }
                if (!seen.count(t)) missing.push_back(std::move(s));
                std::size_t k = digit.size();
                while (k-- > 0) {
                    if (++digit[k] < vars[k / horizon].size()) break;
                    digit[k] = 0;
                }
                if (k == static_cast<std::size_t>(-1)) break;
            }
        }
        r.freeness_witness = to_behaviour(free_space, missing);
        return r;
    }

private:
    static std::set<Tuple> intersection(const std::set<Tuple>& a, const std::set<Tuple>& b) {
        std::set<Tuple> out;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
        return out;
    }

    std::set<Tuple> wanted_;
    std::set<Tuple> restriction_;
    VariableSet free_vars_;
};

}  // namespace

bool Problem1Report::ok(bool allow_empty) const {
    const bool freeness = free_preserved || (allow_empty && no_free_vars);
    return within_spec && within_restriction && freeness && (nonempty || allow_empty);
}

Behaviour brute_compose(const InterconnectedSystem& sys) {
    const SignalSpace& space = sys.network.behaviour.space();
    std::vector<const SignalSpace*> spaces;
    std::vector<std::vector<Signals>> factors;
    for (const auto& s : sys.subsystems) {
        spaces.push_back(&s.space());
        factors.push_back(signals_of(s));
    }
    require_cover(spaces, space, "network");
    return to_behaviour(space, product_filter(factors, space, tuple_set(sys.network.behaviour)));
}

Behaviour brute_controller_behaviour(const std::vector<Behaviour>& controllers, const Behaviour& controller_network) {
    const Behaviour no_plant(SignalSpace(std::vector<SignalVariable>{}, controller_network.space().horizon()));
    Implementer imp(no_plant, controller_network, controller_network);
    return to_behaviour(controller_network.space(), imp.controller_rows(controllers));
}

Behaviour implement(const Behaviour& plant, const std::vector<Behaviour>& controllers,
                    const Behaviour& controller_network, const Behaviour& pc_network) {
    Implementer imp(plant, controller_network, pc_network);
    return to_behaviour(plant.space(), imp.achieved_rows(imp.controller_rows(controllers)));
}

Problem1Report check_problem1(const Behaviour& achieved, const Behaviour& controller_behaviour,
                              const SynthesisProblem& p, bool allow_empty) {
    (void)allow_empty;
    Problem1Checker checker(p);
    return checker.check(achieved.space(), signals_of(achieved), controller_behaviour.space(),
                         signals_of(controller_behaviour));
}

namespace {

struct Candidates {
    std::vector<SignalSpace> block_spaces;
    std::vector<std::vector<Signals>> rows;  // per block, canonical order
};

Candidates candidate_rows(const SynthesisProblem& p) {
    const std::set<Tuple> restriction = tuple_set(p.restriction);
    std::vector<Signals> admissible;
    for (const auto& row : signals_of(p.controller_network))
        if (restriction.count(tuple_of(row, p.controller_network.space()))) admissible.push_back(row);

    Candidates c;
    for (const auto& block : p.controller_partition) {
        SignalSpace space = p.controller_network.space().subspace(block);
        std::map<Tuple, Signals> distinct;
        for (const auto& row : admissible) {
            Signals part;
            for (const auto& v : block) part[v] = row.at(v);
            distinct.emplace(tuple_of(part, space), part);
        }
        std::vector<Signals> rows;
        for (auto& [_, s] : distinct) rows.push_back(std::move(s));
        c.block_spaces.push_back(std::move(space));
        c.rows.push_back(std::move(rows));
    }
    return c;
}

}  // namespace

std::optional<std::uint64_t> oracle_search_size(const SynthesisProblem& p) {
    const Candidates c = candidate_rows(p);
    std::size_t bits = 0;
    for (const auto& r : c.rows) bits += r.size();
    if (bits > 63) return std::nullopt;
    return std::uint64_t{1} << bits;
}

std::optional<OracleSolution> exhaustive_necessity_oracle(const SynthesisProblem& p, const OracleCaps& caps) {
    p.validate();
    const Candidates cand = candidate_rows(p);
    std::size_t bits = 0;
    for (std::size_t j = 0; j < cand.rows.size(); ++j) {
        if (cand.rows[j].size() > caps.max_candidates_per_block)
            throw Error(ErrorKind::SearchSpaceTooLarge,
                        "block " + to_string(p.controller_partition[j]) + " has " +
                            std::to_string(cand.rows[j].size()) + " candidate rows, cap is " +
                            std::to_string(caps.max_candidates_per_block));
        bits += cand.rows[j].size();
    }
    if (bits > 63 || (std::uint64_t{1} << bits) > caps.max_combinations)
        throw Error(ErrorKind::SearchSpaceTooLarge,
                    "search needs 2^" + std::to_string(bits) + " controller families, cap is " +
                        std::to_string(caps.max_combinations));
    const std::uint64_t total = std::uint64_t{1} << bits;

    const Behaviour plant = brute_compose(p.plant);
    const Implementer imp(plant, p.controller_network, p.plant_controller_network);
    const Problem1Checker checker(p);

    auto family = [&](std::uint64_t index) {
        std::vector<Behaviour> controllers;
        std::size_t offset = 0;
        for (std::size_t j = 0; j < cand.rows.size(); ++j) {
            std::vector<Signals> chosen;
            for (std::size_t k = 0; k < cand.rows[j].size(); ++k)
                if ((index >> (offset + k)) & 1U) chosen.push_back(cand.rows[j][k]);
            offset += cand.rows[j].size();
            controllers.push_back(to_behaviour(cand.block_spaces[j], chosen));
        }
        return controllers;
    };
    auto satisfies = [&](std::uint64_t index) {
        const auto controllers = family(index);
        const auto crows = imp.controller_rows(controllers);
        const auto achieved = imp.achieved_rows(crows);
        return checker.check(imp.plant_space(), achieved, imp.controller_space(), crows).ok(caps.allow_empty);
    };

    // Workers claim disjoint index ranges; the lowest satisfying index wins, so
    // the answer does not depend on the number of threads.
    constexpr std::uint64_t kChunk = 1024;
    for (std::uint64_t start = 0; start < total; start += kChunk) {
        const std::uint64_t end = std::min(total, start + kChunk);
        std::vector<char> hit(static_cast<std::size_t>(end - start), 0);
        const auto n = static_cast<std::ptrdiff_t>(end - start);
#pragma omp parallel for schedule(dynamic, 16)
        for (std::ptrdiff_t k = 0; k < n; ++k)
            hit[static_cast<std::size_t>(k)] = satisfies(start + static_cast<std::uint64_t>(k)) ? 1 : 0;
        for (std::size_t k = 0; k < hit.size(); ++k) {
            if (!hit[k]) continue;
            OracleSolution s;
            s.family_index = start + k;
            s.controllers = family(s.family_index);
            const auto crows = imp.controller_rows(s.controllers);
            s.controller_behaviour = to_behaviour(imp.controller_space(), crows);
            s.achieved = to_behaviour(imp.plant_space(), imp.achieved_rows(crows));
            return s;
        }
    }
    return std::nullopt;
}

}  // namespace behave::verify
