#include <behave/generators.hpp>

#include <behave/set_algebra.hpp>

#include <algorithm>

namespace behave::gen {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

double uniform_real(Rng& rng, double lo, double hi) {
    // Quantized so the draw does not depend on the library's real distribution.
    const double u = static_cast<double>(rng() % 1000001ULL) / 1000000.0;
    return lo + (hi - lo) * u;
}

bool coin(Rng& rng, double p) { return static_cast<double>(rng() % 1000000ULL) < p * 1000000.0; }

Trajectory merged(const Trajectory& a, const Trajectory& b) {
    Trajectory t = a;
    t.signals.insert(b.signals.begin(), b.signals.end());
    return t;
}

SignalSpace joint_space(const SignalSpace& a, const SignalSpace& b) {
    std::vector<SignalVariable> vars = a.variables();
    vars.insert(vars.end(), b.variables().begin(), b.variables().end());
    return SignalSpace(std::move(vars), a.horizon());
}

// Graph of a random map from `from` rows to `to` rows, optionally thickened with extra pairs.
Behaviour random_function(const SignalSpace& from, const SignalSpace& to, double extra, Rng& rng) {
    const Behaviour src = full_space(from);
    const Behaviour dst = full_space(to);
    std::vector<Trajectory> rows;
    for (std::size_t i = 0; i < src.size(); ++i) {
        const Trajectory a = src.trajectory(i);
        rows.push_back(merged(a, dst.trajectory(uniform(rng, 0, dst.size() - 1))));
        if (extra > 0 && coin(rng, extra)) rows.push_back(merged(a, dst.trajectory(uniform(rng, 0, dst.size() - 1))));
    }
    return make_behaviour(joint_space(from, to), rows);
}

SynthesisProblem draw_problem(const ProblemConfig& cfg, Rng& rng) {
    const int horizon = cfg.tiny ? 1 : static_cast<int>(uniform(rng, 1, static_cast<std::size_t>(cfg.max_horizon)));
    const std::size_t alpha = cfg.tiny ? std::min<std::size_t>(cfg.max_alphabet, 3) : cfg.max_alphabet;

    SynthesisProblem p;
    const std::size_t n_plant = uniform(rng, 1, cfg.max_plant_subsystems);
    const auto pvars = random_variables("p", n_plant, alpha, rng);
    std::vector<SignalVariable> all_p;
    for (const auto& v : pvars) {
        SignalSpace s({v}, horizon);
        p.plant.subsystems.push_back(random_behaviour(s, uniform_real(rng, 0.5, 1.0), rng));
        all_p.push_back(v);
    }
    const SignalSpace wp(all_p, horizon);
    p.plant.network.behaviour =
        n_plant > 1 && coin(rng, 0.7) ? random_behaviour(wp, uniform_real(rng, cfg.min_density, cfg.max_density), rng)
                                      : full_space(wp);

    const std::size_t n_blocks = cfg.tiny ? 1 : uniform(rng, 1, cfg.max_controller_blocks);
    const auto cvars = random_variables("c", n_blocks, cfg.tiny ? 2 : alpha, rng);
    const SignalSpace wc(cvars, horizon);
    for (const auto& v : cvars) p.controller_partition.push_back({v.name()});

    p.spec = random_behaviour(wp, uniform_real(rng, cfg.min_density, cfg.max_density), rng);
    p.controller_network = n_blocks > 1 && coin(rng, 0.5) ? random_behaviour(wc, uniform_real(rng, 0.6, 1.0), rng)
                                                           : full_space(wc);
    p.restriction = coin(rng, 0.5) ? random_behaviour(wc, uniform_real(rng, 0.6, 1.0), rng) : full_space(wc);

    switch (static_cast<NetworkShape>(uniform(rng, 0, 2))) {
        case NetworkShape::Relation:
            p.plant_controller_network =
                random_behaviour(joint_space(wp, wc), uniform_real(rng, cfg.min_density, cfg.max_density), rng);
            break;
        case NetworkShape::PlantToController:
            p.plant_controller_network = random_function(wp, wc, coin(rng, 0.5) ? 0.2 : 0.0, rng);
            break;
        case NetworkShape::ControllerToPlant:
            p.plant_controller_network = random_function(wc, wp, coin(rng, 0.5) ? 0.2 : 0.0, rng);
            break;
    }
    if (coin(rng, cfg.free_var_probability)) p.free_vars.insert(pvars[uniform(rng, 0, pvars.size() - 1)].name());
    return p;
}

std::size_t candidate_rows(const SynthesisProblem& p) {
    return intersect(p.controller_network, p.restriction).size();
}

}  // namespace

std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index) { return splitmix64(seed ^ splitmix64(index)); }

Behaviour random_behaviour(const SignalSpace& space, double density, Rng& rng) {
    const Behaviour full = full_space(space);
    const auto threshold = static_cast<std::uint64_t>(density * 1000000.0);
    std::vector<Code> codes;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < full.size(); ++i) {
        if (rng() % 1000000ULL >= threshold) continue;
        const auto r = full.row(i);
        codes.insert(codes.end(), r.begin(), r.end());
        ++rows;
    }
    return Behaviour::from_codes(space, std::move(codes), rows);
}

std::vector<SignalVariable> random_variables(const std::string& prefix, std::size_t count, std::size_t max_alphabet,
                                             Rng& rng) {
    std::vector<SignalVariable> out;
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t k = uniform(rng, 2, std::max<std::size_t>(2, max_alphabet));
        std::vector<Symbol> alphabet;
        for (std::size_t s = 0; s < k; ++s) alphabet.emplace_back(static_cast<std::int64_t>(s));
        out.emplace_back(prefix + std::to_string(i), std::move(alphabet));
    }
    return out;
}

InterconnectedSystem random_system(const GeneratorConfig& cfg, Rng& rng) {
    const std::size_t n = uniform(rng, cfg.min_subsystems, cfg.max_subsystems);
    const int horizon = static_cast<int>(uniform(rng, 1, static_cast<std::size_t>(cfg.max_horizon)));
    InterconnectedSystem sys;
    std::vector<SignalVariable> all;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t nv = uniform(rng, 1, cfg.max_vars_per_subsystem);
        auto vars = random_variables("w" + std::to_string(i) + "_", nv, cfg.max_alphabet, rng);
        all.insert(all.end(), vars.begin(), vars.end());
        sys.subsystems.push_back(
            random_behaviour(SignalSpace(std::move(vars), horizon), uniform_real(rng, cfg.min_density, 1.0), rng));
    }
    sys.network.behaviour = random_behaviour(SignalSpace(std::move(all), horizon),
                                             uniform_real(rng, cfg.min_density, cfg.max_density), rng);
    return sys;
}

SynthesisProblem random_problem(const ProblemConfig& cfg, Rng& rng) {
    while (true) {
        SynthesisProblem p = draw_problem(cfg, rng);
        if (!cfg.tiny) return p;
        if (compose(p.plant).size() <= 6 && candidate_rows(p) <= 8) return p;
    }
}

}  // namespace behave::gen
