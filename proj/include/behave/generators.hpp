#pragma once

#include <behave/behaviour.hpp>
#include <behave/interconnect.hpp>
#include <behave/synthesis.hpp>

#include <cstdint>
#include <random>

// Seeded random instances for the property suite and the acceptance tests.
namespace behave::gen {

using Rng = std::mt19937_64;

// Independent, reproducible per-case seed derived from a run seed.
std::uint64_t case_seed(std::uint64_t seed, std::uint64_t index);

// Each row of the full space is kept with probability `density`.
Behaviour random_behaviour(const SignalSpace& space, double density, Rng& rng);

// Variables named `prefix0`, `prefix1`, ... with alphabets {0..k-1}, 2 <= k <= max_alphabet.
std::vector<SignalVariable> random_variables(const std::string& prefix, std::size_t count, std::size_t max_alphabet,
                                             Rng& rng);

struct GeneratorConfig {
    std::size_t min_subsystems = 2;
    std::size_t max_subsystems = 3;
    std::size_t max_alphabet = 3;
    int max_horizon = 2;
    std::size_t max_vars_per_subsystem = 1;
    double min_density = 0.3;
    double max_density = 0.9;
};

InterconnectedSystem random_system(const GeneratorConfig& cfg, Rng& rng);

enum class NetworkShape { Relation, PlantToController, ControllerToPlant };

struct ProblemConfig {
    int max_horizon = 2;
    std::size_t max_plant_subsystems = 2;
    std::size_t max_alphabet = 3;
    std::size_t max_controller_blocks = 2;
    double free_var_probability = 0.3;
    double min_density = 0.3;
    double max_density = 0.9;
    // ≤ 6 plant rows, ≤ 8 candidate controller rows, a single controller block.
    bool tiny = false;
};

SynthesisProblem random_problem(const ProblemConfig& cfg, Rng& rng);

}  // namespace behave::gen
