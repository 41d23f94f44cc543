#pragma once

#include <behave/behaviour.hpp>
#include <behave/generators.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace behave::verify {

// The set operations exercised by the algebraic properties. Swapping one out
// is how the suite is checked for sensitivity.
struct SetOps {
    Behaviour (*product)(const Behaviour&, const Behaviour&);
    Behaviour (*intersect)(const Behaviour&, const Behaviour&);
    Behaviour (*unite)(const Behaviour&, const Behaviour&);
    Behaviour (*difference)(const Behaviour&, const Behaviour&);
    Behaviour (*project)(const Behaviour&, const VariableSet&);
};

SetOps library_ops();

struct SuiteSizes {
    std::size_t max_vars = 3;
    std::size_t max_alphabet = 3;
    int max_horizon = 2;
    gen::GeneratorConfig system{};
    gen::ProblemConfig problem{};
    gen::ProblemConfig tiny_problem{.tiny = true};
};

struct SuiteConfig {
    std::uint64_t seed = 1;
    std::size_t cases = 1000;
    SuiteSizes sizes{};
    SetOps ops = library_ops();
    // When nonempty, the first counterexample of each property is written here.
    std::string counterexample_dir;
    bool algebra = true;
    bool interconnect = true;
    bool synthesis = true;
};

struct PropertyTally {
    std::string name;
    std::size_t checked = 0;
    std::size_t failed = 0;
    std::size_t strict = 0;  // only tracked for inclusions: cases where it was proper
    std::size_t first_failing_case = 0;
    std::string counterexample;  // canonical text of the first failure
    std::string counterexample_file;
};

struct SuiteReport {
    std::uint64_t seed = 0;
    std::size_t cases = 0;
    std::vector<PropertyTally> properties;

    std::size_t failures() const;
    const PropertyTally* find(const std::string& name) const;
    // Line-oriented text followed by a one-line JSON trailer. Same seed and
    // config give the same bytes.
    std::string text() const;
};

SuiteReport run_property_suite(const SuiteConfig& config);

}  // namespace behave::verify
