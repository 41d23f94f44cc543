#pragma once

#include <behave/behaviour.hpp>
#include <behave/interconnect.hpp>
#include <behave/synthesis.hpp>

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace behave::io {

/// One named behaviour definition of a problem document.
///   rows:     explicit trajectories over `vars`
///   full:     every trajectory over `vars`
///   equality: all of `vars` carry the same sequence (alphabets must agree)
///   union:    union of the behaviours named in `refs` (same schema)
struct BehaviourDef {
    enum class Kind { Rows, Full, Equality, Union };
    Kind kind = Kind::Rows;
    std::vector<std::string> vars;
    std::vector<Trajectory> rows;
    std::vector<std::string> refs;

    friend bool operator==(const BehaviourDef&, const BehaviourDef&) = default;
};

struct SystemDef {
    std::vector<std::string> subsystems;
    std::string network;

    friend bool operator==(const SystemDef&, const SystemDef&) = default;
};

// Either a direct reference, or a raw behaviour lifted through a network.
struct LiftedDef {
    std::string direct;
    std::string raw;
    std::string network;

    bool lifted() const { return direct.empty(); }
    friend bool operator==(const LiftedDef&, const LiftedDef&) = default;
};

struct ProblemDocument {
    int horizon = 1;
    std::vector<SignalVariable> variables;                        // declaration order
    std::vector<std::pair<std::string, BehaviourDef>> behaviours;  // declaration order
    std::optional<SystemDef> plant;
    std::optional<SystemDef> system;
    std::optional<LiftedDef> spec;
    std::optional<LiftedDef> restriction;
    std::optional<std::string> controller_network;
    std::optional<std::string> plant_controller_network;
    std::vector<std::string> free_vars;
    std::vector<std::vector<std::string>> controller_partition;
    std::vector<std::string> controllers;

    friend bool operator==(const ProblemDocument&, const ProblemDocument&) = default;
};

// Throws ParseError (with line or field path) for malformed JSON or wrong field types.
ProblemDocument parse_document(std::string_view text);
ProblemDocument load_document(const std::string& path);

std::string serialize(const ProblemDocument& doc);

// Expands a named definition. Throws ValidationError naming the offending variable or reference.
Behaviour resolve(const ProblemDocument& doc, const std::string& name);

// The `system` section, or the plant when there is none.
InterconnectedSystem to_system(const ProblemDocument& doc);

// Builds and validates the synthesis problem; every failure is a ValidationError.
SynthesisProblem to_problem(const ProblemDocument& doc);

// The behaviours listed under `controllers`, in order.
std::vector<Behaviour> to_controllers(const ProblemDocument& doc);

std::string read_file(const std::string& path);

}  // namespace behave::io
