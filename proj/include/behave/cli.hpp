#pragma once

#include <behave/synthesis.hpp>
#include <behave/verify.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace behave::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kParse = 2,
    kValidation = 3,
    kLimit = 4,
    kInfeasible = 5,
};

int exit_code_for(ErrorKind kind);

// Canonical text report of a synthesis run, as printed by `behave synthesize`.
std::string synthesis_text(const SynthesisProblem& p, const SynthesisResult& r);
std::string synthesis_json(const SynthesisProblem& p, const SynthesisResult& r);

// Entry point of the `behave` executable; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace behave::cli
