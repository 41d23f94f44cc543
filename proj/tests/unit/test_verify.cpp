#include "support.hpp"

#include <behave/generators.hpp>
#include <behave/interconnect.hpp>
#include <behave/property_suite.hpp>
#include <behave/set_algebra.hpp>
#include <behave/verify.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace behave;
using namespace behave::test;

namespace {

const SignalVariable p = var("p", {0, 1});
const SignalVariable c = var("c", {0, 1});

SynthesisProblem equality_problem() {
    SynthesisProblem prob;
    prob.plant.subsystems = {full({p})};
    prob.plant.network.behaviour = full({p});
    prob.spec = rows({p}, {{0}});
    prob.controller_network = full({c});
    prob.restriction = full({c});
    prob.plant_controller_network = rows({p, c}, {{0, 0}, {1, 1}});
    prob.controller_partition = {{"c"}};
    return prob;
}

Behaviour broken_intersect(const Behaviour& a, const Behaviour& b) { return unite(a, b); }

}  // namespace

TEST_CASE("brute composition agrees with the filtered join") {
    gen::GeneratorConfig cfg;
    for (std::uint64_t i = 0; i < 100; ++i) {
        gen::Rng rng(gen::case_seed(3, i));
        const auto sys = gen::random_system(cfg, rng);
        CHECK(verify::brute_compose(sys) == compose(sys));
    }
}

TEST_CASE("implementing a controller on the equality link") {
    const auto prob = equality_problem();
    const Behaviour plant = full({p});
    CHECK(verify::implement(plant, {rows({c}, {{0}})}, prob.controller_network, prob.plant_controller_network) ==
          rows({p}, {{0}}));
    CHECK(verify::implement(plant, {full({c})}, prob.controller_network, prob.plant_controller_network) == plant);
    CHECK(verify::implement(plant, {Behaviour(SignalSpace({c}, 1))}, prob.controller_network,
                            prob.plant_controller_network)
              .empty());
}

TEST_CASE("problem conditions report each violated requirement") {
    auto prob = equality_problem();
    const auto good = verify::check_problem1(rows({p}, {{0}}), rows({c}, {{0}}), prob);
    CHECK(good.ok());
    CHECK(good.no_free_vars);

    const auto bad = verify::check_problem1(full({p}), full({c}), prob);
    CHECK_FALSE(bad.within_spec);
    CHECK(bad.spec_witness == rows({p}, {{1}}));
    CHECK_FALSE(bad.ok());

    prob.restriction = rows({c}, {{1}});
    const auto outside = verify::check_problem1(rows({p}, {{0}}), rows({c}, {{0}}), prob);
    CHECK_FALSE(outside.within_restriction);
    CHECK(outside.restriction_witness == rows({c}, {{0}}));

    prob = equality_problem();
    const auto empty = verify::check_problem1(Behaviour(SignalSpace({p}, 1)), Behaviour(SignalSpace({c}, 1)), prob);
    CHECK_FALSE(empty.nonempty);
    CHECK_FALSE(empty.ok());
    CHECK(empty.ok(true));
}

TEST_CASE("freeness is checked against the achieved behaviour") {
    const auto d = var("d", {0, 1});
    SynthesisProblem prob;
    prob.plant.subsystems = {full({p, d})};
    prob.plant.network.behaviour = full({p, d});
    prob.spec = full({p, d});
    prob.controller_network = full({c});
    prob.restriction = full({c});
    prob.plant_controller_network = full({p, d, c});
    prob.controller_partition = {{"c"}};
    prob.free_vars = {"d"};
    const auto r = verify::check_problem1(rows({p, d}, {{0, 0}}), full({c}), prob);
    CHECK_FALSE(r.free_preserved);
    CHECK(r.freeness_witness == rows({d}, {{1}}));
    CHECK(verify::check_problem1(rows({p, d}, {{0, 0}, {1, 1}}), full({c}), prob).ok());
}

TEST_CASE("the exhaustive search finds the equality-link controller") {
    const auto prob = equality_problem();
    CHECK(verify::oracle_search_size(prob) == std::optional<std::uint64_t>(4));
    const auto sol = verify::exhaustive_necessity_oracle(prob);
    REQUIRE(sol.has_value());
    REQUIRE(sol->controllers.size() == 1);
    CHECK(sol->controllers[0] == rows({c}, {{0}}));
    CHECK(sol->achieved == rows({p}, {{0}}));
}

TEST_CASE("the exhaustive search reports failure and respects its caps") {
    auto prob = equality_problem();
    prob.plant_controller_network = full({p, c});  // the controller cannot steer p
    CHECK_FALSE(verify::exhaustive_necessity_oracle(prob).has_value());

    verify::OracleCaps caps;
    caps.max_candidates_per_block = 1;
    try {
        (void)verify::exhaustive_necessity_oracle(prob, caps);
        FAIL("cap ignored");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SearchSpaceTooLarge);
    }
    caps = {};
    caps.max_combinations = 2;
    CHECK_THROWS_AS(verify::exhaustive_necessity_oracle(prob, caps), Error);
}

TEST_CASE("the property suite is deterministic") {
    verify::SuiteConfig cfg;
    cfg.seed = 5;
    cfg.cases = 40;
    const auto a = verify::run_property_suite(cfg);
    const auto b = verify::run_property_suite(cfg);
    CHECK(a.text() == b.text());
    cfg.seed = 6;
    CHECK(verify::run_property_suite(cfg).text() != a.text());
}

TEST_CASE("the property suite notices a broken intersection") {
    verify::SuiteConfig cfg;
    cfg.cases = 200;
    cfg.interconnect = false;
    cfg.synthesis = false;
    const auto clean = verify::run_property_suite(cfg);
    CHECK(clean.failures() == 0);
    cfg.ops.intersect = &broken_intersect;
    const auto mutated = verify::run_property_suite(cfg);
    CHECK(mutated.failures() > 0);
    const auto* tally = mutated.find("subset_equivalences");
    REQUIRE(tally != nullptr);
    CHECK(tally->failed > 0);
    CHECK_FALSE(tally->counterexample.empty());
}
