#include "support.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace behave;
using namespace behave::test;

TEST_CASE("signal variables sort and validate their alphabet") {
    const SignalVariable v("x", {Symbol(std::int64_t{2}), Symbol(std::int64_t{0}), Symbol(std::string("a"))});
    REQUIRE(v.size() == 3);
    CHECK(v.alphabet()[0] == Symbol(std::int64_t{0}));
    CHECK(v.alphabet()[2] == Symbol(std::string("a")));
    CHECK(v.code_of(Symbol(std::int64_t{2})) == Code{1});
    CHECK_FALSE(v.code_of(Symbol(std::int64_t{7})).has_value());

    CHECK_THROWS_AS(SignalVariable("", {Symbol(std::int64_t{0})}), Error);
    CHECK_THROWS_AS(SignalVariable("x", {}), Error);
    CHECK_THROWS_AS(SignalVariable("x", {Symbol(std::int64_t{0}), Symbol(std::int64_t{0})}), Error);
    CHECK_THROWS_AS(SignalVariable("a b", {Symbol(std::int64_t{0})}), Error);
}

TEST_CASE("signal spaces are keyed by sorted names") {
    const SignalSpace s1({var("b", {0, 1}), var("a", {0, 1, 2})}, 2);
    const SignalSpace s2({var("a", {0, 1, 2}), var("b", {0, 1})}, 2);
    CHECK(s1 == s2);
    CHECK(s1.variables().front().name() == "a");
    CHECK(s1.width() == 4);
    CHECK(s1.cardinality() == std::uint64_t{36});
    CHECK_FALSE(s1 == SignalSpace({var("a", {0, 1, 2}), var("b", {0, 1})}, 1));

    try {
        SignalSpace({var("a", {0})}, 0);
        FAIL("horizon 0 accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::HorizonError);
    }
    try {
        SignalSpace({var("a", {0}), var("a", {1})}, 1);
        FAIL("duplicate accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::VariableClash);
    }
    try {
        (void)s1.variable("zz");
        FAIL("unknown variable accepted");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownVariable);
    }
}

TEST_CASE("behaviours are canonical: sorted and duplicate free") {
    const auto a = var("a", {0, 1});
    const auto b = var("b", {0, 1});
    const Behaviour x = rows({a, b}, {{1, 1}, {0, 1}, {1, 1}, {0, 0}});
    REQUIRE(x.size() == 3);
    CHECK(x.trajectory(0).signals.at("a")[0] == Symbol(std::int64_t{0}));
    CHECK(x.trajectory(0).signals.at("b")[0] == Symbol(std::int64_t{0}));
    // Same rows declared in the other variable order.
    CHECK(x == rows({b, a}, {{0, 0}, {1, 0}, {1, 1}}));
    CHECK(to_text(x) == to_text(rows({b, a}, {{1, 1}, {0, 0}, {1, 0}})));
}

TEST_CASE("the empty behaviour and the unit behaviour") {
    const Behaviour empty(SignalSpace({var("a", {0, 1})}, 1));
    CHECK(empty.empty());
    const Behaviour unit = Behaviour::unit(3);
    CHECK(unit.size() == 1);
    CHECK(unit.width() == 0);
    CHECK(unit.space().horizon() == 3);
}

TEST_CASE("rows outside the alphabet are rejected") {
    Trajectory t;
    t.signals["a"] = {Symbol(std::int64_t{5})};
    CHECK_THROWS_AS(make_behaviour(SignalSpace({var("a", {0, 1})}, 1), {t}), Error);
    Trajectory short_row;
    short_row.signals["a"] = {Symbol(std::int64_t{0})};
    CHECK_THROWS_AS(make_behaviour(SignalSpace({var("a", {0, 1})}, 2), {short_row}), Error);
}

TEST_CASE("full space enumerates every trajectory in canonical order") {
    const Behaviour f = full({var("a", {0, 1}), var("b", {0, 1, 2})}, 2);
    CHECK(f.size() == 36);
    for (std::size_t i = 1; i < f.size(); ++i) CHECK(row_less(f.row(i - 1), f.row(i)));
}

TEST_CASE("the enumeration cap guards materialization") {
    ScopedEnumerationCap cap(10);
    try {
        (void)full({var("a", {0, 1, 2})}, 3);
        FAIL("cap ignored");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EnumerationCapExceeded);
    }
    CHECK(full({var("a", {0, 1, 2})}, 2).size() == 9);
}

TEST_CASE("restriction to a shorter horizon keeps prefixes") {
    const auto a = var("a", {0, 1});
    const Behaviour b = rows({a}, {{0, 1, 1}, {0, 1, 0}, {1, 0, 0}}, 3);
    CHECK(restrict(b, 2) == rows({a}, {{0, 1}, {1, 0}}, 2));
    CHECK_THROWS_AS(restrict(b, 4), Error);
}

TEST_CASE("text form round-trips") {
    const SignalVariable s("s", {Symbol(std::string("lo")), Symbol(std::string("hi"))});
    const auto a = var("a", {-1, 0, 1});
    std::vector<Trajectory> trs(2);
    trs[0].signals = {{"a", {Symbol(std::int64_t{-1}), Symbol(std::int64_t{1})}},
                      {"s", {Symbol(std::string("hi")), Symbol(std::string("lo"))}}};
    trs[1].signals = {{"a", {Symbol(std::int64_t{0}), Symbol(std::int64_t{0})}},
                      {"s", {Symbol(std::string("lo")), Symbol(std::string("lo"))}}};
    const Behaviour b = make_behaviour(SignalSpace({s, a}, 2), trs);
    CHECK(from_text(to_text(b)) == b);
    CHECK(from_text(to_text(Behaviour::unit(2))) == Behaviour::unit(2));
    const Behaviour empty(SignalSpace({a}, 1));
    CHECK(from_text(to_text(empty)) == empty);
    CHECK_THROWS_AS(from_text("not a behaviour"), Error);
}
