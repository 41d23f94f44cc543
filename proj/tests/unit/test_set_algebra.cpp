#include "support.hpp"

#include <behave/set_algebra.hpp>

#include <functional>

#include <catch2/catch_amalgamated.hpp>

using namespace behave;
using namespace behave::test;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InternalInconsistency;
}

const SignalVariable a = var("a", {0, 1});
const SignalVariable b = var("b", {0, 1});

}  // namespace

TEST_CASE("product of singletons and of two-row sets") {
    const Behaviour p = product(rows({a}, {{0}}), rows({b}, {{1}}));
    CHECK(p == rows({a, b}, {{0, 1}}));
    CHECK(product(full({a}), full({b})).size() == 4);
    CHECK(product(full({a}), Behaviour(SignalSpace({b}, 1))).empty());
    CHECK(product(full({b}), full({a})) == product(full({a}), full({b})));
}

TEST_CASE("product rejects shared names and differing horizons") {
    CHECK(kind_of([] { (void)product(full({a}), full({a})); }) == ErrorKind::VariableClash);
    CHECK(kind_of([] { (void)product(full({a}, 1), full({b}, 2)); }) == ErrorKind::HorizonMismatch);
    ScopedEnumerationCap cap(3);
    CHECK(kind_of([] { (void)product(full({a}), full({b})); }) == ErrorKind::EnumerationCapExceeded);
}

TEST_CASE("union, intersection and difference on canonical rows") {
    const Behaviour x = rows({a, b}, {{0, 0}});
    const Behaviour y = rows({a, b}, {{1, 1}});
    CHECK(unite(x, y) == rows({a, b}, {{0, 0}, {1, 1}}));
    CHECK(intersect(x, y).empty());
    CHECK(difference(unite(x, y), y) == x);
    CHECK(kind_of([&] { (void)unite(x, full({a})); }) == ErrorKind::SchemaMismatch);
    CHECK(kind_of([&] { (void)intersect(full({a}), full({var("a", {0, 1, 2})})); }) == ErrorKind::SchemaMismatch);
}

TEST_CASE("difference is empty exactly for subsets") {
    const Behaviour x = rows({a, b}, {{0, 0}, {0, 1}});
    const Behaviour y = rows({a, b}, {{0, 0}, {0, 1}, {1, 1}});
    CHECK(difference(x, y).empty());
    CHECK(is_subset(x, y));
    CHECK_FALSE(difference(y, x).empty());
    CHECK_FALSE(is_subset(y, x));
}

TEST_CASE("projection reads off components") {
    const Behaviour x = rows({a, b}, {{0, 0}, {0, 1}, {1, 1}});
    CHECK(project(x, {"a"}) == rows({a}, {{0}, {1}}));
    CHECK(project(x, {"b"}) == rows({b}, {{0}, {1}}));
    CHECK(project(x, {"a", "b"}) == x);
    CHECK(project(x, {}) == Behaviour::unit(1));
    CHECK(project(Behaviour(x.space()), {}).empty());
    CHECK(kind_of([&] { (void)project(x, {"zz"}); }) == ErrorKind::UnknownVariable);
}

TEST_CASE("freeness compares cardinalities") {
    CHECK(is_free(full({a, b}), {"a"}));
    CHECK_FALSE(is_free(rows({a, b}, {{0, 0}}), {"a"}));
    const auto d = var("d", {0, 1});
    const auto y = var("y", {0, 1});
    CHECK(is_free(rows({d, y}, {{0, 0}, {0, 1}, {1, 0}}), {"d"}));
    CHECK(is_free(rows({d, y}, {{0, 0}}), {}));
    CHECK_FALSE(is_free(Behaviour(SignalSpace({d, y}, 1)), {}));
}

TEST_CASE("missing trajectories witness a freeness failure") {
    const auto d = var("d", {0, 1});
    const auto y = var("y", {0, 1});
    const Behaviour x = rows({d, y}, {{0, 0}, {0, 1}});
    CHECK(missing_trajectories(x, {"d"}, 16) == rows({d}, {{1}}));
    CHECK(missing_trajectories(full({d, y}), {"d"}, 16).empty());
    CHECK(missing_trajectories(rows({d}, {{0, 0}}, 2), {"d"}, 2).size() == 2);
}

TEST_CASE("observability groups rows by the observed side") {
    const auto w1 = var("w1", {0, 1});
    const auto w2 = var("w2", {0, 1});
    CHECK(is_observable(rows({w1, w2}, {{0, 0}, {1, 1}}), {"w1"}, {"w2"}));
    CHECK_FALSE(is_observable(rows({w1, w2}, {{0, 0}, {1, 0}}), {"w1"}, {"w2"}));
    // Two w2 values may share one w1 value.
    CHECK(is_observable(rows({w1, w2}, {{0, 0}, {0, 1}}), {"w1"}, {"w2"}));
    CHECK(kind_of([&] { (void)is_observable(full({w1, w2}), {"w1"}, {"w1"}); }) == ErrorKind::OverlapError);
    CHECK(kind_of([&] { (void)is_observable(full({w1, w2}), {"w1"}, {"zz"}); }) == ErrorKind::UnknownVariable);
}

TEST_CASE("projection of an intersection can be strictly smaller") {
    const auto w1 = var("w1", {0, 1});
    const auto w2 = var("w2", {0, 1});
    const Behaviour b1 = rows({w1, w2}, {{0, 0}});
    const Behaviour b2 = rows({w1, w2}, {{0, 1}});
    const Behaviour lhs = project(intersect(b1, b2), {"w1"});
    const Behaviour rhs = intersect(project(b1, {"w1"}), project(b2, {"w1"}));
    CHECK(lhs.empty());
    CHECK(rhs == rows({w1}, {{0}}));
    CHECK(is_subset(lhs, rhs));
    CHECK_FALSE(lhs == rhs);
}

TEST_CASE("projection of a difference can be strictly larger") {
    const auto w1 = var("w1", {0, 1});
    const auto w2 = var("w2", {0, 1});
    const Behaviour b1 = rows({w1, w2}, {{0, 0}, {0, 1}});
    const Behaviour b2 = rows({w1, w2}, {{0, 0}});
    const Behaviour lhs = project(difference(b1, b2), {"w1"});
    const Behaviour rhs = difference(project(b1, {"w1"}), project(b2, {"w1"}));
    CHECK(lhs == rows({w1}, {{0}}));
    CHECK(rhs.empty());
    CHECK(is_subset(rhs, lhs));
    CHECK_FALSE(lhs == rhs);
}

TEST_CASE("zero-variable behaviours behave as the one-point set") {
    const Behaviour u = Behaviour::unit(1);
    const Behaviour none(SignalSpace({}, 1));
    CHECK(intersect(u, none).empty());
    CHECK(unite(u, none) == u);
    CHECK(difference(u, none) == u);
    CHECK(product(u, full({a})) == full({a}));
}
