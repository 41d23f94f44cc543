#pragma once

#include <behave/behaviour.hpp>

namespace behave {

// Cartesian product over disjoint variable sets; the result schema is re-sorted
// by name, so product is commutative and associative up to schema equality.
Behaviour product(const Behaviour& a, const Behaviour& b);

// Set operations; both operands must have identical schemas.
Behaviour intersect(const Behaviour& a, const Behaviour& b);
Behaviour unite(const Behaviour& a, const Behaviour& b);
Behaviour difference(const Behaviour& a, const Behaviour& b);

bool is_subset(const Behaviour& a, const Behaviour& b);

/// Projection onto `vars`. Projecting onto the empty set yields the
/// zero-variable behaviour {()} when `b` is nonempty and the empty behaviour
/// otherwise.
Behaviour project(const Behaviour& b, const VariableSet& vars);

// |project(b, vars)| == prod_{v in vars} |alphabet(v)|^T, compared by count.
bool is_free(const Behaviour& b, const VariableSet& vars);

// `target` observable from `from`: every `from` value seen in `b` co-occurs
// with exactly one `target` value.
bool is_observable(const Behaviour& b, const VariableSet& target, const VariableSet& from);

/// Up to `limit` trajectories of the full space over `vars` that are missing
/// from project(b, vars). Never materializes the full space.
Behaviour missing_trajectories(const Behaviour& b, const VariableSet& vars, std::size_t limit);

}  // namespace behave
