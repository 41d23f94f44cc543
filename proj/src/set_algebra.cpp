#include <behave/set_algebra.hpp>

#include <algorithm>
#include <map>

namespace behave {

namespace {

void require_same_schema(const Behaviour& a, const Behaviour& b, const char* op) {
    if (!(a.space() == b.space()))
        throw Error(ErrorKind::SchemaMismatch, std::string(op) + " needs identical schemas");
}

// Driver columns for `vars` (in sorted order), each variable contributing T codes.
std::vector<std::size_t> columns_of(const SignalSpace& space, const VariableSet& vars) {
    const auto horizon = static_cast<std::size_t>(space.horizon());
    std::vector<std::size_t> cols;
    cols.reserve(vars.size() * horizon);
    for (const auto& name : vars) {
        auto idx = space.find(name);
        if (!idx) throw Error(ErrorKind::UnknownVariable, "no variable '" + name + "' in " + to_string(space.names()));
        for (std::size_t t = 0; t < horizon; ++t) cols.push_back(*idx * horizon + t);
    }
    return cols;
}

enum class Merge { Intersect, Union, Difference };

Behaviour merge(const Behaviour& a, const Behaviour& b, Merge mode) {
    std::vector<Code> codes;
    std::size_t rows = 0;
    auto emit = [&](std::span<const Code> r) {
        codes.insert(codes.end(), r.begin(), r.end());
        ++rows;
    };
    if (a.width() == 0) {
        bool in_a = !a.empty(), in_b = !b.empty();
        bool keep = mode == Merge::Intersect ? (in_a && in_b) : mode == Merge::Union ? (in_a || in_b) : (in_a && !in_b);
        return Behaviour::from_codes(a.space(), {}, keep ? 1 : 0);
    }
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        auto ra = a.row(i), rb = b.row(j);
        if (row_less(ra, rb)) {
            if (mode != Merge::Intersect) emit(ra);
            ++i;
        } else if (row_less(rb, ra)) {
            if (mode == Merge::Union) emit(rb);
            ++j;
        } else {
            if (mode != Merge::Difference) emit(ra);
            ++i;
            ++j;
        }
    }
    if (mode != Merge::Intersect)
        for (; i < a.size(); ++i) emit(a.row(i));
    if (mode == Merge::Union)
        for (; j < b.size(); ++j) emit(b.row(j));
    return Behaviour::from_codes(a.space(), std::move(codes), rows);
}

}  // namespace

Behaviour product(const Behaviour& a, const Behaviour& b) {
    const auto& sa = a.space();
    const auto& sb = b.space();
    if (sa.horizon() != sb.horizon())
        throw Error(ErrorKind::HorizonMismatch, "product of horizons " + std::to_string(sa.horizon()) + " and " +
                                                    std::to_string(sb.horizon()));
    for (const auto& v : sa.variables()) {
        if (sb.find(v.name())) throw Error(ErrorKind::VariableClash, "variable '" + v.name() + "' on both sides");
    }
    std::uint64_t rows = 0;
    if (__builtin_mul_overflow(static_cast<std::uint64_t>(a.size()), static_cast<std::uint64_t>(b.size()), &rows))
        throw Error(ErrorKind::EnumerationCapExceeded, "product size overflows");
    check_cap(rows, "product");

    std::vector<SignalVariable> vars = sa.variables();
    vars.insert(vars.end(), sb.variables().begin(), sb.variables().end());
    SignalSpace space(std::move(vars), sa.horizon());

    // For each output column: (source operand, source column).
    const auto horizon = static_cast<std::size_t>(space.horizon());
    std::vector<std::pair<int, std::size_t>> source;
    source.reserve(space.width());
    for (const auto& v : space.variables()) {
        int side = sa.find(v.name()) ? 0 : 1;
        std::size_t idx = side == 0 ? *sa.find(v.name()) : *sb.find(v.name());
        for (std::size_t t = 0; t < horizon; ++t) source.emplace_back(side, idx * horizon + t);
    }

    std::vector<Code> codes;
    codes.reserve(static_cast<std::size_t>(rows) * space.width());
    for (auto ra : a.rows()) {
        for (auto rb : b.rows()) {
            for (auto [side, col] : source) codes.push_back(side == 0 ? ra[col] : rb[col]);
        }
    }
    return Behaviour::from_codes(std::move(space), std::move(codes), static_cast<std::size_t>(rows));
}

Behaviour intersect(const Behaviour& a, const Behaviour& b) {
    require_same_schema(a, b, "intersect");
    return merge(a, b, Merge::Intersect);
}

Behaviour unite(const Behaviour& a, const Behaviour& b) {
    require_same_schema(a, b, "union");
    return merge(a, b, Merge::Union);
}

Behaviour difference(const Behaviour& a, const Behaviour& b) {
    require_same_schema(a, b, "difference");
    return merge(a, b, Merge::Difference);
}

bool is_subset(const Behaviour& a, const Behaviour& b) {
    require_same_schema(a, b, "subset test");
    if (a.size() > b.size()) return false;
    for (auto r : a.rows())
        if (!b.contains(r)) return false;
    return true;
}

Behaviour project(const Behaviour& b, const VariableSet& vars) {
    const auto cols = columns_of(b.space(), vars);
    SignalSpace space = b.space().subspace(vars);
    if (vars.empty()) return Behaviour::from_codes(std::move(space), {}, b.empty() ? 0 : 1);
    if (vars.size() == b.space().variables().size()) return b;
    std::vector<Code> codes;
    codes.reserve(b.size() * cols.size());
    for (auto r : b.rows())
        for (auto c : cols) codes.push_back(r[c]);
    return Behaviour::from_codes(std::move(space), std::move(codes), b.size());
}

bool is_free(const Behaviour& b, const VariableSet& vars) {
    auto card = b.space().subspace(vars).cardinality();
    if (!card) return false;
    return project(b, vars).size() == *card;
}

bool is_observable(const Behaviour& b, const VariableSet& target, const VariableSet& from) {
    for (const auto& v : target) {
        if (from.count(v)) throw Error(ErrorKind::OverlapError, "variable '" + v + "' on both sides of observability");
    }
    const auto tcols = columns_of(b.space(), target);
    const auto fcols = columns_of(b.space(), from);
    std::map<std::vector<Code>, std::vector<Code>> seen;
    std::vector<Code> key, value;
    for (auto r : b.rows()) {
        key.clear();
        value.clear();
        for (auto c : fcols) key.push_back(r[c]);
        for (auto c : tcols) value.push_back(r[c]);
        auto [it, inserted] = seen.try_emplace(key, value);
        if (!inserted && it->second != value) return false;
    }
    return true;
}

Behaviour missing_trajectories(const Behaviour& b, const VariableSet& vars, std::size_t limit) {
    const Behaviour present = project(b, vars);
    const SignalSpace& space = present.space();
    const std::size_t w = space.width();
    const auto horizon = static_cast<std::size_t>(space.horizon());
    std::vector<Code> radix(w);
    for (std::size_t v = 0; v < space.variables().size(); ++v)
        for (std::size_t t = 0; t < horizon; ++t) radix[v * horizon + t] = static_cast<Code>(space.variables()[v].size());

    std::vector<Code> codes;
    std::size_t rows = 0;
    std::vector<Code> digit(w, 0);
    while (rows < limit) {
        if (!present.contains(digit)) {
            codes.insert(codes.end(), digit.begin(), digit.end());
            ++rows;
        }
        std::size_t k = w;
        while (k-- > 0) {
            if (++digit[k] < radix[k]) break;
            digit[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;  // wrapped around
    }
    return Behaviour::from_codes(space, std::move(codes), rows);
}

}  // namespace behave
