#pragma once

#include <behave/error.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <ranges>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace behave {

// A symbol of a finite alphabet. Integers order before strings.
using Symbol = std::variant<std::int64_t, std::string>;

// Index of a symbol inside its variable's (sorted) alphabet.
using Code = std::uint16_t;

std::string to_string(const Symbol& s);

// Names addressing a subset of a schema's variables (w_f, w_p, w_c, blocks w_c^j).
using VariableSet = std::set<std::string>;

std::string to_string(const VariableSet& vars);

class SignalVariable {
public:
    // Sorts the alphabet; rejects empty names, empty alphabets and duplicate symbols.
    SignalVariable(std::string name, std::vector<Symbol> alphabet);

    const std::string& name() const noexcept { return name_; }
    const std::vector<Symbol>& alphabet() const noexcept { return alphabet_; }
    std::size_t size() const noexcept { return alphabet_.size(); }

    std::optional<Code> code_of(const Symbol& s) const;
    const Symbol& symbol(Code c) const { return alphabet_.at(c); }

    friend bool operator==(const SignalVariable&, const SignalVariable&) = default;

private:
    std::string name_;
    std::vector<Symbol> alphabet_;
};

/// Variable/alphabet/horizon schema of a behaviour. Variables are kept sorted by
/// name, so two schemas with the same content compare equal regardless of the
/// order they were declared in.
class SignalSpace {
public:
    SignalSpace() = default;
    SignalSpace(std::vector<SignalVariable> variables, int horizon);

    const std::vector<SignalVariable>& variables() const noexcept { return vars_; }
    int horizon() const noexcept { return horizon_; }

    // Number of codes in one trajectory tuple: |variables| * T.
    std::size_t width() const noexcept { return vars_.size() * static_cast<std::size_t>(horizon_); }

    std::optional<std::size_t> find(std::string_view name) const;
    const SignalVariable& variable(std::string_view name) const;
    VariableSet names() const;

    // prod_v |alphabet(v)|^T, or nullopt when it does not fit in 64 bits.
    std::optional<std::uint64_t> cardinality() const;

    // Throws UnknownVariable if a name is absent.
    SignalSpace subspace(const VariableSet& names) const;

    friend bool operator==(const SignalSpace&, const SignalSpace&) = default;

private:
    std::vector<SignalVariable> vars_;
    int horizon_ = 1;
};

// One trajectory tuple in user-facing form: variable name -> length-T sequence.
struct Trajectory {
    std::map<std::string, std::vector<Symbol>> signals;

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

/// A finite behaviour: a canonical (sorted, duplicate-free) set of trajectory
/// tuples over a SignalSpace. Rows are stored as flat symbol codes, laid out
/// variable-major (all T codes of the first variable, then the next one), so
/// plain lexicographic order on codes is the canonical row order.
///
/// Immutable once built; every operation returns a new value.
class Behaviour {
public:
    Behaviour() = default;
    explicit Behaviour(SignalSpace space) : space_(std::move(space)) {}

    // Canonicalizes `codes` (row-major, space.width() per row). Codes must be in range.
    static Behaviour from_codes(SignalSpace space, std::vector<Code> codes, std::size_t rows);

    // The zero-variable behaviour holding the single empty tuple.
    static Behaviour unit(int horizon);

    const SignalSpace& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return rows_; }
    bool empty() const noexcept { return rows_ == 0; }
    std::size_t width() const noexcept { return space_.width(); }

    std::span<const Code> row(std::size_t i) const {
        return {data_.data() + i * width(), width()};
    }
    auto rows() const {
        return std::views::iota(std::size_t{0}, rows_) |
               std::views::transform([this](std::size_t i) { return row(i); });
    }
    std::span<const Code> codes() const noexcept { return data_; }

    bool contains(std::span<const Code> r) const;
    Trajectory trajectory(std::size_t i) const;

    friend bool operator==(const Behaviour& a, const Behaviour& b) {
        return a.rows_ == b.rows_ && a.space_ == b.space_ && a.data_ == b.data_;
    }

private:
    SignalSpace space_;
    std::vector<Code> data_;
    std::size_t rows_ = 0;
};

bool row_less(std::span<const Code> a, std::span<const Code> b);

// Global guard on every materialization (default 10^6 rows). Thread-safe.
std::size_t enumeration_cap();
void set_enumeration_cap(std::size_t cap);

class ScopedEnumerationCap {
public:
    explicit ScopedEnumerationCap(std::size_t cap) : previous_(enumeration_cap()) { set_enumeration_cap(cap); }
    ~ScopedEnumerationCap() { set_enumeration_cap(previous_); }
    ScopedEnumerationCap(const ScopedEnumerationCap&) = delete;
    ScopedEnumerationCap& operator=(const ScopedEnumerationCap&) = delete;

private:
    std::size_t previous_;
};

// Throws EnumerationCapExceeded when `rows` is above the cap.
void check_cap(std::uint64_t rows, std::string_view what);

Behaviour make_behaviour(SignalSpace space, const std::vector<Trajectory>& rows);

Behaviour full_space(const SignalSpace& space);

// Prefixes of every row up to `horizon`.
Behaviour restrict(const Behaviour& b, int horizon);

/// Canonical text form: a header line with the schema, then one line per row in
/// canonical order. Equal behaviours serialize to identical strings.
std::string to_text(const Behaviour& b);
Behaviour from_text(std::string_view text);

}  // namespace behave
