#include <behave/behaviour.hpp>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace behave {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SchemaViolation: return "SchemaViolation";
        case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
        case ErrorKind::HorizonError: return "HorizonError";
        case ErrorKind::VariableClash: return "VariableClash";
        case ErrorKind::HorizonMismatch: return "HorizonMismatch";
        case ErrorKind::SchemaMismatch: return "SchemaMismatch";
        case ErrorKind::UnknownVariable: return "UnknownVariable";
        case ErrorKind::OverlapError: return "OverlapError";
        case ErrorKind::IndexError: return "IndexError";
        case ErrorKind::NotSynthesizable: return "NotSynthesizable";
        case ErrorKind::InternalInconsistency: return "InternalInconsistency";
        case ErrorKind::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case ErrorKind::LengthError: return "LengthError";
        case ErrorKind::UnknownBlock: return "UnknownBlock";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ValidationError: return "ValidationError";
    }
    return "Error";
}

std::string to_string(const Symbol& s) {
    if (const auto* i = std::get_if<std::int64_t>(&s)) return std::to_string(*i);
    return '"' + std::get<std::string>(s) + '"';
}

std::string to_string(const VariableSet& vars) {
    std::string out = "{";
    bool first = true;
    for (const auto& v : vars) {
        if (!first) out += ',';
        out += v;
        first = false;
    }
    return out + "}";
}

namespace {

bool valid_string_symbol(const std::string& s) {
    if (s.empty()) return false;
    return std::none_of(s.begin(), s.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '{' || c == '}' ||
               c == '"' || c == '=';
    });
}

std::atomic<std::size_t> g_cap{1'000'000};

}  // namespace

SignalVariable::SignalVariable(std::string name, std::vector<Symbol> alphabet)
    : name_(std::move(name)), alphabet_(std::move(alphabet)) {
    if (name_.empty()) throw Error(ErrorKind::SchemaViolation, "variable name is empty");
    if (!valid_string_symbol(name_))
        throw Error(ErrorKind::SchemaViolation, "invalid variable name '" + name_ + "'");
    if (alphabet_.empty()) throw Error(ErrorKind::SchemaViolation, "alphabet of '" + name_ + "' is empty");
    if (alphabet_.size() > 0xFFFF)
        throw Error(ErrorKind::SchemaViolation, "alphabet of '" + name_ + "' is too large");
    for (const auto& s : alphabet_) {
        if (const auto* str = std::get_if<std::string>(&s); str && !valid_string_symbol(*str))
            throw Error(ErrorKind::SchemaViolation, "invalid symbol \"" + *str + "\" in '" + name_ + "'");
    }
    std::sort(alphabet_.begin(), alphabet_.end());
    if (std::adjacent_find(alphabet_.begin(), alphabet_.end()) != alphabet_.end())
        throw Error(ErrorKind::SchemaViolation, "duplicate symbol in alphabet of '" + name_ + "'");
}

std::optional<Code> SignalVariable::code_of(const Symbol& s) const {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), s);
    if (it == alphabet_.end() || *it != s) return std::nullopt;
    return static_cast<Code>(it - alphabet_.begin());
}

SignalSpace::SignalSpace(std::vector<SignalVariable> variables, int horizon)
    : vars_(std::move(variables)), horizon_(horizon) {
    if (horizon_ < 1) throw Error(ErrorKind::HorizonError, "horizon must be >= 1");
    std::sort(vars_.begin(), vars_.end(),
              [](const SignalVariable& a, const SignalVariable& b) { return a.name() < b.name(); });
    for (std::size_t i = 1; i < vars_.size(); ++i) {
        if (vars_[i - 1].name() == vars_[i].name())
            throw Error(ErrorKind::VariableClash, "variable '" + vars_[i].name() + "' declared twice");
    }
}

std::optional<std::size_t> SignalSpace::find(std::string_view name) const {
    auto it = std::lower_bound(vars_.begin(), vars_.end(), name,
                               [](const SignalVariable& v, std::string_view n) { return v.name() < n; });
    if (it == vars_.end() || it->name() != name) return std::nullopt;
    return static_cast<std::size_t>(it - vars_.begin());
}

const SignalVariable& SignalSpace::variable(std::string_view name) const {
    auto i = find(name);
    if (!i) throw Error(ErrorKind::UnknownVariable, "no variable '" + std::string(name) + "'");
    return vars_[*i];
}

VariableSet SignalSpace::names() const {
    VariableSet out;
    for (const auto& v : vars_) out.insert(v.name());
    return out;
}

std::optional<std::uint64_t> SignalSpace::cardinality() const {
    std::uint64_t n = 1;
    for (const auto& v : vars_) {
        for (int t = 0; t < horizon_; ++t) {
            if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(v.size()), &n)) return std::nullopt;
        }
    }
    return n;
}

SignalSpace SignalSpace::subspace(const VariableSet& names) const {
    std::vector<SignalVariable> vars;
    vars.reserve(names.size());
    for (const auto& n : names) vars.push_back(variable(n));
    return SignalSpace(std::move(vars), horizon_);
}

bool row_less(std::span<const Code> a, std::span<const Code> b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Behaviour Behaviour::from_codes(SignalSpace space, std::vector<Code> codes, std::size_t rows) {
    const std::size_t w = space.width();
    if (codes.size() != rows * w)
        throw Error(ErrorKind::SchemaViolation, "code buffer does not match row count");
    const int horizon = space.horizon();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t v = 0; v < space.variables().size(); ++v) {
            const auto limit = space.variables()[v].size();
            for (int t = 0; t < horizon; ++t) {
                if (codes[r * w + v * horizon + t] >= limit)
                    throw Error(ErrorKind::SchemaViolation,
                                "symbol code out of range for '" + space.variables()[v].name() + "'");
            }
        }
    }

    Behaviour out(std::move(space));
    if (w == 0) {
        out.rows_ = rows > 0 ? 1 : 0;
        return out;
    }

    std::vector<std::size_t> order(rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    auto row_at = [&](std::size_t i) { return std::span<const Code>(codes.data() + i * w, w); };
    bool sorted = true;
    for (std::size_t i = 1; i < rows && sorted; ++i) sorted = row_less(row_at(i - 1), row_at(i));
    if (sorted) {
        out.data_ = std::move(codes);
        out.rows_ = rows;
        return out;
    }

    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return row_less(row_at(a), row_at(b)); });
    out.data_.reserve(codes.size());
    for (std::size_t k = 0; k < rows; ++k) {
        auto r = row_at(order[k]);
        if (out.rows_ > 0 && std::equal(r.begin(), r.end(), out.data_.end() - static_cast<std::ptrdiff_t>(w)))
            continue;
        out.data_.insert(out.data_.end(), r.begin(), r.end());
        ++out.rows_;
    }
    return out;
}

Behaviour Behaviour::unit(int horizon) {
    Behaviour out(SignalSpace({}, horizon));
    out.rows_ = 1;
    return out;
}

bool Behaviour::contains(std::span<const Code> r) const {
    if (r.size() != width()) return false;
    if (width() == 0) return rows_ > 0;
    std::size_t lo = 0, hi = rows_;
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (row_less(row(mid), r))
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo < rows_ && std::ranges::equal(row(lo), r);
}

Trajectory Behaviour::trajectory(std::size_t i) const {
    if (i >= rows_) throw Error(ErrorKind::IndexError, "row index out of range");
    Trajectory t;
    const auto r = row(i);
    const int horizon = space_.horizon();
    for (std::size_t v = 0; v < space_.variables().size(); ++v) {
        const auto& var = space_.variables()[v];
        auto& seq = t.signals[var.name()];
        for (int k = 0; k < horizon; ++k) seq.push_back(var.symbol(r[v * horizon + k]));
    }
    return t;
}

std::size_t enumeration_cap() { return g_cap.load(std::memory_order_relaxed); }
void set_enumeration_cap(std::size_t cap) { g_cap.store(cap, std::memory_order_relaxed); }

void check_cap(std::uint64_t rows, std::string_view what) {
    if (rows > enumeration_cap()) {
        throw Error(ErrorKind::EnumerationCapExceeded,
                    std::string(what) + " needs " + std::to_string(rows) + " rows, cap is " +
                        std::to_string(enumeration_cap()));
    }
}

Behaviour make_behaviour(SignalSpace space, const std::vector<Trajectory>& rows) {
    const auto& vars = space.variables();
    const int horizon = space.horizon();
    std::vector<Code> codes;
    codes.reserve(rows.size() * space.width());
    for (const auto& tr : rows) {
        if (tr.signals.size() != vars.size())
            throw Error(ErrorKind::SchemaViolation, "row has " + std::to_string(tr.signals.size()) +
                                                        " variables, schema has " + std::to_string(vars.size()));
        for (const auto& var : vars) {
            auto it = tr.signals.find(var.name());
            if (it == tr.signals.end())
                throw Error(ErrorKind::SchemaViolation, "row is missing variable '" + var.name() + "'");
            if (it->second.size() != static_cast<std::size_t>(horizon))
                throw Error(ErrorKind::SchemaViolation, "sequence of '" + var.name() + "' has length " +
                                                            std::to_string(it->second.size()) + ", horizon is " +
                                                            std::to_string(horizon));
            for (const auto& s : it->second) {
                auto c = var.code_of(s);
                if (!c)
                    throw Error(ErrorKind::SchemaViolation,
                                "symbol " + to_string(s) + " is not in the alphabet of '" + var.name() + "'");
                codes.push_back(*c);
            }
        }
    }
    return Behaviour::from_codes(std::move(space), std::move(codes), rows.size());
}

Behaviour full_space(const SignalSpace& space) {
    auto card = space.cardinality();
    if (!card) throw Error(ErrorKind::EnumerationCapExceeded, "full space cardinality overflows 64 bits");
    check_cap(*card, "full space");

    const std::size_t w = space.width();
    std::vector<Code> radix(w);
    for (std::size_t v = 0; v < space.variables().size(); ++v)
        for (int t = 0; t < space.horizon(); ++t)
            radix[v * space.horizon() + t] = static_cast<Code>(space.variables()[v].size());

    std::vector<Code> codes;
    codes.reserve(static_cast<std::size_t>(*card) * w);
    std::vector<Code> digit(w, 0);
    for (std::uint64_t n = 0; n < *card; ++n) {
        codes.insert(codes.end(), digit.begin(), digit.end());
        for (std::size_t k = w; k-- > 0;) {
            if (++digit[k] < radix[k]) break;
            digit[k] = 0;
        }
    }
    return Behaviour::from_codes(space, std::move(codes), static_cast<std::size_t>(*card));
}

Behaviour restrict(const Behaviour& b, int horizon) {
    const int old_h = b.space().horizon();
    if (horizon < 1 || horizon > old_h)
        throw Error(ErrorKind::HorizonError,
                    "cannot restrict horizon " + std::to_string(old_h) + " to " + std::to_string(horizon));
    SignalSpace space(b.space().variables(), horizon);
    const std::size_t nv = space.variables().size();
    std::vector<Code> codes;
    codes.reserve(b.size() * space.width());
    for (auto r : b.rows()) {
        for (std::size_t v = 0; v < nv; ++v) {
            auto first = r.begin() + static_cast<std::ptrdiff_t>(v * old_h);
            codes.insert(codes.end(), first, first + horizon);
        }
    }
    return Behaviour::from_codes(std::move(space), std::move(codes), b.size());
}

std::string to_text(const Behaviour& b) {
    std::ostringstream out;
    const auto& space = b.space();
    const int horizon = space.horizon();
    out << "behaviour T=" << horizon;
    for (const auto& v : space.variables()) {
        out << ' ' << v.name() << ":{";
        for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << to_string(v.alphabet()[k]);
        out << '}';
    }
    out << " rows=" << b.size() << '\n';
    for (auto r : b.rows()) {
        if (space.variables().empty()) {
            out << "()\n";
            continue;
        }
        for (std::size_t v = 0; v < space.variables().size(); ++v) {
            const auto& var = space.variables()[v];
            out << (v ? " " : "") << var.name() << '=';
            for (int t = 0; t < horizon; ++t) out << (t ? "," : "") << to_string(var.symbol(r[v * horizon + t]));
        }
        out << '\n';
    }
    return out.str();
}

namespace {

[[noreturn]] void text_error(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

Symbol parse_symbol(std::string_view tok) {
    if (tok.size() >= 2 && tok.front() == '"' && tok.back() == '"') return std::string(tok.substr(1, tok.size() - 2));
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) text_error("bad symbol '" + std::string(tok) + "'");
    return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

}  // namespace

Behaviour from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) text_error("missing header");
    std::istringstream header(line);
    std::string tok;
    header >> tok;
    if (tok != "behaviour") text_error("header must start with 'behaviour'");
    header >> tok;
    if (tok.rfind("T=", 0) != 0) text_error("missing horizon");
    const int horizon = std::stoi(tok.substr(2));
    std::vector<SignalVariable> vars;
    std::size_t expected_rows = 0;
    while (header >> tok) {
        if (tok.rfind("rows=", 0) == 0) {
            expected_rows = std::stoul(tok.substr(5));
            continue;
        }
        auto colon = tok.find(':');
        if (colon == std::string::npos || tok.size() < colon + 3 || tok[colon + 1] != '{' || tok.back() != '}')
            text_error("bad variable declaration '" + tok + "'");
        std::vector<Symbol> alphabet;
        for (auto s : split(std::string_view(tok).substr(colon + 2, tok.size() - colon - 3), ','))
            alphabet.push_back(parse_symbol(s));
        vars.emplace_back(tok.substr(0, colon), std::move(alphabet));
    }
    SignalSpace space(std::move(vars), horizon);

    std::vector<Trajectory> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        Trajectory tr;
        if (line != "()") {
            std::istringstream fields(line);
            while (fields >> tok) {
                auto eq = tok.find('=');
                if (eq == std::string::npos) text_error("bad row field '" + tok + "'");
                auto& seq = tr.signals[tok.substr(0, eq)];
                for (auto s : split(std::string_view(tok).substr(eq + 1), ',')) seq.push_back(parse_symbol(s));
            }
        }
        rows.push_back(std::move(tr));
    }
    if (rows.size() != expected_rows) text_error("row count does not match header");
    return make_behaviour(std::move(space), rows);
}

}  // namespace behave
