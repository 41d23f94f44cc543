#include <behave/hankel.hpp>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace behave::lti {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

Integer parse_integer(std::string_view s, std::string_view whole) {
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) digits.remove_prefix(1);
    if (!all_digits(digits)) throw Error(ErrorKind::ParseError, "not a rational number: '" + std::string(whole) + "'");
    const Integer v{std::string(digits)};
    return !s.empty() && s.front() == '-' ? Integer(-v) : v;
}

// Integer rows with the same row space as m: each row times the lcm of its denominators.
std::vector<std::vector<Integer>> integer_rows(const RationalMatrix& m, Rational& scale) {
    scale = 1;
    std::vector<std::vector<Integer>> out(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Integer l = 1;
        for (std::size_t c = 0; c < m.cols(); ++c) l = boost::multiprecision::lcm(l, denominator(m(r, c)));
        for (std::size_t c = 0; c < m.cols(); ++c) out[r][c] = numerator(m(r, c)) * (l / denominator(m(r, c)));
        scale *= Rational(l);
    }
    return out;
}

struct Elimination {
    std::size_t rank = 0;
    int sign = 1;
    Integer last_pivot = 1;
};

// Fraction-free (Bareiss) row echelon form; every division below is exact.
Elimination bareiss(std::vector<std::vector<Integer>>& a, std::size_t cols) {
    Elimination e;
    const std::size_t rows = a.size();
    Integer prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        if (p != r) {
            std::swap(a[p], a[r]);
            e.sign = -e.sign;
        }
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    e.rank = r;
    e.last_pivot = prev;
    return e;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
    const Integer num = parse_integer(text.substr(0, slash), text);
    const std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw Error(ErrorKind::ParseError, "bad denominator in '" + std::string(text) + "'");
    const Integer den(std::string{den_text});
    if (den == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& r) { return r.str(); }

RationalMatrix RationalMatrix::from_rows(const std::vector<std::vector<Rational>>& rows) {
    const std::size_t cols = rows.empty() ? 0 : rows.front().size();
    RationalMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw Error(ErrorKind::DimensionMismatch, "row " + std::to_string(r) + " has " +
                                                          std::to_string(rows[r].size()) + " entries, expected " +
                                                          std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

std::vector<Rational> RationalMatrix::column(std::size_t c) const {
    std::vector<Rational> out;
    out.reserve(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out.push_back((*this)(r, c));
    return out;
}

RationalMatrix RationalMatrix::select_rows(const std::vector<std::size_t>& rows) const {
    RationalMatrix m(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(rows[i], c);
    return m;
}

RealTrajectory::RealTrajectory(std::vector<std::size_t> block_sizes, std::vector<std::vector<Rational>> samples)
    : block_sizes_(std::move(block_sizes)), samples_(std::move(samples)) {
    if (block_sizes_.empty()) throw Error(ErrorKind::ValidationError, "trajectory needs at least one block");
    for (std::size_t s : block_sizes_) {
        if (s == 0) throw Error(ErrorKind::ValidationError, "block sizes must be positive");
        dimension_ += s;
    }
    if (samples_.empty()) throw Error(ErrorKind::ValidationError, "trajectory length must be at least 1");
    for (std::size_t t = 0; t < samples_.size(); ++t) {
        if (samples_[t].size() != dimension_)
            throw Error(ErrorKind::ValidationError, "sample " + std::to_string(t) + " has " +
                                                        std::to_string(samples_[t].size()) + " entries, expected " +
                                                        std::to_string(dimension_));
    }
}

std::size_t RealTrajectory::block_offset(std::size_t block) const {
    if (block >= block_sizes_.size())
        throw Error(ErrorKind::UnknownBlock, "block " + std::to_string(block) + " does not exist (" +
                                                 std::to_string(block_sizes_.size()) + " blocks)");
    std::size_t off = 0;
    for (std::size_t b = 0; b < block; ++b) off += block_sizes_[b];
    return off;
}

std::vector<Rational> RealTrajectory::window(std::size_t start, std::size_t L) const {
    if (L == 0 || start + L > length())
        throw Error(ErrorKind::LengthError, "window [" + std::to_string(start) + ", " + std::to_string(start + L) +
                                                ") exceeds trajectory length " + std::to_string(length()));
    std::vector<Rational> out;
    out.reserve(L * dimension_);
    for (std::size_t k = 0; k < L; ++k) out.insert(out.end(), samples_[start + k].begin(), samples_[start + k].end());
    return out;
}

RealTrajectory parse_trajectory(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::size_t> blocks;
    std::vector<std::vector<Rational>> samples;
    std::size_t lineno = 0;
    bool have_header = false;
    for (std::string line; std::getline(in, line);) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        std::vector<std::string> tokens;
        for (std::string tok; fields >> tok;) tokens.push_back(tok);
        try {
            if (!have_header) {
                for (const auto& tok : tokens) {
                    if (!all_digits(tok) || tok.size() > 9 || std::stoul(tok) == 0)
                        throw Error(ErrorKind::ParseError, "block size '" + tok + "' is not a positive integer");
                    blocks.push_back(std::stoul(tok));
                }
                have_header = true;
                continue;
            }
            std::vector<Rational> sample;
            for (const auto& tok : tokens) sample.push_back(parse_rational(tok));
            samples.push_back(std::move(sample));
        } catch (const Error& e) {
            throw Error(ErrorKind::ParseError, "line " + std::to_string(lineno) + ": " + e.detail());
        }
    }
    if (!have_header) throw Error(ErrorKind::ParseError, "missing block-size header line");
    try {
        return RealTrajectory(std::move(blocks), std::move(samples));
    } catch (const Error& e) {
        throw Error(ErrorKind::ParseError, e.detail());
    }
}

RationalMatrix hankel(const RealTrajectory& w, std::size_t L) {
    const std::size_t T = w.length();
    if (L == 0 || L > T)
        throw Error(ErrorKind::LengthError,
                    "L = " + std::to_string(L) + " must satisfy 1 <= L <= T = " + std::to_string(T));
    const std::size_t q = w.dimension();
    RationalMatrix H(L * q, T - L + 1);
    for (std::size_t j = 0; j + L <= T; ++j)
        for (std::size_t i = 0; i < L; ++i)
            for (std::size_t k = 0; k < q; ++k) H(i * q + k, j) = w.at(i + j)[k];
    return H;
}

std::size_t rank(const RationalMatrix& m) {
    Rational scale;
    auto a = integer_rows(m, scale);
    return bareiss(a, m.cols()).rank;
}

Rational determinant(const RationalMatrix& m) {
    if (m.rows() != m.cols())
        throw Error(ErrorKind::DimensionMismatch, "determinant of a " + std::to_string(m.rows()) + "x" +
                                                      std::to_string(m.cols()) + " matrix");
    if (m.rows() == 0) return Rational(1);
    Rational scale;
    auto a = integer_rows(m, scale);
    const Elimination e = bareiss(a, m.cols());
    if (e.rank < m.rows()) return Rational(0);
    return Rational(e.sign) * Rational(e.last_pivot) / scale;
}

RationalMatrix free_rows(const RealTrajectory& w, const std::vector<std::size_t>& free_blocks, std::size_t L) {
    std::vector<std::size_t> offsets;
    for (std::size_t b : free_blocks) offsets.push_back(w.block_offset(b));
    const RationalMatrix H = hankel(w, L);
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < L; ++i)
        for (std::size_t n = 0; n < free_blocks.size(); ++n)
            for (std::size_t k = 0; k < w.block_sizes()[free_blocks[n]]; ++k)
                rows.push_back(i * w.dimension() + offsets[n] + k);
    return H.select_rows(rows);
}

bool free_rows_check(const RealTrajectory& w, const std::vector<std::size_t>& free_blocks, std::size_t L) {
    const RationalMatrix sub = free_rows(w, free_blocks, L);
    return rank(sub) == sub.rows();
}

bool in_span(const RationalMatrix& H, const std::vector<Rational>& v) {
    if (v.size() != H.rows())
        throw Error(ErrorKind::DimensionMismatch, "vector has " + std::to_string(v.size()) +
                                                      " entries, matrix has " + std::to_string(H.rows()) + " rows");
    RationalMatrix aug(H.rows(), H.cols() + 1);
    for (std::size_t r = 0; r < H.rows(); ++r) {
        for (std::size_t c = 0; c < H.cols(); ++c) aug(r, c) = H(r, c);
        aug(r, H.cols()) = v[r];
    }
    return rank(aug) == rank(H);
}

}  // namespace behave::lti
