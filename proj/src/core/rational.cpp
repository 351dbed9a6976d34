#include "mstat/core/rational.hpp"

#include "mstat/core/errors.hpp"

#include <algorithm>
#include <cctype>

namespace mstat {

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    std::string_view s = trim(text);
    std::string orig(s);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational q;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw ParseError("", "not a rational: '" + orig + "'");
        mpz_class d(std::string(den), 10);
        if (d == 0) throw ParseError("", "zero denominator: '" + orig + "'");
        q = Rational(mpz_class(std::string(num), 10), d);
    } else if (auto dot_pos = s.find('.'); dot_pos != std::string_view::npos) {
        auto ip = s.substr(0, dot_pos);
        auto fp = s.substr(dot_pos + 1);
        if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
            throw ParseError("", "not a rational: '" + orig + "'");
        mpz_class num(std::string(ip.empty() ? "0" : ip) + std::string(fp), 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        q = Rational(num, den);
    } else {
        if (!all_digits(s)) throw ParseError("", "not a rational: '" + orig + "'");
        q = Rational(mpz_class(std::string(s), 10));
    }
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

Vec parse_vector(std::string_view csv) {
    Vec out;
    std::string_view rest = trim(csv);
    if (rest.empty()) return out;
    std::size_t idx = 0;
    while (true) {
        auto comma = rest.find(',');
        auto tok = rest.substr(0, comma);
        try {
            out.push_back(parse_rational(tok));
        } catch (const ParseError& e) {
            throw ParseError("entry " + std::to_string(idx), e.what());
        }
        ++idx;
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }
    return out;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Vec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].get_str();
    }
    return s + ")";
}

Vec zeros(std::size_t n) { return Vec(n, Rational(0)); }

Vec unit(std::size_t n, std::size_t i) {
    Vec v = zeros(n);
    v[i] = 1;
    return v;
}

Rational dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw StructuralError("dot: length mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
    return s;
}

Vec add(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw StructuralError("add: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw StructuralError("sub: length mismatch");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec neg(const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

Vec scale(const Rational& s, const Vec& a) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return sgn(q) == 0; });
}

Vec concat(const Vec& a, const Vec& b) {
    Vec r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Vec slice(const Vec& v, std::size_t offset, std::size_t len) {
    if (offset + len > v.size()) throw StructuralError("slice out of range");
    return Vec(v.begin() + static_cast<std::ptrdiff_t>(offset), v.begin() + static_cast<std::ptrdiff_t>(offset + len));
}

Mat identity(std::size_t n) {
    Mat m = zero_matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

Mat zero_matrix(std::size_t rows, std::size_t cols) { return Mat(rows, zeros(cols)); }

Mat transpose(const Mat& m, std::size_t cols) {
    Mat t = zero_matrix(cols, m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

Vec mat_vec(const Mat& m, const Vec& x) {
    Vec r(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) r[i] = dot(m[i], x);
    return r;
}

Mat mat_mul(const Mat& a, const Mat& b, std::size_t inner, std::size_t cols) {
    Mat r = zero_matrix(a.size(), cols);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k) {
            if (sgn(a[i][k]) == 0) continue;
            for (std::size_t j = 0; j < cols; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Mat& m, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        std::size_t p = row;
        while (p < m.size() && sgn(m[p][c]) == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[row]);
        Rational inv = 1 / m[row][c];
        for (auto& x : m[row]) x *= inv;
        for (std::size_t r = 0; r < m.size(); ++r) {
            if (r == row || sgn(m[r][c]) == 0) continue;
            Rational f = m[r][c];
            for (std::size_t j = 0; j < cols; ++j) m[r][j] -= f * m[row][j];
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(Mat m) {
    if (m.empty()) return 0;
    return rref(m, m.front().size()).size();
}

std::vector<Vec> null_space(const Mat& m, std::size_t cols) {
    Mat r = m;
    auto pivots = rref(r, cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vec v = zeros(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

void require_dim(std::size_t dim, const char* what) {
    if (dim > limits::max_dim)
        throw ResourceLimitError(std::string(what) + ": ambient dimension " + std::to_string(dim) + " exceeds limit " +
                                 std::to_string(limits::max_dim));
}

void require_pieces(std::size_t pieces, const char* what) {
    if (pieces > limits::max_pieces)
        throw ResourceLimitError(std::string(what) + ": " + std::to_string(pieces) + " pieces exceed limit " +
                                 std::to_string(limits::max_pieces));
}

}  // namespace mstat
