#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mstat {

/// Exact rational number in lowest terms (denominator > 0).
using Rational = mpq_class;
using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;

/// Parses "p", "p/q", or a finite decimal such as "-0.25". Throws ParseError.
Rational parse_rational(std::string_view text);
/// Parses a comma separated list of rationals.
Vec parse_vector(std::string_view csv);

std::string to_string(const Rational& q);
std::string to_string(const Vec& v);

Vec zeros(std::size_t n);
Vec unit(std::size_t n, std::size_t i);
Rational dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec neg(const Vec& a);
Vec scale(const Rational& s, const Vec& a);
bool is_zero(const Vec& v);
Vec concat(const Vec& a, const Vec& b);
Vec slice(const Vec& v, std::size_t offset, std::size_t len);

Mat identity(std::size_t n);
Mat zero_matrix(std::size_t rows, std::size_t cols);
Mat transpose(const Mat& m, std::size_t cols);
Vec mat_vec(const Mat& m, const Vec& x);
Mat mat_mul(const Mat& a, const Mat& b, std::size_t inner, std::size_t cols);

/// Rank of a matrix (exact Gaussian elimination).
std::size_t rank(Mat m);

/// Basis of {x : m x = 0}, each vector of length cols.
std::vector<Vec> null_space(const Mat& m, std::size_t cols);

}  // namespace mstat
