#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mstat {

/// Inconsistent dimensions or malformed objects.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Desk-scale limits exceeded.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual or JSON input; `where` names the line or field.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& where, const std::string& what)
        : std::runtime_error(where.empty() ? what : where + ": " + what), where_(where) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

namespace limits {
inline constexpr std::size_t max_dim = 32;
inline constexpr std::size_t max_pieces = 1024;
inline constexpr std::size_t max_cells = 50000;
inline constexpr std::size_t max_rows = 4000;
}  // namespace limits

void require_dim(std::size_t dim, const char* what);
void require_pieces(std::size_t pieces, const char* what);

}  // namespace mstat
