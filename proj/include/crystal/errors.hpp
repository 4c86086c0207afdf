#pragma once

#include <stdexcept>
#include <string>

namespace crystal {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct division_by_zero : error {
    division_by_zero() : error("division by zero") {}
    explicit division_by_zero(const std::string& what) : error(what) {}
};

struct zero_leading_term : error {
    zero_leading_term() : error("series has no invertible leading term at working precision") {}
};

struct domain_error : error {
    using error::error;
};

struct non_terminating : error {
    non_terminating() : error("factor stream orders do not increase; product would not terminate") {}
};

struct window_overflow : error {
    explicit window_overflow(const std::string& what) : error(what) {}
};

struct window_mismatch : error {
    window_mismatch() : error("window matrices have incompatible index ranges") {}
};

struct empty_trusted_core : error {
    empty_trusted_core() : error("guard accounting left no trusted core") {}
};

struct invalid_triple : error {
    invalid_triple() : error("tableau shapes do not match the partition of the triple") {}
};

struct zero_pivot : error {
    long long row;
    explicit zero_pivot(long long r)
        : error("zero pivot at row " + std::to_string(r) +
                "; factorization leaves its domain at this site"),
          row(r) {}
};

struct degenerate_column : error {
    explicit degenerate_column(const std::string& what) : error(what) {}
};

struct residual_nonzero : error {
    explicit residual_nonzero(const std::string& what) : error(what) {}
};

} // namespace crystal
