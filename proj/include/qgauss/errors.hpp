#pragma once

#include <stdexcept>
#include <string>

namespace qg {

// Exit codes used by the CLI; library errors map onto these.
enum class exit_code : int {
    ok = 0,
    verification_failure = 1,
    usage_error = 2,
    budget_exceeded = 3,
};

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

struct parse_error : error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct division_by_zero : error {
    division_by_zero() : error("division by zero") {}
};

struct pole_error : error {
    explicit pole_error(const std::string& where)
        : error("denominator vanishes at " + where) {}
};

struct zero_substitution_error : error {
    zero_substitution_error()
        : error("cannot substitute s = 0 into a negative power of s") {}
};

struct budget_exceeded : error {
    explicit budget_exceeded(const std::string& what_budget)
        : error("budget exceeded: " + what_budget) {}
};

struct localization_error : error {
    explicit localization_error(const std::string& msg) : error(msg) {}
};

struct preset_error : error {
    explicit preset_error(const std::string& msg) : error(msg) {}
};

struct dimension_error : error {
    explicit dimension_error(const std::string& msg) : error(msg) {}
};

}  // namespace qg
