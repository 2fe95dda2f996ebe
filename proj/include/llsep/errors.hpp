#pragma once
#include <stdexcept>
#include <string>

namespace llsep {

// Exact-arithmetic layer
struct division_by_zero : std::runtime_error {
    explicit division_by_zero(const std::string& what) : std::runtime_error(what) {}
};
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Preconditions of the symbolic suites
struct precondition_error : std::runtime_error {
    explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// Numeric layer
struct near_pole : std::runtime_error {
    explicit near_pole(const std::string& what) : std::runtime_error(what) {}
};
struct degenerate_roots : std::runtime_error {
    explicit degenerate_roots(const std::string& what) : std::runtime_error(what) {}
};
struct singularity_hit : std::runtime_error {
    explicit singularity_hit(const std::string& what) : std::runtime_error(what) {}
};

} // namespace llsep
