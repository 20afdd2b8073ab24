#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "mkg/rational.hpp"

namespace mkg {

/// Exponent sextuple of a candidate bilinear estimate
///   ||uv||_{H^{-s0,-b0}} <= C ||u||_{H^{s1,b1}} ||v||_{H^{s2,b2}}.
/// Column j is the pair (s_j, b_j); the estimate class is closed under
/// column permutations.
struct ExponentMatrix {
    std::array<Rational, 3> s;
    std::array<Rational, 3> b;
};

enum class Verdict { Product, Rejected, OutOfScope };

struct ConditionCheck {
    std::string id;       ///< C01..C10
    std::string formula;  ///< human-readable inequality
    bool satisfied = false;
    bool strict_required = false;
    std::string note;     ///< which exception forced strictness, if any
};

struct CheckReport {
    Verdict verdict = Verdict::OutOfScope;
    std::array<int, 3> permutation_used{0, 1, 2};
    std::vector<ConditionCheck> conditions;

    /// ids of unsatisfied conditions, comma separated ("" when product).
    std::string failed_ids() const;
};

/// Decides whether the matrix is a product by the ten-inequality rule set
/// with its seven strictness exceptions, in exact arithmetic. Every column
/// permutation that puts a zero b in slot 0 is tried; if none exists the
/// matrix is out of scope for this engine.
CheckReport is_product(const ExponentMatrix& M);

/// Fixture file: one matrix per line, six rationals "s0 s1 s2 b0 b1 b2"
/// ('#' starts a comment). Throws ConfigError with the line number on
/// malformed input.
std::vector<ExponentMatrix> parse_matrix_file(std::istream& in);
ExponentMatrix parse_matrix_line(const std::string& line);
std::string to_string(const ExponentMatrix& M);

} // namespace mkg
