#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "reopt/errors.hpp"

namespace reopt {

/// Optimization direction, fixed per problem instance.
enum class Direction { Maximize, Minimize };

/// Wide integer lane for exact linear-profit arithmetic. Covers weights up to
/// 2^62 with penalty terms of n * w_max + 1 without overflow.
using WideInt = __int128;

std::string wide_to_string(WideInt v);

/// A totally ordered fitness value. Three shapes:
///   - Scalar: a real number,
///   - Exact:  a wide integer (linear instances with integral weights),
///   - Lex:    an (integer, real) pair compared lexicographically.
/// Values of different shapes are not comparable.
class FitnessValue {
public:
    struct Lex {
        std::int64_t primary = 0;
        double secondary = 0.0;
        bool operator==(const Lex&) const = default;
    };

    FitnessValue() : v_(0.0) {}

    static FitnessValue scalar(double v) { return FitnessValue(v); }
    static FitnessValue exact(WideInt v) { return FitnessValue(v); }
    static FitnessValue lex(std::int64_t primary, double secondary) {
        return FitnessValue(Lex{primary, secondary});
    }

    bool is_scalar() const { return std::holds_alternative<double>(v_); }
    bool is_exact() const { return std::holds_alternative<WideInt>(v_); }
    bool is_lex() const { return std::holds_alternative<Lex>(v_); }

    double as_scalar() const;
    WideInt as_exact() const;
    Lex as_lex() const;

    /// Numeric view for reporting. Exact values saturate to double precision.
    double primary_as_double() const;

    bool operator==(const FitnessValue&) const = default;

    std::string to_string() const;

private:
    explicit FitnessValue(double v) : v_(v) {}
    explicit FitnessValue(WideInt v) : v_(v) {}
    explicit FitnessValue(Lex v) : v_(v) {}

    std::variant<double, WideInt, Lex> v_;

    friend int compare(const FitnessValue& a, const FitnessValue& b);
};

/// Three-way comparison: -1, 0, +1. Throws ContractError on shape mismatch.
int compare(const FitnessValue& a, const FitnessValue& b);

/// Acceptance test of the re-optimization EA: under Maximize a >= b, under
/// Minimize a <= b (lexicographic for pairs).
bool fitness_better_or_equal(Direction dir, const FitnessValue& a, const FitnessValue& b);

/// Strict version of the same order.
bool fitness_strictly_better(Direction dir, const FitnessValue& a, const FitnessValue& b);

} // namespace reopt
