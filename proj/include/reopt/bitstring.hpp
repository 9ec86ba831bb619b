#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reopt/errors.hpp"

namespace reopt {

/// Deterministic random stream. One stream per run; never shared between
/// concurrent runs.
using Rng = std::mt19937_64;

/// Seed for one run. Identical seed and configuration give an identical trace.
struct RngSeed {
    std::uint64_t value = 0;

    Rng make_engine() const { return Rng(value); }
};

/// Fixed-length bit string over {0,1}^n. Index 0 is the leftmost position in
/// the text form. Equality is bitwise.
class Genome {
public:
    Genome() = default;
    explicit Genome(std::size_t n, bool value = false)
        : bits_(n, value ? std::uint8_t{1} : std::uint8_t{0}) {}

    /// Parses a string over {0,1}, most significant position first.
    static Genome from_string(std::string_view text);
    std::string to_string() const;

    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    bool operator[](std::size_t i) const { return bits_[i] != 0; }
    void set(std::size_t i, bool v);
    void flip(std::size_t i);
    void push_back(bool v) { bits_.push_back(v ? std::uint8_t{1} : std::uint8_t{0}); }

    std::size_t count_ones() const;

    bool operator==(const Genome&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Number of positions where a and b differ. Requires equal lengths.
std::size_t hamming_distance(const Genome& a, const Genome& b);

/// Per-bit flip probability for standard bit mutation. An unset rate means
/// 1/n for the genome at hand.
struct MutationConfig {
    std::optional<double> rate;

    static MutationConfig standard() { return {}; }
    static MutationConfig fixed(double r);

    double rate_for(std::size_t n) const;
};

/// Flips each bit of x independently with probability cfg.rate (default 1/n).
/// Sampling jumps between flip positions geometrically, which induces exactly
/// the independent-per-bit distribution in O(expected flips) time.
Genome standard_bit_mutation(const Genome& x, const MutationConfig& cfg, Rng& rng);

/// Copy of x with exactly the listed (distinct, in-range) positions flipped.
Genome flip_bits(const Genome& x, std::span<const std::size_t> positions);
Genome flip_bits(const Genome& x, std::initializer_list<std::size_t> positions);

} // namespace reopt
