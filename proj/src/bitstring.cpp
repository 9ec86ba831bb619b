#include "reopt/bitstring.hpp"

#include <algorithm>

namespace reopt {

Genome Genome::from_string(std::string_view text) {
    Genome g;
    g.bits_.reserve(text.size());
    for (char c : text) {
        if (c == '0') {
            g.bits_.push_back(0);
        } else if (c == '1') {
            g.bits_.push_back(1);
        } else {
            throw ContractError("Genome::from_string: invalid character '" +
                                std::string(1, c) + "'");
        }
    }
    return g;
}

std::string Genome::to_string() const {
    std::string s;
    s.reserve(bits_.size());
    for (std::uint8_t b : bits_) s.push_back(b ? '1' : '0');
    return s;
}

void Genome::set(std::size_t i, bool v) {
    if (i >= bits_.size()) throw ContractError("Genome::set: index out of range");
    bits_[i] = v ? 1 : 0;
}

void Genome::flip(std::size_t i) {
    if (i >= bits_.size()) throw ContractError("Genome::flip: index out of range");
    bits_[i] ^= 1;
}

std::size_t Genome::count_ones() const {
    std::size_t c = 0;
    for (std::uint8_t b : bits_) c += b;
    return c;
}

std::size_t hamming_distance(const Genome& a, const Genome& b) {
    if (a.size() != b.size())
        throw ContractError("hamming_distance: length mismatch (" +
                            std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
}

MutationConfig MutationConfig::fixed(double r) {
    if (!(r >= 0.0 && r <= 1.0))
        throw ContractError("MutationConfig: rate must lie in [0, 1]");
    return MutationConfig{r};
}

double MutationConfig::rate_for(std::size_t n) const {
    if (rate) return *rate;
    if (n == 0) throw ContractError("MutationConfig: default rate 1/n needs n >= 1");
    return 1.0 / static_cast<double>(n);
}

Genome standard_bit_mutation(const Genome& x, const MutationConfig& cfg, Rng& rng) {
    if (x.empty()) throw ContractError("standard_bit_mutation: empty genome");
    const std::size_t n = x.size();
    const double p = cfg.rate_for(n);
    Genome y = x;
    if (p <= 0.0) return y;
    if (p >= 1.0) {
        for (std::size_t i = 0; i < n; ++i) y.flip(i);
        return y;
    }
    std::geometric_distribution<std::size_t> gap(p);
    std::size_t pos = gap(rng);
    while (pos < n) {
        y.flip(pos);
        pos += 1 + gap(rng);
    }
    return y;
}

Genome flip_bits(const Genome& x, std::span<const std::size_t> positions) {
    Genome y = x;
    for (std::size_t p : positions) {
        if (p >= x.size())
            throw ContractError("flip_bits: position " + std::to_string(p) +
                                " out of range for length " + std::to_string(x.size()));
        if (y[p] != x[p])
            throw ContractError("flip_bits: duplicate position " + std::to_string(p));
        y.flip(p);
    }
    return y;
}

Genome flip_bits(const Genome& x, std::initializer_list<std::size_t> positions) {
    return flip_bits(x, std::span<const std::size_t>(positions.begin(), positions.size()));
}

} // namespace reopt
