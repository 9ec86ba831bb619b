#include <doctest.h>

#include "reopt/bitstring.hpp"
#include "reopt/errors.hpp"

using namespace reopt;

TEST_CASE("genome text round trip") {
    const Genome g = Genome::from_string("0101");
    CHECK(g.size() == 4);
    CHECK_FALSE(g[0]);
    CHECK(g[1]);
    CHECK(g.to_string() == "0101");
    CHECK(g.count_ones() == 2);
    CHECK_THROWS_AS(Genome::from_string("01x1"), ContractError);
}

TEST_CASE("hamming distance") {
    CHECK(hamming_distance(Genome::from_string("0000"), Genome::from_string("0000")) == 0);
    CHECK(hamming_distance(Genome::from_string("0000"), Genome::from_string("1111")) == 4);
    CHECK(hamming_distance(Genome::from_string("1010"), Genome::from_string("1001")) == 2);
    CHECK_THROWS_AS(hamming_distance(Genome(3), Genome(4)), ContractError);
}

TEST_CASE("flip_bits") {
    CHECK(flip_bits(Genome::from_string("0000"), {0}).to_string() == "1000");
    CHECK(flip_bits(Genome::from_string("1111"), {}).to_string() == "1111");
    CHECK(flip_bits(Genome::from_string("1100"), {1, 2}).to_string() == "1010");
    CHECK_THROWS_AS(flip_bits(Genome(4), {4}), ContractError);
}

TEST_CASE("mutation degenerate rates") {
    Rng rng(3);
    const Genome x = Genome::from_string("10110");
    for (int i = 0; i < 20; ++i) {
        CHECK(standard_bit_mutation(x, MutationConfig::fixed(0.0), rng) == x);
        const Genome y = standard_bit_mutation(x, MutationConfig::fixed(1.0), rng);
        CHECK(hamming_distance(x, y) == x.size());
    }
    CHECK_THROWS_AS(MutationConfig::fixed(-0.1), ContractError);
    CHECK_THROWS_AS(MutationConfig::fixed(1.5), ContractError);
    CHECK_THROWS_AS(standard_bit_mutation(Genome(), MutationConfig::standard(), rng),
                    ContractError);
}

TEST_CASE("mutation determinism") {
    const Genome x(50);
    for (double rate : {0.0, 0.01, 0.3, 1.0}) {
        Rng a(99), b(99);
        const MutationConfig cfg = MutationConfig::fixed(rate);
        for (int i = 0; i < 50; ++i)
            CHECK(standard_bit_mutation(x, cfg, a) == standard_bit_mutation(x, cfg, b));
    }
}

TEST_CASE("mutation mean flip count at rate 1/n") {
    const std::size_t n = 100;
    const Genome x(n);
    Rng rng(7);
    std::uint64_t flips = 0;
    const std::size_t draws = 100000;
    for (std::size_t i = 0; i < draws; ++i)
        flips += hamming_distance(x, standard_bit_mutation(x, MutationConfig::standard(), rng));
    const double mean = static_cast<double>(flips) / draws;
    CHECK(mean >= 0.9);
    CHECK(mean <= 1.1);
}

TEST_CASE("mutation zero-flip fraction matches the binomial") {
    const std::size_t n = 64;
    const Genome x(n);
    Rng rng(11);
    std::size_t zero = 0;
    const std::size_t draws = 1000000;
    for (std::size_t i = 0; i < draws; ++i)
        zero += standard_bit_mutation(x, MutationConfig::standard(), rng) == x;
    const double expected = std::pow(1.0 - 1.0 / static_cast<double>(n), static_cast<double>(n));
    CHECK(std::abs(static_cast<double>(zero) / draws - expected) <= 0.01);
}
