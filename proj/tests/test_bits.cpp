#include <doctest.h>

#include <random>
#include <vector>

#include "csram/bits.hpp"
#include "support/reference.hpp"

using namespace csram;

TEST_CASE("pack/unpack round-trips and rejects bad input") {
    std::vector<int> v = {1, -1, -1, 1, 1, 1, -1};
    BinaryVector packed = pack_bipolar(v);
    CHECK(packed.length() == 7);
    CHECK(unpack_bipolar(packed) == v);

    std::mt19937_64 rng(0x9c0ffee1u);
    for (int it = 0; it < 200; ++it) {
        const size_t n = 1 + rng() % 300;
        auto vals = ref::random_bipolar(rng, n);
        CHECK(unpack_bipolar(pack_bipolar(vals)) == vals);
    }

    CHECK_THROWS_AS(pack_bipolar(std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(pack_bipolar(std::vector<int>{1, 0, -1}), std::invalid_argument);
    CHECK_THROWS_AS(pack_bipolar(std::vector<int>{2}), std::invalid_argument);
}

TEST_CASE("bit order: index 0 is the low-order bit of word 0") {
    std::vector<int> v(70, -1);
    v[0] = 1;
    v[65] = 1;
    BinaryVector packed = pack_bipolar(v);
    CHECK(packed.word_count() == 2);
    CHECK(packed.word(0).bits() == 1ull);
    CHECK(packed.word(1).bits() == 2ull);
    CHECK(packed.word(1).width() == 6);
}

TEST_CASE("xnor matches the agreement count, example") {
    // 6-bit example: a = +-++-+, k = ++++--
    std::vector<int> a = {1, -1, 1, 1, -1, 1};
    std::vector<int> k = {1, 1, 1, 1, -1, -1};
    CHECK(xnor_popcount(pack_bipolar(a), pack_bipolar(k)) == 4);
    CHECK(bipolar_dot(pack_bipolar(a), pack_bipolar(k)) == 2);
}

TEST_CASE("xnor_popcount equals the per-bit reference on random vectors") {
    std::mt19937_64 rng(0x5eed0001u);
    for (int it = 0; it < 1000; ++it) {
        const size_t n = 1 + rng() % 512;
        auto a = ref::random_bipolar(rng, n);
        auto b = ref::random_bipolar(rng, n);
        const int expect = ref::match_count(a, b);
        CHECK(xnor_popcount(pack_bipolar(a), pack_bipolar(b)) == expect);
        CHECK(bipolar_dot(pack_bipolar(a), pack_bipolar(b)) == ref::dot(a, b));
    }
}

TEST_CASE("popcount identities") {
    std::mt19937_64 rng(0x5eed0002u);
    for (int it = 0; it < 500; ++it) {
        const size_t n = 1 + rng() % 200;
        auto a = ref::random_bipolar(rng, n);
        auto b = ref::random_bipolar(rng, n);
        BinaryVector pa = pack_bipolar(a), pb = pack_bipolar(b);
        // matches(a,b) + matches(a,-b) covers every position exactly once
        for (auto& x : b)
            x = -x;
        BinaryVector nb = pack_bipolar(b);
        CHECK(xnor_popcount(pa, pb) + xnor_popcount(pa, nb) == static_cast<int>(n));
        // commutative; self-match is total
        CHECK(xnor_popcount(pa, pb) == xnor_popcount(pb, pa));
        CHECK(xnor_popcount(pa, pa) == static_cast<int>(n));
    }
}

TEST_CASE("word-level errors") {
    CHECK_THROWS_AS(BitWord(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(BitWord(0, 65), std::invalid_argument);
    CHECK_THROWS_AS(xnor(BitWord(0, 8), BitWord(0, 9)), std::invalid_argument);
    BinaryVector a(8), b(9);
    CHECK_THROWS_AS(xnor_popcount(a, b), std::invalid_argument);
    CHECK_THROWS_AS(BitWord(0, 8).bit(8), std::out_of_range);
}

TEST_CASE("words beyond the width stay masked") {
    BitWord w(~0ull, 5);
    CHECK(w.bits() == 0x1full);
    CHECK(popcount(w) == 5);
    BitWord x = xnor(BitWord(0, 5), BitWord(0, 5));
    CHECK(x.bits() == 0x1full);
}
