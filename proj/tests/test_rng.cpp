#include "pdsim/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace pdsim;

TEST_CASE("philox4x32-10 known answers") {
    // Reference vectors from the Random123 known-answer tests.
    auto z = Philox4x32::block({0, 0, 0, 0}, {0, 0});
    CHECK(z[0] == 0x6627e8d5u);
    CHECK(z[1] == 0xe169c58du);
    CHECK(z[2] == 0xbc57ac4cu);
    CHECK(z[3] == 0x9b00dbd8u);

    auto f = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                               {0xffffffffu, 0xffffffffu});
    CHECK(f[0] == 0x408f276du);
    CHECK(f[1] == 0x41c83b0eu);
    CHECK(f[2] == 0xa20bc7c6u);
    CHECK(f[3] == 0x6d5451fdu);

    auto p = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                               {0xa4093822u, 0x299f31d0u});
    CHECK(p[0] == 0xd16cfe09u);
    CHECK(p[1] == 0x94fdccebu);
    CHECK(p[2] == 0x5001e420u);
    CHECK(p[3] == 0x24126ea1u);
}

TEST_CASE("normal stream is a pure function of its coordinates") {
    NormalStream a(42, 1000, 3);
    NormalStream b(42, 1000, 3);
    for (std::uint32_t i = 0; i < 64; ++i)
        CHECK(a.normal(i) == b.normal(i));

    // random access equals sequential access
    NormalStream c(42, 1000, 3);
    CHECK(c.normal(63) == a.normal(63));
    CHECK(c.normal(0) == a.normal(0));

    // distinct coordinates decorrelate
    NormalStream d(42, 1001, 3);
    NormalStream e(42, 1000, 4);
    NormalStream g(43, 1000, 3);
    CHECK(d.normal(0) != a.normal(0));
    CHECK(e.normal(0) != a.normal(0));
    CHECK(g.normal(0) != a.normal(0));
}

TEST_CASE("stream uniforms stay strictly inside (0,1)") {
    NormalStream s(7, 0, 0);
    for (std::uint32_t i = 0; i < 10000; ++i) {
        const double u = s.uniform(i);
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("stream normals have standard moments") {
    double sum = 0.0, sum2 = 0.0, sum3 = 0.0;
    const int n = 200000;
    for (int path = 0; path < n / 4; ++path) {
        NormalStream s(99, static_cast<std::uint64_t>(path), 1);
        for (std::uint32_t i = 0; i < 4; ++i) {
            const double z = s.normal(i);
            sum += z;
            sum2 += z * z;
            sum3 += z * z * z;
        }
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(std::abs(sum2 / n - 1.0) < 0.02);
    CHECK(std::abs(sum3 / n) < 0.05);
}

TEST_CASE("splitmix64 utility") {
    SplitMix64 g(1);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i)
        seen.insert(g.next());
    CHECK(seen.size() == 1000);

    SplitMix64 h(1);
    for (int i = 0; i < 1000; ++i) {
        const std::uint64_t v = h.next_below(7);
        CHECK(v < 7);
    }

    CHECK(derive_seed(5, 0) != derive_seed(5, 1));
    CHECK(derive_seed(5, 0) == derive_seed(5, 0));
}
