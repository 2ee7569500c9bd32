#include "doctest.h"

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "motzkin/field.hpp"

using namespace motzkin;

namespace {

// Independent inverse oracle: extended gcd.
std::uint32_t inv_egcd(std::uint32_t a, std::uint32_t p) {
    std::int64_t old_r = a, r = p, old_s = 1, s = 0;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t tr = old_r - q * r;
        old_r = r;
        r = tr;
        std::int64_t ts = old_s - q * s;
        old_s = s;
        s = ts;
    }
    old_s %= p;
    if (old_s < 0) old_s += p;
    return static_cast<std::uint32_t>(old_s);
}

// Independent binomial oracle: Pascal's triangle reduced mod p at each step.
std::vector<std::vector<std::uint32_t>> pascal_mod(std::uint32_t p, std::size_t rows) {
    std::vector<std::vector<std::uint32_t>> tri(rows + 1);
    for (std::size_t n = 0; n <= rows; ++n) {
        tri[n].resize(n + 1);
        tri[n][0] = tri[n][n] = 1 % p;
        for (std::size_t m = 1; m < n; ++m) tri[n][m] = (tri[n - 1][m - 1] + tri[n - 1][m]) % p;
    }
    return tri;
}

}  // namespace

TEST_CASE("prime validation") {
    CHECK_THROWS_AS(Prime::make(4), std::invalid_argument);
    CHECK_THROWS_AS(Prime::make(1), std::invalid_argument);
    CHECK_THROWS_AS(Prime::make(2), std::invalid_argument);   // prime but unsupported
    CHECK_THROWS_AS(Prime::make(3), std::invalid_argument);
    CHECK_THROWS_AS(Prime::make((1u << 20) + 7), std::invalid_argument);
    CHECK_THROWS_AS(Prime::make(1048576), std::invalid_argument);

    CHECK(Prime::make(5).class6() == -1);
    CHECK(Prime::make(7).class6() == +1);
    CHECK(Prime::make(13).class6() == +1);
    CHECK(Prime::make(23).class6() == -1);
    CHECK(Prime::make(1000003).value() == 1000003);
}

TEST_CASE("field operations") {
    Prime p5 = Prime::make(5);
    Prime p7 = Prime::make(7);

    CHECK(p5.add(3, 4) == 2);
    CHECK(p7.neg(0) == 0);
    CHECK(p7.mul(6, 6) == 1);
    CHECK(p5.inv(2) == 3);
    CHECK(p7.inv(1) == 1);
    CHECK(Prime::make(13).inv(2) == 7);
    CHECK(Prime::make(13).inv(2) == inv_egcd(2, 13));
    CHECK_THROWS_AS(p5.inv(0), std::domain_error);

    CHECK(p5.reduce(-1) == 4);
    CHECK(p5.reduce(-10) == 0);
    CHECK(p5.reduce(12) == 2);
}

TEST_CASE("field axioms sampled") {
    for (std::uint32_t pv : {5u, 7u, 11u, 13u}) {
        Prime p = Prime::make(pv);
        for (std::uint32_t a = 1; a < pv; ++a) {
            CHECK(p.mul(a, p.inv(a)) == 1);
        }
        for (std::uint32_t a = 0; a < pv; ++a) {
            CHECK(p.add(a, p.neg(a)) == 0);
            for (std::uint32_t b = 0; b < pv; ++b) {
                CHECK(p.add(a, b) == p.add(b, a));
                CHECK(p.sub(p.add(a, b), b) == a);
            }
        }
    }
}

TEST_CASE("binomials against Pascal oracle") {
    for (std::uint32_t pv : {5u, 7u, 11u}) {
        Prime p = Prime::make(pv);
        BinomTable binom(p);
        auto tri = pascal_mod(pv, 500);
        for (std::int64_t n = 0; n <= 500; ++n) {
            for (std::int64_t m = 0; m <= 500; ++m) {
                std::uint32_t expected = (m <= n) ? tri[n][m] : 0;
                CHECK(binom.binom(n, m) == expected);
            }
        }
    }
}

TEST_CASE("binomial conventions and examples") {
    Prime p5 = Prime::make(5);
    Prime p7 = Prime::make(7);
    BinomTable b5(p5), b7(p7);

    CHECK(b5.binom(4, 7) == 0);    // m > n
    CHECK(b5.binom(-2, 1) == 0);   // negative n
    CHECK(b5.binom(3, -1) == 0);   // negative m
    CHECK(b7.binom(6, 2) == 1);    // 15 mod 7

    // row p-1 alternates signs
    for (std::uint32_t pv : {5u, 7u, 13u}) {
        Prime p = Prime::make(pv);
        BinomTable binom(p);
        for (std::int64_t l = 0; l < pv; ++l) {
            std::uint32_t expected = (l % 2 == 0) ? 1 : pv - 1;
            CHECK(binom.binom(pv - 1, l) == expected);
        }
    }

    // Lucas handles arguments far beyond the factorial table
    BinomTable big(Prime::make(13));
    // C(10^12, 10^6) mod 13 via digit product equals the product of digit
    // binomials; just check it stays consistent with a shifted identity
    CHECK(big.binom(13 * 13, 13) == big.binom(13, 1));  // digits (1,0,0) choose (0,1,0)
}

TEST_CASE("reflection identity for upper row") {
    // C(p-1-k, l) = (-1)^l C(k+l, k) for k+l <= p-1
    for (std::uint32_t pv = 5; pv < 200; ++pv) {
        if (!is_prime(pv)) continue;
        Prime p = Prime::make(pv);
        BinomTable binom(p);
        for (std::int64_t k = 0; k < pv; ++k) {
            for (std::int64_t l = 0; k + l <= pv - 1; ++l) {
                std::uint32_t lhs = binom.binom(pv - 1 - k, l);
                std::uint32_t rhs = binom.binom(k + l, k);
                if (l % 2 == 1) rhs = p.neg(rhs);
                CHECK(lhs == rhs);
            }
        }
    }
}
