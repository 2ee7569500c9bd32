#include "doctest.h"

#include <set>

#include "motzkin/analysis.hpp"
#include "motzkin/oracle.hpp"

using namespace motzkin;

TEST_CASE("density formula") {
    // exponent p^j, j >= 1
    StructuredSet a{7, 1, 1, 0, 1, 2};
    CHECK(density_formula(a) == Rational::make(1, 42));
    // exponent p^(2j), j >= 1
    StructuredSet b{5, 1, 2, 0, 1, 2};
    CHECK(density_formula(b) == Rational::make(1, 120));
    // exponent p^(2j+1), j >= 0
    StructuredSet c{5, 2, 2, 1, 0, 1};
    CHECK(density_formula(c) == Rational::make(1, 24));
    // prefactor flips to the numerator when the period exceeds offset+1
    StructuredSet d{3, 1, 3, 0, 0, 0};
    CHECK(density_formula(d) == Rational::make(9, 26));
    CHECK_THROWS(density_formula(StructuredSet{2, 0, 1, 0, 0, 0}));
}

TEST_CASE("membership, enumeration and counting agree") {
    std::vector<StructuredSet> sets = {
        {5, 1, 2, 0, 1, 2}, {5, 3, 2, 1, 0, 2}, {7, 6, 1, 0, 1, 1},
        {4, 3, 1, 1, 0, 2}, {11, 10, 2, 0, 1, 1}, {3, 2, 3, 2, 0, -4},
    };
    const std::uint64_t limit = 5000;
    for (const auto& s : sets) {
        auto members = set_members(s, limit);
        CHECK(members.size() == set_count(s, limit));
        std::set<std::uint64_t> fast(members.begin(), members.end());
        for (std::uint64_t n = 1; n <= limit; ++n) {
            CAPTURE(n);
            CHECK(set_contains(s, n) == (fast.count(n) == 1));
        }
    }
}

TEST_CASE("enumerated density approaches the formula") {
    // whole family: base <= 13, period <= 3, offset <= 2
    const std::uint64_t limit = 1000000;
    for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
        for (std::uint32_t s = 1; s <= 3; ++s) {
            for (std::uint32_t t = 0; t <= 2; ++t) {
                for (std::uint64_t r : {std::uint64_t{1}, q / 2, q - 1}) {
                    if (r == 0 || r >= q) continue;
                    for (int j_min : {0, 1}) {
                        for (std::int64_t shift : {0, 1, 2}) {
                            StructuredSet set{q, r, s, t, j_min, shift};
                            Rational rho = density_formula(set);
                            std::int64_t count =
                                static_cast<std::int64_t>(set_count(set, limit));
                            std::int64_t tol = 1;
                            for (std::uint32_t k = 0; k < s + t + 2; ++k)
                                tol *= static_cast<std::int64_t>(q);
                            std::int64_t err =
                                count * rho.den - static_cast<std::int64_t>(limit) * rho.num;
                            if (err < 0) err = -err;
                            CAPTURE(q);
                            CAPTURE(r);
                            CAPTURE(s);
                            CAPTURE(t);
                            CAPTURE(j_min);
                            CAPTURE(shift);
                            CHECK(err <= tol * rho.den);
                        }
                    }
                }
            }
        }
    }
}

TEST_CASE("extreme exponent parameters stay finite") {
    // offsets large enough that the exponent leaves 64-bit range entirely
    StructuredSet s{13, 5, 3, 4000000000u, 1, 2};
    CHECK(set_count(s, 1000000) == 0);
    CHECK(set_members(s, 1000000).empty());
    CHECK(!set_contains(s, 123456));
}

TEST_CASE("zero-residue forms") {
    Prime p7 = Prime::make(7);
    auto forms7 = zero_residue_forms(p7);
    REQUIRE(forms7.size() == 2);
    // total density 2/42 = 1/21
    Rational total = Rational::make(0, 1);
    for (const auto& f : forms7) {
        Rational r = density_formula(f);
        total = Rational::make(total.num * r.den + r.num * total.den, total.den * r.den);
    }
    CHECK(total == Rational::make(1, 21));
    // smallest members
    auto members0 = set_members(forms7[0], 100);
    auto members1 = set_members(forms7[1], 100);
    REQUIRE(!members0.empty());
    REQUIRE(!members1.empty());
    CHECK(members0[0] == 5);
    CHECK(members1[0] == 41);
    auto oracle = motzkin_convolution(p7, 100);
    CHECK(oracle.values[5] == 0);
    CHECK(oracle.values[41] == 0);

    Prime p5 = Prime::make(5);
    auto forms5 = zero_residue_forms(p5);
    REQUIRE(forms5.size() == 4);
    double total5 = 0;
    for (const auto& f : forms5) total5 += density_formula(f).approx();
    CHECK(total5 == doctest::Approx(0.1));
}

TEST_CASE("form members evaluate to zero") {
    for (std::uint32_t pv : {5u, 7u, 11u}) {
        Prime p = Prime::make(pv);
        Automaton m = build_automaton(p);
        auto violations = verify_forms(p, m, 20000);
        CAPTURE(pv);
        for (const auto& v : violations) CAPTURE(v);
        CHECK(violations.empty());
    }
}

TEST_CASE("empirical density") {
    Prime p5 = Prime::make(5);
    Automaton m5 = build_automaton(p5);
    DensityReport rep = empirical_density(p5, m5, 0, 100000);
    CHECK(rep.kind == TheoryKind::exact);
    CHECK(rep.theory == Rational::make(1, 10));
    CHECK(std::abs(rep.density - 0.1) < 0.01);
    CHECK(rep.count == empirical_density(p5, m5, 0, 100000, 4).count);  // thread-count invariant

    DensityReport rep7 = empirical_density(Prime::make(7), build_automaton(Prime::make(7)), 0,
                                           50000);
    CHECK(rep7.kind == TheoryKind::lower_bound);
    CHECK(rep7.density >= rep7.theory.approx());

    DensityReport rep2 = empirical_density(p5, m5, 2, 10000);
    CHECK(rep2.kind == TheoryKind::none);
}

TEST_CASE("residue 2 along n = p^k - 1 for the +1 class") {
    Prime p7 = Prime::make(7);
    Automaton m7 = build_automaton(p7);
    std::uint64_t members = 0;
    const std::uint64_t limit = 100000;
    for (std::uint64_t e = 7; e - 1 <= limit; e *= 7) {
        CHECK(m7.eval(e - 1) == 2);
        ++members;
    }
    CHECK(members == 5);  // 7^1 - 1 .. 7^5 - 1 lie below 1e5
    DensityReport rep = empirical_density(p7, m7, 2, limit);
    CHECK(rep.count >= members);
}

TEST_CASE("digit transition constants") {
    BinomTable b7(Prime::make(7));
    CHECK(cpd(b7, 0) == 1);
    CHECK(cpd(b7, 1) == 1);
    CHECK(cpd(b7, 2) == 3);
    CHECK(cpd(b7, 3) == 0);  // C(6,3) + C(5,1) C(3,1) = 35
    CHECK(cpd(b7, 5) == 2);  // b_7 mod 7
    CHECK(cpd(b7, 6) == 1);  // a_6

    BinomTable b5(Prime::make(5));
    CHECK(cpd(b5, 0) == 1);
    CHECK(cpd(b5, 1) == 1);
    CHECK(cpd(b5, 4) == 4);  // a_4 = -1
}

TEST_CASE("cpd matches the machine's constant-one row") {
    for (std::uint32_t pv : {5u, 7u, 11u, 13u}) {
        Prime p = Prime::make(pv);
        BinomTable binom(p);
        Automaton m = build_automaton(p);
        int one = m.find_constant(1);
        REQUIRE(one >= 0);
        for (std::uint32_t d = 0; d < pv; ++d) {
            int dst = m.next(one, d);
            CAPTURE(pv);
            CAPTURE(d);
            CHECK(m.states()[dst].is_constant);
            CHECK(m.states()[dst].value == cpd(binom, d));
        }
    }
}

TEST_CASE("density-one digit") {
    CHECK(density_one_digit(BinomTable(Prime::make(7))) == 3);
    CHECK(density_one_digit(BinomTable(Prime::make(17))).has_value());
    CHECK(density_one_digit(BinomTable(Prime::make(19))).has_value());
    CHECK(!density_one_digit(BinomTable(Prime::make(5))).has_value());
    CHECK(!density_one_digit(BinomTable(Prime::make(11))).has_value());
    CHECK(!density_one_digit(BinomTable(Prime::make(13))).has_value());
    CHECK(!density_one_digit(BinomTable(Prime::make(23))).has_value());
}

TEST_CASE("repeated special digit forces zero") {
    for (std::uint32_t pv : {7u, 17u, 19u}) {
        Prime p = Prime::make(pv);
        BinomTable binom(p);
        auto d = density_one_digit(binom);
        REQUIRE(d.has_value());
        Automaton m = build_automaton(p);
        int checked = 0;
        for (std::uint64_t n = 1; n <= 50000; ++n) {
            auto digits = base_digits(n, pv);
            int hits = 0;
            for (std::uint32_t dig : digits) hits += (dig == *d);
            if (hits >= 2) {
                ++checked;
                CAPTURE(n);
                CHECK(m.eval(n) == 0);
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("forbidden residues and unit generation") {
    Prime p5 = Prime::make(5);
    auto rep5 = forbidden_residues(p5, build_automaton(p5));
    CHECK(rep5.forbidden.empty());

    Prime p7 = Prime::make(7);
    auto rep7 = forbidden_residues(p7, build_automaton(p7));
    // 3 is among the constants and generates the units mod 7
    CHECK(std::find(rep7.cpd_values.begin(), rep7.cpd_values.end(), 3u) != rep7.cpd_values.end());
    CHECK(rep7.units_generated);

    for (std::uint32_t pv : {5u, 7u, 11u, 13u}) {
        Prime p = Prime::make(pv);
        auto rep = forbidden_residues(p, build_automaton(p));
        // residue 1 occurs (M_1 = 1), so it is never forbidden
        CHECK(std::find(rep.forbidden.begin(), rep.forbidden.end(), 1u) == rep.forbidden.end());
        // nothing forbidden may be attained by the oracle
        auto table = motzkin_convolution(p, 20000);
        std::vector<bool> seen(pv, false);
        for (auto v : table.values) seen[v] = true;
        for (auto x : rep.forbidden) CHECK(!seen[x]);
    }
}

TEST_CASE("parity characterisation") {
    CHECK(classical_predicate(2, 2).divisible);  // i=0, e=1, j=0, delta=2
    auto table = motzkin_convolution_mod(2, 20000);
    for (std::uint64_t n = 0; n <= 20000; ++n) {
        auto res = classical_predicate(2, n);
        CAPTURE(n);
        CHECK(res.divisible == (table[n] == 0));
        REQUIRE(res.residue.has_value());
        CHECK(*res.residue == table[n]);
    }
}

TEST_CASE("mod-3 characterisation") {
    auto r3 = classical_predicate(3, 3);
    REQUIRE(r3.residue.has_value());
    CHECK(*r3.residue == 1);  // M_3 = 4
    auto table = motzkin_convolution_mod(3, 20000);
    for (std::uint64_t n = 0; n <= 20000; ++n) {
        auto res = classical_predicate(3, n);
        CAPTURE(n);
        REQUIRE(res.residue.has_value());
        CHECK(*res.residue == table[n]);
    }
}

TEST_CASE("mod-5 characterisation") {
    CHECK(classical_predicate(5, 23).divisible);
    auto table = motzkin_convolution_mod(5, 20000);
    for (std::uint64_t n = 0; n <= 20000; ++n) {
        auto res = classical_predicate(5, n);
        CAPTURE(n);
        CHECK(res.divisible == (table[n] == 0));
    }
    CHECK_THROWS_AS(classical_predicate(7, 1), std::invalid_argument);
}
