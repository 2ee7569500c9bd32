#include "doctest.h"

#include <sstream>

#include <json.hpp>

#include "motzkin/automaton.hpp"
#include "motzkin/oracle.hpp"

using namespace motzkin;

TEST_CASE("digit strings") {
    CHECK(base_digits(0, 5).empty());
    CHECK(base_digits(23, 5) == std::vector<std::uint32_t>{3, 4});
    CHECK(base_digits(7, 7) == std::vector<std::uint32_t>{0, 1});
    CHECK(base_digits(48, 7) == std::vector<std::uint32_t>{6, 6});
}

TEST_CASE("first transition from the seed") {
    Prime p = Prime::make(7);
    Automaton m = build_automaton(p);
    // digit 0 sends the seed to 2x^2y^2 + 2x^2y^3 + xy
    BiPoly s2 = BiPoly::from_signed({{2, 2, 2}, {2, 3, 2}, {1, 1, 1}}, p);
    CHECK(m.next(0, 0) == m.find_poly(s2));
    CHECK(m.find_poly(s2) == 1);  // second state discovered
}

TEST_CASE("class-dependent seed transitions") {
    for (std::uint32_t pv : {7u, 13u, 19u}) {  // p = 1 mod 6
        Prime p = Prime::make(pv);
        Automaton m = build_automaton(p);
        BiPoly neg_a = BiPoly::from_signed({{1, 1, -1}, {1, 2, -1}}, p);
        int id = m.find_poly(neg_a);
        REQUIRE(id >= 0);
        CHECK(m.next(0, pv - 2) == id);
        CHECK(m.states()[id].value == 0);
    }
    for (std::uint32_t pv : {5u, 11u, 17u}) {  // p = -1 mod 6
        Prime p = Prime::make(pv);
        Automaton m = build_automaton(p);
        BiPoly a_minus1 = BiPoly::from_signed({{1, 1, 1}, {1, 2, 1}, {0, 0, -1}}, p);
        int id = m.find_poly(a_minus1);
        REQUIRE(id >= 0);
        CHECK(m.next(0, pv - 1) == id);
        CHECK(m.states()[id].value == pv - 1);
    }
}

TEST_CASE("evaluation examples") {
    Automaton m5 = build_automaton(Prime::make(5));
    CHECK(m5.eval(23) == 0);  // (5*0+1)*25 - 2
    CHECK(m5.eval(0) == 1);
    Automaton m7 = build_automaton(Prime::make(7));
    CHECK(m7.eval(15) == 3);
    Automaton m11 = build_automaton(Prime::make(11));
    CHECK(m11.eval(10) == 10);
}

TEST_CASE("machine equals oracle") {
    for (std::uint32_t pv : {5u, 7u, 13u}) {
        Prime p = Prime::make(pv);
        Automaton m = build_automaton(p);
        auto table = motzkin_convolution(p, 10000);
        for (std::uint64_t n = 0; n <= 10000; ++n) {
            CAPTURE(pv);
            CAPTURE(n);
            CHECK(m.eval(n) == table.values[n]);
        }
    }
}

TEST_CASE("machine agrees with the binomial route off the beaten path") {
    std::uint64_t seed = 0x9e3779b97f4a7c15ull;
    auto next_rand = [&seed]() {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        return seed;
    };
    for (std::uint32_t pv : {31u, 101u}) {
        Prime p = Prime::make(pv);
        Automaton m = build_automaton(p);
        BinomTable binom(p);
        for (int i = 0; i < 25; ++i) {
            std::uint64_t n = next_rand() % 200000;
            CAPTURE(pv);
            CAPTURE(n);
            CHECK(m.eval(n) == motzkin_binomial(binom, n));
        }
    }
}

TEST_CASE("zero digits inside the expansion") {
    // every n below has at least one zero digit in canonical base-p form
    for (std::uint32_t pv : {5u, 7u}) {
        Prime p = Prime::make(pv);
        Automaton m = build_automaton(p);
        auto table = motzkin_convolution(p, 10000);
        int exercised = 0;
        for (std::uint64_t n = 1; n <= 10000; ++n) {
            auto digits = base_digits(n, pv);
            bool has_zero = false;
            for (std::uint32_t d : digits) has_zero |= (d == 0);
            if (!has_zero) continue;
            ++exercised;
            CHECK(m.eval(n) == table.values[n]);
        }
        CHECK(exercised > 1000);
    }
}

TEST_CASE("state count bounds and degree bounds") {
    for (std::uint32_t pv = 5; pv <= 61; ++pv) {
        if (!is_prime(pv)) continue;
        Prime p = Prime::make(pv);
        Automaton m = build_automaton(p);
        std::size_t bound = pv + (p.class6() == +1 ? 4 : 6);
        CAPTURE(pv);
        CHECK(m.states().size() <= bound);
        for (const State& s : m.states()) {
            CHECK(s.poly.degree_x() <= 2);
            CHECK(s.poly.degree_y() <= 4);
            CHECK(s.value == eval_origin(s.poly));
        }
        // distinct states have distinct polynomials by construction; verify
        for (std::size_t i = 0; i < m.states().size(); ++i) {
            for (std::size_t j = i + 1; j < m.states().size(); ++j) {
                CHECK(!(m.states()[i].poly == m.states()[j].poly));
            }
        }
    }
}

TEST_CASE("deterministic construction") {
    Prime p = Prime::make(13);
    Automaton a = build_automaton(p);
    Automaton b = build_automaton(p);
    REQUIRE(a.states().size() == b.states().size());
    CHECK(a.delta() == b.delta());
    for (std::size_t i = 0; i < a.states().size(); ++i) {
        CHECK(a.states()[i].poly == b.states()[i].poly);
    }
}

TEST_CASE("table verification passes") {
    for (std::uint32_t pv : {5u, 7u, 11u, 13u}) {
        Automaton m = build_automaton(Prime::make(pv));
        auto mismatches = verify_tables(m);
        CAPTURE(pv);
        for (const auto& s : mismatches) CAPTURE(s);
        CHECK(mismatches.empty());
    }
}

TEST_CASE("constant state one loops on low digits") {
    Automaton m = build_automaton(Prime::make(13));
    int one = m.find_constant(1);
    REQUIRE(one >= 0);
    CHECK(m.next(one, 0) == one);
    CHECK(m.next(one, 1) == one);
}

TEST_CASE("serialization round trip") {
    Automaton m = build_automaton(Prime::make(7));
    std::string doc = to_json(m);
    Automaton back = automaton_from_json(doc);
    CHECK(back.prime() == m.prime());
    CHECK(back.delta() == m.delta());
    REQUIRE(back.states().size() == m.states().size());
    for (std::size_t i = 0; i < m.states().size(); ++i) {
        CHECK(back.states()[i].poly == m.states()[i].poly);
        CHECK(back.states()[i].value == m.states()[i].value);
        CHECK(back.states()[i].is_loop == m.states()[i].is_loop);
    }
}

TEST_CASE("serialization failure modes") {
    Automaton m = build_automaton(Prime::make(7));
    std::string doc = to_json(m);

    CHECK_THROWS_AS(automaton_from_json(doc.substr(0, doc.size() / 2)), AutomatonFormatError);
    CHECK_THROWS_AS(automaton_from_json("{}"), AutomatonFormatError);

    // delta entry beyond the state count
    std::string bad = doc;
    auto pos = bad.rfind("\"delta\"");
    REQUIRE(pos != std::string::npos);
    auto bracket = bad.find('[', pos);
    auto first_entry = bad.find_first_of("0123456789", bracket);
    bad.replace(first_entry, 1, "999");
    CHECK_THROWS_AS(automaton_from_json(bad), AutomatonFormatError);

    // delta row width disagreeing with the declared prime
    auto parsed = nlohmann::json::parse(doc);
    parsed["delta"][0].erase(0);
    CHECK_THROWS_AS(automaton_from_json(parsed.dump()), AutomatonFormatError);

    // state value inconsistent with its polynomial
    parsed = nlohmann::json::parse(doc);
    parsed["states"][0]["value"] = 3;
    CHECK_THROWS_AS(automaton_from_json(parsed.dump()), AutomatonFormatError);
}

namespace {

// Light structural validation: balanced braces/brackets, quoted labels,
// every edge/node line terminated by a semicolon.
bool looks_like_dot(const std::string& text) {
    if (text.rfind("digraph", 0) != 0) return false;
    int depth = 0;
    bool in_quote = false;
    for (char ch : text) {
        if (ch == '"') in_quote = !in_quote;
        if (in_quote) continue;
        if (ch == '{') ++depth;
        if (ch == '}') {
            if (--depth < 0) return false;
        }
    }
    return depth == 0 && !in_quote;
}

}  // namespace

TEST_CASE("dot export") {
    Automaton m7 = build_automaton(Prime::make(7));
    std::string full = export_dot(m7);
    CHECK(looks_like_dot(full));
    CHECK(full.find("->") != std::string::npos);

    std::string collapsed = export_dot(m7, DotOptions{true});
    CHECK(looks_like_dot(collapsed));
    // node lines: 4 polynomial states + constants 0 and 1 + the cloud
    int nodes = 0;
    std::istringstream is(collapsed);
    std::string line;
    while (std::getline(is, line)) {
        if (line.find("->") == std::string::npos && line.find("[label=") != std::string::npos)
            ++nodes;
    }
    CHECK(nodes == 7);
    CHECK(collapsed.find("\"all\"") != std::string::npos);  // absorbing zero state

    // skeleton edges for the 1 mod 6 class
    int s1 = 0;
    BiPoly a_plus2 = BiPoly::from_signed({{1, 1, 1}, {1, 2, 1}, {0, 0, 2}}, m7.prime());
    int t = m7.find_poly(a_plus2);
    REQUIRE(t >= 0);
    std::string edge = "q" + std::to_string(s1) + " -> q" + std::to_string(t);
    CHECK(collapsed.find(edge) != std::string::npos);

    Automaton m5 = build_automaton(Prime::make(5));
    std::string collapsed5 = export_dot(m5, DotOptions{true});
    CHECK(looks_like_dot(collapsed5));
    CHECK(collapsed5.find("label=\"4\"") != std::string::npos);  // digit p-1 edges
    // skeleton for the -1 mod 6 class: seed -> xy(y+1)-1 -> xy(y+1)+2 2-cycle
    BiPoly a_minus1 = BiPoly::from_signed({{1, 1, 1}, {1, 2, 1}, {0, 0, -1}}, m5.prime());
    BiPoly a_plus2_5 = BiPoly::from_signed({{1, 1, 1}, {1, 2, 1}, {0, 0, 2}}, m5.prime());
    int b_id = m5.find_poly(a_minus1);
    int e_id = m5.find_poly(a_plus2_5);
    REQUIRE(b_id >= 0);
    REQUIRE(e_id >= 0);
    CHECK(collapsed5.find("q0 -> q" + std::to_string(b_id)) != std::string::npos);
    CHECK(collapsed5.find("q" + std::to_string(b_id) + " -> q" + std::to_string(e_id)) !=
          std::string::npos);
    CHECK(collapsed5.find("q" + std::to_string(e_id) + " -> q" + std::to_string(b_id)) !=
          std::string::npos);
}
