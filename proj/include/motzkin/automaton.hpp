#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "motzkin/bipoly.hpp"
#include "motzkin/field.hpp"

namespace motzkin {

// base-p digits of n, least significant first; canonical (no trailing
// high-order zeros), so n = 0 maps to the empty string.
std::vector<std::uint32_t> base_digits(std::uint64_t n, std::uint32_t base);

struct State {
    int id = 0;
    BiPoly poly;
    std::uint32_t value = 0;  // poly evaluated at the origin
    bool is_constant = false;
    bool is_loop = false;  // every digit maps the state to itself
};

// Finite-state machine computing M_n mod p: states are polynomials, the
// transition on digit d sends s to Lambda_{d,d}(s * Q^{p-1}), and feeding
// the base-p digits of n (least significant first) from the initial state
// ends on a state whose value is M_n mod p. Immutable once built; eval is
// pure and safe to call concurrently.
class Automaton {
public:
    Automaton(Prime p, std::vector<State> states, std::vector<std::vector<int>> delta)
        : p_(p), states_(std::move(states)), delta_(std::move(delta)) {}

    const Prime& prime() const noexcept { return p_; }
    const std::vector<State>& states() const noexcept { return states_; }
    const std::vector<std::vector<int>>& delta() const noexcept { return delta_; }
    int initial() const noexcept { return 0; }

    int next(int state, std::uint32_t digit) const { return delta_[state][digit]; }

    // M_n mod p. n = 0 is special-cased to 1: the canonical digit string of
    // 0 is empty and the initial state's value is 0, not M_0.
    std::uint32_t eval(std::uint64_t n) const;

    // Index of the state with this exact polynomial, or -1.
    int find_poly(const BiPoly& poly) const;
    // Index of the constant state with this value, or -1.
    int find_constant(std::uint32_t value) const;

private:
    Prime p_;
    std::vector<State> states_;
    std::vector<std::vector<int>> delta_;
};

// Breadth-first closure from the seed polynomial, deduplicating states by
// exact polynomial equality. Discovery order is (source id ascending, digit
// ascending), so ids are reproducible across runs and platforms. The machine
// has at most p+4 states when p = 1 mod 6 and at most p+6 when p = -1 mod 6.
Automaton build_automaton(const Prime& p);

// Checks the machine against the closed-form transition structure shared by
// all primes of its class mod 6: the fixed polynomial states, their
// digit-indexed transitions, the absorbing zero state, and which cells must
// be constants. Returns human-readable mismatches (expected empty).
std::vector<std::string> verify_tables(const Automaton& m);

struct AutomatonFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON document {"p":, "initial": 0, "states": [{"id", "poly": [[i,j,c],..],
// "value"}], "delta": [[..]; n_states]} with coefficients reduced into
// [0, p) and poly triples sorted by (i, j). Round-trips exactly.
std::string to_json(const Automaton& m);
Automaton automaton_from_json(const std::string& text);  // throws AutomatonFormatError

struct DotOptions {
    // Merge all constant states except 0 and 1 into a single cloud node,
    // dropping the cloud's outgoing edges; mirrors the partial diagrams that
    // show only the structural skeleton.
    bool collapse_constant_states = false;
};

// GraphViz DOT rendering; parallel edges between the same pair of states are
// merged into one edge labeled with the digit list ("all" when every digit).
std::string export_dot(const Automaton& m, const DotOptions& options = {});

}  // namespace motzkin
