#include "motzkin/automaton.hpp"

#include <json.hpp>

#include <map>
#include <sstream>

namespace motzkin {

std::vector<std::uint32_t> base_digits(std::uint64_t n, std::uint32_t base) {
    std::vector<std::uint32_t> d;
    while (n > 0) {
        d.push_back(static_cast<std::uint32_t>(n % base));
        n /= base;
    }
    return d;
}

std::uint32_t Automaton::eval(std::uint64_t n) const {
    if (n == 0) return 1;
    int s = 0;
    const std::uint32_t pv = p_.value();
    while (n > 0) {
        s = delta_[s][static_cast<std::uint32_t>(n % pv)];
        n /= pv;
    }
    return states_[s].value;
}

int Automaton::find_poly(const BiPoly& poly) const {
    for (const State& s : states_) {
        if (s.poly == poly) return s.id;
    }
    return -1;
}

int Automaton::find_constant(std::uint32_t value) const {
    for (const State& s : states_) {
        if (s.is_constant && s.value == value) return s.id;
    }
    return -1;
}

Automaton build_automaton(const Prime& p) {
    const std::uint32_t pv = p.value();
    const BiPoly kernel_power = poly_pow(kernel_poly(p), pv - 1, p);

    std::vector<State> states;
    std::vector<std::vector<int>> delta;
    std::map<BiPoly, int> index;

    auto intern = [&](BiPoly poly) {
        auto it = index.find(poly);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(states.size());
        State s;
        s.id = id;
        s.value = eval_origin(poly);
        s.is_constant = poly.is_constant();
        s.poly = std::move(poly);
        index.emplace(s.poly, id);
        states.push_back(std::move(s));
        return id;
    };

    intern(seed_poly(p));
    for (std::size_t cur = 0; cur < states.size(); ++cur) {
        BiPoly product = poly_mul(states[cur].poly, kernel_power, p);
        std::vector<BiPoly> images = cartier_diagonal_images(product, p);
        std::vector<int> row(pv);
        for (std::uint32_t d = 0; d < pv; ++d) row[d] = intern(std::move(images[d]));
        delta.push_back(std::move(row));
    }

    for (State& s : states) {
        s.is_loop = true;
        for (std::uint32_t d = 0; d < pv && s.is_loop; ++d) {
            if (delta[s.id][d] != s.id) s.is_loop = false;
        }
    }
    return Automaton(p, std::move(states), std::move(delta));
}

namespace {

// Fixed polynomial states of the closed transition structure.
struct Skeleton {
    BiPoly s1, s2, a_plus2, a_minus1, neg_a, neg_a_minus1;
};

Skeleton make_skeleton(const Prime& p) {
    Skeleton k;
    k.s1 = seed_poly(p);
    k.s2 = BiPoly::from_signed({{2, 2, 2}, {2, 3, 2}, {1, 1, 1}}, p);
    k.a_plus2 = BiPoly::from_signed({{1, 1, 1}, {1, 2, 1}, {0, 0, 2}}, p);       // xy(y+1)+2
    k.a_minus1 = BiPoly::from_signed({{1, 1, 1}, {1, 2, 1}, {0, 0, -1}}, p);     // xy(y+1)-1
    k.neg_a = BiPoly::from_signed({{1, 1, -1}, {1, 2, -1}}, p);                  // -xy(y+1)
    k.neg_a_minus1 = BiPoly::from_signed({{1, 1, -1}, {1, 2, -1}, {0, 0, -1}}, p);
    return k;
}

class TableChecker {
public:
    TableChecker(const Automaton& m) : m_(m) {}

    std::vector<std::string> mismatches() && {
        run();
        return std::move(out_);
    }

private:
    void fail(const std::string& what) { out_.push_back(what); }

    int require_state(const BiPoly& poly, const std::string& name) {
        int id = m_.find_poly(poly);
        if (id < 0) fail("missing state " + name + " = " + poly.str());
        return id;
    }

    void expect(int src, std::uint32_t d, int dst, const std::string& what) {
        if (src < 0 || dst < 0) return;  // already reported as missing
        if (m_.next(src, d) != dst) {
            fail(what + ": digit " + std::to_string(d) + " goes to state " +
                 std::to_string(m_.next(src, d)) + ", expected " + std::to_string(dst));
        }
    }

    void expect_constant(int src, std::uint32_t d, const std::string& what) {
        if (src < 0) return;
        if (!m_.states()[m_.next(src, d)].is_constant) {
            fail(what + ": digit " + std::to_string(d) + " should reach a constant state");
        }
    }

    void run() {
        const Prime& p = m_.prime();
        const std::uint32_t pv = p.value();
        Skeleton k = make_skeleton(p);

        int s1 = require_state(k.s1, "s1");
        int s2 = require_state(k.s2, "s2");
        int one = m_.find_constant(1);
        if (one < 0) fail("missing constant state 1");
        int zero = m_.find_constant(0);
        if (zero < 0) fail("missing constant state 0");

        if (s1 != 0) fail("initial state is not the seed polynomial");
        if (zero >= 0 && !m_.states()[zero].is_loop) fail("zero state is not absorbing");

        if (p.class6() == +1) {
            int neg_a = require_state(k.neg_a, "-xy(y+1)");
            int a_plus2 = require_state(k.a_plus2, "xy(y+1)+2");

            // columns: s1, s2, 1, -xy(y+1), xy(y+1)+2
            expect(s1, 0, s2, "s1");
            expect(s2, 0, s2, "s2");
            expect(one, 0, one, "const 1");
            expect(neg_a, 0, zero, "-xy(y+1)");
            int two = m_.find_constant(2);
            if (two < 0) fail("missing constant state 2");
            expect(a_plus2, 0, two, "xy(y+1)+2");

            expect(s1, 1, one, "s1");
            expect(s2, 1, one, "s2");
            expect(one, 1, one, "const 1");
            expect_constant(neg_a, 1, "-xy(y+1)");
            expect_constant(a_plus2, 1, "xy(y+1)+2");

            for (std::uint32_t d = 2; d + 3 <= pv; ++d) {
                expect_constant(s1, d, "s1");
                expect_constant(s2, d, "s2");
                expect_constant(one, d, "const 1");
                expect_constant(neg_a, d, "-xy(y+1)");
                expect_constant(a_plus2, d, "xy(y+1)+2");
            }

            expect(s1, pv - 2, neg_a, "s1");
            expect_constant(s2, pv - 2, "s2");
            expect_constant(one, pv - 2, "const 1");
            expect_constant(neg_a, pv - 2, "-xy(y+1)");
            expect(a_plus2, pv - 2, zero, "xy(y+1)+2");

            expect(s1, pv - 1, a_plus2, "s1");
            expect_constant(s2, pv - 1, "s2");
            expect(one, pv - 1, one, "const 1");
            expect(neg_a, pv - 1, neg_a, "-xy(y+1)");
            expect(a_plus2, pv - 1, a_plus2, "xy(y+1)+2");
        } else {
            int neg_a_minus1 = require_state(k.neg_a_minus1, "-xy(y+1)-1");
            int a_minus1 = require_state(k.a_minus1, "xy(y+1)-1");
            int neg_a = require_state(k.neg_a, "-xy(y+1)");
            int a_plus2 = require_state(k.a_plus2, "xy(y+1)+2");
            int minus_one = m_.find_constant(pv - 1);
            if (minus_one < 0) fail("missing constant state -1");
            int two = m_.find_constant(2);
            if (two < 0) fail("missing constant state 2");

            // columns: s1, s2, 1, -xy(y+1)-1
            expect(s1, 0, s2, "s1");
            expect(s2, 0, s2, "s2");
            expect(one, 0, one, "const 1");
            expect(neg_a_minus1, 0, minus_one, "-xy(y+1)-1");

            expect(s1, 1, one, "s1");
            expect(s2, 1, one, "s2");
            expect(one, 1, one, "const 1");
            expect_constant(neg_a_minus1, 1, "-xy(y+1)-1");

            for (std::uint32_t d = 2; d + 4 <= pv; ++d) {
                expect_constant(s1, d, "s1");
                expect_constant(s2, d, "s2");
                expect_constant(one, d, "const 1");
                expect_constant(neg_a_minus1, d, "-xy(y+1)-1");
            }

            expect_constant(s1, pv - 3, "s1");
            expect_constant(s2, pv - 3, "s2");
            expect_constant(one, pv - 3, "const 1");
            expect(neg_a_minus1, pv - 3, zero, "-xy(y+1)-1");

            expect(s1, pv - 2, neg_a_minus1, "s1");
            expect_constant(s2, pv - 2, "s2");
            expect_constant(one, pv - 2, "const 1");
            expect_constant(neg_a_minus1, pv - 2, "-xy(y+1)-1");

            expect(s1, pv - 1, a_minus1, "s1");
            expect_constant(s2, pv - 1, "s2");
            expect(one, pv - 1, minus_one, "const 1");
            expect(neg_a_minus1, pv - 1, neg_a, "-xy(y+1)-1");

            // columns: xy(y+1)-1, -xy(y+1), xy(y+1)+2
            expect(a_minus1, 0, minus_one, "xy(y+1)-1");
            expect(neg_a, 0, zero, "-xy(y+1)");
            expect(a_plus2, 0, two, "xy(y+1)+2");

            for (std::uint32_t d = 1; d + 3 <= pv; ++d) {
                expect_constant(a_minus1, d, "xy(y+1)-1");
                expect_constant(neg_a, d, "-xy(y+1)");
                expect_constant(a_plus2, d, "xy(y+1)+2");
            }

            expect_constant(a_minus1, pv - 2, "xy(y+1)-1");
            expect_constant(neg_a, pv - 2, "-xy(y+1)");
            expect(a_plus2, pv - 2, zero, "xy(y+1)+2");

            expect(a_minus1, pv - 1, a_plus2, "xy(y+1)-1");
            expect(neg_a, pv - 1, neg_a_minus1, "-xy(y+1)");
            expect(a_plus2, pv - 1, a_minus1, "xy(y+1)+2");

            // six-state skeleton detail: xy(y+1)-1 falls into 0 on digit 1
            expect(a_minus1, 1, zero, "xy(y+1)-1");
        }
    }

    const Automaton& m_;
    std::vector<std::string> out_;
};

}  // namespace

std::vector<std::string> verify_tables(const Automaton& m) {
    return TableChecker(m).mismatches();
}

std::string to_json(const Automaton& m) {
    nlohmann::ordered_json doc;
    doc["p"] = m.prime().value();
    doc["initial"] = 0;
    doc["states"] = nlohmann::ordered_json::array();
    for (const State& s : m.states()) {
        nlohmann::ordered_json js;
        js["id"] = s.id;
        auto poly = nlohmann::ordered_json::array();
        for (const Term& t : s.poly.terms()) poly.push_back({t.x, t.y, t.c});
        js["poly"] = std::move(poly);
        js["value"] = s.value;
        doc["states"].push_back(std::move(js));
    }
    doc["delta"] = m.delta();
    return doc.dump(2) + "\n";
}

Automaton automaton_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw AutomatonFormatError(std::string("malformed automaton document: ") + e.what());
    }
    try {
        Prime p = Prime::make(doc.at("p").get<std::uint64_t>());
        const std::uint32_t pv = p.value();
        if (doc.at("initial").get<int>() != 0)
            throw AutomatonFormatError("initial state must be 0");

        std::vector<State> states;
        for (const auto& js : doc.at("states")) {
            State s;
            s.id = js.at("id").get<int>();
            if (s.id != static_cast<int>(states.size()))
                throw AutomatonFormatError("state ids must be dense and ascending");
            std::vector<Term> terms;
            for (const auto& jt : js.at("poly")) {
                if (!jt.is_array() || jt.size() != 3)
                    throw AutomatonFormatError("polynomial terms must be [i, j, coeff]");
                Term t{jt[0].get<std::uint32_t>(), jt[1].get<std::uint32_t>(),
                       jt[2].get<std::uint32_t>()};
                if (t.c >= pv) throw AutomatonFormatError("coefficient out of range");
                terms.push_back(t);
            }
            s.poly = BiPoly::from_terms(std::move(terms), p);
            s.value = eval_origin(s.poly);
            if (s.value != js.at("value").get<std::uint32_t>())
                throw AutomatonFormatError("state value does not match its polynomial");
            s.is_constant = s.poly.is_constant();
            states.push_back(std::move(s));
        }
        if (states.empty()) throw AutomatonFormatError("no states");

        std::vector<std::vector<int>> delta;
        for (const auto& row : doc.at("delta")) {
            std::vector<int> r = row.get<std::vector<int>>();
            if (r.size() != pv)
                throw AutomatonFormatError("delta row width does not match p");
            for (int v : r) {
                if (v < 0 || v >= static_cast<int>(states.size()))
                    throw AutomatonFormatError("delta entry out of range");
            }
            delta.push_back(std::move(r));
        }
        if (delta.size() != states.size())
            throw AutomatonFormatError("delta must have one row per state");

        for (State& s : states) {
            s.is_loop = true;
            for (std::uint32_t d = 0; d < pv && s.is_loop; ++d) {
                if (delta[s.id][d] != s.id) s.is_loop = false;
            }
        }
        return Automaton(p, std::move(states), std::move(delta));
    } catch (const nlohmann::json::exception& e) {
        throw AutomatonFormatError(std::string("malformed automaton document: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw AutomatonFormatError(e.what());
    }
}

namespace {

std::string digit_list_label(const std::vector<std::uint32_t>& digits, std::uint32_t p) {
    if (digits.size() == p) return "all";
    std::string s;
    for (std::uint32_t d : digits) {
        if (!s.empty()) s += ",";
        s += std::to_string(d);
    }
    return s;
}

}  // namespace

std::string export_dot(const Automaton& m, const DotOptions& options) {
    const std::uint32_t pv = m.prime().value();
    const int n = static_cast<int>(m.states().size());

    auto keep = [&](int id) {
        if (!options.collapse_constant_states) return true;
        const State& s = m.states()[id];
        return !s.is_constant || s.value <= 1;
    };

    std::ostringstream os;
    os << "digraph motzkin_mod_" << pv << " {\n";
    os << "  rankdir=LR;\n";
    os << "  node [shape=ellipse];\n";
    bool cloud_used = false;
    for (int id = 0; id < n; ++id) {
        const State& s = m.states()[id];
        if (!keep(id)) {
            cloud_used = true;
            continue;
        }
        os << "  q" << id << " [label=\"" << s.poly.str() << "\"";
        if (id == 0) os << ", shape=doublecircle";
        os << "];\n";
    }
    if (cloud_used) os << "  cloud [label=\"c\", style=dashed];\n";

    for (int src = 0; src < n; ++src) {
        if (options.collapse_constant_states && !keep(src)) continue;
        std::map<int, std::vector<std::uint32_t>> grouped;  // dst (or -1 = cloud) -> digits
        for (std::uint32_t d = 0; d < pv; ++d) {
            int dst = m.next(src, d);
            grouped[keep(dst) ? dst : -1].push_back(d);
        }
        for (const auto& [dst, digits] : grouped) {
            os << "  q" << src << " -> " << (dst < 0 ? std::string("cloud") : "q" + std::to_string(dst))
               << " [label=\"" << digit_list_label(digits, pv) << "\"];\n";
        }
    }
    os << "}\n";
    return os.str();
}

}  // namespace motzkin
