#include "motzkin/bipoly.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace motzkin {

namespace {

bool term_order(const Term& a, const Term& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
}

}  // namespace

// Internal: adopt an already-sorted, duplicate-free, zero-free term list.
BiPoly poly_from_canonical(std::vector<Term> terms) {
    BiPoly p;
    p.terms_ = std::move(terms);
    return p;
}

BiPoly BiPoly::constant(std::uint32_t c, const Prime& p) {
    c %= p.value();
    if (c == 0) return {};
    return poly_from_canonical({Term{0, 0, c}});
}

BiPoly BiPoly::monomial(std::uint32_t i, std::uint32_t j, std::uint32_t c, const Prime& p) {
    c %= p.value();
    if (c == 0) return {};
    return poly_from_canonical({Term{i, j, c}});
}

BiPoly BiPoly::from_terms(std::vector<Term> terms, const Prime& p) {
    std::sort(terms.begin(), terms.end(), term_order);
    std::vector<Term> out;
    out.reserve(terms.size());
    for (const Term& t : terms) {
        std::uint32_t c = t.c % p.value();
        if (!out.empty() && out.back().x == t.x && out.back().y == t.y) {
            out.back().c = p.add(out.back().c, c);
        } else {
            out.push_back(Term{t.x, t.y, c});
        }
    }
    std::erase_if(out, [](const Term& t) { return t.c == 0; });
    return poly_from_canonical(std::move(out));
}

BiPoly BiPoly::from_signed(
    std::initializer_list<std::tuple<std::uint32_t, std::uint32_t, std::int64_t>> terms,
    const Prime& p) {
    std::vector<Term> v;
    v.reserve(terms.size());
    for (const auto& [i, j, c] : terms) v.push_back(Term{i, j, p.reduce(c)});
    return from_terms(std::move(v), p);
}

std::uint32_t BiPoly::coeff(std::uint32_t i, std::uint32_t j) const {
    Term probe{i, j, 0};
    auto it = std::lower_bound(terms_.begin(), terms_.end(), probe, term_order);
    if (it != terms_.end() && it->x == i && it->y == j) return it->c;
    return 0;
}

std::uint32_t BiPoly::degree_x() const noexcept {
    return terms_.empty() ? 0 : terms_.back().x;
}

std::uint32_t BiPoly::degree_y() const noexcept {
    std::uint32_t d = 0;
    for (const Term& t : terms_) d = std::max(d, t.y);
    return d;
}

bool BiPoly::operator<(const BiPoly& o) const {
    return std::lexicographical_compare(
        terms_.begin(), terms_.end(), o.terms_.begin(), o.terms_.end(),
        [](const Term& a, const Term& b) {
            return std::tie(a.x, a.y, a.c) < std::tie(b.x, b.y, b.c);
        });
}

std::size_t BiPoly::hash() const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    for (const Term& t : terms_) {
        mix((static_cast<std::uint64_t>(t.x) << 40) ^ (static_cast<std::uint64_t>(t.y) << 20) ^
            t.c);
    }
    return h;
}

std::string BiPoly::str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const Term& t : terms_) {
        if (!s.empty()) s += " + ";
        bool bare = (t.x == 0 && t.y == 0);
        if (t.c != 1 || bare) s += std::to_string(t.c);
        if (t.c != 1 && !bare) s += "*";
        if (t.x >= 1) {
            s += "x";
            if (t.x > 1) s += "^" + std::to_string(t.x);
        }
        if (t.y >= 1) {
            if (t.x >= 1) s += "*";
            s += "y";
            if (t.y > 1) s += "^" + std::to_string(t.y);
        }
    }
    return s;
}

BiPoly poly_add(const BiPoly& a, const BiPoly& b, const Prime& p) {
    std::vector<Term> out;
    out.reserve(a.term_count() + b.term_count());
    auto ia = a.terms().begin(), ea = a.terms().end();
    auto ib = b.terms().begin(), eb = b.terms().end();
    while (ia != ea || ib != eb) {
        if (ib == eb || (ia != ea && term_order(*ia, *ib))) {
            out.push_back(*ia++);
        } else if (ia == ea || term_order(*ib, *ia)) {
            out.push_back(*ib++);
        } else {
            std::uint32_t c = p.add(ia->c, ib->c);
            if (c != 0) out.push_back(Term{ia->x, ia->y, c});
            ++ia;
            ++ib;
        }
    }
    return poly_from_canonical(std::move(out));
}

BiPoly poly_scale(const BiPoly& a, std::uint32_t c, const Prime& p) {
    c %= p.value();
    if (c == 0) return {};
    std::vector<Term> out;
    out.reserve(a.term_count());
    for (const Term& t : a.terms()) out.push_back(Term{t.x, t.y, p.mul(t.c, c)});
    return poly_from_canonical(std::move(out));
}

BiPoly poly_neg(const BiPoly& a, const Prime& p) {
    return poly_scale(a, p.value() - 1, p);
}

namespace {

// Dense accumulation over the product's bounding box; falls back to a hash
// map when the box would be large relative to the actual term pairs.
constexpr std::uint64_t kDenseCellLimit = 1ull << 26;

BiPoly mul_dense(const BiPoly& a, const BiPoly& b, const Prime& p) {
    const std::uint64_t pv = p.value();
    const std::uint32_t dx = a.degree_x() + b.degree_x();
    const std::uint32_t dy = a.degree_y() + b.degree_y();
    const std::size_t w = dy + 1;
    std::vector<std::uint64_t> acc((static_cast<std::size_t>(dx) + 1) * w, 0);
    for (const Term& ta : a.terms()) {
        const std::uint64_t ca = ta.c;
        std::uint64_t* row = acc.data() + static_cast<std::size_t>(ta.x) * w + ta.y;
        for (const Term& tb : b.terms()) {
            std::uint64_t& cell = row[static_cast<std::size_t>(tb.x) * w + tb.y];
            cell += ca * tb.c;
            // Lazy reduction: each addend is < p^2 < 2^40, so reducing once
            // the top bit region is reached can never overflow.
            if (cell >= (1ull << 62)) cell %= pv;
        }
    }
    std::vector<Term> out;
    for (std::uint32_t i = 0; i <= dx; ++i) {
        const std::uint64_t* row = acc.data() + static_cast<std::size_t>(i) * w;
        for (std::uint32_t j = 0; j <= dy; ++j) {
            std::uint32_t c = static_cast<std::uint32_t>(row[j] % pv);
            if (c != 0) out.push_back(Term{i, j, c});
        }
    }
    return poly_from_canonical(std::move(out));
}

BiPoly mul_sparse(const BiPoly& a, const BiPoly& b, const Prime& p) {
    std::unordered_map<std::uint64_t, std::uint64_t> acc;
    acc.reserve(a.term_count() * 2);
    const std::uint64_t pv = p.value();
    for (const Term& ta : a.terms()) {
        for (const Term& tb : b.terms()) {
            std::uint64_t key = (static_cast<std::uint64_t>(ta.x + tb.x) << 32) | (ta.y + tb.y);
            std::uint64_t& cell = acc[key];
            cell += static_cast<std::uint64_t>(ta.c) * tb.c;
            if (cell >= (1ull << 62)) cell %= pv;
        }
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (const auto& [key, v] : acc) {
        std::uint32_t c = static_cast<std::uint32_t>(v % pv);
        if (c != 0)
            out.push_back(Term{static_cast<std::uint32_t>(key >> 32),
                               static_cast<std::uint32_t>(key & 0xffffffffu), c});
    }
    std::sort(out.begin(), out.end(), term_order);
    return poly_from_canonical(std::move(out));
}

}  // namespace

BiPoly poly_mul(const BiPoly& a, const BiPoly& b, const Prime& p) {
    if (a.is_zero() || b.is_zero()) return {};
    std::uint64_t cells = (static_cast<std::uint64_t>(a.degree_x()) + b.degree_x() + 1) *
                          (static_cast<std::uint64_t>(a.degree_y()) + b.degree_y() + 1);
    if (cells <= kDenseCellLimit) return mul_dense(a, b, p);
    return mul_sparse(a, b, p);
}

BiPoly poly_pow(const BiPoly& a, std::uint64_t e, const Prime& p) {
    BiPoly result = BiPoly::constant(1, p);
    BiPoly base = a;
    while (e) {
        if (e & 1) result = poly_mul(result, base, p);
        e >>= 1;
        if (e) base = poly_mul(base, base, p);
    }
    return result;
}

BiPoly cartier(const BiPoly& a, std::uint32_t d1, std::uint32_t d2, const Prime& p) {
    const std::uint32_t pv = p.value();
    if (d1 >= pv || d2 >= pv) throw std::invalid_argument("cartier digit out of range");
    std::vector<Term> out;
    for (const Term& t : a.terms()) {
        if (t.x % pv == d1 && t.y % pv == d2) out.push_back(Term{t.x / pv, t.y / pv, t.c});
    }
    // Input order (x, y) sorted implies output order sorted: within a fixed
    // digit class, x/p and y/p are strictly monotone in x and y.
    return poly_from_canonical(std::move(out));
}

std::vector<BiPoly> cartier_diagonal_images(const BiPoly& a, const Prime& p) {
    const std::uint32_t pv = p.value();
    std::vector<std::vector<Term>> buckets(pv);
    for (const Term& t : a.terms()) {
        std::uint32_t d = t.x % pv;
        if (t.y % pv == d) buckets[d].push_back(Term{t.x / pv, t.y / pv, t.c});
    }
    std::vector<BiPoly> out;
    out.reserve(pv);
    for (auto& b : buckets) out.push_back(poly_from_canonical(std::move(b)));
    return out;
}

BiPoly seed_poly(const Prime& p) {
    return BiPoly::from_signed({{0, 1, 1}, {1, 2, -1}, {2, 3, -2}, {2, 4, -2}}, p);
}

BiPoly kernel_poly(const Prime& p) {
    return BiPoly::from_signed({{0, 0, -1}, {1, 0, 1}, {1, 1, 1}, {2, 1, 1}, {2, 2, 2}, {2, 3, 1}},
                               p);
}

BiPoly monomial_cartier_closed(std::uint32_t r, std::uint32_t t, std::uint32_t d,
                               const BinomTable& binom) {
    const Prime& p = binom.prime();
    const std::int64_t pv = p.value();
    if (d >= p.value()) throw std::invalid_argument("cartier digit out of range");
    std::vector<Term> out;
    for (std::int64_t i = 0; pv * i + d <= 2 * (pv - 1) + r; ++i) {
        const std::int64_t xi = pv * i + d - r;  // source x-degree offset
        if (xi < 0) continue;
        for (std::int64_t j = 0; pv * j + d <= 3 * (pv - 1) + t; ++j) {
            const std::int64_t yj = pv * j + d - t;
            if (yj < 0) continue;
            std::uint64_t acc = 0;
            for (std::int64_t k = 0; 2 * k <= xi && k <= pv - 1; ++k) {
                acc += static_cast<std::uint64_t>(
                    p.mul(binom.binom(pv - 1 - k, xi - 2 * k), binom.binom(xi, yj - k)));
            }
            std::uint32_t c = static_cast<std::uint32_t>(acc % pv);
            if ((i + d + r) % 2 == 1) c = p.neg(c);
            if (c != 0)
                out.push_back(
                    Term{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), c});
        }
    }
    return poly_from_canonical(std::move(out));
}

}  // namespace motzkin
