#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <tuple>
#include <vector>

#include "motzkin/field.hpp"

namespace motzkin {

struct Term {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::uint32_t c = 0;  // coefficient in [1, p-1] once canonicalized

    bool operator==(const Term&) const = default;
};

// Sparse bivariate polynomial over GF(p) in canonical form: terms sorted by
// (x-degree, y-degree), no zero coefficients, coefficients reduced into
// [0, p). Two polynomials that are equal mod p always compare equal.
// Immutable after construction and safe to share across threads.
class BiPoly {
public:
    BiPoly() = default;  // zero polynomial

    static BiPoly constant(std::uint32_t c, const Prime& p);
    static BiPoly monomial(std::uint32_t i, std::uint32_t j, std::uint32_t c, const Prime& p);
    // Accepts unsorted terms with duplicates and arbitrary signed coefficients.
    static BiPoly from_terms(std::vector<Term> terms, const Prime& p);
    static BiPoly from_signed(
        std::initializer_list<std::tuple<std::uint32_t, std::uint32_t, std::int64_t>> terms,
        const Prime& p);

    const std::vector<Term>& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }

    std::uint32_t coeff(std::uint32_t i, std::uint32_t j) const;

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].x == 0 && terms_[0].y == 0);
    }

    std::uint32_t degree_x() const noexcept;  // 0 for the zero polynomial
    std::uint32_t degree_y() const noexcept;

    bool operator==(const BiPoly&) const = default;
    bool operator<(const BiPoly& o) const;  // total order for ordered containers

    std::size_t hash() const noexcept;

    // "2*x^2*y^3 + x*y + 4" with coefficients in [0, p); "0" when zero.
    std::string str() const;

private:
    friend BiPoly poly_from_canonical(std::vector<Term> terms);
    std::vector<Term> terms_;
};

// Value at x = 0, y = 0, i.e. the constant coefficient.
inline std::uint32_t eval_origin(const BiPoly& a) { return a.coeff(0, 0); }

BiPoly poly_add(const BiPoly& a, const BiPoly& b, const Prime& p);
BiPoly poly_scale(const BiPoly& a, std::uint32_t c, const Prime& p);
BiPoly poly_neg(const BiPoly& a, const Prime& p);
BiPoly poly_mul(const BiPoly& a, const BiPoly& b, const Prime& p);
// Repeated squaring; poly_pow(a, 0) is the constant 1.
BiPoly poly_pow(const BiPoly& a, std::uint64_t e, const Prime& p);

// Cartier operator: sends sum a_{m,n} x^m y^n to
// sum a_{p m + d1, p n + d2} x^m y^n. Linear, degree non-increasing.
BiPoly cartier(const BiPoly& a, std::uint32_t d1, std::uint32_t d2, const Prime& p);

// All p diagonal images Lambda_{d,d}(a) for d = 0..p-1 in one pass over the
// term list; result[d] == cartier(a, d, d, p).
std::vector<BiPoly> cartier_diagonal_images(const BiPoly& a, const Prime& p);

// The automaton's initial-state polynomial y(1 - xy - 2x^2y^2 - 2x^2y^3).
BiPoly seed_poly(const Prime& p);

// The transition kernel base Q = x^2y(y+1)^2 + x(y+1) - 1; its (p-1)-th
// power drives every transition.
BiPoly kernel_poly(const Prime& p);

// Closed-form Lambda_{d,d}(x^r y^t Q^{p-1}) computed termwise from binomial
// sums, without any polynomial multiplication. Coefficient of x^i y^j is
//   sum_k C(p-1-k, pi+d-r-2k) C(pi+d-r, pj+d-t-k) (-1)^(i+d+r)
// over the index window r <= pi+d <= 2(p-1)+r, t <= pj+d <= 3(p-1)+t.
// Deliberately a second, independent route to the same map; used by tests
// and the digit-constant scan, never by the automaton builder.
BiPoly monomial_cartier_closed(std::uint32_t r, std::uint32_t t, std::uint32_t d,
                               const BinomTable& binom);

}  // namespace motzkin
