#pragma once
// Laurent polynomials and rational functions F_q(t), places and discrete
// rank-1 valuations, and the rewriting of symmetric Laurent polynomials
// into the trace parameter s = x + x^-1.
//
// A rational function is kept in canonical form
//     f = t^m * P(t) / Q(t)
// with P, Q ordinary polynomials, P(0) != 0, Q(0) != 0, gcd(P, Q) = 1 and
// Q monic.  Places are monic irreducible polynomials (or the point at
// infinity); working with polynomials rather than roots keeps valuations
// exact without algebraic-closure arithmetic.

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sl2cv/fq.hpp"

namespace sl2cv {

namespace detail {

using Dense = std::vector<FqElem>;  // ascending coefficients, no trailing zeros

inline void dense_trim(Dense& f) {
    while (!f.empty() && f.back().is_zero()) f.pop_back();
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
    if (a.empty() || b.empty()) return {};
    Dense out(a.size() + b.size() - 1, a[0].zero());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            out[i + j] = out[i + j] + a[i] * b[j];
    dense_trim(out);
    return out;
}

inline std::pair<Dense, Dense> dense_divmod(Dense a, const Dense& b) {
    if (b.empty()) throw std::domain_error("poly: division by zero");
    if (a.size() < b.size()) return {Dense{}, a};
    FqElem lead_inv = b.back().inv();
    Dense quot(a.size() - b.size() + 1, b[0].zero());
    while (a.size() >= b.size() && !a.empty()) {
        FqElem c = a.back() * lead_inv;
        std::size_t shift = a.size() - b.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] = a[shift + i] - c * b[i];
        dense_trim(a);
    }
    dense_trim(quot);
    return {quot, a};
}

inline Dense dense_monic(Dense f) {
    if (f.empty()) return f;
    FqElem li = f.back().inv();
    for (auto& c : f) c = c * li;
    return f;
}

inline Dense dense_gcd(Dense a, Dense b) {
    while (!b.empty()) {
        Dense r = dense_divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return dense_monic(a);
}

inline FqElem dense_eval(const Dense& f, const FqElem& c) {
    FqElem acc = c.zero();
    for (auto it = f.rbegin(); it != f.rend(); ++it) acc = acc * c + *it;
    return acc;
}

inline Dense dense_powmod(Dense base, std::int64_t e, const Dense& mod) {
    Dense acc = {mod[0].one()};
    base = dense_divmod(std::move(base), mod).second;
    while (e > 0) {
        if (e & 1) acc = dense_divmod(dense_mul(acc, base), mod).second;
        base = dense_divmod(dense_mul(base, base), mod).second;
        e >>= 1;
    }
    return acc;
}

// Full factorization of a nonzero polynomial into monic irreducibles
// (with multiplicities; the leading unit is dropped).  Distinct-degree
// splitting with lexicographic trial division for equal-degree parts;
// the degrees arising here are tiny.
inline std::vector<std::pair<Dense, int>> dense_factor(Dense f, const FqFieldPtr& F) {
    if (f.empty()) throw std::domain_error("poly: factoring zero");
    std::vector<std::pair<Dense, int>> out;
    f = dense_monic(std::move(f));

    auto divide_out = [&](const Dense& pi) {
        int mult = 0;
        for (;;) {
            auto [q, r] = dense_divmod(f, pi);
            if (!r.empty()) break;
            f = q;
            ++mult;
        }
        if (mult > 0) out.push_back({pi, mult});
    };

    // linear factors by root scan, in enumeration order
    for (std::int64_t i = 0; i < F->order() && f.size() > 1; ++i) {
        FqElem c = F->element(i);
        if (!dense_eval(f, c).is_zero()) continue;
        divide_out(Dense{-c, F->one()});
    }

    for (std::int64_t d = 2; 2 * d <= static_cast<std::int64_t>(f.size()) - 1; ++d) {
        // gcd(t^{q^d} - t, f) collects the degree-d irreducible factors
        Dense frob = {F->zero(), F->one()};  // t
        for (std::int64_t i = 0; i < d; ++i) frob = dense_powmod(std::move(frob), F->order(), f);
        Dense diff = frob;
        if (diff.size() < 2) diff.resize(2, F->zero());
        diff[1] = diff[1] - F->one();
        dense_trim(diff);
        Dense s = diff.empty() ? f : dense_gcd(f, diff);
        if (s.size() <= 1) continue;
        if (static_cast<std::int64_t>(s.size()) - 1 == d) {
            divide_out(s);
            continue;
        }
        // several degree-d factors: split by lexicographic enumeration
        std::int64_t count = 1;
        for (std::int64_t i = 0; i < d; ++i) count *= F->order();
        for (std::int64_t idx = 0; idx < count && s.size() > 1; ++idx) {
            Dense g(static_cast<std::size_t>(d) + 1, F->zero());
            std::int64_t rest = idx;
            for (std::int64_t i = 0; i < d; ++i) { g[static_cast<std::size_t>(i)] = F->element(rest % F->order()); rest /= F->order(); }
            g[static_cast<std::size_t>(d)] = F->one();
            auto [q, r] = dense_divmod(s, g);
            if (!r.empty()) continue;
            s = q;
            divide_out(g);
        }
    }
    if (f.size() > 1) out.push_back({f, 1});  // irreducible remainder
    return out;
}

}  // namespace detail

/// Laurent polynomial: finite map exponent -> nonzero coefficient.
class LaurentPoly {
public:
    explicit LaurentPoly(FqFieldPtr field) : field_(std::move(field)) {}

    static LaurentPoly zero(FqFieldPtr field) { return LaurentPoly(std::move(field)); }
    static LaurentPoly term(const FqFieldPtr& field, std::int64_t exp, const FqElem& coeff) {
        LaurentPoly f(field);
        if (!coeff.is_zero()) f.terms_.push_back({exp, coeff});
        return f;
    }
    static LaurentPoly constant(const FqElem& c) { return term(c.field(), 0, c); }
    static LaurentPoly variable(const FqFieldPtr& field) { return term(field, 1, field->one()); }

    const FqFieldPtr& field() const { return field_; }
    const std::vector<std::pair<std::int64_t, FqElem>>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first == 0);
    }
    std::int64_t min_exp() const { require_nonzero(); return terms_.front().first; }
    std::int64_t max_exp() const { require_nonzero(); return terms_.back().first; }

    FqElem coeff(std::int64_t exp) const {
        for (auto& [e, c] : terms_)
            if (e == exp) return c;
        return field_->zero();
    }

    LaurentPoly shifted(std::int64_t delta) const {
        LaurentPoly out(field_);
        out.terms_ = terms_;
        for (auto& [e, c] : out.terms_) e += delta;
        return out;
    }

    friend LaurentPoly operator+(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_field(b);
        LaurentPoly out(a.field_);
        std::size_t i = 0, j = 0;
        while (i < a.terms_.size() || j < b.terms_.size()) {
            if (j >= b.terms_.size() || (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
                out.terms_.push_back(a.terms_[i++]);
            } else if (i >= a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
                out.terms_.push_back(b.terms_[j++]);
            } else {
                FqElem c = a.terms_[i].second + b.terms_[j].second;
                if (!c.is_zero()) out.terms_.push_back({a.terms_[i].first, c});
                ++i; ++j;
            }
        }
        return out;
    }
    friend LaurentPoly operator-(const LaurentPoly& a) {
        LaurentPoly out(a.field_);
        out.terms_ = a.terms_;
        for (auto& [e, c] : out.terms_) c = -c;
        return out;
    }
    friend LaurentPoly operator-(const LaurentPoly& a, const LaurentPoly& b) { return a + (-b); }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_field(b);
        std::map<std::int64_t, FqElem> acc;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) {
                auto it = acc.find(ea + eb);
                if (it == acc.end()) acc.emplace(ea + eb, ca * cb);
                else it->second = it->second + ca * cb;
            }
        LaurentPoly out(a.field_);
        for (auto& [e, c] : acc)
            if (!c.is_zero()) out.terms_.push_back({e, c});
        return out;
    }
    LaurentPoly pow(std::int64_t e) const {
        if (e < 0) throw std::invalid_argument("laurent: negative power (use RatFunc)");
        LaurentPoly acc = constant(field_->one()), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
        a.check_field(b);
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

    /// Ordinary-polynomial coefficient vector; requires min_exp >= 0.
    detail::Dense dense() const {
        if (is_zero()) return {};
        if (min_exp() < 0) throw std::invalid_argument("laurent: negative exponents in dense()");
        detail::Dense out(static_cast<std::size_t>(max_exp()) + 1, field_->zero());
        for (auto& [e, c] : terms_) out[static_cast<std::size_t>(e)] = c;
        return out;
    }
    static LaurentPoly from_dense(const FqFieldPtr& field, const detail::Dense& d) {
        LaurentPoly out(field);
        for (std::size_t i = 0; i < d.size(); ++i)
            if (!d[i].is_zero()) out.terms_.push_back({static_cast<std::int64_t>(i), d[i]});
        return out;
    }

    /// f(c); c may live in an extension field.  Errors at c = 0 when
    /// negative exponents are present.
    FqElem evaluate(const FqElem& c) const {
        const FqFieldPtr& T = c.field();
        FqElem acc = T->zero();
        if (is_zero()) return acc;
        if (min_exp() < 0 && c.is_zero()) throw std::domain_error("laurent: evaluation at pole t=0");
        FqElem cinv = min_exp() < 0 ? c.inv() : T->zero();
        for (auto& [e, coef] : terms_) {
            FqElem tpow = e >= 0 ? c.pow(e) : cinv.pow(-e);
            acc = acc + embed(coef, T) * tpow;
        }
        return acc;
    }

    std::string to_string(const std::string& var = "t") const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            auto& [e, c] = *it;
            if (!s.empty()) s += " + ";
            std::string coeff = c.to_string();
            if (e == 0) { s += coeff; continue; }
            std::string mono = (e == 1) ? var : var + "^" + std::to_string(e);
            s += (coeff == "1") ? mono : coeff + "*" + mono;
        }
        return s;
    }

private:
    void require_nonzero() const {
        if (terms_.empty()) throw std::domain_error("laurent: zero polynomial");
    }
    void check_field(const LaurentPoly& other) const {
        if (field_.get() != other.field_.get() && !field_->same_as(*other.field_))
            throw std::invalid_argument("laurent: different base fields");
    }

    FqFieldPtr field_;
    std::vector<std::pair<std::int64_t, FqElem>> terms_;
};

/// A place of F_q(t): the point at infinity or a monic irreducible polynomial.
struct Place {
    bool at_infinity = false;
    detail::Dense poly;  // monic irreducible, ascending coefficients; empty iff infinity

    static Place infinity() { return Place{true, {}}; }
    /// The polynomial must be monic and irreducible; only monicity is checked.
    static Place finite(detail::Dense p) {
        if (p.size() < 2) throw std::invalid_argument("place: polynomial of degree < 1");
        if (p.back() != p.back().one()) throw std::invalid_argument("place: polynomial not monic");
        return Place{false, std::move(p)};
    }
    static Place at_zero(const FqFieldPtr& field) {  // the place t
        return finite({field->zero(), field->one()});
    }

    std::int64_t degree() const { return at_infinity ? 1 : static_cast<std::int64_t>(poly.size()) - 1; }

    bool is_t() const {
        return !at_infinity && poly.size() == 2 && poly[0].is_zero();
    }

    friend bool operator==(const Place& a, const Place& b) {
        if (a.at_infinity != b.at_infinity) return false;
        if (a.at_infinity) return true;
        if (a.poly.size() != b.poly.size()) return false;
        for (std::size_t i = 0; i < a.poly.size(); ++i)
            if (a.poly[i] != b.poly[i]) return false;
        return true;
    }
    friend bool operator<(const Place& a, const Place& b) {
        if (a.at_infinity != b.at_infinity) return a.at_infinity;
        if (a.at_infinity) return false;
        if (a.poly.size() != b.poly.size()) return a.poly.size() < b.poly.size();
        for (std::size_t i = a.poly.size(); i-- > 0;)
            if (a.poly[i].index() != b.poly[i].index()) return a.poly[i].index() < b.poly[i].index();
        return false;
    }

    std::string to_string(const std::string& var = "t") const {
        if (at_infinity) return "infinity";
        return LaurentPoly::from_dense(poly[0].field(), poly).to_string(var);
    }
};

/// Valuation value: an integer or +infinity (for the zero function).
class Valuation {
public:
    static Valuation infinite() { return Valuation(true, 0); }
    static Valuation of(std::int64_t v) { return Valuation(false, v); }

    bool is_infinite() const { return infinite_; }
    std::int64_t value() const {
        if (infinite_) throw std::domain_error("valuation: +infinity has no integer value");
        return v_;
    }
    bool nonnegative() const { return infinite_ || v_ >= 0; }
    bool negative() const { return !nonnegative(); }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.v_ == b.v_);
    }
    friend bool operator==(const Valuation& a, std::int64_t v) { return !a.infinite_ && a.v_ == v; }

    std::string to_string() const { return infinite_ ? "+inf" : std::to_string(v_); }

private:
    Valuation(bool inf, std::int64_t v) : infinite_(inf), v_(v) {}
    bool infinite_;
    std::int64_t v_;
};

/// Rational function in canonical reduced form (see file comment).
class RatFunc {
public:
    explicit RatFunc(FqFieldPtr field)
        : num_(LaurentPoly::zero(field)), den_(LaurentPoly::constant(field->one())) {}

    RatFunc(const LaurentPoly& num, const LaurentPoly& den)
        : num_(num.field()), den_(num.field()) {
        if (den.is_zero()) throw std::domain_error("ratfunc: division by zero");
        if (num.is_zero()) {
            num_ = LaurentPoly::zero(num.field());
            den_ = LaurentPoly::constant(num.field()->one());
            return;
        }
        const FqFieldPtr& F = num.field();
        std::int64_t shift = num.min_exp() - den.min_exp();
        detail::Dense P = num.shifted(-num.min_exp()).dense();
        detail::Dense Q = den.shifted(-den.min_exp()).dense();
        detail::Dense g = detail::dense_gcd(P, Q);
        if (g.size() > 1) {
            P = detail::dense_divmod(P, g).first;
            Q = detail::dense_divmod(Q, g).first;
        }
        FqElem li = Q.back().inv();
        for (auto& c : Q) c = c * li;
        for (auto& c : P) c = c * li;
        num_ = LaurentPoly::from_dense(F, P).shifted(shift);
        den_ = LaurentPoly::from_dense(F, Q);
    }

    static RatFunc zero(const FqFieldPtr& field) { return RatFunc(field); }
    static RatFunc constant(const FqElem& c) { return from_laurent(LaurentPoly::constant(c)); }
    static RatFunc from_int(const FqFieldPtr& field, std::int64_t n) {
        return constant(field->from_int(n));
    }
    static RatFunc variable(const FqFieldPtr& field) {
        return from_laurent(LaurentPoly::variable(field));
    }
    static RatFunc from_laurent(const LaurentPoly& f) {
        RatFunc r(f.field());
        r.num_ = f;
        return r;
    }

    const LaurentPoly& num() const { return num_; }
    const LaurentPoly& den() const { return den_; }
    const FqFieldPtr& field() const { return num_.field(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return den_.is_constant() && num_.is_constant(); }

    RatFunc zero() const { return RatFunc(field()); }
    RatFunc one() const { return constant(field()->one()); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) {
        RatFunc out = a;
        out.num_ = -out.num_;
        return out;
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    RatFunc inv() const {
        if (is_zero()) throw std::domain_error("ratfunc: division by zero");
        return RatFunc(den_, num_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inv(); }
    RatFunc pow(std::int64_t e) const {
        if (e < 0) return inv().pow(-e);
        RatFunc acc = one(), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    /// f(c); pole-error if the denominator vanishes at c (or c = 0 meets a
    /// negative exponent).
    FqElem eval(const FqElem& c) const {
        FqElem d = den_.evaluate(c);
        if (d.is_zero()) throw std::domain_error("ratfunc: evaluation at a pole");
        return num_.evaluate(c) / d;
    }

    std::string to_string(const std::string& var = "t") const {
        if (den_.is_constant()) return num_.to_string(var);
        return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
    }

private:
    LaurentPoly num_, den_;
};

inline Valuation valuation_at(const RatFunc& f, const Place& xi) {
    if (f.is_zero()) return Valuation::infinite();
    if (xi.at_infinity) {
        std::int64_t den_deg = f.den().max_exp();
        return Valuation::of(den_deg - f.num().max_exp());
    }
    if (xi.is_t()) return Valuation::of(f.num().min_exp());
    // multiplicity of xi in the numerator's polynomial part minus the denominator
    auto mult = [&xi](detail::Dense g) {
        int m = 0;
        for (;;) {
            auto [q, r] = detail::dense_divmod(g, xi.poly);
            if (!r.empty()) break;
            g = q;
            ++m;
        }
        return m;
    };
    detail::Dense P = f.num().shifted(-f.num().min_exp()).dense();
    detail::Dense Q = f.den().dense();
    return Valuation::of(mult(P) - mult(Q));
}

/// All places where f has nonzero valuation (zeros and poles), sorted.
inline std::vector<std::pair<Place, std::int64_t>> support(const RatFunc& f) {
    if (f.is_zero()) throw std::domain_error("support: zero function");
    const FqFieldPtr& F = f.field();
    std::vector<std::pair<Place, std::int64_t>> out;
    auto add = [&out](const Place& xi, std::int64_t v) {
        if (v != 0) out.push_back({xi, v});
    };
    add(Place::infinity(), f.den().max_exp() - f.num().max_exp());
    add(Place::at_zero(F), f.num().min_exp());
    detail::Dense P = f.num().shifted(-f.num().min_exp()).dense();
    if (P.size() > 1)
        for (auto& [pi, m] : detail::dense_factor(P, F)) add(Place::finite(pi), m);
    detail::Dense Q = f.den().dense();
    if (Q.size() > 1)
        for (auto& [pi, m] : detail::dense_factor(Q, F)) add(Place::finite(pi), -m);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

/// Places with negative valuation.
inline std::vector<Place> pole_places(const RatFunc& f) {
    std::vector<Place> out;
    for (auto& [xi, v] : support(f))
        if (v < 0) out.push_back(xi);
    return out;
}

/// Rewrites a symmetric Laurent polynomial f(x) (coefficients of x^n and
/// x^-n equal) as an ordinary polynomial P with P(x + x^-1) = f(x),
/// via x^n + x^-n = s*(x^{n-1} + x^{1-n}) - (x^{n-2} + x^{2-n}).
inline LaurentPoly to_trace_basis(const LaurentPoly& f) {
    const FqFieldPtr& F = f.field();
    if (f.is_zero()) return LaurentPoly::zero(F);
    std::int64_t n_max = std::max(std::int64_t(0), std::max(f.max_exp(), -f.min_exp()));
    for (std::int64_t n = 1; n <= n_max; ++n)
        if (f.coeff(n) != f.coeff(-n))
            throw std::invalid_argument("to_trace_basis: polynomial is not symmetric");
    LaurentPoly s = LaurentPoly::variable(F);
    LaurentPoly prev = LaurentPoly::constant(F->from_int(2));  // x^0 + x^-0
    LaurentPoly cur = s;                                       // x^1 + x^-1
    LaurentPoly out = LaurentPoly::constant(f.coeff(0));
    for (std::int64_t n = 1; n <= n_max; ++n) {
        out = out + LaurentPoly::constant(f.coeff(n)) * cur;
        LaurentPoly next = s * cur - prev;
        prev = cur;
        cur = next;
    }
    return out;
}

/// Substitutes g for the variable of an ordinary polynomial (used to check
/// to_trace_basis round trips).
inline LaurentPoly compose(const LaurentPoly& poly, const LaurentPoly& g) {
    const FqFieldPtr& F = poly.field();
    LaurentPoly acc = LaurentPoly::zero(F);
    if (poly.is_zero()) return acc;
    for (std::int64_t e = poly.max_exp(); e >= 0; --e) {
        acc = acc * g + LaurentPoly::constant(poly.coeff(e));
    }
    return acc;
}

}  // namespace sl2cv
