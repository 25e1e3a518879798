#pragma once
// Exact arithmetic in finite fields F_{p^k}.
//
// A field is an immutable descriptor (characteristic, extension degree,
// canonical modulus) shared by its elements.  Elements are stored as an
// index in [0, p^k) encoding the polynomial-basis coefficient vector in
// base p.  All arithmetic is integer arithmetic mod p; there is no
// floating point anywhere.

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sl2cv {

class FqField;
using FqFieldPtr = std::shared_ptr<const FqField>;
class FqElem;

namespace detail {

inline bool is_prime_i64(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::int64_t mod_p(std::int64_t a, std::int64_t p) {
    std::int64_t r = a % p;
    return r < 0 ? r + p : r;
}

// Inverse mod prime p via extended Euclid.
inline std::int64_t inv_mod_p(std::int64_t a, std::int64_t p) {
    a = mod_p(a, p);
    if (a == 0) throw std::domain_error("fq: division by zero");
    std::int64_t t = 0, new_t = 1, r = p, new_r = a;
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        std::int64_t tmp = t - q * new_t;
        t = new_t; new_t = tmp;
        tmp = r - q * new_r;
        r = new_r; new_r = tmp;
    }
    return mod_p(t, p);
}

using ZpPoly = std::vector<std::int64_t>;  // dense, coeffs[i] mod p, no trailing zeros

inline void zp_trim(ZpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

inline ZpPoly zp_rem(ZpPoly a, const ZpPoly& b, std::int64_t p) {
    std::int64_t lead_inv = inv_mod_p(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        std::int64_t c = mod_p(a.back() * lead_inv, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i)
            a[shift + i] = mod_p(a[shift + i] - c * b[i], p);
        zp_trim(a);
    }
    return a;
}

// Irreducibility over Z_p by trial division by every monic polynomial of
// degree <= deg/2.  Degrees in this artifact are tiny.
inline bool zp_irreducible(const ZpPoly& f, std::int64_t p) {
    std::int64_t deg = static_cast<std::int64_t>(f.size()) - 1;
    if (deg < 1) return false;
    if (deg == 1) return true;
    for (std::int64_t d = 1; 2 * d <= deg; ++d) {
        std::int64_t count = 1;
        for (std::int64_t i = 0; i < d; ++i) count *= p;
        for (std::int64_t idx = 0; idx < count; ++idx) {
            ZpPoly g(static_cast<std::size_t>(d) + 1, 0);
            std::int64_t rest = idx;
            for (std::int64_t i = 0; i < d; ++i) { g[static_cast<std::size_t>(i)] = rest % p; rest /= p; }
            g[static_cast<std::size_t>(d)] = 1;
            if (zp_rem(f, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

/// Descriptor of F_{p^k}: prime characteristic, extension degree, and the
/// canonical modulus (the lexicographically smallest monic irreducible
/// polynomial of degree k over Z_p, coefficients compared low-degree first).
class FqField : public std::enable_shared_from_this<FqField> {
public:
    static constexpr int kMaxDegree = 8;

    static FqFieldPtr make(std::int64_t p, std::int64_t k = 1) {
        if (!detail::is_prime_i64(p)) throw std::invalid_argument("fq: characteristic must be prime");
        if (k < 1) throw std::invalid_argument("fq: extension degree must be >= 1");
        if (k > kMaxDegree) throw std::invalid_argument("fq: extension degree too large");
        std::int64_t q = 1;
        for (std::int64_t i = 0; i < k; ++i) {
            if (q > (std::int64_t(1) << 40) / p) throw std::invalid_argument("fq: field too large");
            q *= p;
        }
        return FqFieldPtr(new FqField(p, k, q));
    }

    std::int64_t p() const { return p_; }
    std::int64_t k() const { return k_; }
    std::int64_t order() const { return q_; }
    /// Modulus coefficients c_0..c_k (monic, c_k = 1).
    const std::vector<std::int64_t>& modulus() const { return modulus_; }

    bool same_as(const FqField& other) const {
        return p_ == other.p_ && k_ == other.k_;  // modulus is canonical in (p, k)
    }

    FqElem element(std::int64_t index) const;
    FqElem zero() const;
    FqElem one() const;
    FqElem from_int(std::int64_t n) const;
    /// The polynomial-basis generator X (equals 0 for prime fields viewed
    /// additively useful only when k > 1).
    FqElem generator() const;

    std::vector<FqElem> enumerate() const;

    /// Smallest x (enumeration order) with x^2 = -1, if one exists.
    std::optional<FqElem> sqrt_minus_one() const;

    /// Smallest root (enumeration order) of a monic polynomial given by
    /// coefficient elements of this field; nullopt if it has none here.
    std::optional<FqElem> find_root(const std::vector<FqElem>& poly) const;

    std::string tag() const {
        std::string s = "F" + std::to_string(q_);
        return s;
    }

private:
    FqField(std::int64_t p, std::int64_t k, std::int64_t q) : p_(p), k_(k), q_(q) {
        if (k_ == 1) {
            modulus_ = {0, 1};  // X
        } else {
            // Lexicographically smallest monic irreducible of degree k,
            // coefficients compared low-degree first.
            for (std::int64_t idx = 0; idx < q_; ++idx) {
                detail::ZpPoly f(static_cast<std::size_t>(k_) + 1, 0);
                for (std::int64_t j = 0; j < k_; ++j)  // c_0 is the most significant digit of idx
                    f[static_cast<std::size_t>(j)] = (idx / ipow(p_, k_ - 1 - j)) % p_;
                f[static_cast<std::size_t>(k_)] = 1;
                if (detail::zp_irreducible(f, p_)) { modulus_ = f; break; }
            }
        }
        if (modulus_.empty()) throw std::logic_error("fq: no irreducible modulus found");
        // Reduction rows: X^{k+i} mod modulus, i = 0..k-2.
        if (k_ > 1) {
            std::vector<std::int64_t> cur(modulus_.begin(), modulus_.end() - 1);
            for (auto& c : cur) c = detail::mod_p(-c, p_);  // X^k = -(c_0 + ... + c_{k-1} X^{k-1})
            reduction_.push_back(cur);
            for (std::int64_t i = 1; i + 1 < k_; ++i) {
                std::vector<std::int64_t> next(static_cast<std::size_t>(k_), 0);
                // multiply cur by X, reduce the overflow term
                std::int64_t top = cur.back();
                for (std::int64_t j = k_ - 1; j > 0; --j) next[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)];
                next[0] = 0;
                for (std::int64_t j = 0; j < k_; ++j)
                    next[static_cast<std::size_t>(j)] = detail::mod_p(next[static_cast<std::size_t>(j)] + top * reduction_[0][static_cast<std::size_t>(j)], p_);
                reduction_.push_back(next);
                cur = next;
            }
        }
    }

    static std::int64_t ipow(std::int64_t b, std::int64_t e) {
        std::int64_t r = 1;
        while (e-- > 0) r *= b;
        return r;
    }

    std::int64_t p_, k_, q_;
    std::vector<std::int64_t> modulus_;
    std::vector<std::vector<std::int64_t>> reduction_;

    friend class FqElem;
};

/// Element of F_{p^k}.  Immutable; carries its field.  Mixing elements of
/// different fields is an error, never an implicit embedding.
class FqElem {
public:
    FqElem() = default;
    FqElem(FqFieldPtr field, std::int64_t index) : field_(std::move(field)), v_(index) {
        if (!field_) throw std::invalid_argument("fq: null field");
        if (v_ < 0 || v_ >= field_->order()) throw std::invalid_argument("fq: element index out of range");
    }

    const FqFieldPtr& field() const { return field_; }
    std::int64_t index() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    /// Coefficients in the polynomial basis, length k, each in [0, p).
    std::vector<std::int64_t> coeffs() const {
        std::vector<std::int64_t> c(static_cast<std::size_t>(field_->k()));
        std::int64_t rest = v_;
        for (auto& x : c) { x = rest % field_->p(); rest /= field_->p(); }
        return c;
    }

    FqElem zero() const { return FqElem(field_, 0); }
    FqElem one() const { return field_->one(); }

    friend bool operator==(const FqElem& a, const FqElem& b) {
        a.check_field(b);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const FqElem& a, const FqElem& b) { return !(a == b); }

    friend FqElem operator+(const FqElem& a, const FqElem& b) { return a.add(b); }
    friend FqElem operator-(const FqElem& a, const FqElem& b) { return a.add(b.negated()); }
    friend FqElem operator-(const FqElem& a) { return a.negated(); }
    friend FqElem operator*(const FqElem& a, const FqElem& b) { return a.mul(b); }
    FqElem inv() const {
        if (is_zero()) throw std::domain_error("fq: division by zero");
        const auto& F = *field_;
        if (F.k_ == 1) return FqElem(field_, detail::inv_mod_p(v_, F.p_));
        // Extended Euclid in Z_p[X] against the modulus.
        detail::ZpPoly r0(F.modulus_.begin(), F.modulus_.end());
        auto dv = digits();
        detail::ZpPoly r1(dv.begin(), dv.end());
        detail::zp_trim(r1);
        detail::ZpPoly s0, s1 = {1};
        while (!r1.empty()) {
            // divide r0 by r1
            detail::ZpPoly quot;
            detail::ZpPoly rem = r0;
            std::int64_t lead_inv = detail::inv_mod_p(r1.back(), F.p_);
            if (rem.size() >= r1.size()) quot.assign(rem.size() - r1.size() + 1, 0);
            while (rem.size() >= r1.size() && !rem.empty()) {
                std::int64_t c = detail::mod_p(rem.back() * lead_inv, F.p_);
                std::size_t shift = rem.size() - r1.size();
                quot[shift] = c;
                for (std::size_t i = 0; i < r1.size(); ++i)
                    rem[shift + i] = detail::mod_p(rem[shift + i] - c * r1[i], F.p_);
                detail::zp_trim(rem);
            }
            // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - quot*s1)
            detail::ZpPoly s2(std::max(s0.size(), quot.size() + s1.size()), 0);
            for (std::size_t i = 0; i < s0.size(); ++i) s2[i] = s0[i];
            for (std::size_t i = 0; i < quot.size(); ++i)
                for (std::size_t j = 0; j < s1.size(); ++j)
                    s2[i + j] = detail::mod_p(s2[i + j] - quot[i] * s1[j], F.p_);
            detail::zp_trim(s2);
            r0 = r1; r1 = rem;
            s0 = s1; s1 = s2;
        }
        // r0 = gcd (a nonzero constant since the modulus is irreducible)
        std::int64_t scale = detail::inv_mod_p(r0[0], F.p_);
        std::vector<std::int64_t> out(static_cast<std::size_t>(F.k_), 0);
        for (std::size_t i = 0; i < s0.size(); ++i) out[i] = detail::mod_p(s0[i] * scale, F.p_);
        return FqElem(field_, encode(out, F.p_));
    }
    friend FqElem operator/(const FqElem& a, const FqElem& b) { return a * b.inv(); }

    FqElem pow(std::int64_t e) const {
        if (e < 0) return inv().pow(-e);
        FqElem base = *this, acc = one();
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    std::string to_string() const {
        if (field_->k() == 1) return std::to_string(v_);
        auto c = coeffs();
        std::string s;
        for (std::int64_t i = static_cast<std::int64_t>(c.size()) - 1; i >= 0; --i) {
            if (c[static_cast<std::size_t>(i)] == 0) continue;
            if (!s.empty()) s += "+";
            if (i == 0) { s += std::to_string(c[0]); continue; }
            if (c[static_cast<std::size_t>(i)] != 1) s += std::to_string(c[static_cast<std::size_t>(i)]) + "*";
            s += (i == 1) ? "g" : "g^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    FqElem add(const FqElem& b) const {
        check_field(b);
        const std::int64_t p = field_->p_;
        auto da = digits(), db = b.digits();
        for (std::int64_t i = 0; i < field_->k_; ++i)
            da[static_cast<std::size_t>(i)] =
                detail::mod_p(da[static_cast<std::size_t>(i)] + db[static_cast<std::size_t>(i)], p);
        return FqElem(field_, encode_k(da, p, field_->k_));
    }

    FqElem negated() const {
        const std::int64_t p = field_->p_;
        auto da = digits();
        for (std::int64_t i = 0; i < field_->k_; ++i)
            da[static_cast<std::size_t>(i)] = detail::mod_p(-da[static_cast<std::size_t>(i)], p);
        return FqElem(field_, encode_k(da, p, field_->k_));
    }

    FqElem mul(const FqElem& b) const {
        check_field(b);
        const auto& F = *field_;
        if (F.k_ == 1) return FqElem(field_, detail::mod_p(v_ * b.v_, F.p_));
        auto da = digits(), db = b.digits();
        const std::size_t k = static_cast<std::size_t>(F.k_);
        std::array<std::int64_t, 2 * FqField::kMaxDegree> prod{};
        for (std::size_t i = 0; i < k; ++i) {
            if (da[i] == 0) continue;
            for (std::size_t j = 0; j < k; ++j)
                prod[i + j] = detail::mod_p(prod[i + j] + da[i] * db[j], F.p_);
        }
        std::array<std::int64_t, FqField::kMaxDegree> out{};
        for (std::size_t j = 0; j < k; ++j) out[j] = prod[j];
        for (std::size_t i = k; i <= 2 * k - 2; ++i) {
            if (prod[i] == 0) continue;
            const auto& row = F.reduction_[i - k];
            for (std::size_t j = 0; j < k; ++j)
                out[j] = detail::mod_p(out[j] + prod[i] * row[j], F.p_);
        }
        return FqElem(field_, encode_k(out, F.p_, F.k_));
    }

    template <typename Seq>
    static std::int64_t encode_k(const Seq& digits, std::int64_t p, std::int64_t k) {
        std::int64_t v = 0, mult = 1;
        for (std::int64_t i = 0; i < k; ++i) {
            v += digits[static_cast<std::size_t>(i)] * mult;
            mult *= p;
        }
        return v;
    }

    void check_field(const FqElem& other) const {
        if (field_.get() == other.field_.get()) return;
        if (!field_ || !other.field_ || !field_->same_as(*other.field_))
            throw std::invalid_argument("fq: elements of different fields");
    }

    std::array<std::int64_t, FqField::kMaxDegree> digits() const {
        std::array<std::int64_t, FqField::kMaxDegree> d{};
        std::int64_t rest = v_;
        for (std::int64_t i = 0; i < field_->k(); ++i) { d[static_cast<std::size_t>(i)] = rest % field_->p(); rest /= field_->p(); }
        return d;
    }

    template <typename Seq>
    static std::int64_t encode(const Seq& digits, std::int64_t p) {
        std::int64_t v = 0, mult = 1;
        for (const auto& d : digits) { v += d * mult; mult *= p; }
        return v;
    }

    FqFieldPtr field_;
    std::int64_t v_ = 0;
};

inline FqElem FqField::element(std::int64_t index) const {
    return FqElem(shared_from_this(), index);
}
inline FqElem FqField::zero() const { return element(0); }
inline FqElem FqField::one() const { return element(1); }
inline FqElem FqField::from_int(std::int64_t n) const { return element(detail::mod_p(n, p_)); }
inline FqElem FqField::generator() const {
    return element(k_ > 1 ? p_ : 0);
}

inline std::vector<FqElem> FqField::enumerate() const {
    std::vector<FqElem> out;
    out.reserve(static_cast<std::size_t>(q_));
    for (std::int64_t i = 0; i < q_; ++i) out.push_back(element(i));
    return out;
}

inline std::optional<FqElem> FqField::sqrt_minus_one() const {
    FqElem minus_one = -one();
    for (std::int64_t i = 0; i < q_; ++i) {
        FqElem x = element(i);
        if (x * x == minus_one) return x;
    }
    return std::nullopt;
}

inline std::optional<FqElem> FqField::find_root(const std::vector<FqElem>& poly) const {
    for (std::int64_t i = 0; i < q_; ++i) {
        FqElem x = element(i);
        FqElem acc = zero();
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
        if (acc.is_zero()) return x;
    }
    return std::nullopt;
}

/// Embeds a into the extension field `target` (same characteristic, degree a
/// multiple of the source degree) by mapping the source generator to the
/// first root of the source modulus in enumeration order.  Deterministic.
inline FqElem embed(const FqElem& a, const FqFieldPtr& target) {
    const auto& src = *a.field();
    if (src.same_as(*target)) return target->element(a.index());
    if (src.p() != target->p() || target->k() % src.k() != 0)
        throw std::invalid_argument("fq: no embedding between these fields");
    std::vector<FqElem> mod_elems;
    mod_elems.reserve(src.modulus().size());
    for (auto c : src.modulus()) mod_elems.push_back(target->from_int(c));
    auto root = target->find_root(mod_elems);
    if (!root) throw std::logic_error("fq: embedding root not found");
    auto c = a.coeffs();
    FqElem acc = target->zero();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * (*root) + target->from_int(*it);
    return acc;
}

}  // namespace sl2cv
