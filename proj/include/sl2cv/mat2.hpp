#pragma once
// 2x2 matrix calculus over an abstract coefficient field.  The same code
// path serves numeric computation over F_q and symbolic computation over
// F_q(t); the coefficient type K must provide field operators together
// with zero()/one() returning constants of the same field.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "sl2cv/fq.hpp"
#include "sl2cv/word.hpp"

namespace sl2cv {

template <typename K>
struct Mat2 {
    K a11, a12, a21, a22;

    Mat2(K m11, K m12, K m21, K m22)
        : a11(std::move(m11)), a12(std::move(m12)), a21(std::move(m21)), a22(std::move(m22)) {}

    static Mat2 identity_like(const K& sample) {
        return Mat2(sample.one(), sample.zero(), sample.zero(), sample.one());
    }

    K trace() const { return a11 + a22; }
    K det() const { return a11 * a22 - a12 * a21; }

    bool is_identity() const {
        return a11 == a11.one() && a22 == a11.one() && a12 == a11.zero() && a21 == a11.zero();
    }
    bool is_scalar() const { return a12 == a12.zero() && a21 == a21.zero() && a11 == a22; }

    Mat2 inverse() const {
        K d = det();
        if (d == d.zero()) throw std::domain_error("mat2: singular matrix");
        K di = d.one() / d;
        return Mat2(a22 * di, -a12 * di, -a21 * di, a11 * di);
    }

    friend Mat2 operator*(const Mat2& A, const Mat2& B) {
        return Mat2(A.a11 * B.a11 + A.a12 * B.a21, A.a11 * B.a12 + A.a12 * B.a22,
                    A.a21 * B.a11 + A.a22 * B.a21, A.a21 * B.a12 + A.a22 * B.a22);
    }
    friend Mat2 operator-(const Mat2& A) { return Mat2(-A.a11, -A.a12, -A.a21, -A.a22); }
    friend bool operator==(const Mat2& A, const Mat2& B) {
        return A.a11 == B.a11 && A.a12 == B.a12 && A.a21 == B.a21 && A.a22 == B.a22;
    }
    friend bool operator!=(const Mat2& A, const Mat2& B) { return !(A == B); }

    Mat2 pow(std::int64_t e) const {
        if (e < 0) return inverse().pow(-e);
        Mat2 acc = identity_like(a11), base = *this;
        while (e > 0) {
            if (e & 1) acc = acc * base;
            base = base * base;
            e >>= 1;
        }
        return acc;
    }

    Mat2 conjugated_by(const Mat2& P) const { return P * (*this) * P.inverse(); }
};

/// Map generator index -> matrix; the home of a representation.
template <typename K>
using GenAssignment = std::vector<Mat2<K>>;

template <typename K>
Mat2<K> word_eval(const GenAssignment<K>& rep, const Word& w) {
    if (rep.empty()) throw std::invalid_argument("word_eval: empty assignment");
    Mat2<K> acc = Mat2<K>::identity_like(rep[0].a11);
    for (auto& [g, e] : w.syllables) {
        if (g < 0 || static_cast<std::size_t>(g) >= rep.size())
            throw std::invalid_argument("word_eval: unassigned generator");
        acc = acc * rep[static_cast<std::size_t>(g)].pow(e);
    }
    return acc;
}

template <typename K>
K commutator_trace(const Mat2<K>& A, const Mat2<K>& B) {
    return (A * B * A.inverse() * B.inverse()).trace();
}

/// A projective line (1-dimensional subspace) over a finite field, possibly
/// a quadratic extension of the matrices' field.  Normalized so the first
/// nonzero coordinate is 1.
struct ProjLine {
    FqElem x, y;

    static ProjLine of(FqElem u, FqElem v) {
        if (u.is_zero() && v.is_zero()) throw std::invalid_argument("line: zero vector");
        if (!u.is_zero()) {
            FqElem ui = u.inv();
            return ProjLine{u * ui, v * ui};
        }
        return ProjLine{u, v * v.inv()};
    }

    friend bool operator==(const ProjLine& a, const ProjLine& b) { return a.x == b.x && a.y == b.y; }
};

namespace detail {

inline bool line_invariant(const Mat2<FqElem>& M, const FqElem& vx, const FqElem& vy) {
    FqElem wx = M.a11 * vx + M.a12 * vy;
    FqElem wy = M.a21 * vx + M.a22 * vy;
    return (wx * vy - wy * vx).is_zero();
}

inline Mat2<FqElem> embed_mat(const Mat2<FqElem>& M, const FqFieldPtr& target) {
    return Mat2<FqElem>(embed(M.a11, target), embed(M.a12, target),
                        embed(M.a21, target), embed(M.a22, target));
}

}  // namespace detail

/// A common eigenvector direction of all the matrices, if the generated
/// subgroup is reducible.  Eigenlines of the first non-scalar matrix are
/// searched over the base field and, when its characteristic polynomial is
/// irreducible there, over the quadratic extension.  Candidate lines are
/// tried in canonical order, so ties resolve deterministically.
inline std::optional<ProjLine> common_invariant_line(const std::vector<Mat2<FqElem>>& mats) {
    if (mats.empty()) throw std::invalid_argument("common_invariant_line: empty input");
    const FqFieldPtr& F = mats[0].a11.field();

    const Mat2<FqElem>* pivot = nullptr;
    for (const auto& M : mats)
        if (!M.is_scalar()) { pivot = &M; break; }
    if (!pivot) return ProjLine{F->one(), F->zero()};  // all scalar: every line works

    auto eigenlines = [](const Mat2<FqElem>& M,
                         const std::vector<FqElem>& roots) -> std::vector<ProjLine> {
        std::vector<ProjLine> lines;
        for (const auto& lam : roots) {
            ProjLine L = !(M.a12.is_zero())   ? ProjLine::of(M.a12, lam - M.a11)
                         : !(M.a21.is_zero()) ? ProjLine::of(lam - M.a22, M.a21)
                         : (lam == M.a11)
                             ? ProjLine{M.a11.one(), M.a11.zero()}
                             : ProjLine{M.a11.zero(), M.a11.one()};
            if (std::find(lines.begin(), lines.end(), L) == lines.end()) lines.push_back(L);
        }
        std::sort(lines.begin(), lines.end(), [](const ProjLine& a, const ProjLine& b) {
            if (a.x.index() != b.x.index()) return a.x.index() > b.x.index();  // (1:*) before (0:1)
            return a.y.index() < b.y.index();
        });
        return lines;
    };

    auto roots_of_charpoly = [](const Mat2<FqElem>& M) {
        const FqFieldPtr& E = M.a11.field();
        FqElem tr = M.trace(), dt = M.det();
        std::vector<FqElem> roots;
        for (std::int64_t i = 0; i < E->order(); ++i) {
            FqElem lam = E->element(i);
            if ((lam * lam - tr * lam + dt).is_zero()) roots.push_back(lam);
        }
        return roots;
    };

    auto roots = roots_of_charpoly(*pivot);
    if (!roots.empty()) {
        for (const auto& L : eigenlines(*pivot, roots)) {
            bool ok = true;
            for (const auto& M : mats)
                if (!detail::line_invariant(M, L.x, L.y)) { ok = false; break; }
            if (ok) return L;
        }
        return std::nullopt;  // eigenlines split over F, so no extension can help
    }

    FqFieldPtr E = FqField::make(F->p(), 2 * F->k());
    Mat2<FqElem> pivot_ext = detail::embed_mat(*pivot, E);
    std::vector<Mat2<FqElem>> lifted;
    lifted.reserve(mats.size());
    for (const auto& M : mats) lifted.push_back(detail::embed_mat(M, E));
    for (const auto& L : eigenlines(pivot_ext, roots_of_charpoly(pivot_ext))) {
        bool ok = true;
        for (const auto& M : lifted)
            if (!detail::line_invariant(M, L.x, L.y)) { ok = false; break; }
        if (ok) return L;
    }
    return std::nullopt;
}

inline bool is_irreducible(const GenAssignment<FqElem>& rep) {
    return !common_invariant_line(rep).has_value();
}

}  // namespace sl2cv
