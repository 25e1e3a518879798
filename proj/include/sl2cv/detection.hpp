#pragma once
// Ideal-point analysis: restriction maps to the two glued pieces, curve
// type classification, valuation tests, boundary-slope dichotomy, and the
// surface-detection verdicts.
//
// Ideal points of the explicitly parametrized curves are realized as the
// places of F_q(t) where some trace coordinate has a pole.  A limit of the
// form "t + t^-1 -> infinity" is interpreted as the pair of places
// {t, infinity}, and conditions are required at both.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sl2cv/families.hpp"
#include "sl2cv/groups.hpp"
#include "sl2cv/mat2.hpp"
#include "sl2cv/ratfunc.hpp"
#include "sl2cv/word.hpp"

namespace sl2cv {

enum class CurveType { C1, C2, C3 };

inline std::string to_string(CurveType t) {
    switch (t) {
        case CurveType::C1: return "C1";
        case CurveType::C2: return "C2";
        case CurveType::C3: return "C3";
    }
    return "?";
}

enum class Side { KleinPiece, TrefoilPiece };

/// Restriction of a glued representation to one piece, as the 2-generator
/// assignment (a, b) or (g, h).
inline GenAssignment<RatFunc> restrict_to(const GenAssignment<RatFunc>& rep, Side side) {
    if (rep.size() != 4) throw std::invalid_argument("restriction: need a 4-generator assignment");
    return side == Side::KleinPiece ? GenAssignment<RatFunc>{rep[0], rep[1]}
                                    : GenAssignment<RatFunc>{rep[2], rep[3]};
}

/// 3-coordinate character of the restriction: (I_a, I_b, I_ab) on the
/// Klein-bottle side, (I_g, I_h, I_gh) on the trefoil side.
inline std::array<RatFunc, 3> restriction(const GenAssignment<RatFunc>& rep, Side side) {
    auto sub = restrict_to(rep, side);
    auto t = char_tuple(sub);
    return {t[0], t[1], t[2]};
}

namespace detail {

inline bool all_constant(const std::vector<RatFunc>& fs) {
    for (const auto& f : fs)
        if (!f.is_constant()) return false;
    return true;
}

}  // namespace detail

/// C1: both restrictions are curves; C2: exactly one; C3: both points.
/// Errors when the full character tuple is constant (not a curve).
inline CurveType curve_type(const GenAssignment<RatFunc>& rep) {
    auto full = char_tuple(rep);
    if (detail::all_constant(full))
        throw std::invalid_argument("curve_type: constant character tuple is not a curve");
    auto rk = char_tuple(restrict_to(rep, Side::KleinPiece));
    auto rm = char_tuple(restrict_to(rep, Side::TrefoilPiece));
    bool k_curve = !detail::all_constant(rk);
    bool m_curve = !detail::all_constant(rm);
    if (k_curve && m_curve) return CurveType::C1;
    if (k_curve || m_curve) return CurveType::C2;
    return CurveType::C3;
}

/// All places where some character coordinate has a pole.
inline std::vector<Place> ideal_points(const GenAssignment<RatFunc>& rep) {
    auto full = char_tuple(rep);
    if (detail::all_constant(full))
        throw std::invalid_argument("ideal_points: constant character tuple is not a curve");
    std::vector<Place> out;
    for (const auto& f : full) {
        if (f.is_zero()) continue;
        for (const auto& xi : pole_places(f))
            if (std::find(out.begin(), out.end(), xi) == out.end()) out.push_back(xi);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline Valuation valuation_of_word(const GenAssignment<RatFunc>& rep, const Word& w,
                                   const Place& xi) {
    return valuation_at(word_eval(rep, w).trace(), xi);
}

struct BoundarySlope {
    std::int64_t i = 0, j = 0;  // coefficients on the two peripheral generators
    Word word;
};

struct BoundaryVerdict {
    enum Kind { SlopeDetected, ClosedCase } kind;
    std::optional<BoundarySlope> slope;  // set iff SlopeDetected
};

/// The dichotomy at an ideal point: either every peripheral trace function
/// has nonnegative valuation (a closed essential surface may be detected),
/// or there is a unique primitive peripheral class with nonnegative
/// valuation, the boundary slope.  The search runs over primitive integer
/// combinations with coefficients bounded by `bound`; failure to find the
/// class within the bound is an error, never a silent guess.
inline BoundaryVerdict boundary_dichotomy(const GenAssignment<RatFunc>& rep,
                                          const std::pair<Word, Word>& peripheral, const Place& xi,
                                          std::int64_t bound = 12) {
    if (rep.size() != 2) throw std::invalid_argument("boundary_dichotomy: need a 2-generator piece");
    bool some_negative = false;
    std::vector<BoundarySlope> nonneg;
    for (std::int64_t j = 0; j <= bound; ++j) {
        for (std::int64_t i = -bound; i <= bound; ++i) {
            if (j == 0 && i != 1) continue;  // canonical representative up to inversion
            if (std::gcd(std::abs(i), j) != 1) continue;
            Word w = peripheral.first.pow(i) * peripheral.second.pow(j);
            Valuation v = valuation_of_word(rep, w, xi);
            if (v.nonnegative())
                nonneg.push_back(BoundarySlope{i, j, w});
            else
                some_negative = true;
        }
    }
    if (!some_negative) return BoundaryVerdict{BoundaryVerdict::ClosedCase, std::nullopt};
    if (nonneg.empty())
        throw std::runtime_error(
            "boundary_dichotomy: no nonnegative primitive class within the search bound");
    if (nonneg.size() > 1)
        throw std::runtime_error(
            "boundary_dichotomy: nonnegative primitive class is not unique (bound " +
            std::to_string(bound) + ")");
    return BoundaryVerdict{BoundaryVerdict::SlopeDetected, nonneg.front()};
}

enum class VerdictKind { Detected, NotDetected, WitnessNegative };

inline std::string to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::Detected: return "detected";
        case VerdictKind::NotDetected: return "not-detected";
        case VerdictKind::WitnessNegative: return "witness-negative";
    }
    return "?";
}

struct DetectionVerdict {
    SurfaceCase surface;
    Place ideal_point;
    VerdictKind kind;
    std::optional<Word> witness;              // set iff WitnessNegative
    std::optional<std::int64_t> witness_valuation;
    std::string detail;
};

/// Words in complementary regions used to refute detection by curves whose
/// restrictions are points: the commutator [g h^-1, a] together with the
/// peripheral products (a^2)^i b^j, |i|, |j| <= 3.
inline std::vector<Word> default_witness_words() {
    std::vector<Word> out;
    out.push_back(Word::commutator(Word::gen(2) * Word::gen(3, -1), Word::gen(0)));
    for (std::int64_t i = -3; i <= 3; ++i)
        for (std::int64_t j = -3; j <= 3; ++j) {
            if (i == 0 && j == 0) continue;
            out.push_back(Word::gen(0, 2 * i) * Word::gen(1, j));
        }
    return out;
}

namespace detail {

struct RequiredSlopes {
    std::pair<std::int64_t, std::int64_t> klein_side;    // in the basis (a^2, b)
    std::pair<std::int64_t, std::int64_t> trefoil_side;  // in the basis (meridian, longitude)
};

// Which boundary slopes the two restrictions must detect: the horizontal
// annulus has slope a^2, the vertical annulus slope b; the once-punctured
// torus has slope the longitude, the vertical annulus in the trefoil piece
// slope meridian^6 longitude.
inline RequiredSlopes required_slopes(SurfaceCase c) {
    switch (c) {
        case SurfaceCase::S2: return {{1, 0}, {0, 1}};
        case SurfaceCase::S3: return {{0, 1}, {0, 1}};
        case SurfaceCase::S4: return {{1, 0}, {6, 1}};
        case SurfaceCase::S5: return {{0, 1}, {6, 1}};
        default: throw std::invalid_argument("required_slopes: splitting torus has no boundary");
    }
}

}  // namespace detail

/// Detection verdict for one surface case at one ideal point of the given
/// curve of representations.  The splitting torus is detected by a curve
/// whose restrictions to both pieces are points; the other surfaces by
/// curves restricting to curves on both sides with the matching boundary
/// slopes.  Curves of the first kind refute the other surfaces through a
/// witness word of negative valuation.
inline DetectionVerdict detect_surface(const SymbolicFamily& fam, const GluingMatrix& phi,
                                       SurfaceCase surface, const Place& xi,
                                       const std::vector<Word>& witnesses = default_witness_words()) {
    auto cls = classify_surface_cases(phi);
    if (!cls.has(surface))
        throw std::invalid_argument("detect_surface: surface case not present for this gluing");
    const auto& rep = fam.rep;
    if (rep.size() != 4) throw std::invalid_argument("detect_surface: need a glued representation");

    DetectionVerdict out;
    out.surface = surface;
    out.ideal_point = xi;

    CurveType ct = curve_type(rep);

    if (surface == SurfaceCase::S1) {
        bool has_pole = false;
        for (const auto& f : char_tuple(rep))
            if (valuation_at(f, xi).negative()) { has_pole = true; break; }
        out.kind = (ct == CurveType::C3 && has_pole) ? VerdictKind::Detected : VerdictKind::NotDetected;
        out.detail = "curve type " + to_string(ct);
        return out;
    }

    if (ct == CurveType::C1) {
        auto need = detail::required_slopes(surface);
        auto vk = boundary_dichotomy(restrict_to(rep, Side::KleinPiece),
                                     peripheral_words(Manifold::Klein), xi);
        auto vm = boundary_dichotomy(restrict_to(rep, Side::TrefoilPiece),
                                     peripheral_words(Manifold::Trefoil), xi);
        bool match = vk.kind == BoundaryVerdict::SlopeDetected &&
                     vm.kind == BoundaryVerdict::SlopeDetected &&
                     std::pair{vk.slope->i, vk.slope->j} == need.klein_side &&
                     std::pair{vm.slope->i, vm.slope->j} == need.trefoil_side;
        out.kind = match ? VerdictKind::Detected : VerdictKind::NotDetected;
        out.detail = "curve type C1";
        return out;
    }

    if (ct == CurveType::C3) {
        for (const auto& w : witnesses) {
            Valuation v = valuation_of_word(rep, w, xi);
            if (v.negative()) {
                out.kind = VerdictKind::WitnessNegative;
                out.witness = w;
                out.witness_valuation = v.value();
                out.detail = "complementary-region word with negative valuation";
                return out;
            }
        }
        out.kind = VerdictKind::NotDetected;
        out.detail = "curve type C3; no certifying route for a boundary-matched surface";
        return out;
    }

    out.kind = VerdictKind::NotDetected;
    out.detail = "curve type C2";
    return out;
}

struct S4Verdict {
    bool detected = false;
    std::int64_t q = 0, u = 0, v = 1;
    Valuation at_zero = Valuation::infinite();
    Valuation at_infinity = Valuation::infinite();
    std::optional<RatFunc> trace;
    Word word;
};

/// Detection test for the vertical torus indexed by (q, 1): on the
/// substituted curve with exponents (u, v), the projection word g h g
/// followed by the recurrence word must have nonnegative valuation at both
/// places t and infinity.
inline S4Verdict detect_s4(const FqFieldPtr& field, bool k_odd, int eps, std::int64_t u,
                           std::int64_t v, std::int64_t q) {
    if (q < 0) throw std::invalid_argument("detect_s4: q must be >= 0");
    if (v == 0) throw std::invalid_argument("detect_s4: v must be nonzero");
    FamilySpec spec;
    spec.tag = FamilyTag::GluedMonomial;
    spec.field = field;
    spec.eps = eps;
    spec.k_odd = k_odd;
    spec.u = u;
    spec.v = v;
    SymbolicFamily fam = instantiate_symbolic(spec);
    auto rr = verify_relations(fam.rep, glued_presentation(default_phi(spec)));
    if (!rr.ok) throw std::logic_error("detect_s4: family fails its relators");

    Word ghg = Word::from_syllables({{2, 1}, {3, 1}, {2, 1}});
    S4Verdict out;
    out.q = q;
    out.u = u;
    out.v = v;
    out.word = ghg * alpha_word(q);
    out.trace = word_eval(fam.rep, out.word).trace();
    out.at_zero = valuation_at(*out.trace, Place::at_zero(fam.coeff_field));
    out.at_infinity = valuation_at(*out.trace, Place::infinity());
    out.detected = out.at_zero.nonnegative() && out.at_infinity.nonnegative();
    return out;
}

struct ProbeRow {
    std::string label;
    Word word;
    Valuation at_zero = Valuation::infinite();
    Valuation at_infinity = Valuation::infinite();
};

struct ProbeReport {
    std::int64_t q = 0, r = 1;
    std::vector<ProbeRow> rows;
    std::optional<S4Verdict> verdict;  // only set for r = 1, where the detection test applies
};

/// Exploratory valuation table on the substituted curve with exponents
/// (q - r, r).  Makes a detected/not-detected claim only for r = 1.
inline ProbeReport conjecture_probe(const FqFieldPtr& field, bool k_odd, int eps, std::int64_t q,
                                    std::int64_t r) {
    if (r < 1) throw std::invalid_argument("conjecture_probe: r must be >= 1");
    if (q < 0) throw std::invalid_argument("conjecture_probe: q must be >= 0");
    if (std::gcd(q, r) != 1) throw std::invalid_argument("conjecture_probe: q and r must be coprime");

    FamilySpec spec;
    spec.tag = FamilyTag::GluedMonomial;
    spec.field = field;
    spec.eps = eps;
    spec.k_odd = k_odd;
    spec.u = q - r;
    spec.v = r;
    SymbolicFamily fam = instantiate_symbolic(spec);

    ProbeReport out;
    out.q = q;
    out.r = r;

    std::vector<std::pair<std::string, Word>> words;
    Word ghg = Word::from_syllables({{2, 1}, {3, 1}, {2, 1}});
    words.push_back({"ghg*w" + std::to_string(q), ghg * alpha_word(q)});
    words.push_back({"a", Word::gen(0)});
    words.push_back({"b", Word::gen(1)});
    words.push_back({"g", Word::gen(2)});
    words.push_back({"h", Word::gen(3)});
    words.push_back({"[gh^-1,a]", Word::commutator(Word::gen(2) * Word::gen(3, -1), Word::gen(0))});

    for (auto& [label, w] : words) {
        ProbeRow row;
        row.label = label;
        row.word = w;
        RatFunc tr = word_eval(fam.rep, w).trace();
        row.at_zero = valuation_at(tr, Place::at_zero(fam.coeff_field));
        row.at_infinity = valuation_at(tr, Place::infinity());
        out.rows.push_back(row);
    }

    if (r == 1) out.verdict = detect_s4(field, k_odd, eps, q - 1, 1, q);
    return out;
}

}  // namespace sl2cv
