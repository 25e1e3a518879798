#pragma once
// The explicit parametrized representation families of the three manifold
// groups, instantiated numerically over F_q or symbolically over F_q(t),
// with relator verification, character-tuple extraction, and membership
// tests for the closed component formulas.
//
// Constrained constants (a square root of -1, a primitive twelfth root of
// unity) are materialized as concrete elements of F_q or F_{q^2}; the
// function field stays univariate in t.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sl2cv/fq.hpp"
#include "sl2cv/groups.hpp"
#include "sl2cv/mat2.hpp"
#include "sl2cv/ratfunc.hpp"

namespace sl2cv {

enum class FamilyTag {
    KleinIrreducible,            // rotation-by-quarter a, diagonal b
    KleinReducibleCentral,       // upper-triangular a, central b
    KleinReducibleUnipotent,     // characteristic 2 unipotent pair
    KleinReducibleTraceless,     // characteristic != 2, tr(a) = 0
    TrefoilIrreducible,
    TrefoilAbelianParabolic,
    TrefoilAbelianDiagonal,
    TrefoilReducibleNonabelian,  // x^2 + x^-2 = 1
    GluedTorusSlice,             // torus-detecting component, trace parameter frozen
    GluedTorusChar2,             // torus-detecting curve, characteristic 2
    GluedTorusOddChar,           // torus-detecting curve, characteristic != 2
    GluedGenus2Separating,       // detects the separating genus-2 surface (p = 2)
    GluedGenus2Nonseparating,    // detects the non-separating genus-2 surface
    GluedVerticalTorus,          // detects the vertical-torus pair (p = 2)
    GluedMonomial,               // monomial substitution into the torus component
};

inline std::string to_string(FamilyTag t) {
    switch (t) {
        case FamilyTag::KleinIrreducible: return "klein-irreducible";
        case FamilyTag::KleinReducibleCentral: return "klein-reducible-central";
        case FamilyTag::KleinReducibleUnipotent: return "klein-reducible-unipotent";
        case FamilyTag::KleinReducibleTraceless: return "klein-reducible-traceless";
        case FamilyTag::TrefoilIrreducible: return "trefoil-irreducible";
        case FamilyTag::TrefoilAbelianParabolic: return "trefoil-abelian-parabolic";
        case FamilyTag::TrefoilAbelianDiagonal: return "trefoil-abelian-diagonal";
        case FamilyTag::TrefoilReducibleNonabelian: return "trefoil-reducible-nonabelian";
        case FamilyTag::GluedTorusSlice: return "glued-torus-slice";
        case FamilyTag::GluedTorusChar2: return "glued-torus-char2";
        case FamilyTag::GluedTorusOddChar: return "glued-torus-oddchar";
        case FamilyTag::GluedGenus2Separating: return "glued-genus2-separating";
        case FamilyTag::GluedGenus2Nonseparating: return "glued-genus2-nonseparating";
        case FamilyTag::GluedVerticalTorus: return "glued-vertical-torus";
        case FamilyTag::GluedMonomial: return "glued-monomial";
    }
    return "?";
}

struct FamilySpec {
    FamilyTag tag;
    FqFieldPtr field;  // requested base field
    int eps = +1;      // the coupled +-/-+ sign choice of the family
    bool k_odd = false;        // parity of the gluing exponent where (-1)^k enters
    int sigma = +1;            // the {-1,1} scalar of the odd-characteristic torus curve
    std::int64_t u = 0;        // monomial substitution exponents
    std::int64_t v = 1;
    std::optional<FqElem> fixed_y;  // frozen parameter of the torus slice
};

struct SymbolicFamily {
    FamilySpec spec;
    FqFieldPtr coeff_field;  // may extend spec.field to hold materialized constants
    GenAssignment<RatFunc> rep;
};

struct NumericFamily {
    FamilySpec spec;
    FqFieldPtr field;
    GenAssignment<FqElem> rep;
};

/// Smallest field containing spec.field and an element x with x^2 = -1,
/// together with that element (quadratic extension at most).
inline std::pair<FqFieldPtr, FqElem> with_sqrt_minus_one(const FqFieldPtr& F) {
    if (auto x = F->sqrt_minus_one()) return {F, *x};
    FqFieldPtr E = FqField::make(F->p(), 2 * F->k());
    auto x = E->sqrt_minus_one();
    if (!x) throw std::logic_error("families: no square root of -1 in the quadratic extension");
    return {E, *x};
}

/// Smallest root of a monic integer polynomial in F or its quadratic extension.
inline std::pair<FqFieldPtr, FqElem> with_root_of(const FqFieldPtr& F,
                                                  const std::vector<std::int64_t>& int_poly) {
    auto lift = [](const FqFieldPtr& K, const std::vector<std::int64_t>& p) {
        std::vector<FqElem> out;
        out.reserve(p.size());
        for (auto c : p) out.push_back(K->from_int(c));
        return out;
    };
    if (auto x = F->find_root(lift(F, int_poly))) return {F, *x};
    FqFieldPtr E = FqField::make(F->p(), 2 * F->k());
    auto x = E->find_root(lift(E, int_poly));
    if (!x) throw std::invalid_argument("families: required constant not found in quadratic extension");
    return {E, *x};
}

/// First element y (enumeration order) with y not in {0, 1, -1}, extending
/// to the quadratic extension when the field is too small (q <= 3).
inline std::pair<FqFieldPtr, FqElem> default_slice_trace_parameter(const FqFieldPtr& F) {
    auto pick = [](const FqFieldPtr& K) -> std::optional<FqElem> {
        FqElem one = K->one(), minus_one = -K->one();
        for (std::int64_t i = 1; i < K->order(); ++i) {
            FqElem y = K->element(i);
            if (y != one && y != minus_one) return y;
        }
        return std::nullopt;
    };
    if (auto y = pick(F)) return {F, *y};
    FqFieldPtr E = FqField::make(F->p(), 2 * F->k());
    auto y = pick(E);
    if (!y) throw std::logic_error("families: no valid slice parameter");
    return {E, *y};
}

namespace detail {

inline void require_char(const FamilySpec& s, bool want_two) {
    bool is_two = s.field->p() == 2;
    if (is_two != want_two)
        throw std::invalid_argument("families: " + to_string(s.tag) +
                                    (want_two ? " requires characteristic 2"
                                              : " requires characteristic != 2"));
}

}  // namespace detail

/// Builds the family's defining matrices, with the free parameter of the
/// family as the function-field variable t.  Families constrained to a
/// point are returned with constant entries.
inline SymbolicFamily instantiate_symbolic(const FamilySpec& spec) {
    const FqFieldPtr& F0 = spec.field;
    if (!F0) throw std::invalid_argument("families: missing base field");
    if (spec.eps != 1 && spec.eps != -1) throw std::invalid_argument("families: eps must be +-1");
    if (spec.sigma != 1 && spec.sigma != -1) throw std::invalid_argument("families: sigma must be +-1");
    const std::int64_t eps = spec.eps;
    const std::int64_t kap = spec.k_odd ? -1 : +1;  // (-1)^k

    SymbolicFamily out;
    out.spec = spec;
    out.coeff_field = F0;

    auto finish = [&out](std::vector<Mat2<RatFunc>> rep) {
        for (auto& M : rep)
            if (M.det() != M.det().one())
                throw std::logic_error("families: non-unimodular matrix in " + to_string(out.spec.tag));
        out.rep = std::move(rep);
        return out;
    };

    auto cI = [&out](std::int64_t n) { return RatFunc::from_int(out.coeff_field, n); };
    auto cE = [&out](const FqElem& x) { return RatFunc::constant(embed(x, out.coeff_field)); };
    auto T = [&out]() { return RatFunc::variable(out.coeff_field); };

    switch (spec.tag) {
        case FamilyTag::KleinIrreducible: {
            Mat2<RatFunc> A(cI(0), cI(-1), cI(1), cI(0));
            Mat2<RatFunc> B(T(), cI(0), cI(0), T().pow(-1));
            return finish({A, B});
        }
        case FamilyTag::KleinReducibleCentral: {
            Mat2<RatFunc> A(T(), cI(1), cI(0), T().pow(-1));
            Mat2<RatFunc> B(cI(eps), cI(0), cI(0), cI(eps));
            return finish({A, B});
        }
        case FamilyTag::KleinReducibleUnipotent: {
            detail::require_char(spec, true);
            Mat2<RatFunc> A(cI(1), T(), cI(0), cI(1));
            Mat2<RatFunc> B(cI(1), cI(1), cI(0), cI(1));
            return finish({A, B});
        }
        case FamilyTag::KleinReducibleTraceless: {
            detail::require_char(spec, false);
            auto [E, x] = with_sqrt_minus_one(F0);
            out.coeff_field = E;
            Mat2<RatFunc> A(cE(x), cI(0), cI(0), cE(-x));
            Mat2<RatFunc> B(cI(eps), cI(1), cI(0), cI(eps));
            return finish({A, B});
        }
        case FamilyTag::TrefoilIrreducible: {
            Mat2<RatFunc> G(T(), cI(1), cI(0), T().pow(-1));
            Mat2<RatFunc> H(T().pow(-1), cI(0), cI(-1), T());
            return finish({G, H});
        }
        case FamilyTag::TrefoilAbelianParabolic: {
            Mat2<RatFunc> G(cI(eps), cI(1), cI(0), cI(eps));
            return finish({G, G});
        }
        case FamilyTag::TrefoilAbelianDiagonal: {
            Mat2<RatFunc> G(T(), cI(0), cI(0), T().pow(-1));
            return finish({G, G});
        }
        case FamilyTag::TrefoilReducibleNonabelian: {
            auto [E, x] = with_root_of(F0, {1, 0, -1, 0, 1});  // X^4 - X^2 + 1
            out.coeff_field = E;
            Mat2<RatFunc> G(cE(x), cI(0), cI(0), cE(x.inv()));
            Mat2<RatFunc> H(cE(x), cI(1), cI(0), cE(x.inv()));
            return finish({G, H});
        }
        case FamilyTag::GluedTorusSlice: {
            if (!spec.fixed_y) throw std::invalid_argument("families: torus slice needs fixed_y");
            FqElem y = *spec.fixed_y;
            out.coeff_field = y.field();
            FqElem one = y.one();
            if (y.is_zero() || y == one || y == -one)
                throw std::invalid_argument("families: excluded parameter value");
            FqElem w = y - y.inv();
            Mat2<RatFunc> A(cI(0), cI(-1), cI(1), cI(0));
            Mat2<RatFunc> B(cE(y), cI(0), cI(0), cE(y.inv()));
            Mat2<RatFunc> G(cI(kap) * cE(y.pow(eps)), cI(0), cI(0), cI(kap) * cE(y.pow(-eps)));
            RatFunc h11 = cI(-eps * kap) * cE(y.pow(-2 * eps) / w);
            RatFunc h22 = cI(eps * kap) * cE(y.pow(2 * eps) / w);
            RatFunc h21 = cE((-(y * y) + one - (y * y).inv()) / (w * w)) * T().pow(-1);
            Mat2<RatFunc> H(h11, T(), h21, h22);
            return finish({A, B, G, H});
        }
        case FamilyTag::GluedTorusChar2: {
            detail::require_char(spec, true);
            Mat2<RatFunc> A(cI(1), T(), cI(0), cI(1));
            Mat2<RatFunc> B(cI(1), cI(1), cI(0), cI(1));
            Mat2<RatFunc> G(cI(1), cI(1), cI(0), cI(1));
            Mat2<RatFunc> H(cI(1), cI(0), cI(1), cI(1));
            return finish({A, B, G, H});
        }
        case FamilyTag::GluedTorusOddChar: {
            detail::require_char(spec, false);
            auto [E, x] = with_sqrt_minus_one(F0);
            out.coeff_field = E;
            const std::int64_t sig = spec.sigma;
            Mat2<RatFunc> A(cE(x), cI(0), cI(0), cE(-x));
            Mat2<RatFunc> B(cI(sig), cI(1), cI(0), cI(sig));
            Mat2<RatFunc> G(cI(kap * sig), cI(kap * eps), cI(0), cI(kap * sig));
            RatFunc e = T();
            RatFunc h12 = cI(-eps * kap) * (cI(-1) + cI(2 * sig * kap) * e - e * e);
            Mat2<RatFunc> H(e, h12, cI(-eps * kap), cI(2 * sig * kap) - e);
            return finish({A, B, G, H});
        }
        case FamilyTag::GluedGenus2Separating: {
            detail::require_char(spec, true);
            Mat2<RatFunc> A(cI(0), cI(1), cI(1), cI(0));
            Mat2<RatFunc> B(T(), cI(0), cI(0), T().pow(-1));
            Mat2<RatFunc> G(T().pow(eps), cI(0), cI(0), T().pow(-eps));
            return finish({A, B, G, G});
        }
        case FamilyTag::GluedGenus2Nonseparating: {
            Mat2<RatFunc> A(T(), cI(1), cI(0), T().pow(-1));
            Mat2<RatFunc> B(cI(1), cI(0), cI(0), cI(1));
            RatFunc s = T() + T().pow(-1);
            Mat2<RatFunc> G(T().pow(2 * eps), cI(eps) * s, cI(0), T().pow(-2 * eps));
            return finish({A, B, G, G});
        }
        case FamilyTag::GluedVerticalTorus: {
            detail::require_char(spec, true);
            Mat2<RatFunc> A(T(), cI(1), cI(0), T().pow(-1));
            Mat2<RatFunc> B(cI(1), cI(0), cI(0), cI(1));
            RatFunc s = T() + T().pow(-1);
            Mat2<RatFunc> G(T().pow(2 * eps), s, cI(0), T().pow(-2 * eps));
            Mat2<RatFunc> H(T().pow(-2 * eps), cI(0), s.pow(-1), T().pow(2 * eps));
            return finish({A, B, G, H});
        }
        case FamilyTag::GluedMonomial: {
            if (spec.v == 0) throw std::invalid_argument("families: monomial substitution needs v != 0");
            const std::int64_t u = spec.u, v = spec.v;
            Mat2<RatFunc> A(cI(0), cI(-1), cI(1), cI(0));
            Mat2<RatFunc> B(T().pow(v), cI(0), cI(0), T().pow(-v));
            Mat2<RatFunc> G(cI(kap) * T().pow(eps * v), cI(0), cI(0), cI(kap) * T().pow(-eps * v));
            RatFunc w = T().pow(v) - T().pow(-v);
            RatFunc h11 = cI(-eps * kap) * T().pow(-2 * eps * v) / w;
            RatFunc h22 = cI(eps * kap) * T().pow(2 * eps * v) / w;
            RatFunc h21 = (-T().pow(2 * v) + cI(1) - T().pow(-2 * v)) / (T().pow(u) * w * w);
            Mat2<RatFunc> H(h11, T().pow(u), h21, h22);
            return finish({A, B, G, H});
        }
    }
    throw std::invalid_argument("families: unknown tag");
}

/// The gluing matrix the family verifies against, with signs and parity
/// taken from the spec (smallest such representative).
inline GluingMatrix default_phi(const FamilySpec& spec) {
    const std::int64_t e = spec.eps;
    const std::int64_t k = spec.k_odd ? 1 : 0;
    switch (spec.tag) {
        case FamilyTag::GluedTorusSlice:
        case FamilyTag::GluedTorusOddChar:
        case FamilyTag::GluedMonomial:
            return GluingMatrix(k, e, -e - 6 * k, -6 * e);
        case FamilyTag::GluedTorusChar2:
            return GluingMatrix(0, 1, -1, 0);
        case FamilyTag::GluedGenus2Separating:
            return GluingMatrix(k, e, -e, 0);
        case FamilyTag::GluedGenus2Nonseparating:
            return GluingMatrix(e, 0, 0, e);
        case FamilyTag::GluedVerticalTorus:
            return GluingMatrix(e, 0, -6 * e, e);
        default:
            throw std::invalid_argument("families: not a glued family");
    }
}

/// The parameter name accepted by instantiate_numeric ("" for the
/// zero-dimensional families).
inline std::string parameter_name(FamilyTag tag) {
    switch (tag) {
        case FamilyTag::KleinIrreducible: return "y";
        case FamilyTag::KleinReducibleCentral: return "x";
        case FamilyTag::KleinReducibleUnipotent: return "u";
        case FamilyTag::TrefoilIrreducible: return "x";
        case FamilyTag::TrefoilAbelianDiagonal: return "x";
        case FamilyTag::GluedTorusSlice: return "f";
        case FamilyTag::GluedTorusChar2: return "u";
        case FamilyTag::GluedTorusOddChar: return "e";
        case FamilyTag::GluedGenus2Separating: return "y";
        case FamilyTag::GluedGenus2Nonseparating: return "x";
        case FamilyTag::GluedVerticalTorus: return "x";
        case FamilyTag::GluedMonomial: return "t";
        default: return "";
    }
}

/// Specializes a family at a parameter value.  Excluded values (vanishing
/// denominators and the degenerate points of each family) are errors.
inline NumericFamily instantiate_numeric(const FamilySpec& spec,
                                         const std::map<std::string, FqElem>& values) {
    SymbolicFamily sym = instantiate_symbolic(spec);
    std::string pname = parameter_name(spec.tag);

    NumericFamily out;
    out.spec = spec;

    std::optional<FqElem> value;
    if (!pname.empty()) {
        auto it = values.find(pname);
        if (it == values.end()) it = values.find("t");
        if (it == values.end())
            throw std::invalid_argument("families: missing parameter '" + pname + "'");
        value = it->second;
    }

    FqFieldPtr target = sym.coeff_field;
    if (value) {
        const FqFieldPtr& VF = value->field();
        if (VF->p() != target->p())
            throw std::invalid_argument("families: parameter in wrong characteristic");
        if (VF->k() % target->k() == 0) {
            target = VF;
        } else if (target->k() % VF->k() == 0) {
            value = embed(*value, target);
        } else {
            throw std::invalid_argument("families: incompatible parameter field");
        }
    }
    out.field = target;

    // stated exclusions beyond vanishing denominators
    if (value) {
        FqElem c = *value;
        FqElem one = target->one();
        bool excluded = false;
        switch (spec.tag) {
            case FamilyTag::KleinIrreducible:
            case FamilyTag::KleinReducibleCentral:
            case FamilyTag::TrefoilIrreducible:
            case FamilyTag::TrefoilAbelianDiagonal:
            case FamilyTag::GluedTorusSlice:
            case FamilyTag::GluedMonomial:
                excluded = c.is_zero();
                break;
            case FamilyTag::GluedGenus2Separating:
                excluded = c.is_zero();
                break;
            case FamilyTag::GluedGenus2Nonseparating:
                excluded = c.is_zero() || c == one || c == -one;
                break;
            case FamilyTag::GluedVerticalTorus:
                excluded = c.is_zero() || c == one;
                break;
            default:
                break;
        }
        if (excluded) throw std::invalid_argument("families: excluded parameter value");
    }

    FqElem at = value ? *value : target->zero();
    try {
        for (const auto& M : sym.rep)
            out.rep.push_back(Mat2<FqElem>(M.a11.eval(at), M.a12.eval(at), M.a21.eval(at),
                                           M.a22.eval(at)));
    } catch (const std::domain_error&) {
        throw std::invalid_argument("families: excluded parameter value");
    }
    return out;
}

struct RelationReport {
    bool ok = true;
    std::vector<std::size_t> failed_relators;
};

/// Exact relator check: every relator must evaluate to the identity
/// (symbolic equality in canonical form; zero tolerance).
template <typename K>
RelationReport verify_relations(const GenAssignment<K>& rep, const Presentation& pres) {
    if (static_cast<int>(rep.size()) != pres.num_generators)
        throw std::invalid_argument("verify_relations: generator count mismatch");
    RelationReport report;
    for (std::size_t i = 0; i < pres.relators.size(); ++i) {
        if (!word_eval(rep, pres.relators[i]).is_identity()) {
            report.ok = false;
            report.failed_relators.push_back(i);
        }
    }
    return report;
}

/// Trace coordinates: (I_1, I_2, I_12) for two generators, the fixed
/// 14-tuple of single, double and triple products for four.
template <typename K>
std::vector<K> char_tuple(const GenAssignment<K>& rep) {
    auto tr = [&rep](std::initializer_list<int> gens) {
        Mat2<K> acc = Mat2<K>::identity_like(rep[0].a11);
        for (int g : gens) acc = acc * rep[static_cast<std::size_t>(g)];
        return acc.trace();
    };
    if (rep.size() == 2) return {tr({0}), tr({1}), tr({0, 1})};
    if (rep.size() == 4)
        return {tr({0}),       tr({1}),       tr({2}),       tr({3}),      tr({0, 1}),
                tr({0, 2}),    tr({0, 3}),    tr({1, 2}),    tr({1, 3}),   tr({2, 3}),
                tr({0, 1, 2}), tr({0, 1, 3}), tr({0, 2, 3}), tr({1, 2, 3})};
    throw std::invalid_argument("char_tuple: unsupported generator count");
}

struct Membership {
    bool in_irreducible = false;
    bool in_reducible = false;
    bool covered() const { return in_irreducible || in_reducible; }
};

/// Which closed component formulas a 3-coordinate character satisfies, with
/// the characteristic-2 branch chosen by the field.
inline Membership component_membership(Manifold m, const std::array<FqElem, 3>& t) {
    const FqFieldPtr& F = t[0].field();
    const bool char2 = F->p() == 2;
    FqElem zero = F->zero(), one = F->one(), two = F->from_int(2);
    Membership out;
    if (m == Manifold::Klein) {
        out.in_irreducible = (t[0] == zero && t[2] == zero);
        if (char2)
            out.in_reducible = (t[1] == zero && t[0] == t[2]);
        else
            out.in_reducible = (t[1] == two && t[0] == t[2]) || (t[1] == -two && t[0] == -t[2]);
    } else if (m == Manifold::Trefoil) {
        out.in_irreducible = (t[0] == t[1] && t[2] == one);
        FqElem sq = t[0] * t[0];
        out.in_reducible = (t[0] == t[1] && t[2] == (char2 ? sq : sq - two));
    } else {
        throw std::invalid_argument("component_membership: no closed component formulas");
    }
    return out;
}

}  // namespace sl2cv
