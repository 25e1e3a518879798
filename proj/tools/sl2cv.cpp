// Command-line driver: machine-readable verification of the trace-identity,
// homology, census and surface-detection computations, plus exploratory
// valuation tables.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error,
// 3 resource bound exceeded, 4 surface case not present for the gluing.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sl2cv/sl2cv.hpp"

using json = nlohmann::ordered_json;
using namespace sl2cv;

namespace {

constexpr const char* kVersion = "0.1.0";
const std::vector<std::int64_t> kDefaultChars = {2, 3, 5, 7, 101};

struct case_mismatch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- helpers

json jval(const Valuation& v) {
    json j;
    if (v.is_infinite()) {
        j["valuation"] = nullptr;
        j["infinite"] = true;
    } else {
        j["valuation"] = v.value();
    }
    return j;
}

json jplace(const Place& xi) {
    json j;
    if (xi.at_infinity) {
        j["kind"] = "infinity";
    } else {
        j["kind"] = "finite";
        j["poly"] = xi.to_string();
    }
    return j;
}

json jphi(const GluingMatrix& phi) { return json::array({phi.k, phi.l, phi.m, phi.n}); }

const std::vector<std::string> kGluedNames = {"a", "b", "g", "h"};

FqFieldPtr field_of_order(std::int64_t q) {
    for (std::int64_t p = 2; p <= q; ++p) {
        if (!detail::is_prime_i64(p)) continue;
        std::int64_t pk = p;
        for (std::int64_t k = 1; pk <= q; ++k, pk *= p)
            if (pk == q) return FqField::make(p, k);
    }
    throw std::invalid_argument("q is not a prime power");
}

GluingMatrix parse_phi(const std::string& text) {
    std::vector<std::int64_t> vals;
    std::string cur;
    for (char c : text + ",") {
        if (c == ',') {
            if (cur.empty()) throw std::invalid_argument("bad --phi");
            vals.push_back(std::stoll(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (vals.size() != 4) throw std::invalid_argument("--phi needs four integers k,l,m,n");
    return GluingMatrix(vals[0], vals[1], vals[2], vals[3]);
}

// accumulates pass/fail detail for one named check
struct Check {
    json j;
    bool ok = true;
    explicit Check(const std::string& name) { j["check"] = name; }
    Check& with_p(std::int64_t p) {
        j["p"] = p;
        return *this;
    }
    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            j["failures"].push_back(what);
        }
    }
    json finish() {
        j["status"] = ok ? "ok" : "fail";
        return j;
    }
    json finish_inapplicable(const std::string& reason) {
        j["status"] = "inapplicable";
        j["reason"] = reason;
        return j;
    }
};

bool check_failed(const json& j) { return j.value("status", "") == "fail"; }

// ------------------------------------------------------------ lemma checks

json check_lemma7() {
    Check c("lemma7");
    for (std::int64_t q : {2, 3, 4}) {
        auto F = field_of_order(q);
        auto sl2 = enumerate_sl2(F);
        FqElem two = F->from_int(2);
        std::int64_t pairs = 0;
        bool all_ok = true;
        for (const auto& A : sl2)
            for (const auto& B : sl2) {
                ++pairs;
                bool line = common_invariant_line({A, B}).has_value();
                if (line != (commutator_trace(A, B) == two)) all_ok = false;
            }
        c.require(all_ok, "commutator-trace criterion over F" + std::to_string(q));
        c.j["pairs"].push_back(pairs);
    }
    return c.finish();
}

json check_klein_irr(std::int64_t p) {
    Check c("klein-irr");
    c.with_p(p);
    FamilySpec spec;
    spec.tag = FamilyTag::KleinIrreducible;
    spec.field = FqField::make(p);
    auto fam = instantiate_symbolic(spec);
    const auto& F = fam.coeff_field;
    RatFunc t = RatFunc::variable(F);

    c.require(verify_relations(fam.rep, klein_presentation()).ok, "relator");
    auto tuple = char_tuple(fam.rep);
    c.require(tuple[0].is_zero() && tuple[2].is_zero() && tuple[1] == t + t.pow(-1),
              "character tuple (0, y+y^-1, 0)");
    c.require(commutator_trace(fam.rep[0], fam.rep[1]) == t.pow(2) + t.pow(-2),
              "commutator trace y^2 + y^-2");

    for (const auto& xi : ideal_points(fam.rep)) {
        auto v = boundary_dichotomy(fam.rep, peripheral_words(Manifold::Klein), xi);
        c.require(v.kind == BoundaryVerdict::SlopeDetected && v.slope->i == 1 && v.slope->j == 0,
                  "boundary slope a^2 at " + xi.to_string());
        // complementary solid-torus generators have constant zero trace
        c.require(word_eval(fam.rep, Word::gen(0)).trace().is_zero(), "I_a = 0");
        Word ba = Word::gen(1, -1) * Word::gen(0);
        c.require(word_eval(fam.rep, ba).trace().is_zero(), "I_{b^-1 a} = 0");
    }
    return c.finish();
}

json check_klein_red(std::int64_t p) {
    Check c("klein-red");
    c.with_p(p);
    for (int eps : {+1, -1}) {
        FamilySpec spec;
        spec.tag = FamilyTag::KleinReducibleCentral;
        spec.field = FqField::make(p);
        spec.eps = eps;
        auto fam = instantiate_symbolic(spec);
        const auto& F = fam.coeff_field;
        RatFunc s = RatFunc::variable(F) + RatFunc::variable(F).pow(-1);
        c.require(verify_relations(fam.rep, klein_presentation()).ok, "relator (central)");
        auto tuple = char_tuple(fam.rep);
        c.require(tuple[0] == s && tuple[1] == RatFunc::from_int(F, 2 * eps) &&
                      tuple[2] == RatFunc::from_int(F, eps) * s,
                  "character tuple (s, 2e, es)");
        for (const auto& xi : ideal_points(fam.rep)) {
            auto v = boundary_dichotomy(fam.rep, peripheral_words(Manifold::Klein), xi);
            c.require(v.kind == BoundaryVerdict::SlopeDetected && v.slope->i == 0 &&
                          v.slope->j == 1,
                      "boundary slope b at " + xi.to_string());
        }
    }
    FamilySpec extra;
    extra.field = FqField::make(p);
    if (p == 2) {
        extra.tag = FamilyTag::KleinReducibleUnipotent;
        auto fam = instantiate_symbolic(extra);
        c.require(verify_relations(fam.rep, klein_presentation()).ok, "relator (unipotent)");
        auto tuple = char_tuple(fam.rep);
        c.require(tuple[0].is_zero() && tuple[1].is_zero() && tuple[2].is_zero(),
                  "unipotent characters sit at (0,0,0)");
    } else {
        for (int eps : {+1, -1}) {
            extra.tag = FamilyTag::KleinReducibleTraceless;
            extra.eps = eps;
            auto fam = instantiate_symbolic(extra);
            c.require(verify_relations(fam.rep, klein_presentation()).ok, "relator (traceless)");
        }
    }
    return c.finish();
}

json check_trefoil_irr(std::int64_t p) {
    Check c("trefoil-irr");
    c.with_p(p);
    FamilySpec spec;
    spec.tag = FamilyTag::TrefoilIrreducible;
    spec.field = FqField::make(p);
    auto fam = instantiate_symbolic(spec);
    const auto& F = fam.coeff_field;
    RatFunc t = RatFunc::variable(F);
    RatFunc s = t + t.pow(-1);

    c.require(verify_relations(fam.rep, trefoil_presentation()).ok, "relator ghg = hgh");
    auto tuple = char_tuple(fam.rep);
    c.require(tuple[0] == s && tuple[1] == s && tuple[2] == RatFunc::from_int(F, 1),
              "character tuple (s, s, 1)");

    Word fibre = Word::from_syllables({{0, 2}, {1, 1}, {0, 2}, {1, 1}});
    c.require(word_eval(fam.rep, fibre) == -Mat2<RatFunc>::identity_like(RatFunc::from_int(F, 1)),
              "g^2 h g^2 h maps to -E");
    for (const auto& xi : ideal_points(fam.rep)) {
        auto v = boundary_dichotomy(fam.rep, peripheral_words(Manifold::Trefoil), xi);
        c.require(v.kind == BoundaryVerdict::SlopeDetected && v.slope->i == 6 && v.slope->j == 1,
                  "boundary slope meridian^6 longitude at " + xi.to_string());
    }
    return c.finish();
}

json check_trefoil_pole(std::int64_t p) {
    Check c("trefoil-pole");
    c.with_p(p);
    FamilySpec spec;
    spec.tag = FamilyTag::TrefoilIrreducible;
    spec.field = FqField::make(p);
    auto fam = instantiate_symbolic(spec);
    const auto& F = fam.coeff_field;
    RatFunc t = RatFunc::variable(F);

    Word longitude = peripheral_words(Manifold::Trefoil).second;
    RatFunc lt = word_eval(fam.rep, longitude).trace();
    c.require(lt == -(t.pow(6) + t.pow(-6)), "I_longitude = -(x^6 + x^-6)");

    LaurentPoly in_s = to_trace_basis(lt.num());
    LaurentPoly expect = LaurentPoly::term(F, 6, F->from_int(-1)) +
                         LaurentPoly::term(F, 4, F->from_int(6)) +
                         LaurentPoly::term(F, 2, F->from_int(-9)) +
                         LaurentPoly::term(F, 0, F->from_int(2));
    c.require(in_s == expect, "trace-parameter form -s^6 + 6s^4 - 9s^2 + 2");

    Valuation v = valuation_at(RatFunc::from_laurent(in_s), Place::infinity());
    c.j["longitude_valuation_at_infinity"] = jval(v);
    c.require(v == -6, "pole of order 6 at infinity");
    return c.finish();
}

json check_trefoil_red(std::int64_t p) {
    Check c("trefoil-red");
    c.with_p(p);
    FamilySpec spec;
    spec.tag = FamilyTag::TrefoilAbelianDiagonal;
    spec.field = FqField::make(p);
    auto fam = instantiate_symbolic(spec);
    const auto& F = fam.coeff_field;
    RatFunc t = RatFunc::variable(F);
    RatFunc s = t + t.pow(-1);

    auto tuple = char_tuple(fam.rep);
    c.require(tuple[0] == s && tuple[1] == s && tuple[2] == s.pow(2) - RatFunc::from_int(F, 2),
              "character tuple (s, s, s^2 - 2)");

    Word longitude = peripheral_words(Manifold::Trefoil).second;
    c.require(word_eval(fam.rep, longitude).trace() == RatFunc::from_int(F, 2),
              "I_longitude = 2 on the reducible curve");

    Word fibre = Word::from_syllables({{0, 2}, {1, 1}, {0, 2}, {1, 1}});
    RatFunc ft = word_eval(fam.rep, fibre).trace();
    c.require(ft == t.pow(6) + t.pow(-6), "I_fibre = x^6 + x^-6");
    for (const auto& xi : ideal_points(fam.rep)) {
        c.require(valuation_at(ft, xi) == -6, "fibre-slope pole of order 6");
        auto v = boundary_dichotomy(fam.rep, peripheral_words(Manifold::Trefoil), xi);
        c.require(v.kind == BoundaryVerdict::SlopeDetected && v.slope->i == 0 && v.slope->j == 1,
                  "boundary slope longitude at " + xi.to_string());
    }

    FamilySpec other;
    other.field = FqField::make(p);
    other.tag = FamilyTag::TrefoilAbelianParabolic;
    for (int eps : {+1, -1}) {
        other.eps = eps;
        c.require(verify_relations(instantiate_symbolic(other).rep, trefoil_presentation()).ok,
                  "relator (parabolic)");
    }
    other.tag = FamilyTag::TrefoilReducibleNonabelian;
    auto nonab = instantiate_symbolic(other);
    c.require(verify_relations(nonab.rep, trefoil_presentation()).ok, "relator (nonabelian)");
    return c.finish();
}

json check_homology() {
    Check c("homology");
    std::int64_t count = 0;
    bool all_ok = true;
    for (std::int64_t k = -10; k <= 10; ++k)
        for (std::int64_t l = -10; l <= 10; ++l)
            for (std::int64_t m = -10; m <= 10; ++m)
                for (std::int64_t n = -10; n <= 10; ++n) {
                    if (k * n - l * m != 1) continue;
                    GluingMatrix phi(k, l, m, n);
                    if (!(h1_closed_form(phi) == h1_smith(phi))) all_ok = false;
                    ++count;
                }
    c.j["matrices"] = count;
    c.require(all_ok, "closed form equals Smith normal form");
    return c.finish();
}

// ------------------------------------------------------- detection driver

bool char2_torus_applicable(const GluingMatrix& phi) {
    auto odd = [](std::int64_t n) { return ((n % 2) + 2) % 2 == 1; };
    return odd(phi.l) && odd(phi.m) && !odd(phi.n);
}

std::vector<FamilySpec> torus_curve_specs(const GluingMatrix& phi, std::int64_t p) {
    std::vector<FamilySpec> out;
    auto cls = classify_surface_cases(phi);
    FqFieldPtr F = FqField::make(p);
    if (cls.kind == ManifoldKind::SeifertS2223) {
        FamilySpec slice;
        slice.tag = FamilyTag::GluedTorusSlice;
        slice.field = F;
        slice.eps = static_cast<int>(phi.l);
        slice.k_odd = ((phi.k % 2) + 2) % 2 == 1;
        auto [E, y] = default_slice_trace_parameter(F);
        slice.fixed_y = y;
        out.push_back(slice);
        if (p != 2) {
            FamilySpec odd = slice;
            odd.tag = FamilyTag::GluedTorusOddChar;
            odd.fixed_y.reset();
            out.push_back(odd);
        }
    }
    if (p == 2 && char2_torus_applicable(phi)) {
        FamilySpec c2;
        c2.tag = FamilyTag::GluedTorusChar2;
        c2.field = F;
        out.push_back(c2);
    }
    return out;
}

std::optional<FamilySpec> side_curve_spec(const GluingMatrix& phi, SurfaceCase surface,
                                          std::int64_t p) {
    FamilySpec spec;
    spec.field = FqField::make(p);
    switch (surface) {
        case SurfaceCase::S2:
            if (p != 2) return std::nullopt;
            spec.tag = FamilyTag::GluedGenus2Separating;
            spec.eps = static_cast<int>(phi.l);
            return spec;
        case SurfaceCase::S3:
            spec.tag = FamilyTag::GluedGenus2Nonseparating;
            spec.eps = static_cast<int>(phi.k);
            return spec;
        case SurfaceCase::S5:
            if (p != 2) return std::nullopt;
            spec.tag = FamilyTag::GluedVerticalTorus;
            spec.eps = static_cast<int>(phi.k);
            return spec;
        default:
            return std::nullopt;
    }
}

json verdict_entry(const SymbolicFamily& fam, const DetectionVerdict& v) {
    json j;
    j["family"] = to_string(fam.spec.tag);
    j["ideal_point"] = jplace(v.ideal_point);
    j["verdict"] = to_string(v.kind);
    if (v.witness) {
        j["witness"] = v.witness->to_string(kGluedNames);
        j["witness_valuation"] = *v.witness_valuation;
    }
    if (!v.detail.empty()) j["detail"] = v.detail;
    return j;
}

struct DetectOutcome {
    bool detected = false;
    json entries = json::array();
    bool any_family = false;
};

DetectOutcome run_detect(const GluingMatrix& phi, SurfaceCase surface, std::int64_t p) {
    auto cls = classify_surface_cases(phi);
    if (!cls.has(surface))
        throw case_mismatch_error("surface case " + to_string(surface) +
                                  " is not present for gluing " + phi.to_string());
    DetectOutcome out;

    auto run_family = [&out, &phi, surface](const FamilySpec& spec) {
        SymbolicFamily fam = instantiate_symbolic(spec);
        out.any_family = true;
        if (!verify_relations(fam.rep, glued_presentation(phi)).ok)
            throw std::logic_error("family fails its relators for the given gluing");
        for (const auto& xi : ideal_points(fam.rep)) {
            DetectionVerdict v = detect_surface(fam, phi, surface, xi);
            if (v.kind == VerdictKind::Detected) out.detected = true;
            out.entries.push_back(verdict_entry(fam, v));
        }
    };

    if (surface == SurfaceCase::S1) {
        for (const auto& spec : torus_curve_specs(phi, p)) run_family(spec);
    } else {
        if (auto spec = side_curve_spec(phi, surface, p)) run_family(*spec);
        // curves whose restrictions are points can only refute, through a
        // witness word of negative valuation; include that analysis
        for (const auto& spec : torus_curve_specs(phi, p)) run_family(spec);
    }
    return out;
}

json detect_report(const GluingMatrix& phi, SurfaceCase surface, std::int64_t p) {
    json j;
    j["surface"] = to_string(surface);
    j["phi"] = jphi(phi);
    j["p"] = p;
    auto outcome = run_detect(phi, surface, p);
    j["verdict"] = outcome.detected ? "detected" : "not-detected";
    j["certification"] = outcome.detected ? "symbolic-curve" : "finite-field-census";
    j["curves"] = outcome.entries;
    return j;
}

json check_torus_char2(std::int64_t p, const GluingMatrix& phi) {
    Check c("torus-char2");
    c.with_p(p);
    c.j["phi"] = jphi(phi);
    if (p != 2)
        return c.finish_inapplicable("the characteristic-2 torus curve requires p = 2");
    if (!char2_torus_applicable(phi))
        return c.finish_inapplicable(
            "no characteristic-2 torus curve: the gluing is not (k,1;1,0) mod 2");
    FamilySpec spec;
    spec.tag = FamilyTag::GluedTorusChar2;
    spec.field = FqField::make(2);
    auto fam = instantiate_symbolic(spec);
    c.require(verify_relations(fam.rep, glued_presentation(phi)).ok, "relators");
    c.require(curve_type(fam.rep) == CurveType::C3, "curve type C3");
    bool detected = false;
    for (const auto& xi : ideal_points(fam.rep))
        if (detect_surface(fam, phi, SurfaceCase::S1, xi).kind == VerdictKind::Detected)
            detected = true;
    c.require(detected, "splitting torus detected");
    return c.finish();
}

json check_torus_oddchar(std::int64_t p, const GluingMatrix& phi) {
    Check c("torus-oddchar");
    c.with_p(p);
    c.j["phi"] = jphi(phi);
    if (p == 2) return c.finish_inapplicable("odd-characteristic family requires p != 2");
    if (classify_surface_cases(phi).kind != ManifoldKind::SeifertS2223)
        return c.finish_inapplicable("torus component exists only for the sphere-orbifold shape");
    for (const auto& spec : torus_curve_specs(phi, p)) {
        auto fam = instantiate_symbolic(spec);
        c.require(verify_relations(fam.rep, glued_presentation(phi)).ok,
                  "relators: " + to_string(spec.tag));
        c.require(curve_type(fam.rep) == CurveType::C3, "curve type C3: " + to_string(spec.tag));
        bool detected = false;
        for (const auto& xi : ideal_points(fam.rep))
            if (detect_surface(fam, phi, SurfaceCase::S1, xi).kind == VerdictKind::Detected)
                detected = true;
        c.require(detected, "splitting torus detected: " + to_string(spec.tag));
    }
    return c.finish();
}

json check_surface_lemma(const char* name, SurfaceCase surface, std::int64_t p,
                         const GluingMatrix& phi, bool expect_detected) {
    Check c(name);
    c.with_p(p);
    c.j["phi"] = jphi(phi);
    auto report = detect_report(phi, surface, p);
    c.j["report"] = report;
    c.require((report["verdict"] == "detected") == expect_detected,
              std::string("expected ") + (expect_detected ? "detected" : "not-detected"));
    return c.finish();
}

json check_sphere_s4(std::int64_t p) {
    Check c("sphere-s4");
    c.with_p(p);
    auto F = FqField::make(p);
    bool all_ok = true;
    for (std::int64_t q = 0; q <= 4; ++q)
        for (std::int64_t u : {q - 2, q - 1, q}) {
            auto v = detect_s4(F, false, +1, u, 1, q);
            if (v.detected != (u == q - 1)) all_ok = false;
        }
    c.require(all_ok, "detected exactly at u = v(q-1)");
    return c.finish();
}

json check_census_coverage() {
    Check c("census-coverage");
    for (std::int64_t q : {2, 3, 4, 5}) {
        auto F = field_of_order(q);
        for (auto m : {Manifold::Klein, Manifold::Trefoil}) {
            auto report = census(m, F, nullptr, default_work_bound());
            json entry;
            entry["group"] = report.group;
            entry["q"] = q;
            entry["homs"] = report.hom_count;
            entry["distinct_tuples"] = report.tuples.size();
            entry["uncovered"] = report.uncovered.size();
            c.j["censuses"].push_back(entry);
            c.require(report.uncovered.empty(),
                      report.group + " coverage over F" + std::to_string(q));
        }
        c.require(static_cast<std::int64_t>(enumerate_sl2(F).size()) == q * q * q - q,
                  "unimodular count q^3 - q over F" + std::to_string(q));
    }
    return c.finish();
}

// --------------------------------------------------------- theorem table

json run_theorem_table(const json& expectations, bool with_censuses) {
    Check c("theorem-table");
    for (const auto& family : expectations.at("families")) {
        json fam_report;
        fam_report["label"] = family.at("label");
        for (const auto& phis : family.at("phis")) {
            GluingMatrix phi(phis.at(0).get<std::int64_t>(), phis.at(1).get<std::int64_t>(),
                             phis.at(2).get<std::int64_t>(), phis.at(3).get<std::int64_t>());
            json inst;
            inst["phi"] = jphi(phi);

            auto cls = classify_surface_cases(phi);
            std::vector<std::string> found;
            for (auto s : cls.cases) found.push_back(to_string(s));
            inst["surfaces"] = found;
            inst["kind"] = to_string(cls.kind);
            bool surfaces_ok = family.at("surfaces").get<std::vector<std::string>>() == found &&
                               family.at("kind").get<std::string>() == to_string(cls.kind);
            c.require(surfaces_ok, family.at("label").get<std::string>() + " " + phi.to_string() +
                                       ": surface classification");

            for (const auto& [surface_name, per_p] : family.at("expected").items()) {
                SurfaceCase surface = surface_name == "S1"   ? SurfaceCase::S1
                                      : surface_name == "S2" ? SurfaceCase::S2
                                      : surface_name == "S3" ? SurfaceCase::S3
                                      : surface_name == "S5" ? SurfaceCase::S5
                                                             : SurfaceCase::S4;
                for (const auto& [p_str, expected] : per_p.items()) {
                    std::int64_t p = std::stoll(p_str);
                    auto outcome = run_detect(phi, surface, p);
                    bool match = outcome.detected == expected.get<bool>();
                    inst["verdicts"][surface_name][p_str] =
                        outcome.detected ? "detected" : "not-detected";
                    c.require(match, family.at("label").get<std::string>() + " " +
                                         phi.to_string() + " " + surface_name + " p=" + p_str);
                }
            }

            if (family.contains("s4_range")) {
                std::int64_t q_lo = family.at("s4_range").at(0).get<std::int64_t>();
                std::int64_t q_hi = family.at("s4_range").at(1).get<std::int64_t>();
                bool expected = family.at("s4_expected").get<bool>();
                for (const auto& pj : expectations.at("characteristics")) {
                    std::int64_t p = pj.get<std::int64_t>();
                    auto F = FqField::make(p);
                    for (std::int64_t q = q_lo; q <= q_hi; ++q) {
                        auto v = detect_s4(F, ((phi.k % 2) + 2) % 2 == 1,
                                           static_cast<int>(phi.l), q - 1, 1, q);
                        c.require(v.detected == expected,
                                  family.at("label").get<std::string>() + " vertical torus q=" +
                                      std::to_string(q) + " p=" + std::to_string(p));
                    }
                }
                inst["s4_family"] = "detected for the whole index range";
            }
            fam_report["instances"].push_back(inst);
        }

        if (with_censuses) {
            // finite-field census at the first representative: the scale at
            // which the non-existence halves are certified
            const auto& phis = family.at("phis").at(0);
            GluingMatrix phi(phis.at(0).get<std::int64_t>(), phis.at(1).get<std::int64_t>(),
                             phis.at(2).get<std::int64_t>(), phis.at(3).get<std::int64_t>());
            for (std::int64_t q : {2, 3}) {
                auto report =
                    census(Manifold::Glued, field_of_order(q), &phi, default_work_bound());
                json entry;
                entry["q"] = q;
                entry["homs"] = report.hom_count;
                entry["distinct_tuples"] = report.tuples.size();
                fam_report["censuses"].push_back(entry);
            }
            fam_report["certification"] =
                "non-existence statements certified up to the finite-field censuses";
        }
        c.j["families"].push_back(fam_report);
    }
    return c.finish();
}

// --------------------------------------------------------------- commands

struct CommonOpts {
    std::vector<std::int64_t> ps;
    std::string phi_text;
    std::string out_path;
    std::string lemma;
    bool all = false;
    std::string expectations_path;
    std::int64_t q = 0, r = 1, u = 0, v = 1;
    int eps = 1;
    std::string kparity = "even";
    std::string group;
    std::string surface;
};

int emit(json& doc, const std::string& out_path, int exit_code) {
    doc["version"] = kVersion;
    std::string text = doc.dump(2);
    text += "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out_path);
        f << text;
    }
    return exit_code;
}

json config_json(const CommonOpts& o, std::initializer_list<const char*> fields) {
    json cfg;
    for (const char* f : fields) {
        std::string name = f;
        if (name == "p") cfg["p"] = o.ps;
        if (name == "phi" && !o.phi_text.empty()) cfg["phi"] = o.phi_text;
        if (name == "lemma" && !o.lemma.empty()) cfg["lemma"] = o.lemma;
        if (name == "all") cfg["all"] = o.all;
        if (name == "q") cfg["q"] = o.q;
        if (name == "r") cfg["r"] = o.r;
        if (name == "u") cfg["u"] = o.u;
        if (name == "v") cfg["v"] = o.v;
        if (name == "eps") cfg["eps"] = o.eps;
        if (name == "kparity") cfg["kparity"] = o.kparity;
        if (name == "group") cfg["group"] = o.group;
        if (name == "surface") cfg["surface"] = o.surface;
    }
    return cfg;
}

int cmd_verify(const CommonOpts& opts) {
    json doc;
    doc["command"] = "verify";
    doc["config"] = config_json(opts, {"lemma", "all", "p", "phi"});
    json results = json::array();

    std::vector<std::int64_t> ps = opts.ps;
    std::optional<GluingMatrix> phi;
    if (!opts.phi_text.empty()) phi = parse_phi(opts.phi_text);

    auto phi_or = [&phi](GluingMatrix fallback) { return phi ? *phi : fallback; };

    auto run_named = [&](const std::string& name) {
        if (name == "lemma7") {
            results.push_back(check_lemma7());
        } else if (name == "homology") {
            results.push_back(check_homology());
        } else if (name == "census-coverage") {
            results.push_back(check_census_coverage());
        } else if (name == "klein-irr") {
            for (auto p : ps) results.push_back(check_klein_irr(p));
        } else if (name == "klein-red") {
            for (auto p : ps) results.push_back(check_klein_red(p));
        } else if (name == "trefoil-irr") {
            for (auto p : ps) results.push_back(check_trefoil_irr(p));
        } else if (name == "trefoil-pole") {
            for (auto p : ps) results.push_back(check_trefoil_pole(p));
        } else if (name == "trefoil-red") {
            for (auto p : ps) results.push_back(check_trefoil_red(p));
        } else if (name == "torus-char2") {
            for (auto p : ps)
                results.push_back(check_torus_char2(p, phi_or(GluingMatrix(0, 1, -1, 0))));
        } else if (name == "torus-oddchar") {
            for (auto p : ps)
                results.push_back(check_torus_oddchar(p, phi_or(GluingMatrix(0, 1, -1, -6))));
        } else if (name == "graph-s2") {
            for (auto p : ps)
                results.push_back(check_surface_lemma("graph-s2", SurfaceCase::S2, p,
                                                      phi_or(GluingMatrix(0, 1, -1, 0)), p == 2));
        } else if (name == "graph-s3") {
            for (auto p : ps)
                results.push_back(check_surface_lemma("graph-s3", SurfaceCase::S3, p,
                                                      phi_or(GluingMatrix(1, 0, 0, 1)), true));
        } else if (name == "rp2-s5") {
            for (auto p : ps)
                results.push_back(check_surface_lemma("rp2-s5", SurfaceCase::S5, p,
                                                      phi_or(GluingMatrix(1, 0, -6, 1)), p == 2));
        } else if (name == "sphere-s4") {
            for (auto p : ps) results.push_back(check_sphere_s4(p));
        } else {
            throw std::invalid_argument("unknown lemma name: " + name);
        }
    };

    if (opts.all) {
        for (const char* name :
             {"lemma7", "homology", "klein-irr", "klein-red", "trefoil-irr", "trefoil-pole",
              "trefoil-red", "torus-char2", "torus-oddchar", "graph-s2", "graph-s3", "rp2-s5",
              "sphere-s4", "census-coverage"})
            run_named(name);
        std::ifstream f(opts.expectations_path);
        if (!f)
            throw std::invalid_argument("cannot read expectations file: " +
                                        opts.expectations_path);
        json expectations = json::parse(f);
        results.push_back(run_theorem_table(expectations, true));
    } else if (!opts.lemma.empty()) {
        run_named(opts.lemma);
    } else {
        throw std::invalid_argument("verify needs --lemma NAME or --all");
    }

    doc["results"] = results;
    bool any_fail = false;
    for (const auto& r : results)
        if (check_failed(r)) any_fail = true;
    return emit(doc, opts.out_path, any_fail ? 1 : 0);
}

int cmd_census(const CommonOpts& opts) {
    json doc;
    doc["command"] = "census";
    doc["config"] = config_json(opts, {"group", "q", "phi"});

    Manifold m;
    std::optional<GluingMatrix> phi;
    if (opts.group == "klein") {
        m = Manifold::Klein;
    } else if (opts.group == "trefoil") {
        m = Manifold::Trefoil;
    } else if (opts.group == "glued") {
        m = Manifold::Glued;
        if (opts.phi_text.empty()) throw std::invalid_argument("glued census needs --phi");
        phi = parse_phi(opts.phi_text);
    } else {
        throw std::invalid_argument("--group must be klein, trefoil or glued");
    }

    auto F = field_of_order(opts.q);
    auto report = census(m, F, phi ? &*phi : nullptr, default_work_bound());

    json result;
    result["group"] = report.group;
    result["field"] = {{"p", F->p()}, {"k", F->k()}, {"order", F->order()}};
    result["hom_count"] = report.hom_count;
    result["sl2_count"] = enumerate_sl2(F).size();
    json tuples = json::array();
    for (auto& [key, count] : report.tuples)
        tuples.push_back({{"tuple", key}, {"count", count}});
    result["tuples"] = tuples;
    result["coverage"] = report.coverage_checked ? "enforced" : "informational";
    result["uncovered"] = report.uncovered;
    if (report.hom_count > 0) {
        bool consistent =
            conjugation_consistency(m, F, 100, phi ? &*phi : nullptr, default_work_bound());
        result["conjugation_consistency"] = {{"samples", 100}, {"consistent", consistent}};
    }
    if (report.orbit_counts) {
        json orbits = json::array();
        for (auto& [key, count] : *report.orbit_counts)
            orbits.push_back({{"tuple", key}, {"orbits", count}});
        result["orbit_counts"] = orbits;
    }
    doc["results"] = json::array({result});

    bool fail = report.coverage_checked && !report.uncovered.empty();
    return emit(doc, opts.out_path, fail ? 1 : 0);
}

int cmd_detect(const CommonOpts& opts) {
    json doc;
    doc["command"] = "detect";
    doc["config"] = config_json(opts, {"phi", "surface", "p"});

    GluingMatrix phi = parse_phi(opts.phi_text);
    SurfaceCase surface;
    if (opts.surface == "S1") {
        surface = SurfaceCase::S1;
    } else if (opts.surface == "S2") {
        surface = SurfaceCase::S2;
    } else if (opts.surface == "S3") {
        surface = SurfaceCase::S3;
    } else if (opts.surface == "S5") {
        surface = SurfaceCase::S5;
    } else if (opts.surface == "S4") {
        throw std::invalid_argument("use the detect-s4 command for the vertical torus family");
    } else {
        throw std::invalid_argument("--surface must be one of S1, S2, S3, S5");
    }

    json results = json::array();
    for (auto p : opts.ps) results.push_back(detect_report(phi, surface, p));
    doc["results"] = results;
    return emit(doc, opts.out_path, 0);
}

int cmd_detect_s4(const CommonOpts& opts) {
    json doc;
    doc["command"] = "detect-s4";
    doc["config"] = config_json(opts, {"q", "u", "v", "p", "eps", "kparity"});

    json results = json::array();
    for (auto p : opts.ps) {
        auto F = FqField::make(p);
        auto v = detect_s4(F, opts.kparity == "odd", opts.eps, opts.u, opts.v, opts.q);
        json r;
        r["p"] = p;
        r["q"] = v.q;
        r["u"] = v.u;
        r["v"] = v.v;
        r["word"] = v.word.to_string(kGluedNames);
        r["trace"] = v.trace->to_string();
        r["at_t"] = jval(v.at_zero);
        r["at_infinity"] = jval(v.at_infinity);
        r["verdict"] = v.detected ? "detected" : "not-detected";
        results.push_back(r);
    }
    doc["results"] = results;
    return emit(doc, opts.out_path, 0);
}

int cmd_probe(const CommonOpts& opts) {
    json doc;
    doc["command"] = "conjecture-probe";
    doc["config"] = config_json(opts, {"q", "r", "p", "eps", "kparity"});

    json results = json::array();
    for (auto p : opts.ps) {
        auto F = FqField::make(p);
        auto report = conjecture_probe(F, opts.kparity == "odd", opts.eps, opts.q, opts.r);
        json r;
        r["p"] = p;
        r["q"] = report.q;
        r["r"] = report.r;
        json rows = json::array();
        for (const auto& row : report.rows) {
            json entry;
            entry["word"] = row.label;
            entry["at_t"] = jval(row.at_zero);
            entry["at_infinity"] = jval(row.at_infinity);
            rows.push_back(entry);
        }
        r["valuations"] = rows;
        if (report.verdict)
            r["verdict"] = report.verdict->detected ? "detected" : "not-detected";
        else
            r["verdict"] = nullptr;  // exploratory: no claim for r > 1
        results.push_back(r);
    }
    doc["results"] = results;
    return emit(doc, opts.out_path, 0);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact SL2 character computations for glued 3-manifold families"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto add_common = [&opts](CLI::App* sub, bool with_p = true) {
        if (with_p) sub->add_option("--p", opts.ps, "characteristic(s)");
        sub->add_option("--out", opts.out_path, "write the JSON report to this path");
    };

    auto* verify = app.add_subcommand("verify", "run named verification suites");
    verify->add_option("--lemma", opts.lemma, "which check to run");
    verify->add_flag("--all", opts.all, "run every check and the verdict table");
    verify->add_option("--phi", opts.phi_text, "gluing matrix k,l,m,n");
    verify->add_option("--expectations", opts.expectations_path, "verdict-table file")
        ->default_val(SL2CV_EXPECTATIONS_PATH);
    add_common(verify);

    auto* census_cmd = app.add_subcommand("census", "exhaustive character census");
    census_cmd->add_option("--group", opts.group, "klein, trefoil or glued")->required();
    census_cmd->add_option("--q", opts.q, "field size (prime power)")->required();
    census_cmd->add_option("--phi", opts.phi_text, "gluing matrix for the glued group");
    add_common(census_cmd, false);

    auto* detect = app.add_subcommand("detect", "surface detection verdicts");
    detect->add_option("--phi", opts.phi_text, "gluing matrix k,l,m,n")->required();
    detect->add_option("--surface", opts.surface, "S1, S2, S3 or S5")->required();
    add_common(detect);

    auto* s4 = app.add_subcommand("detect-s4", "vertical-torus detection on the monomial curve");
    s4->add_option("--q", opts.q, "torus index")->required();
    s4->add_option("--u", opts.u, "monomial exponent of the off-diagonal parameter")->required();
    s4->add_option("--v", opts.v, "monomial exponent of the trace parameter")->required();
    s4->add_option("--eps", opts.eps, "sign choice");
    s4->add_option("--kparity", opts.kparity, "even or odd");
    add_common(s4);

    auto* probe = app.add_subcommand("conjecture-probe", "exploratory valuation table");
    probe->add_option("--q", opts.q)->required();
    probe->add_option("--r", opts.r)->required();
    probe->add_option("--eps", opts.eps, "sign choice");
    probe->add_option("--kparity", opts.kparity, "even or odd");
    add_common(probe);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (opts.ps.empty()) opts.ps = kDefaultChars;

    try {
        if (app.got_subcommand("verify")) return cmd_verify(opts);
        if (app.got_subcommand("census")) return cmd_census(opts);
        if (app.got_subcommand("detect")) return cmd_detect(opts);
        if (app.got_subcommand("detect-s4")) return cmd_detect_s4(opts);
        if (app.got_subcommand("conjecture-probe")) return cmd_probe(opts);
    } catch (const work_bound_exceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const case_mismatch_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
