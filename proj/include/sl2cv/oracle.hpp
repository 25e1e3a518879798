#pragma once
// Brute-force enumeration of Hom(Gamma, SL2(F_q)) for small q, censuses of
// characters, and the coverage check that every finite-field character
// lies on a known closed component.
//
// Enumeration order is lexicographic over matrix entries in field
// enumeration order, so reports are byte-stable.  The four-generator
// search always eliminates g through the gluing relation first.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sl2cv/families.hpp"
#include "sl2cv/groups.hpp"
#include "sl2cv/mat2.hpp"

namespace sl2cv {

class work_bound_exceeded : public std::runtime_error {
public:
    explicit work_bound_exceeded(const std::string& what) : std::runtime_error(what) {}
};

inline std::int64_t default_work_bound() {
    if (const char* env = std::getenv("SL2CV_WORK_BOUND")) {
        char* end = nullptr;
        long long v = std::strtoll(env, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::int64_t>(v);
    }
    return 100000000;  // relator evaluations
}

/// All determinant-1 matrices over F_q, entry-lexicographic order.
inline std::vector<Mat2<FqElem>> enumerate_sl2(const FqFieldPtr& F, std::int64_t field_bound = 16) {
    if (F->order() > field_bound)
        throw work_bound_exceeded("enumerate_sl2: field larger than the configured bound");
    std::vector<Mat2<FqElem>> out;
    auto elems = F->enumerate();
    FqElem one = F->one();
    for (const auto& a : elems)
        for (const auto& b : elems)
            for (const auto& c : elems)
                for (const auto& d : elems)
                    if (a * d - b * c == one) out.push_back(Mat2<FqElem>(a, b, c, d));
    return out;
}

namespace detail {

struct WorkMeter {
    std::int64_t used = 0;
    std::int64_t limit;
    explicit WorkMeter(std::int64_t l) : limit(l) {}
    void charge(std::int64_t n = 1) {
        used += n;
        if (used > limit) throw work_bound_exceeded("enumeration work bound exceeded");
    }
};

}  // namespace detail

/// All homomorphisms of a two-generator presentation into SL2(F_q).
inline std::vector<GenAssignment<FqElem>> enumerate_homs(const Presentation& pres,
                                                         const FqFieldPtr& F,
                                                         std::int64_t work_bound = 100000000) {
    if (pres.num_generators != 2)
        throw std::invalid_argument("enumerate_homs: use the glued enumeration for 4 generators");
    auto sl2 = enumerate_sl2(F);
    detail::WorkMeter meter(work_bound);
    std::vector<GenAssignment<FqElem>> out;
    for (const auto& A : sl2)
        for (const auto& B : sl2) {
            GenAssignment<FqElem> rep{A, B};
            bool ok = true;
            for (const auto& rel : pres.relators) {
                meter.charge();
                if (!word_eval(rep, rel).is_identity()) { ok = false; break; }
            }
            if (ok) out.push_back(std::move(rep));
        }
    return out;
}

/// All homomorphisms of the glued group: the outer loop runs over (A, B, H)
/// with G forced by the gluing relation g = (a^2)^k b^l.
inline std::vector<GenAssignment<FqElem>> enumerate_homs_glued(const GluingMatrix& phi,
                                                               const FqFieldPtr& F,
                                                               std::int64_t work_bound = 100000000) {
    auto sl2 = enumerate_sl2(F);
    detail::WorkMeter meter(work_bound);
    std::vector<GenAssignment<FqElem>> out;
    Word klein = klein_presentation().relators[0];
    Word trefoil = trefoil_presentation().relators[0];

    std::vector<GenAssignment<FqElem>> pairs;
    for (const auto& A : sl2)
        for (const auto& B : sl2) {
            GenAssignment<FqElem> rep{A, B};
            meter.charge();
            if (word_eval(rep, klein).is_identity()) pairs.push_back(std::move(rep));
        }

    for (const auto& ab : pairs) {
        const auto& A = ab[0];
        const auto& B = ab[1];
        Mat2<FqElem> G = A.pow(2 * phi.k) * B.pow(phi.l);
        Mat2<FqElem> rhs = A.pow(2 * phi.m) * B.pow(phi.n);
        for (const auto& H : sl2) {
            meter.charge(2);
            GenAssignment<FqElem> gh{G, H};
            if (!word_eval(gh, trefoil).is_identity()) continue;
            if (G.pow(-4) * H * G.pow(2) * H != rhs) continue;
            out.push_back(GenAssignment<FqElem>{A, B, G, H});
        }
    }
    return out;
}

struct CensusReport {
    std::string group;
    FqFieldPtr field;
    std::int64_t hom_count = 0;
    // character tuple (as element indices) -> number of homomorphisms
    std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>> tuples;
    // tuples matching no closed component formula (coverage for the two pieces only)
    std::vector<std::vector<std::int64_t>> uncovered;
    bool coverage_checked = false;
    // conjugation-orbit counts per tuple, reported for q <= 4 only
    std::optional<std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>>> orbit_counts;
};

namespace detail {

inline std::vector<std::int64_t> tuple_key(const std::vector<FqElem>& tuple) {
    std::vector<std::int64_t> key;
    key.reserve(tuple.size());
    for (const auto& e : tuple) key.push_back(e.index());
    return key;
}

inline std::vector<std::int64_t> rep_key(const GenAssignment<FqElem>& rep) {
    std::vector<std::int64_t> key;
    key.reserve(rep.size() * 4);
    for (const auto& M : rep) {
        key.push_back(M.a11.index());
        key.push_back(M.a12.index());
        key.push_back(M.a21.index());
        key.push_back(M.a22.index());
    }
    return key;
}

}  // namespace detail

/// Exhaustive census of characters: homomorphisms clustered by character
/// tuple.  Coverage against the closed component formulas is enforced for
/// the two pieces; for the glued group the census is informational.
inline CensusReport census(Manifold m, const FqFieldPtr& F,
                           const GluingMatrix* phi = nullptr,
                           std::int64_t work_bound = 100000000) {
    std::vector<GenAssignment<FqElem>> homs;
    CensusReport report;
    report.field = F;
    if (m == Manifold::Glued) {
        if (!phi) throw std::invalid_argument("census: glued census needs a gluing matrix");
        homs = enumerate_homs_glued(*phi, F, work_bound);
        report.group = "glued" + phi->to_string();
    } else {
        const Presentation pres = (m == Manifold::Klein) ? klein_presentation() : trefoil_presentation();
        homs = enumerate_homs(pres, F, work_bound);
        report.group = pres.name;
    }
    report.hom_count = static_cast<std::int64_t>(homs.size());

    std::map<std::vector<std::int64_t>, std::int64_t> counts;
    for (const auto& rep : homs) counts[detail::tuple_key(char_tuple(rep))]++;
    for (auto& [key, count] : counts) report.tuples.push_back({key, count});

    if (m != Manifold::Glued) {
        report.coverage_checked = true;
        for (auto& [key, count] : counts) {
            std::array<FqElem, 3> t{F->element(key[0]), F->element(key[1]), F->element(key[2])};
            if (!component_membership(m, t).covered()) report.uncovered.push_back(key);
        }
    }

    if (F->order() <= 4) {
        auto sl2 = enumerate_sl2(F);
        std::set<std::vector<std::int64_t>> seen;
        std::map<std::vector<std::int64_t>, std::int64_t> orbits;
        for (const auto& rep : homs) {
            if (seen.count(detail::rep_key(rep))) continue;
            orbits[detail::tuple_key(char_tuple(rep))]++;
            for (const auto& P : sl2) {
                GenAssignment<FqElem> conj;
                conj.reserve(rep.size());
                for (const auto& M : rep) conj.push_back(M.conjugated_by(P));
                seen.insert(detail::rep_key(conj));
            }
        }
        report.orbit_counts = std::vector<std::pair<std::vector<std::int64_t>, std::int64_t>>(
            orbits.begin(), orbits.end());
    }
    return report;
}

/// Conjugate representations have equal character tuples.  samples = 0
/// checks every (hom, conjugator) pair; otherwise pairs are drawn from a
/// fixed-seed generator.
inline bool conjugation_consistency(Manifold m, const FqFieldPtr& F, std::int64_t samples,
                                    const GluingMatrix* phi = nullptr,
                                    std::int64_t work_bound = 100000000) {
    std::vector<GenAssignment<FqElem>> homs =
        (m == Manifold::Glued) ? enumerate_homs_glued(*phi, F, work_bound)
                               : enumerate_homs(m == Manifold::Klein ? klein_presentation()
                                                                     : trefoil_presentation(),
                                                F, work_bound);
    auto sl2 = enumerate_sl2(F);
    auto check = [](const GenAssignment<FqElem>& rep, const Mat2<FqElem>& P) {
        GenAssignment<FqElem> conj;
        conj.reserve(rep.size());
        for (const auto& M : rep) conj.push_back(M.conjugated_by(P));
        return char_tuple(conj) == char_tuple(rep);
    };
    if (samples <= 0) {
        for (const auto& rep : homs)
            for (const auto& P : sl2)
                if (!check(rep, P)) return false;
        return true;
    }
    std::mt19937_64 rng(0x5eed5eed);
    std::uniform_int_distribution<std::size_t> hom_pick(0, homs.size() - 1);
    std::uniform_int_distribution<std::size_t> mat_pick(0, sl2.size() - 1);
    for (std::int64_t s = 0; s < samples; ++s)
        if (!check(homs[hom_pick(rng)], sl2[mat_pick(rng)])) return false;
    return true;
}

}  // namespace sl2cv
