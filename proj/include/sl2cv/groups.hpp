#pragma once
// Presentations of the three manifold groups, gluing matrices, peripheral
// subgroups, first homology (closed form and Smith-form oracle), the shape
// classification of which essential surfaces exist, and the recurrence
// words projecting the vertical tori.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "sl2cv/word.hpp"

namespace sl2cv {

/// Gluing matrix (k l; m n) in SL2(Z): identifies the peripheral bases
/// (a^2, b) and (meridian, longitude) of the two glued pieces.
struct GluingMatrix {
    std::int64_t k, l, m, n;

    GluingMatrix(std::int64_t k_, std::int64_t l_, std::int64_t m_, std::int64_t n_)
        : k(k_), l(l_), m(m_), n(n_) {
        if (k * n - l * m != 1) throw std::invalid_argument("gluing matrix: determinant must be 1");
    }

    std::string to_string() const {
        return "(" + std::to_string(k) + "," + std::to_string(l) + ";" + std::to_string(m) + "," +
               std::to_string(n) + ")";
    }
};

enum class Manifold { Klein, Trefoil, Glued };

struct Presentation {
    int num_generators = 0;
    std::vector<Word> relators;
    std::string name;
    std::vector<std::string> generator_names;
};

/// Generator indices: Klein bottle group (a, b) = (0, 1); trefoil group
/// (g, h) = (0, 1); glued group (a, b, g, h) = (0, 1, 2, 3).
inline Presentation klein_presentation() {
    Presentation P;
    P.num_generators = 2;
    P.name = "klein";
    P.generator_names = {"a", "b"};
    P.relators = {Word::from_syllables({{0, 1}, {1, 1}, {0, -1}, {1, 1}})};  // a b a^-1 b
    return P;
}

inline Presentation trefoil_presentation() {
    Presentation P;
    P.num_generators = 2;
    P.name = "trefoil";
    P.generator_names = {"g", "h"};
    // g h g (h g h)^-1
    P.relators = {Word::from_syllables({{0, 1}, {1, 1}, {0, 1}, {1, -1}, {0, -1}, {1, -1}})};
    return P;
}

inline Presentation glued_presentation(const GluingMatrix& phi) {
    Presentation P;
    P.num_generators = 4;
    P.name = "glued" + phi.to_string();
    P.generator_names = {"a", "b", "g", "h"};
    Word trefoil = Word::from_syllables({{2, 1}, {3, 1}, {2, 1}, {3, -1}, {2, -1}, {3, -1}});
    Word klein = Word::from_syllables({{0, 1}, {1, 1}, {0, -1}, {1, 1}});
    // g (b^l)^-1 (a^2k)^-1
    Word glue1 = Word::gen(2) * Word::gen(1, -phi.l) * Word::gen(0, -2 * phi.k);
    // g^-4 h g^2 h (b^n)^-1 (a^2m)^-1
    Word glue2 = Word::from_syllables({{2, -4}, {3, 1}, {2, 2}, {3, 1}}) * Word::gen(1, -phi.n) *
                 Word::gen(0, -2 * phi.m);
    P.relators = {trefoil, klein, glue1, glue2};
    return P;
}

/// Peripheral subgroup generators: (a^2, b) for the twisted I-bundle over
/// the Klein bottle, (meridian, longitude) = (g, g^-4 h g^2 h) for the
/// trefoil complement.
inline std::pair<Word, Word> peripheral_words(Manifold m) {
    switch (m) {
        case Manifold::Klein:
            return {Word::gen(0, 2), Word::gen(1)};
        case Manifold::Trefoil:
            return {Word::gen(0), Word::from_syllables({{0, -4}, {1, 1}, {0, 2}, {1, 1}})};
        default:
            throw std::invalid_argument("peripheral_words: only the two pieces have torus boundary");
    }
}

/// Abelian group as invariant factors; 0 denotes an infinite cyclic factor.
struct AbelianGroup {
    std::vector<std::int64_t> invariant_factors;  // each divides the next, or 0 at the end

    friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
        return a.invariant_factors == b.invariant_factors;
    }

    std::string to_string() const {
        if (invariant_factors.empty()) return "0";
        std::string s;
        for (auto f : invariant_factors) {
            if (!s.empty()) s += "+";
            s += (f == 0) ? "Z" : "Z" + std::to_string(f);
        }
        return s;
    }
};

/// H_1(N_phi) in closed form: Z2+Z2m for n even, Z4m for n odd (with |m|
/// and Z0 = Z).
inline AbelianGroup h1_closed_form(const GluingMatrix& phi) {
    std::int64_t m = std::abs(phi.m);
    if (((phi.n % 2) + 2) % 2 == 0) return AbelianGroup{{2, 2 * m}};
    if (m == 0) return AbelianGroup{{0}};
    return AbelianGroup{{4 * m}};
}

namespace detail {

/// Smith normal form of a small integer matrix (in place); returns the
/// diagonal, nonnegative, each dividing the next.
inline std::vector<std::int64_t> smith_diagonal(std::vector<std::vector<std::int64_t>> A) {
    const std::size_t rows = A.size(), cols = A.empty() ? 0 : A[0].size();
    std::vector<std::int64_t> diag;
    std::size_t t = 0;
    while (t < rows && t < cols) {
        // pivot: entry of minimal nonzero magnitude in the submatrix
        std::size_t pr = t, pc = t;
        std::int64_t best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (A[i][j] != 0 && (best == 0 || std::abs(A[i][j]) < best)) {
                    best = std::abs(A[i][j]);
                    pr = i; pc = j;
                }
        if (best == 0) break;
        std::swap(A[t], A[pr]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(A[i][t], A[i][pc]);
        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                std::int64_t q = A[i][t] / A[t][t];
                if (q != 0)
                    for (std::size_t j = t; j < cols; ++j) A[i][j] -= q * A[t][j];
                if (A[i][t] != 0) {  // remainder smaller than pivot: swap up and restart
                    std::swap(A[t], A[i]);
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                std::int64_t q = A[t][j] / A[t][t];
                if (q != 0)
                    for (std::size_t i = t; i < rows; ++i) A[i][j] -= q * A[i][t];
                if (A[t][j] != 0) {
                    for (std::size_t i = 0; i < rows; ++i) std::swap(A[i][t], A[i][j]);
                    clean = false;
                }
            }
        }
        ++t;
    }
    for (std::size_t i = 0; i < t; ++i) diag.push_back(std::abs(A[i][i]));
    // diag(a, b) is equivalent to diag(gcd, lcm): iterate to the divisibility chain
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < diag.size(); ++i)
            for (std::size_t j = i + 1; j < diag.size(); ++j)
                if (diag[j] % diag[i] != 0) {
                    std::int64_t g = std::gcd(diag[i], diag[j]);
                    std::int64_t l = diag[i] / g * diag[j];
                    diag[i] = g;
                    diag[j] = l;
                    changed = true;
                }
    }
    return diag;
}

}  // namespace detail

/// Independent homology oracle: Smith normal form of the abelianized
/// relation matrix of the glued group.
inline AbelianGroup h1_smith(const GluingMatrix& phi) {
    // rows = abelianized relators in generators (a, b, g, h)
    std::vector<std::vector<std::int64_t>> rel = {
        {0, 0, 1, -1},                  // ghg = hgh
        {0, 2, 0, 0},                   // aba^-1b
        {2 * phi.k, phi.l, -1, 0},      // g = a^2k b^l
        {2 * phi.m, phi.n, 2, -2},      // g^-4 h g^2 h = a^2m b^n
    };
    auto diag = detail::smith_diagonal(std::move(rel));
    AbelianGroup out;
    for (auto d : diag)
        if (d != 1) out.invariant_factors.push_back(d);
    std::size_t free_rank = 4 - diag.size();
    for (std::size_t i = 0; i < free_rank; ++i) out.invariant_factors.push_back(0);
    return out;
}

enum class SurfaceCase { S1, S2, S3, S4, S5 };
enum class ManifoldKind { Graph, SeifertS2223, SeifertRP2 };

inline std::string to_string(SurfaceCase s) {
    switch (s) {
        case SurfaceCase::S1: return "S1";
        case SurfaceCase::S2: return "S2";
        case SurfaceCase::S3: return "S3";
        case SurfaceCase::S4: return "S4";
        case SurfaceCase::S5: return "S5";
    }
    return "?";
}
inline std::string to_string(ManifoldKind k) {
    switch (k) {
        case ManifoldKind::Graph: return "graph";
        case ManifoldKind::SeifertS2223: return "seifert-S2(2,2,2,3)";
        case ManifoldKind::SeifertRP2: return "seifert-RP2(2,3)";
    }
    return "?";
}

struct SurfaceClassification {
    std::vector<SurfaceCase> cases;  // S1 always present
    ManifoldKind kind;

    bool has(SurfaceCase s) const {
        for (auto c : cases)
            if (c == s) return true;
        return false;
    }
};

/// Which essential surfaces exist in N_phi, from the shape of phi.  The
/// sign pairs are checked for both consistent choices, never mixed.
inline SurfaceClassification classify_surface_cases(const GluingMatrix& phi) {
    SurfaceClassification out;
    out.cases.push_back(SurfaceCase::S1);
    out.kind = ManifoldKind::Graph;
    for (std::int64_t e : {+1, -1}) {
        // (k, e; -e, 0): separating genus two
        if (phi.l == e && phi.m == -e && phi.n == 0) out.cases.push_back(SurfaceCase::S2);
        // (e, l; 0, e): non-separating genus two
        if (phi.k == e && phi.m == 0 && phi.n == e) out.cases.push_back(SurfaceCase::S3);
        // (k, e; -e-6k, -6e): vertical tori over S2(2,2,2,3)
        if (phi.l == e && phi.m == -e - 6 * phi.k && phi.n == -6 * e) {
            out.cases.push_back(SurfaceCase::S4);
            out.kind = ManifoldKind::SeifertS2223;
        }
        // (e, l; -6e, e-6l): vertical tori over RP2(2,3)
        if (phi.k == e && phi.m == -6 * e && phi.n == e - 6 * phi.l) {
            out.cases.push_back(SurfaceCase::S5);
            out.kind = ManifoldKind::SeifertRP2;
        }
    }
    return out;
}

/// Projection words of the S4-family tori onto the base orbifold come from
/// the recurrence w_q = w_{q-1}^-1 w_{q-2} w_{q-1} with w_0 = b^-1 a and
/// w_1 = a, freely reduced.
inline Word alpha_word(std::int64_t q) {
    if (q < 0) throw std::invalid_argument("alpha_word: negative index");
    Word w0 = Word::from_syllables({{1, -1}, {0, 1}});  // b^-1 a
    Word w1 = Word::gen(0);                             // a
    if (q == 0) return w0;
    for (std::int64_t i = 2; i <= q; ++i) {
        Word next = w1.inverse() * w0 * w1;
        w0 = w1;
        w1 = next;
    }
    return w1;
}

}  // namespace sl2cv
