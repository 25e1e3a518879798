#pragma once
// Group elements as freely reduced words: sequences of
// (generator index, nonzero exponent) with distinct adjacent generators.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sl2cv {

struct Word {
    // (generator index, exponent != 0); adjacent syllables have distinct generators
    std::vector<std::pair<int, std::int64_t>> syllables;

    Word() = default;

    static Word gen(int g, std::int64_t e = 1) {
        Word w;
        if (e != 0) w.syllables.push_back({g, e});
        return w;
    }

    static Word from_syllables(std::vector<std::pair<int, std::int64_t>> s) {
        Word w;
        for (auto& [g, e] : s) w.append(g, e);
        return w;
    }

    bool empty() const { return syllables.empty(); }

    std::size_t letter_count() const {
        std::size_t n = 0;
        for (auto& [g, e] : syllables) n += static_cast<std::size_t>(e < 0 ? -e : e);
        return n;
    }

    void append(int g, std::int64_t e) {
        if (e == 0) return;
        if (!syllables.empty() && syllables.back().first == g) {
            syllables.back().second += e;
            if (syllables.back().second == 0) syllables.pop_back();
            return;
        }
        syllables.push_back({g, e});
    }

    Word inverse() const {
        Word w;
        for (auto it = syllables.rbegin(); it != syllables.rend(); ++it)
            w.append(it->first, -it->second);
        return w;
    }

    friend Word operator*(const Word& a, const Word& b) {
        Word w = a;
        for (auto& [g, e] : b.syllables) w.append(g, e);
        return w;
    }

    Word pow(std::int64_t n) const {
        if (n < 0) return inverse().pow(-n);
        Word w;
        for (std::int64_t i = 0; i < n; ++i) w = w * (*this);
        return w;
    }

    static Word commutator(const Word& a, const Word& b) {
        return a * b * a.inverse() * b.inverse();
    }

    /// Exponent sums per generator (abelianized image).
    std::vector<std::int64_t> abelianized(int num_generators) const {
        std::vector<std::int64_t> sums(static_cast<std::size_t>(num_generators), 0);
        for (auto& [g, e] : syllables) {
            if (g < 0 || g >= num_generators) throw std::invalid_argument("word: generator out of range");
            sums[static_cast<std::size_t>(g)] += e;
        }
        return sums;
    }

    std::string to_string(const std::vector<std::string>& names) const {
        if (syllables.empty()) return "1";
        std::string s;
        for (auto& [g, e] : syllables) {
            if (!s.empty()) s += " ";
            s += names.at(static_cast<std::size_t>(g));
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }

    friend bool operator==(const Word& a, const Word& b) { return a.syllables == b.syllables; }
};

}  // namespace sl2cv
