#pragma once

// Independent helpers used only on the test side: brute-force expansions and
// random generators that do not share code paths with the library.

#include "kvassoc/free_lie.hpp"
#include "kvassoc/series.hpp"

#include <random>

namespace oracle {

using kvassoc::NCSeries;
using kvassoc::Rational;
using kvassoc::Word;

inline NCSeries x(int letters, int cap, int i) { return NCSeries::letter(letters, cap, i); }

inline NCSeries word(int letters, int cap, std::vector<int> ls, Rational c = Rational(1)) {
    return NCSeries::monomial(letters, cap, Word::from(ls), c);
}

// small random rational with numerator in [-3,3] and denominator in [1,3]
inline Rational small_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
    return Rational(num(rng), den(rng));
}

inline NCSeries random_series(std::mt19937_64& rng, int letters, int cap, int terms, int min_deg = 0) {
    NCSeries s(letters, cap);
    std::uniform_int_distribution<int> len(min_deg, cap), let(0, letters - 1);
    for (int t = 0; t < terms; ++t) {
        std::vector<int> w(static_cast<std::size_t>(len(rng)));
        for (int& l : w) l = let(rng);
        s.add_term(Word::from(w), small_rational(rng));
    }
    return s;
}

// random Lie element built from nested brackets of generators
inline kvassoc::LieElement random_lie(std::mt19937_64& rng, int letters, int cap, int terms, int min_deg = 1,
                                      int max_deg = -1) {
    using kvassoc::LieElement;
    if (max_deg < 0) max_deg = cap;
    LieElement out(letters, cap);
    std::uniform_int_distribution<int> len(min_deg, max_deg), let(0, letters - 1);
    for (int t = 0; t < terms; ++t) {
        int d = len(rng);
        LieElement e = LieElement::generator(letters, cap, let(rng));
        for (int k = 1; k < d; ++k) {
            LieElement g = LieElement::generator(letters, cap, let(rng));
            e = (rng() & 1) ? kvassoc::lie_bracket(g, e) : kvassoc::lie_bracket(e, g);
        }
        out += small_rational(rng) * e;
    }
    return out;
}

// Dynkin-Specht-Wever projection: sum_w c_w [w]/|w|; independent Lie check
inline NCSeries dynkin_projection(const NCSeries& z) {
    NCSeries out(z.letters(), z.cap());
    for (const auto& [w, c] : z.terms()) {
        if (w.empty()) continue;
        NCSeries b = NCSeries::letter(z.letters(), z.cap(), w[0]);
        for (int p = 1; p < w.size(); ++p) b = kvassoc::commutator(b, NCSeries::letter(z.letters(), z.cap(), w[p]));
        out += (c * Rational(1, w.size())) * b;
    }
    return out;
}

}  // namespace oracle
