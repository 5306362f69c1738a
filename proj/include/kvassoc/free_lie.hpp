#pragma once

#include "kvassoc/linalg.hpp"
#include "kvassoc/series.hpp"

#include <concepts>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <stdexcept>
#include <vector>

namespace kvassoc {

bool is_lyndon(Word w);
// Lyndon words of length d over n letters, in lexicographic order
std::vector<Word> lyndon_basis(int n, int d);
// dimension of the degree-d part of the free Lie algebra on n generators
long witt_dimension(int n, int d);
// w = u v with v the longest proper Lyndon suffix
std::pair<Word, Word> standard_factorization(Word w);
// expansion of the standard bracketing of a Lyndon word, integer coefficients
const std::vector<std::pair<Word, long>>& lyndon_expansion(Word w);

struct NotPrimitive : std::domain_error {
    int degree;
    NotPrimitive(int d, const std::string& what) : std::domain_error(what), degree(d) {}
};

// Element of the (truncated) free Lie algebra f_n. The value is held as its
// image in the envelope; Lyndon coordinates are derived on request.
class LieElement {
public:
    using Coords = std::map<Word, Rational>;

    LieElement() = default;
    LieElement(int letters, int cap) : z_(letters, cap) {}

    static LieElement generator(int letters, int cap, int i);
    // checks primitivity; throws NotPrimitive with the offending degree
    static LieElement from_assoc(const NCSeries& z);
    // caller guarantees z is primitive (e.g. a log of a group-like element)
    static LieElement from_primitive(NCSeries z);
    static LieElement from_coords(int letters, int cap, const Coords& coords);

    int letters() const { return z_.letters(); }
    int cap() const { return z_.cap(); }
    const NCSeries& assoc() const { return z_; }
    Coords coords() const;
    Rational coord(Word lyndon) const;
    bool is_zero() const { return z_.is_zero(); }
    int valuation() const { return z_.valuation(); }
    LieElement zero_like() const { return LieElement(letters(), cap()); }

    LieElement truncated(int cap) const { return from_primitive(z_.truncated(cap)); }
    LieElement with_cap(int cap) const { return from_primitive(z_.with_cap(cap)); }
    LieElement degree_part(int d) const { return from_primitive(z_.degree_part(d)); }
    LieElement degree_range(int lo, int hi) const { return from_primitive(z_.degree_range(lo, hi)); }
    LieElement widened(int letters) const { return from_primitive(z_.widened(letters)); }
    LieElement relabel(const std::vector<int>& map, int new_letters) const {
        return from_primitive(z_.relabel(map, new_letters));
    }
    // Lie morphism x_i -> images[i]
    LieElement substitute(const std::vector<LieElement>& images) const;

    LieElement& operator+=(const LieElement& o) { z_ += o.z_; return *this; }
    LieElement& operator-=(const LieElement& o) { z_ -= o.z_; return *this; }
    friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
    friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
    friend LieElement operator*(const Rational& r, const LieElement& a) { return from_primitive(r * a.z_); }
    LieElement operator-() const { return from_primitive(-z_); }
    friend bool operator==(const LieElement& a, const LieElement& b) { return a.z_ == b.z_; }

    std::string str() const;

private:
    explicit LieElement(NCSeries z) : z_(std::move(z)) {}
    NCSeries z_;
};

LieElement lie_bracket(const LieElement& a, const LieElement& b);
// log(e^a e^b) in the free Lie algebra
LieElement lie_cbh(const LieElement& a, const LieElement& b);

// log(e^{x_1} ... e^{x_p}) in f_p, memoized per (p, cap)
const LieElement& universal_cbh(int p, int cap);

// Anything evaluable as the target of a Lie morphism out of a free Lie algebra.
template <class T>
concept GradedLie = requires(const T& a, const T& b, const Rational& r, int n) {
    { lie_bracket(a, b) } -> std::convertible_to<T>;
    { a + b } -> std::convertible_to<T>;
    { r * a } -> std::convertible_to<T>;
    { a.valuation() } -> std::convertible_to<int>;
    { a.cap() } -> std::convertible_to<int>;
    { a.zero_like() } -> std::convertible_to<T>;
    { a.truncated(n) } -> std::convertible_to<T>;
};

// The Lie morphism f_m -> T sending x_i to targets[i], applied to expr.
template <GradedLie T>
T eval_lie(const LieElement& expr, const std::vector<T>& targets) {
    if (static_cast<int>(targets.size()) != expr.letters())
        throw std::invalid_argument("eval_lie: expected " + std::to_string(expr.letters()) + " targets, got " +
                                    std::to_string(targets.size()));
    if (targets.empty()) throw std::invalid_argument("eval_lie: no targets");
    int cap = targets[0].cap();
    for (const T& t : targets) cap = std::min(cap, t.cap());
    std::vector<int> weight;
    for (const T& t : targets) {
        int v = t.valuation();
        if (v < 1) throw std::invalid_argument("eval_lie: target of valuation 0");
        weight.push_back(std::min(v, cap + 1));
    }
    std::map<Word, T> memo;
    std::function<const T&(Word)> image = [&](Word w) -> const T& {
        auto it = memo.find(w);
        if (it != memo.end()) return it->second;
        T val = targets[0].zero_like().truncated(cap);
        int wt = 0;
        for (int p = 0; p < w.size() && wt <= cap; ++p) wt += weight[static_cast<std::size_t>(w[p])];
        if (wt <= cap) {
            if (w.size() == 1) {
                val = targets[static_cast<std::size_t>(w[0])].truncated(cap);
            } else {
                auto [u, v] = standard_factorization(w);
                const T& iu = image(u);
                const T& iv = image(v);
                val = lie_bracket(iu, iv);
            }
        }
        return memo.emplace(w, std::move(val)).first->second;
    };
    T result = targets[0].zero_like().truncated(cap);
    for (const auto& [w, c] : expr.coords()) {
        int wt = 0;
        for (int p = 0; p < w.size(); ++p) wt += weight[static_cast<std::size_t>(w[p])];
        if (wt > cap) continue;
        result = result + c * image(w);
    }
    return result;
}

// log(e^g e^h) in any graded Lie target
template <GradedLie T>
T group_mul(const T& g, const T& h) {
    int cap = std::min(g.cap(), h.cap());
    return eval_lie(universal_cbh(2, cap), std::vector<T>{g, h});
}

// A graded Lie algebra given by structure constants: dims[d] basis elements in
// degree d (d >= 1), and the bracket of basis elements as a coordinate vector.
class GradedLieOracle {
public:
    using Bracket = std::function<Vec(int d1, int i, int d2, int j)>;
    GradedLieOracle(std::vector<int> dims, Bracket bracket);

    int max_degree() const { return static_cast<int>(dims_.size()) - 1; }
    int dim(int d) const { return d < static_cast<int>(dims_.size()) ? dims_[static_cast<std::size_t>(d)] : 0; }
    const Vec& bracket(int d1, int i, int d2, int j) const;

    // antisymmetry and Jacobi on all basis triples of total degree <= max_degree
    bool spot_check() const;

private:
    std::vector<int> dims_;
    Bracket bracket_;
    mutable std::map<std::tuple<int, int, int, int>, Vec> cache_;
    mutable std::mutex mu_;
};

class OracleElement {
public:
    OracleElement(std::shared_ptr<const GradedLieOracle> alg, int cap);
    static OracleElement basis(std::shared_ptr<const GradedLieOracle> alg, int cap, int d, int i);

    int cap() const { return cap_; }
    int valuation() const;
    const Vec& part(int d) const { return parts_[static_cast<std::size_t>(d)]; }
    OracleElement zero_like() const { return OracleElement(alg_, cap_); }
    OracleElement truncated(int cap) const;

    friend OracleElement operator+(const OracleElement& a, const OracleElement& b);
    friend OracleElement operator*(const Rational& r, const OracleElement& a);
    friend OracleElement lie_bracket(const OracleElement& a, const OracleElement& b);
    friend bool operator==(const OracleElement& a, const OracleElement& b);

private:
    std::shared_ptr<const GradedLieOracle> alg_;
    int cap_;
    std::vector<Vec> parts_;  // parts_[d] has dim(d) entries; parts_[0] empty
};

}  // namespace kvassoc
