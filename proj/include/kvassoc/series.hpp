#pragma once

#include "kvassoc/rational.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kvassoc {

// A word over letters 0..15 of length at most 14, packed into one integer.
// Comparing the packed keys orders words by length first, then lexicographically.
class Word {
public:
    static constexpr int kMaxLength = 14;
    static constexpr int kMaxLetters = 16;

    Word() = default;
    static Word letter(int i);
    static Word from(const std::vector<int>& letters);

    int size() const { return static_cast<int>(key_ >> 56); }
    bool empty() const { return key_ == 0; }
    int operator[](int pos) const {
        return static_cast<int>((key_ >> (4 * (size() - 1 - pos))) & 0xF);
    }
    int front() const { return (*this)[0]; }
    int back() const { return static_cast<int>(key_ & 0xF); }

    Word concat(Word o) const;
    Word sub(int pos, int len) const;
    Word drop_front() const { return sub(1, size() - 1); }
    Word drop_back() const { return sub(0, size() - 1); }
    Word rotate(int k) const { return sub(k, size() - k).concat(sub(0, k)); }
    Word least_rotation() const;
    // word with every letter replaced via map[letter]
    Word relabel(const std::vector<int>& map) const;
    int count(int letter) const;

    std::vector<int> letters() const;
    std::uint64_t key() const { return key_; }
    std::string str() const;  // 1-based letters, e.g. "1 2 2"

    friend bool operator==(Word a, Word b) { return a.key_ == b.key_; }
    friend auto operator<=>(Word a, Word b) { return a.key_ <=> b.key_; }

private:
    explicit Word(std::uint64_t k) : key_(k) {}
    std::uint64_t key_ = 0;
};

struct WordHash {
    std::size_t operator()(Word w) const noexcept {
        std::uint64_t k = w.key() * 0x9E3779B97F4A7C15ULL;
        return static_cast<std::size_t>(k ^ (k >> 29));
    }
};

class CommSeries;

// Degree-truncated noncommutative power series in `letters` letters with
// rational coefficients. Stored sparsely; zero coefficients are never kept.
class NCSeries {
public:
    using Terms = std::map<Word, Rational>;

    NCSeries() = default;
    NCSeries(int letters, int cap);

    static NCSeries one(int letters, int cap);
    static NCSeries constant(int letters, int cap, const Rational& c);
    static NCSeries letter(int letters, int cap, int i);
    static NCSeries monomial(int letters, int cap, Word w, const Rational& c = Rational(1));
    // drops words longer than cap and zero coefficients
    static NCSeries from_terms(int letters, int cap, Terms terms);

    int letters() const { return n_; }
    int cap() const { return cap_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    Rational coeff(Word w) const;
    Rational constant_term() const { return coeff(Word()); }
    // lowest degree carrying a nonzero coefficient; cap+1 for the zero series
    int valuation() const;
    int max_degree() const;

    void add_term(Word w, const Rational& c);

    NCSeries& operator+=(const NCSeries& o);
    NCSeries& operator-=(const NCSeries& o);
    NCSeries& operator*=(const Rational& r);
    friend NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
    friend NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }
    friend NCSeries operator*(const Rational& r, NCSeries a) { return a *= r; }
    NCSeries operator-() const;
    friend NCSeries operator*(const NCSeries& a, const NCSeries& b);

    friend bool operator==(const NCSeries& a, const NCSeries& b);

    NCSeries truncated(int cap) const;
    // same terms at a different cap; raising the cap asserts that the omitted
    // higher-degree terms are genuinely zero
    NCSeries with_cap(int cap) const { return from_terms(n_, cap, terms_); }
    NCSeries degree_part(int d) const;
    NCSeries degree_range(int lo, int hi) const;
    // same terms viewed in a larger alphabet (letters keep their indices)
    NCSeries widened(int letters) const;

    // algebra morphism sending letter i to images[i]
    NCSeries substitute(const std::vector<NCSeries>& images) const;
    // relabel letters (map[i] is the new index of letter i)
    NCSeries relabel(const std::vector<int>& map, int new_letters) const;

    CommSeries abelianize() const;
    bool is_grouplike() const;

    std::string str() const;

private:
    int n_ = 1;
    int cap_ = 0;
    Terms terms_;
};

NCSeries commutator(const NCSeries& a, const NCSeries& b);
// derivation of the free algebra sending letter i to images[i] (Leibniz rule)
NCSeries derivation_apply(const NCSeries& z, const std::vector<NCSeries>& images);
NCSeries nc_exp(const NCSeries& z);
NCSeries nc_log(const NCSeries& g);
// log(exp(a) exp(b)), computed in the envelope
NCSeries nc_cbh(const NCSeries& a, const NCSeries& b);
// degree of the first discrepancy between a and b, or -1 if equal
int first_difference_degree(const NCSeries& a, const NCSeries& b);

// Multivariate commutative truncated series, used for abelianizations and the
// two-variable Gamma identities. Exponent vectors are packed 8 bits per variable.
class CommSeries {
public:
    using Mono = std::uint64_t;
    using Terms = std::map<std::pair<int, Mono>, Rational>;  // keyed by (total degree, exponents)

    CommSeries() = default;
    CommSeries(int vars, int cap);
    static CommSeries one(int vars, int cap);
    static CommSeries var(int vars, int cap, int i);

    int vars() const { return n_; }
    int cap() const { return cap_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    static Mono pack(const std::vector<int>& exps);
    static std::vector<int> unpack(Mono m, int vars);

    Rational coeff(const std::vector<int>& exps) const;
    void add_term(const std::vector<int>& exps, const Rational& c);
    void add_term_packed(int degree, Mono m, const Rational& c);

    CommSeries& operator+=(const CommSeries& o);
    CommSeries& operator-=(const CommSeries& o);
    CommSeries& operator*=(const Rational& r);
    friend CommSeries operator+(CommSeries a, const CommSeries& b) { return a += b; }
    friend CommSeries operator-(CommSeries a, const CommSeries& b) { return a -= b; }
    friend CommSeries operator*(const Rational& r, CommSeries a) { return a *= r; }
    friend CommSeries operator*(const CommSeries& a, const CommSeries& b);
    CommSeries operator-() const;
    friend bool operator==(const CommSeries& a, const CommSeries& b) {
        return a.terms_ == b.terms_;
    }

    Rational constant_term() const;
    int valuation() const;
    CommSeries truncated(int cap) const;

    std::string str() const;

private:
    int n_ = 1;
    int cap_ = 0;
    Terms terms_;
};

CommSeries comm_exp(const CommSeries& z);
CommSeries comm_log(const CommSeries& g);

// One-variable truncated power series sum_{k<=cap} c_k u^k.
class PowerSeries {
public:
    PowerSeries() = default;
    explicit PowerSeries(int cap) : c_(static_cast<std::size_t>(cap) + 1) {}
    PowerSeries(int cap, std::vector<Rational> coeffs);

    int cap() const { return static_cast<int>(c_.size()) - 1; }
    const Rational& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
    Rational& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const;
    int valuation() const;

    PowerSeries& operator+=(const PowerSeries& o);
    PowerSeries& operator-=(const PowerSeries& o);
    friend PowerSeries operator+(PowerSeries a, const PowerSeries& b) { return a += b; }
    friend PowerSeries operator-(PowerSeries a, const PowerSeries& b) { return a -= b; }
    friend PowerSeries operator*(const Rational& r, PowerSeries a);
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    PowerSeries operator-() const;
    friend bool operator==(const PowerSeries& a, const PowerSeries& b);

    PowerSeries truncated(int cap) const;
    PowerSeries even_part() const;
    PowerSeries odd_part() const;
    // t * f'(t)
    PowerSeries euler() const;
    // f(lambda * u)
    PowerSeries rescaled(const Rational& lambda) const;
    PowerSeries reciprocal() const;

    // f(z) for a series z with zero constant term (or f polynomial)
    NCSeries evaluate(const NCSeries& z) const;
    // f(sum_i coeffs[i] * v_i) in the commutative series ring
    CommSeries evaluate_linear(const std::vector<Rational>& coeffs, int vars) const;

    std::string str() const;

private:
    std::vector<Rational> c_;
};

PowerSeries ps_exp(const PowerSeries& z);
PowerSeries ps_log(const PowerSeries& g);

// u / (e^u - 1) through the given cap
PowerSeries bernoulli_generating(int cap);

}  // namespace kvassoc
