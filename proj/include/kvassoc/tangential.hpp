#pragma once

#include "kvassoc/free_lie.hpp"
#include "kvassoc/strand_map.hpp"

#include <stdexcept>
#include <vector>

namespace kvassoc {

struct NotTangential : std::domain_error {
    int degree;
    NotTangential(int d, const std::string& what) : std::domain_error(what), degree(d) {}
};

enum class CofaceVariant { additive, cbh };

// Tangential derivation x_k -> [u_k, x_k] of the free Lie algebra on n letters.
// Stored normalized: u_k carries no multiple of x_k.
class TangDer {
public:
    TangDer() = default;
    TangDer(int letters, int cap);
    // normalizes the given parts
    explicit TangDer(std::vector<LieElement> parts);

    int letters() const { return static_cast<int>(parts_.size()); }
    int cap() const { return cap_; }
    const std::vector<LieElement>& parts() const { return parts_; }
    const LieElement& part(int k) const { return parts_.at(static_cast<std::size_t>(k)); }
    bool is_zero() const;
    int valuation() const;
    TangDer zero_like() const { return TangDer(letters(), cap()); }
    TangDer truncated(int cap) const;
    TangDer degree_part(int d) const;

    // images [u_k, x_k], exact through degree cap + 1
    std::vector<NCSeries> generator_images() const;
    NCSeries act(const NCSeries& z) const;
    LieElement act(const LieElement& z) const;

    friend TangDer operator+(const TangDer& a, const TangDer& b);
    friend TangDer operator-(const TangDer& a, const TangDer& b);
    friend TangDer operator*(const Rational& r, const TangDer& a);
    TangDer operator-() const { return Rational(-1) * *this; }
    friend bool operator==(const TangDer& a, const TangDer& b);

    std::string str() const;

private:
    int cap_ = 0;
    std::vector<LieElement> parts_;
};

TangDer tder_normalize(std::vector<LieElement> parts);
TangDer lie_bracket(const TangDer& u, const TangDer& v);

// Tangential automorphism x_k -> e^{a_k} x_k e^{-a_k}. Exponents are kept in the
// normal form where a_k has no linear x_k term, which makes them unique.
class TangAut {
public:
    TangAut() = default;
    static TangAut identity(int letters, int cap);
    // normalizes the exponents
    static TangAut from_exponents(std::vector<LieElement> exponents);
    // recovers the exponents from images W_k ~ x_k (exact through degree cap+1)
    static TangAut from_images(const std::vector<NCSeries>& images, int cap);

    int letters() const { return static_cast<int>(a_.size()); }
    int cap() const { return cap_; }
    const std::vector<LieElement>& exponents() const { return a_; }
    const LieElement& exponent(int k) const { return a_.at(static_cast<std::size_t>(k)); }

    // images e^{a_k} x_k e^{-a_k}, exact through degree cap + 1
    std::vector<NCSeries> generator_images() const;
    // algebra automorphism applied to z; result cap is min(z cap, cap + 1)
    NCSeries apply(const NCSeries& z) const;
    LieElement apply(const LieElement& z) const;

    TangAut truncated(int cap) const;
    bool is_identity() const;

    friend bool operator==(const TangAut& a, const TangAut& b);
    std::string str() const;

private:
    int cap_ = 0;
    std::vector<LieElement> a_;
};

// g ∘ h
TangAut taut_compose(const TangAut& g, const TangAut& h);
TangAut taut_inverse(const TangAut& g);
TangAut taut_exp(const TangDer& u);
TangDer taut_log(const TangAut& g);
// lowest exponent degree where the automorphisms differ, or -1
int first_difference_degree(const TangAut& a, const TangAut& b);

// solve [u, x_k] = w for a Lie element u without linear x_k term
LieElement solve_ad(const NCSeries& w, int k);
// strip the linear x_k term of a_k by right multiplication with e^{-λ x_k}
LieElement normalize_exponent(const LieElement& a, int k);

TangAut inner(const LieElement& w_log, int letters);

TangDer tder_coface(const TangDer& u, const StrandMap& phi);
TangDer tder_coface(const TangDer& u, const StrandMap& phi, CofaceVariant variant);
TangAut taut_coface(const TangAut& g, const StrandMap& phi, CofaceVariant variant);
// image of the generators of f_n under the coface: x_j -> sum or cbh of the fiber of j
std::vector<LieElement> coface_letters(const StrandMap& phi, int cap, CofaceVariant variant);

// exp(eval of word_log at (log g, log h))
TangAut group_word_eval(const LieElement& word_log, const TangAut& g, const TangAut& h);

}  // namespace kvassoc
