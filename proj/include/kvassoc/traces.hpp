#pragma once

#include "kvassoc/tangential.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kvassoc {

// Element of the space of cyclic words A_n/[A_n, A_n], truncated at cap.
// Every stored word is its own least rotation.
class TraceElement {
public:
    using Terms = std::map<Word, Rational>;

    TraceElement() = default;
    TraceElement(int letters, int cap) : n_(letters), cap_(cap) {}

    int letters() const { return n_; }
    int cap() const { return cap_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int valuation() const { return terms_.empty() ? cap_ + 1 : terms_.begin()->first.size(); }
    Rational coeff(Word w) const;

    // adds c times the class of w (w need not be canonical)
    void add_term(Word w, const Rational& c);

    TraceElement truncated(int cap) const;
    TraceElement degree_part(int d) const;
    // canonical representative: sum of least rotations
    NCSeries representative() const;

    friend TraceElement operator+(TraceElement a, const TraceElement& b);
    friend TraceElement operator-(TraceElement a, const TraceElement& b);
    friend TraceElement operator*(const Rational& r, TraceElement a);
    friend bool operator==(const TraceElement& a, const TraceElement& b);

    std::string str() const;

private:
    int n_ = 1;
    int cap_ = 0;
    Terms terms_;
};

TraceElement trace_project(const NCSeries& z);
// ∂_k: words beginning with x_k, with that letter removed (k is 0-based)
NCSeries partial_k(const NCSeries& z, int k);
TraceElement divergence_j(const TangDer& u);
TraceElement trace_act(const TangDer& u, const TraceElement& t);
TraceElement trace_act(const TangAut& g, const TraceElement& t);
TraceElement jacobian_J(const TangAut& g);
// f(images) projected; images live in the target alphabet
TraceElement trace_substitute(const TraceElement& t, const std::vector<NCSeries>& images);

// <r(z)> for a one-variable series r
TraceElement trace_of_series(const PowerSeries& r, const NCSeries& z);

enum class DeltaKind { plain, cbh };

// 𝔗_k -> 𝔗_{k+1}: sum_i (-1)^{i+1} d_i, d_0 shifting into x_2.., d_i merging
// x_i, x_{i+1} (by sum, or by cbh for the twisted version), d_{k+1} the inclusion
TraceElement delta(const TraceElement& f, DeltaKind kind = DeltaKind::plain);

struct CoboundaryResult {
    bool ok = false;
    PowerSeries r;             // r in u^2 k[[u]] when ok
    int failure_degree = -1;   // first obstructed degree
    std::string reason;
};

// solve delta(<r(x_1)>) = c for c in 𝔗_2
CoboundaryResult solve_coboundary(const TraceElement& c, DeltaKind kind = DeltaKind::plain);

// cyclic words of length d over n letters (least rotations, sorted)
std::vector<Word> cyclic_basis(int n, int d);
Vec trace_coordinates(const TraceElement& t, int d);

struct ExactnessReport {
    int degree;
    int ker_dim_T2;   // dim ker(delta: 𝔗_2[d] -> 𝔗_3[d])
    int im_dim_T1;    // dim im(delta: 𝔗_1[d] -> 𝔗_2[d])
    int ker_dim_T1;   // dim ker(delta: 𝔗_1[d] -> 𝔗_2[d])
};
ExactnessReport delta_exactness(int d);

}  // namespace kvassoc
