#pragma once

#include "kvassoc/free_lie.hpp"
#include "kvassoc/strand_map.hpp"
#include "kvassoc/tangential.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

namespace kvassoc {

// Element of the Drinfeld-Kohno Lie algebra t_n, realized as the iterated
// semidirect product f_{n-1} ⋊ (f_{n-2} ⋊ (... ⋊ f_1)). Level k (2 <= k <= n)
// is a Lie element of f_{k-1} whose letter i stands for t_{i+1,k}.
class TnElement {
public:
    TnElement() = default;
    TnElement(int strands, int cap);

    // t_ij = t_ji, 1-based strands
    static TnElement generator(int n, int cap, int i, int j);
    // sum over i in A, j in B of t_ij
    static TnElement pair_sum(int n, int cap, const std::vector<int>& A, const std::vector<int>& B);
    static TnElement casimir(int n, int cap);

    int strands() const { return n_; }
    int cap() const { return cap_; }
    const LieElement& level(int k) const { return levels_.at(static_cast<std::size_t>(k - 2)); }
    LieElement& level(int k) { return levels_.at(static_cast<std::size_t>(k - 2)); }

    bool is_zero() const;
    int valuation() const;
    TnElement zero_like() const { return TnElement(n_, cap_); }
    TnElement truncated(int cap) const;
    TnElement degree_part(int d) const;

    // coordinates in the degree-d basis: top level first (Lyndon order), then lower levels
    Vec coordinates(int d) const;
    static TnElement from_coordinates(int n, int cap, int d, const Vec& v);
    static int dimension(int n, int d);

    friend TnElement operator+(const TnElement& a, const TnElement& b);
    friend TnElement operator-(const TnElement& a, const TnElement& b);
    friend TnElement operator*(const Rational& r, const TnElement& a);
    TnElement operator-() const { return Rational(-1) * *this; }
    friend bool operator==(const TnElement& a, const TnElement& b);

    std::string str() const;

private:
    int n_ = 2;
    int cap_ = 0;
    std::vector<LieElement> levels_;
};

TnElement lie_bracket(const TnElement& a, const TnElement& b);

// The Lie morphism out of t_n determined by images of the generators t_ij (i < j).
template <GradedLie T>
T tn_morphism(const TnElement& a, const std::function<T(int i, int j)>& image) {
    std::optional<T> out;
    for (int k = 2; k <= a.strands(); ++k) {
        std::vector<T> targets;
        for (int i = 1; i < k; ++i) targets.push_back(image(i, k));
        T part = eval_lie(a.level(k), targets);
        out = out ? *out + part : part;
    }
    return *out;
}

// t_ij -> sum over phi^{-1}(i) x phi^{-1}(j); phi: [m] -> [n] with n = strands of a
TnElement tn_coface(const TnElement& a, const StrandMap& phi);
// t_ij -> t_{sigma(i) sigma(j)}; sigma[i-1] = sigma(i)
TnElement sn_act(const std::vector<int>& sigma, const TnElement& a);

// Group exp(t_n) on logarithms.
TnElement tn_mul(const TnElement& g, const TnElement& h);
TnElement tn_inv(const TnElement& g);

struct KernelGuardFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ad: t_{n+1} -> tder_n, with strand `base` of t_{n+1} playing the role of 0 and
// the remaining strands, in increasing order, becoming x_1..x_n.
TangDer ad_tn(const TnElement& a, int base = 1);
// verifies ker(ad) on t_{n+1}[d] is spanned by the Casimir at d = 1 and is zero
// for 2 <= d <= cap; throws KernelGuardFailure otherwise (memoized)
void ad_kernel_guard(int n, int cap);
// coordinates of a tangential derivation in the Lyndon bases of its parts, degree d
Vec tder_coordinates(const TangDer& u, int d);

// basis of {x in t_n[d] : [x, t_ij] = 0}
std::vector<TnElement> centralizer_t(int n, int i, int j, int d);
// span of t_ij (d = 1) plus the coface image of t_{n-1}[d] merging i and j
std::vector<TnElement> centralizer_prediction(int n, int i, int j, int d);
// rank of the span of the given degree-d elements
int span_rank(const std::vector<TnElement>& v, int d);

}  // namespace kvassoc
