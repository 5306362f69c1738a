#pragma once

#include "kvassoc/braid_groups.hpp"
#include "kvassoc/drinfeld_kohno.hpp"
#include "kvassoc/traces.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace kvassoc {

// Φ(a, b) = exp(log), a = t_12, b = t_23, stored on two letters.
struct Associator {
    LieElement log;
    bool even = false;
    int cap() const { return log.cap(); }
};

// f(X, Y) in Malcev coordinates: f = exp(log f(x, y)) with X = e^x, Y = e^y.
struct GTElement {
    LieElement log;
    int cap() const { return log.cap(); }
};

// g(a, b) = exp(log g(a, b)).
struct GRTElement {
    LieElement log;
    int cap() const { return log.cap(); }
};

struct CheckResult {
    bool pass = true;
    int first_failure_degree = -1;
    static CheckResult from_degree(int d) { return d < 0 ? CheckResult{} : CheckResult{false, d}; }
    // lowest nonzero degree of a difference, if any
    template <class T>
    static CheckResult from_difference(const T& diff) {
        return diff.is_zero() ? CheckResult{} : CheckResult{false, diff.valuation()};
    }
};

// Φ^{A,B,C} = Φ(t_{AB}, t_{BC}) in t_n, blocks 1-based
TnElement phi_coface(const LieElement& log_phi, int n, const std::vector<int>& A, const std::vector<int>& B,
                     const std::vector<int>& C);
// log of the ordered product of group elements in exp(t_n)
TnElement tn_product(const std::vector<TnElement>& logs);

struct M1Report {
    CheckResult duality, hexagon, hexagon_inverse, pentagon, pentagon_taut;
    bool pass() const {
        return duality.pass && hexagon.pass && hexagon_inverse.pass && pentagon.pass && pentagon_taut.pass;
    }
};

M1Report check_m1(const Associator& phi);

struct SolverFailure : std::runtime_error {
    int degree;
    SolverFailure(int d, const std::string& what) : std::runtime_error(what), degree(d) {}
};

// Degree-by-degree solve of duality, both hexagons and the pentagon. Free
// coordinates of each degree's solution (reduced row echelon, Lyndon order) take
// free_value. With even = true the odd degrees are forced to zero.
Associator solve_associator(int cap, bool even, const Rational& free_value = Rational(0));

// (b ∂_b Φ)^{ab} in k[[ā, b̄]], ∂_b stripping a leading b
CommSeries gamma_b_part(const Associator& phi);

struct GammaData {
    PowerSeries log_gamma;        // log Γ_Φ(u) = Σ (-1)^n ζ(n) u^n / n
    std::vector<Rational> zeta;   // zeta[n], n = 0..cap (entries 0, 1 unused)
    // (1 - b∂_bΦ)^{ab} Γ_Φ(ā + b̄) = Γ_Φ(ā) Γ_Φ(b̄), in both variables
    CheckResult identity;
    // (1 + b∂_bΦ)^{ab} Γ_Φ(ā) Γ_Φ(b̄) = Γ_Φ(ā + b̄); only exact to first order in b̄
    CheckResult first_order_identity;
};
GammaData gamma_of_phi(const Associator& phi);

// Σ_{n≥1} ζ(2n) u^{2n} = -(1/2)(u/(e^u - 1) - 1 + u/2) through cap
CheckResult bernoulli_check(const std::vector<Rational>& zeta, int cap);

struct GTReport {
    CheckResult inversion, hexagon, pentagon, abelian;
    bool pass() const { return inversion.pass && hexagon.pass && pentagon.pass && abelian.pass; }
};
GTReport check_gt1(const GTElement& f);

struct GRTReport {
    CheckResult duality, linear, hexagon, pentagon;
    bool pass() const { return duality.pass && linear.pass && hexagon.pass && pentagon.pass; }
};
GRTReport check_grt1(const GRTElement& g);

// (f ∗ Φ)(a, b) = f(Φ e^a Φ^{-1}, e^b) Φ
Associator act_gt(const GTElement& f, const Associator& phi);
// (Φ ∗ g)(a, b) = Φ(g a g^{-1}, b) g
Associator act_grt(const Associator& phi, const GRTElement& g);
// (f1 ∗ f2)(X, Y) = f1(f2 X f2^{-1}, Y) f2
GTElement gt_product(const GTElement& f1, const GTElement& f2);
GRTElement grt_product(const GRTElement& g1, const GRTElement& g2);

// the unique f with f ∗ Φ = Φ' / g with Φ ∗ g = Φ'
GTElement gt_between(const Associator& phi, const Associator& phi2);
GRTElement grt_between(const Associator& phi, const Associator& phi2);

// class of a Lie element of valuation >= 2 in f'_2/f''_2 ≅ ā b̄ k[ā, b̄], with
// (ad a)^k (ad b)^l [a, b] ↦ ā^{k+1} b̄^{l+1}
CommSeries metabelian_class(const LieElement& psi);

enum class GammaFReading {
    // 1 - [log f] = Γ_f(-ā-b̄) / (Γ_f(-ā) Γ_f(-b̄))
    quotient_over_product,
    // [log f] = 1 - Γ_f(-ā) Γ_f(-b̄) / Γ_f(-ā-b̄)
    product_over_quotient,
};

struct GammaFData {
    PowerSeries log_gamma;
    // 1 + [log f] = Γ_f(-ā) Γ_f(-b̄) / Γ_f(-ā-b̄), in both variables
    CheckResult identity;
    // the chosen reading taken literally; exact only to first order in b̄
    CheckResult first_order_identity;
};
GammaFData gamma_of_f(const GTElement& f, GammaFReading reading = GammaFReading::quotient_over_product);

}  // namespace kvassoc
