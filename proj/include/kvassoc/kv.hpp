#pragma once

#include "kvassoc/associators.hpp"

#include <string>

namespace kvassoc {

struct KVSolution {
    TangAut mu;
    PowerSeries duflo;
};

struct ABPair {
    LieElement A, B;
};

// SolKV on n letters: μ(x_k) ~ e^{x_k} holds structurally for tangential
// automorphisms; the other two conditions are checked through μ's cap.
struct SolKVReport {
    CheckResult conjugacy;
    CheckResult product;    // μ(e^{x_1} ... e^{x_n}) = e^{x_1 + ... + x_n}
    CheckResult jacobian;   // J(μ) = <r(x_1 + ... + x_n) - Σ r(x_k)>
    PowerSeries r;          // Duflo series, meaningful when jacobian passes
    bool pass() const { return conjugacy.pass && product.pass && jacobian.pass; }
    // "" when passing, otherwise the first failing condition
    std::string failing_condition() const;
};

SolKVReport check_solkv(const TangAut& mu);
SolKVReport check_solkv_n(const TangAut& mu);

// μ_Φ with exponents log Φ(x, -x-y) and log(e^{-(x+y)/2} Φ(y, -x-y)); throws
// std::logic_error if the result is not a KV solution
KVSolution mu_of_phi(const Associator& phi);
TangAut mu_automorphism(const Associator& phi);

// Φ(t_12, t_23) ∘ μ^{12,3} ∘ μ^{1,2} = μ^{1,23} ∘ μ^{2,3} on three letters
CheckResult identity2_check(const Associator& phi);

// α_f: X ↦ f(X, Y^{-1}X^{-1}) X f(X, Y^{-1}X^{-1})^{-1}, Y likewise with f(Y, Y^{-1}X^{-1}),
// in Malcev coordinates X = e^x, Y = e^y
TangAut alpha_of_f(const GTElement& f);
// a_g: x ↦ g(x, -x-y) x g(x, -x-y)^{-1}, y ↦ g(y, -x-y) y g(y, -x-y)^{-1}
TangAut a_of_g(const GRTElement& g);

struct SymmetryReport {
    CheckResult product;    // α(XY) = XY, resp. a(x + y) = x + y
    CheckResult jacobian;   // J in the image of the cbh-twisted, resp. plain, δ
    PowerSeries sigma;      // Duflo series of the symmetry
    bool pass() const { return product.pass && jacobian.pass; }
};
SymmetryReport check_kv_group(const TangAut& alpha);
SymmetryReport check_krv_group(const TangAut& a);

struct CompatReport {
    CheckResult gt_side;    // μ_{f∗Φ} = μ_Φ ∘ α_f
    CheckResult grt_side;   // μ_{Φ∗g} = a_g ∘ μ_Φ
    CheckResult duflo;      // r_{μ∘α_f} = r_μ + σ_{α_f}
    bool pass() const { return gt_side.pass && grt_side.pass && duflo.pass; }
};
CompatReport compat_check(const GTElement& f, const Associator& phi, const GRTElement& g);

// κ(g) = ℓ - g ℓ g^{-1} as a tangential derivation; throws NotTangential
TangDer kappa(const TangAut& g);
// (A, B) with -κ(μ^{-1}) = ⟦A, B⟧
ABPair extract_AB(const TangAut& mu);

// x + y - log(e^y e^x) = (1 - e^{-ad x}) A + (e^{ad y} - 1) B
CheckResult check_kv1(const ABPair& ab);
// j(u) = <φ(x) + φ(y) - φ(log(e^x e^y))> with φ(t) = t r'(t)
CheckResult check_kv3(const TangDer& u, const PowerSeries& r);

// (A + s(log(e^x e^y) - x), B + s(log(e^x e^y) - y))
ABPair s_family(const ABPair& ab, const Rational& s);
// (A(x, y), B(x, y)) = (B(-y, -x), A(-y, -x))
CheckResult symmetry_check(const ABPair& ab);

// c with exp(ad w)(x_1 + ... + x_n) = e^c (x_1 + ... + x_n) e^{-c}, for w in
// t_{n+1} (strand 1 as base); throws NotTangential when no conjugator exists
LieElement sum_conjugator(const TnElement& w);

}  // namespace kvassoc
