#pragma once

#include "kvassoc/kv.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kvassoc {

// Planar rooted binary tree with leaves numbered 1..n from the left. Text form
// uses "•" for leaves ("*" and "." are accepted on input), the outermost pair
// of parentheses omitted: "•(••)", "(••)(••)".
class ParenWord {
public:
    static ParenWord leaf();
    static ParenWord join(const ParenWord& l, const ParenWord& r);
    static ParenWord parse(const std::string& text);
    // •(•(•(...))) with n leaves
    static ParenWord right_comb(int n);
    // every tree with n leaves, in a fixed order
    static std::vector<ParenWord> all(int n);

    int leaves() const { return leaves_; }
    bool is_leaf() const { return kids_.empty(); }
    const ParenWord& left() const { return kids_.at(0); }
    const ParenWord& right() const { return kids_.at(1); }

    // O^{(i)}: leaf i replaced by (••)
    ParenWord doubled(int i) const;
    // O = • ⊗ O' exactly when the left subtree of the root is a single leaf
    bool is_based() const { return !is_leaf() && left().is_leaf(); }

    std::string str() const;
    friend bool operator==(const ParenWord& a, const ParenWord& b) { return a.str() == b.str(); }

private:
    std::vector<ParenWord> kids_;
    int leaves_ = 1;
    std::string body() const;
};

// (A B) C -> A (B C) when forward, the inverse move otherwise; blocks are leaf sets
struct Rotation {
    std::vector<int> A, B, C;
    bool forward = true;
};

enum class PathStrategy {
    // rotate at the topmost-leftmost available node first
    outermost,
    // rotate at the deepest available node first
    innermost,
};

std::vector<Rotation> move_path(const ParenWord& from, const ParenWord& to,
                                PathStrategy strategy = PathStrategy::outermost);

// Φ_{O,O'} in exp(t_n), n = leaves, as a log: ordered product of the factors
// Φ^{A,B,C} (inverted for backward moves) along the path
TnElement phi_OO(const Associator& phi, const ParenWord& from, const ParenWord& to,
                 PathStrategy strategy = PathStrategy::outermost);

// μ_n = μ^{1,2..n} ∘ μ^{2,3..n} ∘ ... ∘ μ^{n-1,n} on n letters (additive cofaces)
TangAut mu_right_comb(const Associator& phi, int letters);
// μ_O = Ad(Φ_{comb, O}) ∘ μ_comb on leaves(O) - 1 letters; leaf 1 is the base strand
TangAut mu_O(const Associator& phi, const ParenWord& O);

// μ_{O^{(i+1)}} = μ_O^{1,..,i i+1,..,n} ∘ μ_Φ^{i,i+1}, for letter i of O (leaf i + 1)
CheckResult identity4_check(const Associator& phi, const ParenWord& O, int i);

// internal nodes of O' as (L(ν), R(ν)) in product order: depth ascending, left to right
struct TelescopicFactor {
    std::vector<int> L, R;
    int depth;
};
std::vector<TelescopicFactor> telescopic_factors(const ParenWord& Oprime);

struct TelescopicResult {
    TangAut value;
    std::vector<TelescopicFactor> factors;
    CheckResult same_depth_commute;
};
// μ_{•⊗O'} as the product of μ_Φ^{L(ν),R(ν)}
TelescopicResult telescopic_mu(const Associator& phi, const ParenWord& Oprime);
// α_f^{•⊗O'} as the product of α_f^{L̃(ν),R̃(ν)} (cbh cofaces)
TelescopicResult alpha_f_O(const GTElement& f, const ParenWord& Oprime);

struct JacobianCheck {
    TraceElement J;
    CheckResult formula;
};
// J(μ_O) against <Σ log Γ_Φ(x_i) - log Γ_Φ(Σ x_i)>
JacobianCheck jacobian_mu_O(const Associator& phi, const ParenWord& O);
// J(α_f^{•⊗O'}) against <Σ log Γ_f(x_i) - log Γ_f(cbh(x_1, ..., x_n))>
JacobianCheck jacobian_alpha(const GTElement& f, const ParenWord& Oprime);

// Ad f(x_12, x_23) ∘ α_f^{1̃2,3} ∘ α_f^{1,2} = α_f^{1,2̃3} ∘ α_f^{2,3}
CheckResult identity22_check(const GTElement& f);
// μ_{f∗Φ}^{•⊗O'} = μ_Φ^{•⊗O'} ∘ α_f^{•⊗O'}
CheckResult torsor_mu_O_check(const GTElement& f, const Associator& phi, const ParenWord& Oprime);

// Ad(cabling(w, mult)) ∘ ι = ι ∘ Ad(w) through degree cap + 1, where ι sends X_k to
// the ordered product over its cable; mult[0] (the base strand) must be 1. Exponent
// tuples themselves are not compared: normalization drops the x_k term of a_k that a
// coface would spread over the cable.
CheckResult cabling_coface_check(const PBWord& w, const std::vector<int>& mult, int cap);

struct CentralizerRow {
    int degree;
    int computed;    // dim {x in t_n[d] : [x, t_12] = 0}
    int predicted;   // dim of t_12 (d = 1) plus the 12-merged coface image of t_{n-1}[d]
    bool contained;  // predicted space lies inside the computed one
};
struct CentralizerReport {
    std::vector<CentralizerRow> rows;
    CheckResult dimensions;
    CheckResult commuting;        // x_12^λ h^{1̃2,3,..} commutes with x_12 under malcev_taut
    CheckResult negative_control; // x_13 does not
    bool pass() const { return dimensions.pass && commuting.pass && !negative_control.pass; }
};
CentralizerReport check_centralizer_pb(int n, int cap);

}  // namespace kvassoc
