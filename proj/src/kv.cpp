#include "kvassoc/kv.hpp"

#include <stdexcept>

namespace kvassoc {

namespace {

LieElement gen(int n, int cap, int i) { return LieElement::generator(n, cap, i); }

// lowest failing degree of a - b for tangential automorphisms
CheckResult taut_equal(const TangAut& a, const TangAut& b) {
    return CheckResult::from_degree(first_difference_degree(a, b));
}

NCSeries product_of_exps(int n, int cap) {
    NCSeries out = NCSeries::one(n, cap);
    for (int k = 0; k < n; ++k) out = out * nc_exp(NCSeries::letter(n, cap, k));
    return out;
}

NCSeries letter_sum(int n, int cap) {
    NCSeries s(n, cap);
    for (int k = 0; k < n; ++k) s += NCSeries::letter(n, cap, k);
    return s;
}

// ℓ: multiply the degree-d part by d
NCSeries grading(const NCSeries& z) {
    NCSeries out(z.letters(), z.cap());
    for (const auto& [w, c] : z.terms()) out.add_term(w, Rational(w.size()) * c);
    return out;
}

// Σ_{k>=1} coef(k) (ad v)^k z
template <class Coef>
NCSeries ad_series(const NCSeries& v, const NCSeries& z, Coef coef) {
    NCSeries out(z.letters(), z.cap()), term = z;
    for (int k = 1; k <= z.cap(); ++k) {
        term = commutator(v, term);
        if (term.is_zero()) break;
        out += coef(k) * term;
    }
    return out;
}

NCSeries conjugate_series(const LieElement& c, const NCSeries& z) {
    int cap = z.cap();
    NCSeries cc = c.assoc().with_cap(cap);
    return nc_exp(cc) * z * nc_exp(-cc);
}

// r from the coefficient of <x_1^{m-1} x_2> in <r(x_1 + ... + x_n)>
PowerSeries duflo_by_extraction(const TraceElement& J) {
    PowerSeries r(J.cap());
    for (int m = 2; m <= J.cap(); ++m) {
        std::vector<int> w(static_cast<std::size_t>(m - 1), 0);
        w.push_back(1);
        r[m] = J.coeff(Word::from(w)) / Rational(m);
    }
    return r;
}

void require_same_cap(int a, int b, const char* what) {
    if (a != b) throw std::invalid_argument(std::string(what) + ": mixed caps " + std::to_string(a) + " and " +
                                            std::to_string(b));
}

}  // namespace

std::string SolKVReport::failing_condition() const {
    if (!conjugacy.pass) return "conjugacy";
    if (!product.pass) return "product";
    if (!jacobian.pass) return "jacobian";
    return "";
}

SolKVReport check_solkv_n(const TangAut& mu) {
    int n = mu.letters(), cap = mu.cap();
    SolKVReport rep;
    rep.product = CheckResult::from_difference(mu.apply(product_of_exps(n, cap)) - nc_exp(letter_sum(n, cap)));

    TraceElement J = jacobian_J(mu);
    if (n == 2) {
        CoboundaryResult res = solve_coboundary(J);
        rep.r = res.r;
        if (!res.ok) rep.jacobian = CheckResult{false, res.failure_degree};
    } else {
        rep.r = duflo_by_extraction(J);
        TraceElement rhs = trace_of_series(rep.r, letter_sum(n, J.cap()));
        for (int k = 0; k < n; ++k) rhs = rhs - trace_of_series(rep.r, NCSeries::letter(n, J.cap(), k));
        rep.jacobian = CheckResult::from_difference(J - rhs);
    }
    return rep;
}

SolKVReport check_solkv(const TangAut& mu) {
    if (mu.letters() != 2) throw std::invalid_argument("check_solkv: expects an automorphism of f_2");
    return check_solkv_n(mu);
}

TangAut mu_automorphism(const Associator& phi) {
    int cap = phi.cap();
    LieElement x = gen(2, cap, 0), y = gen(2, cap, 1), s = -(x + y);
    return TangAut::from_exponents(
        {phi.log.substitute({x, s}), lie_cbh(Rational(-1, 2) * (x + y), phi.log.substitute({y, s}))});
}

KVSolution mu_of_phi(const Associator& phi) {
    TangAut mu = mu_automorphism(phi);
    SolKVReport rep = check_solkv(mu);
    if (!rep.pass())
        throw std::logic_error("mu_of_phi: SolKV " + rep.failing_condition() + " condition fails at degree " +
                               std::to_string(rep.product.pass ? rep.jacobian.first_failure_degree
                                                               : rep.product.first_failure_degree));
    return {mu, rep.r};
}

CheckResult identity2_check(const Associator& phi) {
    TangAut mu = mu_automorphism(phi);
    auto face = [&mu](const char* blocks) {
        return taut_coface(mu, StrandMap::parse(blocks, 3), CofaceVariant::additive);
    };
    // Φ(t_12, t_23) on f_3 is Φ(t_23, t_34) in t_4 with strand 1 as base
    TangAut conj = taut_exp(ad_tn(phi_coface(phi.log, 4, {2}, {3}, {4}), 1));
    TangAut lhs = taut_compose(conj, taut_compose(face("12,3"), face("1,2")));
    TangAut rhs = taut_compose(face("1,23"), face("2,3"));
    return taut_equal(lhs, rhs);
}

TangAut alpha_of_f(const GTElement& f) {
    int cap = f.cap();
    LieElement x = gen(2, cap, 0), y = gen(2, cap, 1);
    LieElement z = lie_cbh(-y, -x);  // log(Y^{-1} X^{-1})
    return TangAut::from_exponents({f.log.substitute({x, z}), f.log.substitute({y, z})});
}

TangAut a_of_g(const GRTElement& g) {
    int cap = g.cap();
    LieElement x = gen(2, cap, 0), y = gen(2, cap, 1), s = -(x + y);
    return TangAut::from_exponents({g.log.substitute({x, s}), g.log.substitute({y, s})});
}

SymmetryReport check_kv_group(const TangAut& alpha) {
    int cap = alpha.cap();
    SymmetryReport rep;
    NCSeries xy = product_of_exps(2, cap);
    rep.product = CheckResult::from_difference(alpha.apply(xy) - xy);
    CoboundaryResult res = solve_coboundary(jacobian_J(alpha), DeltaKind::cbh);
    rep.sigma = res.r;
    if (!res.ok) rep.jacobian = CheckResult{false, res.failure_degree};
    return rep;
}

SymmetryReport check_krv_group(const TangAut& a) {
    int cap = a.cap();
    SymmetryReport rep;
    NCSeries s = letter_sum(2, cap + 1);
    rep.product = CheckResult::from_difference(a.apply(s) - s);
    CoboundaryResult res = solve_coboundary(jacobian_J(a), DeltaKind::plain);
    rep.sigma = res.r;
    if (!res.ok) rep.jacobian = CheckResult{false, res.failure_degree};
    return rep;
}

CompatReport compat_check(const GTElement& f, const Associator& phi, const GRTElement& g) {
    require_same_cap(f.cap(), phi.cap(), "compat_check");
    require_same_cap(g.cap(), phi.cap(), "compat_check");
    CompatReport rep;
    TangAut mu = mu_automorphism(phi);
    TangAut alpha = alpha_of_f(f);
    TangAut mu_alpha = taut_compose(mu, alpha);
    rep.gt_side = taut_equal(mu_automorphism(act_gt(f, phi)), mu_alpha);
    rep.grt_side = taut_equal(mu_automorphism(act_grt(phi, g)), taut_compose(a_of_g(g), mu));

    SolKVReport s1 = check_solkv(mu), s2 = check_solkv(mu_alpha);
    SymmetryReport sa = check_kv_group(alpha);
    if (!s1.jacobian.pass || !s2.jacobian.pass || !sa.jacobian.pass) {
        int d = std::max({s1.jacobian.first_failure_degree, s2.jacobian.first_failure_degree,
                          sa.jacobian.first_failure_degree});
        rep.duflo = CheckResult{false, d};
    } else {
        PowerSeries diff = s2.r - s1.r - sa.sigma;
        rep.duflo = diff.is_zero() ? CheckResult{} : CheckResult{false, diff.valuation()};
    }
    return rep;
}

TangDer kappa(const TangAut& g) {
    int n = g.letters(), cap = g.cap();
    TangAut ginv = taut_inverse(g);
    std::vector<LieElement> parts;
    for (int k = 0; k < n; ++k) {
        NCSeries xk = NCSeries::letter(n, cap + 1, k);
        NCSeries w = xk - g.apply(grading(ginv.apply(xk)));
        parts.push_back(solve_ad(w, k).truncated(cap));
    }
    return TangDer(parts);
}

ABPair extract_AB(const TangAut& mu) {
    if (mu.letters() != 2) throw std::invalid_argument("extract_AB: expects an automorphism of f_2");
    TangDer u = -kappa(taut_inverse(mu));
    return {u.part(0), u.part(1)};
}

CheckResult check_kv1(const ABPair& ab) {
    require_same_cap(ab.A.cap(), ab.B.cap(), "check_kv1");
    // A, B through degree N determine both sides through N + 1
    int cap = ab.A.cap() + 1;
    NCSeries x = NCSeries::letter(2, cap, 0), y = NCSeries::letter(2, cap, 1);
    NCSeries lhs = x + y - nc_cbh(y, x);
    NCSeries A = ab.A.assoc().with_cap(cap), B = ab.B.assoc().with_cap(cap);
    NCSeries rhs = ad_series(x, A, [](int k) { return Rational(k % 2 ? 1 : -1) / factorial(k); }) +
                   ad_series(y, B, [](int k) { return factorial(k).inverse(); });
    return CheckResult::from_difference(lhs - rhs);
}

CheckResult check_kv3(const TangDer& u, const PowerSeries& r) {
    TraceElement j = divergence_j(u);
    int cap = j.cap();
    PowerSeries phi = r.truncated(std::min(r.cap(), cap)).euler();
    NCSeries x = NCSeries::letter(2, cap, 0), y = NCSeries::letter(2, cap, 1);
    TraceElement rhs = trace_of_series(phi, x) + trace_of_series(phi, y) - trace_of_series(phi, nc_cbh(x, y));
    return CheckResult::from_difference(j - rhs);
}

ABPair s_family(const ABPair& ab, const Rational& s) {
    require_same_cap(ab.A.cap(), ab.B.cap(), "s_family");
    int cap = ab.A.cap();
    LieElement x = gen(2, cap, 0), y = gen(2, cap, 1), z = lie_cbh(x, y);
    return {ab.A + s * (z - x), ab.B + s * (z - y)};
}

CheckResult symmetry_check(const ABPair& ab) {
    require_same_cap(ab.A.cap(), ab.B.cap(), "symmetry_check");
    int cap = ab.A.cap();
    LieElement x = gen(2, cap, 0), y = gen(2, cap, 1);
    std::vector<LieElement> swap{-y, -x};
    CheckResult a = CheckResult::from_difference(ab.A - ab.B.substitute(swap));
    CheckResult b = CheckResult::from_difference(ab.B - ab.A.substitute(swap));
    if (a.pass) return b;
    if (b.pass) return a;
    return CheckResult{false, std::min(a.first_failure_degree, b.first_failure_degree)};
}

LieElement sum_conjugator(const TnElement& w) {
    int n = w.strands() - 1, cap = w.cap();
    TangAut g = taut_exp(ad_tn(w, 1));
    NCSeries s = letter_sum(n, cap + 1);
    NCSeries target = g.apply(s);

    // in the letters y_1 = x_1 + ... + x_n, y_k = x_k (k >= 2) the sum is a generator
    std::vector<NCSeries> to_y, from_y;
    for (int k = 0; k < n; ++k) {
        NCSeries yk = NCSeries::letter(n, cap + 1, k);
        if (k == 0)
            for (int l = 1; l < n; ++l) yk -= NCSeries::letter(n, cap + 1, l);
        to_y.push_back(yk);
        from_y.push_back(k == 0 ? s : NCSeries::letter(n, cap + 1, k));
    }

    LieElement c(n, cap);
    for (int d = 1; d <= cap; ++d) {
        NCSeries rem = (target - conjugate_series(c, s)).degree_part(d + 1);
        if (rem.is_zero()) continue;
        LieElement cy = solve_ad(rem.substitute(to_y), 0);
        c += LieElement::from_primitive(cy.assoc().substitute(from_y)).degree_part(d).truncated(cap);
    }
    NCSeries diff = target - conjugate_series(c, s);
    if (!diff.is_zero()) throw NotTangential(diff.valuation() - 1, "sum_conjugator: image is not conjugate to the sum");
    return c;
}

}  // namespace kvassoc
