#include "kvassoc/associators.hpp"

#include <sstream>

namespace kvassoc {

namespace {

LieElement gen2(int cap, int i) { return LieElement::generator(2, cap, i); }

// Ad_{exp(l)}(z) computed in the envelope
LieElement conjugate(const LieElement& l, const LieElement& z) {
    NCSeries e = nc_exp(l.assoc());
    NCSeries ei = nc_exp(-l.assoc());
    return LieElement::from_primitive(e * z.assoc() * ei);
}

struct Defects {
    TnElement duality, hexagon, hexagon_inverse, pentagon;
};

TnElement hexagon_defect(const LieElement& log_phi, const Rational& s) {
    int cap = log_phi.cap();
    auto t = [cap](int i, int j) { return TnElement::generator(3, cap, i, j); };
    TnElement lhs = tn_product({s * t(2, 3), phi_coface(log_phi, 3, {1}, {2}, {3}), s * t(1, 2),
                                phi_coface(log_phi, 3, {3}, {1}, {2}), s * t(1, 3),
                                phi_coface(log_phi, 3, {2}, {3}, {1})});
    return lhs - s * (t(1, 2) + t(2, 3) + t(1, 3));
}

TnElement duality_defect(const LieElement& log_phi) {
    return tn_mul(phi_coface(log_phi, 3, {3}, {2}, {1}), phi_coface(log_phi, 3, {1}, {2}, {3}));
}

std::vector<TnElement> pentagon_lhs_factors(const LieElement& l) {
    return {phi_coface(l, 4, {2}, {3}, {4}), phi_coface(l, 4, {1}, {2, 3}, {4}), phi_coface(l, 4, {1}, {2}, {3})};
}
std::vector<TnElement> pentagon_rhs_factors(const LieElement& l) {
    return {phi_coface(l, 4, {1}, {2}, {3, 4}), phi_coface(l, 4, {1, 2}, {3}, {4})};
}

TnElement pentagon_defect(const LieElement& log_phi) {
    return tn_product(pentagon_lhs_factors(log_phi)) - tn_product(pentagon_rhs_factors(log_phi));
}

TangAut taut_product(const std::vector<TnElement>& logs) {
    std::optional<TangAut> out;
    for (const auto& l : logs) {
        TangAut a = taut_exp(ad_tn(l, 1));
        out = out ? taut_compose(*out, a) : a;
    }
    return *out;
}

Defects defects(const LieElement& log_phi) {
    return {duality_defect(log_phi), hexagon_defect(log_phi, Rational(1, 2)), hexagon_defect(log_phi, Rational(-1, 2)),
            pentagon_defect(log_phi)};
}

void append(Vec& v, const Vec& w) { v.insert(v.end(), w.begin(), w.end()); }

bool odd_parts_vanish(const LieElement& l) {
    for (const auto& [w, c] : l.assoc().terms())
        if (w.size() % 2) return false;
    return true;
}

CommSeries flip_signs(const CommSeries& c) {
    CommSeries out(c.vars(), c.cap());
    for (const auto& [key, coef] : c.terms()) out.add_term_packed(key.first, key.second, key.first % 2 ? -coef : coef);
    return out;
}

}  // namespace

TnElement phi_coface(const LieElement& log_phi, int n, const std::vector<int>& A, const std::vector<int>& B,
                     const std::vector<int>& C) {
    int cap = log_phi.cap();
    return eval_lie(log_phi, std::vector<TnElement>{TnElement::pair_sum(n, cap, A, B), TnElement::pair_sum(n, cap, B, C)});
}

TnElement tn_product(const std::vector<TnElement>& logs) {
    TnElement acc = logs.at(0);
    for (std::size_t k = 1; k < logs.size(); ++k) acc = tn_mul(acc, logs[k]);
    return acc;
}

M1Report check_m1(const Associator& phi) {
    M1Report r;
    Defects d = defects(phi.log);
    r.duality = CheckResult::from_difference(d.duality);
    r.hexagon = CheckResult::from_difference(d.hexagon);
    r.hexagon_inverse = CheckResult::from_difference(d.hexagon_inverse);
    r.pentagon = CheckResult::from_difference(d.pentagon);
    // the same relation pushed through ad: t_4 -> tder_3, injective above degree 1
    ad_kernel_guard(3, phi.cap());
    TangAut lhs = taut_product(pentagon_lhs_factors(phi.log));
    TangAut rhs = taut_product(pentagon_rhs_factors(phi.log));
    r.pentagon_taut = CheckResult::from_degree(first_difference_degree(lhs, rhs));
    return r;
}

Associator solve_associator(int cap, bool even, const Rational& free_value) {
    if (cap < 2) throw std::invalid_argument("solve_associator: cap must be at least 2");
    LieElement log(2, cap);
    for (int d = 2; d <= cap; ++d) {
        LieElement cur = log.truncated(d);
        Defects def = defects(cur);
        Vec residual;
        for (const TnElement* t : {&def.duality, &def.hexagon, &def.hexagon_inverse, &def.pentagon}) {
            if (!t->is_zero() && t->valuation() < d)
                throw SolverFailure(t->valuation(), "solve_associator: lower degree no longer satisfied");
            append(residual, t->coordinates(d));
        }
        bool zero_residual = true;
        for (const auto& v : residual) zero_residual = zero_residual && v.is_zero();
        if (even && d % 2) {
            if (!zero_residual)
                throw SolverFailure(d, "solve_associator: evenness forces a zero odd part, but degree " +
                                           std::to_string(d) + " has a nonzero residual");
            continue;
        }
        std::vector<Vec> cols;
        for (Word w : lyndon_basis(2, d)) {
            LieElement l = LieElement::from_coords(2, d, {{w, Rational(1)}});
            Vec col;
            append(col, (phi_coface(l, 3, {3}, {2}, {1}) + phi_coface(l, 3, {1}, {2}, {3})).coordinates(d));
            TnElement hex = phi_coface(l, 3, {1}, {2}, {3}) + phi_coface(l, 3, {3}, {1}, {2}) +
                            phi_coface(l, 3, {2}, {3}, {1});
            append(col, hex.coordinates(d));
            append(col, hex.coordinates(d));
            TnElement pent = phi_coface(l, 4, {2}, {3}, {4}) + phi_coface(l, 4, {1}, {2, 3}, {4}) +
                             phi_coface(l, 4, {1}, {2}, {3}) - phi_coface(l, 4, {1}, {2}, {3, 4}) -
                             phi_coface(l, 4, {1, 2}, {3}, {4});
            append(col, pent.coordinates(d));
            cols.push_back(std::move(col));
        }
        Matrix m = Matrix::from_columns(cols, static_cast<int>(residual.size()));
        Vec rhs;
        for (const auto& v : residual) rhs.push_back(-v);
        auto sol = solve(m, rhs, free_value);
        if (!sol) {
            std::ostringstream os;
            os << "solve_associator: inconsistent linear system at degree " << d << " (" << m.rows() << " equations, "
               << m.cols() << " unknowns, rank " << rank(m) << ")";
            throw SolverFailure(d, os.str());
        }
        LieElement::Coords coords;
        auto basis = lyndon_basis(2, d);
        for (std::size_t k = 0; k < basis.size(); ++k)
            if (!(*sol)[k].is_zero()) coords.emplace(basis[k], (*sol)[k]);
        log += LieElement::from_coords(2, cap, coords);
    }
    return Associator{log, even};
}

CommSeries gamma_b_part(const Associator& phi) {
    int cap = phi.cap();
    NCSeries Phi = nc_exp(phi.log.assoc());
    NCSeries bpart(2, cap);
    for (const auto& [w, c] : Phi.terms())
        if (!w.empty() && w.front() == 1) bpart.add_term(w, c);
    return bpart.abelianize();
}

GammaData gamma_of_phi(const Associator& phi) {
    int cap = phi.cap();
    CommSeries B = gamma_b_part(phi);
    CommSeries one = CommSeries::one(2, cap);
    // -log(1 - B) and log(1 + B) agree on the line linear in b̄, where ζ is read off
    CommSeries L = -comm_log(one - B);
    GammaData g;
    g.zeta.assign(static_cast<std::size_t>(cap) + 1, Rational(0));
    g.log_gamma = PowerSeries(cap);
    for (int n = 2; n <= cap; ++n) {
        Rational c = L.coeff({n - 1, 1});
        g.zeta[static_cast<std::size_t>(n)] = n % 2 ? -c : c;
        g.log_gamma[n] = c * Rational(1, n);  // (-1)^n ζ(n) / n
    }
    CommSeries rhs = g.log_gamma.evaluate_linear({1, 1}, 2) - g.log_gamma.evaluate_linear({1, 0}, 2) -
                     g.log_gamma.evaluate_linear({0, 1}, 2);
    CommSeries diff = L - rhs;
    g.identity = diff.is_zero() ? CheckResult{} : CheckResult{false, diff.valuation()};
    CommSeries diff1 = comm_log(one + B) - rhs;
    g.first_order_identity = diff1.is_zero() ? CheckResult{} : CheckResult{false, diff1.valuation()};
    return g;
}

CheckResult bernoulli_check(const std::vector<Rational>& zeta, int cap) {
    PowerSeries B = bernoulli_generating(cap);
    for (int k = 1; k <= cap; ++k) {
        Rational expect = B[k] * Rational(-1, 2);
        if (k == 1) expect = (B[1] + Rational(1, 2)) * Rational(-1, 2);
        Rational got = (k % 2 == 0 && k < static_cast<int>(zeta.size())) ? zeta[static_cast<std::size_t>(k)] : Rational(0);
        if (k % 2 == 0 && got != expect) return {false, k};
        if (k % 2 == 1 && !expect.is_zero()) return {false, k};
    }
    return {};
}

// ---- GT / GRT ----

GTReport check_gt1(const GTElement& f) {
    int cap = f.cap();
    GTReport r;
    LieElement x = gen2(cap, 0), y = gen2(cap, 1);
    const LieElement& l = f.log;
    r.inversion = CheckResult::from_difference(lie_cbh(l.substitute({y, x}), l));
    LieElement z = lie_cbh(-y, -x);  // log(Y^{-1} X^{-1})
    r.hexagon = CheckResult::from_difference(lie_cbh(lie_cbh(l, l.substitute({z, x})), l.substitute({y, z})));

    ad_kernel_guard(3, cap);
    auto T = [cap](const char* w) { return malcev_taut(PBWord::parse(4, w), cap); };
    auto F = [&l](const TangAut& g, const TangAut& h) { return group_word_eval(l, g, h); };
    TangAut lhs = taut_compose(taut_compose(F(T("x23"), T("x34")), F(T("x12 x13"), T("x24 x34"))), F(T("x12"), T("x23")));
    TangAut rhs = taut_compose(F(T("x12"), T("x23 x24")), F(T("x13 x23"), T("x34")));
    r.pentagon = CheckResult::from_degree(first_difference_degree(lhs, rhs));

    // exponent sums: f(u, v) contributes α ab(u) + β ab(v)
    Rational al = l.coord(Word::letter(0)), be = l.coord(Word::letter(1));
    auto ab = [](const char* w) { return PBWord::parse(4, w).abelianization(); };
    auto term = [&](const char* u, const char* v) {
        auto au = ab(u), av = ab(v);
        std::vector<Rational> out;
        for (std::size_t k = 0; k < au.size(); ++k) out.push_back(al * Rational(au[k]) + be * Rational(av[k]));
        return out;
    };
    auto sum = [](std::vector<std::vector<Rational>> ts) {
        std::vector<Rational> s(ts[0].size());
        for (const auto& t : ts)
            for (std::size_t k = 0; k < t.size(); ++k) s[k] += t[k];
        return s;
    };
    bool ab_ok = sum({term("x23", "x34"), term("x12 x13", "x24 x34"), term("x12", "x23")}) ==
                 sum({term("x12", "x23 x24"), term("x13 x23", "x34")});
    r.abelian = ab_ok ? CheckResult{} : CheckResult{false, 1};
    return r;
}

GRTReport check_grt1(const GRTElement& g) {
    int cap = g.cap();
    GRTReport r;
    LieElement x = gen2(cap, 0), y = gen2(cap, 1), c = -(x + y);
    const LieElement& l = g.log;
    r.duality = CheckResult::from_difference(lie_cbh(l.substitute({y, x}), l));
    r.linear = CheckResult::from_difference(conjugate(l.substitute({x, c}), x) + conjugate(l.substitute({y, c}), y) + c);
    r.hexagon = CheckResult::from_difference(tn_product(
        {phi_coface(l, 3, {1}, {2}, {3}), phi_coface(l, 3, {3}, {1}, {2}), phi_coface(l, 3, {2}, {3}, {1})}));
    r.pentagon = CheckResult::from_difference(pentagon_defect(l));
    return r;
}

namespace {

// log of ψ(Ad_{e^l} a, b) e^l for Lie series ψ, l on two letters
LieElement twisted_product(const LieElement& psi, const LieElement& l) {
    int cap = std::min(psi.cap(), l.cap());
    LieElement a = gen2(cap, 0), b = gen2(cap, 1);
    LieElement lt = l.truncated(cap);
    return lie_cbh(psi.truncated(cap).substitute({conjugate(lt, a), b}), lt);
}

}  // namespace

Associator act_gt(const GTElement& f, const Associator& phi) {
    LieElement l = twisted_product(f.log, phi.log);
    return Associator{l, odd_parts_vanish(l)};
}

Associator act_grt(const Associator& phi, const GRTElement& g) {
    LieElement l = twisted_product(phi.log, g.log);
    return Associator{l, odd_parts_vanish(l)};
}

GTElement gt_product(const GTElement& f1, const GTElement& f2) { return {twisted_product(f1.log, f2.log)}; }
GRTElement grt_product(const GRTElement& g1, const GRTElement& g2) { return {twisted_product(g1.log, g2.log)}; }

namespace {

// the degree-d part of the unknown enters the action linearly and alone
template <class Act>
LieElement solve_between(int cap, const LieElement& target, Act act) {
    LieElement u(2, cap);
    for (int d = 1; d <= cap; ++d) {
        LieElement diff = (target - act(u)).degree_part(d);
        u += diff;
    }
    if (!(act(u) == target)) throw std::runtime_error("element_between: torsor equation not solved");
    return u;
}

}  // namespace

GTElement gt_between(const Associator& phi, const Associator& phi2) {
    int cap = std::min(phi.cap(), phi2.cap());
    Associator p{phi.log.truncated(cap), phi.even};
    return {solve_between(cap, phi2.log.truncated(cap), [&](const LieElement& u) { return act_gt({u}, p).log; })};
}

GRTElement grt_between(const Associator& phi, const Associator& phi2) {
    int cap = std::min(phi.cap(), phi2.cap());
    Associator p{phi.log.truncated(cap), phi.even};
    return {solve_between(cap, phi2.log.truncated(cap), [&](const LieElement& u) { return act_grt(p, {u}).log; })};
}

CommSeries metabelian_class(const LieElement& psi) {
    if (!psi.is_zero() && psi.valuation() < 2)
        throw std::invalid_argument("metabelian_class: element must lie in the derived subalgebra");
    // ∂_a kills f''_2 after abelianization; the class is -ā (∂_a ψ)^{ab} at (-ā, -b̄)
    CommSeries da = partial_k(psi.assoc(), 0).abelianize();
    CommSeries c = CommSeries::var(2, psi.cap(), 0) * da;
    return flip_signs(c).truncated(psi.cap());
}

GammaFData gamma_of_f(const GTElement& f, GammaFReading reading) {
    int cap = f.cap();
    CommSeries K = metabelian_class(f.log);
    CommSeries one = CommSeries::one(2, cap);
    // log(1 - K) and -log(1 + K) agree on the line linear in b̄
    CommSeries L = comm_log(one - K);
    GammaFData out;
    out.log_gamma = PowerSeries(cap);
    Rational sign = reading == GammaFReading::quotient_over_product ? Rational(1) : Rational(-1);
    for (int n = 2; n <= cap; ++n) {
        Rational c = L.coeff({n - 1, 1}) * Rational(1, n) * sign;
        out.log_gamma[n] = n % 2 ? -c : c;
    }
    const PowerSeries& g = out.log_gamma;
    CommSeries rhs = g.evaluate_linear({-1, -1}, 2) - g.evaluate_linear({-1, 0}, 2) - g.evaluate_linear({0, -1}, 2);
    out.identity = CheckResult::from_difference(-comm_log(one + K) - rhs);
    out.first_order_identity = CheckResult::from_difference(L - sign * rhs);
    return out;
}

}  // namespace kvassoc
