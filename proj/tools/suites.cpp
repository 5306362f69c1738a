#include "suites.hpp"

#include "kvassoc/parenthesized.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <random>
#include <thread>

namespace kvassoc::cli {

namespace {

using json = io::json;
using Task = std::function<std::vector<CheckRecord>()>;

CheckResult worst(const CheckResult& a, const CheckResult& b) {
    if (a.pass) return b;
    if (b.pass) return a;
    return {false, std::min(a.first_failure_degree, b.first_failure_degree)};
}

CheckResult taut_equal(const TangAut& a, const TangAut& b) {
    return CheckResult::from_degree(first_difference_degree(a, b));
}

CheckRecord record(std::string id, std::string anchor, int cap, const CheckResult& r) {
    CheckRecord c{std::move(id), std::move(anchor), r.pass ? "pass" : "fail", cap, std::nullopt, "", nullptr};
    if (!r.pass) c.first_failure_degree = r.first_failure_degree;
    return c;
}

CheckRecord skipped(std::string id, std::string anchor, int cap, std::string why) {
    return {std::move(id), std::move(anchor), "skipped", cap, std::nullopt, std::move(why), nullptr};
}

// passes exactly when the identity fails on an input where it must fail
CheckRecord control(std::string id, std::string anchor, int cap, bool identity_failed) {
    CheckRecord c = record(std::move(id), std::move(anchor), cap, identity_failed ? CheckResult{} : CheckResult{false, 0});
    c.note = "negative control: passes when the identity is violated as expected";
    return c;
}

// runs the tasks on a small pool; any exception becomes a failing record
std::vector<CheckRecord> run_tasks(std::vector<std::pair<std::string, Task>> tasks) {
    std::vector<std::vector<CheckRecord>> out(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t k; (k = next++) < tasks.size();) {
            try {
                out[k] = tasks[k].second();
            } catch (const std::exception& e) {
                CheckRecord r{tasks[k].first, "computation completed", "fail", 0, std::nullopt, e.what(), nullptr};
                out[k] = {r};
            }
        }
    };
    unsigned n = std::max(1u, std::min(std::thread::hardware_concurrency(), static_cast<unsigned>(tasks.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<CheckRecord> flat;
    for (auto& v : out) flat.insert(flat.end(), v.begin(), v.end());
    return flat;
}

Associator at_cap(const Associator& phi, int cap) { return {phi.log.truncated(cap), phi.even}; }

// a second associator distinct from phi when the cap allows one
Associator other_associator(const Associator& phi, int cap) {
    Associator a = solve_associator(cap, false, Rational(1));
    if (a.log == phi.log) a = solve_associator(cap, false, Rational(2));
    return a;
}

LieElement random_lie(std::mt19937_64& rng, int letters, int cap, int terms) {
    std::uniform_int_distribution<int> deg(1, cap), let(0, letters - 1), num(-3, 3), den(1, 3);
    LieElement out(letters, cap);
    for (int t = 0; t < terms; ++t) {
        int d = deg(rng);
        LieElement e = LieElement::generator(letters, cap, let(rng));
        for (int k = 1; k < d; ++k) {
            LieElement g = LieElement::generator(letters, cap, let(rng));
            e = (rng() & 1) ? lie_bracket(g, e) : lie_bracket(e, g);
        }
        int p = num(rng);
        out += Rational(p, den(rng)) * e;
    }
    return out;
}

TangDer random_tder(std::mt19937_64& rng, int letters, int cap) {
    std::vector<LieElement> parts;
    for (int k = 0; k < letters; ++k) parts.push_back(random_lie(rng, letters, cap, 3));
    return TangDer(std::move(parts));
}

TangAut random_taut(std::mt19937_64& rng, int letters, int cap) {
    std::vector<LieElement> ex;
    for (int k = 0; k < letters; ++k) ex.push_back(random_lie(rng, letters, cap, 3));
    return TangAut::from_exponents(std::move(ex));
}

PBWord random_pb(std::mt19937_64& rng, int strands, int length) {
    std::vector<PBLetter> ls;
    std::uniform_int_distribution<int> s(1, strands);
    while (static_cast<int>(ls.size()) < length) {
        int i = s(rng), j = s(rng);
        if (i == j) continue;
        ls.push_back({std::min(i, j), std::max(i, j), (rng() & 1) ? 1 : -1});
    }
    return PBWord(strands, ls);
}

// ---------------------------------------------------------------- kv

std::vector<std::pair<std::string, Task>> kv_tasks(const Associator& phi, int cap) {
    std::vector<std::pair<std::string, Task>> t;
    t.emplace_back("kv.solkv", [phi, cap] {
        SolKVReport rep = check_solkv(mu_automorphism(phi));
        GammaData gd = gamma_of_phi(phi);
        std::vector<CheckRecord> out{
            record("kv.solkv.conjugacy", "mu_Phi(X) ~ e^x and mu_Phi(Y) ~ e^y", cap, rep.conjugacy),
            record("kv.solkv.product", "mu_Phi(e^x e^y) = e^{x+y}", cap, rep.product),
            record("kv.solkv.jacobian", "J(mu_Phi) = <r(x+y) - r(x) - r(y)> for some r", cap, rep.jacobian)};
        CheckResult duf = rep.jacobian.pass ? CheckResult::from_difference(rep.r + gd.log_gamma) : rep.jacobian;
        out.push_back(record("kv.duflo.log_gamma",
                             "J(mu_Phi) = <log G(x) + log G(y) - log G(x+y)>, i.e. Duf(mu_Phi) = -log Gamma_Phi",
                             cap, duf));
        out.push_back(record("kv.gamma.identity", "-log(1 - (b d_b Phi)^ab) = logG(a+b) - logG(a) - logG(b)", cap,
                             gd.identity));
        out.push_back(record("kv.gamma.bernoulli",
                             "sum zeta_Phi(2n) u^2n = -(1/2)(u/(e^u - 1) - 1 + u/2)", cap,
                             bernoulli_check(gd.zeta, cap)));
        return out;
    });
    t.emplace_back("kv.mu_cofaces", [phi, cap] {
        int c = std::min(cap, 5);
        return std::vector<CheckRecord>{record(
            "kv.mu_cofaces", "Phi(t12, t23) o mu^{12,3} o mu^{1,2} = mu^{1,23} o mu^{2,3}", c,
            identity2_check(at_cap(phi, c)))};
    });
    t.emplace_back("kv.kv_equations", [phi, cap] {
        KVSolution kv{mu_automorphism(phi), PowerSeries(cap)};
        SolKVReport rep = check_solkv(kv.mu);
        kv.duflo = rep.r;
        ABPair ab = extract_AB(kv.mu);
        std::vector<CheckRecord> out;
        out.push_back(record("kv.kv1", "x + y - log(e^y e^x) = (1 - e^{-ad x})A + (e^{ad y} - 1)B", cap,
                             check_kv1(ab)));
        // r in the convention J(mu) = <r(x) + r(y) - r(x+y)>, i.e. minus the Duflo series
        CheckRecord kv3 = record("kv.kv3", "j(u) = <phi(x) + phi(y) - phi(x*y)>, phi(t) = t r'(t)", cap,
                                 check_kv3(TangDer({ab.A, ab.B}), -kv.duflo));
        kv3.note = "u = -kappa(mu^-1); r taken with J(mu) = <r(x) + r(y) - r(x+y)>, which is -Duf(mu)";
        out.push_back(kv3);
        for (auto [s, tag] : {std::pair{Rational(1), "1"}, std::pair{Rational(-1, 4), "-1/4"}})
            out.push_back(record(std::string("kv.s_family.kv1.s=") + tag, "s-shifted pair still solves KV1", cap,
                                 check_kv1(s_family(ab, s))));
        for (auto [s, tag] : {std::pair{Rational(-1, 4), "-1/4"}, std::pair{Rational(1, 4), "+1/4"}}) {
            std::string id = std::string("kv.swap_symmetry.s=") + tag;
            const char* anchor = "(A_s, B_s)(x, y) = (B_s(-y, -x), A_s(-y, -x))";
            if (!phi.even) {
                out.push_back(skipped(id, anchor, cap, "requires an even associator"));
                continue;
            }
            ABPair shifted = s_family(ab, s);
            CheckRecord r = record(id, anchor, cap, symmetry_check(shifted));
            if (r.status == "fail") {
                int d = *r.first_failure_degree;
                LieElement x = LieElement::generator(2, cap, 0), y = LieElement::generator(2, cap, 1);
                LieElement diff = shifted.A - shifted.B.substitute({-y, -x});
                r.witness = json{{"degree", d}, {"A_minus_swapped_B", io::to_json(diff.degree_part(d))}};
            }
            out.push_back(r);
        }
        return out;
    });
    return t;
}

// ---------------------------------------------------------------- torsor

std::vector<std::pair<std::string, Task>> torsor_tasks(const Associator& phi, int cap) {
    std::vector<std::pair<std::string, Task>> t;
    t.emplace_back("torsor", [phi, cap] {
        Associator phi2 = other_associator(phi, cap);
        M1Report m1 = check_m1(phi2);
        GTElement f = gt_between(phi, phi2);
        GRTElement g = grt_between(phi, phi2);
        std::vector<CheckRecord> out;
        out.push_back(record("torsor.second_associator",
                             "second solver output satisfies duality, hexagons and pentagon", cap,
                             worst(worst(worst(m1.duality, m1.hexagon), worst(m1.hexagon_inverse, m1.pentagon)),
                                   m1.pentagon_taut)));
        out.push_back(record("torsor.gt.recovers", "f * Phi = Phi'", cap,
                             CheckResult::from_difference(act_gt(f, phi).log - phi2.log)));
        out.push_back(record("torsor.grt.recovers", "Phi * g = Phi'", cap,
                             CheckResult::from_difference(act_grt(phi, g).log - phi2.log)));
        GTReport gt = check_gt1(f);
        out.push_back(record("torsor.gt.membership", "f lies in GT_1", cap,
                             worst(worst(gt.inversion, gt.hexagon), worst(gt.pentagon, gt.abelian))));
        GRTReport grt = check_grt1(g);
        out.push_back(record("torsor.grt.membership", "g lies in GRT_1", cap,
                             worst(worst(grt.duality, grt.linear), worst(grt.hexagon, grt.pentagon))));
        SymmetryReport kv = check_kv_group(alpha_of_f(f));
        out.push_back(record("torsor.kv.alpha_f", "alpha_f(XY) = XY and J(alpha_f) is a twisted coboundary", cap,
                             worst(kv.product, kv.jacobian)));
        SymmetryReport krv = check_krv_group(a_of_g(g));
        out.push_back(record("torsor.krv.a_g", "a_g(x + y) = x + y and J(a_g) is a coboundary", cap,
                             worst(krv.product, krv.jacobian)));
        CompatReport c = compat_check(f, phi, g);
        out.push_back(record("torsor.mu.gt_side", "mu_{f*Phi} = mu_Phi o alpha_f", cap, c.gt_side));
        out.push_back(record("torsor.mu.grt_side", "mu_{Phi*g} = a_g o mu_Phi", cap, c.grt_side));
        out.push_back(record("torsor.duflo.additivity", "r_{mu o alpha} = r_mu + sigma_alpha", cap, c.duflo));
        GammaFData gf = gamma_of_f(f);
        out.push_back(record("torsor.gamma.multiplicative", "Gamma_{f*Phi} = Gamma_f Gamma_Phi", cap,
                             CheckResult::from_difference(gamma_of_phi(phi2).log_gamma - gf.log_gamma -
                                                          gamma_of_phi(phi).log_gamma)));
        out.push_back(record("torsor.gamma_f.identity",
                             "1 + [log f] = Gamma_f(-a) Gamma_f(-b) / Gamma_f(-a-b) in f'/f''", cap, gf.identity));
        return out;
    });
    return t;
}

// ---------------------------------------------------------------- braid

std::vector<std::pair<std::string, Task>> braid_tasks(const Associator& phi, int cap, std::uint64_t seed) {
    std::vector<std::pair<std::string, Task>> t;
    t.emplace_back("braid.relators", [cap] {
        CheckResult artin, ad;
        for (int n = 3; n <= 4; ++n) {
            for (const auto& r : check_pb_relations(n))
                if (!r.pass) artin = {false, 0};
            for (const auto& [name, w] : pb_relators(n))
                if (!ad_pb(w).is_identity()) ad = {false, 0};
        }
        auto x = [](int n, int i, int j) { return PBWord::generator(n, i, j); };
        bool controls = !artin_action(commutator(x(3, 1, 2), x(3, 1, 3)).to_braid()).is_identity() &&
                        !artin_action(commutator(x(4, 1, 3), x(4, 2, 4)).to_braid()).is_identity() &&
                        !ad_pb(commutator(x(4, 2, 3), x(4, 2, 4))).is_identity() &&
                        !ad_pb(commutator(x(4, 1, 2), x(4, 1, 3))).is_identity();
        return std::vector<CheckRecord>{
            record("braid.relators.ad", "PB_n relators act trivially on F_{n-1}, n <= 4", cap, ad),
            record("braid.relators.artin", "PB_n relators act trivially under the Artin action, n <= 4", cap, artin),
            control("braid.relators.negative_controls", "non-relations act nontrivially", cap, controls)};
    });
    t.emplace_back("braid.ad.jacobian_zero", [cap, seed] {
        std::mt19937_64 rng(seed ^ 0xB1);
        CheckResult r;
        for (int k = 0; k < 50; ++k) {
            TraceElement J = jacobian_J(malcev_taut(random_pb(rng, 4, 6), cap));
            r = worst(r, CheckResult::from_difference(J));
        }
        CheckRecord c = record("braid.ad.jacobian_zero", "J(Ad g) = 0 for g in PB_4 (50 seeded words)", cap, r);
        return std::vector<CheckRecord>{c};
    });
    t.emplace_back("braid.cabling", [cap, seed] {
        std::mt19937_64 rng(seed ^ 0xCA);
        CheckResult r;
        int c = std::min(cap, 4);
        for (int k = 0; k < 6; ++k) {
            PBWord w = random_pb(rng, 3, 4);
            for (auto mult : std::vector<std::vector<int>>{{1, 2, 1}, {1, 1, 2}, {1, 0, 2}})
                r = worst(r, cabling_coface_check(w, mult, c));
        }
        return std::vector<CheckRecord>{
            record("braid.cabling.intertwines", "Ad(cabled w) o iota = iota o Ad(w)", c, r)};
    });
    t.emplace_back("braid.paren.path_independence", [phi, cap] {
        int c = std::min(cap, 5);
        Associator p = at_cap(phi, c);
        CheckResult r;
        auto five = ParenWord::all(5);
        for (const auto& a : five)
            for (const auto& b : five)
                r = worst(r, CheckResult::from_difference(phi_OO(p, a, b) -
                                                          phi_OO(p, a, b, PathStrategy::innermost)));
        return std::vector<CheckRecord>{
            record("braid.paren.path_independence", "Phi_{O,O'} independent of the rotation path, 5 leaves", c, r)};
    });
    t.emplace_back("braid.paren.leaf_doubling", [phi, cap] {
        CheckResult r;
        for (int n = 2; n <= 4; ++n)
            for (const auto& O : ParenWord::all(n))
                for (int i = 1; i < n; ++i) r = worst(r, identity4_check(phi, O, i));
        return std::vector<CheckRecord>{record("braid.paren.leaf_doubling",
                                               "mu_{O^(i)} = mu_O^{1,..,ii+1,..,n} o mu_Phi^{i,i+1}, <= 4 leaves",
                                               cap, r)};
    });
    t.emplace_back("braid.telescopic.shape", [cap] {
        auto f = telescopic_factors(ParenWord::parse("(((••)(••))(•(••)))(••)"));
        std::vector<std::string> expect{"1234567,89", "1234,567", "8,9", "12,34", "5,67", "1,2", "3,4", "6,7"};
        std::vector<std::string> got;
        for (const auto& x : f) {
            std::string s;
            for (int l : x.L) s += std::to_string(l);
            s += ",";
            for (int l : x.R) s += std::to_string(l);
            got.push_back(s);
        }
        CheckRecord c = record("braid.telescopic.shape", "nine-leaf factorization order", cap,
                               got == expect ? CheckResult{} : CheckResult{false, 0});
        c.witness = got;
        return std::vector<CheckRecord>{c};
    });
    t.emplace_back("braid.telescopic.agrees", [phi, cap] {
        CheckResult r, commute;
        for (int n = 2; n <= 4; ++n)
            for (const auto& Op : ParenWord::all(n)) {
                TelescopicResult tr = telescopic_mu(phi, Op);
                commute = worst(commute, tr.same_depth_commute);
                r = worst(r, taut_equal(tr.value, mu_O(phi, ParenWord::join(ParenWord::leaf(), Op))));
            }
        int c5 = std::min(cap, 3);
        Associator p5 = at_cap(phi, c5);
        CheckResult r5;
        for (const auto& Op : ParenWord::all(5)) {
            TelescopicResult tr = telescopic_mu(p5, Op);
            commute = worst(commute, tr.same_depth_commute);
            r5 = worst(r5, taut_equal(tr.value, mu_O(p5, ParenWord::join(ParenWord::leaf(), Op))));
        }
        return std::vector<CheckRecord>{
            record("braid.telescopic.agrees", "telescopic product = Ad(Phi_{comb,O}) o mu_comb, O' <= 4 leaves", cap,
                   r),
            record("braid.telescopic.agrees_5_leaves", "telescopic product = Ad(Phi_{comb,O}) o mu_comb, 5 leaves",
                   c5, r5),
            record("braid.telescopic.same_depth_commute", "factors at equal depth commute", c5, commute)};
    });
    t.emplace_back("braid.jacobian.mu_O", [phi, cap] {
        CheckResult comb, any;
        for (int n = 3; n <= 5; ++n)
            for (const auto& O : ParenWord::all(n)) {
                CheckResult r = jacobian_mu_O(phi, O).formula;
                if (O == ParenWord::right_comb(n)) comb = worst(comb, r);
                any = worst(any, r);
            }
        return std::vector<CheckRecord>{
            record("braid.jacobian.mu_comb", "J(mu_n) = <sum log G(x_i) - log G(sum x_i)>, 3 to 5 leaves", cap, comb),
            record("braid.jacobian.mu_O", "J(mu_O) = <sum log G(x_i) - log G(sum x_i)> for every O, 3 to 5 leaves", cap, any)};
    });
    t.emplace_back("braid.alpha", [phi, cap] {
        int c = std::min(cap, 4);
        Associator p = at_cap(phi, c);
        Associator p2 = other_associator(p, c);
        GTElement f = gt_between(p, p2);
        CheckResult jac, torsor, commute;
        for (int n = 2; n <= 3; ++n)
            for (const auto& Op : ParenWord::all(n)) {
                jac = worst(jac, jacobian_alpha(f, Op).formula);
                torsor = worst(torsor, torsor_mu_O_check(f, p, Op));
                commute = worst(commute, alpha_f_O(f, Op).same_depth_commute);
            }
        return std::vector<CheckRecord>{
            record("braid.alpha.jacobian", "J(alpha_f^O) = <sum log G_f(x_i) - log G_f(log prod X_i)>", c, jac),
            record("braid.alpha.same_depth_commute", "alpha_f factors at equal depth commute", c, commute),
            record("braid.alpha.torsor", "mu_{f*Phi}^O = mu_Phi^O o alpha_f^O", c, torsor),
            record("braid.alpha.twisted_cofaces",
                   "Ad f(x12, x23) o alpha^{1~2,3} o alpha^{1,2} = alpha^{1,2~3} o alpha^{2,3}", c,
                   identity22_check(f))};
    });
    return t;
}

// ---------------------------------------------------------------- cocycle

std::vector<std::pair<std::string, Task>> cocycle_tasks(int cap, std::uint64_t seed) {
    std::vector<std::pair<std::string, Task>> t;
    t.emplace_back("cocycle.divergence", [cap, seed] {
        std::mt19937_64 rng(seed ^ 0xD1);
        CheckResult r;
        for (int k = 0; k < 100; ++k) {
            int n = 2 + k % 2;
            TangDer u = random_tder(rng, n, cap), v = random_tder(rng, n, cap);
            r = worst(r, CheckResult::from_difference(divergence_j(lie_bracket(u, v)) -
                                                      (trace_act(u, divergence_j(v)) - trace_act(v, divergence_j(u)))));
        }
        return std::vector<CheckRecord>{
            record("cocycle.divergence.bracket", "j([u,v]) = u.j(v) - v.j(u), 100 seeded cases", cap, r)};
    });
    t.emplace_back("cocycle.jacobian", [cap, seed] {
        std::mt19937_64 rng(seed ^ 0xD2);
        CheckResult r;
        for (int k = 0; k < 100; ++k) {
            int n = 2 + k % 2;
            TangAut g = random_taut(rng, n, cap), h = random_taut(rng, n, cap);
            r = worst(r, CheckResult::from_difference(jacobian_J(taut_compose(g, h)) -
                                                      (jacobian_J(g) + trace_act(g, jacobian_J(h)))));
        }
        return std::vector<CheckRecord>{
            record("cocycle.jacobian.composition", "J(g o h) = J(g) + g.J(h), 100 seeded cases", cap, r)};
    });
    t.emplace_back("cocycle.delta", [cap] {
        CheckResult exact, kernel;
        for (int d = 1; d <= cap; ++d) {
            ExactnessReport e = delta_exactness(d);
            if (exact.pass && e.ker_dim_T2 != e.im_dim_T1) exact = {false, d};
            if (kernel.pass && e.ker_dim_T1 != (d == 1 ? 1 : 0)) kernel = {false, d};
        }
        TraceElement x1(1, cap);
        x1.add_term(Word::from({0}), Rational(1));
        if (!delta(x1).is_zero()) kernel = worst(kernel, {false, 1});
        return std::vector<CheckRecord>{
            record("cocycle.delta.exactness", "dim ker(delta on T_2) = dim im(delta from T_1) per degree", cap, exact),
            record("cocycle.delta.kernel", "ker(T_1 -> T_2) is spanned by <x_1>", cap, kernel)};
    });
    return t;
}

// ---------------------------------------------------------------- centralizer

std::vector<std::pair<std::string, Task>> centralizer_tasks(int cap) {
    std::vector<std::pair<std::string, Task>> t;
    for (int n : {3, 4})
        t.emplace_back("centralizer", [n, cap] {
            CentralizerReport rep = check_centralizer_pb(n, cap);
            std::string p = "centralizer.n" + std::to_string(n) + ".";
            CheckRecord dims = record(p + "dimensions", "{x in t_n : [x, t_12] = 0} = k t_12 + merged image of t_{n-1}",
                                      cap, rep.dimensions);
            json rows = json::array();
            for (const auto& r : rep.rows)
                rows.push_back({{"degree", r.degree}, {"computed", r.computed}, {"predicted", r.predicted},
                                {"contained", r.contained}});
            dims.witness = rows;
            return std::vector<CheckRecord>{
                dims,
                record(p + "commuting", "x_12^l h^{1~2,3,..} commutes with x_12 under Ad", cap, rep.commuting),
                control(p + "negative_control", "x_13 does not commute with x_12", cap, !rep.negative_control.pass)};
        });
    return t;
}

}  // namespace

json to_json(const CheckRecord& r) {
    json j{{"check", r.id}, {"anchor", r.anchor}, {"status", r.status}, {"cap", r.cap}};
    j["first_failure_degree"] = r.first_failure_degree ? json(*r.first_failure_degree) : json(nullptr);
    if (!r.note.empty()) j["note"] = r.note;
    if (!r.witness.is_null()) j["witness"] = r.witness;
    return j;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"kv", "torsor", "braid", "cocycle", "centralizer"};
    return names;
}

bool suite_needs_associator(const std::string& suite) {
    return suite == "kv" || suite == "torsor" || suite == "braid" || suite == "all";
}

int default_cap(const std::string& suite) { return suite == "kv" ? 8 : 5; }

int resolved_cap(const std::string& suite, const SuiteOptions& opt) {
    if (opt.cap) return *opt.cap;
    int c = default_cap(suite);
    if (opt.phi && suite_needs_associator(suite)) c = std::min(c, opt.phi->cap());
    return c;
}

std::vector<CheckRecord> run_suite(const std::string& suite, const SuiteOptions& opt) {
    std::vector<std::pair<std::string, Task>> tasks;
    auto add = [&tasks](std::vector<std::pair<std::string, Task>> more) {
        for (auto& t : more) tasks.push_back(std::move(t));
    };
    auto phi_at = [&opt](int cap) {
        if (!opt.phi) throw std::invalid_argument("this suite needs an associator");
        return at_cap(*opt.phi, cap);
    };
    for (const std::string& s : suite_names()) {
        if (suite != "all" && suite != s) continue;
        int cap = resolved_cap(s, opt);
        if (s == "kv") add(kv_tasks(phi_at(cap), cap));
        if (s == "torsor") add(torsor_tasks(phi_at(cap), cap));
        if (s == "braid") add(braid_tasks(phi_at(cap), cap, opt.seed));
        if (s == "cocycle") add(cocycle_tasks(cap, opt.seed));
        if (s == "centralizer") add(centralizer_tasks(cap));
    }
    if (tasks.empty()) throw std::invalid_argument("unknown suite '" + suite + "'");
    if (!opt.only.empty()) {
        // task keys are prefixes of the ids they produce
        auto wanted = [&opt](const std::string& key) {
            return std::any_of(opt.only.begin(), opt.only.end(), [&key](const std::string& p) {
                return key.rfind(p, 0) == 0 || p.rfind(key, 0) == 0;
            });
        };
        std::erase_if(tasks, [&wanted](const auto& t) { return !wanted(t.first); });
    }
    std::vector<CheckRecord> out = run_tasks(std::move(tasks));
    if (!opt.only.empty())
        std::erase_if(out, [&opt](const CheckRecord& r) {
            return std::none_of(opt.only.begin(), opt.only.end(),
                                [&r](const std::string& p) { return r.id.rfind(p, 0) == 0; });
        });
    std::sort(out.begin(), out.end(), [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
    return out;
}

}  // namespace kvassoc::cli
