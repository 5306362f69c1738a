#include "doctest.h"
#include "oracles.hpp"

#include "kvassoc/kv.hpp"

#include <map>

using namespace kvassoc;

namespace {

LieElement gen(int cap, int i) { return LieElement::generator(2, cap, i); }

const Associator& solved(int cap, int which) {
    static std::map<std::pair<int, int>, Associator> cache;
    auto key = std::make_pair(cap, which);
    auto it = cache.find(key);
    if (it == cache.end()) {
        Associator a = which == 0 ? solve_associator(cap, true) : solve_associator(cap, false, Rational(which));
        it = cache.emplace(key, a).first;
    }
    return it->second;
}

// <r(x+y) - r(x) - r(y)> expanded word by word, without the trace helpers
TraceElement coboundary_oracle(const PowerSeries& r, int cap) {
    TraceElement out(2, cap);
    for (int m = 2; m <= std::min(cap, r.cap()); ++m) {
        if (r[m].is_zero()) continue;
        for (int mask = 1; mask + 1 < (1 << m); ++mask) {
            std::vector<int> w;
            for (int p = 0; p < m; ++p) w.push_back((mask >> p) & 1);
            out.add_term(Word::from(w), r[m]);
        }
    }
    return out;
}

TnElement random_tn(std::mt19937_64& rng, int n, int cap) {
    std::uniform_int_distribution<int> strand(1, n);
    auto g = [&](void) {
        int i = strand(rng), j = strand(rng);
        while (j == i) j = strand(rng);
        return TnElement::generator(n, cap, i, j);
    };
    TnElement w = oracle::small_rational(rng) * g();
    for (int t = 0; t < 3; ++t) w = w + oracle::small_rational(rng) * lie_bracket(g(), g());
    w = w + oracle::small_rational(rng) * lie_bracket(g(), lie_bracket(g(), g()));
    return w;
}

}  // namespace

TEST_CASE("mu of an associator is a KV solution") {
    for (int which : {0, 1}) {
        int cap = 6;
        const Associator& phi = solved(cap, which);
        KVSolution kv = mu_of_phi(phi);
        NCSeries X = oracle::x(2, cap, 0), Y = oracle::x(2, cap, 1);
        CHECK(kv.mu.apply(nc_exp(X) * nc_exp(Y)) == nc_exp(X + Y));
        GammaData g = gamma_of_phi(phi);
        CHECK(kv.duflo == -g.log_gamma);
        TraceElement J = jacobian_J(kv.mu);
        CHECK(J == coboundary_oracle(-g.log_gamma, J.cap()));
        SolKVReport rep = check_solkv(kv.mu);
        CHECK(rep.pass());
        CHECK(rep.failing_condition().empty());
    }
}

TEST_CASE("mu is the identity modulo degree 2 and inverts the cbh product") {
    int cap = 5;
    KVSolution kv = mu_of_phi(solved(cap, 0));
    for (int k = 0; k < 2; ++k) {
        NCSeries img = kv.mu.generator_images()[static_cast<std::size_t>(k)];
        CHECK(img.degree_range(0, 1) == oracle::x(2, img.cap(), k));
    }
    TangAut inv = taut_inverse(kv.mu);
    LieElement x = gen(cap + 1, 0), y = gen(cap + 1, 1);
    CHECK(inv.apply(x + y) == lie_cbh(x, y));
}

TEST_CASE("SolKV negative and inner-twisted cases") {
    int cap = 5;
    SolKVReport id = check_solkv(TangAut::identity(2, cap));
    CHECK_FALSE(id.pass());
    CHECK(id.failing_condition() == "product");
    CHECK(id.product.first_failure_degree == 2);

    KVSolution kv = mu_of_phi(solved(cap, 1));
    for (Rational s : {Rational(1), Rational(-1, 3)}) {
        TangAut twisted = taut_compose(inner(s * (gen(cap, 0) + gen(cap, 1)), 2), kv.mu);
        SolKVReport rep = check_solkv(twisted);
        CHECK(rep.pass());
        CHECK(rep.r == kv.duflo);
    }
    CHECK_THROWS_AS(check_solkv(TangAut::identity(3, cap)), std::invalid_argument);
}

TEST_CASE("SolKV on three letters") {
    int cap = 5;
    KVSolution kv = mu_of_phi(solved(cap, 1));
    TangAut mu3 = taut_compose(taut_coface(kv.mu, StrandMap::parse("12,3", 3), CofaceVariant::additive),
                               taut_coface(kv.mu, StrandMap::parse("1,2", 3), CofaceVariant::additive));
    SolKVReport rep = check_solkv_n(mu3);
    CHECK(rep.pass());
    CHECK(rep.r == kv.duflo);
    CHECK(check_solkv_n(TangAut::identity(3, cap)).product.first_failure_degree == 2);
    SolKVReport two = check_solkv_n(kv.mu);
    CHECK(two.pass());
    CHECK(two.r == check_solkv(kv.mu).r);
}

TEST_CASE("coface relation of mu and its sensitivity") {
    int cap = 5;
    CHECK(identity2_check(solved(cap, 0)).pass);
    CHECK(identity2_check(solved(cap, 1)).pass);
    CHECK(identity2_check({LieElement(2, 1), false}).pass);

    LieElement x = gen(cap, 0), y = gen(cap, 1);
    for (const LieElement& bump : {lie_bracket(x, lie_bracket(x, y)), lie_bracket(y, lie_bracket(y, x))}) {
        Associator bad = solved(cap, 0);
        bad.log += Rational(1, 5) * bump;
        CheckResult r = identity2_check(bad);
        CHECK_FALSE(r.pass);
        CHECK(r.first_failure_degree == 3);
    }
}

TEST_CASE("alpha_f and a_g") {
    int cap = 5;
    CHECK(alpha_of_f({LieElement(2, cap)}).is_identity());
    CHECK(a_of_g({LieElement(2, cap)}).is_identity());

    const Associator& p0 = solved(cap, 0);
    const Associator& p1 = solved(cap, 1);
    const Associator& p2 = solved(cap, -2);
    GTElement f1 = gt_between(p0, p1), f2 = gt_between(p1, p2);
    GRTElement g1 = grt_between(p0, p1), g2 = grt_between(p1, p2);

    CHECK(alpha_of_f(gt_product(f1, f2)) == taut_compose(alpha_of_f(f2), alpha_of_f(f1)));
    CHECK(a_of_g(grt_product(g1, g2)) == taut_compose(a_of_g(g2), a_of_g(g1)));

    for (const GTElement& f : {f1, f2}) {
        SymmetryReport r = check_kv_group(alpha_of_f(f));
        CHECK(r.pass());
    }
    for (const GRTElement& g : {g1, g2}) {
        SymmetryReport r = check_krv_group(a_of_g(g));
        CHECK(r.pass());
    }

    // Duf is additive along compositions in KV
    TangAut a1 = alpha_of_f(f1), a2 = alpha_of_f(f2);
    PowerSeries s12 = check_kv_group(taut_compose(a2, a1)).sigma;
    CHECK(s12 == check_kv_group(a1).sigma + check_kv_group(a2).sigma);

    // a non-symmetry
    CHECK_FALSE(check_kv_group(mu_of_phi(p0).mu).product.pass);
    CHECK_FALSE(check_krv_group(inner(gen(cap, 0), 2)).product.pass);
}

TEST_CASE("torsor compatibilities of mu") {
    int cap = 5;
    const Associator& p0 = solved(cap, 0);
    const Associator& p1 = solved(cap, 1);
    GTElement f = gt_between(p0, p1);
    GRTElement g = grt_between(p0, p1);
    CompatReport rep = compat_check(f, p0, g);
    CHECK(rep.gt_side.pass);
    CHECK(rep.grt_side.pass);
    CHECK(rep.duflo.pass);
    CHECK(compat_check({LieElement(2, cap)}, p1, {LieElement(2, cap)}).pass());

    // the order of composition matters
    TangAut mu0 = mu_automorphism(p0), mu1 = mu_automorphism(p1);
    CHECK(first_difference_degree(taut_compose(alpha_of_f(f), mu0), mu1) == 4);
    CHECK(first_difference_degree(taut_compose(mu0, a_of_g(g)), mu1) == 4);
    CHECK_THROWS_AS(compat_check(GTElement{f.log.truncated(4)}, p0, g), std::invalid_argument);
}

TEST_CASE("kappa and the (A, B) pair") {
    int cap = 6;
    CHECK(kappa(TangAut::identity(2, cap)).is_zero());

    KVSolution kv = mu_of_phi(solved(cap, 0));
    ABPair ab = extract_AB(kv.mu);
    CHECK(TangDer({ab.A, ab.B}) == -kappa(taut_inverse(kv.mu)));
    CHECK(ab.A.degree_part(1).is_zero());
    CHECK(ab.B.degree_part(1) == Rational(-1, 2) * gen(cap, 0));
    CHECK(ab.A.coord(Word::letter(0)).is_zero());
    CHECK(ab.B.coord(Word::letter(1)).is_zero());

    // Inn(e^{x+y}) shifts the pair along the s-family
    TangAut shifted = taut_compose(inner(gen(cap, 0) + gen(cap, 1), 2), kv.mu);
    ABPair ab1 = extract_AB(shifted), fam = s_family(ab, Rational(1));
    CHECK(ab1.A == fam.A);
    CHECK(ab1.B == fam.B);
}

TEST_CASE("KV1") {
    int cap = 6;
    for (int which : {0, 1}) {
        ABPair ab = extract_AB(mu_of_phi(solved(cap, which)).mu);
        CHECK(check_kv1(ab).pass);
        for (Rational s : {Rational(1), Rational(-1, 4), Rational(1, 4), Rational(5, 7)})
            CHECK(check_kv1(s_family(ab, s)).pass);
    }
    CheckResult zero = check_kv1({LieElement(2, cap), LieElement(2, cap)});
    CHECK(zero.first_failure_degree == 2);

    ABPair ab = extract_AB(mu_of_phi(solved(cap, 0)).mu);
    ab.B += Rational(1, 9) * lie_bracket(gen(cap, 0), lie_bracket(gen(cap, 0), gen(cap, 1)));
    CHECK(check_kv1(ab).first_failure_degree == 4);
}

TEST_CASE("KV3") {
    int cap = 6;
    CHECK(check_kv3(TangDer(2, cap), PowerSeries(cap)).pass);
    for (int which : {0, 1}) {
        KVSolution kv = mu_of_phi(solved(cap, which));
        ABPair ab = extract_AB(kv.mu);
        TangDer u({ab.A, ab.B});
        CHECK(check_kv3(u, -kv.duflo).pass);
        CHECK(check_kv3(-kappa(taut_inverse(kv.mu)), -kv.duflo).pass);
        CHECK(check_kv3(kappa(taut_inverse(kv.mu)), kv.duflo).pass);
        CHECK(check_kv3(u, kv.duflo).first_failure_degree == 2);
    }
}

TEST_CASE("Bernoulli specialization of the Duflo series") {
    int cap = 8;
    PowerSeries r = mu_of_phi(solved(cap, 0)).duflo;
    // φ = t r'(t) against (1/2)(u/(e^u - 1) - 1 + u/2)
    PowerSeries target = bernoulli_generating(cap);
    target[0] -= Rational(1);
    target[1] += Rational(1, 2);
    target = Rational(1, 2) * target;
    CHECK(r.euler().even_part() == target);
    CHECK(target[2] == Rational(1, 24));
    CHECK(target[4] == Rational(-1, 1440));
    // -Duf is log Γ; its even part is Σ ζ(2n) u^{2n} / 2n
    PowerSeries neg = -r;
    CHECK(neg[2] == Rational(-1, 48));
    CHECK(neg[4] == Rational(1, 5760));
    CHECK(neg.euler().even_part() == -target);
}

TEST_CASE("swap symmetry of the shifted pair") {
    int cap = 6;
    ABPair even = extract_AB(mu_of_phi(solved(cap, 0)).mu);
    CHECK(symmetry_check(s_family(even, Rational(1, 4))).pass);
    // the linear parts (0, -x/2) rule out the other sign already in degree 1
    CHECK(symmetry_check(s_family(even, Rational(-1, 4))).first_failure_degree == 1);
    ABPair odd = extract_AB(mu_of_phi(solved(cap, 1)).mu);
    CHECK(symmetry_check(s_family(odd, Rational(1, 4))).first_failure_degree == 3);
    CHECK(s_family(even, Rational(0)).A == even.A);
}

TEST_CASE("conjugator of the letter sum") {
    std::mt19937_64 rng(11);
    for (int n : {2, 3}) {
        int cap = 4;
        for (int trial = 0; trial < 4; ++trial) {
            TnElement w = random_tn(rng, n + 1, cap);
            LieElement c = sum_conjugator(w);
            NCSeries s(n, cap + 1);
            for (int k = 0; k < n; ++k) s += oracle::x(n, cap + 1, k);
            NCSeries lhs = taut_exp(ad_tn(w, 1)).apply(s);
            NCSeries cc = c.assoc().with_cap(cap + 1);
            CHECK(lhs == nc_exp(cc) * s * nc_exp(-cc));
        }
    }
}
