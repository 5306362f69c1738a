#include "doctest.h"
#include "oracles.hpp"

#include "kvassoc/traces.hpp"

using namespace kvassoc;

namespace {

LieElement gen(int n, int cap, int i) { return LieElement::generator(n, cap, i); }

TangDer random_tder(std::mt19937_64& rng, int n, int cap, int max_deg) {
    std::vector<LieElement> p;
    for (int k = 0; k < n; ++k) p.push_back(oracle::random_lie(rng, n, cap, 3, 1, max_deg));
    return TangDer(p);
}

TangAut random_taut(std::mt19937_64& rng, int n, int cap) {
    std::vector<LieElement> a;
    for (int k = 0; k < n; ++k) a.push_back(oracle::random_lie(rng, n, cap, 3, 1, 3));
    return TangAut::from_exponents(a);
}

TraceElement random_trace(std::mt19937_64& rng, int n, int cap) {
    return trace_project(oracle::random_series(rng, n, cap, 6, 1));
}

PowerSeries random_ps(std::mt19937_64& rng, int cap) {
    PowerSeries r(cap);
    std::uniform_int_distribution<int> d(-4, 4);
    for (int k = 2; k <= cap; ++k) r[k] = Rational(d(rng), 1 + (k % 3));
    return r;
}

}  // namespace

TEST_CASE("cyclic words") {
    int cap = 6;
    TraceElement t(2, cap);
    t.add_term(Word::from({1, 0, 0}), Rational(2));
    t.add_term(Word::from({0, 1, 0}), Rational(-1));
    CHECK(t.terms().size() == 1);
    CHECK(t.coeff(Word::from({0, 0, 1})) == Rational(1));
    std::mt19937_64 rng0(3);
    // commutators vanish
    NCSeries a = oracle::random_series(rng0, 2, cap, 4, 1);
    std::mt19937_64 rng(5);
    NCSeries b = oracle::random_series(rng, 2, cap, 4, 1);
    CHECK(trace_project(commutator(a, b)).is_zero());
    // necklace counts: 2 letters, length 6 has 14 necklaces
    CHECK(cyclic_basis(2, 6).size() == 14);
    CHECK(cyclic_basis(3, 4).size() == 24);
}

TEST_CASE("divergence examples and cocycle property") {
    int cap = 6;
    LieElement x = gen(2, cap, 0), y = gen(2, cap, 1);
    TangDer u({lie_bracket(x, y), LieElement(2, cap)});
    TraceElement expect(2, cap);
    expect.add_term(Word::from({0, 1}), Rational(1));
    CHECK(divergence_j(u) == expect);
    CHECK(divergence_j(TangDer({y, x})).is_zero());

    std::mt19937_64 rng(61);
    for (int t = 0; t < 8; ++t) {
        TangDer v = random_tder(rng, 2, cap, 3), w = random_tder(rng, 2, cap, 3);
        CHECK(divergence_j(lie_bracket(v, w))
              == trace_act(v, divergence_j(w)) - trace_act(w, divergence_j(v)));
    }
}

TEST_CASE("trace action is well defined on classes") {
    std::mt19937_64 rng(67);
    int cap = 6;
    for (int t = 0; t < 6; ++t) {
        TangDer u = random_tder(rng, 3, cap, 2);
        TangAut g = random_taut(rng, 3, cap);
        Word w = Word::from({0, 1, 2, 1});
        TraceElement a(3, cap), b(3, cap);
        a.add_term(w, Rational(1));
        NCSeries rot = NCSeries::monomial(3, cap, w.rotate(1));
        CHECK(trace_act(u, a) == trace_project(u.act(rot)));
        CHECK(trace_act(g, a) == trace_project(g.apply(rot)));
    }
}

TEST_CASE("group Jacobian cocycle") {
    std::mt19937_64 rng(71);
    int cap = 5;
    for (int t = 0; t < 5; ++t) {
        TangAut g = random_taut(rng, 2, cap), h = random_taut(rng, 2, cap);
        CHECK(jacobian_J(taut_compose(h, g)) == jacobian_J(h) + trace_act(h, jacobian_J(g)));
        CHECK(jacobian_J(TangAut::identity(2, cap)).is_zero());
        // J(g^{-1}) = -g^{-1}.J(g)
        TangAut gi = taut_inverse(g);
        CHECK(jacobian_J(gi) == Rational(-1) * trace_act(gi, jacobian_J(g)));
    }
    // leading term of J(exp u) is j(u)
    TangDer u = random_tder(rng, 2, cap, 3);
    TraceElement ju = divergence_j(u);
    int v = ju.valuation();
    CHECK(jacobian_J(taut_exp(u)).degree_part(v) == ju.degree_part(v));
}

TEST_CASE("coboundary operators square to zero") {
    std::mt19937_64 rng(73);
    int cap = 5;
    for (int t = 0; t < 4; ++t) {
        TraceElement f1 = random_trace(rng, 1, cap), f2 = random_trace(rng, 2, cap);
        CHECK(delta(delta(f1)).is_zero());
        CHECK(delta(delta(f2)).is_zero());
        CHECK(delta(delta(f1, DeltaKind::cbh), DeltaKind::cbh).is_zero());
        CHECK(delta(delta(f2, DeltaKind::cbh), DeltaKind::cbh).is_zero());
    }
    // delta<f> = <f(x+y) - f(x) - f(y)> on one letter
    PowerSeries r = random_ps(rng, cap);
    TraceElement tr = trace_of_series(r, NCSeries::letter(1, cap, 0));
    NCSeries x = NCSeries::letter(2, cap, 0), y = NCSeries::letter(2, cap, 1);
    CHECK(delta(tr) == trace_of_series(r, x + y) - trace_of_series(r, x) - trace_of_series(r, y));
    CHECK(delta(tr, DeltaKind::cbh)
          == trace_of_series(r, nc_cbh(x, y)) - trace_of_series(r, x) - trace_of_series(r, y));
}

TEST_CASE("coboundary solver") {
    std::mt19937_64 rng(79);
    int cap = 7;
    for (DeltaKind kind : {DeltaKind::plain, DeltaKind::cbh}) {
        for (int t = 0; t < 3; ++t) {
            PowerSeries r = random_ps(rng, cap);
            TraceElement c = delta(trace_of_series(r, NCSeries::letter(1, cap, 0)), kind);
            auto res = solve_coboundary(c, kind);
            REQUIRE(res.ok);
            CHECK(res.r == r);
        }
    }
    // a non-cocycle is rejected with its degree
    TraceElement bad(2, cap);
    bad.add_term(Word::from({0, 1, 1}), Rational(1));
    auto res = solve_coboundary(bad);
    CHECK_FALSE(res.ok);
    CHECK(res.failure_degree == 3);
}

TEST_CASE("exactness of the trace complex in low degrees") {
    for (int d = 1; d <= 6; ++d) {
        auto e = delta_exactness(d);
        CAPTURE(d);
        CHECK(e.ker_dim_T2 == e.im_dim_T1);
        CHECK(e.ker_dim_T1 == (d == 1 ? 1 : 0));
    }
}
