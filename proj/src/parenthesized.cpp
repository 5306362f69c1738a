#include "kvassoc/parenthesized.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace kvassoc {

namespace {

const std::string kLeaf = "\xE2\x80\xA2";  // •

CheckResult taut_equal(const TangAut& a, const TangAut& b) {
    return CheckResult::from_degree(first_difference_degree(a, b));
}

CheckResult worst(const CheckResult& a, const CheckResult& b) {
    if (a.pass) return b;
    if (b.pass) return a;
    return {false, std::min(a.first_failure_degree, b.first_failure_degree)};
}

std::vector<int> iota_from(int first, int count) {
    std::vector<int> v(static_cast<std::size_t>(count));
    std::iota(v.begin(), v.end(), first);
    return v;
}

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ParenWord run() {
        ParenWord w = sequence();
        skip();
        if (pos_ != s_.size()) fail("unexpected ')'");
        return w;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("ParenWord::parse: " + why + " in '" + s_ + "'");
    }
    void skip() {
        while (pos_ < s_.size() && s_[pos_] == ' ') ++pos_;
    }
    // one or two items; a bare top level or a parenthesized group
    ParenWord sequence() {
        std::vector<ParenWord> items;
        for (;;) {
            skip();
            if (pos_ >= s_.size() || s_[pos_] == ')') break;
            items.push_back(item());
        }
        if (items.empty()) fail("empty group");
        if (items.size() > 2) fail("group with more than two members");
        return items.size() == 1 ? items[0] : ParenWord::join(items[0], items[1]);
    }
    ParenWord item() {
        if (s_.compare(pos_, kLeaf.size(), kLeaf) == 0) {
            pos_ += kLeaf.size();
            return ParenWord::leaf();
        }
        char c = s_[pos_];
        if (c == '*' || c == '.') {
            ++pos_;
            return ParenWord::leaf();
        }
        if (c == '(') {
            ++pos_;
            ParenWord w = sequence();
            if (w.is_leaf()) fail("parenthesized single leaf");
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
            ++pos_;
            return w;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

// one right rotation (AB)C -> A(BC), chosen by strategy; leaves numbered from offset
std::optional<ParenWord> rotate_once(const ParenWord& t, int offset, PathStrategy strategy,
                                     Rotation& step) {
    if (t.is_leaf()) return std::nullopt;
    auto here = [&]() -> std::optional<ParenWord> {
        if (t.left().is_leaf()) return std::nullopt;
        const ParenWord& a = t.left().left();
        const ParenWord& b = t.left().right();
        const ParenWord& c = t.right();
        step.A = iota_from(offset, a.leaves());
        step.B = iota_from(offset + a.leaves(), b.leaves());
        step.C = iota_from(offset + a.leaves() + b.leaves(), c.leaves());
        step.forward = true;
        return ParenWord::join(a, ParenWord::join(b, c));
    };
    auto below = [&]() -> std::optional<ParenWord> {
        if (auto l = rotate_once(t.left(), offset, strategy, step)) return ParenWord::join(*l, t.right());
        if (auto r = rotate_once(t.right(), offset + t.left().leaves(), strategy, step))
            return ParenWord::join(t.left(), *r);
        return std::nullopt;
    };
    if (strategy == PathStrategy::outermost) {
        if (auto h = here()) return h;
        return below();
    }
    if (auto b = below()) return b;
    return here();
}

std::vector<Rotation> to_comb(ParenWord t, PathStrategy strategy) {
    std::vector<Rotation> out;
    Rotation step;
    while (auto next = rotate_once(t, 1, strategy, step)) {
        out.push_back(step);
        t = *next;
    }
    return out;
}

// O' as an indexed list of internal nodes with their leaf sets
void collect_nodes(const ParenWord& t, int offset, int depth, std::vector<TelescopicFactor>& out) {
    if (t.is_leaf()) return;
    out.push_back({iota_from(offset, t.left().leaves()), iota_from(offset + t.left().leaves(), t.right().leaves()),
                   depth});
    collect_nodes(t.left(), offset, depth + 1, out);
    collect_nodes(t.right(), offset + t.left().leaves(), depth + 1, out);
}

TelescopicResult telescopic(const TangAut& two_letter, const ParenWord& Oprime, CofaceVariant variant) {
    int n = Oprime.leaves();
    if (n < 2) throw std::invalid_argument("telescopic product: tree needs at least two leaves");
    TelescopicResult out;
    out.factors = telescopic_factors(Oprime);
    std::vector<TangAut> faces;
    for (const auto& f : out.factors)
        faces.push_back(taut_coface(two_letter, StrandMap::from_blocks(n, {f.L, f.R}), variant));
    out.value = TangAut::identity(n, two_letter.cap());
    for (const auto& g : faces) out.value = taut_compose(out.value, g);
    for (std::size_t a = 0; a < faces.size(); ++a)
        for (std::size_t b = a + 1; b < faces.size(); ++b)
            if (out.factors[a].depth == out.factors[b].depth)
                out.same_depth_commute = worst(
                    out.same_depth_commute,
                    taut_equal(taut_compose(faces[a], faces[b]), taut_compose(faces[b], faces[a])));
    return out;
}

TangAut adjoint(const TnElement& w) { return taut_exp(ad_tn(w, 1)); }

}  // namespace

ParenWord ParenWord::leaf() { return ParenWord{}; }

ParenWord ParenWord::join(const ParenWord& l, const ParenWord& r) {
    ParenWord w;
    w.kids_ = {l, r};
    w.leaves_ = l.leaves_ + r.leaves_;
    return w;
}

ParenWord ParenWord::parse(const std::string& text) { return Parser(text).run(); }

ParenWord ParenWord::right_comb(int n) {
    if (n < 1) throw std::invalid_argument("ParenWord::right_comb: need at least one leaf");
    ParenWord w = leaf();
    for (int k = 1; k < n; ++k) w = join(leaf(), w);
    return w;
}

std::vector<ParenWord> ParenWord::all(int n) {
    if (n < 1) throw std::invalid_argument("ParenWord::all: need at least one leaf");
    if (n == 1) return {leaf()};
    std::vector<ParenWord> out;
    for (int k = 1; k < n; ++k)
        for (const auto& l : all(k))
            for (const auto& r : all(n - k)) out.push_back(join(l, r));
    return out;
}

ParenWord ParenWord::doubled(int i) const {
    if (i < 1 || i > leaves_) throw std::invalid_argument("ParenWord::doubled: leaf out of range");
    if (is_leaf()) return join(leaf(), leaf());
    if (i <= left().leaves_) return join(left().doubled(i), right());
    return join(left(), right().doubled(i - left().leaves_));
}

std::string ParenWord::body() const {
    if (is_leaf()) return kLeaf;
    auto part = [](const ParenWord& w) { return w.is_leaf() ? kLeaf : "(" + w.body() + ")"; };
    return part(left()) + part(right());
}

std::string ParenWord::str() const { return body(); }

std::vector<Rotation> move_path(const ParenWord& from, const ParenWord& to, PathStrategy strategy) {
    if (from.leaves() != to.leaves()) throw std::invalid_argument("move_path: leaf counts differ");
    std::vector<Rotation> path = to_comb(from, strategy);
    std::vector<Rotation> back = to_comb(to, strategy);
    for (auto it = back.rbegin(); it != back.rend(); ++it) {
        Rotation r = *it;
        r.forward = false;
        path.push_back(r);
    }
    return path;
}

TnElement phi_OO(const Associator& phi, const ParenWord& from, const ParenWord& to, PathStrategy strategy) {
    int n = from.leaves();
    if (n < 3) {
        if (from.leaves() != to.leaves()) throw std::invalid_argument("phi_OO: leaf counts differ");
        return TnElement(std::max(n, 2), phi.cap());
    }
    std::vector<TnElement> factors;  // leftmost = last step
    for (const Rotation& r : move_path(from, to, strategy)) {
        TnElement f = phi_coface(phi.log, n, r.A, r.B, r.C);
        factors.insert(factors.begin(), r.forward ? f : -f);
    }
    if (factors.empty()) return TnElement(n, phi.cap());
    return tn_product(factors);
}

TangAut mu_right_comb(const Associator& phi, int letters) {
    if (letters < 1) throw std::invalid_argument("mu_right_comb: need at least one letter");
    TangAut mu2 = mu_automorphism(phi);
    TangAut out = TangAut::identity(letters, phi.cap());
    for (int i = 1; i < letters; ++i)
        out = taut_compose(out, taut_coface(mu2, StrandMap::from_blocks(letters, {{i}, iota_from(i + 1, letters - i)}),
                                            CofaceVariant::additive));
    return out;
}

TangAut mu_O(const Associator& phi, const ParenWord& O) {
    int n = O.leaves() - 1;
    if (n < 1) throw std::invalid_argument("mu_O: tree needs at least two leaves");
    TangAut comb = mu_right_comb(phi, n);
    if (n < 2) return comb;
    return taut_compose(adjoint(phi_OO(phi, ParenWord::right_comb(n + 1), O)), comb);
}

CheckResult identity4_check(const Associator& phi, const ParenWord& O, int i) {
    int n = O.leaves() - 1;
    if (i < 1 || i > n) throw std::invalid_argument("identity4_check: letter out of range");
    TangAut lhs = mu_O(phi, O.doubled(i + 1));
    std::vector<std::vector<int>> merge;
    for (int j = 1; j <= n; ++j) {
        if (j < i) merge.push_back({j});
        else if (j == i) merge.push_back({i, i + 1});
        else merge.push_back({j + 1});
    }
    TangAut outer = taut_coface(mu_O(phi, O), StrandMap::from_blocks(n + 1, merge), CofaceVariant::additive);
    TangAut inner_face =
        taut_coface(mu_automorphism(phi), StrandMap::from_blocks(n + 1, {{i}, {i + 1}}), CofaceVariant::additive);
    return taut_equal(lhs, taut_compose(outer, inner_face));
}

std::vector<TelescopicFactor> telescopic_factors(const ParenWord& Oprime) {
    std::vector<TelescopicFactor> out;
    collect_nodes(Oprime, 1, 0, out);
    std::stable_sort(out.begin(), out.end(), [](const TelescopicFactor& a, const TelescopicFactor& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.L.front() < b.L.front();
    });
    return out;
}

TelescopicResult telescopic_mu(const Associator& phi, const ParenWord& Oprime) {
    return telescopic(mu_automorphism(phi), Oprime, CofaceVariant::additive);
}

TelescopicResult alpha_f_O(const GTElement& f, const ParenWord& Oprime) {
    return telescopic(alpha_of_f(f), Oprime, CofaceVariant::cbh);
}

JacobianCheck jacobian_mu_O(const Associator& phi, const ParenWord& O) {
    int n = O.leaves() - 1, cap = phi.cap();
    JacobianCheck out;
    out.J = jacobian_J(mu_O(phi, O));
    PowerSeries lg = gamma_of_phi(phi).log_gamma;
    NCSeries sum = NCSeries::letter(n, cap, 0);
    TraceElement rhs = trace_of_series(lg, sum);
    for (int k = 1; k < n; ++k) {
        NCSeries x = NCSeries::letter(n, cap, k);
        sum += x;
        rhs = rhs + trace_of_series(lg, x);
    }
    rhs = rhs - trace_of_series(lg, sum);
    out.formula = CheckResult::from_difference(out.J - rhs);
    return out;
}

JacobianCheck jacobian_alpha(const GTElement& f, const ParenWord& Oprime) {
    int n = Oprime.leaves(), cap = f.cap();
    JacobianCheck out;
    out.J = jacobian_J(alpha_f_O(f, Oprime).value);
    PowerSeries lg = gamma_of_f(f).log_gamma;
    TraceElement rhs = trace_of_series(lg, NCSeries::letter(n, cap, 0));
    NCSeries z = NCSeries::letter(n, cap, 0);
    for (int k = 1; k < n; ++k) {
        NCSeries x = NCSeries::letter(n, cap, k);
        rhs = rhs + trace_of_series(lg, x);
        z = nc_cbh(z, x);
    }
    rhs = rhs - trace_of_series(lg, z);
    out.formula = CheckResult::from_difference(out.J - rhs);
    return out;
}

CheckResult identity22_check(const GTElement& f) {
    int cap = f.cap();
    TangAut alpha = alpha_of_f(f);
    auto face = [&alpha](const char* blocks) {
        return taut_coface(alpha, StrandMap::parse(blocks, 3), CofaceVariant::cbh);
    };
    // x_12, x_23 of PB_3 sit in PB_4 as x_23, x_34 next to the base strand
    TangAut conj = group_word_eval(f.log, malcev_taut(PBWord::parse(4, "x23"), cap),
                                   malcev_taut(PBWord::parse(4, "x34"), cap));
    TangAut lhs = taut_compose(conj, taut_compose(face("12,3"), face("1,2")));
    TangAut rhs = taut_compose(face("1,23"), face("2,3"));
    return taut_equal(lhs, rhs);
}

CheckResult torsor_mu_O_check(const GTElement& f, const Associator& phi, const ParenWord& Oprime) {
    ParenWord O = ParenWord::join(ParenWord::leaf(), Oprime);
    Associator twisted = act_gt(f, phi);
    TangAut lhs = mu_O(twisted, O);
    TangAut rhs = taut_compose(mu_O(phi, O), alpha_f_O(f, Oprime).value);
    return taut_equal(lhs, rhs);
}

CheckResult cabling_coface_check(const PBWord& w, const std::vector<int>& mult, int cap) {
    if (static_cast<int>(mult.size()) != w.strands())
        throw std::invalid_argument("cabling_coface_check: one multiplicity per strand");
    if (mult.front() != 1) throw std::invalid_argument("cabling_coface_check: the base strand must stay single");
    PBWord cabled = cabling(w, mult);
    int letters = cabled.strands() - 1;
    std::vector<std::vector<int>> blocks;
    int next = 1;
    for (std::size_t k = 1; k < mult.size(); ++k) {
        blocks.push_back(iota_from(next, mult[k]));
        next += mult[k];
    }
    // ι: X_j -> product over the fiber of j, on Malcev logs
    std::vector<LieElement> iota = coface_letters(StrandMap::from_blocks(letters, blocks), cap + 1, CofaceVariant::cbh);
    TangAut big = malcev_taut(cabled, cap), small = malcev_taut(w, cap);
    CheckResult out;
    for (int j = 0; j < small.letters(); ++j) {
        LieElement lhs = big.apply(iota[static_cast<std::size_t>(j)]);
        LieElement rhs = small.apply(LieElement::generator(small.letters(), cap + 1, j)).substitute(iota);
        out = worst(out, CheckResult::from_difference(lhs - rhs));
    }
    return out;
}

CentralizerReport check_centralizer_pb(int n, int cap) {
    if (n < 3) throw std::invalid_argument("check_centralizer_pb: need n >= 3");
    CentralizerReport rep;
    for (int d = 1; d <= cap; ++d) {
        auto comp = centralizer_t(n, 1, 2, d);
        auto pred = centralizer_prediction(n, 1, 2, d);
        std::vector<TnElement> both = comp;
        both.insert(both.end(), pred.begin(), pred.end());
        CentralizerRow row{d, span_rank(comp, d), span_rank(pred, d), false};
        row.contained = span_rank(both, d) == row.computed;
        if (rep.dimensions.pass && (!row.contained || row.computed != row.predicted)) rep.dimensions = {false, d};
        rep.rows.push_back(row);
    }

    // group side: PB_n next to a base strand, so strand k of PB_n is strand k + 1 here
    auto shift = [](const PBWord& h) {
        std::vector<PBLetter> l;
        for (PBLetter x : h.letters()) {
            x.i += 1;
            x.j += 1;
            l.push_back(x);
        }
        return PBWord(h.strands() + 1, l);
    };
    PBWord x12 = PBWord::generator(n + 1, 2, 3);
    TangAut a12 = malcev_taut(x12, cap);
    std::vector<PBWord> hs;
    for (int i = 1; i < n - 1; ++i)
        for (int j = i + 1; j <= n - 1; ++j) hs.push_back(PBWord::generator(n - 1, i, j));
    hs.push_back(hs.front() * hs.back().inverse() * hs.front());
    std::vector<int> mult(static_cast<std::size_t>(n), 1);
    mult[1] = 2;
    for (const PBWord& h : hs)
        for (int lambda : {1, -2}) {
            PBWord cabled = cabling(shift(h), mult);
            TangAut g = malcev_taut(x12.pow(lambda) * cabled, cap);
            rep.commuting = worst(rep.commuting, taut_equal(taut_compose(g, a12), taut_compose(a12, g)));
        }
    TangAut a13 = malcev_taut(PBWord::generator(n + 1, 2, 4), cap);
    rep.negative_control = taut_equal(taut_compose(a13, a12), taut_compose(a12, a13));
    return rep;
}

}  // namespace kvassoc
