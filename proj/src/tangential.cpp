#include "kvassoc/tangential.hpp"

#include <sstream>

namespace kvassoc {

namespace {

// sum_m (ad a)^m x / m!, exact through the cap of the inputs
NCSeries conjugate(const NCSeries& a, const NCSeries& x) {
    NCSeries sum = x, term = x;
    for (int m = 1; m <= x.cap(); ++m) {
        term = Rational(1, m) * commutator(a, term);
        if (term.is_zero()) break;
        sum += term;
    }
    return sum;
}

// words of z ending in x_k, with that letter removed
NCSeries strip_right(const NCSeries& z, int k) {
    NCSeries out(z.letters(), z.cap());
    for (const auto& [w, c] : z.terms())
        if (!w.empty() && w.back() == k) out.add_term(w.drop_back(), c);
    return out;
}

void check_parts(const std::vector<LieElement>& parts, const char* who) {
    for (const auto& p : parts)
        if (p.letters() != static_cast<int>(parts.size()))
            throw std::invalid_argument(std::string(who) + ": part alphabet must match the number of parts");
}

int min_cap(const std::vector<LieElement>& parts) {
    int cap = parts.empty() ? 0 : parts[0].cap();
    for (const auto& p : parts) cap = std::min(cap, p.cap());
    return cap;
}

std::vector<NCSeries> exp_images(const TangDer& u) {
    int n = u.letters(), cap = u.cap() + 1;
    std::vector<NCSeries> out;
    for (int k = 0; k < n; ++k) {
        NCSeries term = NCSeries::letter(n, cap, k), sum = term;
        for (int m = 1; m < cap; ++m) {
            term = Rational(1, m) * u.act(term);
            if (term.is_zero()) break;
            sum += term;
        }
        out.push_back(sum);
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------- TangDer

TangDer::TangDer(int letters, int cap) : cap_(cap) {
    for (int k = 0; k < letters; ++k) parts_.emplace_back(letters, cap);
}

TangDer::TangDer(std::vector<LieElement> parts) : cap_(min_cap(parts)), parts_(std::move(parts)) {
    check_parts(parts_, "TangDer");
    for (std::size_t k = 0; k < parts_.size(); ++k) {
        LieElement& p = parts_[k];
        p = p.truncated(cap_);
        Word xk = Word::letter(static_cast<int>(k));
        Rational lam = p.assoc().coeff(xk);
        if (!lam.is_zero()) p -= lam * LieElement::generator(letters(), cap_, static_cast<int>(k));
    }
}

TangDer tder_normalize(std::vector<LieElement> parts) { return TangDer(std::move(parts)); }

bool TangDer::is_zero() const {
    for (const auto& p : parts_)
        if (!p.is_zero()) return false;
    return true;
}

int TangDer::valuation() const {
    int v = cap_ + 1;
    for (const auto& p : parts_) v = std::min(v, p.valuation());
    return v;
}

TangDer TangDer::truncated(int cap) const {
    TangDer r = *this;
    r.cap_ = std::min(cap, cap_);
    for (auto& p : r.parts_) p = p.truncated(r.cap_);
    return r;
}

TangDer TangDer::degree_part(int d) const {
    TangDer r = *this;
    for (auto& p : r.parts_) p = p.degree_part(d);
    return r;
}

std::vector<NCSeries> TangDer::generator_images() const {
    std::vector<NCSeries> out;
    int n = letters();
    for (int k = 0; k < n; ++k)
        out.push_back(commutator(parts_[static_cast<std::size_t>(k)].assoc().with_cap(cap_ + 1),
                                 NCSeries::letter(n, cap_ + 1, k)));
    return out;
}

NCSeries TangDer::act(const NCSeries& z) const {
    if (z.letters() != letters()) throw std::invalid_argument("TangDer::act: alphabet mismatch");
    return derivation_apply(z, generator_images());
}

LieElement TangDer::act(const LieElement& z) const { return LieElement::from_primitive(act(z.assoc())); }

TangDer operator+(const TangDer& a, const TangDer& b) {
    if (a.letters() != b.letters()) throw std::invalid_argument("TangDer: letter mismatch");
    std::vector<LieElement> p;
    for (int k = 0; k < a.letters(); ++k) p.push_back(a.part(k) + b.part(k));
    TangDer r;
    r.cap_ = std::min(a.cap_, b.cap_);
    r.parts_ = std::move(p);
    return r;
}

TangDer operator-(const TangDer& a, const TangDer& b) { return a + Rational(-1) * b; }

TangDer operator*(const Rational& s, const TangDer& a) {
    TangDer r = a;
    for (auto& p : r.parts_) p = s * p;
    return r;
}

bool operator==(const TangDer& a, const TangDer& b) {
    if (a.letters() != b.letters()) return false;
    for (int k = 0; k < a.letters(); ++k)
        if (!(a.part(k) == b.part(k))) return false;
    return true;
}

std::string TangDer::str() const {
    std::ostringstream os;
    os << "[[";
    for (std::size_t k = 0; k < parts_.size(); ++k) os << (k ? " ; " : "") << parts_[k].str();
    os << "]]";
    return os.str();
}

TangDer lie_bracket(const TangDer& u, const TangDer& v) {
    if (u.letters() != v.letters()) throw std::invalid_argument("TangDer bracket: letter mismatch");
    std::vector<LieElement> w;
    for (int k = 0; k < u.letters(); ++k)
        w.push_back(u.act(v.part(k)) - v.act(u.part(k)) + lie_bracket(v.part(k), u.part(k)));
    return TangDer(std::move(w));
}

// ---------------------------------------------------------------- TangAut

LieElement normalize_exponent(const LieElement& a, int k) {
    Rational lam = a.assoc().coeff(Word::letter(k));
    if (lam.is_zero()) return a;
    return lie_cbh(a, -lam * LieElement::generator(a.letters(), a.cap(), k));
}

TangAut TangAut::identity(int letters, int cap) {
    TangAut g;
    g.cap_ = cap;
    for (int k = 0; k < letters; ++k) g.a_.emplace_back(letters, cap);
    return g;
}

TangAut TangAut::from_exponents(std::vector<LieElement> exponents) {
    check_parts(exponents, "TangAut");
    TangAut g;
    g.cap_ = min_cap(exponents);
    for (std::size_t k = 0; k < exponents.size(); ++k)
        g.a_.push_back(normalize_exponent(exponents[k].truncated(g.cap_), static_cast<int>(k)));
    return g;
}

LieElement solve_ad(const NCSeries& w, int k) {
    if (w.is_zero()) return LieElement(w.letters(), w.cap());
    NCSeries base = strip_right(w, k);
    NCSeries u = base;
    NCSeries xk = NCSeries::letter(w.letters(), w.cap(), k);
    for (int it = 0; it <= w.cap(); ++it) {
        NCSeries next = base + xk * strip_right(u, k);
        if (next == u) break;
        u = next;
    }
    if (!(commutator(u, xk) == w))
        throw NotTangential(w.valuation() - 1, "no solution of [u, x_" + std::to_string(k + 1) +
                                                   "] = w at degree " + std::to_string(w.valuation()));
    LieElement le;
    try {
        le = LieElement::from_assoc(u);
    } catch (const NotPrimitive& e) {
        throw NotTangential(e.degree, std::string("solution of [u, x_k] = w is not a Lie element: ") + e.what());
    }
    Rational lam = le.assoc().coeff(Word::letter(k));
    if (!lam.is_zero()) le -= lam * LieElement::generator(w.letters(), w.cap(), k);
    return le;
}

TangAut TangAut::from_images(const std::vector<NCSeries>& images, int cap) {
    int n = static_cast<int>(images.size());
    std::vector<LieElement> a;
    for (int k = 0; k < n; ++k) {
        const NCSeries& W = images[static_cast<std::size_t>(k)];
        if (W.letters() != n) throw std::invalid_argument("TangAut::from_images: alphabet mismatch");
        if (W.cap() < cap + 1) throw std::invalid_argument("TangAut::from_images: images known only to degree " +
                                                           std::to_string(W.cap()));
        NCSeries x = NCSeries::letter(n, cap + 1, k);
        if (!(W.truncated(1) == x.truncated(1)))
            throw NotTangential(0, "image of x_" + std::to_string(k + 1) + " does not start with x_" +
                                       std::to_string(k + 1));
        NCSeries ak(n, cap + 1);
        for (int d = 1; d <= cap; ++d) {
            NCSeries diff = (W.truncated(cap + 1) - conjugate(ak.truncated(d + 1), x.truncated(d + 1))).degree_part(d + 1);
            LieElement step = solve_ad(diff, k);
            ak += step.assoc().with_cap(cap + 1);
        }
        a.push_back(LieElement::from_primitive(ak.with_cap(cap)));
    }
    return from_exponents(std::move(a));
}

std::vector<NCSeries> TangAut::generator_images() const {
    std::vector<NCSeries> out;
    int n = letters();
    for (int k = 0; k < n; ++k)
        out.push_back(conjugate(a_[static_cast<std::size_t>(k)].assoc().with_cap(cap_ + 1),
                                NCSeries::letter(n, cap_ + 1, k)));
    return out;
}

NCSeries TangAut::apply(const NCSeries& z) const {
    if (z.letters() != letters()) throw std::invalid_argument("TangAut::apply: alphabet mismatch");
    return z.truncated(cap_ + 1).substitute(generator_images());
}

LieElement TangAut::apply(const LieElement& z) const { return LieElement::from_primitive(apply(z.assoc())); }

TangAut TangAut::truncated(int cap) const {
    TangAut g = *this;
    g.cap_ = std::min(cap, cap_);
    for (auto& e : g.a_) e = e.truncated(g.cap_);
    return g;
}

bool TangAut::is_identity() const {
    for (const auto& e : a_)
        if (!e.is_zero()) return false;
    return true;
}

bool operator==(const TangAut& a, const TangAut& b) {
    if (a.letters() != b.letters()) return false;
    int cap = std::min(a.cap_, b.cap_);
    for (int k = 0; k < a.letters(); ++k)
        if (!(a.exponent(k).truncated(cap) == b.exponent(k).truncated(cap))) return false;
    return true;
}

std::string TangAut::str() const {
    std::ostringstream os;
    os << "exp[[";
    for (std::size_t k = 0; k < a_.size(); ++k) os << (k ? " ; " : "") << a_[k].str();
    os << "]]";
    return os.str();
}

TangAut taut_compose(const TangAut& g, const TangAut& h) {
    if (g.letters() != h.letters()) throw std::invalid_argument("taut_compose: letter mismatch");
    int cap = std::min(g.cap(), h.cap());
    TangAut gg = g.truncated(cap);
    std::vector<LieElement> c;
    for (int k = 0; k < g.letters(); ++k)
        c.push_back(lie_cbh(gg.apply(h.exponent(k).truncated(cap)), gg.exponent(k)));
    return TangAut::from_exponents(std::move(c));
}

TangAut taut_inverse(const TangAut& g) {
    int n = g.letters();
    TangAut h = TangAut::identity(n, g.cap());
    for (int it = 0; it < g.cap(); ++it) {
        std::vector<LieElement> b;
        for (int k = 0; k < n; ++k) b.push_back(-h.apply(g.exponent(k)));
        h = TangAut::from_exponents(std::move(b));
    }
    return h;
}

TangAut taut_exp(const TangDer& u) { return TangAut::from_images(exp_images(u), u.cap()); }

TangDer taut_log(const TangAut& g) {
    int n = g.letters(), cap = g.cap();
    std::vector<NCSeries> target = g.generator_images();
    std::vector<LieElement> parts(static_cast<std::size_t>(n), LieElement(n, cap));
    for (int d = 1; d <= cap; ++d) {
        std::vector<NCSeries> cur = exp_images(TangDer(parts).truncated(d));
        for (int k = 0; k < n; ++k) {
            NCSeries diff = (target[static_cast<std::size_t>(k)].truncated(d + 1) - cur[static_cast<std::size_t>(k)])
                                .degree_part(d + 1);
            parts[static_cast<std::size_t>(k)] += solve_ad(diff, k).with_cap(cap);
        }
    }
    return TangDer(std::move(parts));
}

int first_difference_degree(const TangAut& a, const TangAut& b) {
    if (a.letters() != b.letters()) throw std::invalid_argument("first_difference_degree: letter mismatch");
    int cap = std::min(a.cap(), b.cap());
    int best = -1;
    for (int k = 0; k < a.letters(); ++k) {
        NCSeries d = a.exponent(k).truncated(cap).assoc() - b.exponent(k).truncated(cap).assoc();
        if (d.is_zero()) continue;
        int v = d.valuation();
        if (best < 0 || v < best) best = v;
    }
    return best;
}

TangAut inner(const LieElement& w_log, int letters) {
    if (w_log.letters() != letters) throw std::invalid_argument("inner: alphabet mismatch");
    return TangAut::from_exponents(std::vector<LieElement>(static_cast<std::size_t>(letters), w_log));
}

std::vector<LieElement> coface_letters(const StrandMap& phi, int cap, CofaceVariant variant) {
    int m = phi.source();
    std::vector<LieElement> X;
    for (int j = 1; j <= phi.target(); ++j) {
        const auto& fib = phi.fiber(j);
        LieElement v(m, cap);
        if (variant == CofaceVariant::additive || fib.size() <= 1) {
            for (int l : fib) v += LieElement::generator(m, cap, l - 1);
        } else {
            std::vector<LieElement> gens;
            for (int l : fib) gens.push_back(LieElement::generator(m, cap, l - 1));
            v = eval_lie(universal_cbh(static_cast<int>(fib.size()), cap), gens);
        }
        X.push_back(std::move(v));
    }
    return X;
}

TangDer tder_coface(const TangDer& u, const StrandMap& phi) {
    return tder_coface(u, phi, CofaceVariant::additive);
}

TangDer tder_coface(const TangDer& u, const StrandMap& phi, CofaceVariant variant) {
    if (phi.target() != u.letters()) throw std::invalid_argument("tder_coface: map target size mismatch");
    auto X = coface_letters(phi, u.cap(), variant);
    std::vector<LieElement> b;
    for (int l = 1; l <= phi.source(); ++l) {
        int j = phi(l);
        b.push_back(j ? u.part(j - 1).substitute(X) : LieElement(phi.source(), u.cap()));
    }
    return TangDer(std::move(b));
}

TangAut taut_coface(const TangAut& g, const StrandMap& phi, CofaceVariant variant) {
    if (phi.target() != g.letters()) throw std::invalid_argument("taut_coface: map target size mismatch");
    auto X = coface_letters(phi, g.cap(), variant);
    std::vector<LieElement> b;
    for (int l = 1; l <= phi.source(); ++l) {
        int j = phi(l);
        b.push_back(j ? g.exponent(j - 1).substitute(X) : LieElement(phi.source(), g.cap()));
    }
    return TangAut::from_exponents(std::move(b));
}

TangAut group_word_eval(const LieElement& word_log, const TangAut& g, const TangAut& h) {
    if (word_log.letters() != 2) throw std::invalid_argument("group_word_eval: word must have two letters");
    return taut_exp(eval_lie(word_log, std::vector<TangDer>{taut_log(g), taut_log(h)}));
}

}  // namespace kvassoc
