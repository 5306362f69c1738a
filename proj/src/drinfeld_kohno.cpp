#include "kvassoc/drinfeld_kohno.hpp"

#include <map>
#include <mutex>
#include <set>
#include <sstream>

namespace kvassoc {

namespace {

// images of the letters of f_{k-1} under ad t_{i,m} (1-based, i < m < k)
const std::vector<NCSeries>& generator_derivation(int i, int m, int k, int cap) {
    thread_local std::map<std::tuple<int, int, int, int>, std::vector<NCSeries>> cache;
    auto key = std::make_tuple(i, m, k, cap);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    int L = k - 1;
    std::vector<NCSeries> im(static_cast<std::size_t>(L), NCSeries(L, cap));
    NCSeries xi = NCSeries::letter(L, cap, i - 1), xm = NCSeries::letter(L, cap, m - 1);
    im[static_cast<std::size_t>(i - 1)] = commutator(xi, xm);
    im[static_cast<std::size_t>(m - 1)] = commutator(xm, xi);
    return cache.emplace(key, std::move(im)).first->second;
}

// action of a level-m element (given by its words) on a level-k element y:
// sum_w c_w D_{w_1} ... D_{w_L}(y), grouped on the last letter
NCSeries act_rec(std::vector<std::pair<Word, Rational>>& items, const NCSeries& y, int m, int k) {
    NCSeries out(y.letters(), y.cap());
    if (y.is_zero()) return out;
    int room = y.cap() - y.valuation();
    std::vector<std::vector<std::pair<Word, Rational>>> groups(static_cast<std::size_t>(m - 1));
    for (auto& [w, c] : items) {
        if (w.size() > room) continue;
        if (w.empty()) {
            out += c * y;
            continue;
        }
        groups[static_cast<std::size_t>(w.back())].emplace_back(w.drop_back(), c);
    }
    for (int l = 0; l < m - 1; ++l) {
        auto& g = groups[static_cast<std::size_t>(l)];
        if (g.empty()) continue;
        NCSeries dy = derivation_apply(y, generator_derivation(l + 1, m, k, y.cap()));
        if (dy.is_zero()) continue;
        out += act_rec(g, dy, m, k);
    }
    return out;
}

NCSeries act(const LieElement& P, int m, const LieElement& y, int k) {
    if (P.is_zero() || y.is_zero()) return NCSeries(k - 1, std::min(P.cap(), y.cap()));
    std::vector<std::pair<Word, Rational>> items(P.assoc().terms().begin(), P.assoc().terms().end());
    return act_rec(items, y.assoc().truncated(P.cap()), m, k);
}

}  // namespace

TnElement::TnElement(int strands, int cap) : n_(strands), cap_(cap) {
    if (strands < 2) throw std::invalid_argument("TnElement: need at least 2 strands");
    for (int k = 2; k <= strands; ++k) levels_.emplace_back(k - 1, cap);
}

TnElement TnElement::generator(int n, int cap, int i, int j) {
    if (i > j) std::swap(i, j);
    if (i < 1 || j > n || i == j)
        throw std::out_of_range("tn_gen: invalid strand pair (" + std::to_string(i) + "," + std::to_string(j) +
                                ") for t_" + std::to_string(n));
    TnElement t(n, cap);
    t.level(j) = LieElement::generator(j - 1, cap, i - 1);
    return t;
}

TnElement TnElement::pair_sum(int n, int cap, const std::vector<int>& A, const std::vector<int>& B) {
    TnElement t(n, cap);
    for (int i : A)
        for (int j : B) t = t + generator(n, cap, i, j);
    return t;
}

TnElement TnElement::casimir(int n, int cap) {
    TnElement t(n, cap);
    for (int j = 2; j <= n; ++j)
        for (int i = 1; i < j; ++i) t = t + generator(n, cap, i, j);
    return t;
}

bool TnElement::is_zero() const {
    for (const auto& l : levels_)
        if (!l.is_zero()) return false;
    return true;
}

int TnElement::valuation() const {
    int v = cap_ + 1;
    for (const auto& l : levels_) v = std::min(v, l.valuation());
    return v;
}

TnElement TnElement::truncated(int cap) const {
    TnElement r = *this;
    r.cap_ = std::min(cap, cap_);
    for (auto& l : r.levels_) l = l.truncated(r.cap_);
    return r;
}

TnElement TnElement::degree_part(int d) const {
    TnElement r = *this;
    for (auto& l : r.levels_) l = l.degree_part(d);
    return r;
}

int TnElement::dimension(int n, int d) {
    long s = 0;
    for (int k = 2; k <= n; ++k) s += witt_dimension(k - 1, d);
    return static_cast<int>(s);
}

Vec TnElement::coordinates(int d) const {
    Vec v;
    for (int k = n_; k >= 2; --k) {
        auto c = level(k).coords();
        for (Word w : lyndon_basis(k - 1, d)) {
            auto it = c.find(w);
            v.push_back(it == c.end() ? Rational(0) : it->second);
        }
    }
    return v;
}

TnElement TnElement::from_coordinates(int n, int cap, int d, const Vec& v) {
    TnElement t(n, cap);
    std::size_t pos = 0;
    for (int k = n; k >= 2; --k) {
        LieElement::Coords c;
        for (Word w : lyndon_basis(k - 1, d)) {
            const Rational& r = v.at(pos++);
            if (!r.is_zero()) c.emplace(w, r);
        }
        t.level(k) = LieElement::from_coords(k - 1, cap, c);
    }
    if (pos != v.size()) throw std::invalid_argument("TnElement::from_coordinates: wrong vector length");
    return t;
}

TnElement operator+(const TnElement& a, const TnElement& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("TnElement: strand mismatch");
    TnElement r = a.truncated(b.cap_);
    for (std::size_t i = 0; i < r.levels_.size(); ++i) r.levels_[i] += b.levels_[i];
    return r;
}

TnElement operator-(const TnElement& a, const TnElement& b) { return a + Rational(-1) * b; }

TnElement operator*(const Rational& s, const TnElement& a) {
    TnElement r = a;
    for (auto& l : r.levels_) l = s * l;
    return r;
}

bool operator==(const TnElement& a, const TnElement& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t i = 0; i < a.levels_.size(); ++i)
        if (!(a.levels_[i] == b.levels_[i])) return false;
    return true;
}

std::string TnElement::str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = n_; k >= 2; --k) {
        if (level(k).is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "L" << k << "{" << level(k).str() << "}";
    }
    return first ? "0" : os.str();
}

TnElement lie_bracket(const TnElement& a, const TnElement& b) {
    if (a.strands() != b.strands()) throw std::invalid_argument("tn_bracket: strand mismatch");
    int n = a.strands();
    int cap = std::min(a.cap(), b.cap());
    TnElement r(n, cap);
    for (int k = 2; k <= n; ++k) {
        LieElement X = a.level(k).truncated(cap), Y = b.level(k).truncated(cap);
        NCSeries acc = commutator(X.assoc(), Y.assoc());
        for (int m = 2; m < k; ++m) {
            const LieElement& Xm = a.level(m);
            const LieElement& Ym = b.level(m);
            if (!Xm.is_zero() && !Y.is_zero()) acc += act(Xm.truncated(cap), m, Y, k);
            if (!Ym.is_zero() && !X.is_zero()) acc -= act(Ym.truncated(cap), m, X, k);
        }
        r.level(k) = LieElement::from_primitive(acc.truncated(cap));
    }
    return r;
}

TnElement tn_coface(const TnElement& a, const StrandMap& phi) {
    if (phi.target() != a.strands()) throw std::invalid_argument("tn_coface: map target must equal strand count");
    int m = phi.source();
    if (m < 2) throw std::invalid_argument("tn_coface: source needs at least 2 strands");
    return tn_morphism<TnElement>(a, [&](int i, int j) {
        return TnElement::pair_sum(m, a.cap(), phi.fiber(i), phi.fiber(j));
    });
}

TnElement sn_act(const std::vector<int>& sigma, const TnElement& a) {
    if (static_cast<int>(sigma.size()) != a.strands()) throw std::invalid_argument("sn_act: permutation size");
    // t_ij -> t_{sigma(i) sigma(j)} is the coface along sigma^{-1}
    std::vector<int> inv(sigma.size());
    StrandMap::from_permutation(sigma);
    for (std::size_t i = 0; i < sigma.size(); ++i) inv[static_cast<std::size_t>(sigma[i] - 1)] = static_cast<int>(i) + 1;
    return tn_coface(a, StrandMap::from_permutation(inv));
}

TnElement tn_mul(const TnElement& g, const TnElement& h) { return group_mul(g, h); }
TnElement tn_inv(const TnElement& g) { return -g; }

TangDer ad_tn(const TnElement& a, int base) {
    int n = a.strands() - 1, cap = a.cap();
    if (base < 1 || base > n + 1) throw std::out_of_range("ad_tn: base strand out of range");
    auto idx = [&](int s) { return s < base ? s - 1 : s - 2; };
    return tn_morphism<TangDer>(a, [&](int i, int j) {
        std::vector<LieElement> parts(static_cast<std::size_t>(n), LieElement(n, cap));
        if (i == base || j == base) {
            int other = i == base ? j : i;
            for (auto& p : parts) p = LieElement::generator(n, cap, idx(other));
        } else {
            parts[static_cast<std::size_t>(idx(i))] = -LieElement::generator(n, cap, idx(j));
            parts[static_cast<std::size_t>(idx(j))] = -LieElement::generator(n, cap, idx(i));
        }
        return TangDer(std::move(parts));
    });
}

Vec tder_coordinates(const TangDer& u, int d) {
    Vec v;
    auto basis = lyndon_basis(u.letters(), d);
    for (int k = 0; k < u.letters(); ++k) {
        auto c = u.part(k).coords();
        for (Word w : basis) {
            auto it = c.find(w);
            v.push_back(it == c.end() ? Rational(0) : it->second);
        }
    }
    return v;
}

void ad_kernel_guard(int n, int cap) {
    static std::map<int, int> verified;  // n -> highest verified degree
    static std::mutex mu;
    {
        std::lock_guard lock(mu);
        auto it = verified.find(n);
        if (it != verified.end() && it->second >= cap) return;
    }
    for (int d = 1; d <= cap; ++d) {
        int dim = TnElement::dimension(n + 1, d);
        std::vector<Vec> cols;
        for (int b = 0; b < dim; ++b) {
            Vec e(static_cast<std::size_t>(dim));
            e[static_cast<std::size_t>(b)] = Rational(1);
            cols.push_back(tder_coordinates(ad_tn(TnElement::from_coordinates(n + 1, d, d, e)), d));
        }
        int rows = static_cast<int>(lyndon_basis(n, d).size()) * n;
        auto ker = nullspace(Matrix::from_columns(cols, rows));
        std::size_t expected = d == 1 ? 1 : 0;
        bool ok = ker.size() == expected;
        if (ok && d == 1) ok = ad_tn(TnElement::casimir(n + 1, 1)).is_zero();
        if (!ok)
            throw KernelGuardFailure("kernel of ad on t_" + std::to_string(n + 1) + " in degree " + std::to_string(d) +
                                     " has dimension " + std::to_string(ker.size()) + ", expected " +
                                     std::to_string(expected));
    }
    std::lock_guard lock(mu);
    int& v = verified[n];
    v = std::max(v, cap);
}

int span_rank(const std::vector<TnElement>& v, int d) {
    if (v.empty()) return 0;
    std::vector<Vec> cols;
    for (const auto& e : v) cols.push_back(e.coordinates(d));
    return rank(Matrix::from_columns(cols, TnElement::dimension(v[0].strands(), d)));
}

std::vector<TnElement> centralizer_t(int n, int i, int j, int d) {
    int dim = TnElement::dimension(n, d);
    TnElement t = TnElement::generator(n, d + 1, i, j);
    std::vector<Vec> cols;
    for (int b = 0; b < dim; ++b) {
        Vec e(static_cast<std::size_t>(dim));
        e[static_cast<std::size_t>(b)] = Rational(1);
        cols.push_back(lie_bracket(TnElement::from_coordinates(n, d + 1, d, e), t).coordinates(d + 1));
    }
    auto ker = nullspace(Matrix::from_columns(cols, TnElement::dimension(n, d + 1)));
    std::vector<TnElement> out;
    for (const auto& v : ker) out.push_back(TnElement::from_coordinates(n, d, d, v));
    return out;
}

std::vector<TnElement> centralizer_prediction(int n, int i, int j, int d) {
    std::vector<TnElement> out;
    if (d == 1) out.push_back(TnElement::generator(n, d, i, j));
    if (n <= 2) return out;
    std::vector<std::vector<int>> blocks{{i, j}};
    for (int s = 1; s <= n; ++s)
        if (s != i && s != j) blocks.push_back({s});
    StrandMap phi = StrandMap::from_blocks(n, blocks);
    int dim = TnElement::dimension(n - 1, d);
    for (int b = 0; b < dim; ++b) {
        Vec e(static_cast<std::size_t>(dim));
        e[static_cast<std::size_t>(b)] = Rational(1);
        out.push_back(tn_coface(TnElement::from_coordinates(n - 1, d, d, e), phi));
    }
    return out;
}

}  // namespace kvassoc
