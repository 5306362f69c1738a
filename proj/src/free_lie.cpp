#include "kvassoc/free_lie.hpp"

#include "accumulator.hpp"

#include <mutex>
#include <sstream>
#include <unordered_map>

namespace kvassoc {

bool is_lyndon(Word w) {
    if (w.empty()) return false;
    for (int k = 1; k < w.size(); ++k)
        if (!(w < w.rotate(k))) return false;
    return true;
}

std::vector<Word> lyndon_basis(int n, int d) {
    std::vector<Word> out;
    if (n < 1 || d < 1) return out;
    // Duval's generation of Lyndon words of length <= d in lex order
    std::vector<int> w{-1};
    while (!w.empty()) {
        ++w.back();
        if (static_cast<int>(w.size()) == d) out.push_back(Word::from(w));
        std::size_t m = w.size();
        while (static_cast<int>(w.size()) < d) w.push_back(w[w.size() - m]);
        while (!w.empty() && w.back() == n - 1) w.pop_back();
    }
    return out;
}

long witt_dimension(int n, int d) {
    // (1/d) sum_{e | d} mu(e) n^{d/e}
    auto mobius = [](int m) {
        int r = 1;
        for (int p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            m /= p;
            if (m % p == 0) return 0;
            r = -r;
        }
        return m > 1 ? -r : r;
    };
    long s = 0;
    for (int e = 1; e <= d; ++e) {
        if (d % e) continue;
        long p = 1;
        for (int k = 0; k < d / e; ++k) p *= n;
        s += mobius(e) * p;
    }
    return s / d;
}

std::pair<Word, Word> standard_factorization(Word w) {
    for (int k = 1; k < w.size(); ++k) {
        Word v = w.sub(k, w.size() - k);
        if (is_lyndon(v)) return {w.sub(0, k), v};
    }
    throw std::invalid_argument("standard_factorization: word of length < 2");
}

const std::vector<std::pair<Word, long>>& lyndon_expansion(Word w) {
    static std::unordered_map<Word, std::vector<std::pair<Word, long>>, WordHash> cache;
    static std::mutex mu;
    {
        std::lock_guard lock(mu);
        auto it = cache.find(w);
        if (it != cache.end()) return it->second;
    }
    std::vector<std::pair<Word, long>> exp;
    if (w.size() == 1) {
        exp.emplace_back(w, 1);
    } else {
        auto [u, v] = standard_factorization(w);
        const auto& pu = lyndon_expansion(u);
        const auto& pv = lyndon_expansion(v);
        std::map<Word, long> acc;
        for (const auto& [a, ca] : pu)
            for (const auto& [b, cb] : pv) {
                acc[a.concat(b)] += ca * cb;
                acc[b.concat(a)] -= ca * cb;
            }
        for (const auto& [x, c] : acc)
            if (c) exp.emplace_back(x, c);
    }
    std::lock_guard lock(mu);
    return cache.emplace(w, std::move(exp)).first->second;
}

LieElement LieElement::generator(int letters, int cap, int i) {
    return LieElement(NCSeries::letter(letters, cap, i));
}

LieElement LieElement::from_assoc(const NCSeries& z) {
    LieElement e(z);
    (void)e.coords();
    return e;
}

LieElement LieElement::from_primitive(NCSeries z) { return LieElement(std::move(z)); }

LieElement LieElement::from_coords(int letters, int cap, const Coords& coords) {
    detail::Accumulator acc;
    for (const auto& [w, c] : coords) {
        if (!is_lyndon(w)) throw std::invalid_argument("LieElement::from_coords: '" + w.str() + "' is not Lyndon");
        if (w.size() > cap) continue;
        for (const auto& [u, k] : lyndon_expansion(w)) acc.add_product(u, c, Rational(k));
    }
    return LieElement(NCSeries::from_terms(letters, cap, acc.take()));
}

LieElement::Coords LieElement::coords() const {
    Coords out;
    NCSeries::Terms rem = z_.terms();
    while (!rem.empty()) {
        auto [w, c] = *rem.begin();
        if (!is_lyndon(w))
            throw NotPrimitive(w.size(), "series is not a Lie element (degree " + std::to_string(w.size()) +
                                             ", word '" + w.str() + "')");
        out.emplace(w, c);
        for (const auto& [u, k] : lyndon_expansion(w)) {
            auto [it, inserted] = rem.try_emplace(u);
            it->second.add_product(c, Rational(-k));
            if (it->second.is_zero()) rem.erase(it);
        }
    }
    return out;
}

Rational LieElement::coord(Word lyndon) const {
    auto c = coords();
    auto it = c.find(lyndon);
    return it == c.end() ? Rational(0) : it->second;
}

LieElement LieElement::substitute(const std::vector<LieElement>& images) const {
    std::vector<NCSeries> im;
    im.reserve(images.size());
    for (const auto& e : images) im.push_back(e.z_);
    return LieElement(z_.substitute(im));
}

namespace {

std::string bracket_string(Word w) {
    if (w.size() == 1) return "x" + std::to_string(w[0] + 1);
    auto [u, v] = standard_factorization(w);
    return "[" + bracket_string(u) + "," + bracket_string(v) + "]";
}

}  // namespace

std::string LieElement::str() const {
    auto c = coords();
    if (c.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, r] : c) {
        if (!first) os << " + ";
        first = false;
        os << "(" << r << ")" << bracket_string(w);
    }
    return os.str();
}

LieElement lie_bracket(const LieElement& a, const LieElement& b) {
    return LieElement::from_primitive(commutator(a.assoc(), b.assoc()));
}

LieElement lie_cbh(const LieElement& a, const LieElement& b) {
    return LieElement::from_primitive(nc_cbh(a.assoc(), b.assoc()));
}

const LieElement& universal_cbh(int p, int cap) {
    static std::map<std::pair<int, int>, std::unique_ptr<LieElement>> memo;
    static std::mutex mu;
    {
        std::lock_guard lock(mu);
        auto it = memo.find({p, cap});
        if (it != memo.end()) return *it->second;
    }
    if (p < 1) throw std::invalid_argument("universal_cbh: arity must be positive");
    NCSeries prod = NCSeries::one(p, cap);
    for (int i = 0; i < p; ++i) prod = prod * nc_exp(NCSeries::letter(p, cap, i));
    auto val = std::make_unique<LieElement>(LieElement::from_primitive(nc_log(prod)));
    std::lock_guard lock(mu);
    return *memo.try_emplace({p, cap}, std::move(val)).first->second;
}

// ---------------------------------------------------------------- oracle targets

GradedLieOracle::GradedLieOracle(std::vector<int> dims, Bracket bracket)
    : dims_(std::move(dims)), bracket_(std::move(bracket)) {
    if (dims_.empty()) dims_.push_back(0);
}

const Vec& GradedLieOracle::bracket(int d1, int i, int d2, int j) const {
    auto key = std::make_tuple(d1, i, d2, j);
    {
        std::lock_guard lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    Vec v = d1 + d2 <= max_degree() ? bracket_(d1, i, d2, j) : Vec{};
    v.resize(static_cast<std::size_t>(dim(d1 + d2)));
    std::lock_guard lock(mu_);
    return cache_.emplace(key, std::move(v)).first->second;
}

bool GradedLieOracle::spot_check() const {
    auto self = std::shared_ptr<const GradedLieOracle>(this, [](const GradedLieOracle*) {});
    int top = max_degree();
    for (int d1 = 1; d1 <= top; ++d1)
        for (int d2 = 1; d1 + d2 <= top; ++d2)
            for (int i = 0; i < dim(d1); ++i)
                for (int j = 0; j < dim(d2); ++j) {
                    auto a = OracleElement::basis(self, top, d1, i);
                    auto b = OracleElement::basis(self, top, d2, j);
                    if (!(lie_bracket(a, b) + lie_bracket(b, a) == a.zero_like())) return false;
                    for (int d3 = 1; d1 + d2 + d3 <= top; ++d3)
                        for (int k = 0; k < dim(d3); ++k) {
                            auto c = OracleElement::basis(self, top, d3, k);
                            auto jac = lie_bracket(a, lie_bracket(b, c)) + lie_bracket(b, lie_bracket(c, a)) +
                                       lie_bracket(c, lie_bracket(a, b));
                            if (!(jac == a.zero_like())) return false;
                        }
                }
    return true;
}

OracleElement::OracleElement(std::shared_ptr<const GradedLieOracle> alg, int cap)
    : alg_(std::move(alg)), cap_(std::min(cap, alg_->max_degree())) {
    parts_.resize(static_cast<std::size_t>(cap_) + 1);
    for (int d = 1; d <= cap_; ++d) parts_[static_cast<std::size_t>(d)].resize(static_cast<std::size_t>(alg_->dim(d)));
}

OracleElement OracleElement::basis(std::shared_ptr<const GradedLieOracle> alg, int cap, int d, int i) {
    OracleElement e(std::move(alg), cap);
    if (d <= e.cap_) e.parts_[static_cast<std::size_t>(d)].at(static_cast<std::size_t>(i)) = Rational(1);
    return e;
}

int OracleElement::valuation() const {
    for (int d = 1; d <= cap_; ++d)
        for (const auto& c : parts_[static_cast<std::size_t>(d)])
            if (!c.is_zero()) return d;
    return cap_ + 1;
}

OracleElement OracleElement::truncated(int cap) const {
    OracleElement r(alg_, std::min(cap, cap_));
    for (int d = 1; d <= r.cap_; ++d) r.parts_[static_cast<std::size_t>(d)] = parts_[static_cast<std::size_t>(d)];
    return r;
}

OracleElement operator+(const OracleElement& a, const OracleElement& b) {
    OracleElement r = a.truncated(b.cap_);
    for (int d = 1; d <= r.cap_; ++d)
        for (std::size_t i = 0; i < r.parts_[static_cast<std::size_t>(d)].size(); ++i)
            r.parts_[static_cast<std::size_t>(d)][i] += b.parts_[static_cast<std::size_t>(d)][i];
    return r;
}

OracleElement operator*(const Rational& s, const OracleElement& a) {
    OracleElement r = a;
    for (auto& p : r.parts_)
        for (auto& c : p) c *= s;
    return r;
}

OracleElement lie_bracket(const OracleElement& a, const OracleElement& b) {
    OracleElement r(a.alg_, std::min(a.cap_, b.cap_));
    for (int d1 = 1; d1 <= r.cap_; ++d1)
        for (int d2 = 1; d1 + d2 <= r.cap_; ++d2) {
            const Vec& pa = a.parts_[static_cast<std::size_t>(d1)];
            const Vec& pb = b.parts_[static_cast<std::size_t>(d2)];
            for (std::size_t i = 0; i < pa.size(); ++i) {
                if (pa[i].is_zero()) continue;
                for (std::size_t j = 0; j < pb.size(); ++j) {
                    if (pb[j].is_zero()) continue;
                    Rational c = pa[i] * pb[j];
                    const Vec& br = a.alg_->bracket(d1, static_cast<int>(i), d2, static_cast<int>(j));
                    Vec& out = r.parts_[static_cast<std::size_t>(d1 + d2)];
                    for (std::size_t k = 0; k < br.size(); ++k)
                        if (!br[k].is_zero()) out[k].add_product(c, br[k]);
                }
            }
        }
    return r;
}

bool operator==(const OracleElement& a, const OracleElement& b) {
    int cap = std::min(a.cap_, b.cap_);
    for (int d = 1; d <= cap; ++d)
        if (a.parts_[static_cast<std::size_t>(d)] != b.parts_[static_cast<std::size_t>(d)]) return false;
    return true;
}

}  // namespace kvassoc
