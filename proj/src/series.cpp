#include "kvassoc/series.hpp"

#include "accumulator.hpp"

#include <algorithm>
#include <sstream>

namespace kvassoc {

namespace {

constexpr std::uint64_t kDigitMask = (std::uint64_t{1} << 56) - 1;

std::uint64_t low_mask(int bits) {
    return bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);
}

}  // namespace

// ---------------------------------------------------------------- Word

Word Word::letter(int i) {
    if (i < 0 || i >= kMaxLetters) throw std::out_of_range("Word::letter: letter index out of range");
    return Word((std::uint64_t{1} << 56) | static_cast<std::uint64_t>(i));
}

Word Word::from(const std::vector<int>& letters) {
    if (static_cast<int>(letters.size()) > kMaxLength)
        throw std::length_error("Word::from: word longer than supported maximum");
    std::uint64_t d = 0;
    for (int l : letters) {
        if (l < 0 || l >= kMaxLetters) throw std::out_of_range("Word::from: letter index out of range");
        d = (d << 4) | static_cast<std::uint64_t>(l);
    }
    return Word((static_cast<std::uint64_t>(letters.size()) << 56) | d);
}

Word Word::concat(Word o) const {
    int len = size() + o.size();
    if (len > kMaxLength) throw std::length_error("Word::concat: word longer than supported maximum");
    std::uint64_t d = ((key_ & kDigitMask) << (4 * o.size())) | (o.key_ & kDigitMask);
    return Word((static_cast<std::uint64_t>(len) << 56) | d);
}

Word Word::sub(int pos, int len) const {
    if (len <= 0) return Word();
    std::uint64_t d = ((key_ & kDigitMask) >> (4 * (size() - pos - len))) & low_mask(4 * len);
    return Word((static_cast<std::uint64_t>(len) << 56) | d);
}

Word Word::least_rotation() const {
    Word best = *this;
    for (int k = 1; k < size(); ++k) best = std::min(best, rotate(k));
    return best;
}

Word Word::relabel(const std::vector<int>& map) const {
    std::vector<int> ls = letters();
    for (int& l : ls) l = map.at(static_cast<std::size_t>(l));
    return from(ls);
}

int Word::count(int letter) const {
    int c = 0;
    for (int p = 0; p < size(); ++p) c += ((*this)[p] == letter);
    return c;
}

std::vector<int> Word::letters() const {
    std::vector<int> out(static_cast<std::size_t>(size()));
    for (int p = 0; p < size(); ++p) out[static_cast<std::size_t>(p)] = (*this)[p];
    return out;
}

std::string Word::str() const {
    std::string s;
    for (int p = 0; p < size(); ++p) {
        if (p) s += ' ';
        s += std::to_string((*this)[p] + 1);
    }
    return s;
}

// ---------------------------------------------------------------- NCSeries

NCSeries::NCSeries(int letters, int cap) : n_(letters), cap_(cap) {
    if (letters < 1 || letters > Word::kMaxLetters)
        throw std::invalid_argument("NCSeries: letter count out of range");
    if (cap < 0 || cap > Word::kMaxLength) throw std::invalid_argument("NCSeries: cap out of range");
}

NCSeries NCSeries::one(int letters, int cap) { return constant(letters, cap, Rational(1)); }

NCSeries NCSeries::constant(int letters, int cap, const Rational& c) {
    NCSeries s(letters, cap);
    s.add_term(Word(), c);
    return s;
}

NCSeries NCSeries::letter(int letters, int cap, int i) {
    if (i < 0 || i >= letters) throw std::out_of_range("NCSeries::letter: index out of range");
    return monomial(letters, cap, Word::letter(i));
}

NCSeries NCSeries::monomial(int letters, int cap, Word w, const Rational& c) {
    NCSeries s(letters, cap);
    s.add_term(w, c);
    return s;
}

NCSeries NCSeries::from_terms(int letters, int cap, Terms terms) {
    NCSeries s(letters, cap);
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->first.size() > cap || it->second.is_zero()) it = terms.erase(it);
        else ++it;
    }
    s.terms_ = std::move(terms);
    return s;
}

Rational NCSeries::coeff(Word w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
}

int NCSeries::valuation() const {
    return terms_.empty() ? cap_ + 1 : terms_.begin()->first.size();
}

int NCSeries::max_degree() const {
    return terms_.empty() ? -1 : terms_.rbegin()->first.size();
}

void NCSeries::add_term(Word w, const Rational& c) {
    if (w.size() > cap_ || c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

static void check_letters(const NCSeries& a, const NCSeries& b) {
    if (a.letters() != b.letters())
        throw std::invalid_argument("NCSeries: mismatched letter counts (" + std::to_string(a.letters()) +
                                    " vs " + std::to_string(b.letters()) + ")");
}

NCSeries& NCSeries::operator+=(const NCSeries& o) {
    check_letters(*this, o);
    if (o.cap_ < cap_) *this = truncated(o.cap_);
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NCSeries& NCSeries::operator-=(const NCSeries& o) {
    check_letters(*this, o);
    if (o.cap_ < cap_) *this = truncated(o.cap_);
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

NCSeries& NCSeries::operator*=(const Rational& r) {
    if (r.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, c] : terms_) c *= r;
    return *this;
}

NCSeries NCSeries::operator-() const {
    NCSeries r(*this);
    for (auto& [w, c] : r.terms_) c = -c;
    return r;
}

NCSeries operator*(const NCSeries& a, const NCSeries& b) {
    check_letters(a, b);
    int cap = std::min(a.cap_, b.cap_);
    detail::Accumulator acc;
    for (const auto& [w1, c1] : a.terms_) {
        int room = cap - w1.size();
        if (room < 0) break;
        for (const auto& [w2, c2] : b.terms_) {
            if (w2.size() > room) break;
            acc.add_product(w1.concat(w2), c1, c2);
        }
    }
    return NCSeries::from_terms(a.n_, cap, acc.take());
}

bool operator==(const NCSeries& a, const NCSeries& b) {
    if (a.n_ != b.n_) return false;
    int cap = std::min(a.cap_, b.cap_);
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    while (true) {
        bool ea = ia == a.terms_.end() || ia->first.size() > cap;
        bool eb = ib == b.terms_.end() || ib->first.size() > cap;
        if (ea || eb) return ea && eb;
        if (ia->first != ib->first || ia->second != ib->second) return false;
        ++ia;
        ++ib;
    }
}

NCSeries NCSeries::truncated(int cap) const {
    NCSeries r(n_, std::min(cap, cap_));
    for (const auto& [w, c] : terms_) {
        if (w.size() > r.cap_) break;
        r.terms_.emplace_hint(r.terms_.end(), w, c);
    }
    return r;
}

NCSeries NCSeries::degree_part(int d) const { return degree_range(d, d); }

NCSeries NCSeries::degree_range(int lo, int hi) const {
    NCSeries r(n_, cap_);
    for (const auto& [w, c] : terms_)
        if (w.size() >= lo && w.size() <= hi) r.terms_.emplace_hint(r.terms_.end(), w, c);
    return r;
}

NCSeries NCSeries::widened(int letters) const {
    if (letters < n_) throw std::invalid_argument("NCSeries::widened: cannot shrink alphabet");
    NCSeries r(letters, cap_);
    r.terms_ = terms_;
    return r;
}

namespace {

// Horner evaluation grouped by trailing letter: sum_w c_w img(w) = c_0 + sum_l S(f_l) img_l.
void substitute_rec(std::vector<std::pair<Word, Rational>>& items, const std::vector<NCSeries>& images,
                    const std::vector<int>& vals, int letters, int cap, NCSeries& out) {
    std::vector<std::vector<std::pair<Word, Rational>>> groups(images.size());
    for (auto& [w, c] : items) {
        if (w.empty()) {
            out.add_term(Word(), c);
            continue;
        }
        groups[static_cast<std::size_t>(w.back())].emplace_back(w.drop_back(), std::move(c));
    }
    for (std::size_t l = 0; l < images.size(); ++l) {
        if (groups[l].empty()) continue;
        int inner_cap = cap - vals[l];
        if (inner_cap < 0) continue;
        NCSeries inner(letters, inner_cap);
        substitute_rec(groups[l], images, vals, letters, inner_cap, inner);
        if (inner.is_zero()) continue;
        // lift back to the full cap before multiplying; the inner cap only bounds its own terms
        out += NCSeries::from_terms(letters, cap, inner.terms()) * images[l];
    }
}

}  // namespace

NCSeries NCSeries::substitute(const std::vector<NCSeries>& images) const {
    if (static_cast<int>(images.size()) != n_)
        throw std::invalid_argument("NCSeries::substitute: expected " + std::to_string(n_) + " images, got " +
                                    std::to_string(images.size()));
    if (images.empty()) return *this;
    int letters = images[0].letters();
    int cap = cap_;
    std::vector<int> vals;
    for (const auto& im : images) {
        if (im.letters() != letters) throw std::invalid_argument("NCSeries::substitute: images disagree on letters");
        cap = std::min(cap, im.cap());
    }
    for (const auto& im : images) vals.push_back(std::min(im.valuation(), cap + 1));
    std::vector<std::pair<Word, Rational>> items(terms_.begin(), terms_.end());
    NCSeries out(letters, cap);
    substitute_rec(items, images, vals, letters, cap, out);
    return out;
}

NCSeries NCSeries::relabel(const std::vector<int>& map, int new_letters) const {
    NCSeries r(new_letters, cap_);
    for (const auto& [w, c] : terms_) r.add_term(w.relabel(map), c);
    return r;
}

CommSeries NCSeries::abelianize() const {
    CommSeries r(n_, cap_);
    std::vector<int> exps(static_cast<std::size_t>(n_));
    for (const auto& [w, c] : terms_) {
        std::fill(exps.begin(), exps.end(), 0);
        for (int p = 0; p < w.size(); ++p) ++exps[static_cast<std::size_t>(w[p])];
        r.add_term(exps, c);
    }
    return r;
}

namespace {

void all_words(int letters, int len, std::vector<Word>& out) {
    std::vector<int> ls(static_cast<std::size_t>(len), 0);
    while (true) {
        out.push_back(Word::from(ls));
        int p = len - 1;
        while (p >= 0 && ls[static_cast<std::size_t>(p)] == letters - 1) ls[static_cast<std::size_t>(p--)] = 0;
        if (p < 0) break;
        ++ls[static_cast<std::size_t>(p)];
    }
}

// coefficient sum of g over the shuffle product u ш v (with multiplicity)
Rational shuffle_pairing(const NCSeries& g, Word u, Word v) {
    if (u.empty()) return g.coeff(v);
    if (v.empty()) return g.coeff(u);
    Rational s;
    // dynamic programming over (i, j) prefixes
    int m = u.size(), n = v.size();
    std::vector<std::vector<std::map<Word, long>>> dp(
        static_cast<std::size_t>(m + 1), std::vector<std::map<Word, long>>(static_cast<std::size_t>(n + 1)));
    dp[0][0][Word()] = 1;
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= n; ++j) {
            auto& cell = dp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (i > 0)
                for (const auto& [w, k] : dp[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)])
                    cell[w.concat(Word::letter(u[i - 1]))] += k;
            if (j > 0)
                for (const auto& [w, k] : dp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)])
                    cell[w.concat(Word::letter(v[j - 1]))] += k;
        }
    for (const auto& [w, k] : dp[static_cast<std::size_t>(m)][static_cast<std::size_t>(n)])
        s.add_product(g.coeff(w), Rational(k));
    return s;
}

}  // namespace

bool NCSeries::is_grouplike() const {
    if (constant_term() != Rational(1)) return false;
    // Delta g = g (x) g  <=>  <g, u ш v> = <g,u><g,v> for all words u, v.
    std::vector<std::vector<Word>> by_len(static_cast<std::size_t>(cap_ + 1));
    for (int l = 1; l < cap_; ++l) all_words(n_, l, by_len[static_cast<std::size_t>(l)]);
    for (int a = 1; a < cap_; ++a)
        for (int b = a; a + b <= cap_; ++b)
            for (Word u : by_len[static_cast<std::size_t>(a)])
                for (Word v : by_len[static_cast<std::size_t>(b)])
                    if (shuffle_pairing(*this, u, v) != coeff(u) * coeff(v)) return false;
    return true;
}

std::string NCSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")";
        if (!w.empty()) os << "[" << w.str() << "]";
    }
    return os.str();
}

NCSeries commutator(const NCSeries& a, const NCSeries& b) { return a * b - b * a; }

NCSeries derivation_apply(const NCSeries& z, const std::vector<NCSeries>& images) {
    if (static_cast<int>(images.size()) != z.letters())
        throw std::invalid_argument("derivation_apply: expected one image per letter");
    int cap = z.cap();
    int lift = std::max(z.valuation() - 1, 0);
    for (const auto& im : images) {
        if (im.letters() != z.letters()) throw std::invalid_argument("derivation_apply: image alphabet mismatch");
        if (!im.is_zero()) cap = std::min(cap, im.cap() + lift);
    }
    detail::Accumulator acc;
    for (const auto& [w, c] : z.terms()) {
        for (int p = 0; p < w.size(); ++p) {
            const NCSeries& im = images[static_cast<std::size_t>(w[p])];
            if (im.is_zero()) continue;
            Word pre = w.sub(0, p), post = w.sub(p + 1, w.size() - p - 1);
            int room = cap - w.size() + 1;
            for (const auto& [v, d] : im.terms()) {
                if (v.size() > room) break;
                acc.add_product(pre.concat(v).concat(post), c, d);
            }
        }
    }
    return NCSeries::from_terms(z.letters(), cap, acc.take());
}

NCSeries nc_exp(const NCSeries& z) {
    if (!z.constant_term().is_zero()) throw std::domain_error("nc_exp: argument has nonzero constant term");
    NCSeries result = NCSeries::one(z.letters(), z.cap());
    NCSeries term = result;
    for (int k = 1; k <= z.cap(); ++k) {
        term = Rational(1, k) * (term * z);
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

NCSeries nc_log(const NCSeries& g) {
    if (g.constant_term() != Rational(1)) throw std::domain_error("nc_log: constant term is not 1");
    NCSeries h = g - NCSeries::one(g.letters(), g.cap());
    NCSeries result(g.letters(), g.cap());
    NCSeries power = h;
    for (int k = 1; k <= g.cap() && !power.is_zero(); ++k) {
        result += Rational(k % 2 ? 1 : -1, k) * power;
        power = power * h;
    }
    return result;
}

NCSeries nc_cbh(const NCSeries& a, const NCSeries& b) { return nc_log(nc_exp(a) * nc_exp(b)); }

int first_difference_degree(const NCSeries& a, const NCSeries& b) {
    NCSeries d = a - b;
    return d.is_zero() ? -1 : d.valuation();
}

// ---------------------------------------------------------------- CommSeries

CommSeries::CommSeries(int vars, int cap) : n_(vars), cap_(cap) {
    if (vars < 1 || vars > 8) throw std::invalid_argument("CommSeries: variable count out of range");
    if (cap < 0 || cap > 255) throw std::invalid_argument("CommSeries: cap out of range");
}

CommSeries CommSeries::one(int vars, int cap) {
    CommSeries s(vars, cap);
    s.add_term_packed(0, 0, Rational(1));
    return s;
}

CommSeries CommSeries::var(int vars, int cap, int i) {
    CommSeries s(vars, cap);
    std::vector<int> e(static_cast<std::size_t>(vars), 0);
    e.at(static_cast<std::size_t>(i)) = 1;
    s.add_term(e, Rational(1));
    return s;
}

CommSeries::Mono CommSeries::pack(const std::vector<int>& exps) {
    Mono m = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) m |= static_cast<Mono>(exps[i]) << (8 * (exps.size() - 1 - i));
    return m;
}

std::vector<int> CommSeries::unpack(Mono m, int vars) {
    std::vector<int> e(static_cast<std::size_t>(vars));
    for (int i = 0; i < vars; ++i) e[static_cast<std::size_t>(i)] = static_cast<int>((m >> (8 * (vars - 1 - i))) & 0xFF);
    return e;
}

Rational CommSeries::coeff(const std::vector<int>& exps) const {
    int d = 0;
    for (int e : exps) d += e;
    auto it = terms_.find({d, pack(exps)});
    return it == terms_.end() ? Rational(0) : it->second;
}

void CommSeries::add_term(const std::vector<int>& exps, const Rational& c) {
    if (static_cast<int>(exps.size()) != n_) throw std::invalid_argument("CommSeries: exponent vector size");
    int d = 0;
    for (int e : exps) d += e;
    add_term_packed(d, pack(exps), c);
}

void CommSeries::add_term_packed(int degree, Mono m, const Rational& c) {
    if (degree > cap_ || c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace({degree, m}, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

CommSeries& CommSeries::operator+=(const CommSeries& o) {
    if (o.n_ != n_) throw std::invalid_argument("CommSeries: variable count mismatch");
    if (o.cap_ < cap_) *this = truncated(o.cap_);
    for (const auto& [k, c] : o.terms_) add_term_packed(k.first, k.second, c);
    return *this;
}

CommSeries& CommSeries::operator-=(const CommSeries& o) {
    if (o.n_ != n_) throw std::invalid_argument("CommSeries: variable count mismatch");
    if (o.cap_ < cap_) *this = truncated(o.cap_);
    for (const auto& [k, c] : o.terms_) add_term_packed(k.first, k.second, -c);
    return *this;
}

CommSeries& CommSeries::operator*=(const Rational& r) {
    if (r.is_zero()) terms_.clear();
    for (auto& [k, c] : terms_) c *= r;
    return *this;
}

CommSeries operator*(const CommSeries& a, const CommSeries& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("CommSeries: variable count mismatch");
    CommSeries r(a.n_, std::min(a.cap_, b.cap_));
    for (const auto& [ka, ca] : a.terms_) {
        if (ka.first > r.cap_) break;
        for (const auto& [kb, cb] : b.terms_) {
            if (ka.first + kb.first > r.cap_) break;
            r.add_term_packed(ka.first + kb.first, ka.second + kb.second, ca * cb);
        }
    }
    return r;
}

CommSeries CommSeries::operator-() const {
    CommSeries r(*this);
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

Rational CommSeries::constant_term() const {
    auto it = terms_.find({0, 0});
    return it == terms_.end() ? Rational(0) : it->second;
}

int CommSeries::valuation() const { return terms_.empty() ? cap_ + 1 : terms_.begin()->first.first; }

CommSeries CommSeries::truncated(int cap) const {
    CommSeries r(n_, std::min(cap, cap_));
    for (const auto& [k, c] : terms_)
        if (k.first <= r.cap_) r.terms_.emplace(k, c);
    return r;
}

std::string CommSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")";
        auto e = unpack(k.second, n_);
        for (int i = 0; i < n_; ++i)
            if (e[static_cast<std::size_t>(i)]) os << "v" << i + 1 << "^" << e[static_cast<std::size_t>(i)];
    }
    return os.str();
}

CommSeries comm_exp(const CommSeries& z) {
    if (!z.constant_term().is_zero()) throw std::domain_error("comm_exp: nonzero constant term");
    CommSeries result = CommSeries::one(z.vars(), z.cap());
    CommSeries term = result;
    for (int k = 1; k <= z.cap(); ++k) {
        term = Rational(1, k) * (term * z);
        if (term.is_zero()) break;
        result += term;
    }
    return result;
}

CommSeries comm_log(const CommSeries& g) {
    if (g.constant_term() != Rational(1)) throw std::domain_error("comm_log: constant term is not 1");
    CommSeries h = g - CommSeries::one(g.vars(), g.cap());
    CommSeries result(g.vars(), g.cap());
    CommSeries power = h;
    for (int k = 1; k <= g.cap() && !power.is_zero(); ++k) {
        result += Rational(k % 2 ? 1 : -1, k) * power;
        power = power * h;
    }
    return result;
}

// ---------------------------------------------------------------- PowerSeries

PowerSeries::PowerSeries(int cap, std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    c_.resize(static_cast<std::size_t>(cap) + 1);
}

bool PowerSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
}

int PowerSeries::valuation() const {
    for (int k = 0; k <= cap(); ++k)
        if (!(*this)[k].is_zero()) return k;
    return cap() + 1;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& o) {
    if (o.cap() < cap()) c_.resize(o.c_.size());
    for (int k = 0; k <= cap(); ++k) (*this)[k] += o[k];
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& o) {
    if (o.cap() < cap()) c_.resize(o.c_.size());
    for (int k = 0; k <= cap(); ++k) (*this)[k] -= o[k];
    return *this;
}

PowerSeries operator*(const Rational& r, PowerSeries a) {
    for (auto& c : a.c_) c *= r;
    return a;
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    int cap = std::min(a.cap(), b.cap());
    PowerSeries r(cap);
    for (int i = 0; i <= cap; ++i) {
        if (a[i].is_zero()) continue;
        for (int j = 0; i + j <= cap; ++j) r[i + j].add_product(a[i], b[j]);
    }
    return r;
}

PowerSeries PowerSeries::operator-() const { return Rational(-1) * *this; }

bool operator==(const PowerSeries& a, const PowerSeries& b) {
    int cap = std::min(a.cap(), b.cap());
    for (int k = 0; k <= cap; ++k)
        if (a[k] != b[k]) return false;
    return true;
}

PowerSeries PowerSeries::truncated(int cap) const {
    PowerSeries r(std::min(cap, this->cap()));
    for (int k = 0; k <= r.cap(); ++k) r[k] = (*this)[k];
    return r;
}

PowerSeries PowerSeries::even_part() const {
    PowerSeries r(cap());
    for (int k = 0; k <= cap(); k += 2) r[k] = (*this)[k];
    return r;
}

PowerSeries PowerSeries::odd_part() const {
    PowerSeries r(cap());
    for (int k = 1; k <= cap(); k += 2) r[k] = (*this)[k];
    return r;
}

PowerSeries PowerSeries::euler() const {
    PowerSeries r(cap());
    for (int k = 0; k <= cap(); ++k) r[k] = Rational(k) * (*this)[k];
    return r;
}

PowerSeries PowerSeries::rescaled(const Rational& lambda) const {
    PowerSeries r(cap());
    Rational p(1);
    for (int k = 0; k <= cap(); ++k) {
        r[k] = (*this)[k] * p;
        p *= lambda;
    }
    return r;
}

PowerSeries PowerSeries::reciprocal() const {
    if ((*this)[0].is_zero()) throw std::domain_error("PowerSeries::reciprocal: zero constant term");
    PowerSeries r(cap());
    Rational inv0 = (*this)[0].inverse();
    r[0] = inv0;
    for (int k = 1; k <= cap(); ++k) {
        Rational s;
        for (int j = 1; j <= k; ++j) s.add_product((*this)[j], r[k - j]);
        r[k] = -(s * inv0);
    }
    return r;
}

NCSeries PowerSeries::evaluate(const NCSeries& z) const {
    NCSeries result(z.letters(), z.cap());
    NCSeries power = NCSeries::one(z.letters(), z.cap());
    for (int k = 0; k <= cap(); ++k) {
        if (!(*this)[k].is_zero()) result += (*this)[k] * power;
        if (k < cap()) power = power * z;
        if (power.is_zero()) break;
    }
    return result;
}

CommSeries PowerSeries::evaluate_linear(const std::vector<Rational>& coeffs, int vars) const {
    CommSeries lin(vars, cap());
    for (int i = 0; i < vars; ++i) lin += coeffs.at(static_cast<std::size_t>(i)) * CommSeries::var(vars, cap(), i);
    CommSeries result(vars, cap());
    CommSeries power = CommSeries::one(vars, cap());
    for (int k = 0; k <= cap(); ++k) {
        if (!(*this)[k].is_zero()) result += (*this)[k] * power;
        power = power * lin;
    }
    return result;
}

std::string PowerSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= cap(); ++k) {
        if ((*this)[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << (*this)[k] << ")u^" << k;
    }
    return first ? "0" : os.str();
}

PowerSeries ps_exp(const PowerSeries& z) {
    if (!z[0].is_zero()) throw std::domain_error("ps_exp: nonzero constant term");
    PowerSeries result(z.cap());
    result[0] = Rational(1);
    PowerSeries term = result;
    for (int k = 1; k <= z.cap(); ++k) {
        term = Rational(1, k) * (term * z);
        result += term;
    }
    return result;
}

PowerSeries ps_log(const PowerSeries& g) {
    if (g[0] != Rational(1)) throw std::domain_error("ps_log: constant term is not 1");
    PowerSeries h = g;
    h[0] = Rational(0);
    PowerSeries result(g.cap());
    PowerSeries power = h;
    for (int k = 1; k <= g.cap(); ++k) {
        result += Rational(k % 2 ? 1 : -1, k) * power;
        power = power * h;
    }
    return result;
}

PowerSeries bernoulli_generating(int cap) {
    // (e^u - 1)/u = sum u^k / (k+1)!
    PowerSeries q(cap);
    for (int k = 0; k <= cap; ++k) q[k] = factorial(k + 1).inverse();
    return q.reciprocal();
}

}  // namespace kvassoc
