#include "kvassoc/braid_groups.hpp"

#include <cctype>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace kvassoc {

// ---- free groups ----

FreeWord::FreeWord(int rank, const std::vector<int>& letters) : rank_(rank) {
    for (int l : letters) push(l);
}

void FreeWord::push(int l) {
    if (l == 0 || std::abs(l) > rank_) throw std::invalid_argument("FreeWord: generator out of range");
    if (!w_.empty() && w_.back() == -l)
        w_.pop_back();
    else
        w_.push_back(l);
}

FreeWord FreeWord::generator(int rank, int i) { return FreeWord(rank, {i}); }

FreeWord FreeWord::inverse() const {
    FreeWord r(rank_);
    for (auto it = w_.rbegin(); it != w_.rend(); ++it) r.w_.push_back(-*it);
    return r;
}

FreeWord FreeWord::pow(int e) const {
    FreeWord base = e < 0 ? inverse() : *this, r(rank_);
    for (int k = 0; k < std::abs(e); ++k) r = r * base;
    return r;
}

FreeWord operator*(const FreeWord& a, const FreeWord& b) {
    FreeWord r = a;
    for (int l : b.w_) r.push(l);
    return r;
}

std::string FreeWord::str() const {
    if (w_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t k = 0; k < w_.size(); ++k) {
        if (k) os << ' ';
        os << 'X' << std::abs(w_[k]);
        if (w_[k] < 0) os << "^-1";
    }
    return os.str();
}

namespace {

// token "<prefix><digits>" with optional "^-1" or "^k"; returns (digits, exponent)
std::pair<std::string, int> split_token(const std::string& tok, char prefix) {
    if (tok.empty() || (tok[0] != prefix && tok[0] != std::toupper(prefix) && tok[0] != std::tolower(prefix)))
        throw std::invalid_argument("unexpected token '" + tok + "'");
    auto caret = tok.find('^');
    std::string body = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
    int e = 1;
    if (caret != std::string::npos) e = std::stoi(tok.substr(caret + 1));
    if (body.empty()) throw std::invalid_argument("missing index in '" + tok + "'");
    for (char c : body)
        if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad index in '" + tok + "'");
    return {body, e};
}

std::vector<std::string> tokens(const std::string& text) {
    std::istringstream is(text);
    std::vector<std::string> out;
    for (std::string t; is >> t;) out.push_back(t);
    return out;
}

}  // namespace

FreeWord FreeWord::parse(int rank, const std::string& text) {
    FreeWord r(rank);
    for (const auto& t : tokens(text)) {
        if (t == "1") continue;
        auto [body, e] = split_token(t, 'X');
        r = r * generator(rank, std::stoi(body)).pow(e);
    }
    return r;
}

FreeWord commutator(const FreeWord& g, const FreeWord& h) { return g * h * g.inverse() * h.inverse(); }

FreeAut FreeAut::identity(int rank) {
    std::vector<FreeWord> im;
    for (int i = 1; i <= rank; ++i) im.push_back(FreeWord::generator(rank, i));
    return FreeAut(std::move(im));
}

FreeWord FreeAut::apply(const FreeWord& w) const {
    FreeWord r(rank());
    for (int l : w.letters()) r = r * (l > 0 ? image(l) : image(-l).inverse());
    return r;
}

bool FreeAut::is_identity() const { return *this == identity(rank()); }

FreeAut compose(const FreeAut& a, const FreeAut& b) {
    std::vector<FreeWord> im;
    for (const auto& w : b.images()) im.push_back(a.apply(w));
    return FreeAut(std::move(im));
}

// ---- braid words ----

BraidWord::BraidWord(int strands, std::vector<int> gens) : n_(strands), g_(std::move(gens)) {
    for (int g : g_)
        if (g == 0 || std::abs(g) >= n_) throw std::invalid_argument("BraidWord: generator out of range");
}

BraidWord BraidWord::inverse() const {
    std::vector<int> g;
    for (auto it = g_.rbegin(); it != g_.rend(); ++it) g.push_back(-*it);
    return BraidWord(n_, std::move(g));
}

BraidWord operator*(const BraidWord& a, const BraidWord& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("BraidWord: strand mismatch");
    std::vector<int> g = a.g_;
    g.insert(g.end(), b.g_.begin(), b.g_.end());
    return BraidWord(a.n_, std::move(g));
}

std::vector<int> BraidWord::permutation() const {
    std::vector<int> at(static_cast<std::size_t>(n_));
    std::iota(at.begin(), at.end(), 1);
    for (int g : g_) std::swap(at[static_cast<std::size_t>(std::abs(g) - 1)], at[static_cast<std::size_t>(std::abs(g))]);
    std::vector<int> p(static_cast<std::size_t>(n_));
    for (int pos = 0; pos < n_; ++pos) p[static_cast<std::size_t>(at[static_cast<std::size_t>(pos)] - 1)] = pos + 1;
    return p;
}

bool BraidWord::is_pure() const {
    auto p = permutation();
    for (int k = 0; k < n_; ++k)
        if (p[static_cast<std::size_t>(k)] != k + 1) return false;
    return true;
}

std::string BraidWord::str() const {
    if (g_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t k = 0; k < g_.size(); ++k) {
        if (k) os << ' ';
        os << 's' << std::abs(g_[k]);
        if (g_[k] < 0) os << "^-1";
    }
    return os.str();
}

BraidWord BraidWord::parse(int strands, const std::string& text) {
    std::vector<int> g;
    for (const auto& t : tokens(text)) {
        if (t == "1") continue;
        auto [body, e] = split_token(t, 's');
        int i = std::stoi(body);
        for (int k = 0; k < std::abs(e); ++k) g.push_back(e > 0 ? i : -i);
    }
    return BraidWord(strands, std::move(g));
}

FreeAut artin_action(const BraidWord& b) {
    int n = b.strands();
    std::vector<FreeWord> a = FreeAut::identity(n).images();
    // a := a ∘ ρ(g), generator by generator
    for (int g : b.gens()) {
        auto i = static_cast<std::size_t>(std::abs(g) - 1);
        FreeWord xi = a[i], xj = a[i + 1];
        if (g > 0) {
            a[i] = xi * xj * xi.inverse();
            a[i + 1] = xi;
        } else {
            a[i] = xj;
            a[i + 1] = xj.inverse() * xi * xj;
        }
    }
    return FreeAut(std::move(a));
}

// ---- pure braid words ----

PBWord::PBWord(int strands, std::vector<PBLetter> letters) : n_(strands) {
    for (const auto& l : letters) {
        if (l.i < 1 || l.j > n_ || l.i >= l.j || (l.e != 1 && l.e != -1))
            throw std::invalid_argument("PBWord: bad generator");
        if (!l_.empty() && l_.back().i == l.i && l_.back().j == l.j && l_.back().e == -l.e)
            l_.pop_back();
        else
            l_.push_back(l);
    }
}

PBWord PBWord::generator(int strands, int i, int j, int e) { return PBWord(strands, {{i, j, e}}); }

PBWord PBWord::inverse() const {
    std::vector<PBLetter> l;
    for (auto it = l_.rbegin(); it != l_.rend(); ++it) l.push_back({it->i, it->j, -it->e});
    return PBWord(n_, std::move(l));
}

PBWord PBWord::pow(int e) const {
    PBWord base = e < 0 ? inverse() : *this, r(n_);
    for (int k = 0; k < std::abs(e); ++k) r = r * base;
    return r;
}

PBWord operator*(const PBWord& a, const PBWord& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("PBWord: strand mismatch");
    std::vector<PBLetter> l = a.l_;
    l.insert(l.end(), b.l_.begin(), b.l_.end());
    return PBWord(a.n_, std::move(l));
}

PBWord commutator(const PBWord& g, const PBWord& h) { return g * h * g.inverse() * h.inverse(); }

BraidWord pb_gen(int n, int i, int j) {
    if (i < 1 || j > n || i >= j) throw std::invalid_argument("pb_gen: need 1 <= i < j <= n");
    std::vector<int> c;  // σ_{j-2} ... σ_i
    for (int k = j - 2; k >= i; --k) c.push_back(k);
    BraidWord conj(n, c);
    return conj.inverse() * BraidWord(n, {j - 1, j - 1}) * conj;
}

BraidWord PBWord::to_braid() const {
    BraidWord b(n_);
    for (const auto& l : l_) {
        BraidWord g = pb_gen(n_, l.i, l.j);
        b = b * (l.e > 0 ? g : g.inverse());
    }
    return b;
}

std::vector<int> PBWord::abelianization() const {
    std::vector<int> ab;
    std::map<std::pair<int, int>, int> idx;
    for (int i = 1; i <= n_; ++i)
        for (int j = i + 1; j <= n_; ++j) {
            idx[{i, j}] = static_cast<int>(ab.size());
            ab.push_back(0);
        }
    for (const auto& l : l_) ab[static_cast<std::size_t>(idx[{l.i, l.j}])] += l.e;
    return ab;
}

std::string PBWord::str() const {
    if (l_.empty()) return "1";
    std::ostringstream os;
    for (std::size_t k = 0; k < l_.size(); ++k) {
        if (k) os << ' ';
        os << 'x' << l_[k].i << l_[k].j;
        if (l_[k].e < 0) os << "^-1";
    }
    return os.str();
}

PBWord PBWord::parse(int strands, const std::string& text) {
    if (strands > 9) throw std::invalid_argument("PBWord::parse: token format supports at most 9 strands");
    PBWord r(strands);
    for (const auto& t : tokens(text)) {
        if (t == "1") continue;
        auto [body, e] = split_token(t, 'x');
        if (body.size() != 2) throw std::invalid_argument("PBWord::parse: expected two strand digits in '" + t + "'");
        int i = body[0] - '0', j = body[1] - '0';
        if (i > j) std::swap(i, j);
        r = r * generator(strands, i, j).pow(e);
    }
    return r;
}

std::vector<std::pair<std::string, PBWord>> pb_relators(int n) {
    std::vector<std::pair<std::string, PBWord>> out;
    auto x = [n](int i, int j) { return PBWord::generator(n, i, j); };
    auto name = [](const char* pat, std::initializer_list<int> idx) {
        std::string s = pat;
        for (int v : idx) s += " " + std::to_string(v);
        return s;
    };
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            for (int k = j + 1; k <= n; ++k) {
                PBWord p = x(i, j) * x(i, k) * x(j, k);
                out.push_back({name("triple-ij", {i, j, k}), commutator(p, x(i, j))});
                out.push_back({name("triple-ik", {i, j, k}), commutator(p, x(i, k))});
                out.push_back({name("triple-jk", {i, j, k}), commutator(p, x(j, k))});
                for (int l = k + 1; l <= n; ++l) {
                    out.push_back({name("disjoint", {i, j, k, l}), commutator(x(i, j), x(k, l))});
                    out.push_back({name("nested", {i, j, k, l}), commutator(x(i, l), x(j, k))});
                    out.push_back({name("crossing", {i, j, k, l}), commutator(x(i, k), x(j, k) * x(j, l) * x(j, k).inverse())});
                }
            }
    return out;
}

std::vector<RelationCheck> check_pb_relations(int n) {
    std::vector<RelationCheck> out;
    for (const auto& [name, w] : pb_relators(n)) out.push_back({name, artin_action(w.to_braid()).is_identity()});
    return out;
}

// ---- cabling ----

PBWord cabling(const PBWord& w, const std::vector<int>& mult, CableOrder order) {
    if (static_cast<int>(mult.size()) != w.strands()) throw std::invalid_argument("cabling: multiplicity count");
    std::vector<int> first(mult.size() + 1, 1);
    for (std::size_t k = 0; k < mult.size(); ++k) {
        if (mult[k] < 0) throw std::invalid_argument("cabling: negative multiplicity");
        first[k + 1] = first[k] + mult[k];
    }
    int m = first.back() - 1;
    PBWord out(std::max(m, 1));
    for (const auto& l : w.letters()) {
        PBWord img(out.strands());
        auto fi = static_cast<std::size_t>(l.i - 1), fj = static_cast<std::size_t>(l.j - 1);
        for (int a = first[fi]; a < first[fi + 1]; ++a) {
            if (order == CableOrder::increasing_decreasing) {
                for (int b = first[fj + 1] - 1; b >= first[fj]; --b) img = img * PBWord::generator(m, a, b);
            } else {
                for (int b = first[fj]; b < first[fj + 1]; ++b) img = img * PBWord::generator(m, a, b);
            }
        }
        out = out * (l.e > 0 ? img : img.inverse());
    }
    return out;
}

BraidWord cable_geometric(const BraidWord& b, const std::vector<int>& mult) {
    if (static_cast<int>(mult.size()) != b.strands()) throw std::invalid_argument("cable_geometric: multiplicity count");
    std::vector<int> size = mult;  // bundle size at each position
    int m = std::accumulate(size.begin(), size.end(), 0);
    std::vector<int> out;
    for (int g : b.gens()) {
        auto i = static_cast<std::size_t>(std::abs(g) - 1);
        int s = std::accumulate(size.begin(), size.begin() + static_cast<long>(i), 0);
        // σ_i^{-1} on sizes (p, q) undoes σ_i on sizes (q, p)
        int p = g > 0 ? size[i] : size[i + 1], q = g > 0 ? size[i + 1] : size[i];
        std::vector<int> block;
        for (int a = p - 1; a >= 0; --a)
            for (int c = 0; c < q; ++c) block.push_back(s + 1 + a + c);
        if (g > 0) {
            out.insert(out.end(), block.begin(), block.end());
        } else {
            for (auto it = block.rbegin(); it != block.rend(); ++it) out.push_back(-*it);
        }
        std::swap(size[i], size[i + 1]);
    }
    return BraidWord(std::max(m, 1), std::move(out));
}

// ---- Ad action ----

namespace {

// Ad(x_ab)^e for strands 0 <= a < b <= n (0 is the base), acting on F_n
FreeAut ad_generator(int n, int a, int b, int e) {
    auto X = [n](int k) { return FreeWord::generator(n, k); };
    std::vector<FreeWord> im;
    if (a == 0) {
        FreeWord c = e > 0 ? X(b) : X(b).inverse();
        for (int k = 1; k <= n; ++k) im.push_back(c * X(k) * c.inverse());
        return FreeAut(std::move(im));
    }
    int i = a, j = b;
    FreeWord P = X(i) * X(j);
    FreeWord c = X(j).inverse() * X(i).inverse() * X(j) * X(i);
    for (int k = 1; k <= n; ++k) {
        if (e > 0) {
            if (k == i) im.push_back(X(j).inverse() * X(i) * X(j));
            else if (k == j) im.push_back(P.inverse() * X(j) * P);
            else if (k < i || k > j) im.push_back(X(k));
            else im.push_back(c * X(k) * c.inverse());
        } else {
            if (k == i || k == j) im.push_back(P * X(k) * P.inverse());
            else if (k < i || k > j) im.push_back(X(k));
            else {
                FreeWord d = P * c.inverse() * P.inverse();
                im.push_back(d * X(k) * d.inverse());
            }
        }
    }
    return FreeAut(std::move(im));
}

}  // namespace

FreeAut ad_pb(const PBWord& w) {
    int n = w.strands() - 1;
    if (n < 1) throw std::invalid_argument("ad_pb: need at least two strands");
    FreeAut a = FreeAut::identity(n);
    for (const auto& l : w.letters()) a = compose(a, ad_generator(n, l.i - 1, l.j - 1, l.e));
    return a;
}

NCSeries malcev_free(const FreeWord& w, int cap) {
    int n = w.rank();
    std::vector<NCSeries> ep, em;
    for (int k = 0; k < n; ++k) {
        NCSeries x = NCSeries::letter(n, cap, k);
        ep.push_back(nc_exp(x));
        em.push_back(nc_exp(-x));
    }
    NCSeries r = NCSeries::one(n, cap);
    for (int l : w.letters()) r = r * (l > 0 ? ep[static_cast<std::size_t>(l - 1)] : em[static_cast<std::size_t>(-l - 1)]);
    return r;
}

namespace {

const TangAut& generator_taut(int strands, const PBLetter& l, int cap) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int, int>, TangAut> cache;
    auto key = std::make_tuple(strands, l.i, l.j, l.e, cap);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    FreeAut a = ad_pb(PBWord::generator(strands, l.i, l.j, l.e));
    std::vector<NCSeries> images;
    for (const auto& w : a.images()) images.push_back(nc_log(malcev_free(w, cap + 1)));
    TangAut t = TangAut::from_images(images, cap);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(t)).first->second;
}

}  // namespace

TangAut malcev_taut(const PBWord& w, int cap) {
    int n = w.strands() - 1;
    TangAut t = TangAut::identity(n, cap);
    for (const auto& l : w.letters()) t = taut_compose(t, generator_taut(w.strands(), l, cap));
    return t;
}

}  // namespace kvassoc
