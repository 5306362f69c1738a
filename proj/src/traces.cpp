#include "kvassoc/traces.hpp"

#include <sstream>

namespace kvassoc {

Rational TraceElement::coeff(Word w) const {
    auto it = terms_.find(w.least_rotation());
    return it == terms_.end() ? Rational(0) : it->second;
}

void TraceElement::add_term(Word w, const Rational& c) {
    if (w.size() > cap_ || c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(w.least_rotation(), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TraceElement TraceElement::truncated(int cap) const {
    TraceElement r(n_, std::min(cap, cap_));
    for (const auto& [w, c] : terms_)
        if (w.size() <= r.cap_) r.terms_.emplace(w, c);
    return r;
}

TraceElement TraceElement::degree_part(int d) const {
    TraceElement r(n_, cap_);
    for (const auto& [w, c] : terms_)
        if (w.size() == d) r.terms_.emplace(w, c);
    return r;
}

NCSeries TraceElement::representative() const {
    NCSeries z(n_, cap_);
    for (const auto& [w, c] : terms_) z.add_term(w, c);
    return z;
}

TraceElement operator+(TraceElement a, const TraceElement& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("TraceElement: letter mismatch");
    a = a.truncated(b.cap_);
    for (const auto& [w, c] : b.terms_) a.add_term(w, c);
    return a;
}

TraceElement operator-(TraceElement a, const TraceElement& b) { return a + Rational(-1) * b; }

TraceElement operator*(const Rational& r, TraceElement a) {
    if (r.is_zero()) a.terms_.clear();
    for (auto& [w, c] : a.terms_) c *= r;
    return a;
}

bool operator==(const TraceElement& a, const TraceElement& b) {
    if (a.n_ != b.n_) return false;
    int cap = std::min(a.cap_, b.cap_);
    return a.truncated(cap).terms_ == b.truncated(cap).terms_;
}

std::string TraceElement::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c << ")<" << w.str() << ">";
    }
    return os.str();
}

TraceElement trace_project(const NCSeries& z) {
    TraceElement t(z.letters(), z.cap());
    for (const auto& [w, c] : z.terms()) t.add_term(w, c);
    return t;
}

NCSeries partial_k(const NCSeries& z, int k) {
    NCSeries out(z.letters(), z.cap());
    for (const auto& [w, c] : z.terms())
        if (!w.empty() && w.front() == k) out.add_term(w.drop_front(), c);
    return out;
}

TraceElement divergence_j(const TangDer& u) {
    TraceElement t(u.letters(), u.cap());
    for (int k = 0; k < u.letters(); ++k)
        for (const auto& [w, c] : u.part(k).assoc().terms())
            if (w.front() == k) t.add_term(w, c);
    return t;
}

TraceElement trace_act(const TangDer& u, const TraceElement& t) {
    return trace_project(u.act(t.representative())).truncated(t.cap());
}

TraceElement trace_act(const TangAut& g, const TraceElement& t) {
    return trace_project(g.apply(t.representative())).truncated(t.cap());
}

TraceElement jacobian_J(const TangAut& g) {
    // J(exp u) = sum_m (u.)^m j(u) / (m+1)!
    TangDer u = taut_log(g);
    TraceElement term = divergence_j(u);
    TraceElement sum = term;
    for (int m = 1; m <= g.cap() && !term.is_zero(); ++m) {
        term = Rational(1, m + 1) * trace_act(u, term);
        sum = sum + term;
    }
    return sum;
}

TraceElement trace_substitute(const TraceElement& t, const std::vector<NCSeries>& images) {
    return trace_project(t.representative().substitute(images));
}

TraceElement trace_of_series(const PowerSeries& r, const NCSeries& z) {
    return trace_project(r.truncated(z.cap()).evaluate(z));
}

namespace {

// images of x_1..x_k under the i-th face into k+1 letters
std::vector<NCSeries> face_images(int k, int i, int cap, DeltaKind kind) {
    std::vector<NCSeries> im;
    auto x = [&](int j) { return NCSeries::letter(k + 1, cap, j); };
    for (int j = 0; j < k; ++j) {
        // 0-based letter j is x_{j+1}
        int jj = j + 1;
        if (i == 0) {
            im.push_back(x(j + 1));
        } else if (i == k + 1) {
            im.push_back(x(j));
        } else if (jj < i) {
            im.push_back(x(j));
        } else if (jj == i) {
            im.push_back(kind == DeltaKind::plain ? x(j) + x(j + 1) : nc_cbh(x(j), x(j + 1)));
        } else {
            im.push_back(x(j + 1));
        }
    }
    return im;
}

}  // namespace

TraceElement delta(const TraceElement& f, DeltaKind kind) {
    int k = f.letters();
    TraceElement out(k + 1, f.cap());
    NCSeries rep = f.representative();
    for (int i = 0; i <= k + 1; ++i) {
        TraceElement face = trace_project(rep.substitute(face_images(k, i, f.cap(), kind)));
        out = (i % 2) ? out + face : out - face;
    }
    return out;
}

CoboundaryResult solve_coboundary(const TraceElement& c, DeltaKind kind) {
    CoboundaryResult res;
    res.r = PowerSeries(c.cap());
    if (c.letters() != 2) {
        res.reason = "input must live in the two-letter trace space";
        return res;
    }
    TraceElement dc = delta(c, kind);
    if (!dc.is_zero()) {
        res.failure_degree = dc.valuation();
        res.reason = "input is not a cocycle";
        return res;
    }
    TraceElement rem = c;
    TraceElement one_letter(1, c.cap());
    for (int m = 1; m <= c.cap(); ++m) {
        std::vector<int> w(static_cast<std::size_t>(m), 0);
        w.back() = 1;
        Rational coef = rem.coeff(Word::from(w)) * Rational(1, m);
        if (m == 1) {
            // the linear term lies in the kernel; r carries no linear part
            continue;
        }
        if (coef.is_zero()) continue;
        res.r[m] = coef;
        TraceElement xm(1, c.cap());
        xm.add_term(Word::from(std::vector<int>(static_cast<std::size_t>(m), 0)), coef);
        rem = rem - delta(xm, kind);
    }
    if (!rem.is_zero()) {
        res.failure_degree = rem.valuation();
        res.reason = "obstruction: residual cocycle is not a coboundary";
        return res;
    }
    res.ok = true;
    return res;
}

std::vector<Word> cyclic_basis(int n, int d) {
    std::vector<Word> out;
    std::vector<int> w(static_cast<std::size_t>(d), 0);
    while (true) {
        Word x = Word::from(w);
        if (x.least_rotation() == x) out.push_back(x);
        int p = d - 1;
        while (p >= 0 && w[static_cast<std::size_t>(p)] == n - 1) w[static_cast<std::size_t>(p--)] = 0;
        if (p < 0) break;
        ++w[static_cast<std::size_t>(p)];
    }
    return out;
}

Vec trace_coordinates(const TraceElement& t, int d) {
    Vec v;
    for (Word w : cyclic_basis(t.letters(), d)) v.push_back(t.coeff(w));
    return v;
}

namespace {

Matrix delta_matrix(int k, int d) {
    auto src = cyclic_basis(k, d);
    std::vector<Vec> cols;
    for (Word w : src) {
        TraceElement e(k, d);
        e.add_term(w, Rational(1));
        cols.push_back(trace_coordinates(delta(e), d));
    }
    return Matrix::from_columns(cols, static_cast<int>(cyclic_basis(k + 1, d).size()));
}

}  // namespace

ExactnessReport delta_exactness(int d) {
    ExactnessReport r;
    r.degree = d;
    Matrix m2 = delta_matrix(2, d);
    r.ker_dim_T2 = m2.cols() - rank(m2);
    Matrix m1 = delta_matrix(1, d);
    r.im_dim_T1 = rank(m1);
    r.ker_dim_T1 = m1.cols() - r.im_dim_T1;
    return r;
}

}  // namespace kvassoc
