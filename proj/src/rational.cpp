#include "kvassoc/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace kvassoc {

Rational::Rational(long n, long d) {
    if (d == 0) throw std::domain_error("Rational: zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    mpz_class p, q(1);
    try {
        if (slash == std::string::npos) {
            p = mpz_class(s, 10);
        } else {
            p = mpz_class(s.substr(0, slash), 10);
            q = mpz_class(s.substr(slash + 1), 10);
        }
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("Rational::parse: malformed '" + s + "'");
    }
    if (q == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + s + "'");
    mpq_class r(p, q);
    r.canonicalize();
    return Rational(std::move(r));
}

std::string Rational::str() const {
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    q_ /= o.q_;
    return *this;
}

void Rational::add_product(const Rational& a, const Rational& b) {
    // mpq has no fused multiply-add; a thread-local scratch avoids reallocations
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), a.q_.get_mpq_t(), b.q_.get_mpq_t());
    mpq_add(q_.get_mpq_t(), q_.get_mpq_t(), tmp.get_mpq_t());
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    mpq_class r;
    mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
    return Rational(std::move(r));
}

Rational Rational::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    Rational r(1), b(*this);
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    if (r.is_integer()) return os << r.num().get_str();
    return os << r.str();
}

Rational factorial(int n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return Rational(mpq_class(f));
}

Rational binomial(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(mpq_class(b));
}

}  // namespace kvassoc
