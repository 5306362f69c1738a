#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace kvassoc {

// Exact rational number, always in lowest terms with a positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}
    Rational(long n, long d);
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }
    explicit Rational(mpq_class&& q) : q_(std::move(q)) { q_.canonicalize(); }

    static Rational parse(std::string_view text);

    // "p/q" with q always present (q = 1 for integers).
    std::string str() const;

    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }
    bool is_integer() const { return q_.get_den() == 1; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    // this += a * b without an intermediate object
    void add_product(const Rational& a, const Rational& b);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { Rational r(*this); r.q_ = -r.q_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    Rational inverse() const;
    Rational pow(int e) const;

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

Rational factorial(int n);
Rational binomial(int n, int k);

}  // namespace kvassoc
