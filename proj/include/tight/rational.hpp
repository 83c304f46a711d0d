#pragma once

// Exact arithmetic kernel: arbitrary-precision integers and rationals,
// backed by GMP. Rationals are kept in lowest terms with positive
// denominator at all times.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tight {

using Integer = mpz_class;

inline Integer binomial(long n, long k) {
    if (k < 0 || k > n) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

inline Integer pow2(long e) {
    Integer r(1);
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return r;
}

class Rational {
  public:
    Rational() : q_(0) {}
    Rational(long v) : q_(static_cast<signed long>(v)) {}  // NOLINT(google-explicit-constructor)
    Rational(const Integer& v) : q_(v) {}                  // NOLINT(google-explicit-constructor)
    Rational(const Integer& num, const Integer& den) : q_(num, den) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }

    bool is_integer() const { return q_.get_den() == 1; }
    Integer to_integer() const {
        if (!is_integer()) throw std::domain_error("Rational: not an integer");
        return q_.get_num();
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.q_ == 0) throw std::invalid_argument("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

    // Lossless "p/q" rendering, denominator always present ("0/1", "-9/10").
    std::string str() const {
        return q_.get_num().get_str() + "/" + q_.get_den().get_str();
    }

  private:
    mpq_class q_;
};

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    return Rational(Integer(s.substr(0, slash)), Integer(s.substr(slash + 1)));
}

}  // namespace tight
