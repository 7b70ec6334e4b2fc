#pragma once

#include <cstdint>
#include <string>
#include <stdexcept>
#include <gmp.h>

namespace hhcalc {

// Exact scalar: an arbitrary-precision rational (p == 0) or a canonical
// residue in [0, p) for a prime p. No floating point anywhere.
class Scalar {
public:
    Scalar() : p_(0) { mpq_init(v_); }
    explicit Scalar(long n, uint32_t p = 0) : p_(p) {
        mpq_init(v_);
        mpq_set_si(v_, n, 1);
        reduce();
    }
    Scalar(long num, long den, uint32_t p) : p_(p) {
        if (den == 0) throw std::invalid_argument("Scalar: zero denominator");
        mpq_init(v_);
        mpq_set_si(v_, num, den);
        mpq_canonicalize(v_);
        reduce();
    }
    Scalar(const Scalar& o) : p_(o.p_) { mpq_init(v_); mpq_set(v_, o.v_); }
    Scalar(Scalar&& o) noexcept : p_(o.p_) { mpq_init(v_); mpq_swap(v_, o.v_); }
    Scalar& operator=(const Scalar& o) {
        if (this != &o) { mpq_set(v_, o.v_); p_ = o.p_; }
        return *this;
    }
    Scalar& operator=(Scalar&& o) noexcept {
        if (this != &o) { mpq_swap(v_, o.v_); p_ = o.p_; }
        return *this;
    }
    ~Scalar() { mpq_clear(v_); }

    static Scalar zero(uint32_t p) { return Scalar(0, p); }
    static Scalar one(uint32_t p) { return Scalar(1, p); }
    static Scalar from_string(const std::string& s, uint32_t p);

    uint32_t characteristic() const { return p_; }
    bool is_zero() const { return mpq_sgn(v_) == 0; }
    bool is_one() const { return mpq_cmp_si(v_, 1, 1) == 0; }

    Scalar operator+(const Scalar& o) const {
        check(o);
        Scalar r(0, p_);
        mpq_add(r.v_, v_, o.v_);
        r.reduce();
        return r;
    }
    Scalar operator-(const Scalar& o) const {
        check(o);
        Scalar r(0, p_);
        mpq_sub(r.v_, v_, o.v_);
        r.reduce();
        return r;
    }
    Scalar operator*(const Scalar& o) const {
        check(o);
        Scalar r(0, p_);
        mpq_mul(r.v_, v_, o.v_);
        r.reduce();
        return r;
    }
    Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }
    Scalar operator-() const {
        Scalar r(0, p_);
        mpq_neg(r.v_, v_);
        r.reduce();
        return r;
    }
    Scalar inverse() const;

    Scalar& operator+=(const Scalar& o) { *this = *this + o; return *this; }
    Scalar& operator-=(const Scalar& o) { *this = *this - o; return *this; }
    Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }

    bool operator==(const Scalar& o) const { return p_ == o.p_ && mpq_equal(v_, o.v_); }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    std::string str() const;

private:
    void check(const Scalar& o) const {
        if (p_ != o.p_) throw std::invalid_argument("Scalar: mixed fields");
    }
    void reduce();

    mpq_t v_;
    uint32_t p_;  // 0 = Q, otherwise prime modulus
};

// Sign of a transposition of two graded symbols; the only place the Koszul
// rule lives. Every operator in the library calls this.
inline int koszul_sign(long deg_x, long deg_y) {
    return ((deg_x & 1) && (deg_y & 1)) ? -1 : 1;
}

inline int pow_sign(long e) { return (e & 1) ? -1 : 1; }

bool is_prime(uint32_t p);

}  // namespace hhcalc
