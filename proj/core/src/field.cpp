#include "hhcalc/field.hpp"

namespace hhcalc {

void Scalar::reduce() {
    if (p_ == 0) return;
    // canonical residue: v is an integer in [0, p)
    mpz_t num, den, mod;
    mpz_init(num);
    mpz_init(den);
    mpz_init_set_ui(mod, p_);
    mpq_get_num(num, v_);
    mpq_get_den(den, v_);
    if (mpz_cmp_ui(den, 1) != 0) {
        // clear denominator: num * den^{-1} mod p
        mpz_t dinv;
        mpz_init(dinv);
        if (mpz_invert(dinv, den, mod) == 0) {
            mpz_clears(num, den, mod, dinv, nullptr);
            throw std::domain_error("Scalar: denominator not invertible mod p");
        }
        mpz_mul(num, num, dinv);
        mpz_clear(dinv);
    }
    mpz_mod(num, num, mod);
    mpq_set_z(v_, num);
    mpz_clears(num, den, mod, nullptr);
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw std::domain_error("Scalar: division by zero");
    Scalar r(0, p_);
    mpq_inv(r.v_, v_);
    r.reduce();
    return r;
}

std::string Scalar::str() const {
    char* s = mpq_get_str(nullptr, 10, v_);
    std::string out(s);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, out.size() + 1);
    return out;
}

Scalar Scalar::from_string(const std::string& s, uint32_t p) {
    Scalar r(0, p);
    if (mpq_set_str(r.v_, s.c_str(), 10) != 0)
        throw std::invalid_argument("Scalar: cannot parse '" + s + "'");
    mpq_canonicalize(r.v_);
    r.reduce();
    return r;
}

bool is_prime(uint32_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

}  // namespace hhcalc
