#pragma once

// Thin RAII scalar over mpfr_t for the extended-precision series mode.
// Only what the kernels need: ring ops, comparisons, floor/ceil to long, pow.
// Every value carries its precision; binary ops compute at the max of the two.

#include <mpfr.h>

#include <algorithm>
#include <utility>

namespace pam::detail {

class MpReal {
public:
    explicit MpReal(double d = 0.0, mpfr_prec_t prec = 64) {
        mpfr_init2(v_, prec);
        mpfr_set_d(v_, d, MPFR_RNDN);
    }

    MpReal(const MpReal& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }

    MpReal(MpReal&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }

    MpReal& operator=(const MpReal& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }

    MpReal& operator=(MpReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }

    ~MpReal() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    long floor_long() const {
        MpReal t(0.0, prec());
        mpfr_floor(t.v_, v_);
        return mpfr_get_si(t.v_, MPFR_RNDN);
    }

    long ceil_long() const {
        MpReal t(0.0, prec());
        mpfr_ceil(t.v_, v_);
        return mpfr_get_si(t.v_, MPFR_RNDN);
    }

    friend MpReal operator+(const MpReal& a, const MpReal& b) {
        MpReal r(0.0, std::max(a.prec(), b.prec()));
        mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator-(const MpReal& a, const MpReal& b) {
        MpReal r(0.0, std::max(a.prec(), b.prec()));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator*(const MpReal& a, const MpReal& b) {
        MpReal r(0.0, std::max(a.prec(), b.prec()));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator/(const MpReal& a, const MpReal& b) {
        MpReal r(0.0, std::max(a.prec(), b.prec()));
        mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend MpReal operator-(const MpReal& a) {
        MpReal r(0.0, a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    MpReal& operator+=(const MpReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator-=(const MpReal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator*=(const MpReal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    MpReal& operator/=(const MpReal& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator<(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const MpReal& a, const MpReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    friend bool operator<(const MpReal& a, double b) { return mpfr_cmp_d(a.v_, b) < 0; }
    friend bool operator>=(const MpReal& a, double b) { return mpfr_cmp_d(a.v_, b) >= 0; }
    friend bool operator==(const MpReal& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }

    static MpReal pow(const MpReal& a, const MpReal& b) {
        MpReal r(0.0, std::max(a.prec(), b.prec()));
        mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    static MpReal mul_long(const MpReal& a, long k) {
        MpReal r(0.0, a.prec());
        mpfr_mul_si(r.v_, a.v_, k, MPFR_RNDN);
        return r;
    }

private:
    mpfr_t v_;
};

}  // namespace pam::detail
