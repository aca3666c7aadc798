#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "adjq/errors.hpp"

namespace adjq {

/// Ground field descriptor: the rationals, or the prime field F_p.
struct Field {
    enum class Kind : std::uint8_t { rational, prime };

    Kind kind = Kind::rational;
    std::uint64_t p = 0;

    static Field rationals() { return {}; }

    /// Primes are restricted to p < 2^32 so residue products fit in 64 bits.
    static Field prime(std::uint64_t p) {
        if (p < 2 || p >= (std::uint64_t{1} << 32)) {
            throw ParseError("prime modulus out of range: " + std::to_string(p));
        }
        for (std::uint64_t d = 2; d * d <= p; ++d) {
            if (p % d == 0) throw ParseError(std::to_string(p) + " is not prime");
        }
        return {Kind::prime, p};
    }

    bool is_rational() const { return kind == Kind::rational; }
    std::uint64_t characteristic() const { return is_rational() ? 0 : p; }

    std::string to_string() const { return is_rational() ? "Q" : "F_" + std::to_string(p); }

    friend bool operator==(const Field&, const Field&) = default;
};

/// An exact field element. Rationals are kept in lowest terms with positive
/// denominator (GMP canonical form); residues live in [0, p).
class Scalar {
public:
    Scalar() = default;

    Scalar(Field f, long v) : field_(f) {
        if (f.is_rational()) {
            q_ = v;
        } else {
            long m = v % static_cast<long>(f.p);
            if (m < 0) m += static_cast<long>(f.p);
            r_ = static_cast<std::uint64_t>(m);
        }
    }

    Scalar(Field f, const mpq_class& v) : field_(f) {
        if (f.is_rational()) {
            q_ = v;
            q_.canonicalize();
        } else {
            Scalar num(f, residue_of(v.get_num(), f.p));
            Scalar den(f, residue_of(v.get_den(), f.p));
            if (den.is_zero()) throw Error("denominator vanishes modulo " + std::to_string(f.p));
            *this = num / den;
        }
    }

    static Scalar zero(Field f) { return Scalar(f, 0L); }
    static Scalar one(Field f) { return Scalar(f, 1L); }

    /// Accepts "3", "-2/6", and for prime fields also "4 mod 5".
    static Scalar parse(Field f, std::string_view text) {
        std::string s(text);
        while (!s.empty() && s.front() == ' ') s.erase(s.begin());
        while (!s.empty() && s.back() == ' ') s.pop_back();
        if (auto pos = s.find(" mod "); pos != std::string::npos) {
            if (f.is_rational()) throw FieldMismatch("residue '" + s + "' given for a rational field");
            std::uint64_t m = 0;
            try {
                m = std::stoull(s.substr(pos + 5));
            } catch (const std::exception&) {
                throw ParseError("bad modulus in '" + s + "'");
            }
            if (m != f.p) throw FieldMismatch("residue '" + s + "' does not match " + f.to_string());
            s = s.substr(0, pos);
        }
        if (s.empty()) throw ParseError("empty scalar");
        mpq_class v;
        if (v.set_str(s, 10) != 0) throw ParseError("malformed scalar '" + std::string(text) + "'");
        if (v.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        v.canonicalize();
        return Scalar(f, v);
    }

    const Field& field() const { return field_; }

    bool is_zero() const { return field_.is_rational() ? sgn(q_) == 0 : r_ == 0; }
    bool is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

    const mpq_class& rational() const { return q_; }
    std::uint64_t residue() const { return r_; }

    /// File form: "3/2" or "4".
    std::string to_string() const { return field_.is_rational() ? q_.get_str() : std::to_string(r_); }
    /// Report form: "3/2" or "4 mod 5".
    std::string display() const {
        return field_.is_rational() ? q_.get_str() : std::to_string(r_) + " mod " + std::to_string(field_.p);
    }

    Scalar operator-() const {
        Scalar out = *this;
        if (field_.is_rational()) {
            out.q_ = -q_;
        } else if (r_ != 0) {
            out.r_ = field_.p - r_;
        }
        return out;
    }

    Scalar& operator+=(const Scalar& o) {
        check(o);
        if (field_.is_rational()) {
            q_ += o.q_;
        } else {
            r_ += o.r_;
            if (r_ >= field_.p) r_ -= field_.p;
        }
        return *this;
    }
    Scalar& operator-=(const Scalar& o) {
        check(o);
        if (field_.is_rational()) {
            q_ -= o.q_;
        } else {
            r_ = r_ >= o.r_ ? r_ - o.r_ : r_ + field_.p - o.r_;
        }
        return *this;
    }
    Scalar& operator*=(const Scalar& o) {
        check(o);
        if (field_.is_rational()) {
            q_ *= o.q_;
        } else {
            r_ = (r_ * o.r_) % field_.p;
        }
        return *this;
    }
    Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

    Scalar inverse() const {
        if (is_zero()) throw Error("division by zero");
        Scalar out = *this;
        if (field_.is_rational()) {
            out.q_ = 1 / q_;
        } else {
            out.r_ = pow_mod(r_, field_.p - 2, field_.p);
        }
        return out;
    }

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        if (a.field_ != b.field_) return false;
        return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
    }

private:
    void check(const Scalar& o) const {
        if (field_ != o.field_) {
            throw FieldMismatch("cannot combine " + field_.to_string() + " and " + o.field_.to_string());
        }
    }

    static long residue_of(const mpz_class& z, std::uint64_t p) {
        mpz_class m = z % mpz_class(static_cast<unsigned long>(p));
        if (m < 0) m += static_cast<unsigned long>(p);
        return static_cast<long>(m.get_ui());
    }

    static std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1 % m;
        b %= m;
        while (e) {
            if (e & 1) r = (r * b) % m;
            b = (b * b) % m;
            e >>= 1;
        }
        return r;
    }

    Field field_{};
    mpq_class q_{};
    std::uint64_t r_ = 0;
};

}  // namespace adjq
