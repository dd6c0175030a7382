#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tlhb {

// Exact arithmetic in F_{p^2} = F_p[s]/(s^2 - q), p an odd prime and q the
// smallest quadratic nonresidue mod p. Elements are a + b*s with a,b in [0,p).
// Every element carries (p,q) so values from different fields cannot be mixed
// silently; arithmetic asserts the contexts agree.
struct FieldElt {
    uint32_t a = 0, b = 0;
    uint32_t p = 0, q = 0;

    bool is_zero() const { return a == 0 && b == 0; }

    FieldElt operator+(const FieldElt& o) const;
    FieldElt operator-(const FieldElt& o) const;
    FieldElt operator-() const;
    FieldElt operator*(const FieldElt& o) const;
    FieldElt operator/(const FieldElt& o) const;
    FieldElt inv() const;
    FieldElt pow(int64_t e) const;

    FieldElt& operator+=(const FieldElt& o) { return *this = *this + o; }
    FieldElt& operator-=(const FieldElt& o) { return *this = *this - o; }
    FieldElt& operator*=(const FieldElt& o) { return *this = *this * o; }

    bool operator==(const FieldElt& o) const { return a == o.a && b == o.b; }
    bool operator!=(const FieldElt& o) const { return !(*this == o); }
};

// A chosen primitive 8th root of unity zhalf (= zeta^{1/2}) in F_{p^2} and
// zeta = zhalf^2, a primitive 4th root. Construction is deterministic for a
// fixed p: q is the smallest nonresidue and zhalf = g^((p^2-1)/8) for the
// lexicographically smallest generator g of F_{p^2}^*.
struct RootSystem {
    uint32_t p = 0;
    uint32_t q = 0;
    FieldElt zhalf;
    FieldElt zeta;

    static RootSystem make(uint32_t p);

    FieldElt zero() const { return FieldElt{0, 0, p, q}; }
    FieldElt one() const { return FieldElt{1 % p, 0, p, q}; }
    FieldElt from_int(int64_t n) const;
    FieldElt elem(uint32_t a, uint32_t b) const { return FieldElt{a % p, b % p, p, q}; }

    // zeta^(twok/2), i.e. zhalf^twok; callers pass twice the (half-integer)
    // exponent so no fractional types appear in interfaces.
    FieldElt zeta_pow2(int64_t twok) const;
    FieldElt zeta_pow(int64_t k) const { return zeta_pow2(2 * k); }

    // Multiplicative order of a nonzero element (exhaustive; fields are small).
    uint64_t order(const FieldElt& x) const;
};

// Prints x symbolically as c*z^k or c*z^(k/2) (z = zeta, c a signed prime-field
// representative) when such a form exists, otherwise in the basis {1, z^(1/2)}
// when zhalf generates one, otherwise as raw "a + b*s".
std::string render(const RootSystem& r, const FieldElt& x);
std::string render_raw(const FieldElt& x);

// Inverse of render; accepts all printable forms.
FieldElt parse_field(const RootSystem& r, const std::string& text);

bool is_prime(uint64_t n);

}  // namespace tlhb
