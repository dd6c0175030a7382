#include "tlhb/field.hpp"

#include <cassert>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace tlhb {

namespace {

uint64_t powmod(uint64_t base, uint64_t e, uint64_t m) {
    uint64_t r = 1 % m;
    base %= m;
    while (e) {
        if (e & 1) r = (__uint128_t(r) * base) % m;
        base = (__uint128_t(base) * base) % m;
        e >>= 1;
    }
    return r;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> fs;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

void check_same(const FieldElt& x, const FieldElt& y) {
    if (x.p != y.p || x.q != y.q)
        throw std::invalid_argument("field elements from different fields");
}

}  // namespace

bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldElt FieldElt::operator+(const FieldElt& o) const {
    check_same(*this, o);
    return FieldElt{uint32_t((uint64_t(a) + o.a) % p), uint32_t((uint64_t(b) + o.b) % p), p, q};
}

FieldElt FieldElt::operator-(const FieldElt& o) const {
    check_same(*this, o);
    return FieldElt{uint32_t((uint64_t(a) + p - o.a) % p), uint32_t((uint64_t(b) + p - o.b) % p), p, q};
}

FieldElt FieldElt::operator-() const {
    return FieldElt{a ? p - a : 0, b ? p - b : 0, p, q};
}

FieldElt FieldElt::operator*(const FieldElt& o) const {
    check_same(*this, o);
    // (a + b s)(c + d s) = (ac + q bd) + (ad + bc) s
    uint64_t A = (uint64_t(a) * o.a + (uint64_t(b) * o.b) % p * q) % p;
    uint64_t B = (uint64_t(a) * o.b + uint64_t(b) * o.a) % p;
    return FieldElt{uint32_t(A), uint32_t(B), p, q};
}

FieldElt FieldElt::inv() const {
    if (is_zero()) throw std::domain_error("division by zero in F_{p^2}");
    // (a + b s)^{-1} = (a - b s) / (a^2 - q b^2), the norm lying in F_p^*.
    uint64_t norm = (uint64_t(a) * a % p + p - uint64_t(b) * b % p * q % p) % p;
    uint64_t ninv = powmod(norm, p - 2, p);
    FieldElt conj{a, b ? p - b : 0, p, q};
    uint64_t A = uint64_t(conj.a) * ninv % p;
    uint64_t B = uint64_t(conj.b) * ninv % p;
    return FieldElt{uint32_t(A), uint32_t(B), p, q};
}

FieldElt FieldElt::operator/(const FieldElt& o) const { return *this * o.inv(); }

FieldElt FieldElt::pow(int64_t e) const {
    FieldElt base = *this;
    if (e < 0) {
        base = base.inv();
        e = -e;
    }
    FieldElt r{1u % p, 0, p, q};
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

FieldElt RootSystem::from_int(int64_t n) const {
    int64_t m = n % int64_t(p);
    if (m < 0) m += p;
    return FieldElt{uint32_t(m), 0, p, q};
}

FieldElt RootSystem::zeta_pow2(int64_t twok) const {
    int64_t e = twok % 8;
    if (e < 0) e += 8;
    return zhalf.pow(e);
}

uint64_t RootSystem::order(const FieldElt& x) const {
    if (x.is_zero()) throw std::domain_error("order of zero");
    FieldElt y = x;
    FieldElt e = one();
    uint64_t n = 1;
    while (y != e) {
        y = y * x;
        ++n;
    }
    return n;
}

RootSystem RootSystem::make(uint32_t p) {
    if (p == 2) throw std::invalid_argument("characteristic 2 unsupported");
    if (!is_prime(p)) throw std::invalid_argument("p must be prime");

    // Smallest quadratic nonresidue gives the modulus s^2 - q.
    uint32_t q = 0;
    for (uint32_t c = 2; c < p; ++c) {
        if (powmod(c, (p - 1) / 2, p) == p - 1) {
            q = c;
            break;
        }
    }
    assert(q != 0);

    RootSystem r;
    r.p = p;
    r.q = q;

    uint64_t n = uint64_t(p) * p - 1;
    auto fs = prime_factors(n);
    FieldElt g;
    bool found = false;
    for (uint32_t a = 0; a < p && !found; ++a) {
        for (uint32_t b = 0; b < p && !found; ++b) {
            if (a == 0 && b == 0) continue;
            FieldElt cand{a, b, p, q};
            bool gen = true;
            for (uint64_t f : fs) {
                if (cand.pow(int64_t(n / f)) == r.one()) {
                    gen = false;
                    break;
                }
            }
            if (gen) {
                g = cand;
                found = true;
            }
        }
    }
    assert(found);

    r.zhalf = g.pow(int64_t(n / 8));  // 8 | p^2 - 1 for every odd p
    r.zeta = r.zhalf * r.zhalf;
    assert(r.zhalf.pow(4) == -r.one());
    assert(r.zeta * r.zeta == -r.one());
    return r;
}

namespace {

// Signed representative in (-p/2, p/2].
int64_t balanced(uint32_t c, uint32_t p) {
    return c > p / 2 ? int64_t(c) - int64_t(p) : int64_t(c);
}

std::string coef_prefix(int64_t c) {
    if (c == 1) return "";
    if (c == -1) return "-";
    std::ostringstream os;
    os << c << "*";
    return os.str();
}

}  // namespace

std::string render_raw(const FieldElt& x) {
    std::ostringstream os;
    if (x.b == 0) {
        os << x.a;
    } else if (x.a == 0) {
        os << x.b << "*s";
    } else {
        os << x.a << " + " << x.b << "*s";
    }
    return os.str();
}

std::string render(const RootSystem& r, const FieldElt& x) {
    if (x.is_zero()) return "0";
    // c*z^k with k in {0,1}: powers 2,3 fold into a sign since z^2 = -1.
    for (int twok = 0; twok < 8; ++twok) {
        FieldElt y = x * r.zeta_pow2(-twok);
        if (y.b != 0) continue;
        int64_t c = balanced(y.a, r.p);
        int k2 = twok;
        if (k2 >= 4) {  // z^2 = -1
            c = -c;
            k2 -= 4;
        }
        std::ostringstream os;
        if (k2 == 0) {
            os << c;
        } else if (k2 == 2) {
            os << coef_prefix(c) << "z";
        } else {
            os << coef_prefix(c) << "z^(" << k2 << "/2)";
        }
        return os.str();
    }
    // Coordinates in the basis {1, z^(1/2)} when zhalf is not in F_p.
    if (r.zhalf.b != 0) {
        uint64_t beta = uint64_t(x.b) * FieldElt{r.zhalf.b, 0, r.p, r.q}.inv().a % r.p;
        uint64_t alpha = (x.a + r.p - beta * r.zhalf.a % r.p) % r.p;
        std::ostringstream os;
        if (alpha == 0) {
            os << beta << "*z^(1/2)";
        } else if (beta == 0) {
            os << alpha;
        } else {
            os << alpha << " + " << beta << "*z^(1/2)";
        }
        return os.str();
    }
    return render_raw(x);
}

FieldElt parse_field(const RootSystem& r, const std::string& text) {
    // Grammar: term ("+" term)*, term = [-] [int] ["*"] [atom], atom = s | z | z^k | z^(k/2).
    FieldElt acc = r.zero();
    size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace(uint8_t(text[i]))) ++i; };
    skip();
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        if (!first) {
            if (text[i] == '+') {
                ++i;
            } else if (text[i] == '-') {
                sign = -1;
                ++i;
            } else {
                throw std::invalid_argument("parse error in field element: '" + text + "'");
            }
            skip();
        } else if (text[i] == '-') {
            sign = -1;
            ++i;
            skip();
        }
        first = false;

        int64_t coef = 1;
        bool saw_num = false;
        if (i < text.size() && std::isdigit(uint8_t(text[i]))) {
            coef = 0;
            while (i < text.size() && std::isdigit(uint8_t(text[i]))) coef = coef * 10 + (text[i++] - '0');
            saw_num = true;
        }
        skip();
        if (i < text.size() && text[i] == '*') {
            ++i;
            skip();
        }
        FieldElt atom = r.one();
        if (i < text.size() && (text[i] == 's' || text[i] == 'z')) {
            char c = text[i++];
            int64_t num = 1, den = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                bool paren = i < text.size() && text[i] == '(';
                if (paren) ++i;
                bool neg = false;
                if (i < text.size() && text[i] == '-') {
                    neg = true;
                    ++i;
                }
                num = 0;
                while (i < text.size() && std::isdigit(uint8_t(text[i]))) num = num * 10 + (text[i++] - '0');
                if (neg) num = -num;
                if (i < text.size() && text[i] == '/') {
                    ++i;
                    den = 0;
                    while (i < text.size() && std::isdigit(uint8_t(text[i]))) den = den * 10 + (text[i++] - '0');
                }
                if (paren) {
                    if (i >= text.size() || text[i] != ')')
                        throw std::invalid_argument("parse error in field element: '" + text + "'");
                    ++i;
                }
            }
            if (c == 's') {
                if (num != 1 || den != 1) throw std::invalid_argument("only plain 's' supported");
                atom = r.elem(0, 1);
            } else {
                if (den == 1) {
                    atom = r.zeta_pow2(2 * num);
                } else if (den == 2) {
                    atom = r.zeta_pow2(num);
                } else {
                    throw std::invalid_argument("unsupported zeta exponent denominator");
                }
            }
        } else if (!saw_num) {
            throw std::invalid_argument("parse error in field element: '" + text + "'");
        }
        acc += r.from_int(sign * coef) * atom;
        skip();
    }
    return acc;
}

}  // namespace tlhb
