#include "tlhb/projectors.hpp"

#include <istream>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tlhb {

Weight pl_adic(uint32_t v, uint32_t p) {
    if (v < 1 || v > 2 * p - 1) {
        std::ostringstream os;
        os << "object index " << v << " out of range [1, " << 2 * p - 1 << "]";
        throw std::invalid_argument(os.str());
    }
    Weight w;
    w.v = v;
    w.a0 = v % 2;
    w.a1 = v / 2;
    return w;
}

uint64_t binomial_mod_p(uint64_t n, uint64_t k, uint32_t p) {
    if (k > n) return 0;
    uint64_t r = 1;
    while (n || k) {
        uint64_t nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        // C(nd, kd) mod p by direct multiplication, digits are < p
        uint64_t num = 1, den = 1;
        for (uint64_t i = 0; i < kd; ++i) {
            num = num * ((nd - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        uint64_t deninv = 1, e = p - 2, base = den;
        while (e) {
            if (e & 1) deninv = deninv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        r = r * (num * deninv % p) % p;
        n /= p;
        k /= p;
    }
    return r;
}

ProjectorTable::ProjectorTable(const RootSystem& F) : F_(&F) {
    const int maxn = int(2 * F.p - 2);
    E_.resize(maxn + 1);
    fusion_.resize(2 * F.p);
    E_[0] = identity(F, 0);
    if (maxn >= 1) E_[1] = identity(F, 1);
    for (int n = 2; n <= maxn; ++n) {
        if (n % 2 == 0) {
            E_[n] = tensor(E_[n - 1], identity(F, 1));
        } else {
            FusionSystem fs = build_fusion(uint32_t(n));
            TLMor S = tensor(E_[n - 1], identity(F, 1));
            TLMor e = S - fs.A0 - fs.Atilde0;
            if (fs.has_B1) e = e - fs.B1;
            E_[n] = e;
            fusion_[n] = std::move(fs);
        }
    }
}

ProjectorTable::ProjectorTable(const RootSystem& F, std::vector<TLMor> preloaded) : F_(&F) {
    const int maxn = int(2 * F.p - 2);
    if (int(preloaded.size()) != maxn + 1) throw std::invalid_argument("preloaded projector table has wrong size");
    E_ = std::move(preloaded);
    fusion_.resize(2 * F.p);
    for (int n : {maxn, maxn - 1}) {
        if (n < 0) continue;
        if (!(compose(E_[n], E_[n]) == E_[n])) throw std::runtime_error("preloaded projector table fails idempotency");
    }
}

const TLMor& ProjectorTable::E(int n) const {
    if (n < 0 || n > max_strands()) {
        std::ostringstream os;
        os << "E_" << n << ": object not in the quotient (max " << max_strands() << " strands at p=" << p() << ")";
        throw std::invalid_argument(os.str());
    }
    return E_[n];
}

FusionSystem ProjectorTable::build_fusion(uint32_t v) const {
    const RootSystem& F = *F_;
    const int n = int(v);
    if (n % 2 != 1 || n < 3 || n > int(2 * p() - 1))
        throw std::invalid_argument("fusion system needs odd v in [3, 2p-1]");

    TLMor S = tensor(E_[n - 1], identity(F, 1));
    auto sandwich = [&](int cap_i, int cup_j) {
        TLMor t = compose(elementary_cap(F, n, cap_i), S);
        t = compose(E_[n - 2], t);
        t = compose(elementary_cup(F, n - 2, cup_j), t);
        return compose(S, t);
    };

    FusionSystem fs;
    fs.A0 = sandwich(n - 2, n - 3);
    fs.Atilde0 = sandwich(n - 3, n - 2);
    fs.Y0 = sandwich(n - 3, n - 3);
    fs.Z0 = sandwich(n - 2, n - 2);
    if (n >= 5) {
        uint32_t a1 = pl_adic(v, p()).a1;
        FieldElt coef = -(F.from_int(a1 - 1) / F.from_int(a1));
        TLMor down = compose(elementary_cap(F, n, n - 3), tensor(E_[n - 2], identity(F, 2)));
        down = compose(elementary_cap(F, n - 2, n - 4), down);
        TLMor up = mirror(down, MirrorAxis::UpDown);
        fs.B1 = compose(up, compose(E_[n - 4], down)) * coef;
        fs.has_B1 = true;
    } else {
        fs.B1 = tl_zero(F, n, n);
        fs.has_B1 = false;
    }
    return fs;
}

const FusionSystem& ProjectorTable::fusion_system(const Weight& v) const {
    if (v.a0 != 1) throw std::invalid_argument("fusion system: weight must be non-Eve");
    if (v.v >= fusion_.size()) throw std::invalid_argument("fusion system: weight out of range");
    if (!fusion_[v.v]) fusion_[v.v] = build_fusion(v.v);
    return *fusion_[v.v];
}

CellMorphisms ProjectorTable::cell_morphisms(const Weight& v) const {
    if (v.a0 != 1) throw std::invalid_argument("cell morphisms exist only for non-Eve weights");
    if (v.v < 3) throw std::invalid_argument("cell morphisms need v >= 3");
    const RootSystem& F = *F_;
    const int n = int(v.v);
    CellMorphisms c;
    if (v.v <= 2 * p() - 3) {
        c.U0 = compose(E(n + 1), elementary_cup(F, n - 1, n - 1));
        c.has_U0 = true;
    }
    c.D0 = compose(elementary_cap(F, n - 1, n - 3), E(n - 1));
    c.has_D0 = true;
    c.L0 = L0(v.v);
    return c;
}

TLMor ProjectorTable::L0(uint32_t v) const {
    // L0_{v-1} = U0_{v-3} o D0_{v-1}: cap off then re-open the rightmost pair
    // through E_{v-1} boxes.
    if (v % 2 != 1 || v < 3) throw std::invalid_argument("L0 needs odd v >= 3");
    const RootSystem& F = *F_;
    const int n = int(v) - 1;  // strand count
    TLMor t = compose(elementary_cap(F, n, n - 2), E(n));
    t = compose(elementary_cup(F, n - 2, n - 2), t);
    return compose(E(n), t);
}

EndoCoords ProjectorTable::decompose_endo(const Weight& v, const TLMor& f) const {
    const RootSystem& F = *F_;
    const int n = int(v.v) - 1;
    if (f.n_in != n || f.n_out != n) throw std::invalid_argument("decompose_endo: wrong signature");
    Matching id_m;
    {
        TLMor id = identity(F, n);
        id_m = id.terms.begin()->first;
    }
    EndoCoords c;
    c.lambda = F.zero();
    auto it = f.terms.find(id_m);
    if (it != f.terms.end()) c.lambda = it->second;
    TLMor rest = f - E(n) * c.lambda;
    const bool has_mu = v.a0 == 1 && v.v >= 3;
    if (has_mu) {
        TLMor l0 = L0(v.v);
        FieldElt mu = F.zero();
        if (!rest.is_zero()) {
            auto probe = rest.terms.begin();
            auto lt = l0.terms.find(probe->first);
            if (lt == l0.terms.end())
                throw std::runtime_error("decompose_endo: endomorphism not in span{E, L0}");
            mu = probe->second / lt->second;
        }
        if (!(rest == l0 * mu)) throw std::runtime_error("decompose_endo: endomorphism not in span{E, L0}");
        c.mu = mu;
    } else {
        if (!rest.is_zero()) throw std::runtime_error("decompose_endo: endomorphism not a multiple of E");
    }
    return c;
}

TLMor ProjectorTable::endo_from_coords(const Weight& v, const EndoCoords& c) const {
    TLMor t = E(int(v.v) - 1) * c.lambda;
    if (c.mu && !c.mu->is_zero()) t = t + L0(v.v) * *c.mu;
    return t;
}

std::vector<Weight> p2_admissible(const Weight& v, const Weight& w, uint32_t p) {
    if (!v.is_eve() || !w.is_eve()) throw std::invalid_argument("p2_admissible needs Eve weights");
    const int a1 = int(v.a1), b1 = int(w.a1);
    int lo = std::abs(a1 - b1) + 1;
    int hi = a1 + b1 - 1 < int(p) ? a1 + b1 - 1 : 2 * int(p) - a1 - b1 - 1;
    std::vector<Weight> out;
    for (int c1 = lo; c1 <= hi; ++c1)
        if ((a1 + b1 - c1) % 2 == 1) out.push_back(pl_adic(uint32_t(2 * c1 + 1), p));
    return out;
}

FieldElt fusion_coeff(const Weight& v, const Weight& w, const Weight& u, const RootSystem& F) {
    auto adm = p2_admissible(v, w, F.p);
    bool ok = false;
    for (auto& x : adm) ok = ok || x.v == u.v;
    if (!ok) throw std::invalid_argument("fusion_coeff: inadmissible triple");
    const int x = int(v.a1 + w.a1 - u.a1) - 1;  // = v + w - u - 1 halved
    const int x1 = x / 2;
    uint64_t num = binomial_mod_p(v.a1 - 1, x1, F.p) * binomial_mod_p(w.a1 - 1, x1, F.p) % F.p;
    uint64_t den = binomial_mod_p(u.a1 + x1, x1, F.p);
    if (den == 0) throw std::runtime_error("fusion_coeff: vanishing denominator on admissible triple");
    FieldElt d = F.from_int(int64_t(num)) / F.from_int(int64_t(den));
    if (x1 % 2) d = -d;
    return d;
}

namespace {

// (E_{v-1} (x) E_{w-1}) with the x innermost strands of each factor capped
// together, top to bottom.
TLMor fold_down(const ProjectorTable& T, const Weight& v, const Weight& w, int x) {
    const RootSystem& F = T.field();
    TLMor t = tensor(T.E(int(v.v) - 1), T.E(int(w.v) - 1));
    int width = int(v.v) - 1 + int(w.v) - 1;
    for (int k = 0; k < x; ++k) {
        t = compose(elementary_cap(F, width, int(v.v) - 2 - k), t);
        width -= 2;
    }
    return t;
}

int fold_x(const Weight& v, const Weight& w, const Weight& u) {
    return (int(v.v) + int(w.v) - int(u.v) - 1) / 2;
}

}  // namespace

TLMor eve_fusion_EX(const ProjectorTable& T, const Weight& v, const Weight& w, const Weight& u,
                    bool L0_middle, bool checked) {
    const int x = fold_x(v, w, u);
    TLMor down = fold_down(T, v, w, x);
    TLMor up = mirror(checked ? fold_down(T, w, v, x) : down, MirrorAxis::UpDown);
    TLMor mid = L0_middle ? T.L0(u.v) : T.E(int(u.v) - 1);
    return compose(up, compose(mid, down));
}

TLMor eve_fusion_diamond(const ProjectorTable& T, const Weight& v, const Weight& w, const Weight& u) {
    const int x = fold_x(v, w, u);
    TLMor down = fold_down(T, v, w, x);
    const TLMor& e = T.E(int(u.v) - 1);
    return compose(e, compose(down, compose(mirror(down, MirrorAxis::UpDown), e)));
}

// --- slice evaluation ---------------------------------------------------

namespace {

Matching matching_cup(const Matching& m, int i) {
    const int s0 = m.n_in, w = m.n_out;
    Matching r;
    r.n_in = uint16_t(s0);
    r.n_out = uint16_t(w + 2);
    r.mate.assign(s0 + w + 2, 0);
    auto remap = [&](int x) {
        if (x < s0) return x;
        int t = w - 1 - (x - s0);
        return r.top_index(t < i ? t : t + 2);
    };
    for (int x = 0; x < s0 + w; ++x) r.mate[remap(x)] = uint8_t(remap(m.mate[x]));
    r.mate[r.top_index(i)] = uint8_t(r.top_index(i + 1));
    r.mate[r.top_index(i + 1)] = uint8_t(r.top_index(i));
    return r;
}

bool matching_cap(const Matching& m, int i, Matching& r) {
    const int s0 = m.n_in, w = m.n_out;
    const int ci = m.top_index(i), ci1 = m.top_index(i + 1);
    if (int(m.mate[ci]) == ci1) return false;  // closed loop, delta = 0
    r.n_in = uint16_t(s0);
    r.n_out = uint16_t(w - 2);
    r.mate.assign(s0 + w - 2, 0);
    auto remap = [&](int x) {
        if (x < s0) return x;
        int t = w - 1 - (x - s0);
        return r.top_index(t < i ? t : t - 2);
    };
    for (int x = 0; x < s0 + w; ++x) {
        if (x == ci || x == ci1 || int(m.mate[x]) == ci || int(m.mate[x]) == ci1) continue;
        r.mate[remap(x)] = uint8_t(remap(m.mate[x]));
    }
    int a = remap(m.mate[ci]), b = remap(m.mate[ci1]);
    r.mate[a] = uint8_t(b);
    r.mate[b] = uint8_t(a);
    return true;
}

}  // namespace

TLMor slice_eval(const SliceProgram& prog, const ProjectorTable& boxes,
                 const std::unordered_map<std::string, TLMor>& coupons, const EvalOptions& opts) {
    const RootSystem& F = boxes.field();
    TLMor state = identity(F, prog.start_width);
    int w = prog.start_width;
    if (w > opts.width_limit) throw std::runtime_error("slice width limit exceeded at start");

    for (size_t idx = 0; idx < prog.slices.size(); ++idx) {
        const Slice& s = prog.slices[idx];
        switch (s.kind) {
            case Slice::Identity:
                break;
            case Slice::Cup: {
                if (w + 2 > opts.width_limit) {
                    std::ostringstream os;
                    os << "slice width limit " << opts.width_limit << " exceeded: width " << (w + 2)
                       << " at slice " << idx << " (peak " << prog.peak_width() << ")";
                    throw std::runtime_error(os.str());
                }
                if (s.pos < 0 || s.pos > w) throw std::invalid_argument("cup position out of range");
                TLMor next = tl_zero(F, state.n_in, w + 2);
                for (auto& [m, c] : state.terms) next.terms.emplace(matching_cup(m, s.pos), c);
                state = std::move(next);
                w += 2;
                break;
            }
            case Slice::Cap: {
                if (s.pos < 0 || s.pos > w - 2) throw std::invalid_argument("cap position out of range");
                TLMor next = tl_zero(F, state.n_in, w - 2);
                Matching r;
                for (auto& [m, c] : state.terms)
                    if (matching_cap(m, s.pos, r)) next.add_term(r, c);
                state = std::move(next);
                w -= 2;
                break;
            }
            case Slice::Cross: {
                if (s.pos < 0 || s.pos > w - 2) throw std::invalid_argument("crossing position out of range");
                FieldElt za = F.zeta_pow2(s.sign > 0 ? 1 : -1);
                FieldElt zb = F.zeta_pow2(s.sign > 0 ? -1 : 1);
                TLMor next = tl_zero(F, state.n_in, w);
                Matching r;
                for (auto& [m, c] : state.terms) {
                    next.add_term(m, c * za);
                    if (matching_cap(m, s.pos, r)) next.add_term(matching_cup(r, s.pos), c * zb);
                }
                state = std::move(next);
                break;
            }
            case Slice::Box: {
                const TLMor& e = boxes.E(s.box);
                state = compose_at(e, state, s.pos);
                break;
            }
            case Slice::Coupon: {
                auto it = coupons.find(s.coupon);
                if (it == coupons.end())
                    throw std::invalid_argument("slice_eval: missing coupon '" + s.coupon + "'");
                state = compose_at(it->second, state, s.pos);
                w += it->second.n_out - it->second.n_in;
                break;
            }
        }
    }
    return state;
}

// --- projector cache ------------------------------------------------------

void save_projectors(const ProjectorTable& table, std::ostream& os) {
    const RootSystem& F = table.field();
    os << "tlhb-projectors 1\n" << F.p << " " << F.q << " " << table.max_strands() << "\n";
    for (int n = 0; n <= table.max_strands(); ++n) {
        const TLMor& e = table.E(n);
        os << "E " << n << " " << e.term_count() << "\n";
        std::vector<std::string> lines;
        for (auto& [m, c] : e.terms) {
            std::ostringstream ls;
            ls << c.a << " " << c.b << " :";
            for (int i = 0; i < m.points(); ++i) ls << " " << int(m.mate[i]);
            lines.push_back(ls.str());
        }
        std::sort(lines.begin(), lines.end());
        for (auto& l : lines) os << l << "\n";
    }
}

bool load_projectors(const RootSystem& F, std::istream& is, std::vector<TLMor>& out) {
    std::string tag;
    int version = 0;
    if (!(is >> tag >> version) || tag != "tlhb-projectors" || version != 1) return false;
    uint32_t p = 0, q = 0;
    int maxn = -1;
    if (!(is >> p >> q >> maxn) || p != F.p || q != F.q || maxn != int(2 * F.p - 2)) return false;
    out.assign(maxn + 1, TLMor{});
    for (int k = 0; k <= maxn; ++k) {
        std::string e;
        int n = 0;
        size_t cnt = 0;
        if (!(is >> e >> n >> cnt) || e != "E" || n != k) return false;
        TLMor t = tl_zero(F, n, n);
        for (size_t j = 0; j < cnt; ++j) {
            uint32_t a, b;
            std::string colon;
            if (!(is >> a >> b >> colon) || colon != ":") return false;
            Matching m;
            m.n_in = m.n_out = uint16_t(n);
            m.mate.assign(2 * n, 0);
            for (int i = 0; i < 2 * n; ++i) {
                int x;
                if (!(is >> x)) return false;
                m.mate[i] = uint8_t(x);
            }
            if (!m.noncrossing()) return false;
            t.terms.emplace(m, F.elem(a, b));
        }
        out[k] = std::move(t);
    }
    return true;
}

ProjectorTable table_with_cache(const RootSystem& F, const std::string& path) {
    {
        std::ifstream in(path);
        std::vector<TLMor> loaded;
        if (in && load_projectors(F, in, loaded)) return ProjectorTable(F, std::move(loaded));
    }
    ProjectorTable t(F);
    std::ofstream outf(path);
    if (outf) save_projectors(t, outf);
    return t;
}

}  // namespace tlhb
