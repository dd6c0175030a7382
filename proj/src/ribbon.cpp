#include "tlhb/ribbon.hpp"

#include <sstream>
#include <stdexcept>

namespace tlhb {

namespace blocks {

void cup_block(SliceProgram& prog, int pos, int m) {
    for (int k = 0; k < m; ++k) prog.cup(pos + k);
}

void cap_block(SliceProgram& prog, int pos, int m) {
    for (int k = 0; k < m; ++k) prog.cap(pos + m - 1 - k);
}

void cross_block(SliceProgram& prog, int pos, int a, int b, bool left_over) {
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) prog.cross(pos + (a - 1 - i) + j, left_over ? +1 : -1);
}

}  // namespace blocks

BraidCoords double_braiding_T1(const Weight& v, const RootSystem& F) {
    if (v.v < 2 || v.v > 2 * F.p - 1) throw std::invalid_argument("double_braiding_T1: weight out of range");
    BraidCoords b;
    b.v = v;
    const int64_t e = int64_t(v.v);
    if (v.is_eve()) {
        b.eve_case = true;
        b.cE = F.zeta_pow(e - 1);
        b.cL = F.from_int(2) * F.zeta_pow(e - 2);
    } else {
        b.eve_case = false;
        b.has_E = v.v != 2 * F.p - 1;
        b.has_B = v.v != 3;
        b.cE = b.has_E ? F.zeta_pow(e - 1) : F.zero();
        b.cA = F.zeta_pow(e - 3);
        b.cAt = F.zeta_pow(e - 3);
        b.cY = F.from_int(2) * F.zeta_pow(e - 2);
        b.cB = b.has_B ? F.zeta_pow(e - 1) : F.zero();
    }
    return b;
}

TLMor realize_double_braiding_T1(const ProjectorTable& T, const Weight& v) {
    BraidCoords b = double_braiding_T1(v, T.field());
    const int n = int(v.v);
    if (b.eve_case) {
        // the Prop's E_v and L0_v live on v strands, i.e. the object of weight v+1
        return T.E(n) * b.cE + T.L0(v.v + 1) * b.cL;
    }
    const FusionSystem& fs = T.fusion_system(v);
    TLMor r = fs.A0 * b.cA + fs.Atilde0 * b.cAt + fs.Y0 * b.cY;
    if (b.has_E) r = r + T.E(n) * b.cE;
    if (b.has_B) r = r + fs.B1 * b.cB;
    return r;
}

EndoCoords twist_power(const Weight& v, int64_t k, const RootSystem& F) {
    EndoCoords c;
    if (v.is_eve() || v.v == 1) {
        FieldElt lam = F.zeta_pow2(3 * k);
        if ((int64_t(v.a1) * k) % 2 != 0) lam = -lam;
        if (v.v == 1) lam = F.one();  // the unit is untwisted
        c.lambda = lam;
        return c;
    }
    c.lambda = F.one();
    c.mu = F.from_int(2 * k) * F.zeta_pow(-1);
    return c;
}

EndoCoords encircle(const Weight& v, const Weight& w, const RootSystem& F) {
    if (!v.is_eve()) throw std::invalid_argument("encircle: closed form requires an Eve circle");
    EndoCoords c;
    FieldElt sgn_b = w.a1 % 2 ? F.one() : -F.one();  // (-1)^{b1-1}
    if (w.is_eve()) {
        c.lambda = F.from_int(int64_t(v.v)) * sgn_b;
        return c;
    }
    FieldElt sgn_ab = (v.a1 + w.a1) % 2 == 0 ? F.one() : -F.one();  // (-1)^{(a1-1)+(b1-1)}
    c.lambda = F.zero();
    c.mu = F.from_int(2 * int64_t(v.v)) * sgn_ab;
    return c;
}

namespace {

Matching pairs_matching(int n_in, int n_out, const std::vector<std::pair<int, int>>& bb,
                        const std::vector<std::pair<int, int>>& tt,
                        const std::vector<std::pair<int, int>>& bt) {
    Matching m;
    m.n_in = uint16_t(n_in);
    m.n_out = uint16_t(n_out);
    m.mate.assign(n_in + n_out, 0);
    auto link = [&](int x, int y) { m.mate[x] = uint8_t(y); m.mate[y] = uint8_t(x); };
    for (auto& [i, j] : bb) link(i, j);
    for (auto& [i, j] : tt) link(m.top_index(i), m.top_index(j));
    for (auto& [i, j] : bt) link(i, m.top_index(j));
    return m;
}

TLMor single(const RootSystem& F, const Matching& m) {
    TLMor t = tl_zero(F, m.n_in, m.n_out);
    t.terms.emplace(m, F.one());
    return t;
}

// nested pairs (lo, hi), (lo+1, hi-1), ...
void add_nest(std::vector<std::pair<int, int>>& out, int lo, int hi) {
    for (int i = lo, j = hi; i < j; ++i, --j) out.push_back({i, j});
}

// the four-case closed form before the overall sign prefactors
TLMor hopf_cases(const ProjectorTable& T, const Weight& v, const Weight& w) {
    const RootSystem& F = T.field();
    const int a = int(v.v) - 1, b = int(w.v) - 1;
    const int B = 2 * a, Tp = 2 * b;
    FieldElt two = F.from_int(2);

    auto compress = [&](const TLMor& mid) {
        TLMor bot = v.is_eve() ? tensor(T.E(a), T.E(a))
                               : tensor(mirror(T.E(a), MirrorAxis::LeftRight), T.E(a));
        TLMor top = w.is_eve() ? tensor(T.E(b), T.E(b))
                               : tensor(mirror(T.E(b), MirrorAxis::LeftRight), T.E(b));
        return compose(top, compose(mid, bot));
    };

    if (v.is_eve() && w.is_eve()) {
        std::vector<std::pair<int, int>> bb, tt;
        add_nest(bb, 0, B - 1);
        add_nest(tt, 0, Tp - 1);
        TLMor t1 = single(F, pairs_matching(B, Tp, bb, tt, {}));
        bb.clear();
        tt.clear();
        add_nest(bb, 1, B - 2);
        add_nest(tt, 1, Tp - 2);
        TLMor t2 = single(F, pairs_matching(B, Tp, bb, tt, {{0, 0}, {B - 1, Tp - 1}}));
        return compress(t1 * F.zeta + t2 * two);
    }

    if (v.is_eve() && !w.is_eve()) {
        std::vector<std::pair<int, int>> bb, tt;
        add_nest(bb, 0, B - 1);
        add_nest(tt, 0, Tp - 1);
        TLMor t1 = single(F, pairs_matching(B, Tp, bb, tt, {}));

        bb.clear();
        tt.clear();
        add_nest(bb, 1, B - 2);
        add_nest(tt, 2, Tp - 3);
        tt.push_back({Tp - 2, Tp - 1});
        TLMor t2 = single(F, pairs_matching(B, Tp, bb, tt, {{0, 0}, {B - 1, 1}}));
        TLMor t3 = mirror(t2, MirrorAxis::LeftRight);

        bb.clear();
        tt.clear();
        add_nest(bb, 0, B - 1);
        add_nest(tt, 2, Tp - 3);
        tt.push_back({0, 1});
        tt.push_back({Tp - 2, Tp - 1});
        TLMor t4 = single(F, pairs_matching(B, Tp, bb, tt, {}));

        return compress(t1 * (-F.one()) + (t2 + t3) * two + t4 * (two * F.zeta));
    }

    if (!v.is_eve() && w.is_eve()) {
        // 180-degree rotation of the previous case with the roles swapped
        TLMor r = hopf_cases(T, w, v);
        return mirror(mirror(r, MirrorAxis::UpDown), MirrorAxis::LeftRight);
    }

    std::vector<std::pair<int, int>> bb, tt;
    add_nest(bb, 0, B - 1);
    add_nest(tt, 0, Tp - 1);
    TLMor t1 = single(F, pairs_matching(B, Tp, bb, tt, {}));

    bb.clear();
    tt.clear();
    add_nest(bb, 2, B - 3);
    bb.push_back({B - 2, B - 1});
    add_nest(tt, 2, Tp - 3);
    tt.push_back({0, 1});
    TLMor t2 = single(F, pairs_matching(B, Tp, bb, tt, {{0, Tp - 2}, {1, Tp - 1}}));
    TLMor t3 = mirror(t2, MirrorAxis::LeftRight);

    bb.clear();
    tt.clear();
    add_nest(bb, 2, B - 3);
    bb.push_back({0, 1});
    add_nest(tt, 2, Tp - 3);
    tt.push_back({0, 1});
    TLMor t4 = single(F, pairs_matching(B, Tp, bb, tt, {{B - 2, Tp - 2}, {B - 1, Tp - 1}}));
    TLMor t5 = mirror(t4, MirrorAxis::LeftRight);

    bb.clear();
    tt.clear();
    add_nest(bb, 2, B - 3);
    bb.push_back({0, 1});
    bb.push_back({B - 2, B - 1});
    add_nest(tt, 2, Tp - 3);
    tt.push_back({0, 1});
    tt.push_back({Tp - 2, Tp - 1});
    TLMor t6 = single(F, pairs_matching(B, Tp, bb, tt, {}));

    FieldElt tz = two * F.zeta;
    return compress(t1 + (t2 + t3) * tz - (t4 + t5) * tz + t6 * F.from_int(4));
}

}  // namespace

TLMor hopf_pairing(const ProjectorTable& T, const Weight& v, const Weight& w) {
    const RootSystem& F = T.field();
    if (!v.is_projective(F.p) || !w.is_projective(F.p))
        throw std::invalid_argument("hopf_pairing needs projective weights");
    TLMor body = hopf_cases(T, v, w);
    FieldElt sa = v.a1 % 2 ? F.one() : -F.one();
    FieldElt sb = w.a1 % 2 ? F.one() : -F.one();
    if (v.is_eve() && w.is_eve()) return body * (sa * sb);
    if (v.is_eve()) return body * sb;
    if (w.is_eve()) return body * sa;
    return body;
}

std::vector<EveBraidTerm> braiding_eves(const Weight& v, const Weight& w, bool dbl, const RootSystem& F) {
    std::vector<EveBraidTerm> out;
    for (auto& u : p2_admissible(v, w, F.p)) {
        EveBraidTerm t;
        t.u = u;
        FieldElt d = fusion_coeff(v, w, u, F);
        if (dbl) {
            int64_t e = 1 - 2 * int64_t(v.a1) * v.a1 - 2 * int64_t(w.a1) * w.a1;
            FieldElt pre = F.zeta_pow(e) * d;
            t.coef_E = pre;
            t.coef_L = pre * F.from_int(2) * F.zeta_pow(-1);
        } else {
            // zeta^{(u^2-v^2-w^2+1)/4}: an integer power of zeta^{1/2}
            int64_t twice = (int64_t(u.v) * u.v - int64_t(v.v) * v.v - int64_t(w.v) * w.v + 1) / 2;
            FieldElt lam = F.zeta_pow2(twice);
            t.coef_E = lam * d;
            t.coef_L = lam * d * F.zeta_pow(-1);
        }
        out.push_back(t);
    }
    return out;
}

TLMor realize_braiding_eves(const ProjectorTable& T, const Weight& v, const Weight& w, bool dbl) {
    const RootSystem& F = T.field();
    const int n = int(v.v) - 1 + int(w.v) - 1;
    TLMor r = tl_zero(F, n, n);
    for (auto& t : braiding_eves(v, w, dbl, F)) {
        r = r + eve_fusion_EX(T, v, w, t.u, false, !dbl) * t.coef_E;
        r = r + eve_fusion_EX(T, v, w, t.u, true, !dbl) * t.coef_L;
    }
    return r;
}

TLMor quotient_project(const ProjectorTable& T, const Weight& v, const Weight& w) {
    const RootSystem& F = T.field();
    const int n = int(v.v) - 1 + int(w.v) - 1;
    TLMor r = tl_zero(F, n, n);
    for (auto& u : p2_admissible(v, w, F.p))
        r = r + eve_fusion_EX(T, v, w, u, false, false) * fusion_coeff(v, w, u, F);
    return r;
}

// --- oracles ---------------------------------------------------------------

TLMor cable_crossing(const ProjectorTable& T, const std::vector<Weight>& left,
                     const std::vector<Weight>& right, int sign, int width_limit) {
    int a = 0, b = 0;
    for (auto& c : left) a += int(c.v) - 1;
    for (auto& c : right) b += int(c.v) - 1;
    SliceProgram prog;
    prog.start_width = a + b;
    int pos = 0;
    for (auto& c : left) {
        prog.box(int(c.v) - 1, pos);
        pos += int(c.v) - 1;
    }
    for (auto& c : right) {
        prog.box(int(c.v) - 1, pos);
        pos += int(c.v) - 1;
    }
    blocks::cross_block(prog, 0, a, b, sign > 0);
    pos = 0;
    for (auto& c : right) {
        prog.box(int(c.v) - 1, pos);
        pos += int(c.v) - 1;
    }
    for (auto& c : left) {
        prog.box(int(c.v) - 1, pos);
        pos += int(c.v) - 1;
    }
    EvalOptions opts;
    opts.width_limit = width_limit;
    return slice_eval(prog, T, {}, opts);
}

TLMor oracle_double_braiding_T1(const ProjectorTable& T, const Weight& v) {
    const RootSystem& F = T.field();
    const int a = int(v.v) - 1;
    SliceProgram prog;
    prog.start_width = a + 1;
    prog.box(a, 0);
    blocks::cross_block(prog, 0, a, 1, true);
    blocks::cross_block(prog, 0, 1, a, true);
    prog.box(a, 0);
    EvalOptions opts;
    opts.width_limit = 64;
    TLMor raw = slice_eval(prog, T, {}, opts);
    if (v.v == 2 * T.p() - 1) {
        // quotient boundary: discard the T(2p-1) block
        const FusionSystem& fs = T.fusion_system(v);
        return compose(raw, fs.A0 + fs.Atilde0 + fs.B1);
    }
    return compose(raw, tensor(T.E(a), identity(F, 1)));
}

TLMor oracle_twist(const ProjectorTable& T, const Weight& v, int k, int width_limit) {
    const int n = int(v.v) - 1;
    const int kk = k >= 0 ? k : -k;
    SliceProgram prog;
    prog.start_width = n;
    prog.box(n, 0);
    for (int rep = 0; rep < kk; ++rep) {
        blocks::cup_block(prog, n, n);
        blocks::cross_block(prog, 0, n, n, k > 0);
        blocks::cap_block(prog, n, n);
    }
    EvalOptions opts;
    opts.width_limit = width_limit;
    return slice_eval(prog, T, {}, opts);
}

int oracle_encircle_width(const Weight& v, const Weight& w) {
    return int(w.v) - 1 + 2 * (int(v.v) - 1);
}

TLMor oracle_encircle(const ProjectorTable& T, const Weight& v, const Weight& w, int width_limit) {
    const int a = int(v.v) - 1;  // circle cable
    const int b = int(w.v) - 1;  // through cable
    SliceProgram prog;
    prog.start_width = b;
    prog.box(b, 0);
    blocks::cup_block(prog, b, a);
    prog.box(a, b);
    blocks::cross_block(prog, 0, b, a, true);   // strand over the circle's near arc
    blocks::cross_block(prog, a, b, a, false);  // far arc over the strand
    blocks::cap_block(prog, 0, a);
    EvalOptions opts;
    opts.width_limit = width_limit;
    return slice_eval(prog, T, {}, opts);
}

int oracle_hopf_width(const Weight& v, const Weight& w) {
    return 2 * (int(v.v) - 1) + 2 * (int(w.v) - 1);
}

TLMor oracle_hopf(const ProjectorTable& T, const Weight& v, const Weight& w, int width_limit) {
    const int a = int(v.v) - 1, b = int(w.v) - 1;
    SliceProgram prog;
    prog.start_width = 2 * a;
    std::unordered_map<std::string, TLMor> coupons;
    coupons.emplace("Evs", mirror(T.E(a), MirrorAxis::LeftRight));
    coupons.emplace("Ews", mirror(T.E(b), MirrorAxis::LeftRight));
    prog.coupon("Evs", 0);
    prog.box(a, a);
    blocks::cup_block(prog, 0, b);                 // [WL, WR, V*, V]
    blocks::cross_block(prog, b, b, a, true);      // WR over V*
    blocks::cross_block(prog, b + a, b, a, false); // V over WR from the right
    blocks::cap_block(prog, b, a);                 // close V* against V
    prog.coupon("Ews", 0);
    prog.box(b, b);
    EvalOptions opts;
    opts.width_limit = width_limit;
    return slice_eval(prog, T, coupons, opts);
}

TLMor oracle_braiding_eves(const ProjectorTable& T, const Weight& v, const Weight& w, bool dbl) {
    const int a = int(v.v) - 1, b = int(w.v) - 1;
    SliceProgram prog;
    prog.start_width = a + b;
    prog.box(a, 0);
    prog.box(b, a);
    blocks::cross_block(prog, 0, a, b, true);
    if (dbl) blocks::cross_block(prog, 0, b, a, true);
    EvalOptions opts;
    opts.width_limit = 64;
    TLMor raw = slice_eval(prog, T, {}, opts);
    // compare in the quotient: compress the source by the admissible projector
    return compose(raw, quotient_project(T, v, w));
}

}  // namespace tlhb
