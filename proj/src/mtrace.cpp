#include "tlhb/mtrace.hpp"

#include <sstream>
#include <stdexcept>

namespace tlhb {

int total_strands(const ColorList& colors) {
    int n = 0;
    for (auto& c : colors) n += int(c.w.v) - 1;
    return n;
}

FieldElt TraceTable::t_E(const Weight& v, const RootSystem& F) const {
    if (!v.is_eve()) return F.zero();
    FieldElt a = F.from_int(int64_t(v.a1));
    return v.a1 % 2 ? a : -a;  // (-1)^{a1-1} a1
}

FieldElt TraceTable::t_L0(const Weight& v, const RootSystem& F) const {
    if (v.is_eve()) throw std::invalid_argument("t(L0) needs a non-Eve weight");
    FieldElt a = F.from_int(int64_t(v.a1));
    return v.a1 % 2 ? a : -a;
}

FieldElt mtrace(const ProjectorTable& T, const ColorList& colors, const TLMor& f) {
    const RootSystem& F = T.field();
    if (colors.empty()) {
        // End(1) = k: the coefficient of the empty diagram
        if (f.n_in != 0 || f.n_out != 0) throw std::invalid_argument("mtrace: signature mismatch");
        if (f.is_zero()) return F.zero();
        return f.terms.begin()->second;
    }
    if (total_strands(colors) != f.n_in || f.n_in != f.n_out)
        throw std::invalid_argument("mtrace: signature mismatch");
    if (colors.front().dual) {
        // t is invariant under the left-right mirror; normalize so the first
        // factor is plain before decomposing
        ColorList rev;
        for (auto it = colors.rbegin(); it != colors.rend(); ++it) rev.push_back({it->w, !it->dual});
        return mtrace(T, rev, mirror(f, MirrorAxis::LeftRight));
    }
    TLMor g = f;
    for (size_t i = colors.size(); i-- > 1;) g = partial_close_right(g, int(colors[i].w.v) - 1);
    TraceTable tt{F.p};
    EndoCoords c = T.decompose_endo(colors[0].w, g);
    FieldElt r = c.lambda * tt.t_E(colors[0].w, F);
    if (c.mu && !c.mu->is_zero()) r += *c.mu * tt.t_L0(colors[0].w, F);
    return r;
}

FieldElt eval_closed_skein(const SliceProgram& prog, const ProjectorTable& T,
                           const std::unordered_map<std::string, TLMor>& coupons,
                           const EvalOptions& opts) {
    const RootSystem& F = T.field();
    if (prog.start_width != 1 || prog.end_width() != 1)
        throw std::invalid_argument("eval_closed_skein: program must leave one cut strand open");
    TLMor r = slice_eval(prog, T, coupons, opts);
    if (r.is_zero()) return F.zero();
    if (r.term_count() != 1) throw std::runtime_error("eval_closed_skein: result not a multiple of the strand");
    return r.terms.begin()->second;  // times t(E_1) = 1
}

namespace {

// sparse application of "compose with the padded box" on the cap-index basis
using SparseOp = std::vector<std::vector<std::pair<int, FieldElt>>>;

TLMor caps_to_mor(const RootSystem& F, const std::vector<Matching>& caps,
                  const std::vector<FieldElt>& vec) {
    TLMor t = tl_zero(F, caps.empty() ? 0 : caps[0].n_in, 0);
    for (size_t i = 0; i < caps.size(); ++i)
        if (!vec[i].is_zero()) t.add_term(caps[i], vec[i]);
    return t;
}

}  // namespace

HomBasis hom_basis(const ProjectorTable& T, const ColorList& colors) {
    const RootSystem& F = T.field();
    const int n = total_strands(colors);
    HomBasis hb;
    hb.colors = colors;
    if (n % 2) return hb;  // parity: no caps at all

    std::vector<Matching> caps = all_matchings(n, 0);
    std::unordered_map<Matching, int, MatchingHash> index;
    for (size_t i = 0; i < caps.size(); ++i) index.emplace(caps[i], int(i));

    // one sparse compression operator per tensor factor
    std::vector<SparseOp> ops;
    int off = 0;
    for (auto& c : colors) {
        const int k = int(c.w.v) - 1;
        TLMor box = c.dual ? mirror(T.E(k), MirrorAxis::LeftRight) : T.E(k);
        TLMor pad = tensor(tensor(identity(F, off), box), identity(F, n - off - k));
        SparseOp op(caps.size());
        for (size_t j = 0; j < caps.size(); ++j) {
            TLMor cj = tl_zero(F, n, 0);
            cj.terms.emplace(caps[j], F.one());
            TLMor r = compose(cj, pad);
            for (auto& [m, coef] : r.terms) op[j].push_back({index.at(m), coef});
        }
        ops.push_back(std::move(op));
        off += k;
    }

    // compress every cap and keep a maximal independent set (incremental RREF)
    std::vector<std::vector<FieldElt>> pivrows;
    std::vector<int> pivcols;
    std::vector<std::vector<FieldElt>> kept_vecs;
    for (size_t j = 0; j < caps.size(); ++j) {
        std::vector<FieldElt> vec(caps.size(), F.zero());
        vec[j] = F.one();
        for (auto& op : ops) {
            std::vector<FieldElt> next(caps.size(), F.zero());
            for (size_t c = 0; c < caps.size(); ++c)
                if (!vec[c].is_zero())
                    for (auto& [tgt, coef] : op[c]) next[tgt] += vec[c] * coef;
            vec = std::move(next);
        }
        std::vector<FieldElt> red = vec;
        for (size_t r = 0; r < pivrows.size(); ++r) {
            FieldElt f = red[pivcols[r]];
            if (f.is_zero()) continue;
            for (size_t c = 0; c < caps.size(); ++c) red[c] -= pivrows[r][c] * f;
        }
        int pc = -1;
        for (size_t c = 0; c < caps.size(); ++c)
            if (!red[c].is_zero()) {
                pc = int(c);
                break;
            }
        if (pc < 0) continue;
        FieldElt inv = red[pc].inv();
        for (auto& x : red) x *= inv;
        pivrows.push_back(std::move(red));
        pivcols.push_back(pc);
        kept_vecs.push_back(std::move(vec));
    }

    for (auto& v : kept_vecs) hb.basis.push_back(caps_to_mor(F, caps, v));

    // Gram matrix of B(x, y) = t(y o x) with y the mirrored cups
    const size_t r = hb.basis.size();
    hb.gram.assign(r, std::vector<FieldElt>(r, F.zero()));
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < r; ++j) {
            TLMor comp = compose(mirror(hb.basis[j], MirrorAxis::UpDown), hb.basis[i]);
            hb.gram[i][j] = mtrace(T, colors, comp);
        }
    }

    // maximal invertible minor by full-pivot elimination
    std::vector<std::vector<FieldElt>> m = hb.gram;
    std::vector<int> rows(r), cols(r);
    for (size_t i = 0; i < r; ++i) rows[i] = cols[i] = int(i);
    size_t rank = 0;
    for (; rank < r; ++rank) {
        int pi = -1, pj = -1;
        for (size_t i = rank; i < r && pi < 0; ++i)
            for (size_t j = rank; j < r; ++j)
                if (!m[rows[i]][cols[j]].is_zero()) {
                    pi = int(i);
                    pj = int(j);
                    break;
                }
        if (pi < 0) break;
        std::swap(rows[rank], rows[size_t(pi)]);
        std::swap(cols[rank], cols[size_t(pj)]);
        FieldElt piv = m[rows[rank]][cols[rank]].inv();
        for (size_t i = rank + 1; i < r; ++i) {
            FieldElt f = m[rows[i]][cols[rank]] * piv;
            if (f.is_zero()) continue;
            for (size_t j = 0; j < r; ++j) m[rows[i]][cols[j]] -= m[rows[rank]][cols[j]] * f;
        }
    }
    hb.minor_rows.assign(rows.begin(), rows.begin() + rank);
    hb.minor_cols.assign(cols.begin(), cols.begin() + rank);
    return hb;
}

std::vector<std::pair<TLMor, TLMor>> dual_pairs(const ProjectorTable& T, const HomBasis& hb) {
    const RootSystem& F = T.field();
    const int n = total_strands(hb.colors);
    std::vector<std::pair<TLMor, TLMor>> out;
    const size_t r = hb.dim();
    if (r == 0) {
        if (hb.basis.size() > 0)
            throw std::runtime_error("cutting: the t-pairing is identically zero on a nonzero Hom space");
        return out;
    }
    // invert the minor G[rows, cols]
    std::vector<std::vector<FieldElt>> a(r, std::vector<FieldElt>(2 * r, F.zero()));
    for (size_t i = 0; i < r; ++i) {
        for (size_t j = 0; j < r; ++j) a[i][j] = hb.gram[hb.minor_rows[i]][hb.minor_cols[j]];
        a[i][r + i] = F.one();
    }
    for (size_t c = 0; c < r; ++c) {
        size_t piv = c;
        while (piv < r && a[piv][c].is_zero()) ++piv;
        if (piv == r) throw std::runtime_error("cutting: singular Gram minor");
        std::swap(a[c], a[piv]);
        FieldElt inv = a[c][c].inv();
        for (auto& x : a[c]) x *= inv;
        for (size_t i = 0; i < r; ++i) {
            if (i == c) continue;
            FieldElt f = a[i][c];
            if (f.is_zero()) continue;
            for (size_t j = 0; j < 2 * r; ++j) a[i][j] -= a[c][j] * f;
        }
    }
    // x^j are the row caps, x_j = sum_c (M^{-1})_{cj} mirrored cups
    for (size_t j = 0; j < r; ++j) {
        TLMor xj = tl_zero(F, 0, n);
        for (size_t c = 0; c < r; ++c) {
            FieldElt coef = a[c][r + j];
            if (!coef.is_zero())
                xj = xj + mirror(hb.basis[hb.minor_cols[c]], MirrorAxis::UpDown) * coef;
        }
        out.push_back({hb.basis[hb.minor_rows[j]], std::move(xj)});
    }
    return out;
}

TLMor cutting(const ProjectorTable& T, const HomBasis& hb) {
    const RootSystem& F = T.field();
    const int n = total_strands(hb.colors);
    TLMor lambda = tl_zero(F, n, n);
    for (auto& [xi_up, xi_dn] : dual_pairs(T, hb)) lambda = lambda + compose(xi_dn, xi_up);
    return lambda;
}

TLMor cutting(const ProjectorTable& T, const ColorList& colors) {
    return cutting(T, hom_basis(T, colors));
}

TLMor chromatic(const ProjectorTable& T, const Weight& v) {
    const RootSystem& F = T.field();
    if (v.v < 2 || v.v > 2 * F.p - 1) throw std::invalid_argument("chromatic: weight out of range");
    FieldElt c = F.from_int(int64_t(v.a1));
    if (v.a1 % 2 == 0) c = -c;  // (-1)^{a1-1} a1
    if (v.is_eve()) return tensor(T.E(int(v.v) - 1), identity(F, 1)) * c;
    return T.fusion_system(v).Z0 * c;
}

TLMor chromatic_identity_lhs(const ProjectorTable& T, const Weight& v, int width_limit) {
    const RootSystem& F = T.field();
    const int a = int(v.v) - 1;
    TLMor acc = tl_zero(F, a + 1, a + 1);
    for (uint32_t w = 2; w <= 2 * F.p - 1; ++w) {
        Weight ww = pl_adic(w, F.p);
        const int b = int(w) - 1;
        HomBasis hb = hom_basis(T, {{v, false}, {ww, true}});
        for (auto& [xi_up, xi_dn] : dual_pairs(T, hb)) {
            std::unordered_map<std::string, TLMor> coupons;
            coupons.emplace("xi", xi_up);
            coupons.emplace("xj", xi_dn);
            coupons.emplace("c", chromatic(T, ww));
            SliceProgram prog;
            prog.start_width = a + 1;
            prog.box(a, 0);
            blocks::cup_block(prog, a, b);  // the G-loop: [V, W*, W, T(1)]
            prog.box(b, a + b);
            prog.coupon("xi", 0);           // collapses V (x) W* through the unit
            prog.coupon("c", 0);
            prog.coupon("xj", 0);
            blocks::cap_block(prog, a, b);
            EvalOptions opts;
            opts.width_limit = width_limit;
            acc = acc + slice_eval(prog, T, coupons, opts);
        }
    }
    return acc;
}

EndoCoords delta0(const Weight& v, const RootSystem& F) {
    EndoCoords c;
    c.lambda = F.zero();
    if (v.is_eve()) return c;
    c.mu = F.zero();
    if (v.a1 % 2 == 1) {
        // 8 sum b^2 = 4(p-1)p(2p-1)/3; contains a factor p unless p = 3
        int64_t s = 0;
        for (int64_t b = 1; b < int64_t(F.p); ++b) s += b * b;
        c.mu = F.from_int(8 * s);
    }
    return c;
}

EndoCoords delta0_oracle(const ProjectorTable& T, const Weight& v, int width_limit) {
    const RootSystem& F = T.field();
    const int a = int(v.v) - 1;

    // The red circle around an open v-cable, turned blue: each colour's
    // chromatic coupon grabs the cable's own last T(1) substrand, the circle
    // then swallowing the whole cable with the meridian pattern.
    TLMor D = tl_zero(F, a, a);
    for (uint32_t w = 2; w <= 2 * F.p - 1; ++w) {
        Weight ww = pl_adic(w, F.p);
        const int b = int(w) - 1;
        std::unordered_map<std::string, TLMor> coupons;
        coupons.emplace("c", chromatic(T, ww));
        SliceProgram prog;
        prog.start_width = a;
        prog.box(a, 0);
        blocks::cup_block(prog, a, b);              // [V, WL, WR]
        prog.box(b, a);
        blocks::cross_block(prog, a - 1, 1, b, true);  // last substrand over the near arc
        prog.coupon("c", a - 1);                       // c on (WL, substrand)
        blocks::cross_block(prog, 0, a - 1, b, true);  // rest of the cable follows
        blocks::cross_block(prog, b, a, b, false);     // far arc over the cable
        blocks::cap_block(prog, 0, b);
        EvalOptions opts;
        opts.width_limit = width_limit;
        D = D + slice_eval(prog, T, coupons, opts);
    }
    TLMor compressed = compose(T.E(a), compose(D, T.E(a)));
    return T.decompose_endo(v, compressed);
}

}  // namespace tlhb
