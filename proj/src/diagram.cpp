#include "tlhb/diagram.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tlhb {

bool Matching::noncrossing() const {
    const int N = points();
    if (N % 2) return false;
    std::vector<int> stack;
    for (int i = 0; i < N; ++i) {
        if (mate[i] > i) {
            stack.push_back(i);
        } else {
            if (stack.empty() || stack.back() != int(mate[i])) return false;
            stack.pop_back();
        }
    }
    return stack.empty();
}

void TLMor::add_term(const Matching& m, const FieldElt& c) {
    if (c.is_zero()) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
        terms.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms.erase(it);
    }
}

TLMor TLMor::operator+(const TLMor& o) const {
    if (n_in != o.n_in || n_out != o.n_out) throw std::invalid_argument("TLMor signature mismatch in +");
    TLMor r = *this;
    for (auto& [m, c] : o.terms) r.add_term(m, c);
    return r;
}

TLMor TLMor::operator-(const TLMor& o) const {
    if (n_in != o.n_in || n_out != o.n_out) throw std::invalid_argument("TLMor signature mismatch in -");
    TLMor r = *this;
    for (auto& [m, c] : o.terms) r.add_term(m, -c);
    return r;
}

TLMor TLMor::operator*(const FieldElt& c) const {
    TLMor r = tl_zero(*F, n_in, n_out);
    if (c.is_zero()) return r;
    for (auto& [m, x] : terms) r.terms.emplace(m, x * c);
    return r;
}

bool TLMor::operator==(const TLMor& o) const {
    if (n_in != o.n_in || n_out != o.n_out || terms.size() != o.terms.size()) return false;
    for (auto& [m, c] : terms) {
        auto it = o.terms.find(m);
        if (it == o.terms.end() || !(it->second == c)) return false;
    }
    return true;
}

std::string TLMor::dump() const {
    std::vector<std::string> lines;
    for (auto& [m, c] : terms) {
        std::ostringstream os;
        os << render_raw(c) << " :";
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < m.points(); ++i)
            if (m.mate[i] > i) pairs.push_back({i, m.mate[i]});
        std::sort(pairs.begin(), pairs.end());
        for (auto& [x, y] : pairs) os << " (" << x << "," << y << ")";
        lines.push_back(os.str());
    }
    std::sort(lines.begin(), lines.end());
    std::ostringstream os;
    os << n_in << " -> " << n_out << ", " << terms.size() << " terms\n";
    for (auto& l : lines) os << l << "\n";
    return os.str();
}

TLMor tl_zero(const RootSystem& F, int n_in, int n_out) {
    TLMor r;
    r.n_in = uint16_t(n_in);
    r.n_out = uint16_t(n_out);
    r.F = &F;
    return r;
}

TLMor identity(const RootSystem& F, int n) {
    TLMor r = tl_zero(F, n, n);
    Matching m;
    m.n_in = m.n_out = uint16_t(n);
    m.mate.assign(2 * n, 0);
    for (int i = 0; i < n; ++i) {
        m.mate[i] = uint8_t(2 * n - 1 - i);
        m.mate[2 * n - 1 - i] = uint8_t(i);
    }
    r.terms.emplace(m, F.one());
    return r;
}

TLMor elementary_cap(const RootSystem& F, int n, int i) {
    if (i < 0 || i > n - 2) throw std::invalid_argument("cap position out of range");
    TLMor r = tl_zero(F, n, n - 2);
    Matching m;
    m.n_in = uint16_t(n);
    m.n_out = uint16_t(n - 2);
    m.mate.assign(2 * n - 2, 0);
    auto link = [&](int x, int y) { m.mate[x] = uint8_t(y); m.mate[y] = uint8_t(x); };
    link(i, i + 1);
    int t = 0;
    for (int j = 0; j < n; ++j) {
        if (j == i || j == i + 1) continue;
        link(j, m.top_index(t++));
    }
    r.terms.emplace(m, F.one());
    return r;
}

TLMor elementary_cup(const RootSystem& F, int n, int i) {
    if (i < 0 || i > n) throw std::invalid_argument("cup position out of range");
    TLMor r = tl_zero(F, n, n + 2);
    Matching m;
    m.n_in = uint16_t(n);
    m.n_out = uint16_t(n + 2);
    m.mate.assign(2 * n + 2, 0);
    auto link = [&](int x, int y) { m.mate[x] = uint8_t(y); m.mate[y] = uint8_t(x); };
    link(m.top_index(i), m.top_index(i + 1));
    for (int j = 0; j < n; ++j) link(j, m.top_index(j < i ? j : j + 2));
    r.terms.emplace(m, F.one());
    return r;
}

namespace {

// Stack one matching on another, tracking closed loops. Returns false when a
// loop forms (the term dies, delta = 0).
bool stack_matchings(const Matching& mf, const Matching& mg, Matching& out) {
    const int a = mf.n_in, b = mf.n_out, c = mg.n_out;
    out.n_in = uint16_t(a);
    out.n_out = uint16_t(c);
    out.mate.assign(a + c, 0);

    std::vector<char> glue_seen(b, 0);
    std::vector<char> done(a + c, 0);

    auto res_top = [&](int t) { return a + (c - 1 - t); };
    auto walk = [&](int start_res) {
        // Returns the result index where the path ends.
        int side;  // 0 = about to step inside f, 1 = inside g
        int cur;
        if (start_res < a) {
            side = 0;
            cur = start_res;  // f circular index
        } else {
            side = 1;
            cur = b + (c - 1 - (a + c - 1 - start_res));  // g circular index of this top
        }
        for (;;) {
            if (side == 0) {
                int x = mf.mate[cur];
                if (x < a) return int(x);  // ends at a bottom
                int j = b - 1 - (x - a);   // glue strand
                glue_seen[j] = 1;
                side = 1;
                cur = j;
            } else {
                int y = mg.mate[cur];
                if (y >= b) return res_top(c - 1 - (y - b));
                glue_seen[y] = 1;
                side = 0;
                cur = a + (b - 1 - y);  // f circular index of f-top y
            }
        }
    };

    for (int s = 0; s < a + c; ++s) {
        if (done[s]) continue;
        int e = walk(s);
        out.mate[s] = uint8_t(e);
        out.mate[e] = uint8_t(s);
        done[s] = done[e] = 1;
    }
    for (int j = 0; j < b; ++j)
        if (!glue_seen[j]) return false;  // an untouched glue strand lies on a loop
    return true;
}

}  // namespace

TLMor compose(const TLMor& g, const TLMor& f) {
    if (f.n_out != g.n_in) throw std::invalid_argument("compose: signature mismatch");
    TLMor out = tl_zero(*f.F, f.n_in, g.n_out);
    Matching scratch;
    for (auto& [mg, cg] : g.terms) {
        for (auto& [mf, cf] : f.terms) {
            if (stack_matchings(mf, mg, scratch)) out.add_term(scratch, cf * cg);
        }
    }
    return out;
}

TLMor tensor(const TLMor& f, const TLMor& g) {
    const int a1 = f.n_in, b1 = f.n_out, a2 = g.n_in, b2 = g.n_out;
    TLMor out = tl_zero(*f.F, a1 + a2, b1 + b2);
    Matching m;
    m.n_in = uint16_t(a1 + a2);
    m.n_out = uint16_t(b1 + b2);
    // Index maps from each factor's circular order into the product's.
    auto f_map = [&](int x) { return x < a1 ? x : m.top_index(b1 - 1 - (x - a1)); };
    auto g_map = [&](int x) { return x < a2 ? a1 + x : m.top_index(b1 + (b2 - 1 - (x - a2))); };
    for (auto& [mf, cf] : f.terms) {
        for (auto& [mg, cg] : g.terms) {
            m.mate.assign(a1 + a2 + b1 + b2, 0);
            for (int x = 0; x < a1 + b1; ++x) m.mate[f_map(x)] = uint8_t(f_map(mf.mate[x]));
            for (int x = 0; x < a2 + b2; ++x) m.mate[g_map(x)] = uint8_t(g_map(mg.mate[x]));
            out.add_term(m, cf * cg);
        }
    }
    return out;
}

TLMor crossing(const RootSystem& F, int n, int i, int sign) {
    if (i < 0 || i > n - 2) throw std::invalid_argument("crossing position out of range");
    TLMor r = identity(F, n) * F.zeta_pow2(sign > 0 ? 1 : -1);
    TLMor e = compose(elementary_cup(F, n - 2, i), elementary_cap(F, n, i));
    return r + e * F.zeta_pow2(sign > 0 ? -1 : 1);
}

TLMor mirror(const TLMor& f, MirrorAxis axis) {
    const int a = f.n_in, b = f.n_out;
    TLMor out = axis == MirrorAxis::UpDown ? tl_zero(*f.F, b, a) : tl_zero(*f.F, a, b);
    Matching m;
    m.n_in = out.n_in;
    m.n_out = out.n_out;
    auto remap = [&](int x) {
        if (axis == MirrorAxis::UpDown) {
            // old bottom i -> new top i; old top j -> new bottom j
            if (x < a) return m.top_index(x);
            return b - 1 - (x - a);
        }
        // left-right: bottom i -> bottom a-1-i; top j -> top b-1-j
        if (x < a) return a - 1 - x;
        int j = b - 1 - (x - a);
        return m.top_index(b - 1 - j);
    };
    for (auto& [mf, c] : f.terms) {
        m.mate.assign(a + b, 0);
        for (int x = 0; x < a + b; ++x) m.mate[remap(x)] = uint8_t(remap(mf.mate[x]));
        out.add_term(m, c);
    }
    return out;
}

TLMor partial_close_right(const TLMor& f, int k) {
    if (f.n_in != f.n_out) throw std::invalid_argument("partial close needs an endomorphism");
    const int n = f.n_in;
    if (k < 0 || k > n) throw std::invalid_argument("partial close: k out of range");
    TLMor out = tl_zero(*f.F, n - k, n - k);
    Matching res;
    res.n_in = res.n_out = uint16_t(n - k);
    for (auto& [m, c] : f.terms) {
        // Glue top t to bottom t for t >= n-k; drop the term if a loop forms.
        std::vector<char> seen(2 * n, 0);
        res.mate.assign(2 * (n - k), 0);
        bool dead = false;
        auto follow = [&](int start) {
            int cur = start;
            for (;;) {
                seen[cur] = 1;
                int x = m.mate[cur];
                seen[x] = 1;
                int t;
                if (x < n) {  // bottom point
                    if (x < n - k) return x;
                    t = x;  // closed bottom t: jump to top t
                    cur = m.top_index(t);
                } else {
                    t = n - 1 - (x - n);  // top index
                    if (t < n - k) return n - k + (n - k - 1 - t);  // result circular
                    cur = t;  // closed top t: jump to bottom t
                }
            }
        };
        std::vector<char> done(2 * (n - k), 0);
        for (int s = 0; s < 2 * (n - k); ++s) {
            if (done[s]) continue;
            int start = s < n - k ? s : m.top_index(n - k - 1 - (s - (n - k)));
            seen[start] = 1;
            int e = follow(start);
            res.mate[s] = uint8_t(e);
            res.mate[e] = uint8_t(s);
            done[s] = done[e] = 1;
        }
        for (int i = 0; i < 2 * n && !dead; ++i)
            if (!seen[i]) dead = true;  // a closed loop among the traced strands
        if (!dead) out.add_term(res, c);
    }
    return out;
}

TLMor partial_close_left(const TLMor& f, int k) {
    TLMor lr = mirror(f, MirrorAxis::LeftRight);
    return mirror(partial_close_right(lr, k), MirrorAxis::LeftRight);
}

int SliceProgram::end_width() const {
    int w = start_width;
    for (auto& s : slices) {
        if (s.kind == Slice::Cap) w -= 2;
        if (s.kind == Slice::Cup) w += 2;
    }
    return w;
}

int SliceProgram::peak_width() const {
    int w = start_width, peak = start_width;
    for (auto& s : slices) {
        if (s.kind == Slice::Cap) w -= 2;
        if (s.kind == Slice::Cup) w += 2;
        peak = std::max(peak, w);
    }
    return peak;
}

namespace {

// Pending independent segments of free points; pairing the first point of a
// segment with an odd-offset partner splits it in two.
void enumerate_rec(std::vector<int>& mate, std::vector<std::vector<int>> segs,
                   std::vector<Matching>& out, const Matching& proto) {
    while (!segs.empty() && segs.back().empty()) segs.pop_back();
    if (segs.empty()) {
        Matching m = proto;
        m.mate.assign(mate.size(), 0);
        for (size_t i = 0; i < mate.size(); ++i) m.mate[i] = uint8_t(mate[i]);
        out.push_back(std::move(m));
        return;
    }
    std::vector<int> s = std::move(segs.back());
    segs.pop_back();
    int first = s[0];
    for (size_t k = 1; k < s.size(); k += 2) {
        mate[first] = s[k];
        mate[s[k]] = first;
        auto rest = segs;
        rest.emplace_back(s.begin() + 1, s.begin() + k);
        rest.emplace_back(s.begin() + k + 1, s.end());
        enumerate_rec(mate, std::move(rest), out, proto);
    }
}

}  // namespace

std::vector<Matching> all_matchings(int n_in, int n_out) {
    std::vector<Matching> out;
    const int N = n_in + n_out;
    if (N % 2) return out;
    Matching proto;
    proto.n_in = uint16_t(n_in);
    proto.n_out = uint16_t(n_out);
    std::vector<int> mate(N, 0);
    std::vector<int> pts(N);
    for (int i = 0; i < N; ++i) pts[i] = i;
    enumerate_rec(mate, {pts}, out, proto);
    return out;
}

TLMor compose_at(const TLMor& m, const TLMor& state, int pos) {
    const int w = state.n_out;
    if (pos < 0 || pos + m.n_in > w) throw std::invalid_argument("compose_at: window out of range");
    TLMor pad = tensor(tensor(identity(*state.F, pos), m), identity(*state.F, w - pos - m.n_in));
    return compose(pad, state);
}

}  // namespace tlhb
