#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <functional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tlhb/field.hpp"

namespace tlhb {

// Inline partner array; tangles in this engine never exceed 64 boundary
// points (the width limit cuts far below that), so keys stay allocation-free.
struct MateArray {
    static constexpr int kMax = 64;
    uint8_t size_ = 0;
    std::array<uint8_t, kMax> d{};

    void assign(size_t n, uint8_t fill) {
        if (n > kMax) throw std::length_error("tangle exceeds 64 boundary points");
        size_ = uint8_t(n);
        d.fill(fill);
    }
    uint8_t& operator[](size_t i) { return d[i]; }
    uint8_t operator[](size_t i) const { return d[i]; }
    size_t size() const { return size_; }
    bool operator==(const MateArray& o) const {
        return size_ == o.size_ && std::memcmp(d.data(), o.d.data(), size_) == 0;
    }
};

// A non-crossing perfect matching of the boundary points of a planar tangle.
// Boundary points are indexed in the circular order: bottom points left to
// right (0 .. n_in-1), then top points right to left (n_in .. n_in+n_out-1),
// so planarity is the balanced-nesting condition in this order. mate[i] is
// the partner of point i; the array is a canonical encoding.
struct Matching {
    uint16_t n_in = 0, n_out = 0;
    MateArray mate;

    int points() const { return n_in + n_out; }
    int top_index(int j) const { return n_in + (n_out - 1 - j); }  // j-th top point from the left
    bool operator==(const Matching& o) const {
        return n_in == o.n_in && n_out == o.n_out && mate == o.mate;
    }
    bool noncrossing() const;
};

struct MatchingHash {
    size_t operator()(const Matching& m) const {
        uint64_t h = 1469598103934665603ull ^ (uint64_t(m.n_in) << 32 | m.n_out);
        for (size_t i = 0; i < m.mate.size(); ++i) {
            h ^= m.mate[i];
            h *= 1099511628211ull;
        }
        return size_t(h);
    }
};

// A morphism of the Temperley-Lieb category at loop value delta = 0: a sparse
// field-linear combination of matchings with a fixed (n_in, n_out) signature.
// Zero coefficients are never stored.
struct TLMor {
    uint16_t n_in = 0, n_out = 0;
    const RootSystem* F = nullptr;
    std::unordered_map<Matching, FieldElt, MatchingHash> terms;

    size_t term_count() const { return terms.size(); }
    bool is_zero() const { return terms.empty(); }
    void add_term(const Matching& m, const FieldElt& c);

    TLMor operator+(const TLMor& o) const;
    TLMor operator-(const TLMor& o) const;
    TLMor operator*(const FieldElt& c) const;
    bool operator==(const TLMor& o) const;
    bool operator!=(const TLMor& o) const { return !(*this == o); }

    // One line per term, "coef : (i,j)(k,l)...", sorted for stable diffing.
    std::string dump() const;
};

TLMor tl_zero(const RootSystem& F, int n_in, int n_out);
TLMor identity(const RootSystem& F, int n);

// cap: n -> n-2 joining inputs i,i+1; cup: n -> n+2 creating outputs i,i+1.
TLMor elementary_cap(const RootSystem& F, int n, int i);
TLMor elementary_cup(const RootSystem& F, int n, int i);

// Vertical stacking g after f; every closed loop carries delta = 0, so any
// term forming a loop is dropped.
TLMor compose(const TLMor& g, const TLMor& f);

// Horizontal stacking.
TLMor tensor(const TLMor& f, const TLMor& g);

// Kauffman resolution of a crossing of strands i,i+1 on n strands. Positive
// means the strand running bottom-left to top-right is the over strand:
// zeta^{1/2} id + zeta^{-1/2} e_i; negative swaps the exponents.
TLMor crossing(const RootSystem& F, int n, int i, int sign);

enum class MirrorAxis { UpDown, LeftRight };
TLMor mirror(const TLMor& f, MirrorAxis axis);

// Closes the rightmost k strands of an endomorphism with nested arcs (the
// categorical right partial trace once f is projector-compressed).
TLMor partial_close_right(const TLMor& f, int k);
TLMor partial_close_left(const TLMor& f, int k);

// Morse-position presentation of a tangle: an ordered list of elementary
// events evaluated left to right by slice_eval.
struct Slice {
    enum Kind { Identity, Cap, Cup, Cross, Box, Coupon } kind = Identity;
    int pos = 0;
    int sign = +1;        // Cross only
    int box = 0;          // Box: projector strand count n (inserts E_n)
    std::string coupon;   // Coupon: name in the coupon table
};

struct SliceProgram {
    int start_width = 0;
    std::vector<Slice> slices;

    int end_width() const;
    int peak_width() const;
    void cup(int i) { slices.push_back({Slice::Cup, i, 0, 0, {}}); }
    void cap(int i) { slices.push_back({Slice::Cap, i, 0, 0, {}}); }
    void cross(int i, int sign) { slices.push_back({Slice::Cross, i, sign, 0, {}}); }
    void box(int n, int i) { slices.push_back({Slice::Box, i, 0, n, {}}); }
    void coupon(const std::string& name, int i) { slices.push_back({Slice::Coupon, i, 0, 0, name}); }
};

class ProjectorTable;  // defined in projectors.hpp

struct EvalOptions {
    int width_limit = 24;  // boundary points per slice state
};

// Folds the slices left to right, maintaining a single sparse state equal to
// the composite of all slices applied to identity(start_width). Boxes are
// resolved through the projector table, coupons through the named table.
TLMor slice_eval(const SliceProgram& prog, const ProjectorTable& boxes,
                 const std::unordered_map<std::string, TLMor>& coupons,
                 const EvalOptions& opts = {});

// compose(pad, state) where pad acts on [pos, pos + m.n_in) and is the
// identity elsewhere; the workhorse behind boxes and coupons.
TLMor compose_at(const TLMor& m, const TLMor& state, int pos);

// All C((n_in+n_out)/2) non-crossing matchings with the given signature.
std::vector<Matching> all_matchings(int n_in, int n_out);

}  // namespace tlhb
