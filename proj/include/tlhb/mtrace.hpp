#pragma once

#include "tlhb/ribbon.hpp"

namespace tlhb {

// One tensor factor of a projective object: a weight, possibly dualized
// (compressed by the left-right mirror of its projector).
struct ColorFactor {
    Weight w;
    bool dual = false;
};
using ColorList = std::vector<ColorFactor>;

int total_strands(const ColorList& colors);

// Values of the modified trace on the endomorphisms of the indecomposable
// projectives, normalized by t(E_1) = +1.
struct TraceTable {
    uint32_t p = 0;
    // t(E_{v-1}): (-1)^{a1-1} a1 for Eves, 0 otherwise; t(L0_{v-1}) likewise
    FieldElt t_E(const Weight& v, const RootSystem& F) const;
    FieldElt t_L0(const Weight& v, const RootSystem& F) const;
};

// Modified trace of a compressed endomorphism of (x)_i T(v_i - 1): right
// partial closures through the projector cabling down to the first factor,
// then contraction with the trace table.
FieldElt mtrace(const ProjectorTable& T, const ColorList& colors, const TLMor& f);

// Evaluates a program closed except for one T(1) strand in and out; the
// result must be proportional to the identity strand and the scalar is the
// skein's invariant in S^3.
FieldElt eval_closed_skein(const SliceProgram& prog, const ProjectorTable& T,
                           const std::unordered_map<std::string, TLMor>& coupons,
                           const EvalOptions& opts = {});

// A basis of Hom((x) T(v_i-1), 1) extracted from planar cap diagrams by
// exact row reduction, together with the Gram data of the t-pairing
// B(x, y) = t(y o x) against the mirrored cups.
struct HomBasis {
    ColorList colors;
    std::vector<TLMor> basis;          // independent compressed caps
    std::vector<std::vector<FieldElt>> gram;
    // indices (into basis) of the rows/columns of a maximal invertible minor;
    // proper subsets only occur when negligible morphisms survive compression
    std::vector<int> minor_rows, minor_cols;
    size_t dim() const { return minor_rows.size(); }
};

HomBasis hom_basis(const ProjectorTable& T, const ColorList& colors);

// t-dual basis pairs (x^i: P -> 1, x_i: 1 -> P); the cutting morphism is
// Lambda_P = sum_i x_i o x^i and satisfies t(Lambda_P) = dim Hom(P, 1).
// Evaluators insert the pairs one at a time so states collapse through the
// unit instead of carrying the summed coupon.
std::vector<std::pair<TLMor, TLMor>> dual_pairs(const ProjectorTable& T, const HomBasis& basis);
TLMor cutting(const ProjectorTable& T, const ColorList& colors);
TLMor cutting(const ProjectorTable& T, const HomBasis& basis);

// The chromatic morphism summand based at T(1):
// (-1)^{a1-1} a1 (E_{v-1} (x) E_1) for Eves, (-1)^{a1-1} a1 Z0_v otherwise.
TLMor chromatic(const ProjectorTable& T, const Weight& v);

// Left side of the chromatic identity for V = T(v-1): the Lambda_{V (x) G*}
// contraction against the chromatic coupon, which must equal E_{v-1} (x) E_1.
TLMor chromatic_identity_lhs(const ProjectorTable& T, const Weight& v, int width_limit = 40);

// The red-circle operator around T(v-1) in the {E, L0} basis. The closed form
// vanishes unless a0 = 1 and a1 is odd, where the L0 coefficient is
// 8 * sum_{b=1}^{p-1} b^2 = 4(p-1)p(2p-1)/3 mod p (nonzero only at p = 3).
EndoCoords delta0(const Weight& v, const RootSystem& F);

// Pipeline oracle: evaluates the red-to-blue expansion of the red circle
// around a v-cable diagrammatically, grabbing an auxiliary Gamma_0 strand,
// and solves for the coordinates through trace probes.
EndoCoords delta0_oracle(const ProjectorTable& T, const Weight& v, int width_limit = 40);

}  // namespace tlhb
