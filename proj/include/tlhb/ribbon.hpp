#pragma once

#include "tlhb/projectors.hpp"

namespace tlhb {

// Coefficients of the double braiding on T(v-1) (x) T(1) over the canonical
// endomorphism basis: {E_v, L0_v} for Eve v, {E_v, A0, Atilde0, Y0, B1} for
// non-Eve v (E_v omitted at v = 2p-1, B1 at v = 3).
struct BraidCoords {
    Weight v;
    bool eve_case = true;
    FieldElt cE, cL;             // Eve case
    FieldElt cA, cAt, cY, cB;    // non-Eve case (cE shared)
    bool has_E = true, has_B = false;
};

BraidCoords double_braiding_T1(const Weight& v, const RootSystem& F);
TLMor realize_double_braiding_T1(const ProjectorTable& T, const Weight& v);

// theta_{v-1}^k: Eves are scalars ((-1)^{a1} zeta^{3/2})^k on E; non-Eves are
// unipotent, E + 2k zeta^{-1} L0.
EndoCoords twist_power(const Weight& v, int64_t k, const RootSystem& F);

// Encircling T(w-1) with an Eve-coloured circle T(v-1).
EndoCoords encircle(const Weight& v, const Weight& w, const RootSystem& F);

// The closed-form Hopf pairing H^{w-1}_{v-1} in Hom(T(v-1)* (x) T(v-1),
// T(w-1)* (x) T(w-1)) assembled from projectors, nested arcs and through
// strands per the four Eve/non-Eve cases.
TLMor hopf_pairing(const ProjectorTable& T, const Weight& v, const Weight& w);

// Eve-Eve braidings decomposed over the p2-admissible u: coefficients of
// EX (or EXcheck) and L0X (or L0Xcheck) per u.
struct EveBraidTerm {
    Weight u;
    FieldElt coef_E;
    FieldElt coef_L;
};
std::vector<EveBraidTerm> braiding_eves(const Weight& v, const Weight& w, bool dbl, const RootSystem& F);
TLMor realize_braiding_eves(const ProjectorTable& T, const Weight& v, const Weight& w, bool dbl);

// The identity of T(v-1) (x) T(w-1) in the quotient: the sum of the
// admissible fusion idempotents (equals E (x) E when a1+b1-1 < p).
TLMor quotient_project(const ProjectorTable& T, const Weight& v, const Weight& w);

// --- diagrammatic oracles -------------------------------------------------
// Each closed form above is paired with a brute-force evaluation of the
// corresponding tangle through the slice evaluator.

// Colored crossing of projector-compressed cables: the left block of cables
// moves right across the right block; sign +1 puts the left block on top.
TLMor cable_crossing(const ProjectorTable& T, const std::vector<Weight>& left,
                     const std::vector<Weight>& right, int sign, int width_limit = 64);

TLMor oracle_double_braiding_T1(const ProjectorTable& T, const Weight& v);
TLMor oracle_twist(const ProjectorTable& T, const Weight& v, int k, int width_limit = 64);
TLMor oracle_encircle(const ProjectorTable& T, const Weight& v, const Weight& w, int width_limit = 64);
TLMor oracle_hopf(const ProjectorTable& T, const Weight& v, const Weight& w, int width_limit = 64);
TLMor oracle_braiding_eves(const ProjectorTable& T, const Weight& v, const Weight& w, bool dbl);

// Emits the peak slice width each oracle needs, used to gate suites.
int oracle_hopf_width(const Weight& v, const Weight& w);
int oracle_encircle_width(const Weight& v, const Weight& w);

// The elementary slice blocks the oracles and the handlebody compiler share.
namespace blocks {
// m nested cups at position pos: creates columns [pos,pos+m) and [pos+m,pos+2m)
// forming a cable folding back.
void cup_block(SliceProgram& prog, int pos, int m);
// closes adjacent columns [pos,pos+m) and [pos+m,pos+2m) with nested caps.
void cap_block(SliceProgram& prog, int pos, int m);
// crosses column [pos,pos+a) past column [pos+a,pos+a+b); over = left block on top.
void cross_block(SliceProgram& prog, int pos, int a, int b, bool left_over);
}  // namespace blocks

}  // namespace tlhb
