#pragma once

#include <iosfwd>
#include <optional>

#include "tlhb/diagram.hpp"

namespace tlhb {

// An object index v with its p2-adic digits, v = 2*a1 + a0. The object
// T(v-1) is simple exactly when v is an Eve (a0 = 0); the projectives are
// 2 <= v <= 2p-1.
struct Weight {
    uint32_t v = 0;
    uint32_t a1 = 0, a0 = 0;

    bool is_eve() const { return a0 == 0; }
    bool is_projective(uint32_t p) const { return v >= 2 && v <= 2 * p - 1; }
};

Weight pl_adic(uint32_t v, uint32_t p);

// Coordinates of an endomorphism of T(v-1) in the basis {E_{v-1}} (Eve) or
// {E_{v-1}, L0_{v-1}} (non-Eve); mu is absent for Eves.
struct EndoCoords {
    FieldElt lambda;
    std::optional<FieldElt> mu;
};

struct CellMorphisms {
    TLMor U0;  // (v-1) -> (v+1), present for v <= 2p-3
    TLMor D0;  // (v-1) -> (v-3), present for v >= 3
    TLMor L0;  // (v-1) -> (v-1), nilpotent of order 2
    bool has_U0 = false, has_D0 = false;
};

// The five-morphism system on v strands decomposing E_{v-1} (x) E_1 for odd
// v: A0, Atilde0, B1 idempotent, Y0/Z0 the off-diagonal matrix units.
struct FusionSystem {
    TLMor A0, Atilde0, B1, Y0, Z0;
    bool has_B1 = false;
};

// Builds and caches the mixed Jones-Wenzl projectors E_n (0 <= n <= 2p-2)
// at a fourth root of unity in characteristic p, via the fusion recursion:
// even n gives E_n = E_{n-1} (x) E_1, odd n subtracts the A0/Atilde0/B1
// idempotents from E_{n-1} (x) E_1.
class ProjectorTable {
public:
    explicit ProjectorTable(const RootSystem& F);
    // From a loaded cache; validates shape and spot-checks idempotency.
    ProjectorTable(const RootSystem& F, std::vector<TLMor> preloaded);

    const RootSystem& field() const { return *F_; }
    uint32_t p() const { return F_->p; }
    int max_strands() const { return int(2 * p() - 2); }

    // E_n on n strands; rejects n > 2p-2 (object not in the quotient).
    const TLMor& E(int n) const;

    // Cell morphisms for a non-Eve weight v (U0 needs v <= 2p-3, D0 needs v >= 3).
    CellMorphisms cell_morphisms(const Weight& v) const;
    TLMor L0(uint32_t v) const;  // L0_{v-1} for non-Eve v >= 3

    // Fusion-with-generator system on v strands; odd v, 3 <= v <= 2p-1.
    const FusionSystem& fusion_system(const Weight& v) const;

    // Unique (lambda, mu) with f = lambda E_{v-1} + mu L0_{v-1}; throws if f
    // is not in the span (an upstream bug, the algebra is 1- or 2-dimensional).
    EndoCoords decompose_endo(const Weight& v, const TLMor& f) const;

    // Realizes coords back as a TLMor on v-1 strands.
    TLMor endo_from_coords(const Weight& v, const EndoCoords& c) const;

private:
    const RootSystem* F_;
    std::vector<TLMor> E_;
    mutable std::vector<std::optional<FusionSystem>> fusion_;  // indexed by v

    FusionSystem build_fusion(uint32_t v) const;
};

// All p2-admissible u = [c1,1] for Eve weights v, w: the fusion multiset
// T(v-1) (x) T(w-1) = (+)_u T(u-1).
std::vector<Weight> p2_admissible(const Weight& v, const Weight& w, uint32_t p);

// The scalar d with d * EX^{u-1}_{v-1,w-1} the idempotent projecting onto
// T(u-1): (-1)^{x1} C(a1-1,x1) C(b1-1,x1) / C(c1+x1,x1) mod p, binomials by
// Lucas' theorem.
FieldElt fusion_coeff(const Weight& v, const Weight& w, const Weight& u, const RootSystem& F);

// The sandwich morphisms of the Eve-Eve categorified fusion rules, with x
// inner strands of each factor folded together and E_{u-1} (or L0_{u-1}) in
// the middle. checked = true swaps the top factor order (the single-braiding
// variants).
TLMor eve_fusion_EX(const ProjectorTable& T, const Weight& v, const Weight& w, const Weight& u,
                    bool L0_middle, bool checked);

// Diamond_{u-1}^{v-1,w-1}: the same fold composed the other way, an
// endomorphism of E_{u-1}; equals fusion_coeff^{-1} * E_{u-1}.
TLMor eve_fusion_diamond(const ProjectorTable& T, const Weight& v, const Weight& w, const Weight& u);

uint64_t binomial_mod_p(uint64_t n, uint64_t k, uint32_t p);  // Lucas

// Textual cache of a projector table, keyed by (p, q); regenerated when
// absent or stale. Format documented in the README.
void save_projectors(const ProjectorTable& table, std::ostream& os);
bool load_projectors(const RootSystem& F, std::istream& is, std::vector<TLMor>& out);
ProjectorTable table_with_cache(const RootSystem& F, const std::string& path);

}  // namespace tlhb
