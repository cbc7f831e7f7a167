#pragma once

#include "descenso/chain.hpp"
#include "descenso/rng.hpp"
#include "descenso/sset.hpp"

namespace descenso {

class SimpObj;
using SimpObjPtr = std::shared_ptr<const SimpObj>;

/// Moore normalization of one simplicial level: the intersection of the
/// kernels of d_1..d_p inside the level complex, with the retraction onto it
/// along the degenerate part.
struct LevelNormalization {
    ChainComplex complex;            // N_p with the induced internal differential
    std::vector<Matrix> basis;       // basis[q]: X_p(q) coords -> N_p(q) columns
    std::vector<Matrix> retraction;  // retraction[q]: X_p(q) -> N_p(q) coords
};

struct Normalization {
    std::vector<LevelNormalization> levels;
    std::vector<ChainMap> d0;  // residual differential N_p -> N_{p-1}, p >= 1
};

/// Block layout of a totalized complex: degree n = sum of (p, q) pieces.
struct TotalBlocks {
    // blocks[n] lists {p, q, offset, size} in ascending p
    struct Block {
        size_t p, q, offset, size;
    };
    std::vector<std::vector<Block>> blocks;
    const Block* find(size_t n, size_t p) const;
};

/// Simplicial object in bounded chain complexes, materialized to a truncation.
/// degen_level is a certified bound: the Moore complex vanishes at simplicial
/// levels >= degen_level (checked numerically whenever the level is materialized).
class SimpObj {
public:
    SimpObj(size_t trunc, size_t degen_level, std::vector<ChainComplex> levels,
            std::vector<std::vector<ChainMap>> faces, std::vector<std::vector<ChainMap>> degens,
            bool validate = true);

    size_t trunc() const { return trunc_; }
    size_t degen_level() const { return degen_level_; }
    const ChainComplex& level(size_t n) const { return levels_.at(n); }
    const ChainMap& face(size_t n, size_t i) const { return faces_.at(n).at(i); }
    const ChainMap& degen(size_t n, size_t j) const { return degens_.at(n).at(j); }

    const Normalization& normalization() const;
    const ChainComplex& simple_complex() const;
    const TotalBlocks& simple_blocks() const;

private:
    size_t trunc_, degen_level_;
    std::vector<ChainComplex> levels_;
    std::vector<std::vector<ChainMap>> faces_;
    std::vector<std::vector<ChainMap>> degens_;

    struct Cache;
    std::shared_ptr<Cache> cache_;

    void validate_identities() const;
};

/// Levelwise chain maps commuting with faces and degeneracies.
struct SimpMap {
    SimpObjPtr src, tgt;
    std::vector<ChainMap> comp;

    const ChainMap& at(size_t n) const { return comp.at(n); }
    bool operator==(const SimpMap& o) const;
};

SimpMap simp_identity(const SimpObjPtr& x);
SimpMap simp_compose(const SimpMap& outer, const SimpMap& inner);
SimpMap simp_sum(const SimpMap& f, const SimpMap& g);  // f + g between equal objects
void simp_map_validate(const SimpMap& m);

/// Constant simplicial object A x Delta.
SimpObjPtr constant_obj(const ChainComplex& a, size_t trunc);
SimpObjPtr zero_obj(size_t trunc);
/// Constant simplicial map between constant objects.
SimpMap constant_map(const ChainMap& f, size_t trunc);

/// The inverse-order involution.
SimpObjPtr upsilon(const SimpObjPtr& x);
SimpMap upsilon_map(const SimpMap& f);

struct SimpSumData {
    SimpObjPtr obj;
    SimpMap in_left, in_right;
    SimpMap pr_left, pr_right;
};
SimpSumData simp_direct_sum(const SimpObjPtr& x, const SimpObjPtr& y);

/// K box X: level n is a K_n-indexed direct sum of copies of X_n.
struct BoxData {
    SimpObjPtr obj;
    SSetPtr shape;
    SimpObjPtr factor;
    // column offset of the summand at simplex s, level n, internal degree q
    size_t offset(size_t n, int s, size_t q) const;
};
BoxData boxtimes(const SSetPtr& k, const SimpObjPtr& x);
/// Functorial in both slots: phi box g for a shape map and a levelwise map.
SimpMap boxtimes_map(const BoxData& src, const BoxData& tgt, const SSetMap& phi, const SimpMap& g);

/// K tensor A for pointed K: the basepoint summand is deleted (the instance is
/// additive, so pushing out along the point kills that copy).
struct TensorData {
    SimpObjPtr obj;
    SSetPtr shape;          // pointed
    ChainComplex coeff;
    std::vector<std::vector<int>> summand_of;  // simplex -> summand index (-1 for the base class)
    std::vector<std::vector<int>> simplex_of;  // summand index -> simplex
    size_t offset(size_t n, int s, size_t q) const;
};
TensorData tensor_pointed(const SSetPtr& k, const ChainComplex& a, size_t trunc);
/// phi tensor A for a pointed shape map.
SimpMap tensor_map(const TensorData& src, const TensorData& tgt, const SSetMap& phi);

/// Cyl(F, G): level n = Y_n + (n middle copies of X_n) + Z_n, glued along the
/// interval action. Blocks are indexed 0 = Y end, 1..n middles, n+1 = Z end.
struct CylData {
    SimpObjPtr obj;
    SimpMap leg_y;  // Y -> Cyl
    SimpMap leg_z;  // Z -> Cyl
    SimpObjPtr x, y, z;
    size_t block_offset(size_t n, size_t block, size_t q) const;
};
CylData simplicial_cyl(const SimpMap& f, const SimpMap& g);
/// Functorial map Cyl(F,G) -> Cyl(F',G') induced by a morphism of spans.
SimpMap cyl_map(const CylData& src, const CylData& tgt, const SimpMap& phi_x, const SimpMap& phi_y,
                const SimpMap& phi_z);
/// Simplicial cone C(F) = Cyl(F, X -> 0).
CylData simplicial_cone(const SimpMap& f);

/// Simple functor: the normalized total complex, and its action on maps.
ChainComplex simple(const SimpObjPtr& x);
ChainMap simple_map(const SimpMap& f);

/// Unit of the descent structure: with the normalized simple, s(A x Delta) = A
/// on the nose; lambda and rho are the canonical identifications.
struct SimpleUnit {
    ChainMap lambda;  // s(A x Delta) -> A
    ChainMap rho;     // A -> s(A x Delta)
};
SimpleUnit unit(const ChainComplex& a, size_t trunc = 2);

/// Bisimplicial object (grid of complexes with commuting directions).
class BisimpObj;
using BisimpObjPtr = std::shared_ptr<const BisimpObj>;

class BisimpObj {
public:
    BisimpObj(size_t trunc_h, size_t trunc_v, size_t degen_h, size_t degen_v,
              std::vector<std::vector<ChainComplex>> grid,
              std::vector<std::vector<std::vector<ChainMap>>> dh,
              std::vector<std::vector<std::vector<ChainMap>>> dv,
              std::vector<std::vector<std::vector<ChainMap>>> sh,
              std::vector<std::vector<std::vector<ChainMap>>> sv, bool validate = true);

    size_t trunc_h() const { return trunc_h_; }
    size_t trunc_v() const { return trunc_v_; }
    size_t degen_h() const { return degen_h_; }
    size_t degen_v() const { return degen_v_; }
    const ChainComplex& at(size_t p, size_t q) const { return grid_.at(p).at(q); }
    const ChainMap& dh(size_t p, size_t q, size_t i) const { return dh_.at(p).at(q).at(i); }
    const ChainMap& dv(size_t p, size_t q, size_t j) const { return dv_.at(p).at(q).at(j); }
    const ChainMap& sh(size_t p, size_t q, size_t i) const { return sh_.at(p).at(q).at(i); }
    const ChainMap& sv(size_t p, size_t q, size_t j) const { return sv_.at(p).at(q).at(j); }

private:
    size_t trunc_h_, trunc_v_, degen_h_, degen_v_;
    std::vector<std::vector<ChainComplex>> grid_;
    std::vector<std::vector<std::vector<ChainMap>>> dh_, dv_, sh_, sv_;
};

/// Z_{p,q} = direct sum over K_p of X_q; the diagonal of this grid is K box X.
BisimpObjPtr grid_from_sset(const SSetPtr& k, const SimpObjPtr& x);
BisimpObjPtr grid_transpose(const BisimpObjPtr& z);
BisimpObjPtr grid_conjugate(Rng& rng, const BisimpObjPtr& z, long max_entry = 2);

SimpObjPtr diagonal(const BisimpObjPtr& z);

struct IteratedSimple {
    SimpObjPtr outer;        // p -> s(Z_{p, .}) with the induced horizontal structure
    ChainComplex total;      // simple of the outer object
    std::vector<SimpObjPtr> verticals;  // the column objects V_p
};
IteratedSimple iterated_simple(const BisimpObjPtr& z);

/// The comparison between the simple of the diagonal and the iterated simple,
/// via the front/back face formula conjugated through the normalizations.
ChainMap aw_map(const BisimpObjPtr& z);

/// 3x3 commutative grid input for the iterated-cylinder isomorphism.
struct CylGridInput {
    SimpMap f_m, g_m;        // middle row span: X -> Y, X -> Z
    SimpMap f_p, g_p;        // primed row span: X' -> Y', X' -> Z'
    SimpMap f_pp, g_pp;      // double-primed row span
    SimpMap beta, beta_p;    // X -> X', X -> X''
    SimpMap gamma, gamma_p;  // Y -> Y', Y -> Y''
    SimpMap alpha, alpha_p;  // Z -> Z', Z -> Z''
};

struct IteratedCylinder {
    CylData row_m, row_p, row_pp;     // cylinders of the rows
    CylData col_x, col_y, col_z;      // cylinders of the columns
    CylData outer_rows;               // Cyl(delta', delta)
    CylData outer_cols;               // Cyl(fhat, ghat)
    SimpMap theta;                    // outer_rows -> outer_cols, the reindexing iso
    SimpMap psi;                      // col_y cylinder -> outer_rows
    SimpMap psi_p;                    // row_pp cylinder -> outer_cols
};
/// The natural reindexing isomorphism between the two double-cylinder orders,
/// with theta o I = psi' and theta o psi = I checked exactly.
IteratedCylinder iterated_cylinder_iso(const CylGridInput& grid);

}  // namespace descenso
