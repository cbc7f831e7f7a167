#pragma once

#include "descenso/chain.hpp"
#include "descenso/rng.hpp"

namespace descenso {

struct GeneratorOptions {
    size_t max_dim = 6;
    size_t max_deg = 4;
    long max_entry = 2;
};

/// Random bounded complex with exact d o d = 0 (differentials built inside the
/// kernel of the previous one). Zero complexes occur.
ChainComplex random_complex(Rng& rng, const GeneratorOptions& opt = {});

ChainComplex random_acyclic(Rng& rng, const GeneratorOptions& opt = {});

/// Splitting X = boundaries + reps + lifts with d : lifts ~ boundaries.
/// Parametrizes all chain maps out of / into X over the field.
struct Splitting {
    std::vector<Matrix> proj_reps;  // X_n -> H_n coordinates, kills boundaries and lifts
};
Splitting splitting(const ChainComplex& c);

/// Random chain map A -> B. Every chain map over Q arises as
/// reps_B o phi o proj_A + d k + k d for a graded phi and arbitrary k.
ChainMap random_chain_map(Rng& rng, const ChainComplex& a, const ChainComplex& b,
                          const GeneratorOptions& opt = {});

/// Random chain map inducing a prescribed graded map on homology.
ChainMap chain_map_with_homology(Rng& rng, const ChainComplex& a, const ChainComplex& b,
                                 const GradedMap& phi, const GeneratorOptions& opt = {});

struct QisData {
    ChainComplex target;
    ChainMap map;  // quasi-isomorphism source -> target
};
/// Quasi-isomorphism built as (inclusion into A + acyclic) conjugated by a
/// random basis change of the target.
QisData random_qis(Rng& rng, const ChainComplex& a, const GeneratorOptions& opt = {});

struct IsoData {
    ChainComplex target;
    ChainMap map;  // isomorphism of complexes
};
/// Conjugate a complex by random invertible degree-wise basis changes.
IsoData random_conjugate(Rng& rng, const ChainComplex& a, const GeneratorOptions& opt = {});

Matrix random_matrix(Rng& rng, size_t rows, size_t cols, long max_entry);
Matrix random_invertible(Rng& rng, size_t n, long max_entry);

/// Strict chain map X -> H(X) (zero differentials) collapsing to homology;
/// always a quasi-isomorphism. The formality model of the field instance.
struct FormalityData {
    ChainComplex homology_complex;
    ChainMap collapse;
};
FormalityData formality(const ChainComplex& c);

}  // namespace descenso
