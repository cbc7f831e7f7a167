#pragma once

#include "descenso/json_io.hpp"

namespace descenso {

struct CaseFailure {
    std::string property;
    uint64_t case_seed = 0;
    Json witness;  // replayable counterexample
};

struct VerificationReport {
    std::string suite;
    uint64_t seed = 0;
    size_t cases = 0;
    std::vector<CaseFailure> failures;
    double wall_ms = 0;  // reported separately; kept out of the byte-stable JSON

    bool passed() const { return failures.empty(); }
};

/// Deterministic JSON (wall time excluded so identical seeds give identical bytes).
Json report_to_json(const VerificationReport& r);
std::string report_to_markdown(const VerificationReport& r);

struct SweepOptions {
    uint64_t seed = 1;
    size_t cases = 50;
    size_t max_dim = 4;
    size_t max_deg = 3;
    size_t truncation = 3;
    size_t threads = 0;  // 0 = hardware concurrency
};

/// Descent-structure axioms: coproducts, simple additivity, comparison map,
/// unit, exactness, cone detection (with forced non-equivalences), inverse order.
VerificationReport verify_axioms(const SweepOptions& opt);
/// The comparison map between the simple of the diagonal and the iterated
/// simple: equivalence, naturality, and the unit compatibility composites.
VerificationReport verify_comparison(const SweepOptions& opt);
/// Left-fraction calculus: Ore squares, composition laws, coequalization.
VerificationReport verify_fractions(const SweepOptions& opt);
/// Descent cone versus the classical mapping cone, with matching long exact
/// sequences and a once-fixed global boundary sign.
VerificationReport verify_cone_oracle(const SweepOptions& opt);
/// Triangulated axioms TR1-TR4.
VerificationReport verify_triangles(const SweepOptions& opt);
/// The minus map: square, naturality, homology action.
VerificationReport verify_minus(const SweepOptions& opt);
/// Cogroup structure and the coaction on cones.
VerificationReport verify_cogroup(const SweepOptions& opt);
/// Stability: suspension shifts homology; hom-set sums match graded addition.
VerificationReport verify_stability(const SweepOptions& opt);
/// Filtered complexes: pages, decalage, localization transport, path objects.
VerificationReport verify_filtered(const SweepOptions& opt);

std::vector<VerificationReport> verify_all(const SweepOptions& opt);

}  // namespace descenso
