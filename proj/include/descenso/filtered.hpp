#pragma once

#include <map>

#include "descenso/chain.hpp"
#include "descenso/rng.hpp"

namespace descenso {

/// Bounded cochain complex, degrees 0..top, differential of degree +1.
class CochainComplex {
public:
    CochainComplex();
    CochainComplex(std::vector<size_t> dims, std::vector<Matrix> diffs, bool validate = true);

    size_t top() const { return dims_.size() - 1; }
    size_t dim(size_t n) const { return n < dims_.size() ? dims_[n] : 0; }
    const std::vector<size_t>& dims() const { return dims_; }
    /// d^n : degree n -> n+1 (zero-shaped outside the range)
    Matrix d(size_t n) const;

    bool operator==(const CochainComplex& o) const;

    /// dim H^n and chosen cocycle representatives
    size_t cohomology_dim(size_t n) const;
    Subspace cocycles(size_t n) const;
    Subspace coboundaries(size_t n) const;

private:
    std::vector<size_t> dims_;
    std::vector<Matrix> diffs_;  // diffs_[n] = d^n for n = 0..top-1
};

struct CochainMap {
    CochainComplex src, tgt;
    std::vector<Matrix> comp;

    Matrix component(size_t n) const;
};
CochainMap cochain_map(CochainComplex src, CochainComplex tgt, std::vector<Matrix> comps,
                       bool validate = true);
CochainMap cochain_identity(const CochainComplex& c);

/// Bounded cochain complex with a finite decreasing filtration given by
/// subspace bases per degree. F^p = everything for p <= lo, zero for p > hi.
class FilteredComplex {
public:
    FilteredComplex(CochainComplex a, int lo, int hi,
                    std::vector<std::vector<Subspace>> filt, bool validate = true);

    const CochainComplex& complex() const { return a_; }
    int lo() const { return lo_; }
    int hi() const { return hi_; }
    Subspace filtration(int p, size_t n) const;

private:
    CochainComplex a_;
    int lo_, hi_;
    std::vector<std::vector<Subspace>> filt_;  // filt_[n][p - lo], p = lo..hi
};

struct FilteredMap {
    FilteredComplex src, tgt;
    CochainMap f;
};
/// Validates the cochain condition and filtration compatibility.
FilteredMap filtered_map(FilteredComplex src, FilteredComplex tgt, std::vector<Matrix> comps);

/// One page of the spectral sequence of the filtration.
struct SpectralPage {
    size_t r;
    struct Term {
        size_t dim = 0;
        Matrix reps;       // columns in A^{p+q}
        Matrix boundary;   // basis of the part quotiented away
    };
    std::map<std::pair<int, int>, Term> terms;
    std::map<std::pair<int, int>, Matrix> d;  // d_r : (p,q) -> (p+r, q-r+1)

    size_t dim(int p, int q) const;
    Matrix differential(int p, int q) const;
    size_t total_dim(int n) const;  // over p + q = n
};
SpectralPage page(const FilteredComplex& f, size_t r);

/// dim gr^p H^n of the filtration induced on cohomology.
size_t graded_cohomology_dim(const FilteredComplex& f, int p, size_t n);

/// Induced map on the r-th page; per-bidegree matrices in the chosen bases.
std::map<std::pair<int, int>, Matrix> page_map(const FilteredMap& fm, size_t r);

bool is_filtered_qis(const FilteredMap& fm);
bool is_e2_iso(const FilteredMap& fm);

/// Path objects for a cospan of filtered maps into a common target, with the
/// two filtrations M (levelwise) and N (middle summand shifted by one).
enum class PathFiltration { M, N };
struct PathData {
    FilteredComplex path;
    FilteredMap to_left;   // projection onto B
    FilteredMap to_right;  // projection onto C
};
PathData path_object(const FilteredMap& f, const FilteredMap& g, PathFiltration which);

FilteredComplex loop_object(const FilteredComplex& x, PathFiltration which);

/// Fiber sequence Omega Y -> path(f) -> X -> Y; checks the graded-level long
/// exact sequences degreewise.
struct FiberData {
    PathData path;            // path of (f, 0 -> Y)
    FilteredComplex loop;     // Omega Y
    bool graded_les_exact = false;
};
FiberData fiber_sequence(const FilteredMap& f);

/// Deligne shift: (Dec F)^p A^n = F^{p+n} A^n n d^{-1}(F^{p+n+1} A^{n+1}).
FilteredComplex dec(const FilteredComplex& f);
FilteredMap dec_map(const FilteredMap& fm);

/// Seeded generators: piece-built filtered complexes conjugated by a random
/// basis change, and filtered maps between them.
struct FilteredOptions {
    size_t max_pieces = 5;
    size_t max_deg = 3;
    int max_jump = 3;
    long max_entry = 2;
};
FilteredComplex random_filtered(Rng& rng, const FilteredOptions& opt = {});
struct FilteredPair {
    FilteredComplex src, tgt;
    FilteredMap map;
};
FilteredPair random_filtered_pair(Rng& rng, const FilteredOptions& opt = {});

}  // namespace descenso
