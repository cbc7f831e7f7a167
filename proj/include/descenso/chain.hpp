#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "descenso/linalg.hpp"
#include "descenso/matrix.hpp"

namespace descenso {

struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HomologyData;

/// Bounded chain complex of finite-dimensional rational spaces, non-negatively
/// graded, with differential of degree -1. d o d = 0 is checked on construction.
class ChainComplex {
public:
    ChainComplex();  // the zero complex concentrated in degree 0 with dim 0
    ChainComplex(std::vector<size_t> dims, std::vector<Matrix> diffs, bool validate = true);

    static ChainComplex zero() { return ChainComplex(); }
    /// Q^dim concentrated in a single degree.
    static ChainComplex point(size_t dim, size_t degree = 0);

    size_t top() const { return dims_.size() - 1; }
    size_t dim(size_t n) const { return n < dims_.size() ? dims_[n] : 0; }
    const std::vector<size_t>& dims() const { return dims_; }
    size_t total_dim() const;

    /// d_n : degree n -> n-1; degenerate degrees give zero matrices of the right shape.
    Matrix d(size_t n) const;

    bool operator==(const ChainComplex& o) const;

    const HomologyData& homology() const;
    bool is_acyclic() const;

private:
    std::vector<size_t> dims_;    // degree 0..top
    std::vector<Matrix> diffs_;   // diffs_[n-1] = d_n for n = 1..top

    struct Cache;
    std::shared_ptr<Cache> cache_;
};

/// Per-degree homology data with deterministic bases.
struct HomologyData {
    std::vector<size_t> h_dims;       // dim H_n
    std::vector<Matrix> cycles;       // basis of ker d_n
    std::vector<Matrix> boundaries;   // basis of im d_{n+1}
    std::vector<Matrix> reps;         // complement of boundaries inside cycles

    size_t dim(size_t n) const { return n < h_dims.size() ? h_dims[n] : 0; }
    size_t top() const { return h_dims.size() - 1; }
};

/// Map between homologies in the chosen bases (degree 0 graded map).
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(std::vector<Matrix> comps) : comps_(std::move(comps)) {}

    static GradedMap identity(const std::vector<size_t>& dims);

    size_t degrees() const { return comps_.size(); }
    Matrix component(size_t n) const;  // zero-shaped outside stored range

    GradedMap compose(const GradedMap& inner) const;  // this o inner
    GradedMap operator+(const GradedMap& o) const;
    GradedMap operator-() const;
    bool operator==(const GradedMap& o) const;

    bool is_iso() const;
    bool is_zero() const;
    GradedMap inverse() const;

private:
    std::vector<Matrix> comps_;
};

/// Chain map with the commuting-squares invariant verified on construction.
class ChainMap {
public:
    ChainMap() = default;
    ChainMap(ChainComplex source, ChainComplex target, std::vector<Matrix> components,
             bool validate = true);

    static ChainMap identity(const ChainComplex& c);
    static ChainMap zero(const ChainComplex& source, const ChainComplex& target);

    const ChainComplex& source() const { return *src_; }
    const ChainComplex& target() const { return *tgt_; }
    Matrix component(size_t n) const;  // correctly shaped zero outside range

    ChainMap compose(const ChainMap& inner) const;  // this o inner
    ChainMap operator+(const ChainMap& o) const;
    ChainMap operator-() const;
    ChainMap scaled(const Rational& c) const;

    bool operator==(const ChainMap& o) const;
    bool is_zero() const;

private:
    std::shared_ptr<const ChainComplex> src_, tgt_;
    std::vector<Matrix> comps_;
};

GradedMap induced_homology_map(const ChainMap& f);
bool is_qis(const ChainMap& f);

struct ConeData {
    ChainComplex cone;
    ChainMap inclusion;   // B -> cone
    ChainMap projection;  // cone -> A[1]
};

/// Textbook mapping cone with differential [[d_B, f],[0, -d_A]]; the classical
/// oracle for the descent-construction cones.
ConeData classical_cone(const ChainMap& f);

/// Degree shift; differential picks up the sign (-1)^k.
ChainComplex shift(const ChainComplex& c, size_t k);

struct SumData {
    ChainComplex sum;
    ChainMap in1, in2;
    ChainMap pr1, pr2;
};
SumData direct_sum(const ChainComplex& a, const ChainComplex& b);
ChainMap direct_sum_map(const ChainMap& f, const ChainMap& g, const SumData& src, const SumData& tgt);
/// Direct sum of an arbitrary list in order (no structure maps).
ChainComplex multi_direct_sum(const std::vector<const ChainComplex*>& parts);

/// Fold map A + A -> A (codiagonal).
ChainMap codiagonal(const ChainComplex& a, const SumData& sum);

/// Exactness of ... -> H_n(A) -> H_n(B) -> H_n(C) -> H_{n-1}(A) -> ... given the
/// three graded maps (the connecting map is passed in degree-lowering form).
bool long_exact_sequence_holds(const ChainComplex& a, const ChainComplex& b, const ChainComplex& c,
                               const GradedMap& ha, const GradedMap& hb,
                               const std::vector<Matrix>& connecting);

}  // namespace descenso
