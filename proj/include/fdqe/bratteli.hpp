#ifndef FDQE_BRATTELI_HPP
#define FDQE_BRATTELI_HPP

#include "fdqe/algebra.hpp"

#include <string>
#include <vector>

namespace fdqe {

/// Bratteli multiplicity matrix of a unital embedding C -> A: entry (i, j)
/// counts the copies of source block i placed inside target block j.
/// Classifies the embedding up to conjugation by a unitary of A.
struct MultiplicityMatrix {
    BlockSizes source;
    BlockSizes target;
    std::vector<std::vector<int>> entries;  // rows index source blocks

    /// Validates shape and entry signs; algebras are canonicalized already.
    MultiplicityMatrix(BlockSizes source, BlockSizes target,
                       std::vector<std::vector<int>> entries);

    /// Builds from raw (possibly non-canonical) size lists, stably
    /// permuting rows and columns into canonical order.
    static MultiplicityMatrix from_raw(const std::vector<int>& raw_source,
                                       const std::vector<int>& raw_target,
                                       std::vector<std::vector<int>> entries);

    int rows() const { return source.block_count(); }
    int cols() const { return target.block_count(); }
    int row_sum(int i) const;
    /// Sum over i of entries[i][j] * source_size(i); unitality demands this
    /// equals the target block size.
    int weighted_column_sum(int j) const;

    std::vector<int> flattened() const;

    bool operator==(const MultiplicityMatrix& other) const = default;
};

/// Total order used for deterministic enumeration output: lexicographic on
/// the flattened entries (shapes compare first).
bool flattened_less(const MultiplicityMatrix& a, const MultiplicityMatrix& b);

/// Both structural invariants: every weighted column sum hits the target
/// block size (unitality) and every row sum is >= 1 (injectivity).
bool is_unital_injective(const MultiplicityMatrix& e);

/// Admissibility when the language carries the minimal-projection
/// predicate: every source block has total multiplicity exactly 1.
bool passes_min_filter(const MultiplicityMatrix& e);

/// Admissibility when the language carries the conjugate-pair predicate:
/// no nonzero integer vector c with |c_i| <= source size i lies in the left
/// kernel of the matrix. Equivalent to the induced map on per-block
/// eigenvalue multisets of normal elements being injective.
bool passes_sim_filter(const MultiplicityMatrix& e);

bool passes_filter(const MultiplicityMatrix& e, LanguageVariant lang);

/// True when the matrix is a permutation matrix pairing blocks of equal
/// size (the only shape that survives the star filter).
bool is_size_matching_permutation(const MultiplicityMatrix& e);

/// All multiplicity matrices C -> A that are unital, injective, and pass
/// the language filter, sorted lexicographically on flattened entries.
std::vector<MultiplicityMatrix> enumerate_embedding_matrices(const BlockSizes& source,
                                                             const BlockSizes& target,
                                                             LanguageVariant lang);

/// The standard concrete representative of the conjugacy class of a
/// multiplicity matrix: copies are packed along each target diagonal in
/// increasing (source block, copy) order.
struct RealizedEmbedding {
    struct Slot {
        int source_block;  // 0-based
        int copy;          // 0-based copy index within (source block, target block)
    };
    MultiplicityMatrix matrix;
    std::vector<std::vector<Slot>> placement;  // one list per target block
};

RealizedEmbedding realize(const MultiplicityMatrix& e);

/// Applies the realized embedding to a concrete element.
Element apply(const RealizedEmbedding& f, const Element& x);

enum class EdgeStyle { solid, dashed };

/// DOT rendering of the Bratteli diagram as a bipartite multigraph; one
/// edge statement per unit of multiplicity, deterministic order.
std::string to_dot(const MultiplicityMatrix& e, EdgeStyle style = EdgeStyle::solid);

}  // namespace fdqe

#endif
