#ifndef FDQE_QE_HPP
#define FDQE_QE_HPP

#include "fdqe/bratteli.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace fdqe {

/// A quantifier-elimination failure witness: a subalgebra together with two
/// admissible embedding matrices that no automorphism of the ambient
/// algebra can match.
struct Certificate {
    BlockSizes sub_dims;
    MultiplicityMatrix e1;
    MultiplicityMatrix e2;
};

struct VerdictStats {
    std::int64_t candidates = 0;  // subalgebras with a nonempty admissible set
    std::int64_t matrices = 0;    // admissible matrices across all candidates
};

struct Verdict {
    BlockSizes algebra;
    LanguageVariant language;
    bool qe = false;
    std::optional<Certificate> certificate;
    VerdictStats stats;
};

struct SweepReport {
    LanguageVariant language;
    int bound = 0;
    std::vector<Verdict> rows;  // one per canonical algebra, lexicographic
};

/// All canonical block-size vectors with matrix_size_sum <= bound, in
/// lexicographic order.
std::vector<BlockSizes> enumerate_algebras(int bound);

/// Subalgebra candidates of A for the given language: every canonical C
/// with max block <= max block of A and matrix_size_sum <= that of A whose
/// admissible embedding set into A is nonempty. Lexicographic order.
std::vector<BlockSizes> enumerate_subalgebra_candidates(const BlockSizes& algebra,
                                                        LanguageVariant lang);

/// Canonical representative of the orbit of a multiplicity matrix under
/// automorphisms of the target: within each run of equal target sizes,
/// columns are sorted lexicographically. Inner automorphisms never move
/// the matrix, so two matrices are automorphism-related exactly when their
/// canonical forms coincide.
MultiplicityMatrix orbit_canonical(const MultiplicityMatrix& e);

/// Decides quantifier elimination for the algebra in the given language via
/// the amalgamation criterion over all subalgebra candidates.
Verdict decide_qe(const BlockSizes& algebra, LanguageVariant lang);

/// Verdicts for every canonical algebra with matrix_size_sum <= bound.
SweepReport sweep(int bound, LanguageVariant lang);

}  // namespace fdqe

#endif
