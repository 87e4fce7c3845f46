#ifndef FDQE_NUMERIC_HPP
#define FDQE_NUMERIC_HPP

#include "fdqe/bratteli.hpp"

#include <cstdint>
#include <optional>

namespace fdqe {

struct OptimizerConfig {
    int restarts = 32;
    int max_iterations = 500;
    double step_tolerance = 1e-10;
    double value_tolerance = 1e-6;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Value found by a multi-restart local optimizer. The value is always a
/// valid upper bound on the infimum it approximates; `converged` is false
/// when the best restart hit the iteration cap away from stationarity, in
/// which case the value should be read as an upper bound only.
struct OptResult {
    double value = 0.0;
    bool converged = true;
};

/// Distance from a single square matrix to the set of rank-1 projections,
/// min over unit vectors v of ||block - v v*||. For Hermitian input the
/// eigenvectors of the block are evaluated as exact candidates alongside
/// the optimizer.
OptResult rank1_distance(const Eigen::MatrixXcd& block, const OptimizerConfig& cfg);

/// Distance to the set of minimal projections: rank-1 in exactly one block
/// and zero elsewhere.
OptResult rho_min(const Element& x, const OptimizerConfig& cfg);

/// psi(x, y) = inf over unitaries u of ||u* x u - y||, computed blockwise
/// by Riemannian descent on the unitary group with restarts.
OptResult psi(const Element& x, const Element& y, const OptimizerConfig& cfg);

/// Independent check value for Hermitian pairs: max over blocks of the
/// sup-distance between sorted spectra.
double psi_hermitian_oracle(const Element& x, const Element& y);

/// Interval bracketing the distance to the set of unitarily conjugate
/// pairs: psi/2 <= rho_sim <= psi, tightened to psi/2 on Hermitian input by
/// the averaged-spectrum midpoint pair.
struct SimBounds {
    double lower = 0.0;
    double upper = 0.0;
    bool converged = true;
};

SimBounds rho_sim_bounds(const Element& x, const Element& y, const OptimizerConfig& cfg);

/// Seeded blockwise-Hermitian element with operator norm <= 2; identical
/// output for identical seeds.
Element sample_hermitian(const BlockSizes& algebra, std::uint64_t seed);

enum class PredicateKind { rho_min, rho_sim };

PredicateKind parse_predicate(std::string_view text);
std::string_view to_string(PredicateKind predicate);

/// Result of probing whether a realized embedding preserves a predicate on
/// sampled Hermitian inputs.
struct PredicateReport {
    MultiplicityMatrix embedding;
    PredicateKind predicate;
    int samples = 0;
    double max_discrepancy = 0.0;
    Element worst_input;
    std::optional<Element> worst_input_second;  // present for rho_sim
    std::uint64_t seed = 0;
    bool converged = true;
};

/// Evaluates the predicate on seeded Hermitian inputs and on their images
/// under the realization of `e`, reporting the largest discrepancy. The
/// sample list starts with the unit and the standard minimal projections
/// of the source, then seeded Gaussian Hermitian elements.
PredicateReport check_preservation(const MultiplicityMatrix& e, PredicateKind predicate,
                                   int samples, const OptimizerConfig& cfg);

}  // namespace fdqe

#endif
