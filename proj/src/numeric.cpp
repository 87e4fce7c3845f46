#include "fdqe/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace fdqe {

void OptimizerConfig::validate() const {
    if (restarts < 1) throw ValidationError("restarts must be >= 1");
    if (max_iterations < 1) throw ValidationError("max_iterations must be >= 1");
    if (step_tolerance <= 0 || value_tolerance <= 0) {
        throw ValidationError("tolerances must be > 0");
    }
}

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// mt19937_64 supplies the bit stream; the mappings to uniforms and
// gaussians are spelled out so output files do not depend on the standard
// library's distribution implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() {  // in [0, 1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double gaussian() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::complex<double> complex_gaussian() {
        return {gaussian() / std::numbers::sqrt2, gaussian() / std::numbers::sqrt2};
    }

    VectorXcd unit_vector(int n) {
        VectorXcd v(n);
        for (int i = 0; i < n; ++i) v(i) = complex_gaussian();
        double norm = v.norm();
        if (norm < 1e-12) {
            v.setZero();
            v(0) = 1.0;
            return v;
        }
        return v / norm;
    }

    MatrixXcd unitary(int n) {
        MatrixXcd g(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) g(i, j) = complex_gaussian();
        }
        Eigen::HouseholderQR<MatrixXcd> qr(g);
        MatrixXcd q = qr.householderQ();
        MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
        for (int j = 0; j < n; ++j) {
            std::complex<double> d = r(j, j);
            double mag = std::abs(d);
            q.col(j) *= mag > 1e-14 ? d / mag : 1.0;
        }
        return q;
    }

  private:
    std::mt19937_64 engine_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer over the pair
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct SingularTriple {
    double sigma = 0.0;
    VectorXcd left;
    VectorXcd right;
};

SingularTriple top_singular(const MatrixXcd& m) {
    Eigen::JacobiSVD<MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    return {svd.singularValues()(0), svd.matrixU().col(0), svd.matrixV().col(0)};
}

// Projected gradient descent for f(v) = ||block - v v*|| on the unit
// sphere. Returns the best value reached and whether it stopped at
// (approximate) stationarity.
OptResult sphere_descent(const MatrixXcd& block, VectorXcd v, const OptimizerConfig& cfg) {
    double value = spectral_norm(block - v * v.adjoint());
    bool converged = false;
    double step = 0.5;
    int stalls = 0;
    std::vector<double> history;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        history.push_back(value);
        if (iter >= 20 && history[static_cast<std::size_t>(iter - 20)] - value <= 1e-8) {
            converged = true;  // value has flattened out
            break;
        }
        auto [sigma, u, w] = top_singular(block - v * v.adjoint());
        // d sigma = -Re[((w* v) u + (u* v) w)* dv]; ascent of -f along g
        VectorXcd g = (w.adjoint() * v)(0) * u + (u.adjoint() * v)(0) * w;
        VectorXcd tangent = g - std::complex<double>((v.adjoint() * g)(0).real(), 0.0) * v;
        double gnorm = tangent.norm();
        if (gnorm <= cfg.step_tolerance * std::max(1.0, sigma)) {
            converged = true;
            break;
        }
        double trial = std::min(2.0 * step, 0.5);
        bool improved = false;
        for (int halving = 0; halving < 30; ++halving) {
            VectorXcd candidate = v + trial * tangent;
            candidate /= candidate.norm();
            double candidate_value = spectral_norm(block - candidate * candidate.adjoint());
            if (candidate_value < value - std::max(1e-4 * trial * gnorm * gnorm, 1e-11)) {
                stalls = value - candidate_value <= 1e-10 ? stalls + 1 : 0;
                v = candidate;
                value = candidate_value;
                step = trial;
                improved = true;
                break;
            }
            trial *= 0.5;
        }
        if (!improved || stalls >= 3) {
            converged = true;  // no descent direction at line-search resolution
            break;
        }
    }
    return {value, converged};
}

// Riemannian descent for h(u) = ||u* x u - y|| on U(n); steps move along
// u exp(t K) with K the skew part of the norm subgradient transporter.
// exp(t K) is evaluated through the eigensystem of -iK, so line-search
// trials are cheap and iterates stay exactly unitary. Hermitian pairs get
// eigenvalue-based norms and subgradients instead of SVDs.
OptResult unitary_descent(const MatrixXcd& x, const MatrixXcd& y, MatrixXcd u,
                          const OptimizerConfig& cfg) {
    const bool hermitian_pair = is_hermitian(x, 1e-12) && is_hermitian(y, 1e-12);
    auto objective = [&](const MatrixXcd& candidate) {
        MatrixXcd m = candidate.adjoint() * x * candidate - y;
        if (hermitian_pair) {
            Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
            return std::max(std::abs(solver.eigenvalues()(0)),
                            std::abs(solver.eigenvalues()(solver.eigenvalues().size() - 1)));
        }
        return spectral_norm(m);
    };
    auto top_triple = [&](const MatrixXcd& m) -> SingularTriple {
        if (hermitian_pair) {
            Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(m);
            int last = static_cast<int>(solver.eigenvalues().size()) - 1;
            int at = std::abs(solver.eigenvalues()(0)) > std::abs(solver.eigenvalues()(last)) ? 0
                                                                                              : last;
            double lambda = solver.eigenvalues()(at);
            VectorXcd w = solver.eigenvectors().col(at);
            return {std::abs(lambda), lambda < 0 ? VectorXcd(-w) : w, w};
        }
        return top_singular(m);
    };
    double value = objective(u);
    bool converged = false;
    double scale = std::max({1.0, spectral_norm(x), spectral_norm(y)});
    double step = 1.0;
    int stalls = 0;
    std::vector<double> history;
    for (int iter = 0; iter < cfg.max_iterations; ++iter) {
        history.push_back(value);
        if (iter >= 20 && history[static_cast<std::size_t>(iter - 20)] - value <= 1e-8 * scale) {
            converged = true;  // value has flattened out
            break;
        }
        MatrixXcd conjugated = u.adjoint() * x * u;
        auto [sigma, a, b] = top_triple(conjugated - y);
        MatrixXcd transporter = b * a.adjoint() * conjugated - conjugated * b * a.adjoint();
        MatrixXcd skew = 0.5 * (transporter - transporter.adjoint());
        double gnorm = skew.norm();
        if (gnorm <= cfg.step_tolerance * scale) {
            converged = true;
            break;
        }
        Eigen::SelfAdjointEigenSolver<MatrixXcd> hermitian_part(std::complex<double>(0, -1) * skew);
        auto retract = [&](double t) {
            VectorXcd phases(skew.rows());
            for (int i = 0; i < skew.rows(); ++i) {
                phases(i) = std::exp(std::complex<double>(0.0, t * hermitian_part.eigenvalues()(i)));
            }
            return (u * (hermitian_part.eigenvectors() * phases.asDiagonal() *
                         hermitian_part.eigenvectors().adjoint()))
                .eval();
        };
        double trial = std::min(2.0 * step, 1.0 / std::max(1.0, gnorm));
        bool improved = false;
        for (int halving = 0; halving < 30; ++halving) {
            MatrixXcd candidate = retract(trial);
            double candidate_value = objective(candidate);
            if (candidate_value < value - std::max(1e-4 * trial * gnorm * gnorm, 1e-11 * scale)) {
                stalls = value - candidate_value <= 1e-10 * scale ? stalls + 1 : 0;
                u = candidate;
                value = candidate_value;
                step = trial;
                improved = true;
                break;
            }
            trial *= 0.5;
        }
        if (!improved || stalls >= 3) {
            converged = true;
            break;
        }
    }
    return {value, converged};
}

std::vector<double> sorted_spectrum(const MatrixXcd& hermitian) {
    Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(0.5 * (hermitian + hermitian.adjoint()));
    std::vector<double> spectrum(solver.eigenvalues().data(),
                                 solver.eigenvalues().data() + solver.eigenvalues().size());
    return spectrum;  // SelfAdjointEigenSolver returns increasing order
}

void require_hermitian(const Element& x, const char* who) {
    if (!is_hermitian(x)) {
        throw ValidationError(std::string(who) + ": input is not Hermitian within 1e-9");
    }
}

}  // namespace

OptResult rank1_distance(const Eigen::MatrixXcd& block, const OptimizerConfig& cfg) {
    cfg.validate();
    if (block.rows() != block.cols() || block.rows() < 1) {
        throw ValidationError("rank1_distance: block must be square and non-empty");
    }
    const int n = static_cast<int>(block.rows());

    OptResult best{std::numeric_limits<double>::infinity(), true};
    auto consider = [&](const OptResult& r) {
        if (r.value < best.value) best = r;
    };

    if (is_hermitian(block)) {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(0.5 * (block + block.adjoint()));
        for (int j = 0; j < n; ++j) {
            VectorXcd v = solver.eigenvectors().col(j);
            consider({spectral_norm(block - v * v.adjoint()), true});
        }
    }

    Rng rng(mix_seed(cfg.seed, 0x72616e6b31ULL));
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        VectorXcd start;
        if (restart == 0) {
            start = VectorXcd::Zero(n);
            start(0) = 1.0;
        } else {
            start = rng.unit_vector(n);
        }
        consider(sphere_descent(block, start, cfg));
    }
    return best;
}

OptResult rho_min(const Element& x, const OptimizerConfig& cfg) {
    cfg.validate();
    if (x.blocks.empty()) throw ValidationError("rho_min: element has no blocks");
    std::vector<double> norms;
    norms.reserve(x.blocks.size());
    for (const auto& b : x.blocks) {
        if (b.rows() != b.cols() || b.rows() < 1) {
            throw ValidationError("rho_min: element blocks must be square and non-empty");
        }
        norms.push_back(spectral_norm(b));
    }
    OptResult best{std::numeric_limits<double>::infinity(), true};
    for (std::size_t i = 0; i < x.blocks.size(); ++i) {
        OptResult inner = rank1_distance(x.blocks[i], cfg);
        double others = 0.0;
        for (std::size_t j = 0; j < norms.size(); ++j) {
            if (j != i) others = std::max(others, norms[j]);
        }
        double value = std::max(inner.value, others);
        if (value < best.value) best = {value, inner.converged};
    }
    return best;
}

OptResult psi(const Element& x, const Element& y, const OptimizerConfig& cfg) {
    cfg.validate();
    if (x.blocks.size() != y.blocks.size()) {
        throw ValidationError("psi: elements have different block counts");
    }
    OptResult result{0.0, true};
    for (std::size_t i = 0; i < x.blocks.size(); ++i) {
        const auto& xb = x.blocks[i];
        const auto& yb = y.blocks[i];
        if (xb.rows() != yb.rows() || xb.rows() != xb.cols() || yb.rows() != yb.cols()) {
            throw ValidationError("psi: block " + std::to_string(i + 1) + " shape mismatch");
        }
        const int n = static_cast<int>(xb.rows());

        OptResult block_best{spectral_norm(xb - yb), true};  // u = identity
        auto consider = [&](const OptResult& r) {
            if (r.value < block_best.value) block_best = r;
        };

        std::vector<MatrixXcd> starts;
        starts.push_back(MatrixXcd::Identity(n, n));
        if (is_hermitian(xb) && is_hermitian(yb)) {
            // align eigenbases; for Hermitian pairs this start is already
            // optimal by the sorted-spectra bound
            Eigen::SelfAdjointEigenSolver<MatrixXcd> sx(0.5 * (xb + xb.adjoint()));
            Eigen::SelfAdjointEigenSolver<MatrixXcd> sy(0.5 * (yb + yb.adjoint()));
            starts.push_back(sx.eigenvectors() * sy.eigenvectors().adjoint());
        }
        Rng rng(mix_seed(cfg.seed, 0x707369ULL + i));
        while (static_cast<int>(starts.size()) < cfg.restarts) {
            starts.push_back(rng.unitary(n));
        }
        for (const auto& start : starts) {
            consider(unitary_descent(xb, yb, start, cfg));
        }
        if (block_best.value > result.value) result.value = block_best.value;
        result.converged = result.converged && block_best.converged;
    }
    return result;
}

double psi_hermitian_oracle(const Element& x, const Element& y) {
    if (x.blocks.size() != y.blocks.size()) {
        throw ValidationError("psi_hermitian_oracle: elements have different block counts");
    }
    require_hermitian(x, "psi_hermitian_oracle");
    require_hermitian(y, "psi_hermitian_oracle");
    double value = 0.0;
    for (std::size_t i = 0; i < x.blocks.size(); ++i) {
        if (x.blocks[i].rows() != y.blocks[i].rows()) {
            throw ValidationError("psi_hermitian_oracle: block " + std::to_string(i + 1) +
                                  " shape mismatch");
        }
        auto lx = sorted_spectrum(x.blocks[i]);
        auto ly = sorted_spectrum(y.blocks[i]);
        for (std::size_t j = 0; j < lx.size(); ++j) {
            value = std::max(value, std::abs(lx[j] - ly[j]));
        }
    }
    return value;
}

SimBounds rho_sim_bounds(const Element& x, const Element& y, const OptimizerConfig& cfg) {
    OptResult p = psi(x, y, cfg);
    SimBounds bounds{p.value / 2.0, p.value, p.converged};
    if (is_hermitian(x) && is_hermitian(y)) {
        // midpoint pair: give both elements the averaged sorted spectrum in
        // their own eigenbases; the pair is conjugate and sits at distance
        // oracle/2 from (x, y)
        double midpoint_upper = psi_hermitian_oracle(x, y) / 2.0;
        bounds.upper = std::min(bounds.upper, midpoint_upper);
        bounds.lower = std::min(bounds.lower, bounds.upper);
    }
    return bounds;
}

Element sample_hermitian(const BlockSizes& algebra, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0x6865726dULL));
    Element x;
    for (int n : algebra.sizes()) {
        MatrixXcd g(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) g(i, j) = rng.complex_gaussian();
        }
        x.blocks.push_back(0.5 * (g + g.adjoint()).eval());
    }
    double norm = operator_norm(x);
    if (norm > 2.0) {
        x = std::complex<double>(2.0 / norm, 0.0) * x;
    }
    return x;
}

PredicateKind parse_predicate(std::string_view text) {
    if (text == "rho-min" || text == "rho_min") return PredicateKind::rho_min;
    if (text == "rho-sim" || text == "rho_sim") return PredicateKind::rho_sim;
    throw ValidationError("unknown predicate '" + std::string(text) +
                          "', expected rho-min|rho-sim");
}

std::string_view to_string(PredicateKind predicate) {
    return predicate == PredicateKind::rho_min ? "rho_min" : "rho_sim";
}

PredicateReport check_preservation(const MultiplicityMatrix& e, PredicateKind predicate,
                                   int samples, const OptimizerConfig& cfg) {
    cfg.validate();
    if (samples < 1) throw ValidationError("samples must be >= 1");
    if (!is_unital_injective(e)) {
        throw ValidationError("check_preservation: matrix is not unital and injective");
    }
    RealizedEmbedding f = realize(e);
    const BlockSizes& source = e.source;

    PredicateReport report{e,      predicate, samples, 0.0, Element::unit(source),
                           std::nullopt, cfg.seed,  true};

    // deterministic probes first: the unit, then standard minimal
    // projections (pairs of them for the binary predicate)
    std::vector<std::pair<Element, std::optional<Element>>> probes;
    if (predicate == PredicateKind::rho_min) {
        probes.emplace_back(Element::unit(source), std::nullopt);
        for (int i = 1; i <= source.block_count(); ++i) {
            probes.emplace_back(standard_min_projection(source, i), std::nullopt);
        }
    } else {
        probes.emplace_back(Element::unit(source), Element::unit(source));
        for (int i = 1; i <= source.block_count(); ++i) {
            for (int j = i; j <= source.block_count(); ++j) {
                probes.emplace_back(standard_min_projection(source, i),
                                    standard_min_projection(source, j));
            }
        }
    }

    for (int s = 0; s < samples; ++s) {
        Element first = Element::unit(source);
        std::optional<Element> second;
        if (s < static_cast<int>(probes.size())) {
            first = probes[static_cast<std::size_t>(s)].first;
            second = probes[static_cast<std::size_t>(s)].second;
        } else {
            first = sample_hermitian(source, mix_seed(cfg.seed, 2 * static_cast<std::uint64_t>(s)));
            if (predicate == PredicateKind::rho_sim) {
                second = sample_hermitian(source,
                                          mix_seed(cfg.seed, 2 * static_cast<std::uint64_t>(s) + 1));
            }
        }

        double source_value = 0.0;
        double image_value = 0.0;
        if (predicate == PredicateKind::rho_min) {
            OptResult sv = rho_min(first, cfg);
            OptResult iv = rho_min(apply(f, first), cfg);
            source_value = sv.value;
            image_value = iv.value;
            report.converged = report.converged && sv.converged && iv.converged;
        } else {
            SimBounds sv = rho_sim_bounds(first, *second, cfg);
            SimBounds iv = rho_sim_bounds(apply(f, first), apply(f, *second), cfg);
            source_value = sv.upper;
            image_value = iv.upper;
            report.converged = report.converged && sv.converged && iv.converged;
        }
        double discrepancy = std::abs(source_value - image_value);
        if (s == 0 || discrepancy > report.max_discrepancy) {
            report.max_discrepancy = discrepancy;
            report.worst_input = first;
            report.worst_input_second = second;
        }
    }
    return report;
}

}  // namespace fdqe
