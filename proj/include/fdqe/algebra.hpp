#ifndef FDQE_ALGEBRA_HPP
#define FDQE_ALGEBRA_HPP

#include <Eigen/Dense>

#include <compare>
#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdqe {

/// Raised on any malformed input: bad block sizes, shape mismatches,
/// unparsable algebra strings, out-of-range indices.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A finite dimensional C*-algebra M_{n_1} + ... + M_{n_k}, stored as its
/// block sizes in canonical (non-increasing) order.
class BlockSizes {
  public:
    /// Sorts `raw` non-increasingly and validates every entry.
    static BlockSizes canonical(std::vector<int> raw);

    /// Parses the comma-separated notation, e.g. "3,2". Whitespace ignored.
    static BlockSizes parse(std::string_view text);

    const std::vector<int>& sizes() const { return sizes_; }
    int block_count() const { return static_cast<int>(sizes_.size()); }
    int size(int block) const { return sizes_[static_cast<std::size_t>(block)]; }

    /// Sum of the block sizes n_1 + ... + n_k.
    int matrix_size_sum() const;
    /// Complex linear dimension, sum of n_i^2.
    int linear_dimension() const;
    int max_block() const { return sizes_.front(); }

    std::string to_string() const;

    auto operator<=>(const BlockSizes&) const = default;

  private:
    explicit BlockSizes(std::vector<int> sizes) : sizes_(std::move(sizes)) {}
    std::vector<int> sizes_;
};

/// Which expansion of the C*-algebra language governs embedding
/// admissibility.
enum class LanguageVariant { base, min, sim, star };

LanguageVariant parse_language(std::string_view text);
std::string_view to_string(LanguageVariant lang);

/// A concrete algebra element: one complex matrix per block.
struct Element {
    std::vector<Eigen::MatrixXcd> blocks;

    static Element zero(const BlockSizes& algebra);
    static Element unit(const BlockSizes& algebra);

    Element adjoint() const;
};

Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator*(const Element& x, const Element& y);
Element operator*(std::complex<double> scalar, const Element& x);

/// Checks block count and per-block dimensions against `algebra`.
void validate_element(const Element& x, const BlockSizes& algebra);

/// Spectral norm of a single matrix (largest singular value).
double spectral_norm(const Eigen::MatrixXcd& m);

/// C*-norm on a direct sum: the blockwise maximum of spectral norms.
double operator_norm(const Element& x);

/// Max-metric distance between two elements of the same algebra.
double distance(const Element& x, const Element& y);

/// The element that is zero everywhere except `block_index` (1-based),
/// where it is the rank-1 diagonal projection e_11.
Element standard_min_projection(const BlockSizes& algebra, int block_index);

/// True when ||x - x*|| <= tol blockwise.
bool is_hermitian(const Element& x, double tol = 1e-9);
bool is_hermitian(const Eigen::MatrixXcd& m, double tol = 1e-9);

}  // namespace fdqe

#endif
