#include "fdqe/algebra.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace fdqe {

BlockSizes BlockSizes::canonical(std::vector<int> raw) {
    if (raw.empty()) {
        throw ValidationError("block size list must be non-empty");
    }
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] < 1) {
            throw ValidationError("block size at position " + std::to_string(i + 1) +
                                  " must be >= 1, got " + std::to_string(raw[i]));
        }
    }
    std::sort(raw.begin(), raw.end(), std::greater<int>());
    return BlockSizes(std::move(raw));
}

BlockSizes BlockSizes::parse(std::string_view text) {
    std::vector<int> sizes;
    std::string token;
    auto flush = [&](std::size_t position) {
        if (token.empty()) {
            throw ValidationError("empty block size at position " + std::to_string(position) +
                                  " in algebra string");
        }
        try {
            std::size_t used = 0;
            int value = std::stoi(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            sizes.push_back(value);
        } catch (const std::exception&) {
            throw ValidationError("cannot parse block size '" + token + "' in algebra string");
        }
        token.clear();
    };
    std::size_t position = 1;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (c == ',') {
            flush(position++);
        } else {
            token.push_back(c);
        }
    }
    flush(position);
    return canonical(std::move(sizes));
}

int BlockSizes::matrix_size_sum() const {
    int sum = 0;
    for (int n : sizes_) sum += n;
    return sum;
}

int BlockSizes::linear_dimension() const {
    int sum = 0;
    for (int n : sizes_) sum += n * n;
    return sum;
}

std::string BlockSizes::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
        if (i > 0) out << ',';
        out << sizes_[i];
    }
    return out.str();
}

LanguageVariant parse_language(std::string_view text) {
    if (text == "base") return LanguageVariant::base;
    if (text == "min") return LanguageVariant::min;
    if (text == "sim") return LanguageVariant::sim;
    if (text == "star") return LanguageVariant::star;
    throw ValidationError("unknown language '" + std::string(text) +
                          "', expected base|min|sim|star");
}

std::string_view to_string(LanguageVariant lang) {
    switch (lang) {
        case LanguageVariant::base: return "base";
        case LanguageVariant::min: return "min";
        case LanguageVariant::sim: return "sim";
        case LanguageVariant::star: return "star";
    }
    return "?";
}

Element Element::zero(const BlockSizes& algebra) {
    Element x;
    for (int n : algebra.sizes()) {
        x.blocks.push_back(Eigen::MatrixXcd::Zero(n, n));
    }
    return x;
}

Element Element::unit(const BlockSizes& algebra) {
    Element x;
    for (int n : algebra.sizes()) {
        x.blocks.push_back(Eigen::MatrixXcd::Identity(n, n));
    }
    return x;
}

Element Element::adjoint() const {
    Element out;
    for (const auto& b : blocks) out.blocks.push_back(b.adjoint());
    return out;
}

namespace {

void require_same_shape(const Element& x, const Element& y, const char* op) {
    if (x.blocks.size() != y.blocks.size()) {
        throw ValidationError(std::string(op) + ": block count mismatch");
    }
    for (std::size_t i = 0; i < x.blocks.size(); ++i) {
        if (x.blocks[i].rows() != y.blocks[i].rows()) {
            throw ValidationError(std::string(op) + ": block " + std::to_string(i + 1) +
                                  " size mismatch");
        }
    }
}

}  // namespace

Element operator+(const Element& x, const Element& y) {
    require_same_shape(x, y, "add");
    Element out;
    for (std::size_t i = 0; i < x.blocks.size(); ++i) out.blocks.push_back(x.blocks[i] + y.blocks[i]);
    return out;
}

Element operator-(const Element& x, const Element& y) {
    require_same_shape(x, y, "subtract");
    Element out;
    for (std::size_t i = 0; i < x.blocks.size(); ++i) out.blocks.push_back(x.blocks[i] - y.blocks[i]);
    return out;
}

Element operator*(const Element& x, const Element& y) {
    require_same_shape(x, y, "multiply");
    Element out;
    for (std::size_t i = 0; i < x.blocks.size(); ++i) out.blocks.push_back(x.blocks[i] * y.blocks[i]);
    return out;
}

Element operator*(std::complex<double> scalar, const Element& x) {
    Element out;
    for (const auto& b : x.blocks) out.blocks.push_back(scalar * b);
    return out;
}

void validate_element(const Element& x, const BlockSizes& algebra) {
    if (static_cast<int>(x.blocks.size()) != algebra.block_count()) {
        throw ValidationError("element has " + std::to_string(x.blocks.size()) +
                              " blocks, algebra " + algebra.to_string() + " expects " +
                              std::to_string(algebra.block_count()));
    }
    for (int i = 0; i < algebra.block_count(); ++i) {
        const auto& b = x.blocks[static_cast<std::size_t>(i)];
        int n = algebra.size(i);
        if (b.rows() != n || b.cols() != n) {
            throw ValidationError("element block " + std::to_string(i + 1) + ": expected " +
                                  std::to_string(n) + "x" + std::to_string(n) + ", got " +
                                  std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
        }
    }
}

double spectral_norm(const Eigen::MatrixXcd& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    if (m.rows() == 1 && m.cols() == 1) return std::abs(m(0, 0));
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

double operator_norm(const Element& x) {
    double best = 0.0;
    for (const auto& b : x.blocks) best = std::max(best, spectral_norm(b));
    return best;
}

double distance(const Element& x, const Element& y) {
    return operator_norm(x - y);
}

Element standard_min_projection(const BlockSizes& algebra, int block_index) {
    if (block_index < 1 || block_index > algebra.block_count()) {
        throw ValidationError("block index " + std::to_string(block_index) +
                              " out of range for algebra " + algebra.to_string());
    }
    Element p = Element::zero(algebra);
    p.blocks[static_cast<std::size_t>(block_index - 1)](0, 0) = 1.0;
    return p;
}

bool is_hermitian(const Eigen::MatrixXcd& m, double tol) {
    return spectral_norm(m - m.adjoint()) <= tol;
}

bool is_hermitian(const Element& x, double tol) {
    for (const auto& b : x.blocks) {
        if (!is_hermitian(b, tol)) return false;
    }
    return true;
}

}  // namespace fdqe
