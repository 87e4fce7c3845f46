#ifndef FDQE_TESTS_SUPPORT_HPP
#define FDQE_TESTS_SUPPORT_HPP

#include "fdqe/bratteli.hpp"
#include "fdqe/qe.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <vector>

namespace fdqe::testing {

// Exhaustive enumeration oracle, independent of the per-column DFS in the
// library: an odometer over all entry assignments in [0, max target size],
// pruned only when a running weighted column sum already exceeds its
// target. Keeps the same output order contract (lexicographic flattened).
inline std::vector<MultiplicityMatrix> brute_force_matrices(const BlockSizes& source,
                                                            const BlockSizes& target,
                                                            LanguageVariant lang) {
    const int k = source.block_count();
    const int l = target.block_count();
    const int max_entry = target.max_block();
    std::vector<std::vector<int>> entries(static_cast<std::size_t>(k),
                                          std::vector<int>(static_cast<std::size_t>(l), 0));
    std::vector<int> column_sums(static_cast<std::size_t>(l), 0);
    std::vector<MultiplicityMatrix> found;

    auto recurse = [&](auto&& self, int cell) -> void {
        if (cell == k * l) {
            MultiplicityMatrix e(source, target, entries);
            if (is_unital_injective(e) && passes_filter(e, lang)) {
                found.push_back(std::move(e));
            }
            return;
        }
        int i = cell / l;
        int j = cell % l;
        for (int v = 0; v <= max_entry; ++v) {
            int add = v * source.size(i);
            if (column_sums[static_cast<std::size_t>(j)] + add > target.size(j)) break;
            entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
            column_sums[static_cast<std::size_t>(j)] += add;
            self(self, cell + 1);
            column_sums[static_cast<std::size_t>(j)] -= add;
            entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 0;
        }
    };
    recurse(recurse, 0);
    std::sort(found.begin(), found.end(), flattened_less);
    return found;
}

// Explicit orbit oracle: search all size-preserving column permutations.
inline bool related_by_column_permutation(const MultiplicityMatrix& a,
                                          const MultiplicityMatrix& b) {
    if (a.source != b.source || a.target != b.target) return false;
    const int l = a.cols();
    std::vector<int> perm(static_cast<std::size_t>(l));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool size_preserving = true;
        for (int j = 0; j < l && size_preserving; ++j) {
            if (a.target.size(perm[static_cast<std::size_t>(j)]) != a.target.size(j)) {
                size_preserving = false;
            }
        }
        if (!size_preserving) continue;
        bool match = true;
        for (int i = 0; i < a.rows() && match; ++i) {
            for (int j = 0; j < l && match; ++j) {
                if (a.entries[static_cast<std::size_t>(i)]
                             [static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])] !=
                    b.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                    match = false;
                }
            }
        }
        if (match) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

// Conjugacy-reflection oracle for the sim filter: over spectra drawn from a
// fixed five-point value set, the map on per-block eigenvalue multisets of
// normal elements must be injective. Multisets are encoded as count
// vectors; a collision of two distinct tuples on every column pushforward
// witnesses failure.
inline bool reflects_conjugacy_oracle(const MultiplicityMatrix& e) {
    constexpr int kValues = 5;
    const int k = e.rows();
    const int l = e.cols();

    // all count vectors over kValues values summing to `total`
    auto compositions = [](int total) {
        std::vector<std::vector<int>> out;
        std::vector<int> current(kValues, 0);
        auto rec = [&](auto&& self, int idx, int remaining) -> void {
            if (idx == kValues - 1) {
                current[static_cast<std::size_t>(idx)] = remaining;
                out.push_back(current);
                return;
            }
            for (int v = 0; v <= remaining; ++v) {
                current[static_cast<std::size_t>(idx)] = v;
                self(self, idx + 1, remaining - v);
            }
        };
        rec(rec, 0, total);
        return out;
    };

    std::vector<std::vector<std::vector<int>>> per_block;
    for (int i = 0; i < k; ++i) per_block.push_back(compositions(e.source.size(i)));

    std::map<std::vector<int>, std::vector<int>> seen;  // pushforward -> tuple encoding
    std::vector<int> choice(static_cast<std::size_t>(k), 0);
    bool injective = true;

    auto visit = [&](auto&& self, int block) -> void {
        if (!injective) return;
        if (block == k) {
            std::vector<int> pushforward;
            pushforward.reserve(static_cast<std::size_t>(l * kValues));
            for (int j = 0; j < l; ++j) {
                for (int v = 0; v < kValues; ++v) {
                    int count = 0;
                    for (int i = 0; i < k; ++i) {
                        count += e.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                                 per_block[static_cast<std::size_t>(i)]
                                          [static_cast<std::size_t>(choice[static_cast<std::size_t>(i)])]
                                          [static_cast<std::size_t>(v)];
                    }
                    pushforward.push_back(count);
                }
            }
            std::vector<int> encoding;
            for (int i = 0; i < k; ++i) {
                const auto& counts = per_block[static_cast<std::size_t>(i)]
                                              [static_cast<std::size_t>(choice[static_cast<std::size_t>(i)])];
                encoding.insert(encoding.end(), counts.begin(), counts.end());
            }
            auto [it, inserted] = seen.emplace(std::move(pushforward), encoding);
            if (!inserted && it->second != encoding) injective = false;
            return;
        }
        for (std::size_t c = 0; c < per_block[static_cast<std::size_t>(block)].size(); ++c) {
            choice[static_cast<std::size_t>(block)] = static_cast<int>(c);
            self(self, block + 1);
        }
    };
    visit(visit, 0);
    return injective;
}

// Seeded complex element, general (non-Hermitian) entries.
inline Element random_element(const BlockSizes& algebra, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    auto gaussian = [&]() {
        double u1 = 0.0;
        while (u1 <= 0.0) u1 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        double u2 = static_cast<double>(engine() >> 11) * 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    };
    Element x;
    for (int n : algebra.sizes()) {
        Eigen::MatrixXcd m(n, n);
        for (int r = 0; r < n; ++r) {
            for (int c = 0; c < n; ++c) m(r, c) = std::complex<double>(gaussian(), gaussian());
        }
        x.blocks.push_back(std::move(m));
    }
    return x;
}

inline std::vector<std::pair<BlockSizes, BlockSizes>> algebra_pairs(int bound) {
    std::vector<std::pair<BlockSizes, BlockSizes>> pairs;
    for (const auto& target : enumerate_algebras(bound)) {
        for (const auto& source : enumerate_algebras(bound)) {
            pairs.emplace_back(source, target);
        }
    }
    return pairs;
}

}  // namespace fdqe::testing

#endif
