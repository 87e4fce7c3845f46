#include "fdqe/qe.hpp"

#include <algorithm>

namespace fdqe {

namespace {

// Non-increasing positive sequences with the given sum bound, largest part
// capped by max_part.
void partitions_into(int remaining, int max_part, std::vector<int>& current,
                     std::vector<BlockSizes>& out) {
    if (!current.empty()) {
        out.push_back(BlockSizes::canonical(current));
    }
    for (int part = std::min(max_part, remaining); part >= 1; --part) {
        current.push_back(part);
        partitions_into(remaining - part, part, current, out);
        current.pop_back();
    }
}

std::vector<BlockSizes> bounded_partitions(int sum_bound, int max_part) {
    std::vector<BlockSizes> out;
    std::vector<int> current;
    partitions_into(sum_bound, max_part, current, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

std::vector<BlockSizes> enumerate_algebras(int bound) {
    if (bound < 1) {
        throw ValidationError("bound must be >= 1, got " + std::to_string(bound));
    }
    return bounded_partitions(bound, bound);
}

std::vector<BlockSizes> enumerate_subalgebra_candidates(const BlockSizes& algebra,
                                                        LanguageVariant lang) {
    std::vector<BlockSizes> candidates;
    for (const auto& c : bounded_partitions(algebra.matrix_size_sum(), algebra.max_block())) {
        if (!enumerate_embedding_matrices(c, algebra, lang).empty()) {
            candidates.push_back(c);
        }
    }
    return candidates;
}

MultiplicityMatrix orbit_canonical(const MultiplicityMatrix& e) {
    std::vector<std::vector<int>> columns(static_cast<std::size_t>(e.cols()),
                                          std::vector<int>(static_cast<std::size_t>(e.rows()), 0));
    for (int i = 0; i < e.rows(); ++i) {
        for (int j = 0; j < e.cols(); ++j) {
            columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                e.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    }
    // target sizes are non-increasing, so equal sizes form contiguous runs
    int start = 0;
    while (start < e.cols()) {
        int stop = start;
        while (stop < e.cols() && e.target.size(stop) == e.target.size(start)) ++stop;
        std::sort(columns.begin() + start, columns.begin() + stop);
        start = stop;
    }
    std::vector<std::vector<int>> entries(static_cast<std::size_t>(e.rows()),
                                          std::vector<int>(static_cast<std::size_t>(e.cols()), 0));
    for (int i = 0; i < e.rows(); ++i) {
        for (int j = 0; j < e.cols(); ++j) {
            entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                columns[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        }
    }
    return MultiplicityMatrix(e.source, e.target, std::move(entries));
}

Verdict decide_qe(const BlockSizes& algebra, LanguageVariant lang) {
    Verdict verdict{algebra, lang, true, std::nullopt, {}};
    for (const auto& c : bounded_partitions(algebra.matrix_size_sum(), algebra.max_block())) {
        auto admissible = enumerate_embedding_matrices(c, algebra, lang);
        if (admissible.empty()) continue;
        verdict.stats.candidates += 1;
        verdict.stats.matrices += static_cast<std::int64_t>(admissible.size());
        if (!verdict.qe) continue;  // certificate already pinned; keep counting
        auto head = orbit_canonical(admissible.front());
        for (std::size_t m = 1; m < admissible.size(); ++m) {
            if (!(orbit_canonical(admissible[m]) == head)) {
                verdict.qe = false;
                verdict.certificate = Certificate{c, admissible.front(), admissible[m]};
                break;
            }
        }
    }
    return verdict;
}

SweepReport sweep(int bound, LanguageVariant lang) {
    SweepReport report{lang, bound, {}};
    for (const auto& algebra : enumerate_algebras(bound)) {
        report.rows.push_back(decide_qe(algebra, lang));
    }
    return report;
}

}  // namespace fdqe
