#include "fdqe/bratteli.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace fdqe {

MultiplicityMatrix::MultiplicityMatrix(BlockSizes source_in, BlockSizes target_in,
                                       std::vector<std::vector<int>> entries_in)
    : source(std::move(source_in)), target(std::move(target_in)), entries(std::move(entries_in)) {
    if (static_cast<int>(entries.size()) != source.block_count()) {
        throw ValidationError("multiplicity matrix has " + std::to_string(entries.size()) +
                              " rows, source " + source.to_string() + " expects " +
                              std::to_string(source.block_count()));
    }
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (static_cast<int>(entries[i].size()) != target.block_count()) {
            throw ValidationError("multiplicity matrix row " + std::to_string(i + 1) + " has " +
                                  std::to_string(entries[i].size()) + " columns, target " +
                                  target.to_string() + " expects " +
                                  std::to_string(target.block_count()));
        }
        for (int v : entries[i]) {
            if (v < 0) {
                throw ValidationError("multiplicity matrix entries must be nonnegative");
            }
        }
    }
}

MultiplicityMatrix MultiplicityMatrix::from_raw(const std::vector<int>& raw_source,
                                                const std::vector<int>& raw_target,
                                                std::vector<std::vector<int>> entries) {
    auto stable_desc_order = [](const std::vector<int>& sizes) {
        std::vector<std::size_t> order(sizes.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return sizes[a] > sizes[b]; });
        return order;
    };
    if (entries.size() != raw_source.size()) {
        throw ValidationError("multiplicity matrix has " + std::to_string(entries.size()) +
                              " rows, source expects " + std::to_string(raw_source.size()));
    }
    auto row_order = stable_desc_order(raw_source);
    auto col_order = stable_desc_order(raw_target);
    std::vector<std::vector<int>> permuted(entries.size());
    for (std::size_t i = 0; i < row_order.size(); ++i) {
        const auto& row = entries[row_order[i]];
        if (row.size() != raw_target.size()) {
            throw ValidationError("multiplicity matrix row " + std::to_string(row_order[i] + 1) +
                                  " has " + std::to_string(row.size()) + " columns, target expects " +
                                  std::to_string(raw_target.size()));
        }
        permuted[i].reserve(col_order.size());
        for (std::size_t j = 0; j < col_order.size(); ++j) {
            permuted[i].push_back(row[col_order[j]]);
        }
    }
    return MultiplicityMatrix(BlockSizes::canonical(raw_source), BlockSizes::canonical(raw_target),
                              std::move(permuted));
}

int MultiplicityMatrix::row_sum(int i) const {
    const auto& row = entries[static_cast<std::size_t>(i)];
    return std::accumulate(row.begin(), row.end(), 0);
}

int MultiplicityMatrix::weighted_column_sum(int j) const {
    int sum = 0;
    for (int i = 0; i < rows(); ++i) {
        sum += entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * source.size(i);
    }
    return sum;
}

std::vector<int> MultiplicityMatrix::flattened() const {
    std::vector<int> flat;
    flat.reserve(static_cast<std::size_t>(rows()) * static_cast<std::size_t>(cols()));
    for (const auto& row : entries) flat.insert(flat.end(), row.begin(), row.end());
    return flat;
}

bool flattened_less(const MultiplicityMatrix& a, const MultiplicityMatrix& b) {
    if (a.source != b.source) return a.source < b.source;
    if (a.target != b.target) return a.target < b.target;
    return a.flattened() < b.flattened();
}

bool is_unital_injective(const MultiplicityMatrix& e) {
    for (int j = 0; j < e.cols(); ++j) {
        if (e.weighted_column_sum(j) != e.target.size(j)) return false;
    }
    for (int i = 0; i < e.rows(); ++i) {
        if (e.row_sum(i) < 1) return false;
    }
    return true;
}

bool passes_min_filter(const MultiplicityMatrix& e) {
    for (int i = 0; i < e.rows(); ++i) {
        if (e.row_sum(i) != 1) return false;
    }
    return true;
}

bool passes_sim_filter(const MultiplicityMatrix& e) {
    // Search the bounded integer box for a nonzero left-kernel vector.
    const int k = e.rows();
    std::vector<int> c(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = -e.source.size(i);

    while (true) {
        bool zero = std::all_of(c.begin(), c.end(), [](int v) { return v == 0; });
        if (!zero) {
            bool in_kernel = true;
            for (int j = 0; j < e.cols() && in_kernel; ++j) {
                int dot = 0;
                for (int i = 0; i < k; ++i) {
                    dot += c[static_cast<std::size_t>(i)] *
                           e.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                }
                if (dot != 0) in_kernel = false;
            }
            if (in_kernel) return false;
        }
        // odometer step over the box prod [-size_i, size_i]
        int pos = k - 1;
        while (pos >= 0 && c[static_cast<std::size_t>(pos)] == e.source.size(pos)) {
            c[static_cast<std::size_t>(pos)] = -e.source.size(pos);
            --pos;
        }
        if (pos < 0) break;
        ++c[static_cast<std::size_t>(pos)];
    }
    return true;
}

bool passes_filter(const MultiplicityMatrix& e, LanguageVariant lang) {
    switch (lang) {
        case LanguageVariant::base: return true;
        case LanguageVariant::min: return passes_min_filter(e);
        case LanguageVariant::sim: return passes_sim_filter(e);
        case LanguageVariant::star: return passes_min_filter(e) && passes_sim_filter(e);
    }
    return false;
}

bool is_size_matching_permutation(const MultiplicityMatrix& e) {
    if (e.rows() != e.cols()) return false;
    std::vector<int> col_hits(static_cast<std::size_t>(e.cols()), 0);
    for (int i = 0; i < e.rows(); ++i) {
        int ones = 0;
        int hit_col = -1;
        for (int j = 0; j < e.cols(); ++j) {
            int v = e.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (v == 0) continue;
            if (v != 1) return false;
            ++ones;
            hit_col = j;
        }
        if (ones != 1) return false;
        if (e.source.size(i) != e.target.size(hit_col)) return false;
        ++col_hits[static_cast<std::size_t>(hit_col)];
    }
    return std::all_of(col_hits.begin(), col_hits.end(), [](int h) { return h == 1; });
}

namespace {

// All nonnegative integer rows e with sum_i e_i * sizes_i == total, in
// lexicographic order.
void column_solutions(const std::vector<int>& sizes, int total, std::vector<int>& partial,
                      std::size_t depth, std::vector<std::vector<int>>& out) {
    if (depth == sizes.size()) {
        if (total == 0) out.push_back(partial);
        return;
    }
    int size = sizes[depth];
    for (int count = 0; count * size <= total; ++count) {
        partial.push_back(count);
        column_solutions(sizes, total - count * size, partial, depth + 1, out);
        partial.pop_back();
    }
}

struct ColumnDfs {
    const BlockSizes& source;
    const BlockSizes& target;
    LanguageVariant lang;
    std::vector<std::vector<std::vector<int>>> per_column;  // solutions per target column
    std::vector<std::vector<bool>> coverable_from;  // row i coverable by some column >= j
    std::vector<std::vector<int>> chosen;           // chosen column vectors
    std::vector<int> row_sums;
    std::vector<MultiplicityMatrix> found;

    void run() {
        const int k = source.block_count();
        const int l = target.block_count();
        per_column.resize(static_cast<std::size_t>(l));
        for (int j = 0; j < l; ++j) {
            std::vector<int> partial;
            column_solutions(source.sizes(), target.size(j), partial, 0,
                             per_column[static_cast<std::size_t>(j)]);
        }
        coverable_from.assign(static_cast<std::size_t>(k),
                              std::vector<bool>(static_cast<std::size_t>(l) + 1, false));
        for (int i = 0; i < k; ++i) {
            for (int j = l - 1; j >= 0; --j) {
                bool here = source.size(i) <= target.size(j);
                coverable_from[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    here || coverable_from[static_cast<std::size_t>(i)][static_cast<std::size_t>(j) + 1];
            }
        }
        row_sums.assign(static_cast<std::size_t>(k), 0);
        descend(0);
        std::sort(found.begin(), found.end(), flattened_less);
    }

    void descend(int j) {
        const int k = source.block_count();
        const int l = target.block_count();
        // a row still at zero must be reachable by some remaining column
        for (int i = 0; i < k; ++i) {
            if (row_sums[static_cast<std::size_t>(i)] == 0 &&
                !coverable_from[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
                return;
            }
        }
        if (j == l) {
            std::vector<std::vector<int>> entries(static_cast<std::size_t>(k),
                                                  std::vector<int>(static_cast<std::size_t>(l), 0));
            for (int i = 0; i < k; ++i) {
                for (int jj = 0; jj < l; ++jj) {
                    entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)] =
                        chosen[static_cast<std::size_t>(jj)][static_cast<std::size_t>(i)];
                }
            }
            MultiplicityMatrix e(source, target, std::move(entries));
            if (is_unital_injective(e) && passes_filter(e, lang)) {
                found.push_back(std::move(e));
            }
            return;
        }
        for (const auto& column : per_column[static_cast<std::size_t>(j)]) {
            chosen.push_back(column);
            for (int i = 0; i < k; ++i) row_sums[static_cast<std::size_t>(i)] += column[static_cast<std::size_t>(i)];
            descend(j + 1);
            for (int i = 0; i < k; ++i) row_sums[static_cast<std::size_t>(i)] -= column[static_cast<std::size_t>(i)];
            chosen.pop_back();
        }
    }
};

}  // namespace

std::vector<MultiplicityMatrix> enumerate_embedding_matrices(const BlockSizes& source,
                                                             const BlockSizes& target,
                                                             LanguageVariant lang) {
    ColumnDfs dfs{source, target, lang, {}, {}, {}, {}, {}};
    dfs.run();
    return dfs.found;
}

RealizedEmbedding realize(const MultiplicityMatrix& e) {
    if (!is_unital_injective(e)) {
        throw ValidationError("cannot realize a matrix that is not unital and injective");
    }
    RealizedEmbedding f{e, {}};
    f.placement.resize(static_cast<std::size_t>(e.cols()));
    for (int j = 0; j < e.cols(); ++j) {
        auto& slots = f.placement[static_cast<std::size_t>(j)];
        for (int i = 0; i < e.rows(); ++i) {
            int copies = e.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int copy = 0; copy < copies; ++copy) {
                slots.push_back(RealizedEmbedding::Slot{i, copy});
            }
        }
    }
    return f;
}

Element apply(const RealizedEmbedding& f, const Element& x) {
    validate_element(x, f.matrix.source);
    Element y = Element::zero(f.matrix.target);
    for (int j = 0; j < f.matrix.cols(); ++j) {
        int offset = 0;
        for (const auto& slot : f.placement[static_cast<std::size_t>(j)]) {
            const auto& block = x.blocks[static_cast<std::size_t>(slot.source_block)];
            int n = static_cast<int>(block.rows());
            y.blocks[static_cast<std::size_t>(j)].block(offset, offset, n, n) = block;
            offset += n;
        }
    }
    return y;
}

std::string to_dot(const MultiplicityMatrix& e, EdgeStyle style) {
    std::ostringstream out;
    out << "digraph bratteli {\n";
    out << "  rankdir=BT;\n";
    for (int i = 0; i < e.rows(); ++i) {
        out << "  C" << (i + 1) << " [label=\"C_" << (i + 1) << ":M" << e.source.size(i) << "\"];\n";
    }
    for (int j = 0; j < e.cols(); ++j) {
        out << "  A" << (j + 1) << " [label=\"A_" << (j + 1) << ":M" << e.target.size(j) << "\"];\n";
    }
    const char* attrs = style == EdgeStyle::dashed ? " [dir=none, style=dashed]" : " [dir=none]";
    for (int i = 0; i < e.rows(); ++i) {
        for (int j = 0; j < e.cols(); ++j) {
            int copies = e.entries[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int copy = 0; copy < copies; ++copy) {
                out << "  C" << (i + 1) << " -> A" << (j + 1) << attrs << ";\n";
            }
        }
    }
    out << "}\n";
    return out.str();
}

}  // namespace fdqe
