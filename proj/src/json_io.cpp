#include "fdqe/json_io.hpp"

#include <algorithm>
#include <numeric>

namespace fdqe {

using nlohmann::json;

namespace {

std::vector<int> int_list(const json& j, const char* field) {
    if (!j.is_array()) throw ValidationError(std::string(field) + " must be an array of integers");
    std::vector<int> out;
    for (const auto& v : j) {
        if (!v.is_number_integer()) {
            throw ValidationError(std::string(field) + " must contain only integers");
        }
        out.push_back(v.get<int>());
    }
    return out;
}

}  // namespace

json to_json(const BlockSizes& algebra) {
    return json(algebra.sizes());
}

json to_json(const Element& x, const BlockSizes& algebra) {
    validate_element(x, algebra);
    json blocks = json::array();
    for (const auto& b : x.blocks) {
        json rows = json::array();
        for (int r = 0; r < b.rows(); ++r) {
            json row = json::array();
            for (int c = 0; c < b.cols(); ++c) {
                row.push_back(json::array({b(r, c).real(), b(r, c).imag()}));
            }
            rows.push_back(std::move(row));
        }
        blocks.push_back(std::move(rows));
    }
    return json{{"algebra", algebra.sizes()}, {"blocks", std::move(blocks)}};
}

Element element_from_json(const json& j, BlockSizes* algebra_out) {
    if (!j.is_object() || !j.contains("algebra") || !j.contains("blocks")) {
        throw ValidationError("element JSON must contain 'algebra' and 'blocks'");
    }
    std::vector<int> raw_sizes = int_list(j["algebra"], "algebra");
    BlockSizes algebra = BlockSizes::canonical(raw_sizes);
    const json& blocks = j["blocks"];
    if (!blocks.is_array() || static_cast<int>(blocks.size()) != algebra.block_count()) {
        throw ValidationError("element JSON: expected " + std::to_string(algebra.block_count()) +
                              " blocks");
    }
    // accept non-canonical orders: read blocks in canonical order through the
    // stable permutation of the raw size list
    std::vector<std::size_t> order(raw_sizes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return raw_sizes[a] > raw_sizes[b]; });
    Element x;
    for (int i = 0; i < algebra.block_count(); ++i) {
        int n = algebra.size(i);
        std::size_t file_block = order[static_cast<std::size_t>(i)];
        const json& rows = blocks[file_block];
        if (!rows.is_array() || static_cast<int>(rows.size()) != n) {
            throw ValidationError("element JSON block " + std::to_string(file_block + 1) +
                                  ": expected " + std::to_string(n) + " rows");
        }
        Eigen::MatrixXcd m(n, n);
        for (int r = 0; r < n; ++r) {
            const json& row = rows[static_cast<std::size_t>(r)];
            if (!row.is_array() || static_cast<int>(row.size()) != n) {
                throw ValidationError("element JSON block " + std::to_string(file_block + 1) +
                                      " row " + std::to_string(r + 1) + ": expected " +
                                      std::to_string(n) + " entries");
            }
            for (int c = 0; c < n; ++c) {
                const json& entry = row[static_cast<std::size_t>(c)];
                if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                    !entry[1].is_number()) {
                    throw ValidationError("element JSON entries must be [re, im] pairs");
                }
                m(r, c) = std::complex<double>(entry[0].get<double>(), entry[1].get<double>());
            }
        }
        x.blocks.push_back(std::move(m));
    }
    if (algebra_out != nullptr) *algebra_out = algebra;
    return x;
}

json to_json(const MultiplicityMatrix& e) {
    return json{{"source", e.source.sizes()}, {"target", e.target.sizes()}, {"entries", e.entries}};
}

MultiplicityMatrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("source") || !j.contains("target") || !j.contains("entries")) {
        throw ValidationError("matrix JSON must contain 'source', 'target' and 'entries'");
    }
    std::vector<int> source = int_list(j["source"], "source");
    std::vector<int> target = int_list(j["target"], "target");
    const json& rows = j["entries"];
    if (!rows.is_array()) throw ValidationError("entries must be an array of integer rows");
    std::vector<std::vector<int>> entries;
    for (const auto& row : rows) {
        entries.push_back(int_list(row, "entries"));
    }
    return MultiplicityMatrix::from_raw(source, target, std::move(entries));
}

json to_json(const Verdict& v) {
    json out{{"algebra", v.algebra.sizes()},
             {"language", std::string(to_string(v.language))},
             {"qe", v.qe},
             {"stats", json{{"candidates", v.stats.candidates}, {"matrices", v.stats.matrices}}}};
    if (v.certificate.has_value()) {
        out["certificate"] = json{{"sub_dims", v.certificate->sub_dims.sizes()},
                                  {"e1", v.certificate->e1.entries},
                                  {"e2", v.certificate->e2.entries}};
    }
    return out;
}

json to_json(const PredicateReport& report) {
    json out{{"embedding", to_json(report.embedding)},
             {"predicate", std::string(to_string(report.predicate))},
             {"samples", report.samples},
             {"max_discrepancy", report.max_discrepancy},
             {"worst_input", to_json(report.worst_input, report.embedding.source)},
             {"seed", report.seed},
             {"converged", report.converged}};
    if (report.worst_input_second.has_value()) {
        out["worst_input_second"] = to_json(*report.worst_input_second, report.embedding.source);
    }
    return out;
}

}  // namespace fdqe
