#include "fdqe/cli.hpp"

#include "fdqe/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <sstream>

namespace fdqe::cli {

namespace {

std::string format_entries(const std::vector<std::vector<int>>& entries) {
    std::ostringstream out;
    out << '[';
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i > 0) out << ',';
        out << '[';
        for (std::size_t j = 0; j < entries[i].size(); ++j) {
            if (j > 0) out << ',';
            out << entries[i][j];
        }
        out << ']';
    }
    out << ']';
    return out.str();
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& ex) {
        throw ValidationError("cannot parse JSON in '" + path + "': " + ex.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file '" + path + "'");
    out << text;
}

// out.dot -> out_3.dot
std::string indexed_path(const std::string& path, std::size_t index) {
    auto slash = path.find_last_of('/');
    auto dot = path.find_last_of('.');
    std::string suffix = "_" + std::to_string(index);
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + suffix;
    }
    return path.substr(0, dot) + suffix + path.substr(dot);
}

void print_verdict_text(const Verdict& v, std::ostream& out) {
    out << "algebra: " << v.algebra.to_string() << "\n";
    out << "language: " << to_string(v.language) << "\n";
    out << "QE: " << (v.qe ? "yes" : "no") << "\n";
    out << "candidates: " << v.stats.candidates << "\n";
    out << "matrices: " << v.stats.matrices << "\n";
    if (v.certificate.has_value()) {
        out << "certificate subalgebra: " << v.certificate->sub_dims.to_string() << "\n";
        out << "certificate e1: " << format_entries(v.certificate->e1.entries) << "\n";
        out << "certificate e2: " << format_entries(v.certificate->e2.entries) << "\n";
    }
}

void print_sweep_text(const SweepReport& report, std::ostream& out) {
    std::size_t algebra_width = std::string("algebra").size();
    for (const auto& row : report.rows) {
        algebra_width = std::max(algebra_width, row.algebra.to_string().size());
    }
    out << std::left << std::setw(static_cast<int>(algebra_width) + 2) << "algebra"
        << std::setw(5) << "qe" << std::setw(12) << "candidates" << "matrices\n";
    for (const auto& row : report.rows) {
        out << std::left << std::setw(static_cast<int>(algebra_width) + 2)
            << row.algebra.to_string() << std::setw(5) << (row.qe ? "yes" : "no")
            << std::setw(12) << row.stats.candidates << row.stats.matrices << "\n";
    }
}

struct CommonOptions {
    std::string lang = "star";
    bool json = false;
    bool strict = false;
    std::uint64_t seed = 0;
    int restarts = 32;
    int samples = 50;
};

int finish_numeric(bool converged, bool strict, std::ostream& err) {
    if (!converged) {
        err << "warning: optimizer did not converge; values are upper bounds only\n";
        if (strict) return 2;
    }
    return 0;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"quantifier elimination tester for finite dimensional C*-algebras"};
    app.require_subcommand(1);
    CommonOptions opt;

    std::string check_algebra;
    auto* check = app.add_subcommand("check", "decide QE for one algebra");
    check->add_option("algebra", check_algebra, "block sizes, e.g. 3,2")->required();
    check->add_option("--lang", opt.lang, "language: base|min|sim|star");
    check->add_flag("--json", opt.json, "emit JSON");

    int bound = 0;
    auto* sweep_cmd = app.add_subcommand("sweep", "decide QE for all algebras up to a size bound");
    sweep_cmd->add_option("--bound", bound, "max sum of block sizes")->required();
    sweep_cmd->add_option("--lang", opt.lang, "language: base|min|sim|star");
    sweep_cmd->add_flag("--json", opt.json, "emit newline-delimited JSON");

    std::string emb_source;
    std::string emb_target;
    std::string dot_path;
    auto* embeddings = app.add_subcommand("embeddings", "enumerate admissible embedding matrices");
    embeddings->add_option("source", emb_source, "source block sizes")->required();
    embeddings->add_option("target", emb_target, "target block sizes")->required();
    embeddings->add_option("--lang", opt.lang, "language: base|min|sim|star");
    embeddings->add_flag("--json", opt.json, "emit newline-delimited JSON");
    embeddings->add_option("--dot", dot_path, "write one DOT file per matrix");

    std::string render_path;
    bool dashed = false;
    auto* render = app.add_subcommand("render", "render a matrix JSON file as a DOT diagram");
    render->add_option("matrix", render_path, "path to matrix JSON")->required();
    render->add_option("--dot", dot_path, "output path (default: stdout)");
    render->add_flag("--dashed", dashed, "dashed edge styling");

    std::string pred_algebra;
    std::string pred_op;
    std::string input_path;
    std::string input2_path;
    auto* predicates = app.add_subcommand("predicates", "evaluate rho_min or rho_sim on elements");
    predicates->add_option("--algebra", pred_algebra, "block sizes")->required();
    predicates->add_option("--op", pred_op, "rho-min|rho-sim")->required();
    predicates->add_option("--input", input_path, "element JSON file")->required();
    predicates->add_option("--input2", input2_path, "second element JSON file (rho-sim)");
    predicates->add_flag("--json", opt.json, "emit JSON");
    predicates->add_option("--seed", opt.seed, "optimizer seed");
    predicates->add_option("--restarts", opt.restarts, "optimizer restarts");
    predicates->add_flag("--strict", opt.strict, "non-convergence is fatal (exit 2)");

    std::string pres_source;
    std::string pres_target;
    std::string matrix_path;
    std::string pres_predicate;
    auto* preserve = app.add_subcommand("preserve", "probe predicate preservation of an embedding");
    preserve->add_option("source", pres_source, "source block sizes")->required();
    preserve->add_option("target", pres_target, "target block sizes")->required();
    preserve->add_option("--matrix", matrix_path, "matrix JSON file")->required();
    preserve->add_option("--predicate", pres_predicate, "rho-min|rho-sim")->required();
    preserve->add_option("--samples", opt.samples, "number of sampled inputs");
    preserve->add_option("--seed", opt.seed, "sampling and optimizer seed");
    preserve->add_option("--restarts", opt.restarts, "optimizer restarts");
    preserve->add_flag("--json", opt.json, "emit JSON");
    preserve->add_flag("--strict", opt.strict, "non-convergence is fatal (exit 2)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    OptimizerConfig cfg;
    cfg.seed = opt.seed;
    cfg.restarts = opt.restarts;

    if (check->parsed()) {
        Verdict v = decide_qe(BlockSizes::parse(check_algebra), parse_language(opt.lang));
        if (opt.json) {
            out << to_json(v).dump() << "\n";
        } else {
            print_verdict_text(v, out);
        }
        return 0;
    }

    if (sweep_cmd->parsed()) {
        SweepReport report = sweep(bound, parse_language(opt.lang));
        if (opt.json) {
            for (const auto& row : report.rows) out << to_json(row).dump() << "\n";
        } else {
            print_sweep_text(report, out);
        }
        return 0;
    }

    if (embeddings->parsed()) {
        auto matrices = enumerate_embedding_matrices(BlockSizes::parse(emb_source),
                                                     BlockSizes::parse(emb_target),
                                                     parse_language(opt.lang));
        for (std::size_t i = 0; i < matrices.size(); ++i) {
            if (opt.json) {
                out << to_json(matrices[i]).dump() << "\n";
            } else {
                out << format_entries(matrices[i].entries) << "\n";
            }
            if (!dot_path.empty()) {
                write_text_file(indexed_path(dot_path, i + 1), to_dot(matrices[i]));
            }
        }
        if (!opt.json) out << "count: " << matrices.size() << "\n";
        return 0;
    }

    if (render->parsed()) {
        MultiplicityMatrix e = matrix_from_json(load_json_file(render_path));
        std::string dot = to_dot(e, dashed ? EdgeStyle::dashed : EdgeStyle::solid);
        if (dot_path.empty()) {
            out << dot;
        } else {
            write_text_file(dot_path, dot);
        }
        return 0;
    }

    if (predicates->parsed()) {
        BlockSizes algebra = BlockSizes::parse(pred_algebra);
        PredicateKind predicate = parse_predicate(pred_op);
        BlockSizes file_algebra = algebra;
        Element x = element_from_json(load_json_file(input_path), &file_algebra);
        if (file_algebra != algebra) {
            throw ValidationError("element file algebra " + file_algebra.to_string() +
                                  " does not match --algebra " + algebra.to_string());
        }
        validate_element(x, algebra);
        if (predicate == PredicateKind::rho_min) {
            OptResult r = rho_min(x, cfg);
            if (opt.json) {
                out << nlohmann::json{{"predicate", "rho_min"},
                                      {"value", r.value},
                                      {"converged", r.converged}}
                           .dump()
                    << "\n";
            } else {
                out << "rho_min = " << r.value << "\n";
            }
            return finish_numeric(r.converged, opt.strict, err);
        }
        if (input2_path.empty()) {
            throw ValidationError("rho-sim needs --input2 with the second element");
        }
        Element y = element_from_json(load_json_file(input2_path), &file_algebra);
        if (file_algebra != algebra) {
            throw ValidationError("second element file algebra " + file_algebra.to_string() +
                                  " does not match --algebra " + algebra.to_string());
        }
        validate_element(y, algebra);
        SimBounds bounds = rho_sim_bounds(x, y, cfg);
        if (opt.json) {
            out << nlohmann::json{{"predicate", "rho_sim"},
                                  {"lower", bounds.lower},
                                  {"upper", bounds.upper},
                                  {"converged", bounds.converged}}
                       .dump()
                << "\n";
        } else {
            out << "rho_sim in [" << bounds.lower << ", " << bounds.upper << "]\n";
        }
        return finish_numeric(bounds.converged, opt.strict, err);
    }

    if (preserve->parsed()) {
        BlockSizes source = BlockSizes::parse(pres_source);
        BlockSizes target = BlockSizes::parse(pres_target);
        MultiplicityMatrix e = matrix_from_json(load_json_file(matrix_path));
        if (e.source != source || e.target != target) {
            throw ValidationError("matrix file is " + e.source.to_string() + " -> " +
                                  e.target.to_string() + ", arguments say " + source.to_string() +
                                  " -> " + target.to_string());
        }
        PredicateReport report =
            check_preservation(e, parse_predicate(pres_predicate), opt.samples, cfg);
        if (opt.json) {
            out << to_json(report).dump() << "\n";
        } else {
            out << "embedding: " << format_entries(e.entries) << " (" << source.to_string()
                << " -> " << target.to_string() << ")\n";
            out << "predicate: " << to_string(report.predicate) << "\n";
            out << "samples: " << report.samples << "\n";
            out << "max discrepancy: " << report.max_discrepancy << "\n";
        }
        return finish_numeric(report.converged, opt.strict, err);
    }

    err << "error: no command given\n";
    return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        return dispatch(args, out, err);
    } catch (const ValidationError& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    } catch (const std::exception& ex) {
        err << "error: " << ex.what() << "\n";
        return 1;
    }
}

}  // namespace fdqe::cli
