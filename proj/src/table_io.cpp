#include "ustatboot/table_io.hpp"

#include <charconv>
#include <sstream>

#include <json.hpp>

#include "ustatboot/error.hpp"

namespace ustatboot {

namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

template <class T>
T field(const json& obj, const char* key, T fallback, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if constexpr (std::is_same_v<T, std::size_t> || std::is_same_v<T, std::uint64_t>) {
        if (!it->is_number_unsigned()) {
            fail(ErrorKind::Config, "field '" + where + key + "': expected a nonnegative integer");
        }
    }
    try {
        return it->get<T>();
    } catch (const json::exception& e) {
        fail(ErrorKind::Config, "field '" + where + key + "': " + e.what());
    }
}

// Re-raises errors from a nested section with the section name attached.
template <class F>
void in_section(const std::string& name, F&& body) {
    try {
        body();
    } catch (const Error& e) {
        throw Error(e.kind(), "field '" + name + "': " + e.what());
    }
}

json summary_json(const BoxplotSummary& s) {
    return json{{"mean", s.mean},
                {"median", s.median},
                {"q1", s.q1},
                {"q3", s.q3},
                {"lower_whisker", s.lower_whisker},
                {"upper_whisker", s.upper_whisker},
                {"outliers", s.outliers.size()}};
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

TableConfig parse_table_config(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
        fail(ErrorKind::Config, "malformed JSON at line " + std::to_string(line) + ", column " +
                                    std::to_string(col) + ": " + e.what());
    }
    if (!doc.is_object()) fail(ErrorKind::Config, "configuration must be a JSON object");

    TableConfig cfg;
    if (const auto it = doc.find("cells"); it != doc.end()) {
        if (!it->is_array() || it->empty()) fail(ErrorKind::Config, "field 'cells' must be a nonempty array");
        cfg.cells.clear();
        for (std::size_t i = 0; i < it->size(); ++i) {
            const auto& c = (*it)[i];
            const std::string where = "cells[" + std::to_string(i) + "].";
            if (!c.is_object()) fail(ErrorKind::Config, "entry '" + where + "' must be an object");
            CellSize cell;
            cell.n = field<std::size_t>(c, "n", 0, where);
            cell.l = field<std::size_t>(c, "l", 0, where);
            if (cell.n < 2) fail(ErrorKind::Config, "field '" + where + "n' must be at least 2");
            cfg.cells.push_back(cell);
        }
    }
    cfg.reps = field<std::size_t>(doc, "reps", cfg.reps, "");
    cfg.boot_reps = field<std::size_t>(doc, "boot_reps", cfg.boot_reps, "");
    cfg.ref_reps = field<std::size_t>(doc, "ref_reps", cfg.ref_reps, "");
    cfg.seed = field<std::uint64_t>(doc, "seed", cfg.seed, "");
    in_section("scheme", [&] {
        cfg.scheme = block_kind_from_string(field<std::string>(doc, "scheme", to_string(cfg.scheme), ""));
    });

    if (const auto it = doc.find("process"); it != doc.end()) {
        if (!it->is_object()) fail(ErrorKind::Config, "field 'process' must be an object");
        in_section("process", [&] {
            const auto kind = process_kind_from_string(field<std::string>(*it, "kind", "ar1", "process."));
            const double sd = field<double>(*it, "sd", 1.0, "process.");
            switch (kind) {
                case ProcessKind::Ar1: cfg.process = ProcessSpec::ar1(field<double>(*it, "phi", 0.5, "process."), sd); break;
                case ProcessKind::IidNormal: cfg.process = ProcessSpec::iid_normal(sd); break;
                case ProcessKind::DiscreteMarkov:
                    cfg.process = ProcessSpec::discrete_markov(
                        field<Matrix>(*it, "transition", {}, "process."),
                        field<std::vector<double>>(*it, "init_dist", {}, "process."));
                    break;
            }
            cfg.process.validate();
        });
    }
    if (const auto it = doc.find("kernel"); it != doc.end()) {
        if (!it->is_object()) fail(ErrorKind::Config, "field 'kernel' must be an object");
        cfg.kernel.name = field<std::string>(*it, "name", "variance", "kernel.");
        cfg.kernel.t = field<double>(*it, "t", 1.0, "kernel.");
        in_section("kernel", [&] { (void)make_kernel(cfg.kernel); });
    }
    if (cfg.reps < 1 || cfg.boot_reps < 1 || cfg.ref_reps < 1) {
        fail(ErrorKind::Config, "reps, boot_reps and ref_reps must be positive");
    }
    return cfg;
}

std::string table_csv_header() {
    return "n,l,scheme,mean_d_boot,mean_d_norm,median_d_boot,median_d_norm,q1,q3,outliers_boot,outliers_norm,reps,seed";
}

std::string table_to_csv(const TableResult& table) {
    std::ostringstream out;
    out << table_csv_header() << '\n';
    for (const auto& c : table.cells) {
        out << c.n << ',' << c.l << ',' << to_string(c.scheme) << ',' << format_double(c.boot_summary.mean) << ','
            << format_double(c.norm_summary.mean) << ',' << format_double(c.boot_summary.median) << ','
            << format_double(c.norm_summary.median) << ',' << format_double(c.boot_summary.q1) << ','
            << format_double(c.boot_summary.q3) << ',' << c.boot_summary.outliers.size() << ','
            << c.norm_summary.outliers.size() << ',' << c.reps << ',' << table.config.seed << '\n';
    }
    return out.str();
}

std::string table_to_json(const TableResult& table) {
    const auto& cfg = table.config;
    json rows = json::array();
    for (const auto& c : table.cells) {
        rows.push_back(json{{"n", c.n},
                            {"l", c.l},
                            {"scheme", to_string(c.scheme)},
                            {"reps", c.reps},
                            {"mean_d_boot", c.boot_summary.mean},
                            {"mean_d_norm", c.norm_summary.mean},
                            {"median_d_boot", c.boot_summary.median},
                            {"median_d_norm", c.norm_summary.median},
                            {"q1", c.boot_summary.q1},
                            {"q3", c.boot_summary.q3},
                            {"outliers_boot", c.boot_summary.outliers.size()},
                            {"outliers_norm", c.norm_summary.outliers.size()},
                            {"d_boot", summary_json(c.boot_summary)},
                            {"d_norm", summary_json(c.norm_summary)}});
    }
    json process{{"kind", to_string(cfg.process.kind)}, {"phi", cfg.process.phi}, {"sd", cfg.process.innovation_sd}};
    json doc{{"seed", cfg.seed},
             {"reps", cfg.reps},
             {"boot_reps", cfg.boot_reps},
             {"ref_reps", cfg.ref_reps},
             {"scheme", to_string(cfg.scheme)},
             {"process", process},
             {"kernel", {{"name", cfg.kernel.name}, {"t", cfg.kernel.t}}},
             {"rows", rows}};
    return doc.dump(2) + "\n";
}

}  // namespace ustatboot
