#include "inspde/report.hpp"

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "inspde/errors.hpp"

namespace inspde {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string report_csv(const ExperimentReport& report) {
    std::ostringstream os;
    os << "# config_hash=" << report.meta.config_hash << "\n";
    os << "index_kind,index_value,error_value,stderr,argmax_t,paths,seed,config_hash\n";
    for (const auto& row : report.rows) {
        std::ostringstream line;
        if (row.failed) {
            line << report.meta.index_kind << ',' << format_double(row.index_value)
                 << ",nan,nan,nan,0," << report.meta.seed << ',' << report.meta.config_hash;
        } else {
            line << report.meta.index_kind << ',' << format_double(row.index_value) << ','
                 << format_double(row.estimate.value) << ',' << format_double(row.estimate.stderr_)
                 << ',' << format_double(row.estimate.argmax_t) << ',' << row.estimate.paths << ','
                 << report.meta.seed << ',' << report.meta.config_hash;
        }
        os << line.str() << "\n";
    }
    return os.str();
}

std::string report_json(const ExperimentReport& report) {
    nlohmann::ordered_json j;
    j["metadata"] = {
        {"index_kind", report.meta.index_kind},
        {"model_label", report.meta.model_label},
        {"seed", report.meta.seed},
        {"dt", report.meta.dt},
        {"space_dim", report.meta.space_dim},
        {"noise_dim", report.meta.noise_dim},
        {"p", report.meta.p},
        {"T", report.meta.T},
        {"paths", report.meta.paths},
        {"config_hash", report.meta.config_hash},
    };
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["index_value"] = row.index_value;
        if (row.failed) {
            r["failed"] = true;
            r["message"] = row.message;
        } else {
            r["error_value"] = row.estimate.value;
            r["stderr"] = row.estimate.stderr_;
            r["argmax_t"] = row.estimate.argmax_t;
            r["paths"] = row.estimate.paths;
        }
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

std::string report_plot(const ExperimentReport& report) {
    std::ostringstream os;
    os << "# config_hash=" << report.meta.config_hash << "\n";
    os << "# " << report.meta.index_kind << " error stderr\n";
    for (const auto& row : report.rows) {
        if (row.failed) continue;
        os << format_double(row.index_value) << ' ' << format_double(row.estimate.value) << ' '
           << format_double(row.estimate.stderr_) << "\n";
    }
    return os.str();
}

std::string trajectory_csv(const Trajectory& traj, const std::string& hash) {
    std::ostringstream os;
    os << "# config_hash=" << hash << "\n";
    os << "t";
    for (int k = 1; k <= traj.dim(); ++k) os << ",mode_" << k;
    os << ",is_post_jump\n";
    for (int i = 0; i < traj.size(); ++i) {
        os << format_double(traj.time_of(i));
        const HVector& v = traj.at_index(i);
        for (int k = 0; k < traj.dim(); ++k) os << ',' << format_double(v[static_cast<std::size_t>(k)]);
        os << ",0\n";
        if (const HVector* right = traj.post_jump_at(i)) {
            os << format_double(traj.time_of(i));
            for (int k = 0; k < traj.dim(); ++k)
                os << ',' << format_double((*right)[static_cast<std::size_t>(k)]);
            os << ",1\n";
        }
    }
    return os.str();
}

std::string gap_table_csv(const GeneratorFamily& fam, std::span<const double> indices,
                          double lambda, std::span<const double> t_grid, const HVector& v,
                          const std::string& hash) {
    std::ostringstream os;
    os << "# config_hash=" << hash << "\n";
    os << "index,lambda_or_t,gap\n";
    for (double idx : indices) {
        os << format_double(idx) << ',' << format_double(lambda) << ','
           << format_double(resolvent_gap(fam, idx, lambda, v)) << "\n";
        const SpectralModel mem = fam.member(idx);
        for (double t : t_grid) {
            const double g = distance(semigroup_apply(mem, t, v),
                                      semigroup_apply(fam.base(), t, v));
            os << format_double(idx) << ',' << format_double(t) << ',' << format_double(g)
               << "\n";
        }
    }
    return os.str();
}

std::string probe_json(const ProbeReport& report, const std::string& hash) {
    nlohmann::ordered_json j;
    j["config_hash"] = hash;
    j["samples"] = report.samples;
    j["seed"] = report.seed;
    j["any_violation"] = report.any_violation;
    nlohmann::ordered_json entries = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        entries.push_back({{"name", e.name},
                           {"max_ratio", e.max_ratio},
                           {"declared", e.declared},
                           {"violated", e.violated}});
    }
    j["entries"] = std::move(entries);
    return j.dump(2) + "\n";
}

namespace {

std::string embedded_hash(const std::string& content) {
    // Look for `config_hash=<hex>` or `"config_hash": "<hex>"`.
    const std::string needle = "config_hash";
    const std::size_t pos = content.find(needle);
    if (pos == std::string::npos) return {};
    std::size_t i = pos + needle.size();
    while (i < content.size() && (content[i] == '=' || content[i] == ':' || content[i] == ' ' ||
                                  content[i] == '"'))
        ++i;
    std::string hex;
    while (i < content.size() && std::isxdigit(static_cast<unsigned char>(content[i])))
        hex.push_back(content[i++]);
    return hex;
}

} // namespace

void write_guarded(const std::string& path, const std::string& content,
                   const std::string& hash, bool force) {
    namespace fs = std::filesystem;
    const fs::path p(path);
    if (fs::exists(p) && !force) {
        std::ifstream in(p);
        std::stringstream buf;
        buf << in.rdbuf();
        const std::string existing = embedded_hash(buf.str());
        if (!existing.empty() && existing != hash)
            throw IoError("refusing to overwrite " + path + ": existing config_hash " + existing +
                          " differs from " + hash + " (use --force)");
    }
    if (p.has_parent_path()) fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw IoError("write failed: " + path);
}

} // namespace inspde
