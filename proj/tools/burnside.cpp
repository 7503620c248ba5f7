// Command-line front end: rank tables, verification sweeps, and exports of
// bases, matrices, kernels, and subgroup lattice graphs.

#include <CLI11.hpp>

#include <atomic>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "burnside/config.hpp"
#include "burnside/family.hpp"
#include "burnside/intlat.hpp"
#include "burnside/io.hpp"
#include "burnside/report.hpp"
#include "burnside/repq.hpp"
#include "burnside/ring.hpp"
#include "burnside/verify.hpp"

namespace {

using burnside::GroupFamily;
using burnside::Int;
using burnside::Limits;
using burnside::intlat::IntMatrix;
using burnside::report::Report;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitInvalidInput = 2;
constexpr int kExitIoError = 3;

Limits env_limits() {
    Limits lim;
    if (const char* raw = std::getenv("BURNSIDE_MAX_AMBIENT_DIM")) {
        int v = std::atoi(raw);
        if (v < 1) throw burnside::domain_error("BURNSIDE_MAX_AMBIENT_DIM must be positive");
        lim.max_ambient_dim = v;
    }
    return lim;
}

// "p=2,3;n=1..3;k=1..3" -> ordered value lists per key
std::map<std::string, std::vector<int>> parse_sweep(const std::string& text) {
    std::map<std::string, std::vector<int>> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t seg_end = text.find(';', pos);
        if (seg_end == std::string::npos) seg_end = text.size();
        std::string seg = text.substr(pos, seg_end - pos);
        pos = seg_end + 1;
        if (seg.empty()) continue;
        std::size_t eq = seg.find('=');
        if (eq == std::string::npos)
            throw burnside::domain_error("sweep: expected key=values in '" + seg + "'");
        std::string key = seg.substr(0, eq);
        std::vector<int>& vals = out[key];
        std::size_t vpos = eq + 1;
        while (vpos <= seg.size()) {
            std::size_t vend = seg.find(',', vpos);
            if (vend == std::string::npos) vend = seg.size();
            std::string item = seg.substr(vpos, vend - vpos);
            vpos = vend + 1;
            if (item.empty()) throw burnside::domain_error("sweep: empty value in '" + seg + "'");
            std::size_t dots = item.find("..");
            try {
                if (dots == std::string::npos) {
                    vals.push_back(std::stoi(item));
                } else {
                    int lo = std::stoi(item.substr(0, dots));
                    int hi = std::stoi(item.substr(dots + 2));
                    if (hi < lo) throw burnside::domain_error("sweep: empty range " + item);
                    for (int v = lo; v <= hi; ++v) vals.push_back(v);
                }
            } catch (const std::invalid_argument&) {
                throw burnside::domain_error("sweep: bad number in '" + item + "'");
            } catch (const std::out_of_range&) {
                throw burnside::domain_error("sweep: number out of range in '" + item + "'");
            }
            if (vend == seg.size()) break;
        }
    }
    return out;
}

// Evaluate independent tasks with a bounded pool, results in input order.
std::vector<Report> run_ordered(int jobs, const std::vector<std::function<Report()>>& tasks) {
    std::vector<Report> results(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                results[i] = tasks[i]();
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    int width = std::max(1, std::min<int>(jobs, static_cast<int>(tasks.size())));
    if (width == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(width));
        for (int i = 0; i < width; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

int emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return kExitPass;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "error: cannot open output file '" << path << "'\n";
        return kExitIoError;
    }
    out << text;
    out.flush();
    if (!out) {
        std::cerr << "error: write failed on '" << path << "'\n";
        return kExitIoError;
    }
    return kExitPass;
}

std::string reports_to_json(const std::vector<Report>& reports) {
    if (reports.size() == 1) return burnside::report::to_json(reports[0]);
    std::string out = "[\n";
    for (std::size_t i = 0; i < reports.size(); ++i) {
        std::string one = burnside::report::to_json(reports[i]);
        if (!one.empty() && one.back() == '\n') one.pop_back();
        out += one;
        out += i + 1 < reports.size() ? ",\n" : "\n";
    }
    out += "]\n";
    return out;
}

std::string reports_to_text(const std::vector<Report>& reports) {
    std::string out;
    for (const auto& r : reports) out += burnside::report::to_text(r);
    return out;
}

std::string reports_to_csv(const std::vector<Report>& reports) {
    std::string out =
        burnside::io::csv_line({"instance", "check", "computed", "expected", "method", "pass"});
    for (const auto& r : reports)
        for (const auto& c : r.checks)
            out += burnside::io::csv_line(
                {r.instance, c.name, c.computed, c.expected, c.method, c.pass ? "true" : "false"});
    return out;
}

struct CommonOpts {
    int p = 2;
    int n = 2;
    int k = 2;
    std::string format;
    std::string output;
    std::string sweep;
    int jobs = 1;
};

std::vector<int> sweep_values(const std::map<std::string, std::vector<int>>& sweep,
                              const std::string& key, int fallback) {
    auto it = sweep.find(key);
    if (it == sweep.end() || it->second.empty()) return {fallback};
    return it->second;
}

int cmd_ranks(const CommonOpts& opt) {
    Limits lim = env_limits();
    std::vector<std::function<Report()>> tasks;
    auto sweep = parse_sweep(opt.sweep);
    for (int p : sweep_values(sweep, "p", opt.p))
        for (int n : sweep_values(sweep, "n", opt.n))
            tasks.push_back([p, n, lim] { return burnside::verify::rank_report(p, n, lim); });
    auto reports = run_ordered(opt.jobs, tasks);

    std::string text;
    if (opt.format == "json") text = reports_to_json(reports);
    else if (opt.format == "csv") text = reports_to_csv(reports);
    else text = reports_to_text(reports);
    int rc = emit(text, opt.output);
    if (rc != kExitPass) return rc;
    for (const auto& r : reports)
        if (!r.pass()) return kExitCheckFailed;
    return kExitPass;
}

int cmd_verify(const CommonOpts& opt, const std::string& target) {
    Limits lim = env_limits();
    std::vector<std::function<Report()>> tasks;
    auto sweep = parse_sweep(opt.sweep);
    bool want_elementary = target == "ses" || target == "conjecture" || target == "all";
    bool want_cyclic = target == "cyclic-iso" || target == "all";
    if (want_elementary)
        for (int p : sweep_values(sweep, "p", opt.p))
            for (int n : sweep_values(sweep, "n", opt.n)) {
                if (target == "ses" || target == "all")
                    tasks.push_back(
                        [p, n, lim] { return burnside::verify::verify_ses(p, n, lim); });
                if (target == "conjecture" || target == "all")
                    tasks.push_back(
                        [p, n, lim] { return burnside::verify::verify_conjecture(p, n, lim); });
            }
    if (want_cyclic)
        for (int p : sweep_values(sweep, "p", opt.p))
            for (int k : sweep_values(sweep, "k", opt.k))
                tasks.push_back(
                    [p, k, lim] { return burnside::verify::verify_cyclic(p, k, lim); });

    auto reports = run_ordered(opt.jobs, tasks);
    std::string text =
        opt.format == "json" ? reports_to_json(reports) : reports_to_text(reports);
    int rc = emit(text, opt.output);
    if (rc != kExitPass) return rc;
    for (const auto& r : reports)
        if (!r.pass()) return kExitCheckFailed;
    return kExitPass;
}

std::string basis_csv(const GroupFamily& fam, bool relative, const Limits& lim) {
    namespace ring = burnside::ring;
    namespace io = burnside::io;
    if (fam.kind() == burnside::FamilyKind::cyclic_cross_zp) {
        std::string out = io::csv_line({"index", "nu", "rho"});
        auto pairs = ring::twist_pairs(fam);
        for (std::size_t i = 0; i < pairs.size(); ++i)
            out += io::csv_line({std::to_string(i + 1), std::to_string(pairs[i].nu),
                                 std::to_string(pairs[i].rho)});
        return out;
    }
    std::string out = io::csv_line({"index", "full_index", "dim", "generators"});
    const auto& full = ring::full_subspace_basis(fam, lim);
    if (!relative) {
        for (std::size_t i = 0; i < full.size(); ++i)
            out += io::csv_line({std::to_string(i + 1), std::to_string(i + 1),
                                 std::to_string(full[i].dim()),
                                 io::generators_field(full[i])});
        return out;
    }
    auto idx = ring::relative_indexing(fam);
    for (std::size_t i = 0; i < idx.to_full.size(); ++i)
        out += io::csv_line({std::to_string(i + 1), std::to_string(idx.to_full[i] + 1),
                             std::to_string(full[idx.to_full[i]].dim()),
                             io::generators_field(full[idx.to_full[i]])});
    return out;
}

std::string basis_json(const GroupFamily& fam, bool relative, const Limits& lim) {
    namespace ring = burnside::ring;
    nlohmann::ordered_json j;
    j["family"] = fam.describe();
    j["labels"] = nlohmann::ordered_json::array();
    if (fam.kind() == burnside::FamilyKind::cyclic_cross_zp) {
        auto pairs = ring::twist_pairs(fam);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            nlohmann::ordered_json l;
            l["index"] = i + 1;
            l["nu"] = pairs[i].nu;
            l["rho"] = pairs[i].rho;
            j["labels"].push_back(std::move(l));
        }
        return j.dump(2) + "\n";
    }
    const auto& full = ring::full_subspace_basis(fam, lim);
    auto idx = ring::relative_indexing(fam);
    auto add_label = [&](std::size_t pos, std::size_t full_pos) {
        nlohmann::ordered_json l;
        l["index"] = pos + 1;
        l["full_index"] = full_pos + 1;
        l["dim"] = full[full_pos].dim();
        l["generators"] = burnside::io::generators_field(full[full_pos]);
        j["labels"].push_back(std::move(l));
    };
    if (relative)
        for (std::size_t i = 0; i < idx.to_full.size(); ++i) add_label(i, idx.to_full[i]);
    else
        for (std::size_t i = 0; i < full.size(); ++i) add_label(i, i);
    return j.dump(2) + "\n";
}

int cmd_export(const CommonOpts& opt, const std::string& artifact,
               const std::string& family, bool relative, const std::string& highlight) {
    Limits lim = env_limits();
    GroupFamily fam = family == "cyclic"
                          ? GroupFamily::cyclic_cross_zp(opt.p, opt.k, lim)
                          : GroupFamily::elementary_abelian(opt.p, opt.n, lim);
    namespace io = burnside::io;
    namespace repq = burnside::repq;
    namespace intlat = burnside::intlat;

    std::string format = opt.format;
    if (format.empty()) format = artifact == "lattice-dot" ? "dot" : "csv";
    if (artifact == "lattice-dot" && format != "dot")
        throw burnside::domain_error("lattice-dot exports only as dot");
    if (artifact != "lattice-dot" && format == "dot")
        throw burnside::domain_error("dot format is only for lattice-dot");

    std::string text;
    if (artifact == "basis") {
        text = format == "json" ? basis_json(fam, relative, lim)
                                : basis_csv(fam, relative, lim);
    } else if (artifact == "lattice-dot") {
        std::vector<std::size_t> marks;
        if (!highlight.empty()) marks = io::highlight_support(fam, highlight);
        text = io::write_lattice_dot(fam, marks);
    } else {
        IntMatrix m;
        if (artifact == "matrix-f") m = repq::f_matrix(fam);
        else if (artifact == "matrix-fprime") m = repq::f_prime_matrix(fam);
        else if (artifact == "matrix-t") m = burnside::ring::t_matrix(fam);
        else if (artifact == "kernel")
            m = intlat::kernel_lattice(relative ? repq::f_prime_matrix(fam)
                                                : repq::f_matrix(fam))
                    .basis();
        else
            throw burnside::domain_error("unknown artifact " + artifact);
        text = format == "json" ? io::write_matrix_json(m) : io::write_matrix_csv(m);
    }
    return emit(text, opt.output);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Burnside ring and rational representation computations "
                 "for Z_p^n x Z_p and Z_{p^k} x Z_p"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::string target, artifact, family = "elementary", highlight;
    bool relative = false;

    auto add_common = [&](CLI::App* sub, const std::vector<std::string>& formats) {
        sub->add_option("--p", opt.p, "prime");
        sub->add_option("--n", opt.n, "elementary-abelian parameter (base group Z_p^n)");
        sub->add_option("--k", opt.k, "cyclic parameter (first factor Z_{p^k})");
        sub->add_option("--format", opt.format, "output format")
            ->check(CLI::IsMember(formats));
        sub->add_option("--output", opt.output, "write to file instead of stdout");
        sub->add_option("--jobs", opt.jobs, "sweep parallelism")->check(CLI::Range(1, 64));
        return sub;
    };

    CLI::App* ranks = app.add_subcommand("ranks", "rank formulas vs enumeration");
    add_common(ranks, {"text", "csv", "json"});
    ranks->add_option("--family", family, "group family")
        ->check(CLI::IsMember({"elementary"}));
    ranks->add_option("--sweep", opt.sweep, "parameter grid, e.g. p=2,3;n=1..3");

    CLI::App* verify = app.add_subcommand("verify", "structural verification");
    add_common(verify, {"text", "json"});
    verify->add_option("--target", target, "what to verify")
        ->required()
        ->check(CLI::IsMember({"ses", "conjecture", "cyclic-iso", "all"}));
    verify->add_option("--sweep", opt.sweep, "parameter grid, e.g. p=2,3;n=1..3;k=1..3");

    CLI::App* exp = app.add_subcommand("export", "export bases, matrices, graphs");
    add_common(exp, {"csv", "json", "dot"});
    exp->add_option("--artifact", artifact, "what to export")
        ->required()
        ->check(CLI::IsMember(
            {"basis", "matrix-f", "matrix-fprime", "matrix-t", "kernel", "lattice-dot"}));
    exp->add_option("--family", family, "group family")
        ->check(CLI::IsMember({"elementary", "cyclic"}));
    exp->add_flag("--relative", relative, "restrict to the relative module");
    exp->add_option("--highlight", highlight,
                    "mark boundary-image support, e.g. E_1 or E_4-E_3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    try {
        if (ranks->parsed()) return cmd_ranks(opt);
        if (verify->parsed()) return cmd_verify(opt, target);
        return cmd_export(opt, artifact, family, relative, highlight);
    } catch (const burnside::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const burnside::resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}
