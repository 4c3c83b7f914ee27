#ifndef REFLBOUND_TOOLS_CLI_HPP
#define REFLBOUND_TOOLS_CLI_HPP

// reflbound command line: orbifold | spectrum | chain | scan | verify-hatcher.
//
// Exit codes: 0 success and all checks pass, 1 checks ran and failed,
// 2 usage or validation error, 3 computational or I/O failure.
// Data goes to stdout (or --out); diagnostics and progress go to stderr.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "reflbound/covolume.hpp"
#include "reflbound/inequality.hpp"
#include "reflbound/laplacian.hpp"
#include "reflbound/mesh.hpp"
#include "reflbound/orbifold.hpp"
#include "reflbound/report_io.hpp"

namespace reflbound::cli {

enum ExitCode : int { ok = 0, check_failed = 1, usage = 2, failure = 3 };

inline constexpr const char* checkpoint_env = "REFLBOUND_CHECKPOINT_DIR";

struct RunConfig {
    std::string subcommand;
    io::Format format = io::Format::table;
    std::string out_path;

    // orbifold
    std::string symbol;
    bool all_signatures = false;
    int max_order = 50;

    // spectrum
    int depth = 5;
    int k = 5;
    double eig_tol = 1e-10;
    int max_iterations = 1000;
    double conf_vol = 4.0 * std::numbers::pi;
    double slack_tol = 0.05 * 8.0 * std::numbers::pi;
    std::string mesh_in;
    std::string mesh_out;

    // chain
    double lambda_min = spectral::congruence_lambda1_floor<double>;
    double vc_sphere3 = spectral::sphere3_volume<double>;
    int index_bound = spectral::reflection_index_bound;

    // scan / verify-hatcher
    std::int64_t min_disc = -10'000;
    std::int64_t max_disc = -3;
    double cutoff = arith::default_cutoff;
    double l_tol = 1e-8;
    unsigned parallel = 1;
    std::int64_t chunk = 5'000;
};

namespace detail {

/// Raised when a sink cannot be written; maps to exit 3.
struct io_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback)
        : out_(&fallback), path_(path)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) {
                throw io_failure("cannot open output file " + path);
            }
            out_ = &file_;
        }
    }
    std::ostream& stream() { return *out_; }
    void finish()
    {
        out_->flush();
        if (!*out_) {
            throw io_failure("write failed" + (path_.empty() ? std::string() : " for " + path_));
        }
    }

private:
    std::ofstream file_;
    std::ostream* out_;
    std::string path_;
};

inline std::string checkpoint_tag(const RunConfig& c)
{
    std::ostringstream tag;
    tag << "min=" << c.min_disc << " max=" << c.max_disc << " cutoff=" << io::g12(c.cutoff)
        << " tol=" << io::g12(c.l_tol);
    return tag.str();
}

/// Scan in |d| chunks. With a checkpoint directory, completed chunks are
/// appended to scan_partial.csv and scan.checkpoint records the last
/// completed |d|; a rerun with the same range resumes after it.
inline arith::ScanReport chunked_scan(const RunConfig& c, std::ostream& err)
{
    arith::ScanConfig base;
    base.d_min = c.min_disc;
    base.d_max = c.max_disc;
    base.cutoff = c.cutoff;
    base.tol = c.l_tol;
    base.threads = c.parallel;

    arith::ScanReport report;
    report.cutoff = c.cutoff;
    report.crude_bound = arith::crude_cutoff();
    report.n_scanned = c.max_disc - c.min_disc + 1;

    std::optional<std::filesystem::path> dir;
    if (const char* env = std::getenv(checkpoint_env); env != nullptr && *env != '\0') {
        dir = env;
        std::filesystem::create_directories(*dir);
    }

    std::int64_t next_abs = -c.max_disc;
    const std::string tag = checkpoint_tag(c);
    if (dir) {
        std::ifstream ck(*dir / "scan.checkpoint");
        std::string saved_tag;
        std::int64_t last_abs = 0;
        if (std::getline(ck, saved_tag) && saved_tag == tag && (ck >> last_abs)) {
            std::ifstream partial(*dir / "scan_partial.csv");
            report.records = io::read_scan_csv(partial);
            next_abs = last_abs + 1;
            err << "resuming scan after |d| = " << last_abs << " (" << report.records.size()
                << " records restored)\n";
        } else {
            std::ofstream partial(*dir / "scan_partial.csv", std::ios::trunc);
            partial << io::scan_csv_header << '\n';
        }
    }

    const std::int64_t last = -c.min_disc;
    while (next_abs <= last) {
        const std::int64_t chunk_end = std::min(last, next_abs + c.chunk - 1);
        arith::ScanConfig part = base;
        part.d_max = -next_abs;
        part.d_min = -chunk_end;
        arith::ScanReport piece = arith::scan(part);
        if (dir) {
            std::ofstream partial(*dir / "scan_partial.csv", std::ios::app);
            for (const auto& r : piece.records) {
                io::write_scan_csv_row(partial, r);
            }
            partial.close();
            std::ofstream ck(*dir / "scan.checkpoint", std::ios::trunc);
            ck << tag << '\n' << chunk_end << '\n';
        }
        report.records.insert(report.records.end(), piece.records.begin(), piece.records.end());
        err << "scanned |d| <= " << chunk_end << " of " << last << '\n';
        next_abs = chunk_end + 1;
    }
    arith::tally(report);
    return report;
}

inline int run_orbifold(const RunConfig& c, std::ostream& out)
{
    std::vector<io::OrbifoldRow> rows;
    if (c.all_signatures) {
        for (const auto& sig : orbifold::enumerate_signatures(c.max_order)) {
            rows.push_back(io::describe(sig));
        }
    } else {
        rows.push_back(io::describe(orbifold::parse_signature(c.symbol)));
    }
    Sink sink(c.out_path, out);
    io::write_orbifolds(sink.stream(), rows, c.format);
    sink.finish();
    const bool all_ok = std::all_of(rows.begin(), rows.end(),
                                    [](const io::OrbifoldRow& r) { return r.verified; });
    return all_ok ? ok : check_failed;
}

inline int run_spectrum(const RunConfig& c, std::ostream& out)
{
    spectral::EigenOptions options;
    options.tol = c.eig_tol;
    options.max_iterations = c.max_iterations;

    spectral::TriangleMesh mesh;
    if (!c.mesh_in.empty()) {
        std::ifstream in(c.mesh_in);
        if (!in) {
            throw detail::io_failure("cannot read mesh " + c.mesh_in);
        }
        mesh = spectral::read_mesh(in);
    } else {
        mesh = spectral::build_icosphere(c.depth);
    }
    if (!c.mesh_out.empty()) {
        std::ofstream mo(c.mesh_out);
        spectral::write_mesh(mo, mesh);
        if (!mo) {
            throw detail::io_failure("cannot write mesh " + c.mesh_out);
        }
    }

    spectral::SaturationCheck s;
    s.depth = c.mesh_in.empty() ? c.depth : -1;
    s.n_vertices = mesh.vertices.size();
    s.tol = c.slack_tol;
    s.spectrum = spectral::laplace_spectrum(mesh, c.k, options);
    s.check = spectral::li_yau_slack(s.spectrum.lambda1, spectral::mesh_area(mesh), 2, c.conf_vol);
    s.within_tolerance = s.check.slack >= -c.slack_tol;

    Sink sink(c.out_path, out);
    io::write_spectrum(sink.stream(), s, c.format);
    sink.finish();
    return s.within_tolerance ? ok : check_failed;
}

inline int run_chain(const RunConfig& c, std::ostream& out)
{
    const auto chain = spectral::volume_bound_chain(c.lambda_min, c.vc_sphere3, c.index_bound);
    Sink sink(c.out_path, out);
    io::write_chain(sink.stream(), chain, c.format);
    sink.finish();
    return ok;
}

inline int run_scan(const RunConfig& c, std::ostream& out, std::ostream& err)
{
    const arith::ScanReport report = chunked_scan(c, err);
    Sink sink(c.out_path, out);
    io::write_scan(sink.stream(), report, c.format);
    sink.finish();
    return ok;
}

inline int run_hatcher(const RunConfig& c, std::ostream& out)
{
    arith::ScanConfig config;
    config.d_min = -84;
    config.d_max = -3;
    config.cutoff = c.cutoff;
    config.tol = c.l_tol;
    config.threads = c.parallel;
    const arith::ScanReport report = arith::scan(config);
    const bool passed = arith::hatcher_check(report);

    Sink sink(c.out_path, out);
    auto& o = sink.stream();
    if (c.format == io::Format::json) {
        io::Json j;
        j["cutoff"] = io::round12(c.cutoff);
        j["passed"] = passed;
        io::Json rows = io::Json::array();
        for (const auto& r : report.records) {
            if (std::find(arith::hatcher_discriminants.begin(), arith::hatcher_discriminants.end(),
                          r.d) != arith::hatcher_discriminants.end()) {
                rows.push_back(io::to_json(r));
            }
        }
        j["records"] = std::move(rows);
        o << j.dump(2) << '\n';
    } else if (c.format == io::Format::csv) {
        io::write_scan_csv(o, report);
    } else {
        for (std::int64_t d : arith::hatcher_discriminants) {
            const auto it = std::find_if(report.records.begin(), report.records.end(),
                                         [&](const arith::FieldRecord& r) { return r.d == d; });
            o << "d = " << d;
            if (it == report.records.end()) {
                o << "  missing\n";
                continue;
            }
            o << "  h = " << it->h << "  borel_lower = " << io::g12(it->borel_lower)
              << (it->passes_exact ? "  pass" : "  FAIL") << '\n';
        }
        o << "cutoff " << io::g12(c.cutoff) << ": "
          << (passed ? "all 16 discriminants pass" : "hatcher check FAILED") << '\n';
    }
    sink.finish();
    return passed ? ok : check_failed;
}

} // namespace detail

/// Parses argv and runs one subcommand. Never throws.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig c;
    CLI::App app{"Finiteness bounds for arithmetic maximal reflection groups in dimension 3"};
    app.require_subcommand(1);

    const std::map<std::string, io::Format> formats{
        {"csv", io::Format::csv}, {"json", io::Format::json}, {"table", io::Format::table}};
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", c.out_path, "Write the report here instead of stdout");
        sub->add_option("--format", c.format, "Output format: csv, json or table")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case))
            ->capture_default_str();
    };

    auto* orb = app.add_subcommand("orbifold", "Group order and reflection supergroup of a spherical 2-orbifold");
    orb->add_option("--symbol", c.symbol, "Conway symbol, e.g. *235, 235, 3*2, 3x, (12)(12)");
    orb->add_flag("--all", c.all_signatures, "Tabulate every signature with orders <= --max-order");
    orb->add_option("--max-order", c.max_order, "Largest p, q, r, n, m for --all")
        ->check(CLI::Range(2, 10'000))
        ->capture_default_str();
    add_common(orb);

    auto* spec = app.add_subcommand("spectrum", "Low Laplace spectrum of an icosphere and the saturation check");
    spec->add_option("--depth", c.depth, "Icosphere subdivision depth")
        ->check(CLI::Range(0, spectral::max_icosphere_depth))
        ->capture_default_str();
    spec->add_option("--k", c.k, "Number of eigenvalues, counting the constant mode")
        ->check(CLI::Range(1, 1000))
        ->capture_default_str();
    spec->add_option("--tol", c.eig_tol, "Eigensolver residual tolerance")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    spec->add_option("--max-iter", c.max_iterations, "Eigensolver iteration budget")
        ->check(CLI::Range(1, 1'000'000))
        ->capture_default_str();
    spec->add_option("--conf-vol", c.conf_vol, "Conformal volume used in the inequality (default 4 pi)")
        ->check(CLI::PositiveNumber);
    spec->add_option("--slack-tol", c.slack_tol, "Accepted negative slack (default 0.05 * 8 pi)")
        ->check(CLI::NonNegativeNumber);
    spec->add_option("--mesh", c.mesh_in, "Read the surface from a v/f text file instead of an icosphere")
        ->check(CLI::ExistingFile);
    spec->add_option("--export-mesh", c.mesh_out, "Also write the mesh in v/f text format");
    add_common(spec);

    auto* chain = app.add_subcommand("chain", "Volume bound from lambda1 >= lambda_min and Vc <= index * Vol(S^3)");
    chain->add_option("--lambda-min", c.lambda_min, "Spectral gap lower bound (default 3/4)")
        ->check(CLI::PositiveNumber);
    chain->add_option("--vc-sphere3", c.vc_sphere3, "Conformal volume of S^3 (default 2 pi^2)")
        ->check(CLI::PositiveNumber);
    chain->add_option("--index-bound", c.index_bound, "Index bound in a finite reflection group")
        ->check(CLI::Range(1, 1'000'000))
        ->capture_default_str();
    add_common(chain);

    const auto add_scan_options = [&](CLI::App* sub, bool with_range) {
        if (with_range) {
            sub->add_option("--min-disc", c.min_disc, "Most negative discriminant to scan")
                ->capture_default_str();
            sub->add_option("--max-disc", c.max_disc, "Least negative discriminant to scan")
                ->capture_default_str();
        }
        sub->add_option("--cutoff", c.cutoff, "Covolume cutoff (default 64 pi^2)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--tol", c.l_tol, "Absolute tolerance for L(2, chi_d)")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        sub->add_option("--parallel", c.parallel, "Worker threads (0 = all cores)")
            ->capture_default_str();
        add_common(sub);
    };
    auto* scan = app.add_subcommand("scan", "Class numbers, L(2, chi), Borel bounds over a discriminant range");
    add_scan_options(scan, true);
    scan->footer(std::string("Set ") + checkpoint_env +
                 " to a directory to checkpoint progress and resume interrupted scans.");
    auto* hatcher = app.add_subcommand("verify-hatcher", "Check the 16 reflective Bianchi discriminants pass the filter");
    add_scan_options(hatcher, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return ok;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return usage;
    }

    try {
        if (orb->parsed()) {
            // --symbol "" is the trivial group, so test presence, not emptiness.
            if (!c.all_signatures && orb->count("--symbol") == 0) {
                err << "orbifold: give --symbol or --all\n";
                return usage;
            }
            return detail::run_orbifold(c, out);
        }
        if (spec->parsed()) {
            return detail::run_spectrum(c, out);
        }
        if (chain->parsed()) {
            return detail::run_chain(c, out);
        }
        if (scan->parsed()) {
            if (c.max_disc >= 0 || c.min_disc > c.max_disc) {
                err << "scan: need --min-disc <= --max-disc < 0\n";
                return usage;
            }
            if (c.parallel > 1024) {
                err << "scan: --parallel too large\n";
                return usage;
            }
            return detail::run_scan(c, out, err);
        }
        if (hatcher->parsed()) {
            return detail::run_hatcher(c, out);
        }
    } catch (const std::invalid_argument& e) {
        // parse_error, validation_error
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return failure;
    }
    return usage;
}

} // namespace reflbound::cli

#endif // REFLBOUND_TOOLS_CLI_HPP
