#ifndef REFLBOUND_REPORT_IO_HPP
#define REFLBOUND_REPORT_IO_HPP

// Serialization of module reports. Output is byte-stable: fixed key order,
// floats rendered with 12 significant digits.

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "reflbound/covolume.hpp"
#include "reflbound/errors.hpp"
#include "reflbound/inequality.hpp"
#include "reflbound/laplacian.hpp"
#include "reflbound/orbifold.hpp"

namespace reflbound::io {

using Json = nlohmann::ordered_json;

enum class Format { csv, json, table };

inline constexpr const char* scan_csv_header =
    "d,h,w,L2,L2_err,zeta_k2,borel_lower,passes_exact,passes_crude";

/// %.12g rendering.
inline std::string g12(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// The value that g12 text denotes, so JSON numbers carry the same digits as CSV.
inline double round12(double v)
{
    return std::strtod(g12(v).c_str(), nullptr);
}

inline const char* boolean(bool b)
{
    return b ? "true" : "false";
}

// ---------------------------------------------------------------------------
// Scan reports

inline void write_scan_csv_row(std::ostream& out, const arith::FieldRecord& r)
{
    out << r.d << ',' << r.h << ',' << r.w << ',' << g12(r.l2) << ',' << g12(r.l2_error) << ','
        << g12(r.zeta2) << ',' << g12(r.borel_lower) << ',' << boolean(r.passes_exact) << ','
        << boolean(r.passes_crude) << '\n';
}

inline void write_scan_csv(std::ostream& out, const arith::ScanReport& report)
{
    out << scan_csv_header << '\n';
    for (const auto& r : report.records) {
        write_scan_csv_row(out, r);
    }
}

inline Json to_json(const arith::FieldRecord& r)
{
    Json j;
    j["d"] = r.d;
    j["h"] = r.h;
    j["w"] = r.w;
    j["L2"] = round12(r.l2);
    j["L2_err"] = round12(r.l2_error);
    j["zeta_k2"] = round12(r.zeta2);
    j["borel_lower"] = round12(r.borel_lower);
    j["passes_exact"] = r.passes_exact;
    j["passes_crude"] = r.passes_crude;
    return j;
}

inline Json to_json(const arith::ScanReport& report)
{
    Json j;
    j["cutoff"] = round12(report.cutoff);
    j["crude_bound"] = round12(report.crude_bound);
    j["n_scanned"] = report.n_scanned;
    j["n_passing"] = report.n_passing;
    j["records"] = Json::array();
    for (const auto& r : report.records) {
        j["records"].push_back(to_json(r));
    }
    return j;
}

namespace detail {

inline bool parse_bool(const std::string& s)
{
    if (s == "true") {
        return true;
    }
    if (s == "false") {
        return false;
    }
    throw parse_error("expected true/false, got '" + s + "'");
}

} // namespace detail

/// Reads rows written by write_scan_csv (header required).
inline std::vector<arith::FieldRecord> read_scan_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != scan_csv_header) {
        throw parse_error("scan CSV: missing or unexpected header");
    }
    std::vector<arith::FieldRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');) {
            cells.push_back(cell);
        }
        if (cells.size() != 9) {
            throw parse_error("scan CSV: expected 9 columns in '" + line + "'");
        }
        try {
            arith::FieldRecord r;
            r.d = std::stoll(cells[0]);
            r.h = std::stoll(cells[1]);
            r.w = std::stoi(cells[2]);
            r.l2 = std::stod(cells[3]);
            r.l2_error = std::stod(cells[4]);
            r.zeta2 = std::stod(cells[5]);
            r.borel_lower = std::stod(cells[6]);
            r.passes_exact = detail::parse_bool(cells[7]);
            r.passes_crude = detail::parse_bool(cells[8]);
            records.push_back(r);
        } catch (const std::logic_error&) {
            throw parse_error("scan CSV: bad row '" + line + "'");
        }
    }
    return records;
}

inline void write_scan_table(std::ostream& out, const arith::ScanReport& report)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, "%10s %6s %2s %14s %14s %14s %6s %6s\n", "d", "h", "w", "L2",
                  "zeta_k2", "borel_lower", "exact", "crude");
    out << buf;
    for (const auto& r : report.records) {
        std::snprintf(buf, sizeof buf, "%10lld %6lld %2d %14.9f %14.9f %14.6f %6s %6s\n",
                      static_cast<long long>(r.d), static_cast<long long>(r.h), r.w, r.l2,
                      r.zeta2, r.borel_lower, boolean(r.passes_exact), boolean(r.passes_crude));
        out << buf;
    }
    out << "cutoff " << g12(report.cutoff) << "  crude bound 2^20 pi^4 = "
        << g12(report.crude_bound) << "  scanned " << report.n_scanned << "  fundamental "
        << report.records.size() << "  passing " << report.n_passing << '\n';
}

inline void write_scan(std::ostream& out, const arith::ScanReport& report, Format format)
{
    switch (format) {
    case Format::csv:
        write_scan_csv(out, report);
        break;
    case Format::json:
        out << to_json(report).dump(2) << '\n';
        break;
    case Format::table:
        write_scan_table(out, report);
        break;
    }
}

// ---------------------------------------------------------------------------
// Spectral results

inline Json to_json(const spectral::SaturationCheck& s)
{
    Json j;
    j["depth"] = s.depth;
    j["n_vertices"] = s.n_vertices;
    j["area"] = round12(s.spectrum.area);
    Json eig = Json::array();
    for (double v : s.spectrum.eigenvalues) {
        eig.push_back(round12(v));
    }
    j["eigenvalues"] = std::move(eig);
    j["lambda1"] = round12(s.spectrum.lambda1);
    j["multiplicity1"] = s.spectrum.multiplicity1;
    j["slack"] = round12(s.check.slack);
    return j;
}

inline void write_spectrum(std::ostream& out, const spectral::SaturationCheck& s, Format format)
{
    switch (format) {
    case Format::json:
        out << to_json(s).dump(2) << '\n';
        break;
    case Format::csv: {
        out << "depth,n_vertices,area,lambda1,multiplicity1,slack,eigenvalues\n";
        out << s.depth << ',' << s.n_vertices << ',' << g12(s.spectrum.area) << ','
            << g12(s.spectrum.lambda1) << ',' << s.spectrum.multiplicity1 << ','
            << g12(s.check.slack) << ',';
        for (std::size_t i = 0; i < s.spectrum.eigenvalues.size(); ++i) {
            out << (i ? ";" : "") << g12(s.spectrum.eigenvalues[i]);
        }
        out << '\n';
        break;
    }
    case Format::table:
        out << "icosphere depth " << s.depth << ", " << s.n_vertices << " vertices\n"
            << "area           " << g12(s.spectrum.area) << '\n'
            << "eigenvalues   ";
        for (double v : s.spectrum.eigenvalues) {
            out << ' ' << g12(v);
        }
        out << '\n'
            << "lambda1        " << g12(s.spectrum.lambda1) << " (multiplicity "
            << s.spectrum.multiplicity1 << ")\n"
            << "conf_vol       " << g12(s.check.conf_vol) << '\n'
            << "slack          " << g12(s.check.slack) << " (tolerance " << g12(s.tol)
            << (s.within_tolerance ? ", ok)\n" : ", VIOLATED)\n");
        break;
    }
}

// ---------------------------------------------------------------------------
// Volume bound chain

inline Json to_json(const spectral::BoundChain<double>& c)
{
    Json j;
    j["lambda_min"] = round12(c.lambda_min);
    j["vc_sphere3"] = round12(c.vc_sphere3);
    j["index_bound"] = c.index_bound;
    j["vc_bound"] = round12(c.vc_bound);
    j["vol_bound"] = round12(c.vol_bound);
    j["vol_bound_over_pi2"] = round12(c.vol_bound / (arith::pi * arith::pi));
    return j;
}

inline void write_chain(std::ostream& out, const spectral::BoundChain<double>& c, Format format)
{
    const double over_pi2 = c.vol_bound / (arith::pi * arith::pi);
    switch (format) {
    case Format::json:
        out << to_json(c).dump(2) << '\n';
        break;
    case Format::csv:
        out << "lambda_min,vc_sphere3,index_bound,vc_bound,vol_bound,vol_bound_over_pi2\n"
            << g12(c.lambda_min) << ',' << g12(c.vc_sphere3) << ',' << c.index_bound << ','
            << g12(c.vc_bound) << ',' << g12(c.vol_bound) << ',' << g12(over_pi2) << '\n';
        break;
    case Format::table:
        out << "lambda_min   " << g12(c.lambda_min) << '\n'
            << "Vc(S^3)      " << g12(c.vc_sphere3) << '\n'
            << "index bound  " << c.index_bound << '\n'
            << "Vc bound     " << g12(c.vc_bound) << '\n'
            << "vol_bound    " << g12(c.vol_bound) << " = " << g12(over_pi2) << " pi^2\n";
        break;
    }
}

// ---------------------------------------------------------------------------
// Orbifold supergroups

struct OrbifoldRow {
    orbifold::SphericalSignature signature;
    orbifold::OrbifoldGroupInfo info;
    orbifold::SupergroupResult result;
    std::int64_t supergroup_order = 0;
    bool verified = false;
};

inline OrbifoldRow describe(const orbifold::SphericalSignature& sig)
{
    OrbifoldRow row;
    row.signature = sig;
    row.info = orbifold::group_order(sig);
    row.result = orbifold::reflection_supergroup(sig);
    row.supergroup_order = orbifold::group_order(row.result.supergroup).order;
    row.verified = orbifold::verify_cover(row.result, sig);
    return row;
}

inline std::string chain_text(const orbifold::SupergroupResult& r)
{
    std::string out;
    for (std::size_t i = 0; i < r.chain.size(); ++i) {
        out += (i ? " " : "");
        out += "-" + std::to_string(r.chain[i].degree) + ":1-> " +
               orbifold::format_tuple(r.chain[i].signature);
    }
    return out;
}

inline std::string rational_text(const orbifold::Rational& q)
{
    return q.denominator() == 1 ? std::to_string(q.numerator())
                                : std::to_string(q.numerator()) + "/" +
                                      std::to_string(q.denominator());
}

inline Json to_json(const OrbifoldRow& row)
{
    Json j;
    j["symbol"] = orbifold::format_signature(row.signature);
    j["signature"] = orbifold::format_tuple(row.signature);
    j["chi"] = rational_text(row.info.chi);
    j["order"] = row.info.order;
    j["reflection_generated"] = row.info.reflection_generated;
    j["supergroup"] = orbifold::format_tuple(row.result.supergroup);
    j["supergroup_order"] = row.supergroup_order;
    j["index"] = row.result.index;
    Json chain = Json::array();
    for (const auto& step : row.result.chain) {
        chain.push_back(Json{{"signature", orbifold::format_tuple(step.signature)},
                             {"degree", step.degree}});
    }
    j["chain"] = std::move(chain);
    j["verified"] = row.verified;
    return j;
}

inline void write_orbifolds(std::ostream& out, const std::vector<OrbifoldRow>& rows, Format format)
{
    switch (format) {
    case Format::json: {
        Json arr = Json::array();
        for (const auto& r : rows) {
            arr.push_back(to_json(r));
        }
        out << (rows.size() == 1 ? to_json(rows[0]) : arr).dump(2) << '\n';
        break;
    }
    case Format::csv:
        out << "symbol,chi,order,supergroup,supergroup_order,index,chain,verified\n";
        for (const auto& r : rows) {
            out << orbifold::format_signature(r.signature) << ',' << rational_text(r.info.chi)
                << ',' << r.info.order << ',' << orbifold::format_signature(r.result.supergroup)
                << ',' << r.supergroup_order << ',' << r.result.index << ','
                << chain_text(r.result) << ',' << boolean(r.verified) << '\n';
        }
        break;
    case Format::table:
        for (const auto& r : rows) {
            out << orbifold::format_tuple(r.signature) << "  |G| = " << r.info.order
                << "  chi = " << rational_text(r.info.chi) << '\n'
                << "  supergroup " << orbifold::format_tuple(r.result.supergroup)
                << "  |G'| = " << r.supergroup_order << "  index " << r.result.index << '\n';
            if (!r.result.chain.empty()) {
                out << "  chain " << orbifold::format_tuple(r.signature) << ' '
                    << chain_text(r.result) << '\n';
            }
            out << "  order check " << (r.verified ? "ok" : "FAILED") << '\n';
        }
        break;
    }
}

} // namespace reflbound::io

#endif // REFLBOUND_REPORT_IO_HPP
