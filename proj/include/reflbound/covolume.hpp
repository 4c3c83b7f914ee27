#ifndef REFLBOUND_COVOLUME_HPP
#define REFLBOUND_COVOLUME_HPP

// Covolume lower bounds for Bianchi-type arithmetic groups over imaginary
// quadratic fields k = Q(sqrt d), and the discriminant scan that filters
// candidate fields against the volume bound of a maximal reflection group.
//
//   Borel:          mu >= |d|^(3/2) zeta_k(2) / (16 pi^2 h)
//   Brauer-Siegel:  |d| zeta_k(2) >= h (2 pi)^2 / (2 w)
//   combined, w=2:  mu >= |d|^(1/2) / 16

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "reflbound/errors.hpp"
#include "reflbound/inequality.hpp"
#include "reflbound/number_theory.hpp"

namespace reflbound::arith {

inline constexpr double pi = std::numbers::pi;

/// zeta(2) = pi^2 / 6.
inline constexpr double riemann_zeta2 = pi * pi / 6.0;

/// 64 pi^2: the volume bound for maximal arithmetic reflection orbifolds.
inline constexpr double default_cutoff = 64.0 * pi * pi;

/// floor(2^20 pi^4) = floor(102140835.04...). 2^20 pi^4 is irrational, so
/// |d| < 2^20 pi^4 iff |d| <= this.
inline constexpr std::int64_t crude_cutoff_floor = 102'140'835;

inline constexpr std::int64_t default_max_terms = 4'000'000'000;

/// 2^20 pi^4, the largest |d| allowed by 64 pi^2 >= |d|^(1/2) / 16.
inline double crude_cutoff()
{
    return std::ldexp(pi * pi * pi * pi, 20);
}

/// |d|^(1/2) / 16, the w = 2 lower bound on the covolume.
inline double crude_lower_bound(std::int64_t abs_d)
{
    return std::sqrt(static_cast<double>(abs_d)) / 16.0;
}

/// |d|^(1/2) / 16 <= cutoff, decided without rounding at the default cutoff.
inline bool crude_passes(std::int64_t abs_d, double cutoff = default_cutoff)
{
    if (cutoff == default_cutoff) {
        return abs_d <= crude_cutoff_floor;
    }
    const long double c = cutoff;
    return static_cast<long double>(abs_d) <= 256.0L * c * c;
}

// ---------------------------------------------------------------------------
// L(2, chi_d)

struct LSeriesValue {
    double value = 0;
    double error_bound = 0; ///< |L(2, chi) - value| <= error_bound
    std::int64_t terms = 0;
};

/// Abel summation with |sum_{n<=x} chi(n)| <= |d| bounds the tail after N
/// terms by 2 |d| / N^2.
inline double l2_tail_bound(std::int64_t abs_d, std::int64_t terms)
{
    const double n = static_cast<double>(terms);
    return 2.0 * static_cast<double>(abs_d) / (n * n);
}

inline LSeriesValue dirichlet_l2(std::int64_t d, double tol,
                                 std::int64_t max_terms = default_max_terms)
{
    require_fundamental(d);
    if (!(tol > 0)) {
        throw domain_error("dirichlet_l2: tolerance must be positive");
    }
    const std::int64_t abs_d = -d;
    const double needed = std::ceil(std::sqrt(2.0 * static_cast<double>(abs_d) / tol));
    if (!(needed <= static_cast<double>(max_terms))) {
        throw budget_error("dirichlet_l2: d = " + std::to_string(d) + " at tolerance " +
                           std::to_string(tol) + " needs more than " +
                           std::to_string(max_terms) + " terms");
    }
    auto terms = static_cast<std::int64_t>(needed);
    // Roundoff in sqrt can leave the bound a hair above tol.
    while (l2_tail_bound(abs_d, terms) > tol) {
        ++terms;
    }

    std::vector<std::int8_t> character(static_cast<std::size_t>(abs_d));
    for (std::int64_t r = 1; r < abs_d; ++r) {
        character[static_cast<std::size_t>(r)] = static_cast<std::int8_t>(kronecker(d, r));
    }

    // Smallest terms first.
    long double sum = 0;
    std::int64_t r = terms % abs_d;
    for (std::int64_t n = terms; n >= 1; --n) {
        if (const int chi = character[static_cast<std::size_t>(r)]; chi != 0) {
            const long double nn = static_cast<long double>(n);
            sum += chi / (nn * nn);
        }
        r = (r == 0) ? abs_d - 1 : r - 1;
    }

    LSeriesValue out;
    out.value = static_cast<double>(sum);
    out.error_bound = l2_tail_bound(abs_d, terms);
    out.terms = terms;
    return out;
}

// ---------------------------------------------------------------------------
// Per-field records

struct FieldRecord {
    std::int64_t d = 0;
    std::int64_t h = 0;
    int w = 2;
    double l2 = 0;
    double l2_error = 0;
    double zeta2 = 0;        ///< zeta_k(2) = zeta(2) L(2, chi_d)
    double borel_lower = 0;
    bool passes_exact = false;
    bool passes_crude = false;
};

inline double borel_lower_bound(std::int64_t abs_d, std::int64_t h, double zeta2)
{
    const double ad = static_cast<double>(abs_d);
    return ad * std::sqrt(ad) * zeta2 / (16.0 * pi * pi * static_cast<double>(h));
}

inline double borel_lower_bound(const FieldRecord& rec)
{
    return borel_lower_bound(-rec.d, rec.h, rec.zeta2);
}

inline bool brauer_siegel_holds(const FieldRecord& rec)
{
    const double lhs = static_cast<double>(-rec.d) * rec.zeta2;
    const double rhs = static_cast<double>(rec.h) * 4.0 * pi * pi / (2.0 * rec.w);
    return lhs >= rhs;
}

inline FieldRecord make_field_record(std::int64_t d, double cutoff, double tol,
                                     std::int64_t max_terms = default_max_terms)
{
    FieldRecord rec;
    rec.d = d;
    rec.h = class_number(d);
    rec.w = roots_of_unity(d);
    const LSeriesValue l2 = dirichlet_l2(d, tol, max_terms);
    rec.l2 = l2.value;
    rec.l2_error = l2.error_bound;
    rec.zeta2 = riemann_zeta2 * rec.l2;
    rec.borel_lower = borel_lower_bound(rec);
    rec.passes_exact = rec.borel_lower <= cutoff;
    rec.passes_crude = crude_passes(-d, cutoff);
    return rec;
}

// ---------------------------------------------------------------------------
// Scan

struct ScanConfig {
    std::int64_t d_min = -100'000;
    std::int64_t d_max = -3;
    double cutoff = default_cutoff;
    double tol = 1e-8;
    unsigned threads = 1;    ///< 0 picks the hardware concurrency
    std::int64_t max_terms = default_max_terms;
};

struct ScanReport {
    double cutoff = default_cutoff;
    double crude_bound = 0;
    std::int64_t n_scanned = 0;   ///< integers examined in [d_min, d_max]
    std::int64_t n_passing = 0;   ///< records with passes_exact
    std::vector<FieldRecord> records; ///< |d| strictly ascending
};

inline void tally(ScanReport& report)
{
    report.n_passing = std::count_if(report.records.begin(), report.records.end(),
                                     [](const FieldRecord& r) { return r.passes_exact; });
}

/// Every fundamental discriminant in [d_min, d_max] gets a full record.
/// Work may be spread over threads; the record order is always |d| ascending.
inline ScanReport scan(const ScanConfig& config)
{
    if (config.d_max >= 0 || config.d_min > config.d_max) {
        throw domain_error("scan: need d_min <= d_max < 0");
    }
    if (!(config.cutoff > 0) || !(config.tol > 0)) {
        throw domain_error("scan: cutoff and tolerance must be positive");
    }

    ScanReport report;
    report.cutoff = config.cutoff;
    report.crude_bound = crude_cutoff();
    report.n_scanned = config.d_max - config.d_min + 1;

    const std::vector<std::int64_t> discs = fundamental_discriminants(config.d_min, config.d_max);
    report.records.resize(discs.size());

    unsigned threads = config.threads == 0 ? std::thread::hardware_concurrency() : config.threads;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(discs.size())));

    // Interleaved assignment balances the cost, which grows with |d|.
    std::vector<std::exception_ptr> failures(threads);
    const auto work = [&](unsigned worker) {
        try {
            for (std::size_t i = worker; i < discs.size(); i += threads) {
                report.records[i] =
                    make_field_record(discs[i], config.cutoff, config.tol, config.max_terms);
            }
        } catch (...) {
            failures[worker] = std::current_exception();
        }
    };
    if (threads <= 1) {
        work(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(work, t);
        }
    }
    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    tally(report);
    return report;
}

/// Discriminants whose Bianchi groups are commensurable with reflection groups.
inline constexpr std::array<std::int64_t, 16> hatcher_discriminants = {
    -3, -4, -7, -8, -11, -15, -19, -20, -24, -39, -40, -52, -55, -56, -68, -84};

/// True iff every listed discriminant is in the report, fundamental and
/// passing the exact filter.
inline bool hatcher_check(const ScanReport& report)
{
    return std::all_of(hatcher_discriminants.begin(), hatcher_discriminants.end(),
                       [&](std::int64_t d) {
                           const auto it = std::find_if(
                               report.records.begin(), report.records.end(),
                               [&](const FieldRecord& r) { return r.d == d; });
                           return it != report.records.end() && is_fundamental(d) &&
                                  it->passes_exact;
                       });
}

} // namespace reflbound::arith

#endif // REFLBOUND_COVOLUME_HPP
