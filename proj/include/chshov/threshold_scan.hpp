#pragma once

// One-parameter threshold location: bisect the mixing parameter x where a
// detection criterion changes sign, and rebuild the three reference
// threshold tables from the full numerical stack.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "chshov/distill.hpp"
#include "chshov/families.hpp"
#include "chshov/gte.hpp"
#include "chshov/pair_overlaps.hpp"

namespace chshov {

enum class ScanCriterion { overlap_pos, gte_sum, gte_bound, rc };

inline ScanCriterion criterion_from_string(std::string_view name) {
    if (name == "overlap_pos") return ScanCriterion::overlap_pos;
    if (name == "gte_sum") return ScanCriterion::gte_sum;
    if (name == "gte_bound") return ScanCriterion::gte_bound;
    if (name == "rc") return ScanCriterion::rc;
    throw std::invalid_argument("unknown criterion '" + std::string(name) + "'");
}

inline std::string to_string(ScanCriterion c) {
    switch (c) {
        case ScanCriterion::overlap_pos: return "overlap_pos";
        case ScanCriterion::gte_sum: return "gte_sum";
        case ScanCriterion::gte_bound: return "gte_bound";
        case ScanCriterion::rc: return "rc";
    }
    return "?";
}

struct ThresholdScan {
    FamilySpec family;  // family.x is the scanned variable
    ScanCriterion criterion = ScanCriterion::overlap_pos;
    double lo = 0.0, hi = 1.0;
    double tol = 1e-7;
};

struct ScanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Criterion value at mixing parameter x; positive means "detected".
/// overlap_pos uses the worst bipartition for states of >= 3 parties, so a
/// positive value certifies every split at once.
inline double criterion_value(const FamilySpec& family, ScanCriterion criterion, double x) {
    FamilySpec spec = family;
    spec.x = x;
    const QState state = make_family(spec);
    const auto& dims = state.dims();
    switch (criterion) {
        case ScanCriterion::overlap_pos: {
            if (state.parties() == 2) return max_pair_overlap(state, Bipartition::of(dims, {0})) - q_tol;
            double worst = std::numeric_limits<double>::infinity();
            for (const auto& p : Bipartition::all(dims))
                worst = std::min(worst, max_pair_overlap(state, p));
            return worst - q_tol;
        }
        case ScanCriterion::gte_sum: return mixed_gte_test(state).sum - 8.0;
        case ScanCriterion::gte_bound: return gte_bound(state);
        case ScanCriterion::rc: {
            const auto [min_eig, violated] = reduction_criterion(state, Bipartition::of(dims, {0}));
            (void)violated;
            return -min_eig - rc_tol;
        }
    }
    throw std::logic_error("criterion_value: unreachable");
}

/// Bisection for the sign change of f over [lo, hi]. A 16-interval
/// pre-scan verifies there is exactly one crossing; multiple crossings or
/// none abort with ScanError.
inline double bisect_root(const std::function<double(double)>& f, double lo_in, double hi_in,
                          double tol) {
    constexpr int pre_points = 16;
    double prev_x = lo_in;
    double prev_f = f(prev_x);
    double lo = lo_in, hi = hi_in;
    bool found = false;
    for (int k = 1; k <= pre_points; ++k) {
        const double x = lo_in + (hi_in - lo_in) * static_cast<double>(k) / pre_points;
        const double fx = f(x);
        if ((prev_f <= 0.0) != (fx <= 0.0)) {
            if (found)
                throw ScanError("bisect: multiple sign changes in pre-scan; criterion not monotone");
            lo = prev_x;
            hi = x;
            found = true;
        }
        prev_x = x;
        prev_f = fx;
    }
    if (!found) throw ScanError("bisect: no sign change on the bracket");

    double f_lo = f(lo);
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = f(mid);
        if (f_mid == 0.0) return mid;
        if ((f_lo <= 0.0) == (f_mid <= 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

inline double bisect_threshold(const ThresholdScan& scan) {
    return bisect_root(
        [&](double x) { return criterion_value(scan.family, scan.criterion, x); }, scan.lo,
        scan.hi, scan.tol);
}

enum class TableId { I, II, III };

inline TableId table_from_string(std::string_view name) {
    if (name == "I" || name == "i" || name == "1") return TableId::I;
    if (name == "II" || name == "ii" || name == "2") return TableId::II;
    if (name == "III" || name == "iii" || name == "3") return TableId::III;
    throw std::invalid_argument("unknown table '" + std::string(name) + "'");
}

struct TableEntry {
    std::string table;
    int range;  // criterion column within the table
    std::size_t d;
    ScanCriterion criterion;
    double computed;
    double reference;
};

/// Reference thresholds the computed tables are compared against.
/// Table I: GTE detection for the noisy GHZ family (sum test, then bound).
/// Table II: isotropic-state overlap positivity, then reduction criterion.
/// Table III: worst-partition overlap positivity for the noisy GHZ family.
inline const std::vector<TableEntry>& table_reference(TableId which) {
    static const std::vector<TableEntry> table1{
        {"I", 1, 2, ScanCriterion::gte_sum, 0.0, 0.839708},
        {"I", 1, 3, ScanCriterion::gte_sum, 0.0, 0.699544},
        {"I", 1, 4, ScanCriterion::gte_sum, 0.0, 0.567035},
        {"I", 2, 2, ScanCriterion::gte_bound, 0.0, 0.788793},
        {"I", 2, 3, ScanCriterion::gte_bound, 0.0, 0.731621},
        {"I", 2, 4, ScanCriterion::gte_bound, 0.0, 0.705508},
    };
    static const std::vector<TableEntry> table2{
        {"II", 1, 2, ScanCriterion::overlap_pos, 0.0, 0.707107},
        {"II", 1, 3, ScanCriterion::overlap_pos, 0.0, 0.616781},
        {"II", 1, 4, ScanCriterion::overlap_pos, 0.0, 0.546918},
        {"II", 1, 5, ScanCriterion::overlap_pos, 0.0, 0.491272},
        {"II", 1, 6, ScanCriterion::overlap_pos, 0.0, 0.445903},
        {"II", 1, 7, ScanCriterion::overlap_pos, 0.0, 0.408205},
        {"II", 2, 2, ScanCriterion::rc, 0.0, 0.33333},
        {"II", 2, 3, ScanCriterion::rc, 0.0, 0.25},
        {"II", 2, 4, ScanCriterion::rc, 0.0, 0.2},
        {"II", 2, 5, ScanCriterion::rc, 0.0, 0.16667},
        {"II", 2, 6, ScanCriterion::rc, 0.0, 0.142857},
        {"II", 2, 7, ScanCriterion::rc, 0.0, 0.125},
    };
    static const std::vector<TableEntry> table3{
        {"III", 1, 2, ScanCriterion::overlap_pos, 0.0, 0.54692},
        {"III", 1, 3, ScanCriterion::overlap_pos, 0.0, 0.34917},
        {"III", 1, 4, ScanCriterion::overlap_pos, 0.0, 0.23182},
        {"III", 1, 5, ScanCriterion::overlap_pos, 0.0, 0.16188},
    };
    switch (which) {
        case TableId::I: return table1;
        case TableId::II: return table2;
        case TableId::III: return table3;
    }
    throw std::logic_error("table_reference: unreachable");
}

/// Recompute every threshold of the requested table by bisection.
inline std::vector<TableEntry> reproduce_table(TableId which, double tol = 1e-7) {
    std::vector<TableEntry> rows = table_reference(which);
    for (auto& row : rows) {
        ThresholdScan scan;
        scan.family.name = (which == TableId::II) ? FamilyName::isotropic : FamilyName::ghz_noise;
        scan.family.d = row.d;
        scan.family.parties = (which == TableId::II) ? 2 : 3;
        scan.criterion = row.criterion;
        scan.tol = tol;
        row.computed = bisect_threshold(scan);
    }
    return rows;
}

}  // namespace chshov
