#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ramify/digit_poly.hpp"
#include "ramify/ram_polygon.hpp"
#include "ramify/residual_invariants.hpp"
#include "ramify/template_builder.hpp"

namespace ramify {

/// A generated polynomial failed the polygon or residual round trip.
struct OracleMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EnumerationOptions {
    bool count_only = false;
    bool no_filter = false;
    /// Compute aut_count for every record, even when no filtering is needed.
    bool with_aut = false;
    /// Check polygon and residuals of every materialized polynomial.
    bool roundtrip = true;
    int jobs = 1;
};

struct ExtensionRecord {
    DigitPoly generator;
    RamPolygon R;
    ResidualTuple invariant;  // canonical orbit representative
    ResidualTuple residuals;  // representative of the class the template was built from
    ResidueElem delta0;
    std::uint64_t aut_bound = 0;
    std::optional<std::uint64_t> aut_count;
    std::uint64_t siblings_merged = 1;
    bool filtered = false;
};

/// One (delta_0, class) enumeration job.
struct ClassSummary {
    RamPolygon R;
    ResidualTuple invariant;
    ResidualTuple residuals;
    ResidueElem delta0;
    BigInt template_count;
    Guarantee guarantee;
    bool filtered = false;
    BigInt count;  // generators produced
};

struct Enumeration {
    std::vector<ExtensionRecord> records;  // empty in count-only mode
    std::vector<ClassSummary> classes;
    BigInt total = 0;
};

/// The (delta_0, class representative) pairs visited for the orbit O.
std::vector<std::pair<ResidueElem, ResidualTuple>> class_representatives(const LocalField& K, const RamPolygon& R,
                                                                        const InvariantOrbit& O);

Enumeration all_extensions(const LocalField& K, const RamPolygon& R, const InvariantOrbit& O,
                           const EnumerationOptions& opt = {});

Enumeration all_extensions_by_disc(const LocalField& K, long n, long J0, const EnumerationOptions& opt = {});

struct SummaryRow {
    std::string polygon;
    std::string invariant;
    std::string delta0;
    std::uint64_t count = 0;
    bool filtered = false;
    std::optional<std::uint64_t> aut_min, aut_max;
};

/// Rows grouped by polygon, invariant and delta_0 in first-seen order.
std::vector<SummaryRow> summarize(const LocalField& K, const std::vector<ExtensionRecord>& records);

}  // namespace ramify
