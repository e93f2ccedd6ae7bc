#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "mtm/distributions.hpp"
#include "mtm/downtown.hpp"
#include "mtm/numeric.hpp"
#include "mtm/simulate.hpp"
#include "mtm/trace.hpp"

namespace mtm {

enum class ExportFormat { csv, json };

// point_id,probability rows sorted by id; i,j,probability for grid models.
template <class S>
void export_spatial(std::ostream& os, const TraceSet& ts, const std::vector<S>& values,
                    ExportFormat format);

// dest_id,probability with the conditioning point in a leading comment row.
template <class S>
void export_destination(std::ostream& os, const TraceSet& ts,
                        const DestinationDistribution<S>& d, ExportFormat format);

// role,i,j,stripe,k,probability per DownTown cell.
void export_downtown_spatial(std::ostream& os, const DownTown& dt,
                             const std::vector<Rational>& values, ExportFormat format);

// Mirrors the spatial schema so histograms diff directly against analytics.
void export_histogram(std::ostream& os, const TraceSet& ts, const EmpiricalHistogram& h,
                      ExportFormat format);

// Grid samples of an analytic density: i,j,value.
void export_grid_samples(std::ostream& os, int n, const std::vector<double>& values,
                         ExportFormat format);

// ---------------------------------------------------------------------------

template <class S>
void export_spatial(std::ostream& os, const TraceSet& ts, const std::vector<S>& values,
                    ExportFormat format) {
    const bool grid = ts.has_coords();
    if (format == ExportFormat::csv) {
        os << (grid ? "i,j,probability\n" : "point_id,probability\n");
        for (PointId u = 0; u < ts.point_count(); ++u) {
            if (grid) {
                const auto& c = *ts.points()[u].coords;
                os << c.i << ',' << c.j;
            } else {
                os << u;
            }
            os << ',' << num::traits<S>::str(values[u]) << '\n';
        }
        return;
    }
    os << "[\n";
    for (PointId u = 0; u < ts.point_count(); ++u) {
        os << "  {\"point_id\": " << u;
        if (grid) {
            const auto& c = *ts.points()[u].coords;
            os << ", \"i\": " << c.i << ", \"j\": " << c.j;
        }
        os << ", \"probability\": \"" << num::traits<S>::str(values[u]) << "\"}"
           << (u + 1 < ts.point_count() ? "," : "") << '\n';
    }
    os << "]\n";
}

template <class S>
void export_destination(std::ostream& os, const TraceSet& ts,
                        const DestinationDistribution<S>& d, ExportFormat format) {
    if (format == ExportFormat::csv) {
        os << "# conditioned_on," << d.at << '\n';
        os << "dest_id,probability\n";
        for (PointId v = 0; v < ts.point_count(); ++v)
            if (!num::is_zero(d.prob[v]))
                os << v << ',' << num::traits<S>::str(d.prob[v]) << '\n';
        return;
    }
    os << "{\"conditioned_on\": " << d.at << ", \"destinations\": [\n";
    bool first = true;
    for (PointId v = 0; v < ts.point_count(); ++v) {
        if (num::is_zero(d.prob[v])) continue;
        if (!first) os << ",\n";
        first = false;
        os << "  {\"dest_id\": " << v << ", \"probability\": \""
           << num::traits<S>::str(d.prob[v]) << "\"}";
    }
    os << "\n]}\n";
}

}  // namespace mtm
