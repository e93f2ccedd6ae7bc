#include "mtm/export.hpp"

namespace mtm {

void export_downtown_spatial(std::ostream& os, const DownTown& dt,
                             const std::vector<Rational>& values, ExportFormat format) {
    auto role_name = [](DTRole r) {
        switch (r) {
            case DTRole::transit: return "transit";
            case DTRole::parking: return "parking";
            default: return "cross";
        }
    };
    auto stripe_name = [](int s) { return s > 0 ? "+" : s < 0 ? "-" : ""; };
    if (format == ExportFormat::csv) {
        os << "role,i,j,stripe,k,probability\n";
        for (PointId c = 0; c < static_cast<PointId>(dt.cells.size()); ++c) {
            const DTCellInfo& info = dt.cells[c];
            os << role_name(info.role) << ',' << info.i << ',' << info.j << ','
               << stripe_name(info.stripe) << ',' << info.k << ',' << values[c].get_str() << '\n';
        }
        return;
    }
    os << "[\n";
    for (PointId c = 0; c < static_cast<PointId>(dt.cells.size()); ++c) {
        const DTCellInfo& info = dt.cells[c];
        os << "  {\"role\": \"" << role_name(info.role) << "\", \"i\": " << info.i
           << ", \"j\": " << info.j << ", \"stripe\": \"" << stripe_name(info.stripe)
           << "\", \"k\": " << info.k << ", \"probability\": \"" << values[c].get_str() << "\"}"
           << (c + 1 < static_cast<PointId>(dt.cells.size()) ? "," : "") << '\n';
    }
    os << "]\n";
}

void export_histogram(std::ostream& os, const TraceSet& ts, const EmpiricalHistogram& h,
                      ExportFormat format) {
    std::vector<double> values(ts.point_count(), 0.0);
    for (PointId u = 0; u < ts.point_count(); ++u)
        values[u] = h.total == 0 ? 0.0 : static_cast<double>(h.occupancy[u]) / h.total;
    export_spatial(os, ts, values, format);
}

void export_grid_samples(std::ostream& os, int n, const std::vector<double>& values,
                         ExportFormat format) {
    if (format == ExportFormat::csv) {
        os << "i,j,value\n";
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                os << i << ',' << j << ','
                   << num::traits<double>::str(values[static_cast<std::size_t>(i) * n + j]) << '\n';
        return;
    }
    os << "[\n";
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            os << "  {\"i\": " << i << ", \"j\": " << j << ", \"value\": \""
               << num::traits<double>::str(values[static_cast<std::size_t>(i) * n + j]) << "\"}"
               << (i == n - 1 && j == n - 1 ? "" : ",") << '\n';
        }
    os << "]\n";
}

}  // namespace mtm
