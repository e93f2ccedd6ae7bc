#pragma once

#include <stdexcept>
#include <string>

namespace mtm {

enum class Errc {
    empty_set,
    not_endless,
    duplicate_trace,
    invalid_trace,
    invalid_stochastic_matrix,
    solve_failed,
    not_stationary_input,
    zero_spatial_mass,
    invalid_bundle,
    overlapping_bundles,
    empty_route,
    endpoint_mismatch,
    not_balanced,
    not_strongly_connected,
    unrepresentable_slowness,
    unsupported_coordinates,
    boundary_cell_not_covered,
    degenerate_conditioning,
    mismatched_support,
    invalid_argument,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::empty_set: return "EmptySet";
        case Errc::not_endless: return "NotEndless";
        case Errc::duplicate_trace: return "DuplicateTrace";
        case Errc::invalid_trace: return "InvalidTrace";
        case Errc::invalid_stochastic_matrix: return "InvalidStochasticMatrix";
        case Errc::solve_failed: return "SolveFailed";
        case Errc::not_stationary_input: return "NotStationaryInput";
        case Errc::zero_spatial_mass: return "ZeroSpatialMass";
        case Errc::invalid_bundle: return "InvalidBundle";
        case Errc::overlapping_bundles: return "OverlappingBundles";
        case Errc::empty_route: return "EmptyRoute";
        case Errc::endpoint_mismatch: return "EndpointMismatch";
        case Errc::not_balanced: return "NotBalanced";
        case Errc::not_strongly_connected: return "NotStronglyConnected";
        case Errc::unrepresentable_slowness: return "UnrepresentableSlowness";
        case Errc::unsupported_coordinates: return "UnsupportedCoordinates";
        case Errc::boundary_cell_not_covered: return "BoundaryCellNotCovered";
        case Errc::degenerate_conditioning: return "DegenerateConditioning";
        case Errc::mismatched_support: return "MismatchedSupport";
        case Errc::invalid_argument: return "InvalidArgument";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
  public:
    Error(Errc code, const std::string& detail)
        : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}
    Errc code() const { return code_; }

  private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& detail) { throw Error(code, detail); }

}  // namespace mtm
