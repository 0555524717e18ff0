#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include "testfn/quadrature.hpp"

namespace testfn {

/// One-sided difference schedule: geometric steps h_k = h0 * 2^-k,
/// stopping when successive extrapolated estimates agree.
struct StepSchedule {
    double initial_fraction = 0.125;  // h0 as a fraction of the gap to the domain edge
    double rel_tol = 1e-8;
    int max_halvings = 40;
    bool force_numeric = false;  // skip exact representation slopes, always difference
};

/// Every knob the library exposes, with its default.  The CLI maps
/// --tolerance-overrides KEY=VAL onto the fields by name.
struct ToleranceSet {
    QuadratureControl quad{};                  // quad_abs, quad_rel, quad_depth
    double convexity_rel = 1e-9;               // midpoint convexity slack, scaled by local value
    StepSchedule deriv{};                      // deriv_rel, deriv_max_halvings
    double riesz_negative_rel = 1e-9;          // negative-mass detection threshold
    double heuristic_growth_factor = 1.05;     // divergent-heuristic growth per cutoff doubling
    int heuristic_doublings = 5;               // consecutive growing doublings required
    int heuristic_max_doublings = 24;
    double improper_value_rel = 1e-10;         // cutoff refinement stop for convergent improper integrals
    double ibp_tol_smooth = 1e-8;
    double ibp_tol_points = 1e-12;
    double positivity_abs = 1e-12;
    double laplacian_rel = 1e-6;               // discrete Laplacian floor, scaled by sup/h^2
    double boundary_vanish_abs = 1e-8;
    int grid_radii = 256;
    int grid_angles = 64;
    std::array<double, 3> vanish_epsilons{1e-1, 1e-2, 1e-3};

    void apply_override(const std::string& key, double val) {
        if (key == "quad_abs") quad.abs_tol = val;
        else if (key == "quad_rel") quad.rel_tol = val;
        else if (key == "quad_depth") quad.max_depth = static_cast<int>(val);
        else if (key == "convexity_rel") convexity_rel = val;
        else if (key == "deriv_rel") deriv.rel_tol = val;
        else if (key == "deriv_max_halvings") deriv.max_halvings = static_cast<int>(val);
        else if (key == "riesz_negative_rel") riesz_negative_rel = val;
        else if (key == "heuristic_growth_factor") heuristic_growth_factor = val;
        else if (key == "heuristic_doublings") heuristic_doublings = static_cast<int>(val);
        else if (key == "heuristic_max_doublings") heuristic_max_doublings = static_cast<int>(val);
        else if (key == "improper_value_rel") improper_value_rel = val;
        else if (key == "ibp_tol_smooth") ibp_tol_smooth = val;
        else if (key == "ibp_tol_points") ibp_tol_points = val;
        else if (key == "positivity_abs") positivity_abs = val;
        else if (key == "laplacian_rel") laplacian_rel = val;
        else if (key == "boundary_vanish_abs") boundary_vanish_abs = val;
        else if (key == "grid_radii") grid_radii = static_cast<int>(val);
        else if (key == "grid_angles") grid_angles = static_cast<int>(val);
        else throw std::invalid_argument("unknown tolerance key: " + key);
    }
};

}  // namespace testfn
