#pragma once

#include <span>
#include <string>

#include "pcr3bp/periodicity.hpp"
#include "pcr3bp/types.hpp"

namespace pcr3bp {

/// Mass ratio used by the built-in examples. Reproduces the tabulated Jacobi constants to ~1e-12.
inline constexpr double kExampleMu = 0.00095387535;
/// Sun-Jupiter mass ratio rounded to six significant digits.
inline constexpr double kNominalMu = 0.000953875;

struct ReferenceExample {
    int id;
    std::string name;
    RotatingState initial;
    PeriodWindow window;
    double period;
    double jacobi;
    double area;
    /// Tolerances from the acceptance criteria.
    double period_tol;
    double jacobi_tol;
    double area_tol;
    double identity_tol;
};

std::span<const ReferenceExample> reference_examples();

/// Throws Domain for ids outside 1..4.
const ReferenceExample &reference_example(int id);

} // namespace pcr3bp
