#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bbvp/fd.hpp"

namespace bbvp {

// Stationary spacetime metric on R x Omega: ten component functions of the
// spatial point, packed symmetrically.  Index 0 is the time direction.
class Metric4 {
public:
    Metric4();

    static int pack(int mu, int nu);

    void set(int mu, int nu, ScalarFn f);
    const ScalarFn& component(int mu, int nu) const;
    double operator()(int mu, int nu, const V3& x) const;

    static Metric4 minkowski();

private:
    std::array<ScalarFn, 10> comp_;
};

// Lapse/shift/spatial-metric presentation.  The shift is given with the
// index up; g yields covariant spatial components.
struct StationaryTriple {
    std::function<double(int, int, const V3&)> g;
    std::function<double(int, const V3&)> X;
    ScalarFn N;
};

// Quotient presentation: norm of the stationary Killing field, the
// connection one-form of the time bundle, and the quotient metric.
struct ProjectionTriple {
    ScalarFn u;
    std::function<double(int, const V3&)> theta;
    std::function<double(int, int, const V3&)> g_S;
};

Metric4 assemble_adm(const StationaryTriple& t);
Metric4 assemble_projection(const ProjectionTriple& p);

// Throws std::domain_error unless g00 < 0 and the spatial block is positive
// definite at x.
void check_causal(const Metric4& g, const V3& x);

struct Fixture {
    std::string name;
    Metric4 metric;
    StationaryTriple triple;
    ProjectionTriple projection;
    // Probes must stay outside this radius (coordinate sphere enclosing the
    // horizon and ergoregion for the rotating fixture).
    double excluded_radius = 0.0;
};

Fixture fixture_minkowski_exterior();
Fixture fixture_schwarzschild(double m);
Fixture fixture_kerr(double m, double a);

// Deterministic probe batteries: annulus 1.1 <= |x| <= 5 and the unit
// sphere.  Directions are isotropic, radii uniform.
std::vector<V3> probe_points(int n, std::uint64_t seed,
                             double r_min = 1.1, double r_max = 5.0);
std::vector<V3> boundary_points(int n, std::uint64_t seed);

}  // namespace bbvp
