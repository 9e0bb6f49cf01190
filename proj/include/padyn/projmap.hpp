#pragma once

#include <padyn/algpoint.hpp>
#include <padyn/mpoly.hpp>
#include <padyn/parser.hpp>

#include <optional>

namespace padyn {

struct NotHomogeneous : std::domain_error {
    explicit NotHomogeneous(const std::string& m) : std::domain_error(m) {}
};
struct UnequalDegrees : std::domain_error {
    explicit UnequalDegrees(const std::string& m) : std::domain_error(m) {}
};
struct ZeroMap : std::domain_error {
    explicit ZeroMap(const std::string& m) : std::domain_error(m) {}
};
struct PositiveDimensionalIntersection : std::logic_error {
    explicit PositiveDimensionalIntersection(const std::string& m) : std::logic_error(m) {}
};
struct PositiveDimensionalFiber : std::runtime_error {
    explicit PositiveDimensionalFiber(const std::string& m) : std::runtime_error(m) {}
};
struct NotInvariant : std::domain_error {
    explicit NotInvariant(const std::string& m) : std::domain_error(m) {}
};
struct InconsistentSamples : std::runtime_error {
    explicit InconsistentSamples(const std::string& m) : std::runtime_error(m) {}
};

/// Dominant rational self-map of the projective plane: three equal-degree
/// homogeneous components in (X, Y, Z) with gcd 1.
struct ProjMap {
    std::array<MPoly, 3> comp;
    int deg = 0;

    static ProjMap normalize(std::array<MPoly, 3> components);
    static ProjMap identity();
    static ProjMap from_definition(const MapDefinition& def);
    /// Linear map from an invertible 3x3 Gaussian-rational matrix.
    static ProjMap linear(const std::array<std::array<GRat, 3>, 3>& m);

    bool operator==(const ProjMap& o) const;
    std::string str() const;
};

ProjMap compose(const ProjMap& f, const ProjMap& g);  // f after g
ProjMap iterate(const ProjMap& f, int n);

/// [deg f, deg f^2, ..., deg f^N]; throws ResourceCap past term_cap.
std::vector<int> degree_sequence(const ProjMap& f, int N, long term_cap = 40'000'000);

MPoly jacobian_det(const ProjMap& f);

struct CriticalComponent {
    MPoly curve;  // normalized squarefree factor
    int multiplicity;
};
std::vector<CriticalComponent> critical_locus(const ProjMap& f);

/// Evaluate f at a point; nullopt when every component vanishes there.
std::optional<PPoint> apply_map(const ProjMap& f, const PPoint& x);
/// Evaluate at a Gaussian point (same convention).
std::optional<std::array<GRat, 3>> apply_map_gaussian(const ProjMap& f, const std::array<GRat, 3>& x);

/// Common zeros of up to three homogeneous trivariate polynomials (a finite
/// set; throws PositiveDimensionalIntersection otherwise).
std::vector<std::pair<PPoint, int>> solve_common_zeros(const std::vector<MPoly>& polys);

std::vector<PPoint> indeterminacy(const ProjMap& f);

struct CollapsedCurve {
    MPoly curve;   // irreducible-over-the-run component of the critical locus
    PPoint image;  // the point the curve collapses to
};
std::vector<CollapsedCurve> collapsed_curves(const ProjMap& f);

/// Bundle for an iterate f^k with the data needed for finiteness tests.
struct IterateData {
    ProjMap base;
    int k = 1;
    ProjMap composed;
    std::vector<PPoint> indeterminacy_set;  // exact, complete
    std::vector<CollapsedCurve> collapsed;  // of the iterate
};
IterateData make_iterate_data(const ProjMap& f, int k);

struct FiniteCheck {
    bool finite;
    std::string reason;
};
FiniteCheck is_finite_at(const IterateData& fk, const PPoint& p);

struct StabilityCertificate {
    bool stable = false;
    std::vector<int> degrees;               // exact degree sequence
    bool degrees_multiplicative = false;    // deg f^n == (deg f)^n for n <= N
    struct OrbitRecord {
        MPoly curve;
        std::vector<PPoint> orbit;  // image point orbit
        bool periodic = false;
        int period = 0, preperiod = 0;
        int hits_indeterminacy_at = -1;  // -1: avoids indeterminacy
    };
    std::vector<OrbitRecord> collapsed_orbits;
    std::string summary;
};
StabilityCertificate is_algebraically_stable_up_to(const ProjMap& f, int N);

/// All solutions of f(x) = q with multiplicity; q Gaussian.
std::vector<std::pair<PPoint, int>> preimages(const ProjMap& f, const PPoint& q);

/// Generic fiber count over seeded rational sample points; `avoid` lists
/// forms whose zero sets samples must miss (critical values, collapse images,
/// special curves).
int topological_degree(const ProjMap& f, int samples, unsigned seed,
                       const std::vector<MPoly>& avoid = {});

struct LineRestriction {
    MPoly line;                    // invariant coordinate line, e.g. Y
    std::string chart;             // description like "z = Z/X"
    int num_idx = 2, den_idx = 0;  // chart coordinate = coord[num]/coord[den]
    UPoly num, den;                // induced map t -> num(t)/den(t), reduced
    int map_degree = 0;            // max(deg num, deg den)

    bool is_polynomial() const { return den.degree() == 0; }
    bool is_translation() const;
};

/// Restriction of f to an invariant coordinate line {var == 0}; the chart
/// coordinate is coords[num_idx]/coords[den_idx].
LineRestriction restrict_to_line(const ProjMap& f, const std::string& line_var, int num_idx,
                                 int den_idx);

}  // namespace padyn
