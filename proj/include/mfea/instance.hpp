#ifndef MFEA_INSTANCE_HPP
#define MFEA_INSTANCE_HPP

#include <string>
#include <vector>

namespace mfea {

struct Point {
    double x = 0.0;
    double y = 0.0;
    bool operator==(const Point&) const = default;
};

/// TSPLIB EUC_2D metric: Euclidean distance rounded to the nearest integer
/// (nint(x) = int(x + 0.5)).
int euc2d_distance(const Point& a, const Point& b);

/// Symmetric TSP over EUC_2D coordinates. City i (1-based) is coords[i-1].
struct TspInstance {
    std::string name;
    std::vector<Point> coords;

    int dimension() const { return static_cast<int>(coords.size()); }
    bool operator==(const TspInstance&) const = default;
};

/// Capacitated VRP with a single depot. Customer i (1-based) is
/// customer_coords[i-1] with demand demands[i-1]; the depot is not a gene.
struct CvrpInstance {
    std::string name;
    Point depot;
    std::vector<Point> customer_coords;
    std::vector<int> demands;
    int capacity = 0;

    int dimension() const { return static_cast<int>(customer_coords.size()); }
    bool operator==(const CvrpInstance&) const = default;
};

/// Checks the structural invariants; throws std::invalid_argument.
void validate(const TspInstance& inst);
void validate(const CvrpInstance& inst);

}  // namespace mfea

#endif
