#include "conival/projection.hpp"

#include "conival/arrangement.hpp"

#include <map>
#include <optional>
#include <stdexcept>

namespace conival {

ProjectionResult metric_projection(const FaceLattice& lat, const Vec& x) {
    const Cone& c = lat.parent();
    if (x.size() != c.ambient_dim()) throw std::invalid_argument("point has wrong dimension");
    std::optional<ProjectionResult> found;
    for (const Face& f : lat.faces()) {
        Vec y = f.cone.lin_hull().project(x);
        if (!f.cone.relint_contains(y)) continue;
        Vec w = x - y;
        if (!normal_cone(c, f).contains(w)) continue;
        if (found) throw std::logic_error("metric projection accepted a second face");
        found = ProjectionResult{std::move(y), f, w.dot(w)};
    }
    if (!found) throw std::logic_error("metric projection accepted no face");
    return *std::move(found);
}

ProjectionResult metric_projection(const Cone& c, const Vec& x) {
    return metric_projection(face_lattice(c), x);
}

Cone pi_F(const Cone& c, const Face& f) {
    Cone cell = minkowski_sum(f.cone, normal_cone(c, f));
    // dim F + dim N_F C = d and the sum is direct, so the cell is full-dimensional.
    if (!cell.is_full_dimensional()) throw std::logic_error("Moreau cell is not full-dimensional");
    return cell;
}

Fan moreau_fan(const Cone& c) {
    const FaceLattice lat = face_lattice(c);
    std::vector<Cone> cells;
    cells.reserve(static_cast<size_t>(lat.size()));
    for (const Face& f : lat.faces()) cells.push_back(pi_F(c, f));
    Fan fan = validate_fan(c.ambient_dim(), std::move(cells));

    // Completeness: refine space by all cell facets; every region of that
    // arrangement must lie in some cell, hence the cells cover R^d.
    std::vector<Vec> normals;
    for (const Cone& cell : fan.cones())
        for (const Vec& a : cell.inequalities()) normals.push_back(a);
    const Arrangement refinement(c.ambient_dim(), normals);
    const Fan refined = regions(refinement);
    for (const Cone& region : refined.cones()) {
        bool covered = false;
        for (const Cone& cell : fan.cones())
            if (cell.contains(region)) {
                covered = true;
                break;
            }
        if (!covered) throw std::logic_error("Moreau cells do not cover the space");
    }
    return fan;
}

Poset face_poset(const FaceLattice& lat) {
    return Poset(lat.size(), [&](int i, int j) { return lat.leq(i, j); });
}

IntervalPoset interval_poset(const Poset& p) {
    std::vector<std::pair<int, int>> intervals;
    for (int a = 0; a < p.size(); ++a)
        for (int c = 0; c < p.size(); ++c)
            if (p.leq(a, c)) intervals.emplace_back(a, c);
    Poset order(static_cast<int>(intervals.size()), [&](int i, int j) {
        // reverse inclusion of intervals
        return p.leq(intervals[static_cast<size_t>(i)].first, intervals[static_cast<size_t>(j)].first) &&
               p.leq(intervals[static_cast<size_t>(j)].second, intervals[static_cast<size_t>(i)].second);
    });
    return IntervalPoset{std::move(intervals), std::move(order)};
}

CheckReport check_moreau_isomorphism(const Cone& c) {
    const FaceLattice lat = face_lattice(c);
    const IntervalPoset ip = interval_poset(face_poset(lat));
    const Fan fan = moreau_fan(c);

    // Every face of every Moreau cell, deduplicated.
    std::vector<Cone> mfaces;
    std::map<std::string, int> index;
    for (const Cone& cell : fan.cones()) {
        const FaceLattice cell_lat = face_lattice(cell);
        for (const Face& g : cell_lat.faces())
            if (index.emplace(g.cone.key(), static_cast<int>(mfaces.size())).second) mfaces.push_back(g.cone);
    }

    if (mfaces.size() != ip.intervals.size())
        return {false, "counts differ: " + std::to_string(ip.intervals.size()) + " intervals vs " +
                           std::to_string(mfaces.size()) + " Moreau faces"};

    const Poset mposet(static_cast<int>(mfaces.size()), [&](int i, int j) {
        return mfaces[static_cast<size_t>(j)].contains(mfaces[static_cast<size_t>(i)]);
    });

    std::vector<Cone> ncones, cells;
    for (int i = 0; i < lat.size(); ++i) {
        ncones.push_back(normal_cone(c, lat.face(i)));
        cells.push_back(minkowski_sum(lat.face(i).cone, ncones.back()));
    }

    std::vector<int> map_to;
    for (const auto& [a, g] : ip.intervals) {
        const Cone image = minkowski_sum(lat.face(a).cone, ncones[static_cast<size_t>(g)]);
        auto it = index.find(image.key());
        if (it == index.end())
            return {false, "F + N_G C for the interval [" + std::to_string(a) + ", " + std::to_string(g) +
                               "] is not a face of the Moreau fan"};
        map_to.push_back(it->second);
    }
    if (!ip.poset.isomorphic_via(map_to, mposet))
        return {false, "the interval map is not an order isomorphism"};

    // Cells intersect along the common-face formula.
    for (size_t i = 0; i < cells.size(); ++i)
        for (size_t j = i; j < cells.size(); ++j) {
            const Cone lhs = intersect(cells[i], cells[j]);
            const Cone rhs = minkowski_sum(intersect(lat.face(static_cast<int>(i)).cone,
                                                     lat.face(static_cast<int>(j)).cone),
                                           intersect(ncones[i], ncones[j]));
            if (!lhs.equal(rhs))
                return {false, "cell intersection formula fails for faces " + std::to_string(i) + ", " +
                                   std::to_string(j)};
        }

    return {true, std::to_string(ip.intervals.size()) +
                      " intervals map order-isomorphically onto the Moreau faces; "
                      "cell intersections match (F cap G) + (N_F cap N_G)"};
}

}  // namespace conival
