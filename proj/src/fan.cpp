#include "conival/fan.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace conival {

Fan Fan::unchecked(int ambient_dim, std::vector<Cone> cones) {
    Fan f(ambient_dim);
    std::sort(cones.begin(), cones.end(), [](const Cone& a, const Cone& b) { return a.key() < b.key(); });
    for (size_t i = 0; i + 1 < cones.size(); ++i)
        if (cones[i].key() == cones[i + 1].key())
            throw std::logic_error("duplicate cone in fan: " + cones[i].key());
    if (!cones.empty()) {
        f.hulls_ = {cones.front().lin_hull(), cones.front().lineality_space()};
        for (const Cone& c : cones) {
            if (c.ambient_dim() != ambient_dim) throw std::invalid_argument("fan cone has wrong ambient dimension");
            if (c.lin_hull() != f.hulls_[0])
                throw std::invalid_argument("cones in a fan must share their linear hull: " + c.key() +
                                            " vs " + cones.front().key());
            if (c.lineality_space() != f.hulls_[1])
                throw std::logic_error("cones in a fan must share their lineality space: " + c.key());
        }
    }
    f.cones_ = std::move(cones);
    return f;
}

const Subspace& Fan::lin_hull() const {
    if (empty()) throw std::logic_error("empty fan has no linear hull");
    return hulls_[0];
}

const Subspace& Fan::lineality() const {
    if (empty()) throw std::logic_error("empty fan has no lineality space");
    return hulls_[1];
}

bool Fan::contains_cone(const Cone& c) const {
    return std::any_of(cones_.begin(), cones_.end(), [&](const Cone& x) { return x.key() == c.key(); });
}

Fan validate_fan(int ambient_dim, std::vector<Cone> cones) {
    std::map<std::string, Cone> dedup;
    for (Cone& c : cones) dedup.emplace(c.key(), std::move(c));
    std::vector<Cone> set;
    set.reserve(dedup.size());
    for (auto& [key, c] : dedup) set.push_back(std::move(c));

    for (size_t i = 0; i < set.size(); ++i)
        for (size_t j = i + 1; j < set.size(); ++j) {
            const Cone e = intersect(set[i], set[j]);
            if (!is_face_of(e, set[i]) || !is_face_of(e, set[j]))
                throw std::invalid_argument("not a fan: intersection of " + set[i].key() + " and " +
                                            set[j].key() + " is not a common face");
        }
    return Fan::unchecked(ambient_dim, std::move(set));
}

Fan fan_intersect(const Fan& fan, const Vec& normal, Side side) {
    if (fan.empty()) return Fan(fan.ambient_dim());
    if (normal.size() != fan.ambient_dim()) throw std::invalid_argument("hyperplane normal has wrong dimension");
    if (is_zero_vec(fan.lin_hull().project(normal)))
        throw std::invalid_argument("hyperplane does not cut the fan's linear hull");

    std::vector<Cone> out;
    for (const Cone& c : fan.cones()) {
        // relint(C) cap S != {}: equations + strict facet inequalities + the side condition.
        std::vector<LinearConstraint> sys;
        for (const Vec& e : c.equations()) sys.push_back({e, Rel::EQ});
        for (const Vec& a : c.inequalities()) sys.push_back({a, Rel::LT});
        switch (side) {
            case Side::le: sys.push_back({normal, Rel::LE}); break;
            case Side::ge: sys.push_back({-normal, Rel::LE}); break;
            case Side::eq: sys.push_back({normal, Rel::EQ}); break;
        }
        if (!feasible(fan.ambient_dim(), sys)) continue;

        std::vector<Vec> eqs = c.equations();
        std::vector<Vec> ineqs = c.inequalities();
        if (side == Side::eq)
            eqs.push_back(normal);
        else
            ineqs.push_back(side == Side::le ? normal : Vec(-normal));
        out.push_back(Cone::from_halfspaces(fan.ambient_dim(), std::move(eqs), std::move(ineqs)));
    }
    // Surviving cones are pairwise distinct (two cones of the original fan
    // whose relative interiors meet S cannot have equal intersections with S),
    // which Fan::unchecked asserts for us.
    return Fan::unchecked(fan.ambient_dim(), std::move(out));
}

}  // namespace conival
