#include "conival/cone.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace conival {

namespace {

struct VRep {
    std::vector<Vec> rays;
    std::vector<Vec> lineality;
};

struct HRep {
    std::vector<Vec> equations;
    std::vector<Vec> inequalities;
};

std::vector<Vec> rref_rows(int d, const std::vector<Vec>& gens) {
    if (gens.empty()) return {};
    Rref rr = rref(stack_rows(gens, d));
    std::vector<Vec> out;
    for (Eigen::Index i = 0; i < rr.mat.rows(); ++i) out.push_back(rr.mat.row(i).transpose());
    return out;
}

/**
 * Double description: V-representation of {x : E x = 0, a.x <= 0}.
 *
 * Start from the kernel of the equations (pure lineality) and add one
 * inequality at a time. When a constraint cuts the lineality space, one
 * basis direction turns into a ray and the rest are sheared into the
 * constraint's kernel. Otherwise new rays are generated from all
 * positive/negative ray pairs and pruned by the exact extremality test:
 * r spans an extreme ray iff the kernel of (equations + inequalities active
 * at r) has dimension lineality_dim + 1. That kernel equals the linear span
 * of the minimal face containing r, so the test is exact regardless of
 * redundancy among the processed inequalities.
 */
VRep double_description(int d, const std::vector<Vec>& eqs_in, const std::vector<Vec>& ineqs_in) {
    std::vector<Vec> eqs;
    for (const Vec& e : eqs_in)
        if (!is_zero_vec(e)) eqs.push_back(e);
    std::vector<Vec> lineality = kernel_basis(stack_rows(eqs, d));
    std::vector<Vec> rays;
    std::vector<Vec> processed;

    auto lineality_project = [&](const Vec& x) -> Vec {
        if (lineality.empty()) return x;
        return x - Subspace::span(d, lineality).project(x);
    };

    for (const Vec& a_raw : ineqs_in) {
        if (is_zero_vec(a_raw)) continue;
        Vec a = a_raw;
        processed.push_back(a);

        // Pivot case: the constraint cuts the lineality space.
        int pivot = -1;
        for (size_t i = 0; i < lineality.size(); ++i)
            if (a.dot(lineality[i]) != 0) { pivot = static_cast<int>(i); break; }
        if (pivot >= 0) {
            Vec l0 = lineality[static_cast<size_t>(pivot)];
            Rational al0 = a.dot(l0);
            if (al0 > 0) { l0 = -l0; al0 = -al0; }
            std::vector<Vec> new_lin;
            for (size_t i = 0; i < lineality.size(); ++i) {
                if (static_cast<int>(i) == pivot) continue;
                new_lin.push_back(lineality[i] - (a.dot(lineality[i]) / al0) * l0);
            }
            for (Vec& r : rays) r = r - (a.dot(r) / al0) * l0;
            rays.push_back(l0);
            lineality = std::move(new_lin);
            continue;
        }

        std::vector<Vec> pos, neg, zero;
        for (const Vec& r : rays) {
            Rational s = a.dot(r);
            if (s > 0) pos.push_back(r);
            else if (s < 0) neg.push_back(r);
            else zero.push_back(r);
        }
        if (pos.empty()) continue;  // constraint redundant on the current cone

        std::vector<Vec> candidates = zero;
        candidates.insert(candidates.end(), neg.begin(), neg.end());
        for (const Vec& p : pos)
            for (const Vec& n : neg) candidates.push_back(a.dot(p) * n - a.dot(n) * p);

        const int lin_dim = static_cast<int>(lineality.size());
        std::vector<Vec> kept;
        std::set<std::string> seen;
        for (const Vec& cand : candidates) {
            Vec c = lineality_project(cand);
            if (is_zero_vec(c)) continue;
            c = primitive(c);
            std::string k = vec_key(c);
            if (!seen.insert(k).second) continue;
            std::vector<Vec> active = eqs;
            for (const Vec& b : processed)
                if (b.dot(c) == 0) active.push_back(b);
            int minimal_face_dim = d - rank_of(stack_rows(active, d));
            if (minimal_face_dim == lin_dim + 1) kept.push_back(std::move(c));
        }
        rays = std::move(kept);
    }

    VRep out;
    out.lineality = rref_rows(d, lineality);
    Subspace lin_space = Subspace::span(d, out.lineality);
    std::set<std::string> seen;
    for (const Vec& r : rays) {
        Vec c = r - lin_space.project(r);
        if (is_zero_vec(c)) continue;
        c = primitive(c);
        if (seen.insert(vec_key(c)).second) out.rays.push_back(std::move(c));
    }
    std::sort(out.rays.begin(), out.rays.end(), vec_less);
    return out;
}

/** Canonical H-rep from a V-rep: run double description on the polar. */
HRep vrep_to_hrep(int d, const VRep& v) {
    VRep polar = double_description(d, v.lineality, v.rays);
    HRep h;
    h.equations = polar.lineality;     // RREF basis of lin(C)^perp
    h.inequalities = polar.rays;       // facet normals, canonical inside lin(C)
    return h;
}

VRep hrep_to_vrep(int d, const HRep& h) { return double_description(d, h.equations, h.inequalities); }

bool same_generators(const std::vector<Vec>& a, const std::vector<Vec>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (!vec_eq(a[i], b[i])) return false;
    return true;
}

}  // namespace

struct Cone::Data {
    int d = 0;
    std::optional<VRep> raw_v;
    std::optional<HRep> raw_h;

    mutable std::mutex mu;
    mutable std::optional<VRep> v;
    mutable std::optional<HRep> h;
    mutable std::optional<std::string> key;

    void fill() const {
        std::lock_guard<std::mutex> lock(mu);
        if (v && h) return;
        if (raw_v) {
            HRep ch = vrep_to_hrep(d, *raw_v);
            VRep cv = hrep_to_vrep(d, ch);
            if (raw_h) {
                // Cross-check an H-rep supplied alongside the generators.
                VRep other_v = hrep_to_vrep(d, *raw_h);
                HRep other_h = vrep_to_hrep(d, other_v);
                if (!same_generators(other_h.equations, ch.equations) ||
                    !same_generators(other_h.inequalities, ch.inequalities))
                    throw std::invalid_argument("Cone: V-rep and H-rep describe different cones");
            }
            v = std::move(cv);
            h = std::move(ch);
        } else {
            VRep cv = hrep_to_vrep(d, *raw_h);
            HRep ch = vrep_to_hrep(d, cv);
            v = std::move(cv);
            h = std::move(ch);
        }
    }

    const VRep& vrep() const {
        if (!v) fill();
        return *v;
    }
    const HRep& hrep() const {
        if (!h) fill();
        return *h;
    }
};

const Cone::Data& Cone::checked() const {
    if (!data_) throw std::logic_error("Cone: use of default-constructed handle");
    return *data_;
}

Cone Cone::from_generators(int ambient_dim, std::vector<Vec> rays, std::vector<Vec> lineality) {
    if (ambient_dim <= 0) throw std::invalid_argument("Cone: ambient dimension must be positive");
    auto data = std::make_shared<Data>();
    data->d = ambient_dim;
    VRep v;
    for (Vec& r : rays) {
        if (r.size() != ambient_dim) throw std::invalid_argument("Cone: ray dimension mismatch");
        if (!is_zero_vec(r)) v.rays.push_back(std::move(r));
    }
    for (Vec& l : lineality) {
        if (l.size() != ambient_dim) throw std::invalid_argument("Cone: lineality dimension mismatch");
        if (!is_zero_vec(l)) v.lineality.push_back(std::move(l));
    }
    data->raw_v = std::move(v);
    return Cone(std::move(data));
}

Cone Cone::from_halfspaces(int ambient_dim, std::vector<Vec> equations, std::vector<Vec> inequalities) {
    if (ambient_dim <= 0) throw std::invalid_argument("Cone: ambient dimension must be positive");
    auto data = std::make_shared<Data>();
    data->d = ambient_dim;
    HRep h;
    for (Vec& e : equations) {
        if (e.size() != ambient_dim) throw std::invalid_argument("Cone: equation dimension mismatch");
        if (!is_zero_vec(e)) h.equations.push_back(std::move(e));
    }
    for (Vec& a : inequalities) {
        if (a.size() != ambient_dim) throw std::invalid_argument("Cone: inequality dimension mismatch");
        if (!is_zero_vec(a)) h.inequalities.push_back(std::move(a));
    }
    data->raw_h = std::move(h);
    return Cone(std::move(data));
}

Cone Cone::from_both(int ambient_dim, std::vector<Vec> rays, std::vector<Vec> lineality,
                     std::vector<Vec> equations, std::vector<Vec> inequalities) {
    Cone c = from_generators(ambient_dim, std::move(rays), std::move(lineality));
    HRep h;
    for (Vec& e : equations)
        if (!is_zero_vec(e)) h.equations.push_back(std::move(e));
    for (Vec& a : inequalities)
        if (!is_zero_vec(a)) h.inequalities.push_back(std::move(a));
    c.data_->raw_h = std::move(h);
    c.data_->fill();  // triggers the cross-check
    return c;
}

Cone Cone::zero_cone(int ambient_dim) { return from_generators(ambient_dim, {}, {}); }

Cone Cone::full_space(int ambient_dim) {
    std::vector<Vec> lin;
    for (int i = 0; i < ambient_dim; ++i) lin.push_back(unit_vec(ambient_dim, i));
    return from_generators(ambient_dim, {}, std::move(lin));
}

Cone Cone::from_subspace(const Subspace& s) { return from_generators(s.ambient_dim(), {}, s.basis()); }

int Cone::ambient_dim() const { return checked().d; }

int Cone::dim() const {
    const Data& d = checked();
    return d.d - static_cast<int>(d.hrep().equations.size());
}

int Cone::lineality_dim() const { return static_cast<int>(checked().vrep().lineality.size()); }

const std::vector<Vec>& Cone::rays() const { return checked().vrep().rays; }
const std::vector<Vec>& Cone::lineality_basis() const { return checked().vrep().lineality; }
const std::vector<Vec>& Cone::equations() const { return checked().hrep().equations; }
const std::vector<Vec>& Cone::inequalities() const { return checked().hrep().inequalities; }

Subspace Cone::lin_hull() const {
    std::vector<Vec> gens = rays();
    const auto& lin = lineality_basis();
    gens.insert(gens.end(), lin.begin(), lin.end());
    return Subspace::span(ambient_dim(), gens);
}

Subspace Cone::lineality_space() const { return Subspace::span(ambient_dim(), lineality_basis()); }

bool Cone::contains(const Vec& x) const {
    if (x.size() != ambient_dim()) throw std::invalid_argument("Cone::contains: dimension mismatch");
    for (const Vec& e : equations())
        if (e.dot(x) != 0) return false;
    for (const Vec& a : inequalities())
        if (a.dot(x) > 0) return false;
    return true;
}

bool Cone::relint_contains(const Vec& x) const {
    if (x.size() != ambient_dim()) throw std::invalid_argument("Cone::relint_contains: dimension mismatch");
    for (const Vec& e : equations())
        if (e.dot(x) != 0) return false;
    for (const Vec& a : inequalities())
        if (a.dot(x) >= 0) return false;
    return true;
}

bool Cone::contains(const Cone& other) const {
    if (ambient_dim() != other.ambient_dim()) throw std::invalid_argument("Cone::contains: ambient mismatch");
    for (const Vec& r : other.rays())
        if (!contains(r)) return false;
    for (const Vec& l : other.lineality_basis())
        if (!contains(l) || !contains(Vec(-l))) return false;
    return true;
}

Vec Cone::relint_point() const {
    Vec p = Vec::Zero(ambient_dim());
    for (const Vec& r : rays()) p += r;
    return p;
}

const std::string& Cone::key() const {
    const Data& d = checked();
    {
        std::lock_guard<std::mutex> lock(d.mu);
        if (d.key) return *d.key;
    }
    const VRep& v = d.vrep();
    std::string k = "C" + std::to_string(d.d) + "|R:";
    for (const Vec& r : v.rays) { k += vec_key(r); k += ';'; }
    k += "|L:";
    for (const Vec& l : v.lineality) { k += vec_key(l); k += ';'; }
    std::lock_guard<std::mutex> lock(d.mu);
    if (!d.key) d.key = std::move(k);
    return *d.key;
}

bool Cone::equal(const Cone& other) const {
    if (ambient_dim() != other.ambient_dim()) throw std::invalid_argument("Cone::equal: ambient mismatch");
    return key() == other.key();
}

Cone Cone::polar() const {
    // C^polar = {y : y.r <= 0 for rays r, y.l = 0 for lineality l}
    return from_halfspaces(ambient_dim(), lineality_basis(), rays());
}

Cone Cone::negate() const {
    std::vector<Vec> neg;
    for (const Vec& r : rays()) neg.push_back(-r);
    return from_generators(ambient_dim(), std::move(neg), lineality_basis());
}

Cone intersect(const Cone& c, const Cone& d) {
    if (c.ambient_dim() != d.ambient_dim()) throw std::invalid_argument("intersect: ambient mismatch");
    std::vector<Vec> eqs = c.equations();
    const auto& de = d.equations();
    eqs.insert(eqs.end(), de.begin(), de.end());
    std::vector<Vec> ineqs = c.inequalities();
    const auto& di = d.inequalities();
    ineqs.insert(ineqs.end(), di.begin(), di.end());
    return Cone::from_halfspaces(c.ambient_dim(), std::move(eqs), std::move(ineqs));
}

Cone minkowski_sum(const Cone& c, const Cone& d) {
    if (c.ambient_dim() != d.ambient_dim()) throw std::invalid_argument("minkowski_sum: ambient mismatch");
    std::vector<Vec> rays = c.rays();
    const auto& dr = d.rays();
    rays.insert(rays.end(), dr.begin(), dr.end());
    std::vector<Vec> lin = c.lineality_basis();
    const auto& dl = d.lineality_basis();
    lin.insert(lin.end(), dl.begin(), dl.end());
    return Cone::from_generators(c.ambient_dim(), std::move(rays), std::move(lin));
}

bool is_face_of(const Cone& e, const Cone& c) {
    if (e.ambient_dim() != c.ambient_dim()) throw std::invalid_argument("is_face_of: ambient mismatch");
    if (!c.contains(e)) return false;
    Vec z = e.relint_point();
    // The minimal face of c containing z; e is a face iff it equals e.
    std::vector<Vec> eqs = c.equations();
    std::vector<Vec> rest;
    for (const Vec& a : c.inequalities()) {
        if (a.dot(z) == 0) eqs.push_back(a);
        else rest.push_back(a);
    }
    Cone minimal = Cone::from_halfspaces(c.ambient_dim(), std::move(eqs), std::move(rest));
    return minimal.equal(e);
}

FaceLattice face_lattice(const Cone& c) {
    const int d = c.ambient_dim();
    const std::vector<Vec>& ineqs = c.inequalities();
    const int m = static_cast<int>(ineqs.size());

    auto build = [&](const std::vector<int>& active) -> Cone {
        std::vector<Vec> eqs = c.equations();
        std::vector<Vec> rest;
        std::vector<bool> in(static_cast<size_t>(m), false);
        for (int i : active) in[static_cast<size_t>(i)] = true;
        for (int i = 0; i < m; ++i)
            (in[static_cast<size_t>(i)] ? eqs : rest).push_back(ineqs[static_cast<size_t>(i)]);
        return Cone::from_halfspaces(d, std::move(eqs), std::move(rest));
    };
    auto closure_of = [&](const Cone& f) -> std::vector<int> {
        std::vector<int> cl;
        for (int i = 0; i < m; ++i) {
            const Vec& a = ineqs[static_cast<size_t>(i)];
            bool vanishes = true;
            for (const Vec& r : f.rays())
                if (a.dot(r) != 0) { vanishes = false; break; }
            if (vanishes)
                for (const Vec& l : f.lineality_basis())
                    if (a.dot(l) != 0) { vanishes = false; break; }
            if (vanishes) cl.push_back(i);
        }
        return cl;
    };
    auto set_key = [](const std::vector<int>& s) {
        std::string k;
        for (int i : s) { k += std::to_string(i); k += ','; }
        return k;
    };

    FaceLattice lat;
    lat.parent_ = c;
    std::map<std::string, int> index_of;
    std::vector<std::vector<int>> frontier;

    std::vector<int> top_active = closure_of(c);  // empty: canonical inequalities are facets
    assert(top_active.empty() || m == 0);
    lat.faces_.push_back(Face{c, top_active, c.dim()});
    index_of[set_key(top_active)] = 0;
    frontier.push_back(top_active);

    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& active : frontier) {
            std::vector<bool> in(static_cast<size_t>(m), false);
            for (int i : active) in[static_cast<size_t>(i)] = true;
            for (int j = 0; j < m; ++j) {
                if (in[static_cast<size_t>(j)]) continue;
                std::vector<int> trial = active;
                trial.push_back(j);
                std::sort(trial.begin(), trial.end());
                Cone f = build(trial);
                std::vector<int> cl = closure_of(f);
                std::string k = set_key(cl);
                if (index_of.count(k)) continue;
                index_of[k] = static_cast<int>(lat.faces_.size());
                lat.faces_.push_back(Face{f, cl, f.dim()});
                next.push_back(cl);
            }
        }
        frontier = std::move(next);
    }

    std::sort(lat.faces_.begin(), lat.faces_.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim) return a.dim < b.dim;
        return a.cone.key() < b.cone.key();
    });
    for (int i = 0; i < lat.size(); ++i) {
        if (lat.faces_[static_cast<size_t>(i)].active.size() == static_cast<size_t>(m)) lat.min_index_ = i;
        if (lat.faces_[static_cast<size_t>(i)].active.empty()) lat.max_index_ = i;
    }
    assert(lat.min_index_ >= 0 && lat.max_index_ >= 0);
    return lat;
}

bool FaceLattice::leq(int i, int j) const {
    const auto& ai = faces_[static_cast<size_t>(i)].active;
    const auto& aj = faces_[static_cast<size_t>(j)].active;
    // face_i <= face_j iff active(i) contains active(j)
    return std::includes(ai.begin(), ai.end(), aj.begin(), aj.end());
}

std::vector<int> FaceLattice::faces_of_dim(int k) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (faces_[static_cast<size_t>(i)].dim == k) out.push_back(i);
    return out;
}

std::vector<int> FaceLattice::f_vector() const {
    std::vector<int> f(static_cast<size_t>(parent_.ambient_dim()) + 1, 0);
    for (const Face& face : faces_) f[static_cast<size_t>(face.dim)]++;
    return f;
}

Cone normal_cone(const Cone& c, const Face& f) {
    const auto& ineqs = c.inequalities();
    for (int i : f.active)
        if (i < 0 || i >= static_cast<int>(ineqs.size()))
            throw std::invalid_argument("normal_cone: face does not belong to this cone");
    // Sanity: the face must actually lie in c with the claimed actives tight.
    if (!c.contains(f.cone)) throw std::invalid_argument("normal_cone: face does not belong to this cone");
    std::vector<Vec> rays;
    for (int i : f.active) rays.push_back(ineqs[static_cast<size_t>(i)]);
    return Cone::from_generators(c.ambient_dim(), std::move(rays), c.equations());
}

Cone tangent_cone(const Cone& c, const Face& f) { return normal_cone(c, f).polar(); }

}  // namespace conival
