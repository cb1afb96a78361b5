#include "conival/arrangement.hpp"

#include "conival/linalg.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace conival {

namespace {

/** The subspace normal^perp in R^d. */
Subspace hyperplane_of(int d, const Vec& normal) {
    return Subspace::span(d, kernel_basis(stack_rows({normal}, d)));
}

std::vector<Vec> canonical_normals(const Subspace& u, const std::vector<Vec>& normals) {
    std::vector<Vec> out;
    for (const Vec& a : normals) {
        if (a.size() != u.ambient_dim()) throw std::invalid_argument("normal has wrong dimension");
        Vec p = u.project(a);
        if (is_zero_vec(p))
            throw std::invalid_argument("normal is zero or orthogonal to the carrier subspace");
        out.push_back(primitive(p, /*sign_normalize=*/true));
    }
    std::sort(out.begin(), out.end(), vec_less);
    out.erase(std::unique(out.begin(), out.end(), vec_eq), out.end());
    return out;
}

}  // namespace

Arrangement::Arrangement(int ambient_dim, const std::vector<Vec>& normals)
    : Arrangement(Subspace::full(ambient_dim), normals) {}

Arrangement::Arrangement(Subspace u, const std::vector<Vec>& normals)
    : u_(std::move(u)), normals_(canonical_normals(u_, normals)) {}

Subspace Arrangement::center() const {
    Subspace c = u_;
    for (const Vec& a : normals_) c = c.intersect(hyperplane_of(ambient_dim(), a));
    return c;
}

std::optional<int> Arrangement::is_singleton() const {
    if (size() == 1) return dim();
    return std::nullopt;
}

int Arrangement::find_normal(const Vec& normal) const {
    if (normal.size() != ambient_dim()) return -1;
    Vec p = u_.project(normal);
    if (is_zero_vec(p)) return -1;
    p = primitive(p, /*sign_normalize=*/true);
    for (size_t i = 0; i < normals_.size(); ++i)
        if (vec_eq(normals_[i], p)) return static_cast<int>(i);
    return -1;
}

std::string Arrangement::key() const {
    std::string s = "A[" + u_.key() + "]";
    for (const Vec& a : normals_) s += "|" + vec_key(a);
    return s;
}

FlatsLattice::FlatsLattice(std::vector<Subspace> flats, Poset poset)
    : flats_(std::move(flats)), poset_(std::move(poset)) {
    for (int i = 0; i < size(); ++i) index_.emplace(flats_[static_cast<size_t>(i)].key(), i);
}

int FlatsLattice::index_of(const Subspace& s) const {
    auto it = index_.find(s.key());
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> FlatsLattice::of_dim(int k) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (flats_[static_cast<size_t>(i)].dim() == k) out.push_back(i);
    return out;
}

FlatsLattice flats_lattice(const Arrangement& a) {
    const int d = a.ambient_dim();
    std::vector<Subspace> hyperplanes;
    for (const Vec& n : a.normals()) hyperplanes.push_back(hyperplane_of(d, n));

    std::map<std::string, Subspace> seen;
    std::deque<Subspace> queue{a.subspace()};
    seen.emplace(a.subspace().key(), a.subspace());
    while (!queue.empty()) {
        Subspace l = std::move(queue.front());
        queue.pop_front();
        for (const Subspace& h : hyperplanes) {
            if (h.contains(l)) continue;  // the hyperplane does not cut L
            Subspace m = l.intersect(h);
            if (seen.emplace(m.key(), m).second) queue.push_back(m);
        }
    }

    std::vector<Subspace> flats;
    flats.reserve(seen.size());
    for (auto& [key, s] : seen) flats.push_back(std::move(s));
    std::sort(flats.begin(), flats.end(), [](const Subspace& x, const Subspace& y) {
        return x.dim() != y.dim() ? x.dim() > y.dim() : x.key() < y.key();
    });

    Poset poset(static_cast<int>(flats.size()), [&](int i, int j) {
        return flats[static_cast<size_t>(i)].contains(flats[static_cast<size_t>(j)]);
    });
    return FlatsLattice(std::move(flats), std::move(poset));
}

int CharPoly::degree() const {
    for (int k = static_cast<int>(coeff.size()) - 1; k >= 0; --k)
        if (coeff[static_cast<size_t>(k)] != 0) return k;
    return -1;
}

Integer CharPoly::at(int k) const {
    if (k < 0 || k >= static_cast<int>(coeff.size())) return Integer(0);
    return coeff[static_cast<size_t>(k)];
}

Rational CharPoly::operator()(const Rational& t) const {
    Rational v(0);
    for (int k = degree(); k >= 0; --k) v = v * t + Rational(at(k));
    return v;
}

std::string CharPoly::to_string() const {
    const int deg = degree();
    if (deg < 0) return "0";
    std::string s;
    for (int k = deg; k >= 0; --k) {
        const Integer c = at(k);
        if (c == 0) continue;
        const Integer mag = abs(c);
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        if (mag != 1 || k == 0) s += mag.str();
        if (k >= 1) {
            s += "t";
            if (k >= 2) s += "^" + std::to_string(k);
        }
    }
    return s;
}

bool operator==(const CharPoly& p, const CharPoly& q) {
    const int deg = std::max(p.degree(), q.degree());
    for (int k = 0; k <= deg; ++k)
        if (p.at(k) != q.at(k)) return false;
    return true;
}

CharPoly operator+(const CharPoly& p, const CharPoly& q) {
    CharPoly r(std::max({p.degree(), q.degree(), 0}));
    for (int k = 0; k < static_cast<int>(r.coeff.size()); ++k) r.coeff[static_cast<size_t>(k)] = p.at(k) + q.at(k);
    return r;
}

CharPoly whitney_numbers(const Arrangement& a) {
    const FlatsLattice lat = flats_lattice(a);
    CharPoly p(a.ambient_dim());
    for (int i = 0; i < lat.size(); ++i)
        p.coeff[static_cast<size_t>(lat.flat(i).dim())] += abs(lat.mobius(lat.bottom(), i));
    return p;
}

namespace {

CharPoly delres_rec(const Arrangement& a, std::map<std::string, CharPoly>& memo) {
    if (auto k = a.is_singleton()) {
        CharPoly p(*k);
        p.coeff[static_cast<size_t>(*k)] = 1;
        p.coeff[static_cast<size_t>(*k - 1)] = 1;
        return p;
    }
    auto it = memo.find(a.key());
    if (it != memo.end()) return it->second;
    const Vec h = a.normals().back();
    const CharPoly p = delres_rec(deletion(a, h), memo) + delres_rec(restriction(a, h), memo);
    memo.emplace(a.key(), p);
    return p;
}

}  // namespace

CharPoly char_poly_delres(const Arrangement& a) {
    if (a.size() == 0)
        throw std::invalid_argument("deletion/restriction recursion needs at least one hyperplane");
    std::map<std::string, CharPoly> memo;
    return delres_rec(a, memo);
}

Arrangement deletion(const Arrangement& a, const Vec& normal) {
    const int idx = a.find_normal(normal);
    if (idx < 0) throw std::invalid_argument("hyperplane to delete is not in the arrangement");
    std::vector<Vec> rest = a.normals();
    rest.erase(rest.begin() + idx);
    return Arrangement(a.subspace(), rest);
}

Arrangement restriction(const Arrangement& a, const Vec& normal) {
    const int idx = a.find_normal(normal);
    if (idx < 0) throw std::invalid_argument("hyperplane to restrict to is not in the arrangement");
    const Subspace h = a.subspace().intersect(hyperplane_of(a.ambient_dim(), a.normals()[static_cast<size_t>(idx)]));
    std::vector<Vec> traces;
    for (int i = 0; i < a.size(); ++i) {
        if (i == idx) continue;
        Vec p = h.project(a.normals()[static_cast<size_t>(i)]);
        if (!is_zero_vec(p)) traces.push_back(std::move(p));
    }
    return Arrangement(h, traces);
}

Arrangement localization(const Arrangement& a, const Subspace& l) {
    if (flats_lattice(a).index_of(l) < 0) throw std::invalid_argument("localization point is not a flat");
    std::vector<Vec> kept;
    for (const Vec& n : a.normals()) {
        bool contains_l = true;
        for (const Vec& b : l.basis())
            if (n.dot(b) != 0) {
                contains_l = false;
                break;
            }
        if (contains_l) kept.push_back(n);
    }
    return Arrangement(a.subspace(), kept);
}

Fan regions(const Arrangement& a) {
    const int d = a.ambient_dim();
    const std::vector<Vec> u_eqs = a.subspace().orthogonal_complement().basis();
    std::vector<LinearConstraint> sys;
    for (const Vec& e : u_eqs) sys.push_back({e, Rel::EQ});

    std::vector<Cone> out;
    std::vector<Vec> facets;  // -sigma_i a_i so far, in the cone convention a.x <= 0
    std::function<void(int)> walk = [&](int level) {
        if (level == a.size()) {
            out.push_back(Cone::from_halfspaces(d, u_eqs, facets));
            return;
        }
        const Vec& n = a.normals()[static_cast<size_t>(level)];
        for (int sigma : {+1, -1}) {
            // sigma * (n.x) > 0, i.e. (-sigma n).x < 0
            Vec strict = sigma > 0 ? Vec(-n) : n;
            sys.push_back({strict, Rel::LT});
            if (feasible(d, sys)) {
                facets.push_back(strict);
                walk(level + 1);
                facets.pop_back();
            }
            sys.pop_back();
        }
    };
    walk(0);
    return Fan::unchecked(d, std::move(out));
}

}  // namespace conival
