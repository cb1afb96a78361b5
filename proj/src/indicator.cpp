#include "conival/indicator.hpp"

#include "conival/detail/sampling.hpp"
#include "conival/linalg.hpp"
#include "conival/projection.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace conival {

// ---------------------------------------------------------------------------
// the group of indicator combinations

IndicatorElement::IndicatorElement(int ambient_dim) : d_(ambient_dim) {
    if (ambient_dim < 0) throw std::invalid_argument("negative ambient dimension");
}

IndicatorElement IndicatorElement::indicator(const Cone& c) {
    IndicatorElement f(c.ambient_dim());
    f.add_term(1, c);
    return f;
}

IndicatorElement IndicatorElement::one(int ambient_dim) {
    return indicator(Cone::full_space(ambient_dim));
}

void IndicatorElement::add_term(const Integer& coeff, const Cone& c) {
    if (c.ambient_dim() != d_) throw std::invalid_argument("term has wrong ambient dimension");
    if (coeff == 0) return;
    const std::string& key = c.key();
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const std::pair<Integer, Cone>& t, const std::string& k) {
                                   return t.second.key() < k;
                               });
    if (it != terms_.end() && it->second.key() == key) {
        it->first += coeff;
        if (it->first == 0) terms_.erase(it);
    } else {
        terms_.insert(it, {coeff, c});
    }
}

IndicatorElement operator+(const IndicatorElement& f, const IndicatorElement& g) {
    if (f.ambient_dim() != g.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
    IndicatorElement out = f;
    for (const auto& t : g.terms()) out.add_term(t.first, t.second);
    return out;
}

IndicatorElement operator-(const IndicatorElement& f, const IndicatorElement& g) { return f + (-g); }

IndicatorElement operator-(const IndicatorElement& f) {
    IndicatorElement out(f.ambient_dim());
    for (const auto& t : f.terms()) out.add_term(-t.first, t.second);
    return out;
}

IndicatorElement operator*(const Integer& c, const IndicatorElement& f) {
    IndicatorElement out(f.ambient_dim());
    for (const auto& t : f.terms()) out.add_term(c * t.first, t.second);
    return out;
}

Integer evaluate(const IndicatorElement& f, const Vec& x) {
    if (x.size() != f.ambient_dim()) throw std::invalid_argument("point has wrong dimension");
    Integer v = 0;
    for (const auto& t : f.terms())
        if (t.second.contains(x)) v += t.first;
    return v;
}

IndicatorElement pointwise_product(const IndicatorElement& f, const IndicatorElement& g) {
    if (f.ambient_dim() != g.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
    IndicatorElement out(f.ambient_dim());
    for (const auto& s : f.terms())
        for (const auto& t : g.terms()) out.add_term(s.first * t.first, intersect(s.second, t.second));
    return out;
}

IndicatorElement star_product(const IndicatorElement& f, const IndicatorElement& g) {
    if (f.ambient_dim() != g.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
    IndicatorElement out(f.ambient_dim());
    for (const auto& s : f.terms())
        for (const auto& t : g.terms()) out.add_term(s.first * t.first, minkowski_sum(s.second, t.second));
    return out;
}

IndicatorElement polar_map(const IndicatorElement& f) {
    IndicatorElement out(f.ambient_dim());
    for (const auto& t : f.terms()) out.add_term(t.first, t.second.polar());
    return out;
}

IndicatorElement euler_map(const IndicatorElement& f) {
    IndicatorElement out(f.ambient_dim());
    for (const auto& t : f.terms()) {
        const FaceLattice lat = face_lattice(t.second);
        for (const Face& face : lat.faces())
            out.add_term(face.dim % 2 == 0 ? t.first : -t.first, face.cone);
    }
    return out;
}

Integer euler_characteristic(const Cone& c) {
    const FaceLattice lat = face_lattice(c);
    Integer sum = 0;
    for (const Face& f : lat.faces()) sum += (f.dim % 2 == 0) ? 1 : -1;
    // closed form: the lineality recursion collapses a cone to its pointed
    // part, which contributes 0 unless it is the origin
    const Integer expect = c.is_subspace() ? Integer(c.dim() % 2 == 0 ? 1 : -1) : Integer(0);
    assert(sum == expect);
    (void)expect;
    return sum;
}

IndicatorElement vk(const Cone& c, int k) {
    if (k < 0 || k > c.ambient_dim()) throw std::invalid_argument("face dimension out of range");
    IndicatorElement out(c.ambient_dim());
    const FaceLattice lat = face_lattice(c);
    for (int fi : lat.faces_of_dim(k)) out.add_term(1, pi_F(c, lat.face(fi)));
    return out;
}

IndicatorElement vk_arrangement(const Arrangement& a, int k) {
    IndicatorElement out(a.ambient_dim());
    const Fan fan = regions(a);
    for (int i = 0; i < fan.size(); ++i) out = out + vk(fan.cone(i), k);
    return out;
}

// ---------------------------------------------------------------------------
// canonical forms: refinement arrangement + value per open sign cell

namespace {

/// Hyperplanes supporting all facets and lin-hull complements of all terms.
Arrangement refinement_of(std::initializer_list<const IndicatorElement*> elems, int d) {
    std::vector<Vec> normals;
    for (const IndicatorElement* f : elems)
        for (const auto& t : f->terms()) {
            for (const Vec& a : t.second.inequalities()) normals.push_back(a);
            for (const Vec& e : t.second.equations()) normals.push_back(e);
        }
    return Arrangement(d, normals);
}

struct CellData {
    std::string sign;
    Vec witness;
};

/**
 * All nonempty relatively open sign cells of the refinement, each with an
 * exact interior witness. The search tree is split at a shallow frontier and
 * the subtrees are walked in parallel; cells are sorted by sign vector, so
 * the result does not depend on the thread count.
 */
std::vector<CellData> enumerate_cells(const Arrangement& ref, bool full_dim_only) {
    const int d = ref.ambient_dim();
    const std::vector<Vec>& normals = ref.normals();
    const size_t n = normals.size();
    const std::string opts = full_dim_only ? "-+" : "-0+";

    struct Node {
        std::string sign;
        std::vector<LinearConstraint> cons;
        Vec witness;
    };

    auto expand = [&](const Node& nd, std::vector<Node>& out) {
        const Vec& a = normals[nd.sign.size()];
        for (char o : opts) {
            std::vector<LinearConstraint> cons = nd.cons;
            if (o == '0')
                cons.push_back({a, Rel::EQ});
            else if (o == '-')
                cons.push_back({a, Rel::LT});
            else
                cons.push_back({Vec(-a), Rel::LT});
            if (auto w = feasible(d, cons)) out.push_back({nd.sign + o, std::move(cons), *w});
        }
    };

    std::vector<Node> frontier;
    frontier.push_back({std::string(), {}, Vec(Vec::Zero(d))});
    const size_t want = 4 * std::max(1u, std::thread::hardware_concurrency());
    while (!frontier.empty() && frontier[0].sign.size() < n && frontier.size() < want &&
           frontier[0].sign.size() < 5) {
        std::vector<Node> next;
        for (const Node& nd : frontier) expand(nd, next);
        frontier = std::move(next);
    }

    std::function<void(Node&, std::vector<CellData>&)> drill = [&](Node& nd, std::vector<CellData>& out) {
        if (nd.sign.size() == n) {
            out.push_back({std::move(nd.sign), std::move(nd.witness)});
            return;
        }
        std::vector<Node> kids;
        expand(nd, kids);
        for (Node& kd : kids) drill(kd, out);
    };

    std::vector<std::vector<CellData>> buckets(frontier.size());
    const int nthreads = static_cast<int>(std::min<size_t>(
        frontier.size(), std::min(8u, std::max(1u, std::thread::hardware_concurrency()))));
    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
        for (size_t i = cursor.fetch_add(1); i < frontier.size(); i = cursor.fetch_add(1))
            drill(frontier[i], buckets[i]);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    std::vector<CellData> cells;
    for (std::vector<CellData>& b : buckets)
        for (CellData& c : b) cells.push_back(std::move(c));
    std::sort(cells.begin(), cells.end(),
              [](const CellData& x, const CellData& y) { return x.sign < y.sign; });
    return cells;
}

/// f evaluated at every cell witness (slots computed independently in parallel).
std::vector<Integer> values_at(const IndicatorElement& f, const std::vector<CellData>& cells) {
    std::vector<Integer> vals(cells.size());
    const int nthreads = static_cast<int>(std::min<size_t>(
        std::max<size_t>(cells.size() / 32, 1),
        std::min(8u, std::max(1u, std::thread::hardware_concurrency()))));
    if (nthreads <= 1) {
        for (size_t i = 0; i < cells.size(); ++i) vals[i] = evaluate(f, cells[i].witness);
        return vals;
    }
    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
        for (size_t i = cursor.fetch_add(1); i < cells.size(); i = cursor.fetch_add(1))
            vals[i] = evaluate(f, cells[i].witness);
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();
    return vals;
}

std::optional<Integer> cell_lookup(const std::vector<std::string>& signs, const std::vector<Integer>& coeff,
                                   const std::string& sv) {
    auto it = std::lower_bound(signs.begin(), signs.end(), sv);
    if (it == signs.end() || *it != sv) return std::nullopt;
    return coeff[static_cast<size_t>(it - signs.begin())];
}

}  // namespace

std::optional<Integer> CanonicalForm::coefficient(const std::string& sv) const {
    return cell_lookup(signs, coeff, sv);
}

std::optional<Integer> SimpleClass::coefficient(const std::string& sv) const {
    return cell_lookup(signs, coeff, sv);
}

CanonicalForm canonicalize(const IndicatorElement& f) {
    CanonicalForm form{refinement_of({&f}, f.ambient_dim()), {}, {}, {}};
    std::vector<CellData> cells = enumerate_cells(form.refinement, false);
    form.coeff = values_at(f, cells);
    for (CellData& c : cells) {
        form.signs.push_back(std::move(c.sign));
        form.witness.push_back(std::move(c.witness));
    }
    return form;
}

SimpleClass simplify(const IndicatorElement& f) {
    SimpleClass form{refinement_of({&f}, f.ambient_dim()), {}, {}, {}};
    std::vector<CellData> cells = enumerate_cells(form.refinement, true);
    form.coeff = values_at(f, cells);
    for (CellData& c : cells) {
        form.signs.push_back(std::move(c.sign));
        form.witness.push_back(std::move(c.witness));
    }
    return form;
}

namespace {

bool agree_on_cells(const IndicatorElement& f, const IndicatorElement& g, bool full_dim_only) {
    if (f.ambient_dim() != g.ambient_dim()) throw std::invalid_argument("ambient dimension mismatch");
    const Arrangement ref = refinement_of({&f, &g}, f.ambient_dim());
    const std::vector<CellData> cells = enumerate_cells(ref, full_dim_only);
    return values_at(f, cells) == values_at(g, cells);
}

}  // namespace

bool equal(const IndicatorElement& f, const IndicatorElement& g) { return agree_on_cells(f, g, false); }

bool simple_equal(const IndicatorElement& f, const IndicatorElement& g) {
    return agree_on_cells(f, g, true);
}

// ---------------------------------------------------------------------------
// recovering a cone from its k-face projection data

namespace {

std::vector<std::string> sorted_pi_keys(const Cone& c, int k) {
    std::vector<std::string> keys;
    const FaceLattice lat = face_lattice(c);
    for (int fi : lat.faces_of_dim(k)) keys.push_back(pi_F(c, lat.face(fi)).key());
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace

Cone recover_cone(const std::vector<Cone>& pi_cones, int k, int d) {
    if (pi_cones.empty()) throw std::invalid_argument("no face projection cones given");
    if (k < 0 || k > d) throw std::invalid_argument("face dimension out of range");
    if (2 * k == d)
        throw std::invalid_argument("2k = d: a cone and its polar carry identical k-face data");
    std::vector<std::string> input_keys;
    for (const Cone& p : pi_cones) {
        if (p.ambient_dim() != d) throw std::invalid_argument("ambient dimension mismatch");
        if (!p.is_full_dimensional())
            throw std::invalid_argument("face projection cones are full-dimensional");
        input_keys.push_back(p.key());
    }
    std::sort(input_keys.begin(), input_keys.end());

    if (2 * k > d) return recover_cone(pi_cones, d - k, d).polar();

    std::optional<Cone> cand;
    if (pi_cones.size() == 1) {
        // One k-face means k is the dimension of either the cone itself or of
        // its lineality space. The first case is recognized by the pointed
        // part of the input; the second is the polar of the input (k = 0 here,
        // since a positive-dimensional lineality space could be any complement
        // inside the input's lineality and the data would not determine it).
        const Cone& pi = pi_cones[0];
        const Cone pointed =
            intersect(pi, Cone::from_subspace(pi.lineality_space().orthogonal_complement()));
        if (pointed.dim() == k)
            cand = pointed;
        else if (k == 0)
            cand = pi.polar();
    } else {
        // A k-face of the recovered cone is a face of exactly one projection
        // cone; every other k-face in the collection is shared by at least two
        // (this uses 2k < d, which holds after the reduction above).
        struct Seen {
            Cone face;
            std::set<size_t> owners;
        };
        std::map<std::string, Seen> seen;
        for (size_t i = 0; i < pi_cones.size(); ++i) {
            const FaceLattice lat = face_lattice(pi_cones[i]);
            for (int fi : lat.faces_of_dim(k)) {
                const Cone& e = lat.face(fi).cone;
                auto [it, fresh] = seen.try_emplace(e.key(), Seen{e, {}});
                (void)fresh;
                it->second.owners.insert(i);
            }
        }
        std::vector<Vec> gens;
        bool any = false;
        for (const auto& [key, s] : seen) {
            (void)key;
            if (s.owners.size() != 1) continue;
            any = true;
            for (const Vec& r : s.face.rays()) gens.push_back(r);
            for (const Vec& l : s.face.lineality_basis()) {
                gens.push_back(l);
                gens.push_back(Vec(-l));
            }
        }
        if (any) cand = Cone::from_generators(d, gens);
    }

    if (!cand || cand->lineality_dim() > k || cand->dim() < k || sorted_pi_keys(*cand, k) != input_keys)
        throw std::invalid_argument("input is not the k-face data of a recoverable cone");
    return *cand;
}

// ---------------------------------------------------------------------------
// the exceptional arrangement and genericity

Arrangement exceptional_arrangement(const Arrangement& a) {
    const FlatsLattice fl = flats_lattice(a);
    std::vector<Vec> normals;
    for (int i = 0; i < fl.size(); ++i)
        for (const Vec& nrm : a.normals()) {
            // the normal of (H cap L) + L^perp inside R^d is the projection of
            // H's normal onto the flat L; zero when L lies inside H
            Vec p = fl.flat(i).project(nrm);
            if (!is_zero_vec(p)) normals.push_back(std::move(p));
        }
    return Arrangement(a.ambient_dim(), normals);
}

CheckReport genericity_check(const Arrangement& a, const Vec& x) {
    if (x.size() != a.ambient_dim()) throw std::invalid_argument("point has wrong dimension");
    const int d = a.ambient_dim();

    const Arrangement pi = exceptional_arrangement(a);
    bool on_pi = false;
    for (const Vec& n : pi.normals())
        if (n.dot(x) == 0) {
            on_pi = true;
            break;
        }

    const FlatsLattice fl = flats_lattice(a);
    std::vector<Rational> d2;
    for (int i = 0; i < fl.size(); ++i) d2.push_back(fl.flat(i).distance_sq(x));

    // strictly increasing distances along strict flat inclusions L' < L
    bool strict = true;
    for (int i = 0; i < fl.size() && strict; ++i)
        for (int j = 0; j < fl.size(); ++j)
            if (i != j && fl.leq(i, j) && !(d2[static_cast<size_t>(j)] > d2[static_cast<size_t>(i)])) {
                strict = false;
                break;
            }

    // the same condition restricted to hyperplane traces H cap L inside L
    bool traces = true;
    for (int i = 0; i < fl.size() && traces; ++i)
        for (const Vec& nrm : a.normals()) {
            if (is_zero_vec(Vec(fl.flat(i).project(nrm)))) continue;
            const Subspace h = Subspace::span(d, kernel_basis(stack_rows({nrm}, d)));
            if (!(fl.flat(i).intersect(h).distance_sq(x) > d2[static_cast<size_t>(i)])) {
                traces = false;
                break;
            }
        }

    const bool generic = !on_pi;
    const bool ok = (generic == strict) && (strict == traces);
    std::ostringstream os;
    os << (generic ? "point is generic" : "point is exceptional")
       << "; distance condition " << (strict ? "holds" : "fails") << ", trace form "
       << (traces ? "holds" : "fails") << ", " << pi.size() << " exceptional hyperplanes";
    return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// verification of the identities

CheckReport verify_vk_valuation(const Cone& c, const Vec& hyperplane_normal, int k) {
    const int d = c.ambient_dim();
    if (hyperplane_normal.size() != d || is_zero_vec(hyperplane_normal))
        throw std::invalid_argument("need a nonzero hyperplane normal of matching dimension");
    const Cone le = intersect(c, Cone::from_halfspaces(d, {}, {hyperplane_normal}));
    const Cone ge = intersect(c, Cone::from_halfspaces(d, {}, {Vec(-hyperplane_normal)}));
    const Cone on = intersect(c, Cone::from_halfspaces(d, {hyperplane_normal}, {}));
    const IndicatorElement lhs = vk(c, k);
    const IndicatorElement rhs = vk(le, k) + vk(ge, k) - vk(on, k);
    const bool ok = simple_equal(lhs, rhs);
    std::ostringstream os;
    os << "V_" << k << " split into " << vk(le, k).terms().size() << "+" << vk(ge, k).terms().size()
       << "-" << vk(on, k).terms().size() << " face terms against " << lhs.terms().size()
       << "; almost-everywhere agreement " << (ok ? "holds" : "fails");
    return {ok, os.str()};
}

CheckReport verify_polar_duality(const Cone& c, int k) {
    const int d = c.ambient_dim();
    if (k < 0 || k > d) throw std::invalid_argument("face dimension out of range");
    const IndicatorElement lhs = vk(c, k);
    const IndicatorElement rhs = vk(c.polar(), d - k);
    const bool ok = equal(lhs, rhs);
    std::ostringstream os;
    os << "V_" << k << "(C) has " << lhs.terms().size() << " terms, V_" << (d - k) << "(C polar) has "
       << rhs.terms().size() << "; exact equality " << (ok ? "holds" : "fails");
    return {ok, os.str()};
}

CheckReport lemma_key_check(const Arrangement& a) {
    const int d = a.ambient_dim();
    IndicatorElement lhs(d);
    const Fan fan = regions(a);
    for (int i = 0; i < fan.size(); ++i) lhs.add_term(1, fan.cone(i));

    const FlatsLattice fl = flats_lattice(a);
    IndicatorElement rhs(d);
    for (int i = 0; i < fl.size(); ++i)
        rhs.add_term(abs(fl.mobius(fl.bottom(), i)), Cone::from_subspace(fl.flat(i)));

    const bool ok = equal(lhs, rhs);
    std::ostringstream os;
    os << fan.size() << " region indicators against " << fl.size()
       << " flat indicators weighted by |mobius|; exact equality " << (ok ? "holds" : "fails");
    return {ok, os.str()};
}

CheckReport theorem_vk_arr_check(const Arrangement& a, int k) {
    const int d = a.ambient_dim();
    if (k < 0 || k > d) throw std::invalid_argument("face dimension out of range");
    const IndicatorElement lhs = vk_arrangement(a, k);

    const FlatsLattice fl = flats_lattice(a);
    IndicatorElement rhs(d);
    for (int li : fl.of_dim(k)) {
        IndicatorElement below(d);  // flats K inside L, weighted by |mu(L, K)|
        IndicatorElement above(d);  // complements of flats M containing L, by |mu(bottom, M)|
        for (int i = 0; i < fl.size(); ++i) {
            if (fl.leq(li, i)) below.add_term(abs(fl.mobius(li, i)), Cone::from_subspace(fl.flat(i)));
            if (fl.leq(i, li))
                above.add_term(abs(fl.mobius(fl.bottom(), i)),
                               Cone::from_subspace(fl.flat(i).orthogonal_complement()));
        }
        rhs = rhs + star_product(below, above);
    }

    const bool ok = equal(lhs, rhs);
    std::ostringstream os;
    os << "V_" << k << " of the arrangement has " << lhs.terms().size()
       << " merged terms, the flat expansion " << rhs.terms().size() << "; exact equality "
       << (ok ? "holds" : "fails");
    return {ok, os.str()};
}

CheckReport hug_kabluchko_check(const Cone& c) {
    const int d = c.ambient_dim();
    const Integer eps = euler_characteristic(c);
    const IndicatorElement lhs = eps * IndicatorElement::one(d);
    IndicatorElement rhs(d);
    const FaceLattice lat = face_lattice(c);
    for (const Face& f : lat.faces())
        rhs.add_term(f.dim % 2 == 0 ? 1 : -1, minkowski_sum(f.cone, normal_cone(c, f).negate()));
    const bool ok = equal(lhs, rhs);
    std::ostringstream os;
    os << "euler characteristic " << eps << ", alternating sum over " << lat.size()
       << " faces of [F - N_F C]; exact equality " << (ok ? "holds" : "fails");
    return {ok, os.str()};
}

CheckReport sommerville_check(const Cone& cone) {
    const int d = cone.ambient_dim();
    IndicatorElement lhs(d);
    const FaceLattice lat = face_lattice(cone);
    for (const Face& g : lat.faces()) lhs.add_term(g.dim % 2 == 0 ? 1 : -1, tangent_cone(cone, g));
    // (-1)^dim [-relint D] is the Euler map applied to the reflected cone
    const IndicatorElement rhs = euler_map(IndicatorElement::indicator(cone.negate()));
    const bool ok = equal(lhs, rhs);
    std::ostringstream os;
    os << "alternating tangent-cone sum over " << lat.size() << " faces against the reflected open cone; "
       << "exact equality " << (ok ? "holds" : "fails");
    return {ok, os.str()};
}

IndicatorCharPoly indicator_char_poly(const Fan& fan) {
    const int d = fan.ambient_dim();
    IndicatorCharPoly out;
    for (int k = 0; k <= d; ++k) {
        IndicatorElement ck(d);
        for (int i = 0; i < fan.size(); ++i) ck = ck + vk(fan.cone(i), k);
        out.classes.push_back(simplify(ck));
        out.coeff.push_back(std::move(ck));
    }
    return out;
}

CheckReport klivans_swartz_indicator_check(const Arrangement& a) {
    const int d = a.ambient_dim();
    const CharPoly w = whitney_numbers(a);
    const Fan fan = regions(a);
    bool ok = true;
    std::ostringstream os;
    for (int k = 0; k <= d; ++k) {
        IndicatorElement lhs(d);
        for (int i = 0; i < fan.size(); ++i) lhs = lhs + vk(fan.cone(i), k);
        const bool match = simple_equal(lhs, w.at(k) * IndicatorElement::one(d));
        if (!match) ok = false;
        os << "t^" << k << ": simple class of V_" << k << " " << (match ? "equals" : "differs from")
           << " " << w.at(k) << " [R^d]\n";
    }
    return {ok, os.str()};
}

// ---------------------------------------------------------------------------
// spherical volume of a simple class

double spherical_volume(const SimpleClass& s, long long samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    const int d = s.refinement.ambient_dim();
    const std::vector<Vec>& normals = s.refinement.normals();

    std::vector<std::vector<long long>> rows;
    bool fast = true;
    for (const Vec& nrm : normals) {
        std::vector<long long> row;
        if (!detail::integer_row(nrm, row)) {
            fast = false;
            break;
        }
        rows.push_back(std::move(row));
    }

    std::map<std::string, double> value;
    for (size_t i = 0; i < s.signs.size(); ++i) value[s.signs[i]] = s.coeff[i].convert_to<double>();

    std::mt19937_64 rng(detail::stream_seed(seed, 0));
    std::vector<double> z(static_cast<size_t>(d) + 1);
    std::vector<long long> m(static_cast<size_t>(d));
    std::string sign(normals.size(), '?');
    double sum = 0;
    for (long long i = 0; i < samples; ++i) {
        bool interior = false;
        for (int attempt = 0; attempt < 64 && !interior; ++attempt) {
            detail::gauss_numerators(rng, d, z, m);
            interior = true;
            for (size_t r = 0; r < normals.size() && interior; ++r) {
                __int128 dot = 0;
                if (fast) {
                    for (int j = 0; j < d; ++j)
                        dot += static_cast<__int128>(rows[r][static_cast<size_t>(j)]) *
                               m[static_cast<size_t>(j)];
                } else {
                    Vec x(d);
                    for (int j = 0; j < d; ++j)
                        x(j) = make_rational(m[static_cast<size_t>(j)], 1ll << detail::kFracBits);
                    const Rational rdot = normals[r].dot(x);
                    dot = rdot > 0 ? 1 : (rdot < 0 ? -1 : 0);
                }
                if (dot == 0)
                    interior = false;  // the grid point lies on a wall: redraw
                else
                    sign[r] = dot < 0 ? '-' : '+';
            }
        }
        if (!interior) throw std::logic_error("could not move a sample off the refinement walls");
        auto it = value.find(sign);
        if (it == value.end()) throw std::logic_error("sample landed in a cell missing from the class");
        sum += it->second;
    }
    return sum / static_cast<double>(samples);
}

}  // namespace conival
