#include "conival/intrinsic.hpp"

#include "conival/detail/sampling.hpp"
#include "conival/projection.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace conival {

namespace {

using detail::gauss_numerators;
using detail::integer_row;
using detail::kFracBits;
using detail::stream_seed;

constexpr long long kBlock = 4096;

/**
 * Face classifier. A sample x projects onto face F exactly when
 *   a.x < 0 for every facet normal a of F (they span within lin F), and
 *   n.x <= 0 for every facet normal n of N_F C (they span within lin(F)^perp):
 * the first condition puts the projection of x onto lin F in relint F, the
 * second puts the residual in the normal cone. So classification is a run of
 * exact sign tests of integer-vector dot products against the dyadic sample.
 */
struct FacePlan {
    int dim = 0;
    std::vector<std::vector<long long>> strict_rows;  // require row . m < 0
    std::vector<std::vector<long long>> weak_rows;    // require row . m <= 0
    std::vector<Vec> strict_exact, weak_exact;        // fallback when entries overflow
};

struct Engine {
    int d = 0;
    bool fast = true;  // all rows fit in long long (128-bit accumulation)
    std::vector<FacePlan> faces;

    explicit Engine(const Cone& c) : d(c.ambient_dim()) {
        const FaceLattice lat = face_lattice(c);
        for (const Face& f : lat.faces()) {
            FacePlan plan;
            plan.dim = f.dim;
            for (const Vec& a : f.cone.inequalities()) {
                plan.strict_exact.push_back(a);
                std::vector<long long> row;
                if (integer_row(a, row))
                    plan.strict_rows.push_back(std::move(row));
                else
                    fast = false;
            }
            const Cone n = normal_cone(c, f);
            for (const Vec& a : n.inequalities()) {
                plan.weak_exact.push_back(a);
                std::vector<long long> row;
                if (integer_row(a, row))
                    plan.weak_rows.push_back(std::move(row));
                else
                    fast = false;
            }
            faces.push_back(std::move(plan));
        }
    }

    /** Dimension of the projection face of the sample with numerators m (fast path). */
    int classify_fast(const long long* m, std::vector<int>& order) const {
        for (size_t pos = 0; pos < order.size(); ++pos) {
            const FacePlan& f = faces[static_cast<size_t>(order[pos])];
            bool ok = true;
            for (const auto& row : f.strict_rows) {
                __int128 s = 0;
                for (int i = 0; i < d; ++i) s += static_cast<__int128>(row[static_cast<size_t>(i)]) * m[i];
                if (s >= 0) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                for (const auto& row : f.weak_rows) {
                    __int128 s = 0;
                    for (int i = 0; i < d; ++i) s += static_cast<__int128>(row[static_cast<size_t>(i)]) * m[i];
                    if (s > 0) {
                        ok = false;
                        break;
                    }
                }
            if (ok) {
                // move-to-front: consecutive samples often hit the same cell
                if (pos > 0) std::rotate(order.begin(), order.begin() + static_cast<long>(pos),
                                         order.begin() + static_cast<long>(pos) + 1);
                return faces[static_cast<size_t>(order[0])].dim;
            }
        }
        throw std::logic_error("sample matched no face");
    }

    int classify_exact(const long long* m) const {
        Vec x(d);
        for (int i = 0; i < d; ++i) x(i) = make_rational(m[i], 1ll << kFracBits);
        for (const FacePlan& f : faces) {
            bool ok = true;
            for (const Vec& a : f.strict_exact)
                if (a.dot(x) >= 0) {
                    ok = false;
                    break;
                }
            if (ok)
                for (const Vec& a : f.weak_exact)
                    if (a.dot(x) > 0) {
                        ok = false;
                        break;
                    }
            if (ok) return f.dim;
        }
        throw std::logic_error("sample matched no face");
    }
};

int pick_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<int>(std::min(8u, std::max(1u, hw)));
}

}  // namespace

IntrinsicEstimate mc_intrinsic_volumes(const Cone& c, long long samples, std::uint64_t seed, int threads) {
    if (samples < 1) throw std::invalid_argument("need at least one sample");
    const Engine engine(c);
    const int d = engine.d;
    const long long nblocks = (samples + kBlock - 1) / kBlock;
    const int nthreads = static_cast<int>(std::min<long long>(pick_threads(threads), nblocks));

    std::atomic<long long> next{0};
    std::vector<std::vector<long long>> tallies(static_cast<size_t>(nthreads),
                                                std::vector<long long>(static_cast<size_t>(d) + 1, 0));

    auto worker = [&](int tid) {
        std::vector<long long>& tally = tallies[static_cast<size_t>(tid)];
        std::vector<int> order(engine.faces.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
        std::vector<long long> m(static_cast<size_t>(d));
        std::vector<double> z(static_cast<size_t>(d) + 1);
        for (long long b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1)) {
            std::mt19937_64 rng(stream_seed(seed, static_cast<std::uint64_t>(b)));
            const long long in_block = std::min(kBlock, samples - b * kBlock);
            for (long long s = 0; s < in_block; ++s) {
                gauss_numerators(rng, d, z, m);
                const int k = engine.fast ? engine.classify_fast(m.data(), order) : engine.classify_exact(m.data());
                ++tally[static_cast<size_t>(k)];
            }
        }
    };

    std::vector<std::thread> pool;
    for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (std::thread& t : pool) t.join();

    IntrinsicEstimate est;
    est.samples = samples;
    est.seed = seed;
    est.counts.assign(static_cast<size_t>(d) + 1, 0);
    for (const auto& tally : tallies)
        for (size_t k = 0; k < tally.size(); ++k) est.counts[k] += tally[k];
    for (long long count : est.counts) {
        const double v = static_cast<double>(count) / static_cast<double>(samples);
        est.values.push_back(v);
        est.variances.push_back(v * (1.0 - v) / static_cast<double>(samples));
    }
    return est;
}

std::vector<double> exact_intrinsic_2d(const Cone& c) {
    if (c.dim() != 2 || !c.is_pointed())
        throw std::invalid_argument("closed-form values need a pointed two-dimensional cone");
    const Vec& r1 = c.rays()[0];
    const Vec& r2 = c.rays()[1];
    double dot = 0, n1 = 0, n2 = 0;
    for (Eigen::Index i = 0; i < r1.size(); ++i) {
        dot += to_double(r1(i)) * to_double(r2(i));
        n1 += to_double(r1(i)) * to_double(r1(i));
        n2 += to_double(r2(i)) * to_double(r2(i));
    }
    const double alpha = std::acos(std::clamp(dot / std::sqrt(n1 * n2), -1.0, 1.0));
    std::vector<double> v(static_cast<size_t>(c.ambient_dim()) + 1, 0.0);
    v[2] = alpha / (2.0 * 3.141592653589793238462643383279);
    v[1] = 0.5;
    v[0] = 0.5 - v[2];
    return v;
}

IntrinsicEstimate fan_intrinsic_volumes(const Fan& fan, long long samples, std::uint64_t seed, int threads) {
    IntrinsicEstimate total;
    total.samples = samples;
    total.seed = seed;
    total.values.assign(static_cast<size_t>(fan.ambient_dim()) + 1, 0.0);
    total.counts.assign(static_cast<size_t>(fan.ambient_dim()) + 1, 0);
    total.variances.assign(static_cast<size_t>(fan.ambient_dim()) + 1, 0.0);
    for (int i = 0; i < fan.size(); ++i) {
        const IntrinsicEstimate one =
            mc_intrinsic_volumes(fan.cone(i), samples, stream_seed(seed, 0xC0DE + static_cast<std::uint64_t>(i)),
                                 threads);
        for (size_t k = 0; k < one.values.size(); ++k) {
            total.values[k] += one.values[k];
            total.counts[k] += one.counts[k];
            total.variances[k] += one.variances[k];
        }
    }
    return total;
}

double FanCharPoly::operator()(double t) const {
    double v = 0;
    for (size_t k = coeff.size(); k-- > 0;) v = v * t + coeff[k];
    return v;
}

FanCharPoly fan_char_poly(const Fan& fan, long long samples, std::uint64_t seed, int threads) {
    const IntrinsicEstimate est = fan_intrinsic_volumes(fan, samples, seed, threads);
    return FanCharPoly{est.values, est.variances, est.samples};
}

CheckReport verify_zaslavsky(const Fan& fan, long long samples, std::uint64_t seed, double z, int threads) {
    if (fan.empty()) return {true, "empty fan: both evaluations are 0"};
    if (fan.rank() < 1)
        throw std::invalid_argument("the alternating-sum identity needs a fan of rank >= 1");
    const IntrinsicEstimate est = fan_intrinsic_volumes(fan, samples, seed, threads);

    long long total = 0;
    for (long long c : est.counts) total += c;
    const bool at_one = total == samples * fan.size();

    double at_minus_one = 0, var = 0;
    for (size_t k = 0; k < est.values.size(); ++k) {
        at_minus_one += (k % 2 == 0 ? est.values[k] : -est.values[k]);
        var += est.variances[k];
    }
    const double tol = z * std::sqrt(var);
    const bool ok = at_one && std::abs(at_minus_one) <= tol;

    std::ostringstream os;
    os << "ochi(1) tallies " << total << "/" << samples * fan.size() << " (exactly " << fan.size()
       << " cones); ochi(-1) = " << at_minus_one << ", allowed " << tol;
    return {ok, os.str()};
}

CheckReport verify_klivans_swartz(const Arrangement& a, long long samples, std::uint64_t seed, double z,
                                  int threads) {
    if (a.size() == 0) throw std::invalid_argument("need a nonempty arrangement");
    const CharPoly w = whitney_numbers(a);
    const FanCharPoly est = fan_char_poly(regions(a), samples, seed, threads);

    bool ok = true;
    std::ostringstream os;
    os << "coefficient  estimate  whitney  |diff|  allowed\n";
    for (size_t k = 0; k < est.coeff.size(); ++k) {
        const double wk = static_cast<double>(w.at(static_cast<int>(k)).convert_to<long long>());
        const double diff = std::abs(est.coeff[k] - wk);
        const double tol = z * std::sqrt(est.variances[k]);
        if (diff > tol) ok = false;
        os << "t^" << k << "  " << est.coeff[k] << "  " << wk << "  " << diff << "  " << tol << "\n";
    }
    return {ok, os.str()};
}

}  // namespace conival
