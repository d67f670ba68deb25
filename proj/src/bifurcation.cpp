#include "polymap/bifurcation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "polymap/errors.hpp"

namespace polymap {

namespace {

unsigned thread_budget() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("POLYMAP_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return n;
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned workers = std::min<unsigned>(thread_budget(), static_cast<unsigned>(std::max<std::size_t>(count, 1)));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

/// One converged cycle, canonicalized (sorted) for comparisons.
struct Cycle {
    std::vector<double> points;  // sorted ascending
    double abs_multiplier;

    static Cycle from_orbit(const std::vector<double>& orbit) {
        Cycle c{orbit, 0.0};
        std::sort(c.points.begin(), c.points.end());
        return c;
    }
};

/// Last `period` samples, in orbit order.
std::vector<double> cycle_from_tail(const std::vector<double>& tail, int period) {
    return std::vector<double>(tail.end() - period, tail.end());
}

double cycle_abs_multiplier(const Polynomial& dg, const std::vector<double>& pts) {
    double acc = 0.0;
    for (double x : pts) acc += std::log(std::max(std::abs(dg(x)), 1e-300));
    return std::exp(acc);
}

bool same_cycle(const Cycle& a, const Cycle& b, double tol) {
    if (a.points.size() != b.points.size()) return false;
    for (std::size_t i = 0; i < a.points.size(); ++i)
        if (std::abs(a.points[i] - b.points[i]) > tol) return false;
    return true;
}

int cluster_count(std::vector<double> values, double tol) {
    if (values.empty()) return 0;
    std::sort(values.begin(), values.end());
    int count = 1;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] - values[i - 1] > tol) ++count;
    return count;
}

struct Measurement {
    bool decisive = false;       // at least one attracting cycle was pinned down
    bool all_divergent = false;  // every seed escaped
    int branch_count = 0;
    int min_period = 0;
    int distinct_cycles = 0;
};

/// Measure the attracting set of one map: iterate every seed, keep the
/// attracting cycles (unstable cycles an orbit happens to sit on are
/// filtered by their multiplier), and count distinct branch points. Retries
/// with 4x the transient while nothing has converged.
Measurement measure_attractor(const CanonicalMap& c, const SeedPolicy& policy, OrbitParams params,
                              int max_retries) {
    const std::vector<double> seeds = make_seeds(c, policy);
    const Polynomial dg = c.expanded().derivative();

    for (int attempt = 0;; ++attempt) {
        std::vector<Cycle> cycles;
        bool any_bounded_undetected = false;
        bool any_bounded = false;
        for (double s : seeds) {
            OrbitResult r = iterate_orbit(c, s, params);
            if (r.status == OrbitStatus::Divergent) continue;
            any_bounded = true;
            if (r.status != OrbitStatus::Converged) {
                any_bounded_undetected = true;
                continue;
            }
            Cycle cyc = Cycle::from_orbit(cycle_from_tail(r.tail, r.period));
            cyc.abs_multiplier = cycle_abs_multiplier(dg, cyc.points);
            if (cyc.abs_multiplier <= 1.0 + 1e-3) cycles.push_back(std::move(cyc));
        }

        if (!any_bounded) {
            Measurement m;
            m.all_divergent = true;
            m.decisive = true;
            return m;
        }

        if (!cycles.empty() && !any_bounded_undetected) {
            Measurement m;
            m.decisive = true;
            double scale = 1.0;
            std::vector<double> all_points;
            for (const Cycle& cyc : cycles) {
                for (double p : cyc.points) {
                    all_points.push_back(p);
                    scale = std::max(scale, 1.0 + std::abs(p));
                }
            }
            const double tol = 1e-6 * scale;
            m.branch_count = cluster_count(all_points, tol);
            m.min_period = static_cast<int>(cycles.front().points.size());
            std::vector<Cycle> distinct;
            for (const Cycle& cyc : cycles) {
                m.min_period = std::min(m.min_period, static_cast<int>(cyc.points.size()));
                bool seen = false;
                for (const Cycle& d : distinct)
                    if (same_cycle(cyc, d, tol)) {
                        seen = true;
                        break;
                    }
                if (!seen) distinct.push_back(cyc);
            }
            m.distinct_cycles = static_cast<int>(distinct.size());
            return m;
        }

        if (attempt >= max_retries) {
            Measurement m;  // best effort: report what converged, undecided
            m.decisive = false;
            if (!cycles.empty()) {
                std::vector<double> all_points;
                for (const Cycle& cyc : cycles)
                    all_points.insert(all_points.end(), cyc.points.begin(), cyc.points.end());
                m.branch_count = cluster_count(all_points, 1e-6);
            }
            return m;
        }
        if (params.n_transient > (1 << 26)) {
            Measurement m;
            m.decisive = false;
            return m;
        }
        params.n_transient *= 4;
    }
}

}  // namespace

std::vector<double> make_seeds(const CanonicalMap& c, const SeedPolicy& policy) {
    std::vector<double> seeds;
    if (policy.critical_points) {
        const Polynomial dg = c.expanded().derivative();
        if (dg.degree() >= 1) {
            try {
                RootSet rs = real_roots(dg, 1e-10);
                for (const auto& r : rs.real_roots) seeds.push_back(r.value);
            } catch (const NonConvergence&) {
                // fall through to the fixed seeds
            }
        }
    }
    if (policy.appendix_seeds) {
        seeds.push_back(0.9);
        seeds.push_back(-0.01);
    }
    if (policy.fixed_point_perturbations) {
        for (double fp : c.all_fixed_points()) {
            seeds.push_back(fp + policy.perturbation);
            seeds.push_back(fp - policy.perturbation);
        }
    }
    seeds.insert(seeds.end(), policy.extra.begin(), policy.extra.end());

    std::sort(seeds.begin(), seeds.end());
    seeds.erase(std::unique(seeds.begin(), seeds.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                seeds.end());
    return seeds;
}

SweepDataset sweep(const CanonicalFamily& fam, const std::vector<double>& grid, const SeedPolicy& seeds,
                   const OrbitParams& params) {
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw Error("sweep grid must be strictly increasing");

    SweepDataset data;
    data.grid = grid;
    data.points.resize(grid.size());

    parallel_for(grid.size(), [&](std::size_t i) {
        SweepPoint& pt = data.points[i];
        pt.lambda = grid[i];
        std::string why;
        auto map = try_family_at(fam, grid[i], &why);
        if (!map) {
            pt.poisoned = true;
            pt.poison_reason = why;
            return;
        }
        pt.seeds = make_seeds(*map, seeds);
        const Polynomial dg = map->expanded().derivative();

        std::vector<Cycle> attracting;
        for (double s : pt.seeds) {
            OrbitResult r = iterate_orbit(*map, s, params);
            pt.seed_status.push_back(r.status);
            pt.seed_periods.push_back(r.status == OrbitStatus::Converged ? r.period : 0);
            pt.seed_lyap.push_back(r.lyap_proxy);
            if (r.status == OrbitStatus::Divergent) {
                pt.any_divergent = true;
                pt.plotted.emplace_back();
                continue;
            }
            if (r.status == OrbitStatus::Converged) {
                std::vector<double> cyc = cycle_from_tail(r.tail, r.period);  // orbit order
                Cycle candidate = Cycle::from_orbit(cyc);
                candidate.abs_multiplier = cycle_abs_multiplier(dg, candidate.points);
                pt.plotted.push_back(std::move(cyc));
                if (candidate.abs_multiplier <= 1.0 + 1e-3) attracting.push_back(std::move(candidate));
            } else {
                pt.plotted.push_back(r.tail);
                if (r.lyap_proxy > 0.0) pt.chaotic_heuristic = true;
            }
        }

        if (!attracting.empty()) {
            double scale = 1.0;
            std::vector<double> all_points;
            int min_period = std::numeric_limits<int>::max();
            for (const Cycle& cyc : attracting) {
                min_period = std::min(min_period, static_cast<int>(cyc.points.size()));
                for (double p : cyc.points) {
                    all_points.push_back(p);
                    scale = std::max(scale, 1.0 + std::abs(p));
                }
            }
            const double tol = 1e-6 * scale;
            pt.attracting_period = min_period;
            pt.branch_count = cluster_count(all_points, tol);
            std::vector<Cycle> distinct;
            for (const Cycle& cyc : attracting) {
                bool seen = false;
                for (const Cycle& d : distinct)
                    if (same_cycle(cyc, d, tol)) {
                        seen = true;
                        break;
                    }
                if (!seen) distinct.push_back(cyc);
            }
            pt.distinct_cycles = static_cast<int>(distinct.size());
        }
    });
    return data;
}

BifurcationEstimate find_bifurcation_value(int degree, const CanonicalFamily& slice, int k, double bracket_lo,
                                           double bracket_hi, double bisect_tol, bool force_bisection,
                                           int cascade_fp) {
    if (k < 1) throw Error("bifurcation index k must be >= 1");
    if (!force_bisection) {
        // The fixed point turns nonhyperbolic exactly when its PDF reaches -2,
        // for every degree; the quadratic 2-cycle loses stability at sqrt(6).
        if (k == 1) return {k, 2.0, 0.0, BifurcationEstimate::Method::ClosedForm, false};
        if (k == 2 && degree == 2)
            return {k, std::sqrt(6.0), 0.0, BifurcationEstimate::Method::ClosedForm, false};
    }
    if (!(bracket_hi > bracket_lo)) throw BracketInvalid("bracket is empty");

    OrbitParams params;
    params.n_transient = 4096;
    for (int level = 6; level <= k; ++level) params.n_transient *= 4;  // critical slowing down
    params.n_keep = std::max(512, 8 * (1 << k));
    params.p_max = std::min(std::max(64, 4 * (1 << k)), params.n_keep / 2);
    // An orbit still creeping onto a 2^(k-1) cycle alternates with a small
    // deviation and can fake a 2^k cycle; demanding near-full convergence
    // keeps that zone below the cluster radius.
    params.detect_rel_tol = 1e-12;

    const SeedPolicy policy;
    const int target = 1 << k;
    const int base = 1 << (k - 1);

    auto measure = [&](double lam) { return measure_attractor(family_at(slice, lam), policy, params, 3); };
    auto value_at = [&](double lam) { return std::abs(pdf(family_at(slice, lam), cascade_fp)); };

    const Measurement m_lo = measure(bracket_lo);
    if (!m_lo.decisive || m_lo.all_divergent || m_lo.branch_count != base)
        throw BracketInvalid("lower bracket end is not in the 2^(k-1) band");
    const Measurement m_hi = measure(bracket_hi);
    if (!(m_hi.all_divergent || (m_hi.decisive && m_hi.branch_count >= target)))
        throw BracketInvalid("upper bracket end is not past the 2^(k-1) -> 2^k transition");

    double lo = bracket_lo, hi = bracket_hi;
    bool noise_floor = false;
    while (hi - lo > 2.0 * bisect_tol) {
        // The midpoint can sit inside the critical-slowing zone where orbits
        // settle too slowly to classify; fall back to off-center probes
        // before declaring the noise floor.
        bool advanced = false;
        for (double frac : {0.5, 0.25, 0.75}) {
            const double cand = lo + frac * (hi - lo);
            const Measurement m = measure(cand);
            if (!m.decisive) continue;
            if (m.all_divergent || m.branch_count >= target)
                hi = cand;
            else
                lo = cand;
            advanced = true;
            break;
        }
        if (!advanced) {
            noise_floor = true;
            break;
        }
    }

    const double v_lo = value_at(lo), v_hi = value_at(hi);
    const double v_mid = value_at(0.5 * (lo + hi));
    BifurcationEstimate est;
    est.k = k;
    est.value = v_mid;
    est.half_width = std::max(std::abs(v_hi - v_mid), std::abs(v_mid - v_lo));
    est.method = BifurcationEstimate::Method::Bisection;
    est.noise_floor = noise_floor;
    return est;
}

double feigenbaum_predict(double b_prev, double b_cur) { return b_cur + (b_cur - b_prev) / kFeigenbaumDelta; }

std::vector<double> feigenbaum_delta(const std::vector<double>& values) {
    if (values.size() < 3) throw Error("feigenbaum_delta needs at least 3 values");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] == values[i - 1]) throw DegenerateGap("equal consecutive bifurcation values");
        if ((values[i] > values[i - 1]) != (values[1] > values[0]))
            throw Error("bifurcation values must be strictly monotone");
    }
    std::vector<double> deltas;
    for (std::size_t n = 0; n + 2 < values.size(); ++n)
        deltas.push_back((values[n + 1] - values[n]) / (values[n + 2] - values[n + 1]));
    return deltas;
}

PeriodDoublingCheck verify_period_doubling(const CanonicalFamily& fam, int k_fp, double lambda0, double fd_step) {
    if (k_fp < 0 || k_fp >= fam.degree) throw IndexOutOfRange("fixed point index out of range");

    // (1) the fixed point persists across the probe interval
    CanonicalMap maps[3];
    const double lams[3] = {lambda0 - fd_step, lambda0, lambda0 + fd_step};
    for (int i = 0; i < 3; ++i) {
        auto m = try_family_at(fam, lams[i]);
        if (!m) return {false, 1};
        maps[i] = *m;
    }

    // (2) multiplier -1 at lambda0
    const double mult = multiplier_fixed(maps[1], k_fp);
    if (std::abs(mult + 1.0) > 1e-6) return {false, 2};

    // (3) d/dlambda of (g^2)' at the frozen fixed point, central difference
    const double x_star = maps[1].all_fixed_points()[static_cast<std::size_t>(k_fp)];
    auto second_iterate_slope = [&](const CanonicalMap& c) {
        const Polynomial g = c.expanded();
        const Polynomial dg = g.derivative();
        return dg(g(x_star)) * dg(x_star);
    };
    const double deriv = (second_iterate_slope(maps[2]) - second_iterate_slope(maps[0])) / (2.0 * fd_step);
    if (std::abs(deriv) <= 1e-6) return {false, 3};
    return {true, 0};
}

CascadeTable estimate_b_infinity(int degree, const CanonicalFamily& slice, int k_max, double bisect_tol,
                                 int cascade_fp) {
    if (k_max < 2) throw Error("estimate_b_infinity needs k_max >= 2");

    auto value_at = [&](double lam) { return std::abs(pdf(family_at(slice, lam), cascade_fp)); };
    // |PDF| is monotone increasing along a search slice; invert by bisection.
    auto lambda_of_value = [&](double v) {
        double lo = slice.domain_lo, hi = slice.domain_hi;
        if (value_at(hi) < v) throw Error("slice domain does not reach the requested PDF magnitude");
        for (int i = 0; i < 200 && (hi - lo) > 1e-14 * (1.0 + std::abs(hi)); ++i) {
            const double mid = 0.5 * (lo + hi);
            (value_at(mid) < v ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    };

    OrbitParams scan_params;  // only used to probe candidate bracket ends
    const SeedPolicy policy;

    CascadeTable table;
    table.degree = degree;
    std::vector<double> vals;
    for (int k = 1; k <= k_max; ++k) {
        const bool closed = (k == 1) || (k == 2 && degree == 2);
        BifurcationEstimate est;
        if (closed) {
            est = find_bifurcation_value(degree, slice, k, 0.0, 1.0, bisect_tol, false, cascade_fp);
        } else {
            const int target = 1 << k;
            double gap;
            if (vals.size() >= 2)
                gap = (vals[vals.size() - 1] - vals[vals.size() - 2]) / kFeigenbaumDelta;
            else
                gap = 0.5 * vals.back();

            OrbitParams probe = scan_params;
            probe.n_transient = 4096;
            for (int level = 6; level <= k; ++level) probe.n_transient *= 4;
            probe.n_keep = std::max(512, 8 * (1 << k));
            probe.p_max = std::min(std::max(64, 4 * (1 << k)), probe.n_keep / 2);
            probe.detect_rel_tol = 1e-12;

            const double lo_v = vals.back() + 0.15 * gap;
            double hi_v = vals.back() + 1.05 * gap;
            double step = gap;
            for (int tries = 0; tries < 40; ++tries) {
                const Measurement m =
                    measure_attractor(family_at(slice, lambda_of_value(hi_v)), policy, probe, 3);
                if (m.decisive && (m.all_divergent || m.branch_count >= target)) break;
                if (!m.decisive) {
                    step *= 0.5;  // crept too close to the accumulation point
                    hi_v -= step;
                } else {
                    hi_v += step;
                }
            }
            est = find_bifurcation_value(degree, slice, k, lambda_of_value(lo_v), lambda_of_value(hi_v),
                                         bisect_tol, false, cascade_fp);
        }
        table.levels.push_back(est);
        vals.push_back(est.value);
    }

    const double last_gap = vals[vals.size() - 1] - vals[vals.size() - 2];
    BifurcationEstimate inf_est;
    inf_est.k = 0;  // accumulation value, not a level
    inf_est.value = vals.back() + last_gap / (kFeigenbaumDelta - 1.0);
    inf_est.half_width = table.levels[vals.size() - 1].half_width + table.levels[vals.size() - 2].half_width +
                         std::abs(last_gap) / ((kFeigenbaumDelta - 1.0) * kFeigenbaumDelta);
    inf_est.method = BifurcationEstimate::Method::Bisection;
    table.b_infinity = inf_est;
    return table;
}

CascadeTable estimate_b_infinity(int degree, int k_max, double bisect_tol) {
    return estimate_b_infinity(degree, canonical_search_slice(degree), k_max, bisect_tol, 0);
}

}  // namespace polymap
