#include "ddorbit/minimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ddorbit/test_paths.hpp"
#include "ddorbit/zgeometry.hpp"

namespace ddorbit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Compensated accumulator. The action is a sum of ~10^3 segment terms and
// plain summation noise (~1e-13 absolute) would mask the ulp-scale descent
// steps the line search must certify near convergence.
struct Kahan {
    double s = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// ---------------------------------------------------------------------------
// generic projected limited-memory quasi-Newton descent

struct DescentResult {
    double f = kInf;
    double pg_norm = kInf;
    long iterations = 0;
    bool converged = false;
};

// eval returns the objective and fills grad; +inf marks an infeasible point
// (grad then unused). project clamps in place; bounded lists the indices
// clamped at zero for the projected-gradient convergence test.
DescentResult lbfgs_descent(std::vector<double>& x,
                            const std::function<double(const std::vector<double>&,
                                                       std::vector<double>&)>& eval,
                            const std::vector<int>& bounded,
                            long max_iters, double grad_tol, int memory,
                            bool verbose) {
    const size_t dim = x.size();
    const double tol = grad_tol * std::sqrt(static_cast<double>(dim));

    auto project = [&](std::vector<double>& v) {
        for (int i : bounded) v[i] = std::max(v[i], 0.0);
    };
    auto projected_grad = [&](const std::vector<double>& v,
                              const std::vector<double>& g, std::vector<double>& pg) {
        pg = g;
        for (int i : bounded)
            if (v[i] <= 0.0 && g[i] > 0.0) pg[i] = 0.0;
    };
    auto norm = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double a : v) s += a * a;
        return std::sqrt(s);
    };

    project(x);
    std::vector<double> g(dim), pg(dim), xn(dim), gn(dim), pgn(dim), d(dim);
    DescentResult res;
    double f = eval(x, g);
    if (!std::isfinite(f))
        throw std::runtime_error("descent started at an infeasible point");

    std::deque<std::pair<std::vector<double>, std::vector<double>>> mem;  // (s, y)

    for (long it = 0; it < max_iters; ++it) {
        projected_grad(x, g, pg);
        res.pg_norm = norm(pg);
        res.f = f;
        res.iterations = it;
        if (res.pg_norm <= tol) {
            res.converged = true;
            return res;
        }

        // two-loop recursion on the raw gradient
        d.assign(g.begin(), g.end());
        std::vector<double> alpha(mem.size());
        for (size_t k = mem.size(); k-- > 0;) {
            const auto& [s, y] = mem[k];
            double sy = 0.0, sd = 0.0;
            for (size_t i = 0; i < dim; ++i) { sy += s[i] * y[i]; sd += s[i] * d[i]; }
            alpha[k] = sd / sy;
            for (size_t i = 0; i < dim; ++i) d[i] -= alpha[k] * y[i];
        }
        if (!mem.empty()) {
            const auto& [s, y] = mem.back();
            double sy = 0.0, yy = 0.0;
            for (size_t i = 0; i < dim; ++i) { sy += s[i] * y[i]; yy += y[i] * y[i]; }
            double gamma = sy / yy;
            for (double& v : d) v *= gamma;
        }
        for (size_t k = 0; k < mem.size(); ++k) {
            const auto& [s, y] = mem[k];
            double sy = 0.0, yd = 0.0;
            for (size_t i = 0; i < dim; ++i) { sy += s[i] * y[i]; yd += y[i] * d[i]; }
            double beta = yd / sy;
            for (size_t i = 0; i < dim; ++i) d[i] += (alpha[k] - beta) * s[i];
        }
        for (double& v : d) v = -v;

        // projected backtracking with a quasi-Newton then steepest retry
        bool accepted = false;
        for (int attempt = 0; attempt < 2 && !accepted; ++attempt) {
            if (attempt == 1) {
                for (size_t i = 0; i < dim; ++i) d[i] = -pg[i];
                mem.clear();
            }
            double step = 1.0;
            for (int ls = 0; ls < 64; ++ls, step *= 0.5) {
                for (size_t i = 0; i < dim; ++i) xn[i] = x[i] + step * d[i];
                project(xn);
                double dec = 0.0;
                for (size_t i = 0; i < dim; ++i) dec += g[i] * (xn[i] - x[i]);
                if (dec >= 0.0) continue;
                double fn = eval(xn, gn);
                if (!std::isfinite(fn)) continue;
                // tiny absolute slack guards round-off rejections near the end
                bool ok = fn <= f + 1e-4 * dec + 2e-16 * (1.0 + std::fabs(f));
                if (!ok && fn <= f + 8e-16 * (1.0 + std::fabs(f))) {
                    // f is flat to rounding; certify progress on the gradient,
                    // which stays accurate well below the f comparison floor
                    projected_grad(xn, gn, pgn);
                    ok = norm(pgn) <= 0.999 * res.pg_norm;
                }
                if (ok) {
                    std::vector<double> s(dim), y(dim);
                    double sy = 0.0, sn = 0.0, yn2 = 0.0;
                    for (size_t i = 0; i < dim; ++i) {
                        s[i] = xn[i] - x[i];
                        y[i] = gn[i] - g[i];
                        sy += s[i] * y[i];
                        sn += s[i] * s[i];
                        yn2 += y[i] * y[i];
                    }
                    if (sy > 1e-10 * std::sqrt(sn * yn2)) {
                        mem.emplace_back(std::move(s), std::move(y));
                        if (static_cast<int>(mem.size()) > memory) mem.pop_front();
                    }
                    x.swap(xn);
                    g.swap(gn);
                    f = fn;
                    accepted = true;
                    break;
                }
            }
        }
        if (verbose && it % 500 == 0)
            std::fprintf(stderr, "  it %ld f %.12g |pg| %.3g\n", it, f, res.pg_norm);
        if (!accepted) break;  // no measurable descent left at this precision
    }
    projected_grad(x, g, pg);
    res.pg_norm = norm(pg);
    res.f = f;
    res.converged = res.pg_norm <= tol;
    return res;
}

// ---------------------------------------------------------------------------
// action objective over the decision vector

// pair channels: relative vector, kinetic and potential action coefficients
struct Channel {
    double kin, pot;
    int sign2;  // r = q1 + sign2 * q2, or r = q1 (mode 1), r = q2 (mode 2)
    int mode;   // 0: q1 +- q2, 1: q1 alone, 2: q2 alone
};
constexpr Channel kChannels[4] = {
    {0.25, 2.0, -1, 0},  // q1 - q2
    {0.25, 2.0, +1, 0},  // q1 + q2
    {0.5, 0.5, 0, 1},    // q1
    {0.5, 0.5, 0, 2},    // q2
};

Vec2 channel_vec(const ReducedConfig& c, const Channel& ch) {
    if (ch.mode == 1) return c.q1;
    if (ch.mode == 2) return c.q2;
    return ch.sign2 < 0 ? c.q1 - c.q2 : c.q1 + c.q2;
}

struct Evaluator {
    int n;
    double theta;
    std::vector<ReducedConfig> nodes;  // scratch, size n+1
    std::vector<Vec2> g1, g2;          // dF/dq per node

    explicit Evaluator(int n_, double theta_) : n(n_), theta(theta_),
        nodes(n_ + 1), g1(n_ + 1), g2(n_ + 1) {}

    void decode_into(const std::vector<double>& v) {
        nodes[0] = {{-v[0] - v[1], 0.0}, {-v[0], 0.0}};
        for (int j = 1; j < n; ++j) {
            const double* p = &v[2 + 4 * (j - 1)];
            nodes[j] = {{p[0], p[1]}, {p[2], p[3]}};
        }
        const double b1 = v[4 * n - 2], b2 = v[4 * n - 1];
        nodes[n] = {rotate({-b1, -b2}, theta), rotate({-b1, b2}, theta)};
    }

    // accumulate a channel-space gradient onto the node gradients
    void add_grad(int j, const Channel& ch, Vec2 grad) {
        if (ch.mode == 1) { g1[j] += grad; return; }
        if (ch.mode == 2) { g2[j] += grad; return; }
        g1[j] += grad;
        g2[j] += (ch.sign2 < 0) ? -grad : grad;
    }

    double eval(const std::vector<double>& v, double eps,
                std::vector<double>* grad) {
        decode_into(v);
        const double dt = 1.0 / n;
        Kahan f;
        if (grad) {
            std::fill(g1.begin(), g1.end(), Vec2{});
            std::fill(g2.begin(), g2.end(), Vec2{});
        }
        for (int j = 0; j < n; ++j) {
            for (const Channel& ch : kChannels) {
                Vec2 r0 = channel_vec(nodes[j], ch);
                Vec2 r1 = channel_vec(nodes[j + 1], ch);
                Vec2 dr = r1 - r0;
                f.add(ch.kin * dr.norm2() / dt);
                if (grad) {
                    SegmentIntegral si = segment_potential_gradient(r0, r1, eps);
                    f.add(ch.pot * dt * si.value);
                    Vec2 kg = dr * (2.0 * ch.kin / dt);
                    add_grad(j, ch, si.d_p0 * (ch.pot * dt) - kg);
                    add_grad(j + 1, ch, si.d_p1 * (ch.pot * dt) + kg);
                } else {
                    Vec2 m = (r0 + r1) * 0.5;
                    double g = dr.norm2();
                    if (g < 1e-24 * std::max(1.0, r0.norm2())) {
                        double rm = std::sqrt(m.norm2() + eps * eps);
                        if (eps == 0.0 && rm < 1e-12)
                            throw CollisionSingularity("segment", j);
                        f.add(ch.pot * dt / rm);
                    } else {
                        SegmentIntegral si = segment_potential_gradient(r0, r1, eps);
                        f.add(ch.pot * dt * si.value);
                    }
                }
            }
        }
        if (grad) {
            std::vector<double>& G = *grad;
            G.assign(4 * static_cast<size_t>(n), 0.0);
            // chain through the start line: q1 = (-a1-a2, 0), q2 = (-a1, 0)
            G[0] = -(g1[0].x + g2[0].x);
            G[1] = -g1[0].x;
            for (int j = 1; j < n; ++j) {
                double* p = &G[2 + 4 * (j - 1)];
                p[0] = g1[j].x;
                p[1] = g1[j].y;
                p[2] = g2[j].x;
                p[3] = g2[j].y;
            }
            // chain through the rotated end rectangle
            const double c = std::cos(theta), s = std::sin(theta);
            G[4 * n - 2] = -(c * (g1[n].x + g2[n].x) + s * (g1[n].y + g2[n].y));
            G[4 * n - 1] = s * g1[n].x - c * g1[n].y - s * g2[n].x + c * g2[n].y;
        }
        return f.s;
    }
};

DiscretePath resample(const DiscretePath& path, int n) {
    if (path.segments() == n) return path;
    DiscretePath out;
    out.t_start = path.t_start;
    out.t_end = path.t_end;
    out.nodes.resize(n + 1);
    for (int k = 0; k <= n; ++k) {
        double t = path.t_start + (path.t_end - path.t_start) * k / n;
        out.nodes[k] = path.at(t);
    }
    return out;
}

bool collision_free(const DiscretePath& path) {
    try {
        path_action(path);
        return true;
    } catch (const CollisionSingularity&) {
        return false;
    }
}

}  // namespace

std::vector<double> encode_path(const DiscretePath& path, double theta) {
    const int n = path.segments();
    std::vector<double> v(4 * static_cast<size_t>(n));
    const ReducedConfig& s = path.nodes.front();
    v[0] = -s.q2.x;
    v[1] = s.q2.x - s.q1.x;
    for (int j = 1; j < n; ++j) {
        double* p = &v[2 + 4 * (j - 1)];
        p[0] = path.nodes[j].q1.x;
        p[1] = path.nodes[j].q1.y;
        p[2] = path.nodes[j].q2.x;
        p[3] = path.nodes[j].q2.y;
    }
    Vec2 u1 = rotate(path.nodes.back().q1, -theta);
    Vec2 u2 = rotate(path.nodes.back().q2, -theta);
    v[4 * n - 2] = 0.5 * (-u1.x - u2.x);
    v[4 * n - 1] = 0.5 * (u2.y - u1.y);
    return v;
}

DiscretePath decode_path(const std::vector<double>& v, int n, double theta) {
    if (v.size() != 4 * static_cast<size_t>(n))
        throw std::invalid_argument("decode_path: vector must have length 4n");
    Evaluator ev(n, theta);
    ev.decode_into(v);
    DiscretePath p;
    p.nodes = ev.nodes;
    return p;
}

double objective(const std::vector<double>& v, int n, double theta, double eps) {
    Evaluator ev(n, theta);
    return ev.eval(v, eps, nullptr);
}

double objective_gradient(const std::vector<double>& v, int n, double theta,
                          double eps, std::vector<double>& grad) {
    Evaluator ev(n, theta);
    return ev.eval(v, eps, &grad);
}

DiscretePath initial_path(const Problem& p) {
    DiscretePath base;
    switch (p.init) {
        case InitKind::Given:
            base = p.init_path;
            break;
        case InitKind::TestPath:
            base = build_test_path(p.theta);
            break;
        case InitKind::StraightLine: {
            // boundary scales follow the period-1 binary size ~ theta^(-2/3)
            double s = std::cbrt(1.0 / (p.theta * p.theta));
            ReducedConfig c0 = start_config({0.67 * s, 0.87});
            ReducedConfig c1 = end_config_signed({0.8 * s, 0.44, p.theta});
            base.nodes = {c0, c1};
            break;
        }
    }
    base = resample(base, p.n);
    if (p.family == Family::Retrograde && p.init != InitKind::Given)
        base = reflect_path_quadrants(base);
    return base;
}

Solution minimize(const Problem& p) {
    if (p.n < 2) throw std::invalid_argument("minimize: need n >= 2 segments");
    DiscretePath init = initial_path(p);
    std::vector<double> v = encode_path(init, p.theta);

    std::vector<int> bounded = {0, 1};
    if (p.family == Family::Prograde) {
        bounded.push_back(4 * p.n - 2);
        bounded.push_back(4 * p.n - 1);
    }

    std::vector<double> schedule = p.options.softening;
    if (schedule.empty()) {
        schedule = collision_free(decode_path(v, p.n, p.theta))
                       ? std::vector<double>{0.0}
                       : std::vector<double>{1e-3, 1e-5, 0.0};
    }

    Evaluator ev(p.n, p.theta);
    Solution sol;
    sol.theta = p.theta;
    sol.family = p.family;
    sol.n = p.n;

    long used = 0;
    DescentResult last;
    for (size_t stage = 0; stage < schedule.size(); ++stage) {
        const double eps = schedule[stage];
        const bool final_stage = stage + 1 == schedule.size();
        long budget = final_stage ? p.options.max_iters - used
                                  : std::max<long>(100, p.options.max_iters / 10);
        if (budget <= 0) budget = 1;
        auto eval = [&](const std::vector<double>& x, std::vector<double>& g) {
            try {
                return ev.eval(x, eps, &g);
            } catch (const CollisionSingularity&) {
                return kInf;
            }
        };
        last = lbfgs_descent(v, eval, bounded, budget, p.options.grad_tol,
                             p.options.lbfgs_memory, p.options.verbose);
        used += last.iterations + 1;
    }

    sol.path = decode_path(v, p.n, p.theta);
    sol.action = path_action(sol.path);
    sol.start = {v[0], v[1]};
    sol.end = {v[4 * p.n - 2], v[4 * p.n - 1], p.theta};
    sol.grad_norm = last.pg_norm / std::sqrt(4.0 * p.n);
    sol.iterations = used;
    sol.converged = last.converged;
    return sol;
}

ReducedConfig acceleration(const ReducedConfig& c) {
    Vec2 r12 = c.q1 - c.q2;
    Vec2 r13 = c.q1 + c.q2;
    auto inv3 = [](const Vec2& r) { double d = r.norm(); return 1.0 / (d * d * d); };
    double i12 = inv3(r12), i13 = inv3(r13);
    double i1 = inv3(c.q1), i2 = inv3(c.q2);
    ReducedConfig a;
    a.q1 = -1.0 * r12 * i12 - r13 * i13 - c.q1 * (0.25 * i1);
    a.q2 = r12 * i12 - r13 * i13 - c.q2 * (0.25 * i2);
    return a;
}

std::vector<double> stationarity_residuals(const DiscretePath& path) {
    const int n = path.segments();
    const double dt = path.dt();
    std::vector<double> res;
    res.reserve(n - 1);
    for (int j = 1; j < n; ++j) {
        ReducedConfig acc = acceleration(path.nodes[j]);
        Vec2 d1 = (path.nodes[j + 1].q1 - 2.0 * path.nodes[j].q1 + path.nodes[j - 1].q1)
                      * (1.0 / (dt * dt)) - acc.q1;
        Vec2 d2 = (path.nodes[j + 1].q2 - 2.0 * path.nodes[j].q2 + path.nodes[j - 1].q2)
                      * (1.0 / (dt * dt)) - acc.q2;
        res.push_back(std::max(d1.norm(), d2.norm()));
    }
    return res;
}

BoundaryResiduals first_variation_residuals(const DiscretePath& path, double theta) {
    const int n = path.segments();
    if (n < 4) throw std::invalid_argument("need n >= 4 for one-sided stencils");
    const double h = path.dt();
    auto fwd = [&](auto get) {  // 4th order one-sided derivative at the first node
        return (-25.0 * get(0) + 48.0 * get(1) - 36.0 * get(2) + 16.0 * get(3) -
                3.0 * get(4)) * (1.0 / (12.0 * h));
    };
    auto bwd = [&](auto get) {
        return (25.0 * get(n) - 48.0 * get(n - 1) + 36.0 * get(n - 2) -
                16.0 * get(n - 3) + 3.0 * get(n - 4)) * (1.0 / (12.0 * h));
    };
    BoundaryResiduals r;
    for (int j = 0; j < n; ++j) {
        r.vmax = std::max(r.vmax,
                          (path.nodes[j + 1].q1 - path.nodes[j].q1).norm() / h);
        r.vmax = std::max(r.vmax,
                          (path.nodes[j + 1].q2 - path.nodes[j].q2).norm() / h);
    }
    Vec2 v1_0 = fwd([&](int j) { return path.nodes[j].q1; });
    Vec2 v2_0 = fwd([&](int j) { return path.nodes[j].q2; });
    r.t0_rel = std::max(std::fabs(v1_0.x), std::fabs(v2_0.x)) / r.vmax;
    Vec2 v1_1 = bwd([&](int j) { return path.nodes[j].q1; });
    Vec2 v2_1 = bwd([&](int j) { return path.nodes[j].q2; });
    Vec2 mismatch = v1_1 + rotate(reflect_x(v2_1), 2.0 * theta);
    r.t1_rel = mismatch.norm() / r.vmax;
    return r;
}

double kepler_direct_minimum(double mu, double alpha, double T, double theta,
                             int n, long max_iters) {
    if (!(theta > 0.0 && theta <= std::numbers::pi))
        throw std::domain_error("kepler_direct_minimum: theta in (0, pi]");
    const double dt = T / n;
    const double co = std::cos(theta), si = std::sin(theta);
    // decision vector: [rho0, (x,y) x (n-1), rho1]; endpoints pinned to the
    // rays subtending theta (rotation invariance loses no generality)
    const size_t dim = 2 * static_cast<size_t>(n);

    auto nodes_of = [&](const std::vector<double>& v, std::vector<Vec2>& r) {
        r[0] = {v[0], 0.0};
        for (int j = 1; j < n; ++j) r[j] = {v[2 * j - 1], v[2 * j]};
        r[n] = {v[dim - 1] * co, v[dim - 1] * si};
    };

    std::vector<Vec2> r(n + 1), gr(n + 1);
    auto eval = [&](const std::vector<double>& v, std::vector<double>& g) {
        nodes_of(v, r);
        std::fill(gr.begin(), gr.end(), Vec2{});
        Kahan f;
        try {
            for (int j = 0; j < n; ++j) {
                Vec2 dr = r[j + 1] - r[j];
                f.add(0.5 * mu * dr.norm2() / dt);
                SegmentIntegral si2 = segment_potential_gradient(r[j], r[j + 1], 0.0);
                f.add(alpha * dt * si2.value);
                Vec2 kg = dr * (mu / dt);
                gr[j] += si2.d_p0 * (alpha * dt) - kg;
                gr[j + 1] += si2.d_p1 * (alpha * dt) + kg;
            }
        } catch (const CollisionSingularity&) {
            return kInf;
        }
        g.assign(dim, 0.0);
        g[0] = gr[0].x;
        for (int j = 1; j < n; ++j) {
            g[2 * j - 1] = gr[j].x;
            g[2 * j] = gr[j].y;
        }
        g[dim - 1] = gr[n].x * co + gr[n].y * si;
        return f.s;
    };

    // start away from the known circular minimizer to make the descent
    // nontrivial: a uniformly swept arc of 1.7x the balanced radius
    const double rstar = std::cbrt(alpha * T * T / (mu * theta * theta));
    std::vector<double> v(dim);
    v[0] = 1.7 * rstar;
    for (int j = 1; j < n; ++j) {
        double phi = theta * j / n;
        v[2 * j - 1] = 1.7 * rstar * std::cos(phi);
        v[2 * j] = 1.7 * rstar * std::sin(phi);
    }
    v[dim - 1] = 1.7 * rstar;

    DescentResult res = lbfgs_descent(v, eval, {}, max_iters, 1e-10, 12, false);
    return res.f;
}

}  // namespace ddorbit
