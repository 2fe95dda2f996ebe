#include "llsep/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "llsep/errors.hpp"
#include "llsep/verma.hpp"

namespace llsep {

namespace {

// 16-point Gauss-Legendre rule on [-1,1], positive half (symmetric).
constexpr int kHalf = 8;
constexpr double kAbscissa[kHalf] = {
    0.0950125098376374401853193, 0.2816035507792589132304605,
    0.4580167776572273863424194, 0.6178762444026437484466718,
    0.7554044083550030338951012, 0.8656312023878317438804679,
    0.9445750230732325760779884, 0.9894009349916499325961542,
};
constexpr double kWeight[kHalf] = {
    0.1894506104550684962853967, 0.1826034150449235888667637,
    0.1691565193950025381893121, 0.1495959888165767320815017,
    0.1246289712555338720524763, 0.0951585116824927848099251,
    0.0622535239386478928628438, 0.0271524594117540948517806,
};

struct Axis {
    std::vector<double> z;  // node positions in [eps, R]
    std::vector<double> w;  // quadrature weights including the z du Jacobian
};

// Composite rule on [eps, R] built in u = log z.
Axis log_axis(double eps, double R, int min_nodes) {
    if (!(eps > 0.0) || !(eps < R)) throw precondition_error("quadrature needs 0 < eps < R");
    double u0 = std::log(eps), u1 = std::log(R);
    int panels = static_cast<int>(std::ceil(8.0 * (u1 - u0)));
    panels = std::max({32, panels, (min_nodes + 2 * kHalf - 1) / (2 * kHalf)});

    Axis ax;
    ax.z.reserve(static_cast<std::size_t>(panels) * 2 * kHalf);
    ax.w.reserve(ax.z.capacity());
    double du = (u1 - u0) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = u0 + (p + 0.5) * du;
        double half = 0.5 * du;
        for (int i = kHalf - 1; i >= 0; --i) {  // ascending node order
            double u = mid - half * kAbscissa[i];
            double z = std::exp(u);
            ax.z.push_back(z);
            ax.w.push_back(kWeight[i] * half * z);
        }
        for (int i = 0; i < kHalf; ++i) {
            double u = mid + half * kAbscissa[i];
            double z = std::exp(u);
            ax.z.push_back(z);
            ax.w.push_back(kWeight[i] * half * z);
        }
    }
    return ax;
}

} // namespace

std::complex<double> inner_product_value(const QuadratureSpec& spec, bool parallel) {
    CompiledRat pm(closed_form_f(spec.J, spec.m, spec.a).prefactor());
    CompiledRat pn(closed_form_f(spec.J, spec.n, spec.a).prefactor());
    Axis ax = log_axis(spec.epsilon, spec.R, spec.nodes);
    const long N = static_cast<long>(ax.z.size());
    const int jexp = static_cast<int>(spec.J) - 1;

    std::vector<std::complex<double>> row(N);
    auto compute_row = [&](long i) {
        const double z1 = ax.z[i];
        std::complex<double> acc{0.0, 0.0};
        for (long j = 0; j < N; ++j) {
            const double z2 = ax.z[j];
            std::array<std::complex<double>, kNumVars> pt{
                std::complex<double>(z1, 0.0), std::complex<double>(z2, 0.0),
                std::complex<double>(0.0, 0.0), std::complex<double>(0.0, 0.0)};
            std::complex<double> f = std::conj(pm.eval(pt)) * pn.eval(pt);
            double weight =
                ax.w[j] * std::pow(z1 * z2, jexp) * std::exp(-(z1 + z2));
            acc += f * weight;
        }
        return acc * ax.w[i];
    };

#ifdef LLSEP_HAVE_OPENMP
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < N; ++i) row[i] = compute_row(i);
    } else
#else
    (void)parallel;
#endif
    {
        for (long i = 0; i < N; ++i) row[i] = compute_row(i);
    }

    // Fixed summation order keeps parallel results bitwise equal to serial.
    std::complex<double> total{0.0, 0.0};
    for (long i = 0; i < N; ++i) total += row[i];
    return total;
}

ProbeReport inner_product_probe(long J, long m, long n, const Rational& a,
                                const std::vector<double>& eps_ladder, double R, int nodes,
                                bool parallel) {
    if (eps_ladder.size() < 2) throw precondition_error("probe needs at least two rungs");
    ProbeReport rep;
    rep.eps_ladder = eps_ladder;
    for (double eps : eps_ladder) {
        QuadratureSpec spec;
        spec.epsilon = eps;
        spec.R = R;
        spec.nodes = nodes;
        spec.J = J;
        spec.m = m;
        spec.n = n;
        spec.a = a;
        rep.values.push_back(inner_product_value(spec, parallel));
    }

    // Monotonicity of |I| along the ladder (all same-direction moves).
    int dir = 0;
    for (std::size_t k = 1; k < rep.values.size(); ++k) {
        double d = std::abs(rep.values[k]) - std::abs(rep.values[k - 1]);
        int s = (d > 0) - (d < 0);
        if (s == 0) continue;
        if (dir == 0)
            dir = s;
        else if (s != dir)
            rep.monotone = false;
    }

    // Least-squares slope of log|I| against log eps over the last rungs.
    rep.fit_points = static_cast<int>(std::min<std::size_t>(4, rep.values.size()));
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < rep.fit_points; ++k) {
        std::size_t idx = rep.values.size() - rep.fit_points + k;
        double x = std::log(rep.eps_ladder[idx]);
        double y = std::log(std::abs(rep.values[idx]));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double denom = rep.fit_points * sxx - sx * sx;
    rep.slope = (rep.fit_points * sxy - sx * sy) / denom;

    // Log-divergent case: |I| grows as eps shrinks, but a polynomial in
    // log(1/eps) explains the values far better than any power law does. Compare
    // the worst relative misfit of the two models over the whole ladder.
    rep.log_flagged = false;
    const std::size_t cnt = rep.values.size();
    double growth = std::abs(rep.values.back()) - std::abs(rep.values.front());
    bool positive = true;
    for (const auto& v : rep.values) positive = positive && std::abs(v) > 0.0;
    if (cnt >= 4 && growth > 0.0 && positive) {
        // Power model: log|I| linear in log eps (full-ladder refit).
        double px = 0, py = 0, pxx = 0, pxy = 0;
        for (std::size_t k = 0; k < cnt; ++k) {
            double x = std::log(rep.eps_ladder[k]);
            double y = std::log(std::abs(rep.values[k]));
            px += x;
            py += y;
            pxx += x * x;
            pxy += x * y;
        }
        const double pden = cnt * pxx - px * px;
        const double pslope = (cnt * pxy - px * py) / pden;
        const double pinter = (py - pslope * px) / cnt;
        double err_power = 0;
        for (std::size_t k = 0; k < cnt; ++k) {
            double fit = pinter + pslope * std::log(rep.eps_ladder[k]);
            err_power = std::max(err_power,
                                 std::abs(std::log(std::abs(rep.values[k])) - fit));
        }

        // Log model: |I| quadratic in L = log(1/eps), fitted by normal equations.
        double s[5] = {0, 0, 0, 0, 0};
        double t[3] = {0, 0, 0};
        double vmax = 0;
        for (std::size_t k = 0; k < cnt; ++k) {
            const double L = -std::log(rep.eps_ladder[k]);
            const double v = std::abs(rep.values[k]);
            vmax = std::max(vmax, v);
            double lp = 1;
            for (int p = 0; p <= 4; ++p, lp *= L) {
                s[p] += lp;
                if (p <= 2) t[p] += v * lp;
            }
        }
        double A[3][4] = {{s[0], s[1], s[2], t[0]},
                          {s[1], s[2], s[3], t[1]},
                          {s[2], s[3], s[4], t[2]}};
        bool solvable = true;
        for (int col = 0; col < 3 && solvable; ++col) {
            int piv = col;
            for (int r = col + 1; r < 3; ++r)
                if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
            if (std::abs(A[piv][col]) < 1e-14) {
                solvable = false;
                break;
            }
            std::swap(A[col], A[piv]);
            for (int r = 0; r < 3; ++r) {
                if (r == col) continue;
                const double f = A[r][col] / A[col][col];
                for (int cc = col; cc < 4; ++cc) A[r][cc] -= f * A[col][cc];
            }
        }
        if (solvable) {
            const double q0 = A[0][3] / A[0][0];
            const double q1 = A[1][3] / A[1][1];
            const double q2 = A[2][3] / A[2][2];
            double err_log = 0;
            for (std::size_t k = 0; k < cnt; ++k) {
                const double L = -std::log(rep.eps_ladder[k]);
                const double fit = q0 + q1 * L + q2 * L * L;
                err_log = std::max(err_log,
                                   std::abs(std::abs(rep.values[k]) - fit) / vmax);
            }
            rep.log_flagged = err_power > 0.02 && err_log < 0.25 * err_power;
        }
    }
    return rep;
}

} // namespace llsep
