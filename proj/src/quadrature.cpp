#include "contagion/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace contagion::quad {

namespace {

struct Table {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Newton iteration on P_n; standard construction, symmetric rule.
Table build_gauss_legendre(int n) {
    Table t;
    t.nodes.resize(n);
    t.weights.resize(n);
    const double pi = std::acos(-1.0);
    int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        t.nodes[i] = -x;
        t.nodes[n - 1 - i] = x;
        t.weights[i] = w;
        t.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) t.nodes[n / 2] = 0.0;
    return t;
}

// Closed Clenshaw-Curtis rule with N + 1 points, N even.
Table build_clenshaw_curtis(int level) {
    Table t;
    if (level <= 1) {
        t.nodes = {0.0};
        t.weights = {2.0};
        return t;
    }
    const double pi = std::acos(-1.0);
    int N = 1 << (level - 1);
    int m = N + 1;
    t.nodes.resize(m);
    t.weights.resize(m);
    for (int j = 0; j <= N; ++j) t.nodes[j] = -std::cos(pi * j / N);
    t.weights[0] = t.weights[N] = 1.0 / (N * N - 1.0);
    for (int j = 1; j < N; ++j) {
        double theta = pi * j / N;
        double s = 0.0;
        for (int k = 1; k <= N / 2 - 1; ++k) s += std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
        double w = 1.0 - 2.0 * s - std::cos(N * theta) / (N * N - 1.0);
        t.weights[j] = 2.0 * w / N;
    }
    return t;
}

Rule cached(std::map<int, Table>& cache, std::mutex& mtx, int key, Table (*build)(int)) {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, build(key)).first;
    return {it->second.nodes, it->second.weights};
}

[[noreturn]] void bad_sample(const char* where, double x) {
    throw std::runtime_error(std::string(where) + ": non-finite integrand sample at x = " +
                             std::to_string(x));
}

// Smolyak combination coefficients: sum over level multi-indices i >= 1 with
// q - d + 1 <= |i| <= q, coefficient (-1)^{q-|i|} C(d-1, q-|i|).
double binom(int n, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

}  // namespace

Rule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: need >= 1 node");
    static std::map<int, Table> cache;
    static std::mutex mtx;
    return cached(cache, mtx, n, build_gauss_legendre);
}

Rule clenshaw_curtis(int level) {
    if (level < 1) throw std::invalid_argument("clenshaw_curtis: level must be >= 1");
    static std::map<int, Table> cache;
    static std::mutex mtx;
    return cached(cache, mtx, level, build_clenshaw_curtis);
}

double integrate_1d(const std::function<double(double)>& f, double a, double b, int nodes) {
    if (!(a < b)) {
        if (a == b) return 0.0;
        throw std::invalid_argument("integrate_1d: require a <= b");
    }
    Rule r = gauss_legendre(nodes);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        double x = mid + half * r.nodes[i];
        double fx = f(x);
        if (!std::isfinite(fx)) bad_sample("integrate_1d", x);
        acc += r.weights[i] * fx;
    }
    return acc * half;
}

namespace {

template <int D, class F>
double tensor_product(const F& f, const std::array<double, D>& lo, const std::array<double, D>& hi,
                      const std::array<Rule, D>& rules) {
    std::array<double, D> mid, half;
    for (int d = 0; d < D; ++d) {
        mid[d] = 0.5 * (lo[d] + hi[d]);
        half[d] = 0.5 * (hi[d] - lo[d]);
    }
    double acc = 0.0;
    if constexpr (D == 2) {
        for (std::size_t i = 0; i < rules[0].nodes.size(); ++i) {
            double x = mid[0] + half[0] * rules[0].nodes[i];
            for (std::size_t j = 0; j < rules[1].nodes.size(); ++j) {
                double y = mid[1] + half[1] * rules[1].nodes[j];
                double v = f(x, y);
                if (!std::isfinite(v)) bad_sample("integrate_2d", x);
                acc += rules[0].weights[i] * rules[1].weights[j] * v;
            }
        }
    } else {
        for (std::size_t i = 0; i < rules[0].nodes.size(); ++i) {
            double x = mid[0] + half[0] * rules[0].nodes[i];
            for (std::size_t j = 0; j < rules[1].nodes.size(); ++j) {
                double y = mid[1] + half[1] * rules[1].nodes[j];
                double wij = rules[0].weights[i] * rules[1].weights[j];
                for (std::size_t k = 0; k < rules[2].nodes.size(); ++k) {
                    double z = mid[2] + half[2] * rules[2].nodes[k];
                    double v = f(x, y, z);
                    if (!std::isfinite(v)) bad_sample("integrate_3d", x);
                    acc += wij * rules[2].weights[k] * v;
                }
            }
        }
    }
    double vol = 1.0;
    for (int d = 0; d < D; ++d) vol *= half[d];
    return acc * vol;
}

template <int D, class F>
double smolyak(const F& f, const std::array<double, D>& lo, const std::array<double, D>& hi,
               int q) {
    if (q < D) q = D;
    double total = 0.0;
    std::array<int, D> idx;
    auto recurse = [&](auto&& self, int d, int remaining_min, int remaining_max) -> void {
        if (d == D - 1) {
            for (int i = std::max(1, remaining_min); i <= remaining_max; ++i) {
                idx[d] = i;
                int norm = 0;
                for (int e = 0; e < D; ++e) norm += idx[e];
                double coef = ((q - norm) % 2 == 0 ? 1.0 : -1.0) * binom(D - 1, q - norm);
                std::array<Rule, D> rules;
                for (int e = 0; e < D; ++e) rules[e] = clenshaw_curtis(idx[e]);
                total += coef * tensor_product<D>(f, lo, hi, rules);
            }
            return;
        }
        for (int i = 1; i <= remaining_max - (D - 1 - d); ++i) {
            idx[d] = i;
            self(self, d + 1, remaining_min - i, remaining_max - i);
        }
    };
    recurse(recurse, 0, q - D + 1, q);
    return total;
}

}  // namespace

double integrate_2d(const std::function<double(double, double)>& f,
                    std::array<double, 2> lo, std::array<double, 2> hi, const GridSpec& spec) {
    for (int d = 0; d < 2; ++d)
        if (!(lo[d] <= hi[d])) throw std::invalid_argument("integrate_2d: malformed box");
    if (spec.kind == GridKind::tensor) {
        std::array<Rule, 2> rules = {gauss_legendre(spec.nodes[0]), gauss_legendre(spec.nodes[1])};
        return tensor_product<2>(f, lo, hi, rules);
    }
    return smolyak<2>(f, lo, hi, spec.level);
}

double integrate_3d(const std::function<double(double, double, double)>& f,
                    std::array<double, 3> lo, std::array<double, 3> hi, const GridSpec& spec) {
    for (int d = 0; d < 3; ++d)
        if (!(lo[d] <= hi[d])) throw std::invalid_argument("integrate_3d: malformed box");
    if (spec.kind == GridKind::tensor) {
        std::array<Rule, 3> rules = {gauss_legendre(spec.nodes[0]), gauss_legendre(spec.nodes[1]),
                                     gauss_legendre(spec.nodes[2])};
        return tensor_product<3>(f, lo, hi, rules);
    }
    return smolyak<3>(f, lo, hi, spec.level);
}

double integrate_time_leg(const std::function<double(double)>& P, double rf, double T, int nodes) {
    if (!(T > 0.0)) throw std::invalid_argument("integrate_time_leg: T must be > 0");
    return integrate_1d([&](double s) { return std::exp(-rf * s) * P(s); }, 0.0, T, nodes);
}

}  // namespace contagion::quad
