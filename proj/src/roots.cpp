#include "envlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "envlab/polynomial.hpp"
#include "envlab/trig_poly.hpp"

namespace envlab {

double Domain::wrap(double x) const noexcept {
    if (!periodic) return x;
    const double len = length();
    double y = std::fmod(x - lo, len);
    if (y < 0) y += len;
    if (y >= len) y -= len;
    return lo + y;
}

double Domain::distance(double x, double y) const noexcept {
    const double d = std::abs(x - y);
    if (!periodic) return d;
    const double len = length();
    const double r = std::fmod(d, len);
    return std::min(r, len - r);
}

namespace {

template <class F>
double bisect(const F& f, double a, double b, double tol) {
    double fa = f(a);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (fa < 0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

template <class P>
class RootFinder {
public:
    RootFinder(const P& p, const Domain& dom, const RootOptions& opt) : dom_(dom), opt_(opt) {
        chain_.push_back(p);
        for (int j = 1; j <= opt.max_multiplicity; ++j) chain_.push_back(derive(chain_.back()));
    }

    std::vector<Root> run() {
        const int n = std::max(opt_.samples, 16);
        const double h = dom_.length() / n;
        std::vector<double> xs(static_cast<std::size_t>(n) + 1);
        for (int i = 0; i <= n; ++i) xs[i] = dom_.lo + i * h;
        xs[n] = dom_.hi;

        scales_.assign(chain_.size(), 0.0);
        std::vector<double> v(xs.size()), dv(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
            v[i] = chain_[0](xs[i]);
            dv[i] = chain_[1](xs[i]);
            for (std::size_t j = 0; j < chain_.size(); ++j) {
                const double val = j == 0 ? v[i] : (j == 1 ? dv[i] : chain_[j](xs[i]));
                scales_[j] = std::max(scales_[j], std::abs(val));
            }
        }
        if (scales_[0] == 0.0) return {};

        std::vector<double> candidates;
        const auto& p = chain_[0];
        const auto& dp = chain_[1];
        for (int i = 0; i < n; ++i) {
            const double a = xs[i], b = xs[i + 1];
            if (v[i] == 0.0) {
                candidates.push_back(a);
                continue;
            }
            if (v[i] * v[i + 1] < 0.0) {
                candidates.push_back(bisect(p, a, b, opt_.x_tol));
                continue;
            }
            const bool extremum = dv[i] * dv[i + 1] < 0.0 || dv[i] == 0.0;
            if (extremum) {
                const double xm = dv[i] == 0.0 ? a : bisect(dp, a, b, opt_.x_tol);
                if (std::abs(p(xm)) <= opt_.even_tol * scales_[0]) candidates.push_back(xm);
            }
        }
        if (!dom_.periodic && v[n] == 0.0) candidates.push_back(xs[n]);

        std::vector<Root> roots;
        roots.reserve(candidates.size());
        for (double x : candidates) {
            Root r = polish(x);
            r.x = dom_.wrap(r.x);
            roots.push_back(r);
        }
        return merge(std::move(roots));
    }

private:
    Root polish(double x) const {
        const int kmax = static_cast<int>(chain_.size()) - 1;
        int k = 1;
        double best = -1.0;
        for (int j = 1; j <= kmax; ++j) {
            const double e = std::abs(chain_[j](x)) / factorial(j) * std::pow(opt_.cluster_radius, j);
            if (e > best) {
                best = e;
                k = j;
            }
        }
        for (; k >= 2; --k) {
            if (auto y = polish_on(x, k)) return {*y, k};
        }
        return {x, 1};
    }

    // Moves x onto the simple root of p^(k-1) and checks that lower derivatives vanish there.
    std::optional<double> polish_on(double x, int k) const {
        const auto& f = chain_[k - 1];
        const auto& df = chain_[k];
        double y = x;
        for (int it = 0; it < 60; ++it) {
            const double d = df(y);
            if (d == 0.0) return std::nullopt;
            const double step = f(y) / d;
            y -= step;
            if (std::abs(y - x) > opt_.cluster_radius) return std::nullopt;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(y))) break;
        }
        if (!dom_.periodic && (y < dom_.lo || y > dom_.hi)) return std::nullopt;
        for (int j = 0; j <= k - 2; ++j) {
            if (std::abs(chain_[j](y)) > opt_.even_tol * scales_[j]) return std::nullopt;
        }
        return y;
    }

    std::vector<Root> merge(std::vector<Root> roots) const {
        std::sort(roots.begin(), roots.end(), [](const Root& a, const Root& b) { return a.x < b.x; });
        std::vector<Root> out;
        for (const auto& r : roots) {
            if (!out.empty() && dom_.distance(out.back().x, r.x) <= opt_.merge_radius) {
                out.back().multiplicity = std::max(out.back().multiplicity, r.multiplicity);
                continue;
            }
            out.push_back(r);
        }
        if (dom_.periodic && out.size() > 1 && dom_.distance(out.front().x, out.back().x) <= opt_.merge_radius) {
            out.front().multiplicity = std::max(out.front().multiplicity, out.back().multiplicity);
            out.pop_back();
        }
        return out;
    }

    Domain dom_;
    RootOptions opt_;
    std::vector<P> chain_;
    std::vector<double> scales_;
};

}  // namespace

template <class P>
std::vector<Root> find_roots(const P& p, const Domain& dom, const RootOptions& opt) {
    return RootFinder<P>(p, dom, opt).run();
}

template <class P>
double sampled_max(const P& p, const Domain& dom, int samples) {
    double m = 0.0;
    const double h = dom.length() / samples;
    for (int i = 0; i <= samples; ++i) m = std::max(m, std::abs(p(dom.lo + i * h)));
    return m;
}

template std::vector<Root> find_roots<TrigPoly>(const TrigPoly&, const Domain&, const RootOptions&);
template std::vector<Root> find_roots<Polynomial>(const Polynomial&, const Domain&, const RootOptions&);
template double sampled_max<TrigPoly>(const TrigPoly&, const Domain&, int);
template double sampled_max<Polynomial>(const Polynomial&, const Domain&, int);

}  // namespace envlab
