#include "nlrd/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "nlrd/errors.hpp"

namespace nlrd {
namespace {

// Gauss-Kronrod 15-point nodes/weights on [-1,1] with embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b, value, error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) resk += kWgk[i] * (fv[i] + fv[14 - i]);
    for (int i = 0; i < 3; ++i) resg += kWg[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);
    return {a, b, resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double abs_tol,
                 int max_intervals) {
    if (a == b) return 0.0;
    std::vector<Panel> heap{gk15(f, a, b)};
    auto cmp = [](const Panel& p, const Panel& q) { return p.error < q.error; };
    int splits = 0;
    for (;;) {
        double err = 0.0, val = 0.0;
        for (const Panel& p : heap) {
            err += p.error;
            val += p.value;
        }
        if (err <= abs_tol) return val;
        if (++splits > max_intervals)
            throw QuadratureError("integrate: failed to reach tolerance (divergent or rough integrand)");
        std::pop_heap(heap.begin(), heap.end(), cmp);
        Panel worst = heap.back();
        heap.pop_back();
        const double m = 0.5 * (worst.a + worst.b);
        heap.push_back(gk15(f, worst.a, m));
        std::push_heap(heap.begin(), heap.end(), cmp);
        heap.push_back(gk15(f, m, worst.b));
        std::push_heap(heap.begin(), heap.end(), cmp);
    }
}

double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& breakpoints, double abs_tol) {
    std::vector<double> pts{a};
    for (double p : breakpoints)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    double sum = 0.0;
    const double tol = abs_tol / static_cast<double>(pts.size() - 1);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) sum += integrate(f, pts[i], pts[i + 1], tol);
    return sum;
}

}  // namespace nlrd
