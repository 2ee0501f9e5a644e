#include "olk/level.hpp"

#include <algorithm>
#include <stdexcept>

namespace olk {

namespace {

struct Block {
    std::size_t lo, hi; // cell index range [lo, hi)
    real F, W;
};

} // namespace

LevelDecomposition halperin_level(const StepFunction& f, const Weight& w) {
    if (f.domain_end() > w.domain_end() * (1.0 + 1e-12))
        throw std::invalid_argument("halperin_level: f extends past the weighted domain");
    StepFunction fe = f.extended_to(w.domain_end());
    std::vector<real> grid = merged_grid(fe, w.fn());
    std::size_t n = grid.size() - 1;
    std::vector<real> fv(n), wv(n), dt(n);
    for (std::size_t i = 0; i < n; ++i) {
        fv[i] = fe.value_at(grid[i]);
        wv[i] = w.fn().value_at(grid[i]);
        dt[i] = grid[i + 1] - grid[i];
    }

    std::vector<Block> stack;
    for (std::size_t i = 0; i < n; ++i) {
        Block cur{i, i + 1, fv[i] * dt[i], wv[i] * dt[i]};
        // Merge while the previous ratio F/W fails to strictly exceed the
        // new one; cross-multiplied to avoid divisions.
        while (!stack.empty() && stack.back().F * cur.W <= cur.F * stack.back().W) {
            cur.lo = stack.back().lo;
            cur.F += stack.back().F;
            cur.W += stack.back().W;
            stack.pop_back();
        }
        stack.push_back(cur);
    }

    LevelDecomposition dec;
    dec.source = fe;
    dec.weight = w.fn();
    std::vector<real> lv(n), iw(n);
    for (const Block& b : stack) {
        bool multi = b.hi - b.lo > 1;
        real ratio = b.F == 0.0 ? 0.0 : b.F / b.W;
        // Zero-mass blocks level nothing; only mass-carrying spans count
        // as level intervals.
        if (multi && b.F > 0.0) dec.intervals.push_back({grid[b.lo], grid[b.hi], ratio});
        for (std::size_t i = b.lo; i < b.hi; ++i) {
            if (!multi) {
                lv[i] = fv[i]; // single-cell averaging is the identity; keep it exact
                iw[i] = wv[i];
            } else if (b.F == 0.0) {
                lv[i] = 0.0;
                iw[i] = wv[i]; // no mass to deform toward
            } else {
                lv[i] = ratio * wv[i];
                iw[i] = fv[i] * (b.W / b.F);
            }
        }
    }
    dec.level = StepFunction(grid, std::move(lv));
    dec.inverse_weight = StepFunction(std::move(grid), std::move(iw));
    return dec;
}

StepFunction sinnamon_level(const StepFunction& f, const Weight& w) {
    if (f.domain_end() > w.domain_end() * (1.0 + 1e-12))
        throw std::invalid_argument("sinnamon_level: f extends past the weighted domain");
    StepFunction fe = f.extended_to(w.domain_end());
    std::vector<real> grid = merged_grid(fe, w.fn());
    std::size_t n = grid.size() - 1;
    // Nodes (x, y) = (W(t), int_0^t f w) at grid points.
    std::vector<real> x(n + 1, 0.0), y(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        real dt = grid[i + 1] - grid[i];
        real wi = w.fn().value_at(grid[i]);
        x[i + 1] = x[i] + wi * dt;
        y[i + 1] = y[i] + fe.value_at(grid[i]) * wi * dt;
    }
    // Upper convex hull, left to right; collinear middle points drop.
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i <= n; ++i) {
        while (hull.size() >= 2) {
            std::size_t a = hull[hull.size() - 2], b = hull[hull.size() - 1];
            real cross = (x[b] - x[a]) * (y[i] - y[a]) - (y[b] - y[a]) * (x[i] - x[a]);
            if (cross >= 0.0) hull.pop_back();
            else break;
        }
        hull.push_back(i);
    }
    std::vector<real> slopes(n);
    for (std::size_t h = 0; h + 1 < hull.size(); ++h) {
        std::size_t a = hull[h], b = hull[h + 1];
        real s = (y[b] - y[a]) / (x[b] - x[a]);
        for (std::size_t i = a; i < b; ++i) slopes[i] = s;
    }
    return StepFunction(std::move(grid), std::move(slopes));
}

StepFunction inverse_level_weight(const StepFunction& fstar, const Weight& w) {
    if (!fstar.is_nonincreasing())
        throw std::domain_error("inverse_level_weight: input must be non-increasing");
    return halperin_level(fstar, w).inverse_weight;
}

LevelCrosscheck crosscheck_level(const StepFunction& f, const Weight& w, real tol) {
    StepFunction a = halperin_level(f, w).level.divided_by(w.fn());
    StepFunction b = sinnamon_level(f.divided_by(w.fn()), w);
    std::vector<real> grid = merged_grid(a, b);
    real dev = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        dev = std::max(dev, std::abs(a.value_at(grid[i]) - b.value_at(grid[i])));
    return {dev, dev <= tol};
}

} // namespace olk
