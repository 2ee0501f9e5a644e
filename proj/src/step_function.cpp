#include "olk/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace olk {

StepFunction::StepFunction(std::vector<real> breaks, std::vector<real> values)
    : breaks_(std::move(breaks)), values_(std::move(values)) {
    validate();
    canonicalize();
}

void StepFunction::validate() const {
    if (breaks_.size() < 2 || values_.size() + 1 != breaks_.size())
        throw std::invalid_argument("step function: need n+1 breaks for n cells");
    if (breaks_.front() != 0.0)
        throw std::invalid_argument("step function: domain must start at 0");
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i)
        if (!(breaks_[i] < breaks_[i + 1]))
            throw std::invalid_argument("step function: breaks must be strictly increasing");
    for (real v : values_)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("step function: values must be finite and >= 0");
}

void StepFunction::canonicalize() {
    std::vector<real> nb{breaks_.front()}, nv;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!nv.empty() && nv.back() == values_[i])
            nb.back() = breaks_[i + 1];
        else {
            nv.push_back(values_[i]);
            nb.push_back(breaks_[i + 1]);
        }
    }
    breaks_ = std::move(nb);
    values_ = std::move(nv);
}

StepFunction StepFunction::zero(real T) { return constant(0.0, T); }

StepFunction StepFunction::constant(real c, real T) {
    return StepFunction({0.0, T}, {c});
}

StepFunction StepFunction::indicator(real c, real a, real b, real T) {
    if (!(0.0 <= a && a < b))
        throw std::invalid_argument("indicator: need 0 <= a < b");
    if (T < 0.0) T = b;
    if (T < b) throw std::invalid_argument("indicator: domain shorter than support");
    std::vector<real> br{0.0}, va;
    if (a > 0.0) { br.push_back(a); va.push_back(0.0); }
    br.push_back(b); va.push_back(c);
    if (T > b) { br.push_back(T); va.push_back(0.0); }
    return StepFunction(std::move(br), std::move(va));
}

real StepFunction::value_at(real t) const {
    if (t < 0.0 || t >= domain_end()) return 0.0;
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - breaks_.begin());
    return values_[i - 1];
}

bool StepFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](real v) { return v == 0.0; });
}

bool StepFunction::is_nonincreasing() const {
    for (std::size_t i = 0; i + 1 < values_.size(); ++i)
        if (values_[i] < values_[i + 1]) return false;
    return true;
}

real StepFunction::max_value() const {
    return *std::max_element(values_.begin(), values_.end());
}

StepFunction StepFunction::scaled(real c) const {
    if (!(std::isfinite(c) && c >= 0.0))
        throw std::invalid_argument("scaled: factor must be finite and >= 0");
    std::vector<real> nv(values_);
    for (real& v : nv) v *= c;
    return StepFunction(breaks_, std::move(nv));
}

std::vector<real> merged_grid(const StepFunction& f, const StepFunction& g) {
    std::vector<real> grid;
    grid.reserve(f.breaks().size() + g.breaks().size());
    std::merge(f.breaks().begin(), f.breaks().end(),
               g.breaks().begin(), g.breaks().end(), std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

namespace {

template <typename Op>
StepFunction combine(const StepFunction& f, const StepFunction& g, Op op) {
    std::vector<real> grid = merged_grid(f, g);
    std::vector<real> vals(grid.size() - 1);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        vals[i] = op(f.value_at(grid[i]), g.value_at(grid[i]));
    return StepFunction(std::move(grid), std::move(vals));
}

} // namespace

StepFunction StepFunction::plus(const StepFunction& g) const {
    return combine(*this, g, [](real a, real b) { return a + b; });
}

StepFunction StepFunction::times(const StepFunction& g) const {
    return combine(*this, g, [](real a, real b) { return a * b; });
}

StepFunction StepFunction::divided_by(const StepFunction& g) const {
    return combine(*this, g, [](real a, real b) -> real {
        if (b == 0.0) {
            if (a == 0.0) return 0.0;
            throw std::domain_error("divided_by: division by zero cell");
        }
        return a / b;
    });
}

StepFunction StepFunction::translated(real offset) const {
    if (!(offset >= 0.0) || !std::isfinite(offset))
        throw std::invalid_argument("translated: offset must be finite and >= 0");
    if (offset == 0.0) return *this;
    std::vector<real> nb{0.0, offset}, nv{0.0};
    for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
        nb.push_back(breaks_[i + 1] + offset);
        nv.push_back(values_[i]);
    }
    return StepFunction(std::move(nb), std::move(nv));
}

StepFunction StepFunction::extended_to(real T) const {
    if (T <= domain_end()) return *this;
    std::vector<real> nb(breaks_), nv(values_);
    nb.push_back(T);
    nv.push_back(0.0);
    return StepFunction(std::move(nb), std::move(nv));
}

real integrate(const StepFunction& f, real a, real b) {
    if (!(a <= b)) throw std::invalid_argument("integrate: need a <= b");
    a = std::max<real>(a, 0.0);
    b = std::min(b, f.domain_end());
    if (a >= b) return 0.0;
    const auto& br = f.breaks();
    const auto& va = f.values();
    real acc = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i) {
        real lo = std::max(a, br[i]), hi = std::min(b, br[i + 1]);
        if (lo < hi) acc += va[i] * (hi - lo);
    }
    return acc;
}

real distribution(const StepFunction& f, real lambda) {
    if (!(lambda >= 0.0))
        throw std::domain_error("distribution: lambda must be >= 0");
    const auto& br = f.breaks();
    const auto& va = f.values();
    real m = 0.0;
    for (std::size_t i = 0; i < va.size(); ++i)
        if (va[i] > lambda) m += br[i + 1] - br[i];
    return m;
}

StepFunction rearrange(const StepFunction& f) {
    struct Cell { real v, len; };
    std::vector<Cell> cells(f.cells());
    for (std::size_t i = 0; i < f.cells(); ++i)
        cells[i] = {f.values()[i], f.breaks()[i + 1] - f.breaks()[i]};
    std::stable_sort(cells.begin(), cells.end(),
                     [](const Cell& a, const Cell& b) { return a.v > b.v; });
    std::vector<real> nb{0.0}, nv;
    for (const Cell& c : cells) {
        nb.push_back(nb.back() + c.len);
        nv.push_back(c.v);
    }
    // Pin the endpoint so the domain survives accumulated rounding.
    nb.back() = f.domain_end();
    return StepFunction(std::move(nb), std::move(nv));
}

bool submajorizes(const StepFunction& g, const StepFunction& f) {
    real T = std::max(f.domain_end(), g.domain_end());
    StepFunction fs = rearrange(f).extended_to(T);
    StepFunction gs = rearrange(g).extended_to(T);
    std::vector<real> grid = merged_grid(fs, gs);
    real F = 0.0, G = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        real dt = grid[i + 1] - grid[i];
        F += fs.value_at(grid[i]) * dt;
        G += gs.value_at(grid[i]) * dt;
        if (F > G) return false;
    }
    return true;
}

HardyPairingResult hardy_pairing_check(const StepFunction& f1,
                                       const StepFunction& f2,
                                       const StepFunction& g) {
    real T = std::max({f1.domain_end(), f2.domain_end(), g.domain_end()});
    StepFunction a = f1.extended_to(T), b = f2.extended_to(T), h = g.extended_to(T);
    for (std::size_t i = 0; i + 1 < h.values().size(); ++i)
        if (h.values()[i] < h.values()[i + 1]) {
            std::ostringstream os;
            os << "hardy_pairing_check: g increases across t = " << h.breaks()[i + 1];
            throw std::domain_error(os.str());
        }
    std::vector<real> grid = merged_grid(a, b);
    real A = 0.0, B = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        real dt = grid[i + 1] - grid[i];
        A += a.value_at(grid[i]) * dt;
        B += b.value_at(grid[i]) * dt;
        if (A > B) {
            std::ostringstream os;
            os << "hardy_pairing_check: prefix integral fails at t = " << grid[i + 1]
               << " (" << A << " > " << B << ")";
            throw std::domain_error(os.str());
        }
    }
    real lhs = integrate(a.times(h));
    real rhs = integrate(b.times(h));
    real slack = 1e-12 * std::max<real>(1.0, std::abs(rhs));
    return {lhs, rhs, lhs <= rhs + slack};
}

Weight::Weight(StepFunction w) : w_(std::move(w)) {
    if (!w_.is_nonincreasing())
        throw std::invalid_argument("weight: must be non-increasing");
    for (real v : w_.values())
        if (!(v > 0.0))
            throw std::invalid_argument("weight: must be strictly positive");
    cumW_.assign(w_.breaks().size(), 0.0);
    for (std::size_t i = 0; i + 1 < w_.breaks().size(); ++i)
        cumW_[i + 1] = cumW_[i] + w_.values()[i] * (w_.breaks()[i + 1] - w_.breaks()[i]);
}

real Weight::W(real t) const {
    const auto& br = w_.breaks();
    if (t <= 0.0) return 0.0;
    if (t >= br.back()) return cumW_.back();
    auto it = std::upper_bound(br.begin(), br.end(), t);
    std::size_t i = static_cast<std::size_t>(it - br.begin()) - 1;
    return cumW_[i] + w_.values()[i] * (t - br[i]);
}

real Weight::W_inverse(real y) const {
    if (!(y >= 0.0) || y > cumW_.back() * (1.0 + 1e-12))
        throw std::domain_error("W_inverse: y outside [0, W(T)]");
    y = std::min(y, cumW_.back());
    auto it = std::lower_bound(cumW_.begin(), cumW_.end(), y);
    std::size_t i = static_cast<std::size_t>(it - cumW_.begin());
    if (i == 0) return 0.0;
    --i;
    if (cumW_[i] == y) return w_.breaks()[i];
    return w_.breaks()[i] + (y - cumW_[i]) / w_.values()[i];
}

} // namespace olk
