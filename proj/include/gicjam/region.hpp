#pragma once

// Rate regions over (R1, R2): intersections of halfspaces a1 R1 + a2 R2 <= b
// with the nonnegative quadrant, and plain unions of such regions.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string_view>
#include <vector>

namespace gicjam {

inline constexpr double kBoundaryTol = 1e-9;

struct Halfspace
{
    int a1 = 0;
    int a2 = 0;
    double b = 0.0;

    double slack(double R1, double R2) const { return b - (a1 * R1 + a2 * R2); }

    // The only coefficient patterns the outer and Han-Kobayashi bounds use.
    bool standard_shape() const
    {
        constexpr std::array<std::array<int, 2>, 5> shapes{{{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}}};
        return std::ranges::any_of(shapes, [&](auto s) { return s[0] == a1 && s[1] == a2; });
    }

    bool operator==(const Halfspace&) const = default;
};

enum class Membership { inside, boundary, outside };

inline std::string_view to_string(Membership m)
{
    switch (m) {
    case Membership::inside:
        return "inside";
    case Membership::boundary:
        return "boundary";
    case Membership::outside:
        return "outside";
    }
    return "?";
}

struct Point
{
    double R1 = 0.0;
    double R2 = 0.0;
};

/// Bounded convex polygon {R >= 0 : a.R <= b for all halfspaces}.
///
/// `open` marks regions defined by strict inequalities; geometry and
/// membership are identical either way, boundary points report `boundary`.
struct RateRegion
{
    std::vector<Halfspace> halfspaces;
    bool empty = false;
    bool open = false;

    static RateRegion make_empty()
    {
        RateRegion r;
        r.empty = true;
        return r;
    }

    double min_slack(double R1, double R2) const
    {
        double s = std::min(R1, R2);
        for (const auto& h : halfspaces)
            s = std::min(s, h.slack(R1, R2));
        return s;
    }

    Membership membership(double R1, double R2, double tol = kBoundaryTol) const
    {
        if (empty || R1 < 0.0 || R2 < 0.0)
            return Membership::outside;
        bool tight = false;
        for (const auto& h : halfspaces) {
            const double s = h.slack(R1, R2);
            if (s < -tol)
                return Membership::outside;
            if (s <= tol)
                tight = true;
        }
        return tight ? Membership::boundary : Membership::inside;
    }

    bool contains(double R1, double R2, double tol = kBoundaryTol) const
    {
        return membership(R1, R2, tol) != Membership::outside;
    }

    /// Largest R with (R, R) in the region; 0 when empty or when the
    /// diagonal misses the region.
    double max_symmetric_rate() const
    {
        if (empty)
            return 0.0;
        double lo = 0.0;
        double hi = std::numeric_limits<double>::infinity();
        for (const auto& h : halfspaces) {
            const int a = h.a1 + h.a2;
            if (a > 0)
                hi = std::min(hi, h.b / a);
            else if (a < 0)
                lo = std::max(lo, h.b / a);
            else if (h.b < 0.0)
                return 0.0;
        }
        return (std::isfinite(hi) && hi >= lo) ? hi : 0.0;
    }
};

namespace detail {

// Lines of the form a1 R1 + a2 R2 = b including the two axes (as -R <= 0).
struct Line
{
    double a1, a2, b;
};

inline std::vector<Line> lines_with_axes(const std::vector<Halfspace>& hs)
{
    std::vector<Line> lines;
    lines.reserve(hs.size() + 2);
    for (const auto& h : hs)
        lines.push_back({double(h.a1), double(h.a2), h.b});
    lines.push_back({-1.0, 0.0, 0.0});
    lines.push_back({0.0, -1.0, 0.0});
    return lines;
}

// Sufficient for boundedness inside the nonnegative quadrant.
inline bool bounded(const std::vector<Halfspace>& hs)
{
    const bool caps1 = std::ranges::any_of(hs, [](const Halfspace& h) { return h.a1 > 0 && h.a2 >= 0; });
    const bool caps2 = std::ranges::any_of(hs, [](const Halfspace& h) { return h.a2 > 0 && h.a1 >= 0; });
    return caps1 && caps2;
}

inline bool satisfies_all(const std::vector<Line>& lines, double x, double y, double tol)
{
    return std::ranges::all_of(lines, [&](const Line& l) { return l.a1 * x + l.a2 * y <= l.b + tol; });
}

} // namespace detail

/// Vertices of the polygon, counter-clockwise around the centroid.
/// Pairwise line intersections are filtered for feasibility; parallel pairs
/// are skipped.
inline std::vector<Point> vertices(const RateRegion& r, double tol = kBoundaryTol)
{
    std::vector<Point> out;
    if (r.empty)
        return out;
    const auto lines = detail::lines_with_axes(r.halfspaces);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            const auto& p = lines[i];
            const auto& q = lines[j];
            const double det = p.a1 * q.a2 - p.a2 * q.a1;
            if (std::abs(det) < 1e-12)
                continue;
            const double x = (p.b * q.a2 - p.a2 * q.b) / det;
            const double y = (p.a1 * q.b - p.b * q.a1) / det;
            if (!detail::satisfies_all(lines, x, y, tol))
                continue;
            const bool dup = std::ranges::any_of(out, [&](const Point& v) {
                return std::abs(v.R1 - x) <= 1e-9 && std::abs(v.R2 - y) <= 1e-9;
            });
            if (!dup)
                out.push_back({std::max(x, 0.0) + 0.0, std::max(y, 0.0) + 0.0}); // no -0.0
        }
    }
    if (out.size() > 2) {
        double cx = 0.0, cy = 0.0;
        for (const auto& v : out) {
            cx += v.R1;
            cy += v.R2;
        }
        cx /= double(out.size());
        cy /= double(out.size());
        std::ranges::sort(out, [&](const Point& u, const Point& v) {
            return std::atan2(u.R2 - cy, u.R1 - cx) < std::atan2(v.R2 - cy, v.R1 - cx);
        });
    }
    return out;
}

/// Drops halfspaces implied by the others (and R >= 0). Marks the region
/// empty when no feasible point remains.
inline RateRegion remove_redundant(RateRegion r, double tol = kBoundaryTol)
{
    if (r.empty)
        return r;
    if (vertices(r, tol).empty()) {
        r.halfspaces.clear();
        r.empty = true;
        return r;
    }
    for (std::size_t k = 0; k < r.halfspaces.size();) {
        RateRegion without = r;
        without.halfspaces.erase(without.halfspaces.begin() + std::ptrdiff_t(k));
        const auto vs = vertices(without, tol);
        const auto& h = r.halfspaces[k];
        // Vertices only certify implication when the remainder is bounded.
        const bool implied = detail::bounded(without.halfspaces) && !vs.empty() &&
                             std::ranges::all_of(vs, [&](const Point& v) { return h.slack(v.R1, v.R2) >= -tol; });
        if (implied)
            r.halfspaces = std::move(without.halfspaces);
        else
            ++k;
    }
    return r;
}

/// Pair of private-power fractions (alpha1, alpha2) in [0,1]^2.
struct AlphaPair
{
    double alpha1 = 1.0;
    double alpha2 = 1.0;

    double alpha(int i) const { return i == 1 ? alpha1 : alpha2; }
    bool valid() const { return alpha1 >= 0.0 && alpha1 <= 1.0 && alpha2 >= 0.0 && alpha2 <= 1.0; }
    bool operator==(const AlphaPair&) const = default;
};

struct UnionMember
{
    AlphaPair alpha;
    RateRegion region;
};

/// Union of fixed-alpha regions. Empty member list means the empty set.
struct UnionRegion
{
    std::vector<UnionMember> members;

    bool empty() const
    {
        return std::ranges::all_of(members, [](const UnionMember& m) { return m.region.empty; });
    }

    Membership membership(double R1, double R2, double tol = kBoundaryTol) const
    {
        bool any_boundary = false;
        for (const auto& m : members) {
            const auto s = m.region.membership(R1, R2, tol);
            if (s == Membership::inside)
                return s;
            if (s == Membership::boundary)
                any_boundary = true;
        }
        return any_boundary ? Membership::boundary : Membership::outside;
    }

    double max_symmetric_rate() const
    {
        double best = 0.0;
        for (const auto& m : members)
            best = std::max(best, m.region.max_symmetric_rate());
        return best;
    }
};

} // namespace gicjam
