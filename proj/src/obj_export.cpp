#include "obj_export.hpp"

#include <array>
#include <cmath>
#include <optional>

namespace ruledmotion::io {

namespace {

struct Segment {
    std::array<double, 3> a, b;
};

// Clips the line through `anchor` with unit direction `dir` to the cube
// [-r, r]^3 by slab intersection.
std::optional<Segment> clip_line(const std::array<double, 3>& anchor, const std::array<double, 3>& dir,
                                 double r) {
    double lo = -1e300, hi = 1e300;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(dir[static_cast<size_t>(i)]) < 1e-14) {
            if (std::abs(anchor[static_cast<size_t>(i)]) > r) return std::nullopt;
            continue;
        }
        double s1 = (-r - anchor[static_cast<size_t>(i)]) / dir[static_cast<size_t>(i)];
        double s2 = (r - anchor[static_cast<size_t>(i)]) / dir[static_cast<size_t>(i)];
        if (s1 > s2) std::swap(s1, s2);
        lo = std::max(lo, s1);
        hi = std::min(hi, s2);
    }
    if (lo >= hi) return std::nullopt;
    auto at = [&](double s) {
        return std::array<double, 3>{anchor[0] + s * dir[0], anchor[1] + s * dir[1],
                                     anchor[2] + s * dir[2]};
    };
    return Segment{at(lo), at(hi)};
}

std::optional<Segment> clip_ruling(const PluckerLine<double>& ln, double r) {
    const auto& d = ln.direction;
    const auto& m = ln.moment;
    double n2 = d.x * d.x + d.y * d.y + d.z * d.z;
    if (n2 <= 0) return std::nullopt;
    // foot point: (d x m) / |d|^2
    std::array<double, 3> anchor{(d.y * m.z - d.z * m.y) / n2, (d.z * m.x - d.x * m.z) / n2,
                                 (d.x * m.y - d.y * m.x) / n2};
    double n = std::sqrt(n2);
    std::array<double, 3> dir{d.x / n, d.y / n, d.z / n};
    return clip_line(anchor, dir, r);
}

}  // namespace

void write_ruled_surface_obj(std::ostream& os, const LinePoly<double>& L,
                             const std::vector<PluckerLine<double>>& extra_lines,
                             const ObjOptions& opts) {
    os << "# ruled surface sampled from a line polynomial\n";
    std::vector<std::optional<Segment>> rulings;
    const int n = std::max(2, opts.samples);
    for (int i = 0; i < n; ++i) {
        double t = opts.t_lo + (opts.t_hi - opts.t_lo) * i / (n - 1);
        std::optional<Segment> seg;
        try {
            seg = clip_ruling(L.ruling_at(t, 1e-5), opts.clip);
        } catch (const Error&) {
            seg = std::nullopt;  // vanishing direction at this parameter
        }
        rulings.push_back(seg);
    }
    int vcount = 0;
    std::vector<int> base(rulings.size(), -1);
    auto emit_vertex = [&](const std::array<double, 3>& p) {
        os << "v " << p[0] << " " << p[1] << " " << p[2] << "\n";
        return ++vcount;
    };
    for (size_t i = 0; i < rulings.size(); ++i) {
        if (!rulings[i]) continue;
        base[i] = emit_vertex(rulings[i]->a);
        emit_vertex(rulings[i]->b);
    }
    os << "g rulings\n";
    for (size_t i = 0; i < rulings.size(); ++i)
        if (rulings[i]) os << "l " << base[i] << " " << base[i] + 1 << "\n";
    os << "g strips\n";
    for (size_t i = 0; i + 1 < rulings.size(); ++i)
        if (rulings[i] && rulings[i + 1])
            os << "f " << base[i] << " " << base[i] + 1 << " " << base[i + 1] + 1 << " " << base[i + 1]
               << "\n";
    if (!extra_lines.empty()) {
        os << "g axes\n";
        for (const auto& ln : extra_lines) {
            auto seg = clip_ruling(ln, opts.clip);
            if (!seg) continue;
            int a = emit_vertex(seg->a);
            emit_vertex(seg->b);
            os << "l " << a << " " << a + 1 << "\n";
        }
    }
}

}  // namespace ruledmotion::io
