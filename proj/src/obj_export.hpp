#pragma once

#include <ostream>
#include <vector>

#include "ruledmotion/line_geometry.hpp"

namespace ruledmotion::io {

struct ObjOptions {
    int samples = 48;
    double clip = 10.0;   // half-width of the clip box around the origin
    double t_lo = -1.2;
    double t_hi = 1.2;
};

// Samples the rulings of L over [t_lo, t_hi], clips each to the box
// [-clip, clip]^3 and writes them as line elements plus quad strips between
// consecutive rulings. Extra lines (e.g. revolute axes) are appended as
// clipped segments.
void write_ruled_surface_obj(std::ostream& os, const LinePoly<double>& L,
                             const std::vector<PluckerLine<double>>& extra_lines,
                             const ObjOptions& opts);

}  // namespace ruledmotion::io
