#pragma once

#include <cstdint>
#include <string>

#include "feasdr/geometry.hpp"

namespace feasdr {

/// Recipe for a synthetic problem instance. The seed fully determines the
/// instance; families other than `from_file` sample a point p first and build
/// every set around it. The polytope and ball/box families certify a slack
/// ball around p inside every set; the line family intersects exactly at p
/// (empty interior), which it records as a membership-only certificate
/// (slack 0).
struct InstanceSpec {
    enum class Family { polytope, ball_box_mix, lines_through_point, from_file };

    Family family = Family::polytope;
    int dim = 0;
    int halfspaces = 0; // polytope
    int balls = 0;      // ball_box_mix
    int boxes = 0;      // ball_box_mix
    int lines = 0;      // lines_through_point
    double slack = 0.0; // interior-certified families only
    std::string path;   // from_file
    std::uint64_t seed = 0;

    void validate() const;
};

/// Parses the CLI spelling of a spec: `polytope:<dim>x<count>:slack=<s>`,
/// `ball_box_mix:<dim>x<balls>,<boxes>:slack=<s>`,
/// `lines_through_point:<dim>x<count>`, or `explicit:<path>`. The seed is not
/// part of the text; callers set it separately.
InstanceSpec parse_instance_spec(const std::string& text);

FeasibilityProblem generate(const InstanceSpec& spec);

} // namespace feasdr
