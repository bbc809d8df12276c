// Copyright 2026 The rvqc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Proper time along circular worldlines in Minkowski spacetime (c = 1) and
// the single-qubit rotation angle it induces through the qubit's free
// Hamiltonian H = (Omega / 2) n . sigma.

#pragma once

#include <array>
#include <cmath>

#include "rvqc/error.hpp"

namespace rvqc {

/// One stretch of circular motion, R = radius, omega = angular frequency,
/// dt = duration in lab coordinate time. All in natural units.
struct TrajectorySegment {
    double radius = 0.0;
    double angular_frequency = 0.0;
    double coordinate_duration = 1.0;
};

struct QubitSpec {
    double energy_gap = 0.0;     // Omega
    double axis_azimuthal = 0.0;  // in [0, pi]
    double axis_polar = 0.0;      // in [0, 2 pi)
    std::array<double, 3> position{};
};

/// dtau/dt = sqrt(1 - R^2 omega^2). Throws SuperluminalTrajectory if R|omega| >= 1.
inline double proper_time_factor(const TrajectorySegment& seg) {
    if (!(seg.radius >= 0.0)) throw InvalidArgument("trajectory radius must be non-negative");
    if (!(seg.coordinate_duration > 0.0)) throw InvalidArgument("trajectory duration must be positive");
    const double speed = seg.radius * std::fabs(seg.angular_frequency);
    if (!(speed < 1.0)) {
        throw SuperluminalTrajectory("circular trajectory is not timelike: R|omega| >= 1");
    }
    return std::sqrt((1.0 - speed) * (1.0 + speed));
}

/// theta = Omega * dtau / 2 for an explicitly supplied proper-time factor.
/// This is the entry point for non-circular motions.
inline double rotation_angle_from_factor(double energy_gap, double factor, double coordinate_duration) {
    if (!(factor > 0.0 && factor <= 1.0)) {
        throw InvalidArgument("proper-time factor must lie in (0, 1]");
    }
    return 0.5 * energy_gap * factor * coordinate_duration;
}

/// Rotation angle accumulated over the segment. Not reduced mod 2 pi.
inline double rotation_angle(const QubitSpec& q, const TrajectorySegment& seg) {
    return rotation_angle_from_factor(q.energy_gap, proper_time_factor(seg), seg.coordinate_duration);
}

/// Angular frequency omega >= 0 that makes a qubit with gap Omega on a circle of
/// radius R accumulate theta_target over dt.
inline double solve_omega_for_angle(double theta_target, double energy_gap, double radius,
                                    double coordinate_duration) {
    if (!(radius > 0.0)) throw InvalidArgument("radius must be positive to tune the angle");
    if (!(energy_gap > 0.0 && coordinate_duration > 0.0)) {
        throw UnreachableAngle("angle cannot be tuned without a positive gap and duration");
    }
    const double ratio = 2.0 * theta_target / (energy_gap * coordinate_duration);
    if (!(ratio > 0.0 && ratio <= 1.0)) {
        throw UnreachableAngle("target angle must lie in (0, Omega dt / 2]");
    }
    return std::sqrt((1.0 - ratio) * (1.0 + ratio)) / radius;
}

}  // namespace rvqc
