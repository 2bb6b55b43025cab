/*
   Copyright 2026 The reslim Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef RESLIM_SUPPORT_SET_HPP
#define RESLIM_SUPPORT_SET_HPP

#include <algorithm>
#include <cstddef>
#include <vector>

#include "reslim/errors.hpp"
#include "reslim/trig_poly.hpp"

namespace reslim {

/// A finite set of distinct torus points, kept sorted ascending. The minimal
/// wrap-around distance between distinct points is computed on construction
/// and is strictly positive.
class SupportSet {
  public:
    static SupportSet from_points(std::vector<TorusPoint> points) {
        if (points.empty()) throw std::invalid_argument("SupportSet: empty point set");
        std::sort(points.begin(), points.end());
        double min_sep = 0.5;
        if (points.size() > 1) {
            for (size_t i = 0; i + 1 < points.size(); ++i) {
                const double gap = points[i + 1].value() - points[i].value();
                min_sep = std::min(min_sep, gap);
            }
            const double wrap = 1.0 - (points.back().value() - points.front().value());
            min_sep = std::min(min_sep, wrap);
            if (min_sep <= 0.0)
                throw degenerate_support_error("SupportSet: coincident support points");
        }
        return SupportSet(std::move(points), min_sep);
    }

    size_t size() const { return points_.size(); }
    const std::vector<TorusPoint>& points() const { return points_; }

    TorusPoint point(size_t i) const {
        if (i >= points_.size()) throw std::out_of_range("SupportSet: index out of range");
        return points_[i];
    }

    /// Minimal wrap-around distance between distinct points (1/2 for a singleton).
    double min_separation() const { return min_sep_; }

    /// Index of the point closest to 0 on the torus.
    size_t index_nearest_origin() const {
        size_t best = 0;
        double best_d = torus_distance(points_[0], TorusPoint(0.0));
        for (size_t i = 1; i < points_.size(); ++i) {
            const double d = torus_distance(points_[i], TorusPoint(0.0));
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return best;
    }

  private:
    SupportSet(std::vector<TorusPoint> points, double min_sep)
        : points_(std::move(points)), min_sep_(min_sep) {}

    std::vector<TorusPoint> points_;
    double min_sep_;
};

/// Directed + reversed wrap-around Hausdorff distance between two point sets.
inline double hausdorff_distance(const SupportSet& a, const SupportSet& b) {
    const auto one_sided = [](const SupportSet& x, const SupportSet& y) {
        double worst = 0.0;
        for (const TorusPoint& p : x.points()) {
            double nearest = 0.5;
            for (const TorusPoint& q : y.points()) nearest = std::min(nearest, torus_distance(p, q));
            worst = std::max(worst, nearest);
        }
        return worst;
    };
    return std::max(one_sided(a, b), one_sided(b, a));
}

} // namespace reslim

#endif // RESLIM_SUPPORT_SET_HPP
