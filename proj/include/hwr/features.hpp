// Copyright 2026 The dhbn-hwr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you
// may not use this file except in compliance with the License. You may
// obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Hu and Zernike moment descriptors of binary cells.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "hwr/error.hpp"
#include "hwr/image.hpp"
#include "hwr/imaging.hpp"

namespace hwr::features {

using FeatureVector = std::vector<double>;

/// Feature vectors of one word, indexed [block][frame * cells + cell].
using WordFeatures = std::vector<std::vector<FeatureVector>>;

inline constexpr int kHuCount = 7;

/// Central moments mu_pq for p + q <= 3, from a centred second pass.
struct CentralMoments {
    double m00 = 0, cx = 0, cy = 0;
    double mu20 = 0, mu11 = 0, mu02 = 0;
    double mu30 = 0, mu21 = 0, mu12 = 0, mu03 = 0;
};

// x runs along columns, y along rows.
inline CentralMoments central_moments(const BinaryImage& cell) {
    CentralMoments m;
    double sx = 0, sy = 0;
    for (int r = 0; r < cell.height(); ++r)
        for (int c = 0; c < cell.width(); ++c)
            if (cell.at(r, c)) {
                m.m00 += 1;
                sx += c;
                sy += r;
            }
    if (m.m00 == 0) return m;
    m.cx = sx / m.m00;
    m.cy = sy / m.m00;
    for (int r = 0; r < cell.height(); ++r)
        for (int c = 0; c < cell.width(); ++c) {
            if (!cell.at(r, c)) continue;
            const double dx = c - m.cx, dy = r - m.cy;
            m.mu20 += dx * dx;
            m.mu11 += dx * dy;
            m.mu02 += dy * dy;
            m.mu30 += dx * dx * dx;
            m.mu21 += dx * dx * dy;
            m.mu12 += dx * dy * dy;
            m.mu03 += dy * dy * dy;
        }
    return m;
}

/// The seven Hu invariants; an empty cell maps to all zeros.
inline std::array<double, kHuCount> hu_moments(const BinaryImage& cell) {
    const CentralMoments m = central_moments(cell);
    if (m.m00 == 0) return {};
    // eta_pq = mu_pq / m00^(1 + (p+q)/2)
    const double n2 = m.m00 * m.m00;
    const double n3 = n2 * std::sqrt(m.m00);
    const double e20 = m.mu20 / n2, e11 = m.mu11 / n2, e02 = m.mu02 / n2;
    const double e30 = m.mu30 / n3, e21 = m.mu21 / n3, e12 = m.mu12 / n3, e03 = m.mu03 / n3;

    const double a = e30 + e12, b = e21 + e03;
    const double p = e30 - 3 * e12, q = 3 * e21 - e03;
    std::array<double, kHuCount> phi{};
    phi[0] = e20 + e02;
    phi[1] = (e20 - e02) * (e20 - e02) + 4 * e11 * e11;
    phi[2] = p * p + q * q;
    phi[3] = a * a + b * b;
    phi[4] = p * a * (a * a - 3 * b * b) + q * b * (3 * a * a - b * b);
    phi[5] = (e20 - e02) * (a * a - b * b) + 4 * e11 * a * b;
    phi[6] = q * a * (a * a - 3 * b * b) - p * b * (3 * a * a - b * b);
    return phi;
}

/// Number of (n, m) pairs with n <= max_order, 0 <= m <= n, n - m even.
inline int zernike_count(int max_order) {
    int count = 0;
    for (int n = 0; n <= max_order; ++n) count += n / 2 + 1;
    return count;
}

inline int feature_dimension(int max_order) { return kHuCount + zernike_count(max_order); }

namespace detail {

inline double factorial(int k) {
    double f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

struct RadialTerm {
    int n, m;
    std::vector<double> coeff; // coefficient of rho^(n - 2s), indexed by s
};

inline std::vector<RadialTerm> radial_terms(int max_order) {
    std::vector<RadialTerm> terms;
    for (int n = 0; n <= max_order; ++n)
        for (int m = n % 2; m <= n; m += 2) {
            RadialTerm t{n, m, {}};
            for (int s = 0; s <= (n - m) / 2; ++s) {
                const double sign = (s % 2 == 0) ? 1.0 : -1.0;
                t.coeff.push_back(sign * factorial(n - s) /
                                  (factorial(s) * factorial((n + m) / 2 - s) * factorial((n - m) / 2 - s)));
            }
            terms.push_back(std::move(t));
        }
    return terms;
}

} // namespace detail

/**
 * Zernike moment magnitudes |Z_nm| in (n, m) lexicographic order.
 *
 * The unit disc is centred on the ink centroid with radius half the shorter
 * cell side, so magnitudes are invariant to translation and rotation of the
 * glyph; ink outside the disc is ignored. Each pixel contributes the area
 * element 1/R^2, making a fully inked disc have Z_00 = 1.
 */
inline std::vector<double> zernike_moments(const BinaryImage& cell, int max_order = 8) {
    if (max_order < 0) fail(ErrorCode::InvalidOrder, "Zernike order " + std::to_string(max_order) + " is negative");
    const auto terms = detail::radial_terms(max_order);
    std::vector<std::complex<double>> z(terms.size());

    const CentralMoments cm = central_moments(cell);
    if (cm.m00 > 0) {
        const double radius = std::min(cell.height(), cell.width()) / 2.0;
        std::vector<double> rho_pow(static_cast<std::size_t>(max_order) + 1);
        for (int r = 0; r < cell.height(); ++r)
            for (int c = 0; c < cell.width(); ++c) {
                if (!cell.at(r, c)) continue;
                const double x = (c - cm.cx) / radius, y = (cm.cy - r) / radius;
                const double rho = std::hypot(x, y);
                if (rho > 1.0) continue;
                const double theta = std::atan2(y, x);
                rho_pow[0] = 1.0;
                for (int k = 1; k <= max_order; ++k) rho_pow[k] = rho_pow[k - 1] * rho;
                for (std::size_t i = 0; i < terms.size(); ++i) {
                    const auto& t = terms[i];
                    double radial = 0.0;
                    for (std::size_t s = 0; s < t.coeff.size(); ++s) radial += t.coeff[s] * rho_pow[t.n - 2 * s];
                    z[i] += radial * std::polar(1.0, -t.m * theta);
                }
            }
        for (std::size_t i = 0; i < terms.size(); ++i)
            z[i] *= (terms[i].n + 1) / (std::numbers::pi * radius * radius);
    }

    std::vector<double> mags(terms.size());
    for (std::size_t i = 0; i < terms.size(); ++i) mags[i] = std::abs(z[i]);
    return mags;
}

/// Hu invariants followed by Zernike magnitudes.
inline FeatureVector cell_features(const BinaryImage& cell, int max_order = 8) {
    const auto hu = hu_moments(cell);
    FeatureVector v(hu.begin(), hu.end());
    const auto zm = zernike_moments(cell, max_order);
    v.insert(v.end(), zm.begin(), zm.end());
    return v;
}

inline WordFeatures extract_features(const imaging::CellGrid& grid, int max_order = 8) {
    if (max_order < 0) fail(ErrorCode::InvalidOrder, "Zernike order " + std::to_string(max_order) + " is negative");
    WordFeatures out;
    out.reserve(grid.blocks.size());
    for (const auto& block : grid.blocks) {
        std::vector<FeatureVector> cells;
        cells.reserve(block.grid.size());
        for (const auto& cell : block.grid) cells.push_back(cell_features(cell, max_order));
        out.push_back(std::move(cells));
    }
    return out;
}

} // namespace hwr::features
