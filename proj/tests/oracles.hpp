#pragma once

#include <algorithm>
#include <vector>

namespace oracles
{

// Oracle: all permutation vertices of y, hull membership of x by a small
// phase-one simplex on sum_k w_k P_k y = x, sum w_k = 1, w >= 0.
inline bool hull_oracle(const std::vector<double> &x, std::vector<double> y)
{
    std::sort(y.begin(), y.end());
    std::vector<std::vector<double>> verts;
    do {
        verts.push_back(y);
    } while (std::next_permutation(y.begin(), y.end()));
    const int m = static_cast<int>(x.size()) + 1; // equality rows
    const int nv = static_cast<int>(verts.size());
    // Tableau columns: nv weights + m artificials + rhs.
    const int cols = nv + m + 1;
    std::vector<std::vector<double>> t(static_cast<std::size_t>(m + 1), std::vector<double>(static_cast<std::size_t>(cols), 0.0));
    for (int r = 0; r < m; ++r) {
        double rhs = r < m - 1 ? x[static_cast<std::size_t>(r)] : 1.0;
        double sign = rhs < 0 ? -1.0 : 1.0;
        for (int k = 0; k < nv; ++k) {
            double a = r < m - 1 ? verts[static_cast<std::size_t>(k)][static_cast<std::size_t>(r)] : 1.0;
            t[static_cast<std::size_t>(r)][static_cast<std::size_t>(k)] = sign * a;
        }
        t[static_cast<std::size_t>(r)][static_cast<std::size_t>(nv + r)] = 1.0;
        t[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols - 1)] = sign * rhs;
    }
    // Objective: minimize the sum of artificials.
    auto &obj = t[static_cast<std::size_t>(m)];
    for (int r = 0; r < m; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (c < nv || c == cols - 1) {
                obj[static_cast<std::size_t>(c)] -= t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            }
        }
    }
    std::vector<int> basis(static_cast<std::size_t>(m));
    for (int r = 0; r < m; ++r) {
        basis[static_cast<std::size_t>(r)] = nv + r;
    }
    for (int it = 0; it < 500; ++it) {
        int enter = -1;
        for (int c = 0; c < cols - 1; ++c) {
            if (obj[static_cast<std::size_t>(c)] < -1e-12) {
                enter = c;
                break;
            }
        }
        if (enter < 0) {
            break;
        }
        int leave = -1;
        double best = 0;
        for (int r = 0; r < m; ++r) {
            double a = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(enter)];
            if (a > 1e-12) {
                double ratio = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols - 1)] / a;
                if (leave < 0 || ratio < best) {
                    best = ratio;
                    leave = r;
                }
            }
        }
        if (leave < 0) {
            break;
        }
        double piv = t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(enter)];
        for (auto &v : t[static_cast<std::size_t>(leave)]) {
            v /= piv;
        }
        for (int r = 0; r <= m; ++r) {
            if (r == leave) {
                continue;
            }
            double f = t[static_cast<std::size_t>(r)][static_cast<std::size_t>(enter)];
            if (f != 0.0) {
                for (int c = 0; c < cols; ++c) {
                    t[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -= f * t[static_cast<std::size_t>(leave)][static_cast<std::size_t>(c)];
                }
            }
        }
        basis[static_cast<std::size_t>(leave)] = enter;
    }
    return -obj[static_cast<std::size_t>(cols - 1)] < 1e-8;
}

} // namespace oracles
