#pragma once

// Vertex enumeration for tiny boxed LPs. Every row and every bound is a
// candidate hyperplane; each choice of n of them that includes all equality
// rows is solved directly, and the cheapest feasible intersection wins.

#include "fleetopt/ilp.hpp"

#include <cmath>
#include <optional>
#include <vector>

namespace fleetopt::test {

struct VertexOptimum {
    double objective;
    std::vector<double> point;
};

// Gaussian elimination with partial pivoting; nullopt when singular.
inline std::optional<std::vector<double>> solveDense(std::vector<std::vector<double>> a, std::vector<double> b)
{
    auto const n = b.size();
    for (std::size_t c = 0; c < n; ++c)
    {
        std::size_t p = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[p][c]))
                p = r;
        if (std::abs(a[p][c]) < 1e-10)
            return std::nullopt;
        std::swap(a[p], a[c]);
        std::swap(b[p], b[c]);
        for (std::size_t r = 0; r < n; ++r)
        {
            if (r == c)
                continue;
            double const f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k)
                a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = b[i] / a[i][i];
    return x;
}

// Requires finite bounds on every column. Returns nullopt when infeasible.
inline std::optional<VertexOptimum> vertexOptimum(IlpProblem const &p)
{
    auto const n = p.numColumns();
    struct Plane {
        std::vector<double> coef;
        double rhs;
        bool mandatory;
    };
    std::vector<Plane> planes;
    for (auto const &row : p.rows)
    {
        Plane pl{std::vector<double>(n, 0.0), row.rhs, row.sense == Sense::Equal};
        for (auto const &t : row.terms)
            pl.coef[t.column] += t.coef;
        planes.push_back(pl);
    }
    for (std::size_t k = 0; k < n; ++k)
    {
        std::vector<double> e(n, 0.0);
        e[k] = 1.0;
        planes.push_back({e, p.columns[k].lower, false});
        planes.push_back({e, p.columns[k].upper, false});
    }

    std::optional<VertexOptimum> best;
    std::vector<std::size_t> pick;
    auto recurse = [&](auto &self, std::size_t from) -> void {
        if (pick.size() == n)
        {
            for (std::size_t r = 0; r < planes.size(); ++r)
                if (planes[r].mandatory && std::find(pick.begin(), pick.end(), r) == pick.end())
                    return;
            std::vector<std::vector<double>> a;
            std::vector<double> b;
            for (auto r : pick)
            {
                a.push_back(planes[r].coef);
                b.push_back(planes[r].rhs);
            }
            auto x = solveDense(a, b);
            if (!x || !p.satisfies(*x, 1e-9))
                return;
            double const obj = p.objective(*x);
            if (!best || obj < best->objective - 1e-12)
                best = VertexOptimum{obj, *x};
            return;
        }
        for (std::size_t r = from; r < planes.size(); ++r)
        {
            pick.push_back(r);
            self(self, r + 1);
            pick.pop_back();
        }
    };
    recurse(recurse, 0);
    return best;
}

inline IlpProblem continuous(IlpProblem p)
{
    for (auto &c : p.columns)
        c.integer = false;
    return p;
}

}  // namespace fleetopt::test
