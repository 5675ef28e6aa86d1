#include "wavescat/reference.hpp"

#include <cmath>
#include <stdexcept>

#include "wavescat/kernel.hpp"
#include "wavescat/lattice.hpp"

namespace wavescat::ref {

std::vector<Cplx> convolve_direct(int b, double spacing, double k, const std::vector<Cplx>& u) {
    const auto n = static_cast<std::size_t>(b) * b * b;
    if (u.size() != n) throw std::invalid_argument("field size does not match the lattice");
    std::vector<Cplx> out(n, Cplx{});
    for (int j1 = 0; j1 < b; ++j1)
        for (int j2 = 0; j2 < b; ++j2)
            for (int j3 = 0; j3 < b; ++j3) {
                Cplx s{};
                for (int m1 = 0; m1 < b; ++m1)
                    for (int m2 = 0; m2 < b; ++m2)
                        for (int m3 = 0; m3 < b; ++m3) {
                            if (m1 == j1 && m2 == j2 && m3 == j3) continue;
                            const double dx = j1 - m1, dy = j2 - m2, dz = j3 - m3;
                            const double r = spacing * std::sqrt(dx * dx + dy * dy + dz * dz);
                            s += green_r(r, k) * u[static_cast<std::size_t>(linear_index(b, {m1, m2, m3}))];
                        }
                out[static_cast<std::size_t>(linear_index(b, {j1, j2, j3}))] = s;
            }
    return out;
}

DenseMatrix dense_system(const std::vector<Vec3>& points, double k, Cplx coupling) {
    DenseMatrix m;
    m.n = static_cast<int>(points.size());
    m.a.assign(static_cast<std::size_t>(m.n) * m.n, Cplx{});
    for (int i = 0; i < m.n; ++i) {
        for (int j = 0; j < m.n; ++j) {
            m.at(i, j) = i == j ? Cplx{1.0, 0.0}
                                : coupling * green(points[static_cast<std::size_t>(i)],
                                                   points[static_cast<std::size_t>(j)], k);
        }
    }
    return m;
}

std::vector<Cplx> apply_dense(const DenseMatrix& m, const std::vector<Cplx>& x) {
    if (static_cast<int>(x.size()) != m.n) throw std::invalid_argument("vector size does not match the matrix");
    std::vector<Cplx> y(x.size(), Cplx{});
    for (int i = 0; i < m.n; ++i) {
        Cplx s{};
        for (int j = 0; j < m.n; ++j) s += m.at(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

std::vector<Cplx> lu_solve(DenseMatrix m, std::vector<Cplx> rhs) {
    const int n = m.n;
    if (static_cast<int>(rhs.size()) != n) throw std::invalid_argument("rhs size does not match the matrix");
    std::vector<int> piv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) piv[static_cast<std::size_t>(i)] = i;

    for (int col = 0; col < n; ++col) {
        int p = col;
        double best = std::abs(m.at(col, col));
        for (int i = col + 1; i < n; ++i) {
            const double v = std::abs(m.at(i, col));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best == 0.0) throw std::runtime_error("singular matrix in LU factorization");
        if (p != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(p, j));
            std::swap(rhs[static_cast<std::size_t>(col)], rhs[static_cast<std::size_t>(p)]);
        }
        const Cplx inv = Cplx{1.0, 0.0} / m.at(col, col);
        for (int i = col + 1; i < n; ++i) {
            const Cplx f = m.at(i, col) * inv;
            if (f == Cplx{}) continue;
            m.at(i, col) = f;
            for (int j = col + 1; j < n; ++j) m.at(i, j) -= f * m.at(col, j);
            rhs[static_cast<std::size_t>(i)] -= f * rhs[static_cast<std::size_t>(col)];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        Cplx s = rhs[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= m.at(i, j) * rhs[static_cast<std::size_t>(j)];
        rhs[static_cast<std::size_t>(i)] = s / m.at(i, i);
    }
    return rhs;
}

Cplx field_direct(const Vec3& x, const std::vector<Vec3>& points, const std::vector<Cplx>& q, double k, Cplx u0x) {
    if (points.size() != q.size()) throw std::invalid_argument("point and charge counts differ");
    Cplx s = u0x;
    for (std::size_t m = 0; m < points.size(); ++m) {
        const double r = norm(x - points[m]);
        if (r <= 0.0) continue;  // the coincident particle's own term is skipped
        s += green_r(r, k) * q[m];
    }
    return s;
}

}  // namespace wavescat::ref
