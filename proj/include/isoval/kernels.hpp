#ifndef ISOVAL_KERNELS_HPP
#define ISOVAL_KERNELS_HPP

#include <Eigen/Dense>
#include <stdexcept>

#include "isoval/quadrature.hpp"

namespace isoval {

using Vector = Eigen::VectorXd;
/// Row-major so that a row (one point) is contiguous in the inner loops.
using NodeMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

namespace kernels {

/// Serial is the reference implementation; parallel must produce bitwise
/// identical results (each output element is computed independently with a
/// fixed-order compensated inner sum, so thread count cannot change bytes).
enum class Exec { serial, parallel };

Exec default_exec();
void set_default_exec(Exec e);

/// out[i] = sum_j f(nodes.row(i) . atoms.row(j)) * atom_weights[j]
template <class F>
void support_sum(const NodeMatrix& nodes, const NodeMatrix& atoms, const Vector& atom_weights,
                 F&& f, Vector& out, Exec exec) {
    const Eigen::Index n_nodes = nodes.rows();
    const Eigen::Index n_atoms = atoms.rows();
    const Eigen::Index dim = nodes.cols();
    if (atoms.cols() != dim) throw std::invalid_argument("support_sum: dimension mismatch");
    out.resize(n_nodes);
    const double* np = nodes.data();
    const double* ap = atoms.data();
    const double* wp = atom_weights.data();

    auto row_value = [&](Eigen::Index i) {
        const double* u = np + i * dim;
        KahanSum acc;
        if (dim == 3) {
            for (Eigen::Index j = 0; j < n_atoms; ++j) {
                const double* v = ap + 3 * j;
                double s = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
                acc.add(f(s) * wp[j]);
            }
        } else {
            for (Eigen::Index j = 0; j < n_atoms; ++j) {
                double s = 0.0;
                const double* v = ap + dim * j;
                for (Eigen::Index d = 0; d < dim; ++d) s += u[d] * v[d];
                acc.add(f(s) * wp[j]);
            }
        }
        return acc.value();
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (Eigen::Index i = 0; i < n_nodes; ++i) out[i] = row_value(i);
    } else {
        for (Eigen::Index i = 0; i < n_nodes; ++i) out[i] = row_value(i);
    }
}

/// out[i] = max_j nodes.row(i) . points.row(j)
void max_dot(const NodeMatrix& nodes, const NodeMatrix& points, Vector& out, Exec exec);

/// out[i] = f(i); the generic parallel map used by the adapted-quadrature
/// evaluators. f must be pure.
template <class F>
void map_indices(Eigen::Index n, F&& f, Vector& out, Exec exec) {
    out.resize(n);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (Eigen::Index i = 0; i < n; ++i) out[i] = f(i);
    } else {
        for (Eigen::Index i = 0; i < n; ++i) out[i] = f(i);
    }
}

}  // namespace kernels
}  // namespace isoval

#endif
