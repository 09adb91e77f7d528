#include "isoval/kernels.hpp"

#include <limits>

namespace isoval::kernels {

namespace {
Exec g_default = Exec::parallel;
}

Exec default_exec() { return g_default; }
void set_default_exec(Exec e) { g_default = e; }

void max_dot(const NodeMatrix& nodes, const NodeMatrix& points, Vector& out, Exec exec) {
    const Eigen::Index n_nodes = nodes.rows();
    const Eigen::Index n_pts = points.rows();
    const Eigen::Index dim = nodes.cols();
    if (points.cols() != dim) throw std::invalid_argument("max_dot: dimension mismatch");
    out.resize(n_nodes);
    const double* np = nodes.data();
    const double* pp = points.data();

    auto row_value = [&](Eigen::Index i) {
        const double* u = np + i * dim;
        double best = -std::numeric_limits<double>::infinity();
        if (dim == 3) {
            for (Eigen::Index j = 0; j < n_pts; ++j) {
                const double* v = pp + 3 * j;
                double s = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
                if (s > best) best = s;
            }
        } else {
            for (Eigen::Index j = 0; j < n_pts; ++j) {
                const double* v = pp + dim * j;
                double s = 0.0;
                for (Eigen::Index d = 0; d < dim; ++d) s += u[d] * v[d];
                if (s > best) best = s;
            }
        }
        return best;
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (Eigen::Index i = 0; i < n_nodes; ++i) out[i] = row_value(i);
    } else {
        for (Eigen::Index i = 0; i < n_nodes; ++i) out[i] = row_value(i);
    }
}

}  // namespace isoval::kernels
