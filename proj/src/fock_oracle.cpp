#include "modecatch/fock_oracle.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace modecatch {

namespace {

using cd = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cd>;
using Triplets = std::vector<Eigen::Triplet<cd>>;

SpMat sparse_identity(int n) {
  SpMat m(n, n);
  m.setIdentity();
  return m;
}

SpMat destroy_op(int dim) {
  Triplets t;
  for (int k = 1; k < dim; ++k) {
    t.emplace_back(k - 1, k, cd(std::sqrt(static_cast<double>(k)), 0.0));
  }
  SpMat m(dim, dim);
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

SpMat kron(const SpMat& a, const SpMat& b) {
  Triplets t;
  t.reserve(static_cast<std::size_t>(a.nonZeros()) * b.nonZeros());
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SpMat::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SpMat::InnerIterator ib(b, kb); ib; ++ib) {
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
        }
      }
    }
  }
  SpMat m(a.rows() * b.rows(), a.cols() * b.cols());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

// Column-stacking superoperators: vec(A rho B) = kron(B^T, A) vec(rho).
SpMat left_mult(const SpMat& a, int dim) { return kron(sparse_identity(dim), a); }
SpMat right_mult(const SpMat& b, int dim) { return kron(SpMat(b.transpose()), sparse_identity(dim)); }

SpMat dissipator_super(const SpMat& l, int dim) {
  const SpMat ldag_l = SpMat(l.adjoint()) * l;
  return kron(SpMat(l.conjugate()), l) - 0.5 * left_mult(ldag_l, dim) -
         0.5 * right_mult(ldag_l, dim);
}

/// Fixed-step RK4 propagation of y' = (L0 + g(t) L1) y.
struct LindbladStepper {
  const SpMat* l0;
  const SpMat* l1;
  std::function<double(double)> g_at;
  Eigen::VectorXcd k1, k2, k3, k4, tmp, stage;

  explicit LindbladStepper(const SpMat& a, const SpMat& b, std::function<double(double)> g)
      : l0(&a), l1(&b), g_at(std::move(g)) {
    const Eigen::Index dim = a.rows();
    k1.resize(dim);
    k2.resize(dim);
    k3.resize(dim);
    k4.resize(dim);
    tmp.resize(dim);
    stage.resize(dim);
  }

  void apply(double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& out) {
    out.noalias() = (*l0) * y;
    tmp.noalias() = (*l1) * y;
    out += g_at(t) * tmp;
  }

  void step(double t, double h, Eigen::VectorXcd& y) {
    apply(t, y, k1);
    stage = y + (0.5 * h) * k1;
    apply(t + 0.5 * h, stage, k2);
    stage = y + (0.5 * h) * k2;
    apply(t + 0.5 * h, stage, k3);
    stage = y + h * k3;
    apply(t + h, stage, k4);
    y += (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
  }

  /// Advance from one grid node to the next with uniform substeps.
  void advance_interval(double t0, double span, double dt_target, Eigen::VectorXcd& y) {
    const int n_sub = std::max(1, static_cast<int>(std::ceil(span / dt_target)));
    const double h = span / n_sub;
    for (int k = 0; k < n_sub; ++k) {
      step(t0 + k * h, h, y);
    }
  }
};

struct FockSpace {
  int dim_o;
  int dim_e;
  int dim;
  SpMat a;       // optical annihilation on the product space
  SpMat c;       // microwave annihilation
  SpMat l0;      // dissipative superoperator
  SpMat l1;      // -i [H1, .] with H1 = -(a'c' + a c)
  Eigen::RowVectorXcd tr_na;   // vec form of Tr[a'a .]
  Eigen::RowVectorXcd tr_nc;   // Tr[c'c .]
  Eigen::RowVectorXcd tr_ac;   // Tr[a c .]
  Eigen::RowVectorXcd tr_id;   // Tr[.]
  Eigen::RowVectorXcd tr_top;  // population of the top Fock level of either mode
};

// Tr[O sigma] = vec(O^T)^T vec(sigma).
Eigen::RowVectorXcd trace_functional(const SpMat& op) {
  const Eigen::MatrixXcd dense = Eigen::MatrixXcd(op).transpose();
  return Eigen::Map<const Eigen::VectorXcd>(dense.data(), dense.size()).transpose();
}

FockSpace build_space(const SystemParams& params, int cutoff_optical, int cutoff_microwave) {
  if (cutoff_optical < 3 || cutoff_microwave < 3) {
    throw std::invalid_argument("fock oracle: cutoffs must be at least 3");
  }
  FockSpace f;
  f.dim_o = cutoff_optical + 1;
  f.dim_e = cutoff_microwave + 1;
  f.dim = f.dim_o * f.dim_e;

  f.a = kron(destroy_op(f.dim_o), sparse_identity(f.dim_e));
  f.c = kron(sparse_identity(f.dim_o), destroy_op(f.dim_e));

  f.l0 = params.kappa_o() * dissipator_super(f.a, f.dim) +
         params.kappa_e() * dissipator_super(f.c, f.dim);

  SpMat h1 = SpMat(f.a.adjoint()) * SpMat(f.c.adjoint());
  h1 += f.a * f.c;
  h1 *= cd(-1.0, 0.0);
  f.l1 = cd(0.0, -1.0) * (left_mult(h1, f.dim) - right_mult(h1, f.dim));

  f.tr_na = trace_functional(SpMat(f.a.adjoint()) * f.a);
  f.tr_nc = trace_functional(SpMat(f.c.adjoint()) * f.c);
  f.tr_ac = trace_functional(f.a * f.c);
  f.tr_id = trace_functional(sparse_identity(f.dim));

  // Projector onto states with either mode at its top retained level.
  Triplets t;
  for (int io = 0; io < f.dim_o; ++io) {
    for (int ie = 0; ie < f.dim_e; ++ie) {
      if (io == f.dim_o - 1 || ie == f.dim_e - 1) {
        const int idx = io * f.dim_e + ie;
        t.emplace_back(idx, idx, cd(1.0, 0.0));
      }
    }
  }
  SpMat top(f.dim, f.dim);
  top.setFromTriplets(t.begin(), t.end());
  f.tr_top = trace_functional(top);

  return f;
}

Eigen::VectorXcd vacuum_state(const FockSpace& f) {
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(f.dim) * f.dim);
  y(0) = cd(1.0, 0.0);  // |0,0><0,0| in column-stacked form
  return y;
}

Eigen::MatrixXcd as_matrix(const Eigen::VectorXcd& y, int dim) {
  return Eigen::Map<const Eigen::MatrixXcd>(y.data(), dim, dim);
}

Eigen::VectorXcd as_vector(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

}  // namespace

FockMoments fock_equal_time_moments(const SystemParams& params, const PumpShape& pump,
                                    const TimeGrid& grid, int cutoff_optical,
                                    int cutoff_microwave, const FockOptions& opts) {
  grid.validate();
  const FockSpace f = build_space(params, cutoff_optical, cutoff_microwave);
  auto g_at = [&](double t) { return squeezing_strength(pump, params, t); };
  LindbladStepper stepper(f.l0, f.l1, g_at);

  FockMoments out;
  out.grid = grid;
  out.n_a.resize(grid.n_points);
  out.n_c.resize(grid.n_points);
  out.m_ac.resize(grid.n_points);

  Eigen::VectorXcd y = vacuum_state(f);
  for (int node = 0; node < grid.n_points; ++node) {
    if (node > 0) stepper.advance_interval(grid.t(node - 1), grid.dt(), opts.inner_dt, y);
    out.n_a[node] = (f.tr_na * y).value().real();
    out.n_c[node] = (f.tr_nc * y).value().real();
    out.m_ac[node] = (f.tr_ac * y).value();
    out.max_trace_residual =
        std::max(out.max_trace_residual, std::abs((f.tr_id * y).value().real() - 1.0));
    out.max_top_population =
        std::max(out.max_top_population, std::abs((f.tr_top * y).value().real()));
  }
  return out;
}

FockCorrelator fock_correlator_oracle(const SystemParams& params, const PumpShape& pump,
                                      const TimeGrid& grid, int cutoff_optical,
                                      int cutoff_microwave, const FockOptions& opts) {
  grid.validate();
  const FockSpace f = build_space(params, cutoff_optical, cutoff_microwave);
  auto g_at = [&](double t) { return squeezing_strength(pump, params, t); };
  LindbladStepper stepper(f.l0, f.l1, g_at);

  const int n = grid.n_points;
  FockCorrelator out;
  out.grid = grid;
  out.pair_probability = Eigen::MatrixXd::Zero(n, n);

  // Equal-time pass, storing the state at every node for the regression legs.
  std::vector<Eigen::VectorXcd> snapshots;
  snapshots.reserve(n);
  {
    Eigen::VectorXcd y = vacuum_state(f);
    for (int node = 0; node < n; ++node) {
      if (node > 0) stepper.advance_interval(grid.t(node - 1), grid.dt(), opts.inner_dt, y);
      snapshots.push_back(y);
      out.max_trace_residual =
          std::max(out.max_trace_residual, std::abs((f.tr_id * y).value().real() - 1.0));
      out.max_top_population =
          std::max(out.max_top_population, std::abs((f.tr_top * y).value().real()));
    }
  }

  const Eigen::MatrixXcd a_dense = Eigen::MatrixXcd(f.a);
  const Eigen::MatrixXcd c_dense = Eigen::MatrixXcd(f.c);

  // t2 >= t1: <a'(t1) c'(t2) c(t2) a(t1)> = Tr[c'c  Lambda(a rho(t1) a')].
  for (int i = 0; i < n; ++i) {
    const Eigen::MatrixXcd rho = as_matrix(snapshots[static_cast<std::size_t>(i)], f.dim);
    Eigen::VectorXcd y = as_vector(a_dense * rho * a_dense.adjoint());
    out.pair_probability(i, i) = (f.tr_nc * y).value().real();
    for (int j = i + 1; j < n; ++j) {
      stepper.advance_interval(grid.t(j - 1), grid.dt(), opts.inner_dt, y);
      out.pair_probability(i, j) = (f.tr_nc * y).value().real();
    }
  }

  // t1 > t2: <c'(t2) a'(t1) a(t1) c(t2)> = Tr[a'a  Lambda(c rho(t2) c')].
  for (int j = 0; j + 1 < n; ++j) {
    const Eigen::MatrixXcd rho = as_matrix(snapshots[static_cast<std::size_t>(j)], f.dim);
    Eigen::VectorXcd y = as_vector(c_dense * rho * c_dense.adjoint());
    for (int i = j + 1; i < n; ++i) {
      stepper.advance_interval(grid.t(i - 1), grid.dt(), opts.inner_dt, y);
      out.pair_probability(i, j) = (f.tr_na * y).value().real();
    }
  }

  if (opts.output_ports) {
    out.pair_probability *= params.kappa_o_c * params.kappa_e_c;
  }
  out.truncation_warning = out.max_top_population > opts.top_population_warn;
  return out;
}

}  // namespace modecatch
