#include "kmvol/volume.hpp"

#include "kmvol/errors.hpp"
#include "kmvol/simplex_rules.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace kmvol {

namespace {

// Radial exponent of the corner substitution y -> v0 + rho^(k-1) (y - v0),
// rho = 1 - lambda_v0(y). With k = 3 the transformed integrand vanishes at
// the cusp like rho^(n/2) instead of blowing up like rho^(-n/2).
constexpr int kGrading = 3;

// Cells split per greedy step. Fixed, so the mesh never depends on the
// number of threads.
constexpr std::size_t kBatch = 32;

// Grundmann-Moller parameter per dimension (degree 2s+1). Higher degree beats
// extra bisection quickly as n grows, since halving every edge of an
// n-simplex takes 2^n cells.
int rule_parameter(int n) {
  if (n <= 4) return 6;
  return std::min(n + 2, 10);
}

struct Cell {
  Eigen::MatrixXd vertices;  // n x (n+1)
  std::vector<char> cusp;    // per vertex
  std::uint64_t id = 0;
  int level = 0;
  double volume = 0.0;
  double estimate = 0.0;
  double error = 0.0;

  int cusp_count() const { return static_cast<int>(std::count(cusp.begin(), cusp.end(), 1)); }
};

// Max-heap on error; ties go to the older cell.
bool heap_less(const Cell& a, const Cell& b) {
  if (a.error != b.error) return a.error < b.error;
  return a.id > b.id;
}

struct Workspace {
  Eigen::MatrixXd points;
  Eigen::MatrixXd image;
  Eigen::ArrayXd values;
};

class CellIntegrator {
 public:
  CellIntegrator(const QForm& q, const EmbeddedSimplexRule<double>& rule)
      : q_(q), rule_(rule), prefactor_(q.sqrt_det / q.n()) {}

  std::int64_t points_per_cell() const { return rule_.bary.cols(); }

  void evaluate(Cell& cell, Workspace& ws) const {
    const int count = cell.cusp_count();
    if (count == 1) {
      const auto c = std::find(cell.cusp.begin(), cell.cusp.end(), 1) - cell.cusp.begin();
      corner_values(cell, static_cast<Eigen::Index>(c), ws);
    } else {
      plain_values(cell, ws);
    }
    const double high = rule_.w_high.dot(ws.values.matrix());
    const double low = rule_.w_low.dot(ws.values.matrix());
    const double scale = cell.volume * prefactor_;
    cell.estimate = scale * high;
    cell.error = scale * std::abs(high - low);
    // Two singular corners cannot be regularized at once; force a split.
    if (count > 1 || !std::isfinite(cell.error)) cell.error = std::numeric_limits<double>::infinity();
  }

 private:
  void plain_values(const Cell& cell, Workspace& ws) const {
    ws.points.noalias() = cell.vertices * rule_.bary;
    ws.image.noalias() = q_.S * ws.points;
    const Eigen::ArrayXd gap =
        1.0 - (ws.points.array() * ws.image.array()).colwise().sum().transpose();
    ws.values = to_values(gap);
  }

  // Evaluates the substituted integrand k rho^(n(k-1)/2) h^(-n/2), where
  // 1 - Q(v0 + rho^(k-1) w) = rho^(k-1) h and h = L(w) - rho^(k-1) w^T S w,
  // L(w) = -2 (S v0).w; the cusp condition v0^T S v0 = 1 removes the constant.
  void corner_values(const Cell& cell, Eigen::Index c, Workspace& ws) const {
    const Eigen::VectorXd v0 = cell.vertices.col(c);
    const Eigen::MatrixXd offsets = cell.vertices.colwise() - v0;
    ws.points.noalias() = offsets * rule_.bary;
    ws.image.noalias() = q_.S * ws.points;
    const Eigen::VectorXd g = q_.S * v0;
    const Eigen::ArrayXd linear = -2.0 * (g.transpose() * ws.points).transpose().array();
    const Eigen::ArrayXd quad = (ws.points.array() * ws.image.array()).colwise().sum().transpose();
    const Eigen::ArrayXd rho = 1.0 - rule_.bary.row(c).transpose().array();
    const Eigen::ArrayXd shrink = rho.pow(kGrading - 1);
    const Eigen::ArrayXd h = linear - shrink * quad;
    const double n = q_.n();
    ws.values = to_values(h) * kGrading * rho.pow(0.5 * n * (kGrading - 1));
  }

  Eigen::ArrayXd to_values(const Eigen::ArrayXd& gap) const {
    const double exponent = -0.5 * q_.n();
    Eigen::ArrayXd out(gap.size());
    for (Eigen::Index p = 0; p < gap.size(); ++p)
      out(p) = gap(p) > 0.0 ? std::pow(gap(p), exponent) : std::numeric_limits<double>::infinity();
    return out;
  }

  const QForm& q_;
  const EmbeddedSimplexRule<double>& rule_;
  double prefactor_;
};

std::pair<Eigen::Index, Eigen::Index> split_edge(const Cell& cell) {
  const Eigen::Index m = cell.vertices.cols();
  if (cell.cusp_count() > 1) {
    Eigen::Index a = -1;
    for (Eigen::Index k = 0; k < m; ++k) {
      if (!cell.cusp[static_cast<std::size_t>(k)]) continue;
      if (a < 0) a = k;
      else return {a, k};
    }
  }
  std::pair<Eigen::Index, Eigen::Index> best{0, 1};
  double longest = -1.0;
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = a + 1; b < m; ++b) {
      const double len = (cell.vertices.col(a) - cell.vertices.col(b)).squaredNorm();
      if (len > longest) {
        longest = len;
        best = {a, b};
      }
    }
  return best;
}

// Neumaier-compensated sum in the given order.
template <typename It, typename Get>
double compensated_sum(It first, It last, Get get) {
  double sum = 0.0;
  double comp = 0.0;
  for (; first != last; ++first) {
    const double x = get(*first);
    const double t = sum + x;
    if (!std::isfinite(t)) return t;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  }
  return sum + comp;
}

}  // namespace

VolumeEstimate volume_adaptive(const ShapeMatrix& s, double tol, std::int64_t budget) {
  AdaptiveOptions opts;
  opts.tol = tol;
  opts.budget = budget;
  return volume_adaptive(s, opts);
}

VolumeEstimate volume_adaptive(const ShapeMatrix& s, const AdaptiveOptions& opts) {
  if (classify_hyperbolicity(s).verdict == Verdict::not_hyperbolic)
    throw Error(ErrorCode::NotHyperbolic, "the volume integral diverges");
  if (!(opts.tol > 0.0) && !(opts.rel_tol > 0.0))
    throw Error(ErrorCode::InvalidArgument, "a positive tolerance is required");
  if (opts.budget < 1) throw Error(ErrorCode::InvalidArgument, "cell budget must be positive");

  const QForm q = make_qform(s);
  const int n = q.n();
  const auto rule = grundmann_moller_pair<double>(n, rule_parameter(n));
  const CellIntegrator integrator(q, rule);

  Cell root;
  root.vertices = Eigen::MatrixXd::Zero(n, n + 1);
  root.vertices.rightCols(n).setIdentity();
  root.cusp.assign(static_cast<std::size_t>(n + 1), 0);
  for (int i : q.cusp_corners) root.cusp[static_cast<std::size_t>(i + 1)] = 1;
  root.volume = 1.0;
  for (int k = 2; k <= n; ++k) root.volume /= k;

  std::vector<Workspace> workspaces(static_cast<std::size_t>(std::max(opts.threads, 1)));
  integrator.evaluate(root, workspaces[0]);
  std::int64_t evaluations = integrator.points_per_cell();
  std::uint64_t next_id = 1;

  std::vector<Cell> heap;
  heap.push_back(std::move(root));

  auto totals = [&](double& estimate, double& error) {
    estimate = compensated_sum(heap.begin(), heap.end(), [](const Cell& c) { return c.estimate; });
    error = compensated_sum(heap.begin(), heap.end(), [](const Cell& c) { return c.error; });
  };
  double estimate = 0.0;
  double error = 0.0;
  totals(estimate, error);

  auto target = [&] { return std::max(opts.tol, opts.rel_tol * std::abs(estimate)); };
  const auto budget = static_cast<std::size_t>(opts.budget);
  std::vector<Cell> children;
  while (!(error <= target()) && heap.size() < budget) {
    const std::size_t batch = std::min({kBatch, heap.size(), budget - heap.size()});
    children.clear();
    for (std::size_t b = 0; b < batch; ++b) {
      std::pop_heap(heap.begin(), heap.end(), heap_less);
      Cell parent = std::move(heap.back());
      heap.pop_back();
      const auto [a, c] = split_edge(parent);
      const Eigen::VectorXd mid = 0.5 * (parent.vertices.col(a) + parent.vertices.col(c));
      for (Eigen::Index replaced : {c, a}) {
        Cell child;
        child.vertices = parent.vertices;
        child.vertices.col(replaced) = mid;
        child.cusp = parent.cusp;
        child.cusp[static_cast<std::size_t>(replaced)] = 0;
        child.id = next_id++;
        child.level = parent.level + 1;
        child.volume = 0.5 * parent.volume;
        children.push_back(std::move(child));
      }
    }
    detail::parallel_for(children.size(), opts.threads, [&](std::size_t i, std::size_t w) {
      integrator.evaluate(children[i], workspaces[w]);
    });
    evaluations += static_cast<std::int64_t>(children.size()) * integrator.points_per_cell();
    for (auto& child : children) {
      heap.push_back(std::move(child));
      std::push_heap(heap.begin(), heap.end(), heap_less);
    }
    totals(estimate, error);
  }

  std::sort(heap.begin(), heap.end(), [](const Cell& x, const Cell& y) { return x.id < y.id; });
  totals(estimate, error);

  VolumeEstimate est;
  est.method = Method::adaptive;
  est.value = estimate;
  est.error_bound = error;
  est.work = evaluations;
  est.converged = error <= target();
  return est;
}

}  // namespace kmvol
