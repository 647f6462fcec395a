#include "graphforge/layout.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>

#include "graphforge/error.hpp"

namespace graphforge {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Stress and its gradient over the flattened coordinate vector
// z = (x_0, y_0, x_1, y_1, ...).
double stress_and_gradient(const std::vector<double>& z, const DistanceMatrix& dist, std::vector<double>& grad) {
  const std::size_t n = dist.size();
  std::fill(grad.begin(), grad.end(), 0.0);
  double total = 0.0;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      const double d = dist[u][v];
      const double dx = z[2 * u] - z[2 * v];
      const double dy = z[2 * u + 1] - z[2 * v + 1];
      const double r = std::sqrt(dx * dx + dy * dy);
      const double diff = r - d;
      total += diff * diff / (d * d);
      if (r > 0.0) {
        const double scale = 2.0 * diff / (d * d * r);
        grad[2 * u] += scale * dx;
        grad[2 * u + 1] += scale * dy;
        grad[2 * v] -= scale * dx;
        grad[2 * v + 1] -= scale * dy;
      }
    }
  }
  return total;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

std::vector<Point> unflatten(const std::vector<double>& z) {
  std::vector<Point> coords(z.size() / 2);
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = {z[2 * i], z[2 * i + 1]};
  return coords;
}

struct CurvaturePair {
  std::vector<double> s, y;
  double rho;
};

// Unit circle with angles and coordinates rounded to single precision, then
// centered and scaled to a maximum coordinate of 1. The rounding breaks the
// exact symmetry of the circle, which otherwise traps the optimizer on
// symmetric stationary points of regular graphs (ladders, grids).
std::vector<double> circular_start(int n) {
  std::vector<double> z(2 * static_cast<std::size_t>(n));
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    const double angle = static_cast<float>(2.0 * kPi * (static_cast<double>(i) / n));
    z[2 * i] = static_cast<float>(std::cos(angle));
    z[2 * i + 1] = static_cast<float>(std::sin(angle));
    mx += z[2 * i];
    my += z[2 * i + 1];
  }
  mx /= n;
  my /= n;
  double lim = 0.0;
  for (int i = 0; i < n; ++i) {
    z[2 * i] -= mx;
    z[2 * i + 1] -= my;
    lim = std::max({lim, std::abs(z[2 * i]), std::abs(z[2 * i + 1])});
  }
  if (lim > 0.0) {
    for (double& c : z) c /= lim;
  }
  return z;
}

struct LineSearchResult {
  bool accepted = false;
  double value = 0.0;
};

// Minimizer of the cubic matching values and slopes at a and b, or the
// bisection point when that falls outside the safeguarded interior.
double cubic_step(double a, double fa, double ga, double b, double fb, double gb) {
  const double d1 = ga + gb - 3.0 * (fa - fb) / (a - b);
  const double disc = d1 * d1 - ga * gb;
  const double mid = 0.5 * (a + b);
  if (disc < 0.0) return mid;
  const double d2 = (b > a ? 1.0 : -1.0) * std::sqrt(disc);
  const double t = b - (b - a) * (gb + d2 - d1) / (gb - ga + 2.0 * d2);
  const double lo = std::min(a, b), hi = std::max(a, b), margin = 0.1 * (hi - lo);
  if (!std::isfinite(t) || t < lo + margin || t > hi - margin) return mid;
  return t;
}

// Strong Wolfe search along `direction` (sufficient decrease 1e-4, curvature
// 0.9) by bracketing and zooming. On success `next` and `next_grad` hold the
// accepted point; the value there never exceeds `value`.
LineSearchResult wolfe_line_search(const std::vector<double>& z, const std::vector<double>& direction, double value,
                                   double slope, double initial, const DistanceMatrix& dist, std::vector<double>& next,
                                   std::vector<double>& next_grad) {
  constexpr double c1 = 1e-4, c2 = 0.9;
  constexpr int max_evaluations = 60;
  int evaluations = 0;
  auto eval = [&](double step, double& slope_out) {
    for (std::size_t i = 0; i < z.size(); ++i) next[i] = z[i] + step * direction[i];
    ++evaluations;
    const double f = stress_and_gradient(next, dist, next_grad);
    slope_out = dot(next_grad, direction);
    return f;
  };
  auto armijo = [&](double step, double f) { return f <= value + c1 * step * slope && f <= value; };

  // Best sufficient-decrease point seen, kept as a fallback when the
  // evaluation budget runs out before the curvature condition holds.
  double best_step = 0.0, best_value = value;
  auto remember = [&](double step, double f) {
    if (armijo(step, f) && f < best_value) {
      best_step = step;
      best_value = f;
    }
  };
  auto finish_with_best = [&]() -> LineSearchResult {
    if (best_step <= 0.0) return {};
    double unused = 0.0;
    return {true, eval(best_step, unused)};
  };

  auto zoom = [&](double lo, double f_lo, double g_lo, double hi, double f_hi, double g_hi) -> LineSearchResult {
    while (evaluations < max_evaluations) {
      const double step = cubic_step(lo, f_lo, g_lo, hi, f_hi, g_hi);
      double g = 0.0;
      const double f = eval(step, g);
      remember(step, f);
      if (!armijo(step, f) || f >= f_lo) {
        hi = step, f_hi = f, g_hi = g;
      } else {
        if (std::abs(g) <= -c2 * slope) return {true, f};
        if (g * (hi - lo) >= 0.0) hi = lo, f_hi = f_lo, g_hi = g_lo;
        lo = step, f_lo = f, g_lo = g;
      }
      if (std::abs(hi - lo) <= 1e-16 * std::max(1.0, std::abs(lo))) break;
    }
    return finish_with_best();
  };

  double prev = 0.0, f_prev = value, g_prev = slope;
  double step = initial;
  while (evaluations < max_evaluations) {
    double g = 0.0;
    const double f = eval(step, g);
    remember(step, f);
    if (!armijo(step, f) || (evaluations > 1 && f >= f_prev)) return zoom(prev, f_prev, g_prev, step, f, g);
    if (std::abs(g) <= -c2 * slope) return {true, f};
    if (g >= 0.0) return zoom(step, f, g, prev, f_prev, g_prev);
    prev = step, f_prev = f, g_prev = g;
    step *= 2.0;
  }
  return finish_with_best();
}

}  // namespace

PrincipalAxes principal_axes(const std::vector<Point>& coords) {
  PrincipalAxes axes;
  const double count = static_cast<double>(coords.size());
  if (coords.empty()) return axes;
  for (const Point& p : coords) {
    axes.centroid.x += p.x;
    axes.centroid.y += p.y;
  }
  axes.centroid.x /= count;
  axes.centroid.y /= count;
  for (const Point& p : coords) {
    const double dx = p.x - axes.centroid.x;
    const double dy = p.y - axes.centroid.y;
    axes.sxx += dx * dx;
    axes.syy += dy * dy;
    axes.sxy += dx * dy;
  }
  axes.sxx /= count;
  axes.syy /= count;
  axes.sxy /= count;
  const double half_trace = 0.5 * (axes.sxx + axes.syy);
  const double half_gap = 0.5 * (axes.sxx - axes.syy);
  const double radius = std::hypot(half_gap, axes.sxy);
  axes.major = half_trace + radius;
  axes.minor = std::max(0.0, half_trace - radius);
  if (axes.sxy != 0.0) {
    const double vx = axes.major - axes.syy;
    const double vy = axes.sxy;
    const double len = std::hypot(vx, vy);
    axes.major_axis = {vx / len, vy / len};
  } else {
    axes.major_axis = axes.sxx >= axes.syy ? Point{1.0, 0.0} : Point{0.0, 1.0};
  }
  return axes;
}

double layout_stress(const std::vector<Point>& coords, const DistanceMatrix& dist) {
  double total = 0.0;
  for (std::size_t u = 0; u < coords.size(); ++u) {
    for (std::size_t v = u + 1; v < coords.size(); ++v) {
      const double d = dist[u][v];
      const double r = std::hypot(coords[u].x - coords[v].x, coords[u].y - coords[v].y);
      total += (r - d) * (r - d) / (d * d);
    }
  }
  return total;
}

KamadaKawaiTrace kamada_kawai_trace(const UndirectedGraph& g, const KamadaKawaiOptions& options) {
  const int n = g.size();
  const DistanceMatrix dist = all_pairs_distances(g.adjacency());
  for (const auto& row : dist) {
    if (std::any_of(row.begin(), row.end(), [](int d) { return d < 0; })) {
      throw DataError("Kamada-Kawai layout needs a connected graph");
    }
  }
  const long cap = options.max_iterations > 0 ? options.max_iterations : 10L * n * n;
  const std::size_t dim = 2 * static_cast<std::size_t>(n);

  std::vector<double> z = circular_start(n);

  KamadaKawaiTrace trace;
  std::vector<double> grad(dim), next(dim), next_grad(dim), direction(dim), alpha_buf;
  double value = stress_and_gradient(z, dist, grad);
  trace.stress_history.push_back(value);
  std::deque<CurvaturePair> memory;

  long iter = 0;
  while (iter < cap && max_abs(grad) >= options.gradient_tolerance) {
    // Two-loop recursion for the L-BFGS direction.
    direction = grad;
    alpha_buf.assign(memory.size(), 0.0);
    for (std::size_t k = memory.size(); k-- > 0;) {
      alpha_buf[k] = memory[k].rho * dot(memory[k].s, direction);
      for (std::size_t i = 0; i < dim; ++i) direction[i] -= alpha_buf[k] * memory[k].y[i];
    }
    if (!memory.empty()) {
      const auto& last = memory.back();
      const double gamma = dot(last.s, last.y) / dot(last.y, last.y);
      for (double& d : direction) d *= gamma;
    }
    for (std::size_t k = 0; k < memory.size(); ++k) {
      const double beta = memory[k].rho * dot(memory[k].y, direction);
      for (std::size_t i = 0; i < dim; ++i) direction[i] += (alpha_buf[k] - beta) * memory[k].s[i];
    }
    for (double& d : direction) d = -d;
    double slope = dot(grad, direction);
    if (!(slope < 0.0)) {
      memory.clear();
      for (std::size_t i = 0; i < dim; ++i) direction[i] = -grad[i];
      slope = dot(grad, direction);
    }

    // The first iterate moves a unit Euclidean distance, like the usual
    // L-BFGS start; later ones try the full quasi-Newton step.
    const double initial = iter == 0 ? 1.0 / std::sqrt(dot(direction, direction)) : 1.0;
    const LineSearchResult search = wolfe_line_search(z, direction, value, slope, initial, dist, next, next_grad);
    if (!search.accepted) break;  // no representable decrease left
    const double next_value = search.value;

    CurvaturePair pair{std::vector<double>(dim), std::vector<double>(dim), 0.0};
    for (std::size_t i = 0; i < dim; ++i) {
      pair.s[i] = next[i] - z[i];
      pair.y[i] = next_grad[i] - grad[i];
    }
    const double sy = dot(pair.s, pair.y);
    if (sy > 1e-14 * std::sqrt(dot(pair.s, pair.s) * dot(pair.y, pair.y))) {
      pair.rho = 1.0 / sy;
      memory.push_back(std::move(pair));
      if (static_cast<int>(memory.size()) > options.history) memory.pop_front();
    }
    z.swap(next);
    grad.swap(next_grad);
    value = next_value;
    trace.stress_history.push_back(value);
    ++iter;
  }

  trace.iterations = iter;
  trace.gradient_norm = max_abs(grad);
  trace.converged = trace.gradient_norm < options.gradient_tolerance;
  trace.embedding.coords = unflatten(z);
  trace.embedding.stress = value;
  return trace;
}

Embedding kamada_kawai(const UndirectedGraph& g, const KamadaKawaiOptions& options) {
  return kamada_kawai_trace(g, options).embedding;
}

Embedding canonicalize(const Embedding& e) {
  const PrincipalAxes axes = principal_axes(e.coords);
  const double c = axes.major_axis.x;
  const double s = axes.major_axis.y;
  Embedding out{std::vector<Point>(e.coords.size()), e.stress};
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    const double dx = e.coords[i].x - axes.centroid.x;
    const double dy = e.coords[i].y - axes.centroid.y;
    out.coords[i] = {c * dx + s * dy, -s * dx + c * dy};
  }
  if (!out.coords.empty()) {
    const bool flip_x = out.coords[0].x < 0.0;
    const bool flip_y = out.coords[0].y < 0.0;
    for (Point& p : out.coords) {
      if (flip_x) p.x = -p.x;
      if (flip_y) p.y = -p.y;
    }
  }
  return out;
}

std::string_view to_string(OrderingMethod method) {
  switch (method) {
    case OrderingMethod::x: return "x";
    case OrderingMethod::radial: return "radial";
    case OrderingMethod::reversed_radial: return "reversed_radial";
    case OrderingMethod::bifocal: return "bifocal";
  }
  return "x";
}

OrderingMethod parse_ordering_method(std::string_view name) {
  if (name == "x") return OrderingMethod::x;
  if (name == "radial" || name == "r") return OrderingMethod::radial;
  if (name == "reversed_radial" || name == "rr") return OrderingMethod::reversed_radial;
  if (name == "bifocal" || name == "bf") return OrderingMethod::bifocal;
  throw InvalidArgument("unknown ordering method '" + std::string(name) + "'");
}

Ordering::Ordering(std::vector<int> rank) : rank_(std::move(rank)) {
  std::vector<int> seen(rank_.size(), 0);
  for (int r : rank_) {
    if (r < 0 || r >= static_cast<int>(rank_.size()) || seen[r]++) {
      throw InvalidArgument("ordering is not a permutation");
    }
  }
}

Ordering Ordering::from_sequence(const std::vector<NodeId>& sequence) {
  std::vector<int> rank(sequence.size(), -1);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    const NodeId v = sequence[i];
    if (v < 0 || v >= static_cast<int>(sequence.size()) || rank[v] >= 0) {
      throw InvalidArgument("ordering is not a permutation");
    }
    rank[v] = static_cast<int>(i);
  }
  return Ordering(std::move(rank));
}

Ordering Ordering::identity(int n) {
  std::vector<int> rank(static_cast<std::size_t>(n));
  std::iota(rank.begin(), rank.end(), 0);
  return Ordering(std::move(rank));
}

std::vector<NodeId> Ordering::sequence() const {
  std::vector<NodeId> seq(rank_.size());
  for (std::size_t v = 0; v < rank_.size(); ++v) seq[rank_[v]] = static_cast<NodeId>(v);
  return seq;
}

namespace {

Ordering sort_by_key(const std::vector<double>& key) {
  std::vector<NodeId> seq(key.size());
  std::iota(seq.begin(), seq.end(), 0);
  std::stable_sort(seq.begin(), seq.end(), [&](NodeId a, NodeId b) { return key[a] < key[b]; });
  return Ordering::from_sequence(seq);
}

Ordering bifocal_order(const DistanceMatrix& dist) {
  const int n = static_cast<int>(dist.size());
  int best = -1;
  NodeId first = 0, last = 1;
  for (NodeId a = 0; a < n; ++a) {
    for (NodeId b = a + 1; b < n; ++b) {
      if (dist[a][b] > best) {
        best = dist[a][b];
        first = a;
        last = b;
      }
    }
  }
  if (best <= 0) throw DataError("bifocal ordering needs a connected graph");
  std::vector<NodeId> interior;
  std::vector<double> score(static_cast<std::size_t>(n), 0.0);
  for (NodeId v = 0; v < n; ++v) {
    if (v == first || v == last) continue;
    const double d1 = dist[v][first];
    const double d2 = dist[v][last];
    if (d1 < 0 || d2 < 0) throw DataError("bifocal ordering needs a connected graph");
    score[v] = (d1 - d2) / (d1 + d2);
    interior.push_back(v);
  }
  std::stable_sort(interior.begin(), interior.end(), [&](NodeId a, NodeId b) { return score[a] < score[b]; });
  std::vector<NodeId> seq;
  seq.reserve(static_cast<std::size_t>(n));
  seq.push_back(first);
  seq.insert(seq.end(), interior.begin(), interior.end());
  seq.push_back(last);
  return Ordering::from_sequence(seq);
}

}  // namespace

Ordering order_nodes(const Embedding& e, OrderingMethod method) {
  std::vector<double> key(e.coords.size());
  switch (method) {
    case OrderingMethod::x:
      for (std::size_t i = 0; i < key.size(); ++i) key[i] = e.coords[i].x;
      break;
    case OrderingMethod::radial:
      for (std::size_t i = 0; i < key.size(); ++i) key[i] = std::hypot(e.coords[i].x, e.coords[i].y);
      break;
    case OrderingMethod::reversed_radial:
      for (std::size_t i = 0; i < key.size(); ++i) key[i] = -std::hypot(e.coords[i].x, e.coords[i].y);
      break;
    case OrderingMethod::bifocal:
      throw InvalidArgument("bifocal ordering needs graph distances");
  }
  return sort_by_key(key);
}

Ordering order_nodes(const Embedding& e, OrderingMethod method, const DistanceMatrix& dist) {
  if (method != OrderingMethod::bifocal) return order_nodes(e, method);
  if (dist.size() != e.coords.size()) throw InvalidArgument("distance matrix does not match embedding");
  return bifocal_order(dist);
}

Ordering random_ordering(int n, Rng& rng) {
  std::vector<NodeId> seq(static_cast<std::size_t>(n));
  std::iota(seq.begin(), seq.end(), 0);
  rng.shuffle(seq);
  return Ordering::from_sequence(seq);
}

Dag orient_edges(const UndirectedGraph& g, const Ordering& order) {
  if (order.size() != g.size()) throw InvalidArgument("ordering size does not match graph");
  std::vector<Edge> edges;
  edges.reserve(g.num_edges());
  for (const Edge& e : g.edges()) {
    const int a = order.rank(e.src);
    const int b = order.rank(e.dst);
    edges.push_back({std::min(a, b), std::max(a, b)});
  }
  return Dag(g.size(), std::move(edges));
}

int count_orphans(const Dag& dag) {
  const auto in = dag.in_degrees();
  const auto out = dag.out_degrees();
  const int n = dag.size();
  int orphans = 0;
  for (NodeId v = 0; v < n; ++v) {
    if ((v > 0 && in[v] == 0) || (v + 1 < n && out[v] == 0)) ++orphans;
  }
  return orphans;
}

OrphanRepair repair_orphans(const Dag& dag) {
  for (const Edge& e : dag.edges()) {
    if (e.src > e.dst) throw InvalidArgument("orphan repair expects forward edges only");
  }
  const int n = dag.size();
  auto in = dag.in_degrees();
  auto out = dag.out_degrees();
  std::vector<Edge> edges = dag.edges();
  OrphanRepair result{dag, 0, count_orphans(dag)};
  for (NodeId v = 0; v < n; ++v) {
    if (v > 0 && in[v] == 0) {
      edges.push_back({v - 1, v});
      ++out[v - 1];
      ++in[v];
      ++result.repairs;
    }
    if (v + 1 < n && out[v] == 0) {
      edges.push_back({v, v + 1});
      ++out[v];
      ++in[v + 1];
      ++result.repairs;
    }
  }
  if (result.repairs > 0) result.dag = dag.with_edges(std::move(edges));
  return result;
}

Dag fix_orphans(const Dag& dag) { return repair_orphans(dag).dag; }

DagifyResult dagify_detailed(const UndirectedGraph& g, OrderingMethod method) {
  Embedding embedding = canonicalize(kamada_kawai(g));
  Ordering ordering = method == OrderingMethod::bifocal
                          ? order_nodes(embedding, method, all_pairs_distances(g.adjacency()))
                          : order_nodes(embedding, method);
  OrphanRepair repaired = repair_orphans(orient_edges(g, ordering));
  return DagifyResult{std::move(repaired.dag), std::move(embedding), std::move(ordering), repaired.repairs,
                      repaired.orphan_nodes};
}

Dag dagify(const UndirectedGraph& g, OrderingMethod method) { return dagify_detailed(g, method).dag; }

UndirectedGraph largest_component(const UndirectedGraph& g) {
  const auto components = connected_components(g);
  const auto largest = std::max_element(components.begin(), components.end(),
                                        [](const auto& a, const auto& b) { return a.size() < b.size(); });
  if (largest->size() == static_cast<std::size_t>(g.size())) return g;
  if (largest->size() < 2) throw DataError("graph has no edges");
  return induced_subgraph(g, *largest);
}

std::string embedding_csv(const Embedding& e) {
  std::ostringstream out;
  out.precision(17);
  out << "node,x,y,stress\n";
  for (std::size_t i = 0; i < e.coords.size(); ++i) {
    out << i << ',' << e.coords[i].x << ',' << e.coords[i].y << ',' << e.stress << '\n';
  }
  return out.str();
}

}  // namespace graphforge
