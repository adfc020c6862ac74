#include "circmap/census.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "circmap/kernel.hpp"

namespace circmap {

const char* to_string(Chart c) { return c == Chart::Plane ? "plane" : "inverted"; }

const char* to_string(RegionKind k) {
  switch (k) {
    case RegionKind::Interior: return "interior";
    case RegionKind::Compact: return "compact";
    case RegionKind::NonCompact: return "noncompact";
    case RegionKind::Expanding: return "expanding";
  }
  return "unknown";
}

Point chart_to_plane(Chart chart, Point c) {
  if (chart == Chart::Plane) return c;
  const double r2 = norm2(c);
  if (r2 == 0.0) {
    const double inf = std::numeric_limits<double>::infinity();
    return {inf, inf};
  }
  return (1.0 / r2) * c;
}

Point plane_to_chart(Chart chart, Point m) { return chart_to_plane(chart, m); }

CellState FieldGrid::state_at_fine(int fx, int fy) const {
  const int b = block_size();
  const int i = fx / b, j = fy / b;
  const std::size_t k = static_cast<std::size_t>(j) * resolution + i;
  const std::int32_t blk = block_of[k];
  if (blk < 0) return base_state[k];
  return fine[static_cast<std::size_t>(blk) * b * b + static_cast<std::size_t>(fy % b) * b + (fx % b)];
}

std::optional<CellState> FieldGrid::state_at_point(Point c) const {
  const int b = block_size();
  const double fx = (c.x - bounds.x0) / cell_width() * b;
  const double fy = (c.y - bounds.y0) / cell_height() * b;
  const double limit = static_cast<double>(resolution) * b;
  if (!(fx >= 0.0 && fy >= 0.0 && fx < limit && fy < limit)) return std::nullopt;
  return state_at_fine(static_cast<int>(fx), static_cast<int>(fy));
}

std::size_t FieldGrid::refined_cells() const {
  return static_cast<std::size_t>(std::count_if(block_of.begin(), block_of.end(),
                                                [](std::int32_t b) { return b >= 0; }));
}

namespace {

int thread_count(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) over a fixed pool. Each index writes only its
// own outputs, so results do not depend on the worker count.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const int workers = std::min<int>(thread_count(threads), static_cast<int>(std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
}

class FieldEvaluator {
 public:
  FieldEvaluator(const Polygon& p, Chart chart, const SampleOptions& opts)
      : poly_(p.vertices().begin(), p.vertices().end()), chart_(chart), opts_(opts) {
    for (std::size_t i = 0; i < p.size(); ++i) lines_.push_back(sideline(p, i));
  }

  double operator()(Point c) const {
    const Point m = chart_to_plane(chart_, c);
    if (!std::isfinite(m.x) || !std::isfinite(m.y)) return std::numeric_limits<double>::infinity();
    return sample_log_scale(poly_, m, opts_.collinearity_tolerance, opts_.consistency_tolerance).log_s;
  }

  // Whether some sideline meets the closed rectangle.
  bool wall(double x0, double y0, double x1, double y1) const {
    for (const auto& l : lines_) {
      if (chart_ == Chart::Plane) {
        const double v[4] = {dot(l.normal, {x0, y0}) - l.offset, dot(l.normal, {x1, y0}) - l.offset,
                             dot(l.normal, {x0, y1}) - l.offset, dot(l.normal, {x1, y1}) - l.offset};
        if (*std::min_element(v, v + 4) <= 0.0 && *std::max_element(v, v + 4) >= 0.0) return true;
      } else if (circle_meets_rect(l, x0, y0, x1, y1)) {
        return true;
      }
    }
    return false;
  }

 private:
  // Image of sideline {n . M = c} in the inverted chart: h(w) = c|w|^2 - n . w = 0.
  static bool circle_meets_rect(const Line& l, double x0, double y0, double x1, double y1) {
    const double c = l.offset;
    const double a = l.normal.x, b = l.normal.y;
    auto h = [&](double u, double v) { return c * (u * u + v * v) - a * u - b * v; };
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto take = [&](double u, double v) {
      const double x = h(u, v);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    };
    take(x0, y0);
    take(x1, y0);
    take(x0, y1);
    take(x1, y1);
    if (c != 0.0) {
      const double uc = a / (2.0 * c), vc = b / (2.0 * c);
      if (uc > x0 && uc < x1) {
        take(uc, y0);
        take(uc, y1);
      }
      if (vc > y0 && vc < y1) {
        take(x0, vc);
        take(x1, vc);
      }
      if (uc > x0 && uc < x1 && vc > y0 && vc < y1) take(uc, vc);
    }
    return lo <= 0.0 && hi >= 0.0;
  }

  std::vector<Point> poly_;
  Chart chart_;
  SampleOptions opts_;
  std::vector<Line> lines_;
};

enum class Probe { Negative, NonNegative, Mixed };

Probe probe(std::initializer_list<double> vals) {
  bool neg = false, pos = false;
  for (double v : vals) (v < 0.0 ? neg : pos) = true;
  if (neg && pos) return Probe::Mixed;
  return neg ? Probe::Negative : Probe::NonNegative;
}

struct Refiner {
  const FieldEvaluator& f;
  int max_depth;
  CellState* block;  // block_size^2
  int block_size;

  void fill(int fx, int fy, int size, CellState s) const {
    for (int y = fy; y < fy + size; ++y)
      for (int x = fx; x < fx + size; ++x) block[y * block_size + x] = s;
  }

  // Returns the deepest level reached.
  int run(int fx, int fy, int size, double x0, double y0, double x1, double y1, double v00,
          double v10, double v01, double v11, double vc, int level) const {
    const bool is_wall = f.wall(x0, y0, x1, y1);
    const Probe pr = probe({v00, v10, v01, v11, vc});
    if (!is_wall && pr != Probe::Mixed) {
      fill(fx, fy, size, pr == Probe::Negative ? CellState::Contracting : CellState::Expanding);
      return level;
    }
    if (level == max_depth) {
      fill(fx, fy, size, is_wall ? CellState::BlowUp : CellState::Ambiguous);
      return level;
    }
    const double xc = 0.5 * (x0 + x1), yc = 0.5 * (y0 + y1);
    const double vb = f({xc, y0}), vt = f({xc, y1}), vl = f({x0, yc}), vr = f({x1, yc});
    const double qx0 = 0.5 * (x0 + xc), qx1 = 0.5 * (xc + x1);
    const double qy0 = 0.5 * (y0 + yc), qy1 = 0.5 * (yc + y1);
    const int h = size / 2;
    int deepest = level;
    deepest = std::max(deepest, run(fx, fy, h, x0, y0, xc, yc, v00, vb, vl, vc, f({qx0, qy0}), level + 1));
    deepest = std::max(deepest, run(fx + h, fy, h, xc, y0, x1, yc, vb, v10, vc, vr, f({qx1, qy0}), level + 1));
    deepest = std::max(deepest, run(fx, fy + h, h, x0, yc, xc, y1, vl, vc, v01, vt, f({qx0, qy1}), level + 1));
    deepest = std::max(deepest, run(fx + h, fy + h, h, xc, yc, x1, y1, vc, vr, vt, v11, f({qx1, qy1}), level + 1));
    return deepest;
  }
};

}  // namespace

FieldGrid sample_field(const Polygon& p, Chart chart, Bounds bounds, int resolution,
                       int refine_depth, const SampleOptions& opts) {
  if (resolution < 16) throw GeometryError(ErrorKind::InvalidInput, "field resolution must be >= 16");
  if (refine_depth < 0 || refine_depth > 8)
    throw GeometryError(ErrorKind::InvalidInput, "refine depth must be in [0, 8]");
  if (!(bounds.x1 > bounds.x0) || !(bounds.y1 > bounds.y0))
    throw GeometryError(ErrorKind::InvalidInput, "empty field bounds");
  if (p.size() > kMaxKernelVertices)
    throw GeometryError(ErrorKind::InvalidInput, "polygon has too many vertices for the field kernel");

  FieldGrid g;
  g.chart = chart;
  g.bounds = bounds;
  g.resolution = resolution;
  g.refine_depth = refine_depth;
  const int res = resolution;
  const int nodes = res + 1;
  const FieldEvaluator f(p, chart, opts);

  g.values.assign(static_cast<std::size_t>(nodes) * nodes, 0.0);
  parallel_for(static_cast<std::size_t>(nodes), opts.threads, [&](std::size_t j) {
    for (int i = 0; i < nodes; ++i)
      g.values[j * nodes + i] = f(g.node_point(i, static_cast<int>(j)));
  });

  const std::size_t cells = static_cast<std::size_t>(res) * res;
  std::vector<double> centers(cells);
  const double w = g.cell_width(), h = g.cell_height();
  parallel_for(static_cast<std::size_t>(res), opts.threads, [&](std::size_t j) {
    for (int i = 0; i < res; ++i)
      centers[j * res + i] = f(g.node_point(i, static_cast<int>(j)) + Point{0.5 * w, 0.5 * h});
  });

  g.base_state.assign(cells, CellState::Ambiguous);
  g.block_of.assign(cells, -1);
  g.depth.assign(cells, 0);
  std::vector<char> needs(cells, 0);
  parallel_for(static_cast<std::size_t>(res), opts.threads, [&](std::size_t j) {
    for (int i = 0; i < res; ++i) {
      const std::size_t k = j * res + i;
      const Point a = g.node_point(i, static_cast<int>(j));
      const bool is_wall = f.wall(a.x, a.y, a.x + w, a.y + h);
      const Probe pr = probe({g.node_value(i, static_cast<int>(j)), g.node_value(i + 1, static_cast<int>(j)),
                              g.node_value(i, static_cast<int>(j) + 1),
                              g.node_value(i + 1, static_cast<int>(j) + 1), centers[k]});
      if (!is_wall && pr != Probe::Mixed)
        g.base_state[k] = pr == Probe::Negative ? CellState::Contracting : CellState::Expanding;
      else if (refine_depth == 0)
        g.base_state[k] = is_wall ? CellState::BlowUp : CellState::Ambiguous;
      else
        needs[k] = 1;
    }
  });

  if (refine_depth == 0) return g;

  // Block indices assigned in row-major order.
  std::vector<std::size_t> refined;
  for (std::size_t k = 0; k < cells; ++k)
    if (needs[k]) {
      g.block_of[k] = static_cast<std::int32_t>(refined.size());
      refined.push_back(k);
    }
  const int b = g.block_size();
  g.fine.assign(refined.size() * static_cast<std::size_t>(b) * b, CellState::Ambiguous);
  parallel_for(refined.size(), opts.threads, [&](std::size_t r) {
    const std::size_t k = refined[r];
    const int i = static_cast<int>(k % res), j = static_cast<int>(k / res);
    const Point a = g.node_point(i, j);
    Refiner rf{f, refine_depth, g.fine.data() + r * static_cast<std::size_t>(b) * b, b};
    g.depth[k] = static_cast<std::uint8_t>(
        rf.run(0, 0, b, a.x, a.y, a.x + w, a.y + h, g.node_value(i, j), g.node_value(i + 1, j),
               g.node_value(i, j + 1), g.node_value(i + 1, j + 1), centers[k], 0));
  });
  return g;
}

FieldGrid coarsen(const FieldGrid& g) {
  if (g.refine_depth == 0) throw GeometryError(ErrorKind::InvalidInput, "grid is already at depth 0");
  FieldGrid c = g;
  c.refine_depth = g.refine_depth - 1;
  const int b = g.block_size();
  const int cb = c.block_size();
  const std::size_t blocks = g.fine.size() / (static_cast<std::size_t>(b) * b);
  std::vector<CellState> fine(blocks * cb * cb);
  std::vector<char> uniform(blocks, 1);
  for (std::size_t blk = 0; blk < blocks; ++blk) {
    const CellState* src = g.fine.data() + blk * b * b;
    CellState* dst = fine.data() + blk * cb * cb;
    for (int y = 0; y < cb; ++y) {
      for (int x = 0; x < cb; ++x) {
        const CellState q[4] = {src[(2 * y) * b + 2 * x], src[(2 * y) * b + 2 * x + 1],
                                src[(2 * y + 1) * b + 2 * x], src[(2 * y + 1) * b + 2 * x + 1]};
        CellState s;
        if (q[0] == q[1] && q[0] == q[2] && q[0] == q[3])
          s = q[0];
        else if (std::find(q, q + 4, CellState::BlowUp) != q + 4)
          s = CellState::BlowUp;
        else
          s = CellState::Ambiguous;
        dst[y * cb + x] = s;
        if (s != dst[0]) uniform[blk] = 0;
      }
    }
  }
  if (c.refine_depth > 0) {
    c.fine = std::move(fine);
  } else {
    // Depth 0: every refined base cell collapses to a single state.
    for (std::size_t k = 0; k < c.block_of.size(); ++k) {
      const auto blk = c.block_of[k];
      if (blk < 0) continue;
      c.base_state[k] = fine[static_cast<std::size_t>(blk)];
      c.block_of[k] = -1;
    }
    c.fine.clear();
  }
  for (auto& d : c.depth) d = static_cast<std::uint8_t>(std::min<int>(d, c.refine_depth));
  return c;
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<std::uint32_t>(i);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    // Smaller root wins so labels follow row-major order.
    if (a < b)
      parent_[b] = a;
    else
      parent_[a] = b;
  }

 private:
  std::vector<std::uint32_t> parent_;
};

enum class LeafClass : std::uint8_t { None, Contracting, Expanding, Infinity };

// Leaves of one chart: base cells that were not refined plus the fine cells of
// refined blocks, each with an id in a shared union-find space.
struct ChartLeaves {
  const FieldGrid* g = nullptr;
  std::uint32_t offset = 0;
  std::vector<LeafClass> cls;
  std::vector<char> inside;  // plane chart: center strictly inside the polygon
  std::vector<char> blowup;

  std::size_t base_count() const { return static_cast<std::size_t>(g->resolution) * g->resolution; }
  std::size_t total() const { return base_count() + g->fine.size(); }

  std::uint32_t base_id(std::size_t k) const { return offset + static_cast<std::uint32_t>(k); }
  std::uint32_t fine_id(std::int32_t blk, int x, int y) const {
    const int b = g->block_size();
    return offset + static_cast<std::uint32_t>(base_count() + static_cast<std::size_t>(blk) * b * b +
                                               static_cast<std::size_t>(y) * b + x);
  }
  // Leaf covering fine position (x, y) inside base cell k.
  std::uint32_t leaf(std::size_t k, int x, int y) const {
    const auto blk = g->block_of[k];
    return blk < 0 ? base_id(k) : fine_id(blk, x, y);
  }
  LeafClass class_of(std::uint32_t id) const { return cls[id - offset]; }

  // Leaf containing chart point c, if inside the bounds.
  std::optional<std::uint32_t> locate(Point c) const {
    const double fx = (c.x - g->bounds.x0) / g->cell_width();
    const double fy = (c.y - g->bounds.y0) / g->cell_height();
    if (!(fx >= 0.0 && fy >= 0.0 && fx < g->resolution && fy < g->resolution)) return std::nullopt;
    const int i = static_cast<int>(fx), j = static_cast<int>(fy);
    const int b = g->block_size();
    const int x = std::min(b - 1, static_cast<int>((fx - i) * b));
    const int y = std::min(b - 1, static_cast<int>((fy - j) * b));
    return leaf(static_cast<std::size_t>(j) * g->resolution + i, x, y);
  }
};

template <typename Fn>
void for_each_leaf(const FieldGrid& g, Fn&& fn) {
  const int res = g.resolution;
  const int b = g.block_size();
  const double w = g.cell_width(), h = g.cell_height();
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * res + i;
      const Point a = g.node_point(i, j);
      const auto blk = g.block_of[k];
      if (blk < 0) {
        fn(k, -1, 0, 0, g.base_state[k], a + Point{0.5 * w, 0.5 * h}, w * h);
        continue;
      }
      const double fw = w / b, fh = h / b;
      for (int y = 0; y < b; ++y)
        for (int x = 0; x < b; ++x)
          fn(k, blk, x, y, g.fine[static_cast<std::size_t>(blk) * b * b + static_cast<std::size_t>(y) * b + x],
             a + Point{(x + 0.5) * fw, (y + 0.5) * fh}, fw * fh);
    }
  }
}

LeafClass class_from_state(CellState s) {
  switch (s) {
    case CellState::Contracting: return LeafClass::Contracting;
    case CellState::Expanding:
    case CellState::BlowUp: return LeafClass::Expanding;
    case CellState::Ambiguous: return LeafClass::None;
  }
  return LeafClass::None;
}

ChartLeaves build_leaves(const Polygon& p, const FieldGrid& g, std::uint32_t offset,
                         const CensusOptions& opts) {
  ChartLeaves L;
  L.g = &g;
  L.offset = offset;
  L.cls.assign(L.total(), LeafClass::None);
  L.inside.assign(L.total(), 0);
  L.blowup.assign(L.total(), 0);
  const double R = opts.cut_radius;
  for_each_leaf(g, [&](std::size_t k, std::int32_t blk, int x, int y, CellState s, Point c, double) {
    const std::uint32_t id = (blk < 0 ? L.base_id(k) : L.fine_id(blk, x, y)) - offset;
    const double r = length(c);
    LeafClass cl = class_from_state(s);
    if (g.chart == Chart::Plane) {
      if (r > R) cl = LeafClass::None;
      else L.inside[id] = winding_number(p, c) != 0;
    } else {
      if (r > 2.0 / R) cl = LeafClass::None;
      else if (r < opts.infinity_radius) cl = LeafClass::Infinity;
    }
    L.cls[id] = cl;
    L.blowup[id] = s == CellState::BlowUp && cl == LeafClass::Expanding;
  });
  return L;
}

struct Labeler {
  UnionFind uf;
  std::uint32_t infinity_node;
  std::vector<char> touches_infinity;  // per node, for contracting leaves next to the disc

  Labeler(std::size_t n) : uf(n + 1), infinity_node(static_cast<std::uint32_t>(n)), touches_infinity(n + 1, 0) {}

  void link(std::uint32_t a, LeafClass ca, std::uint32_t b, LeafClass cb) {
    if (ca == LeafClass::None || cb == LeafClass::None) return;
    if (ca == LeafClass::Infinity && cb == LeafClass::Infinity) return;
    if (ca == LeafClass::Infinity || cb == LeafClass::Infinity) {
      const std::uint32_t other = ca == LeafClass::Infinity ? b : a;
      const LeafClass co = ca == LeafClass::Infinity ? cb : ca;
      if (co == LeafClass::Expanding) uf.unite(other, infinity_node);
      else touches_infinity[other] = 1;
      return;
    }
    if (ca == cb) uf.unite(a, b);
  }
};

void link_within_chart(Labeler& lab, const ChartLeaves& L) {
  const FieldGrid& g = *L.g;
  const int res = g.resolution;
  const int b = g.block_size();
  auto cls = [&](std::uint32_t id) { return L.class_of(id); };
  for (int j = 0; j < res; ++j) {
    for (int i = 0; i < res; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * res + i;
      const auto blk = g.block_of[k];
      if (blk >= 0) {
        for (int y = 0; y < b; ++y)
          for (int x = 0; x < b; ++x) {
            const auto id = L.fine_id(blk, x, y);
            if (x + 1 < b) lab.link(id, cls(id), L.fine_id(blk, x + 1, y), cls(L.fine_id(blk, x + 1, y)));
            if (y + 1 < b) lab.link(id, cls(id), L.fine_id(blk, x, y + 1), cls(L.fine_id(blk, x, y + 1)));
          }
      }
      if (i + 1 < res) {
        const std::size_t kr = k + 1;
        if (blk < 0 && g.block_of[kr] < 0) {
          lab.link(L.base_id(k), cls(L.base_id(k)), L.base_id(kr), cls(L.base_id(kr)));
        } else {
          for (int y = 0; y < b; ++y) {
            const auto a = L.leaf(k, b - 1, y), c = L.leaf(kr, 0, y);
            lab.link(a, cls(a), c, cls(c));
          }
        }
      }
      if (j + 1 < res) {
        const std::size_t ku = k + static_cast<std::size_t>(res);
        if (blk < 0 && g.block_of[ku] < 0) {
          lab.link(L.base_id(k), cls(L.base_id(k)), L.base_id(ku), cls(L.base_id(ku)));
        } else {
          for (int x = 0; x < b; ++x) {
            const auto a = L.leaf(k, x, b - 1), c = L.leaf(ku, x, 0);
            lab.link(a, cls(a), c, cls(c));
          }
        }
      }
    }
  }
}

// Joins leaves of the two charts that cover the same point of the overlap
// annulus R/2 <= |M| <= R, in both directions.
void stitch(Labeler& lab, const ChartLeaves& from, const ChartLeaves& to, double rmin, double rmax) {
  for_each_leaf(*from.g, [&](std::size_t k, std::int32_t blk, int x, int y, CellState, Point c, double) {
    const std::uint32_t id = blk < 0 ? from.base_id(k) : from.fine_id(blk, x, y);
    const LeafClass ca = from.class_of(id);
    if (ca != LeafClass::Contracting && ca != LeafClass::Expanding) return;
    const Point m = chart_to_plane(from.g->chart, c);
    const double r = length(m);
    if (r < rmin || r > rmax) return;
    const auto other = to.locate(plane_to_chart(to.g->chart, m));
    if (!other) return;
    const LeafClass cb = to.class_of(*other);
    if (cb == ca) lab.uf.unite(id, *other);
  });
}

}  // namespace

RegionReport count_regions(const Polygon& p, const FieldGrid& plane, const FieldGrid& inverted,
                           const CensusOptions& opts) {
  const ChartLeaves lp = build_leaves(p, plane, 0, opts);
  const ChartLeaves li = build_leaves(p, inverted, static_cast<std::uint32_t>(lp.total()), opts);
  const std::size_t total = lp.total() + li.total();
  Labeler lab(total);
  link_within_chart(lab, lp);
  link_within_chart(lab, li);
  const double R = opts.cut_radius;
  stitch(lab, lp, li, 0.5 * R, R);
  stitch(lab, li, lp, 0.5 * R, R);

  struct Acc {
    bool contracting = false;
    bool any_inverted = false;
    bool all_inside = true;
    bool at_infinity = false;
    double area = 0.0;
    double cells = 0.0;
    Point moment;
    std::size_t leaves = 0;
  };
  std::map<std::uint32_t, Acc> comps;
  std::vector<std::uint32_t> blowup_roots;
  auto visit = [&](const ChartLeaves& L) {
    for_each_leaf(*L.g, [&](std::size_t k, std::int32_t blk, int x, int y, CellState, Point c, double area) {
      const std::uint32_t id = blk < 0 ? L.base_id(k) : L.fine_id(blk, x, y);
      const LeafClass cl = L.class_of(id);
      if (cl != LeafClass::Contracting && cl != LeafClass::Expanding) return;
      const std::uint32_t root = lab.uf.find(id);
      Acc& a = comps[root];
      a.contracting = cl == LeafClass::Contracting;
      ++a.leaves;
      a.cells += area / (L.g->cell_width() * L.g->cell_height());
      if (lab.touches_infinity[id]) a.at_infinity = true;
      if (L.g->chart == Chart::Inverted) {
        a.any_inverted = true;
        a.all_inside = false;
      } else {
        if (!L.inside[id - L.offset]) a.all_inside = false;
        a.area += area;
        a.moment = a.moment + area * c;
      }
      if (L.blowup[id - L.offset]) blowup_roots.push_back(root);
    });
  };
  visit(lp);
  visit(li);
  const std::uint32_t inf_root = lab.uf.find(lab.infinity_node);
  if (!comps.count(inf_root)) comps[inf_root].contracting = false;

  RegionReport r;
  r.n = static_cast<int>(p.size());
  r.resolution = plane.resolution;
  r.refine_depth = plane.refine_depth;
  for (const auto& [root, a] : comps) {
    if (root != inf_root && a.cells < opts.min_component_cells) {
      ++r.discarded_fragments;
      continue;
    }
    ComponentInfo info;
    info.cell_area = a.cells;
    info.plane_area = a.area;
    info.plane_centroid = a.area > 0.0 ? (1.0 / a.area) * a.moment : Point{};
    info.leaves = a.leaves;
    if (!a.contracting) {
      info.kind = RegionKind::Expanding;
      ++r.expanding_count;
    } else if (a.all_inside && !a.any_inverted) {
      info.kind = RegionKind::Interior;
      ++r.contracting_interior;
    } else if (a.at_infinity) {
      info.kind = RegionKind::NonCompact;
      ++r.contracting_noncompact;
    } else {
      info.kind = RegionKind::Compact;
      ++r.contracting_compact;
    }
    r.components.push_back(info);
  }
  r.total_contracting = r.contracting_interior + r.contracting_compact + r.contracting_noncompact;
  std::sort(blowup_roots.begin(), blowup_roots.end());
  blowup_roots.erase(std::unique(blowup_roots.begin(), blowup_roots.end()), blowup_roots.end());
  r.blowup_in_single_component = blowup_roots.size() <= 1 && r.expanding_count == 1;
  return r;
}

namespace {

bool same_counts(const RegionReport& a, const RegionReport& b) {
  return a.expanding_count == b.expanding_count && a.contracting_interior == b.contracting_interior &&
         a.contracting_compact == b.contracting_compact &&
         a.contracting_noncompact == b.contracting_noncompact;
}

}  // namespace

CensusResult census_polygon(const Polygon& p, const CensusOptions& opts) {
  if (!(opts.cut_radius > 0.0) || !(opts.plane_half_width > 0.0) || !(opts.infinity_radius > 0.0))
    throw GeometryError(ErrorKind::InvalidInput, "census radii must be positive");
  if (opts.cut_radius > opts.plane_half_width * std::numbers::sqrt2)
    throw GeometryError(ErrorKind::InvalidInput, "cut radius exceeds the plane chart");
  if (opts.infinity_radius >= 2.0 / opts.cut_radius)
    throw GeometryError(ErrorKind::InvalidInput, "infinity disc exceeds the inverted chart");
  SampleOptions so;
  so.threads = opts.threads;
  const double w = opts.plane_half_width;
  const double a = 2.0 / opts.cut_radius;
  CensusResult out{{},
                   sample_field(p, Chart::Plane, {-w, -w, w, w}, opts.resolution, opts.refine_depth, so),
                   sample_field(p, Chart::Inverted, {-a, -a, a, a}, opts.resolution, opts.refine_depth, so)};
  out.report = count_regions(p, out.plane, out.inverted, opts);
  if (opts.refine_depth > 0) {
    const RegionReport coarse = count_regions(p, coarsen(out.plane), coarsen(out.inverted), opts);
    out.report.stable = same_counts(out.report, coarse);
  }
  return out;
}

RegionReport census(int n, const CensusOptions& opts) {
  if (n < 3) throw GeometryError(ErrorKind::InvalidInput, "census needs n >= 3");
  return census_polygon(regular_ngon(n), opts).report;
}

int conjectured_counts(int n) {
  if (n < 3) throw GeometryError(ErrorKind::InvalidInput, "conjectured count needs n >= 3");
  if (n % 2 == 1) return (n == 3 ? 0 : 1) + n * (n + 1) / 2;
  return 1 + n * n / 2;
}

std::optional<Table1Row> table1_expected(int n) {
  // interior, non-compact, compact as multiples of n.
  static constexpr int rows[][4] = {
      {3, 0, 2, 0},  {4, 1, 1, 1},  {5, 1, 2, 1},  {6, 1, 1, 2},  {7, 1, 2, 2},
      {8, 1, 1, 3},  {9, 1, 2, 3},  {10, 1, 1, 4}, {11, 1, 2, 4},
  };
  for (const auto& r : rows)
    if (r[0] == n) {
      const int interior = r[1], noncompact = r[2] * n, compact = r[3] * n;
      return Table1Row{n, interior, noncompact, compact, interior + noncompact + compact};
    }
  return std::nullopt;
}

std::vector<std::pair<double, double>> StretchSweepResult::transitions() const {
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 1; i < samples.size(); ++i)
    if (samples[i].report.total_contracting != samples[i - 1].report.total_contracting)
      out.emplace_back(samples[i - 1].t, samples[i].t);
  return out;
}

StretchSweepResult stretch_sweep(double t_min, double t_max, int steps, const CensusOptions& opts) {
  if (!(t_min >= 1.0) || !(t_max >= t_min) || steps < 1)
    throw GeometryError(ErrorKind::InvalidInput, "stretch sweep needs 1 <= t_min <= t_max, steps >= 1");
  StretchSweepResult out;
  const Polygon base = regular_ngon(3);
  for (int k = 0; k < steps; ++k) {
    const double t = steps == 1 ? t_min : t_min + (t_max - t_min) * k / (steps - 1);
    out.samples.push_back({t, census_polygon(affine_stretch(base, t), opts).report});
  }
  return out;
}

RegularityReport regularity_comparison(int n, int trials, std::uint64_t seed, const CensusOptions& opts) {
  if (trials < 1) throw GeometryError(ErrorKind::InvalidInput, "regularity comparison needs trials >= 1");
  if (n < 3) throw GeometryError(ErrorKind::InvalidInput, "regularity comparison needs n >= 3");
  RegularityReport rep;
  rep.n = n;
  rep.regular_total = census(n, opts).total_contracting;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-1.0, 1.0);
  while (static_cast<int>(rep.sample_totals.size()) < trials) {
    std::vector<Point> v;
    for (int k = 0; k < n; ++k) {
      const double t = 2.0 * std::numbers::pi * k / n + 0.35 * (std::numbers::pi / n) * jitter(rng);
      const double r = 1.0 + 0.25 * jitter(rng);
      v.push_back({r * std::cos(t), r * std::sin(t)});
    }
    const Polygon q(std::move(v));
    if (!is_simple(q)) continue;
    const auto rr = census_polygon(q, opts).report;
    rep.sample_totals.push_back(rr.total_contracting);
    rep.sample_stable.push_back(rr.stable);
    rep.max_sampled = std::max(rep.max_sampled, rr.total_contracting);
  }
  rep.regular_is_max = rep.regular_total >= rep.max_sampled;
  return rep;
}

std::string census_csv_header() { return "n,interior,noncompact,compact,total,expanding,stable,resolution"; }

std::string census_csv_row(const RegionReport& r) {
  std::ostringstream os;
  os << r.n << ',' << r.contracting_interior << ',' << r.contracting_noncompact << ','
     << r.contracting_compact << ',' << r.total_contracting << ',' << r.expanding_count << ','
     << (r.stable ? "true" : "false") << ',' << r.resolution;
  return os.str();
}

}  // namespace circmap
