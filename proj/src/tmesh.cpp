#include "gts/tmesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "gts/errors.hpp"

namespace gts {

namespace {

int64_t corner_key(int x, int y) {
  return (static_cast<int64_t>(x) << 32) | static_cast<uint32_t>(y);
}

int leading_run(const std::vector<double>& w) {
  int n = 1;
  while (n < static_cast<int>(w.size()) && w[static_cast<size_t>(n)] == w.front()) ++n;
  return n;
}

int trailing_run(const std::vector<double>& w) {
  int n = 1;
  while (n < static_cast<int>(w.size()) && w[w.size() - 1 - static_cast<size_t>(n)] == w.back())
    ++n;
  return n;
}

}  // namespace

IndexTMesh IndexTMesh::build(int p, int q, int mu, int nu, std::vector<Cell> cells) {
  if (p < 2 || q < 2) fail(errc::invalid_argument, "orders p, q must be at least 2");
  if (mu < 1 || nu < 1) fail(errc::invalid_argument, "active-region extents must be positive");

  IndexTMesh m;
  m.p_ = p;
  m.q_ = q;
  m.mu_ = mu;
  m.nu_ = nu;
  m.xmin_ = -(p / 2) + 1;
  m.xmax_ = mu + p / 2;
  m.ymin_ = -(q / 2) + 1;
  m.ymax_ = nu + q / 2;

  const int w = m.xmax_ - m.xmin_;
  const int h = m.ymax_ - m.ymin_;
  if (static_cast<int64_t>(w) * h > 4'000'000)
    fail(errc::invalid_argument, "index domain too large");

  for (const Cell& c : cells) {
    if (c.x1 >= c.x2 || c.y1 >= c.y2)
      fail(errc::malformed_partition, "cell with empty interior");
    if (c.x1 < m.xmin_ || c.x2 > m.xmax_ || c.y1 < m.ymin_ || c.y2 > m.ymax_)
      fail(errc::malformed_partition, "cell outside the index domain");
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.x1, a.y1, a.x2, a.y2) < std::tie(b.x1, b.y1, b.x2, b.y2);
  });
  m.cells_ = std::move(cells);

  // Unit-square ownership over the whole index domain: overlap and gap
  // detection in one pass.
  std::vector<int> owner(static_cast<size_t>(w) * static_cast<size_t>(h), -1);
  auto unit = [&](int ux, int uy) -> int& {
    return owner[static_cast<size_t>(ux - m.xmin_) +
                 static_cast<size_t>(uy - m.ymin_) * static_cast<size_t>(w)];
  };
  for (size_t ci = 0; ci < m.cells_.size(); ++ci) {
    const Cell& c = m.cells_[ci];
    for (int uy = c.y1; uy < c.y2; ++uy)
      for (int ux = c.x1; ux < c.x2; ++ux) {
        int& slot = unit(ux, uy);
        if (slot != -1) fail(errc::malformed_partition, "overlapping cells");
        slot = static_cast<int>(ci);
      }
  }
  for (int v : owner)
    if (v == -1) fail(errc::malformed_partition, "cells leave a gap in the index domain");

  // Skeleton material per unit segment: a vertical unit at x is material
  // when the two unit squares left/right of it belong to different cells
  // (or it lies on the domain boundary).
  m.vmat_.assign(static_cast<size_t>(w + 1) * static_cast<size_t>(h), 0);
  for (int x = m.xmin_; x <= m.xmax_; ++x)
    for (int ylo = m.ymin_; ylo < m.ymax_; ++ylo) {
      bool mat = x == m.xmin_ || x == m.xmax_ || unit(x - 1, ylo) != unit(x, ylo);
      m.vmat_[static_cast<size_t>(x - m.xmin_) * static_cast<size_t>(h) +
              static_cast<size_t>(ylo - m.ymin_)] = mat ? 1 : 0;
    }
  m.hmat_.assign(static_cast<size_t>(w) * static_cast<size_t>(h + 1), 0);
  for (int xlo = m.xmin_; xlo < m.xmax_; ++xlo)
    for (int y = m.ymin_; y <= m.ymax_; ++y) {
      bool mat = y == m.ymin_ || y == m.ymax_ || unit(xlo, y - 1) != unit(xlo, y);
      m.hmat_[static_cast<size_t>(xlo - m.xmin_) * static_cast<size_t>(h + 1) +
              static_cast<size_t>(y - m.ymin_)] = mat ? 1 : 0;
    }

  m.vertex_keys_.reserve(m.cells_.size() * 4);
  for (const Cell& c : m.cells_) {
    m.vertex_keys_.push_back(corner_key(c.x1, c.y1));
    m.vertex_keys_.push_back(corner_key(c.x1, c.y2));
    m.vertex_keys_.push_back(corner_key(c.x2, c.y1));
    m.vertex_keys_.push_back(corner_key(c.x2, c.y2));
  }
  std::sort(m.vertex_keys_.begin(), m.vertex_keys_.end());
  m.vertex_keys_.erase(std::unique(m.vertex_keys_.begin(), m.vertex_keys_.end()),
                       m.vertex_keys_.end());

  m.classify();
  if (m.class_ != MeshClass::not_admissible) m.build_anchors();
  return m;
}

bool IndexTMesh::v_unit(int x, int ylo) const {
  if (x < xmin_ || x > xmax_ || ylo < ymin_ || ylo >= ymax_) return false;
  const int h = ymax_ - ymin_;
  return vmat_[static_cast<size_t>(x - xmin_) * static_cast<size_t>(h) +
               static_cast<size_t>(ylo - ymin_)] != 0;
}

bool IndexTMesh::h_unit(int xlo, int y) const {
  if (xlo < xmin_ || xlo >= xmax_ || y < ymin_ || y > ymax_) return false;
  const int h = ymax_ - ymin_;
  return hmat_[static_cast<size_t>(xlo - xmin_) * static_cast<size_t>(h + 1) +
               static_cast<size_t>(y - ymin_)] != 0;
}

bool IndexTMesh::is_vertex(int x, int y) const {
  return std::binary_search(vertex_keys_.begin(), vertex_keys_.end(), corner_key(x, y));
}

int IndexTMesh::valence(int x, int y) const {
  int n = 0;
  if (v_unit(x, y)) ++n;      // up
  if (v_unit(x, y - 1)) ++n;  // down
  if (h_unit(x, y)) ++n;      // right
  if (h_unit(x - 1, y)) ++n;  // left
  return n;
}

std::vector<int> IndexTMesh::h_intersections(double y) const {
  std::vector<int> out;
  const int64_t y2 = std::llround(2.0 * y);
  if (std::abs(2.0 * y - static_cast<double>(y2)) > 1e-9)
    fail(errc::invalid_argument, "ray height must be integral or half-integral");
  for (int x = xmin_; x <= xmax_; ++x) {
    bool hit;
    if (y2 % 2 == 0) {
      const int yi = static_cast<int>(y2 / 2);
      hit = v_unit(x, yi - 1) || v_unit(x, yi);
    } else {
      const int ylo = static_cast<int>((y2 - 1) / 2);
      hit = v_unit(x, ylo);
    }
    if (hit) out.push_back(x);
  }
  return out;
}

std::vector<int> IndexTMesh::v_intersections(double x) const {
  std::vector<int> out;
  const int64_t x2 = std::llround(2.0 * x);
  if (std::abs(2.0 * x - static_cast<double>(x2)) > 1e-9)
    fail(errc::invalid_argument, "ray abscissa must be integral or half-integral");
  for (int y = ymin_; y <= ymax_; ++y) {
    bool hit;
    if (x2 % 2 == 0) {
      const int xi = static_cast<int>(x2 / 2);
      hit = h_unit(xi - 1, y) || h_unit(xi, y);
    } else {
      const int xlo = static_cast<int>((x2 - 1) / 2);
      hit = h_unit(xlo, y);
    }
    if (hit) out.push_back(y);
  }
  return out;
}

void IndexTMesh::classify() {
  class_ = MeshClass::not_admissible;

  // Frame lines: every index line of the frame region must be full.
  for (int l = xmin_; l <= 1; ++l)
    for (int ylo = ymin_; ylo < ymax_; ++ylo)
      if (!v_unit(l, ylo)) return;
  for (int l = mu_; l <= xmax_; ++l)
    for (int ylo = ymin_; ylo < ymax_; ++ylo)
      if (!v_unit(l, ylo)) return;
  for (int l = ymin_; l <= 1; ++l)
    for (int xlo = xmin_; xlo < xmax_; ++xlo)
      if (!h_unit(xlo, l)) return;
  for (int l = nu_; l <= ymax_; ++l)
    for (int xlo = xmin_; xlo < xmax_; ++xlo)
      if (!h_unit(xlo, l)) return;

  // Every vertex strictly inside the domain but outside the open active
  // region must have valence 4 (T-junctions may only live strictly inside
  // the active region).
  for (int64_t key : vertex_keys_) {
    const int x = static_cast<int>(key >> 32);
    const int y = static_cast<int>(static_cast<uint32_t>(key & 0xffffffff));
    if (x <= xmin_ || x >= xmax_ || y <= ymin_ || y >= ymax_) continue;
    const bool open_ar = x > 1 && x < mu_ && y > 1 && y < nu_;
    if (!open_ar && valence(x, y) != 4) return;
  }

  class_ = MeshClass::admissible_plus;
  // Facing condition: no cell may carry two boundary vertices aligned
  // across its interior.
  for (const Cell& c : cells_) {
    for (int i = c.x1 + 1; i < c.x2 && class_ == MeshClass::admissible_plus; ++i)
      if (is_vertex(i, c.y1) && is_vertex(i, c.y2)) class_ = MeshClass::admissible;
    for (int j = c.y1 + 1; j < c.y2 && class_ == MeshClass::admissible_plus; ++j)
      if (is_vertex(c.x1, j) && is_vertex(c.x2, j)) class_ = MeshClass::admissible;
    if (class_ == MeshClass::admissible) break;
  }
}

Anchor IndexTMesh::make_anchor(AnchorKind kind, int x1, int x2, int y1, int y2) const {
  Anchor a;
  a.kind = kind;
  a.x1 = x1;
  a.x2 = x2;
  a.y1 = y1;
  a.y2 = y2;

  const double sy = (y1 == y2) ? y1 : (y1 + y2) / 2.0;
  const double tx = (x1 == x2) ? x1 : (x1 + x2) / 2.0;
  a.global_s = h_intersections(sy);
  a.global_t = v_intersections(tx);

  auto window = [](const std::vector<int>& list, int lo, int hi, int order,
                   const char* axis) -> std::vector<int> {
    auto it1 = std::lower_bound(list.begin(), list.end(), lo);
    auto it2 = std::lower_bound(list.begin(), list.end(), hi);
    if (it1 == list.end() || *it1 != lo || it2 == list.end() || *it2 != hi)
      fail(errc::internal, std::string("anchor reference not on its ") + axis + " ray");
    const int pos1 = static_cast<int>(it1 - list.begin());
    const int pos2 = static_cast<int>(it2 - list.begin());
    int before, after;
    if (order % 2 == 0) {
      before = order / 2;
      after = order / 2;
    } else {
      before = (order - 1) / 2;
      after = (order - 1) / 2;
    }
    if (pos1 - before < 0 || pos2 + after >= static_cast<int>(list.size()))
      fail(errc::insufficient_intersections,
           std::string("not enough skeleton intersections along the ") + axis + " ray");
    std::vector<int> out;
    out.reserve(static_cast<size_t>(order) + 1);
    for (int k = pos1 - before; k <= pos1; ++k) out.push_back(list[static_cast<size_t>(k)]);
    for (int k = pos2; k <= pos2 + after; ++k) out.push_back(list[static_cast<size_t>(k)]);
    if (lo == hi) out.erase(out.begin() + before);  // center listed once
    return out;
  };

  // For even order the anchor is centered on one index; for odd order the
  // two extent endpoints enter the window and the fill continues strictly
  // beyond them.
  a.local_s = (p_ % 2 == 0) ? window(a.global_s, x1, x1, p_, "s")
                            : window(a.global_s, x1, x2, p_, "s");
  a.local_t = (q_ % 2 == 0) ? window(a.global_t, y1, y1, q_, "t")
                            : window(a.global_t, y1, y2, q_, "t");
  return a;
}

void IndexTMesh::build_anchors() {
  anchors_.clear();
  const bool p_even = p_ % 2 == 0;
  const bool q_even = q_ % 2 == 0;

  if (p_even && q_even) {
    for (int64_t key : vertex_keys_) {
      const int x = static_cast<int>(key >> 32);
      const int y = static_cast<int>(static_cast<uint32_t>(key & 0xffffffff));
      if (x >= 1 && x <= mu_ && y >= 1 && y <= nu_)
        anchors_.push_back(make_anchor(AnchorKind::vertex, x, x, y, y));
    }
  } else if (!p_even && q_even) {
    for (int y = 1; y <= nu_; ++y) {
      int x = xmin_;
      while (x < xmax_) {
        if (!h_unit(x, y)) {
          ++x;
          continue;
        }
        const int start = x;
        while (x < xmax_ && h_unit(x, y) && !(x > start && is_vertex(x, y))) ++x;
        if (start >= 1 && x <= mu_)
          anchors_.push_back(make_anchor(AnchorKind::h_edge, start, x, y, y));
      }
    }
  } else if (p_even && !q_even) {
    for (int x = 1; x <= mu_; ++x) {
      int y = ymin_;
      while (y < ymax_) {
        if (!v_unit(x, y)) {
          ++y;
          continue;
        }
        const int start = y;
        while (y < ymax_ && v_unit(x, y) && !(y > start && is_vertex(x, y))) ++y;
        if (start >= 1 && y <= nu_)
          anchors_.push_back(make_anchor(AnchorKind::v_edge, x, x, start, y));
      }
    }
  } else {
    for (const Cell& c : cells_)
      if (c.x1 >= 1 && c.x2 <= mu_ && c.y1 >= 1 && c.y2 <= nu_)
        anchors_.push_back(make_anchor(AnchorKind::cell, c.x1, c.x2, c.y1, c.y2));
  }

  std::sort(anchors_.begin(), anchors_.end(), [](const Anchor& a, const Anchor& b) {
    return std::tie(a.local_t.back(), a.local_s.back(), a.y1, a.x1, a.y2, a.x2) <
           std::tie(b.local_t.back(), b.local_s.back(), b.y1, b.x1, b.y2, b.x2);
  });
}

const std::vector<Anchor>& IndexTMesh::anchors() const {
  if (class_ == MeshClass::not_admissible)
    fail(errc::not_admissible, "anchors require an admissible mesh");
  return anchors_;
}

std::vector<TJunction> IndexTMesh::t_junctions() const {
  std::vector<TJunction> out;
  for (int64_t key : vertex_keys_) {
    const int x = static_cast<int>(key >> 32);
    const int y = static_cast<int>(static_cast<uint32_t>(key & 0xffffffff));
    if (valence(x, y) != 3) continue;
    if (x == xmin_ || x == xmax_ || y == ymin_ || y == ymax_) continue;
    TJunction t;
    t.x = x;
    t.y = y;
    if (!h_unit(x - 1, y))
      t.missing = JunctionDir::left;
    else if (!h_unit(x, y))
      t.missing = JunctionDir::right;
    else if (!v_unit(x, y))
      t.missing = JunctionDir::up;
    else
      t.missing = JunctionDir::down;
    out.push_back(t);
  }
  return out;
}

std::vector<Extension> IndexTMesh::extensions() const {
  if (class_ == MeshClass::not_admissible)
    fail(errc::not_admissible, "extensions require an admissible mesh");
  std::vector<Extension> out;
  for (const TJunction& t : t_junctions()) {
    const bool horizontal = t.missing == JunctionDir::left || t.missing == JunctionDir::right;
    const int order = horizontal ? p_ : q_;
    const std::vector<int> list =
        horizontal ? h_intersections(t.y) : v_intersections(t.x);
    const int center = horizontal ? t.x : t.y;
    auto it = std::lower_bound(list.begin(), list.end(), center);
    if (it == list.end() || *it != center)
      fail(errc::internal, "junction not on its own line");
    const int pos = static_cast<int>(it - list.begin());
    const int face_n = order / 2;        // entries on the missing side
    const int edge_n = (order + 1) / 2 - 1;  // entries over the existing edge
    const bool missing_fwd = t.missing == JunctionDir::right || t.missing == JunctionDir::up;
    const int fwd = missing_fwd ? face_n : edge_n;
    const int bwd = missing_fwd ? edge_n : face_n;
    if (pos - bwd < 0 || pos + fwd >= static_cast<int>(list.size()))
      fail(errc::insufficient_intersections, "extension runs out of skeleton intersections");
    Extension e;
    e.owner = t;
    e.horizontal = horizontal;
    e.line = horizontal ? t.y : t.x;
    if (missing_fwd) {
      e.face_lo = center;
      e.face_hi = list[static_cast<size_t>(pos + face_n)];
      e.edge_lo = list[static_cast<size_t>(pos - edge_n)];
      e.edge_hi = center;
    } else {
      e.face_lo = list[static_cast<size_t>(pos - face_n)];
      e.face_hi = center;
      e.edge_lo = center;
      e.edge_hi = list[static_cast<size_t>(pos + edge_n)];
    }
    out.push_back(e);
  }
  return out;
}

IndexTMesh IndexTMesh::underlying_tp() const {
  std::vector<Cell> cells;
  cells.reserve(static_cast<size_t>(xmax_ - xmin_) * static_cast<size_t>(ymax_ - ymin_));
  for (int x = xmin_; x < xmax_; ++x)
    for (int y = ymin_; y < ymax_; ++y) cells.push_back({x, x + 1, y, y + 1});
  return build(p_, q_, mu_, nu_, std::move(cells));
}

IndexTMesh mesh_from_segments(int p, int q, int mu, int nu,
                              const std::vector<LineSegment>& vertical,
                              const std::vector<LineSegment>& horizontal) {
  if (p < 2 || q < 2) fail(errc::invalid_argument, "orders p, q must be at least 2");
  if (mu < 1 || nu < 1) fail(errc::invalid_argument, "active-region extents must be positive");
  const int xmin = -(p / 2) + 1, xmax = mu + p / 2;
  const int ymin = -(q / 2) + 1, ymax = nu + q / 2;
  const int w = xmax - xmin, h = ymax - ymin;

  // Material per unit segment; frame lines first, then caller segments.
  std::vector<uint8_t> vmat(static_cast<size_t>(w + 1) * static_cast<size_t>(h), 0);
  std::vector<uint8_t> hmat(static_cast<size_t>(w) * static_cast<size_t>(h + 1), 0);
  auto vset = [&](int x, int ylo) {
    vmat[static_cast<size_t>(x - xmin) * static_cast<size_t>(h) +
         static_cast<size_t>(ylo - ymin)] = 1;
  };
  auto hset = [&](int xlo, int y) {
    hmat[static_cast<size_t>(xlo - xmin) * static_cast<size_t>(h + 1) +
         static_cast<size_t>(y - ymin)] = 1;
  };
  for (int l = xmin; l <= 1; ++l)
    for (int ylo = ymin; ylo < ymax; ++ylo) vset(l, ylo);
  for (int l = mu; l <= xmax; ++l)
    for (int ylo = ymin; ylo < ymax; ++ylo) vset(l, ylo);
  for (int l = ymin; l <= 1; ++l)
    for (int xlo = xmin; xlo < xmax; ++xlo) hset(xlo, l);
  for (int l = nu; l <= ymax; ++l)
    for (int xlo = xmin; xlo < xmax; ++xlo) hset(xlo, l);
  for (const LineSegment& seg : vertical) {
    if (seg.at < xmin || seg.at > xmax || seg.lo < ymin || seg.hi > ymax || seg.lo >= seg.hi)
      fail(errc::invalid_argument, "vertical segment outside the index domain");
    for (int ylo = seg.lo; ylo < seg.hi; ++ylo) vset(seg.at, ylo);
  }
  for (const LineSegment& seg : horizontal) {
    if (seg.at < ymin || seg.at > ymax || seg.lo < xmin || seg.hi > xmax || seg.lo >= seg.hi)
      fail(errc::invalid_argument, "horizontal segment outside the index domain");
    for (int xlo = seg.lo; xlo < seg.hi; ++xlo) hset(xlo, seg.at);
  }

  auto vat = [&](int x, int ylo) {
    return vmat[static_cast<size_t>(x - xmin) * static_cast<size_t>(h) +
                static_cast<size_t>(ylo - ymin)] != 0;
  };
  auto hat = [&](int xlo, int y) {
    return hmat[static_cast<size_t>(xlo - xmin) * static_cast<size_t>(h + 1) +
                static_cast<size_t>(y - ymin)] != 0;
  };

  // Flood-fill unit squares into regions; every region must come out as a
  // filled rectangle to qualify as a cell.
  std::vector<int> region(static_cast<size_t>(w) * static_cast<size_t>(h), -1);
  auto ridx = [&](int ux, int uy) {
    return static_cast<size_t>(ux - xmin) + static_cast<size_t>(uy - ymin) * static_cast<size_t>(w);
  };
  std::vector<Cell> cells;
  std::vector<std::pair<int, int>> stack;
  for (int uy0 = ymin; uy0 < ymax; ++uy0)
    for (int ux0 = xmin; ux0 < xmax; ++ux0) {
      if (region[ridx(ux0, uy0)] != -1) continue;
      const int id = static_cast<int>(cells.size());
      int lox = ux0, hix = ux0, loy = uy0, hiy = uy0;
      int64_t count = 0;
      stack.push_back({ux0, uy0});
      region[ridx(ux0, uy0)] = id;
      while (!stack.empty()) {
        auto [ux, uy] = stack.back();
        stack.pop_back();
        ++count;
        lox = std::min(lox, ux);
        hix = std::max(hix, ux);
        loy = std::min(loy, uy);
        hiy = std::max(hiy, uy);
        auto push = [&](int nx, int ny) {
          if (region[ridx(nx, ny)] == -1) {
            region[ridx(nx, ny)] = id;
            stack.push_back({nx, ny});
          }
        };
        if (ux + 1 < xmax && !vat(ux + 1, uy)) push(ux + 1, uy);
        if (ux > xmin && !vat(ux, uy)) push(ux - 1, uy);
        if (uy + 1 < ymax && !hat(ux, uy + 1)) push(ux, uy + 1);
        if (uy > ymin && !hat(ux, uy)) push(ux, uy - 1);
      }
      if (count != static_cast<int64_t>(hix - lox + 1) * static_cast<int64_t>(hiy - loy + 1))
        fail(errc::malformed_partition, "segments do not cut the domain into rectangles");
      cells.push_back({lox, hix + 1, loy, hiy + 1});
    }

  IndexTMesh mesh = IndexTMesh::build(p, q, mu, nu, std::move(cells));
  // A region is a filled bounding box, but a dangling segment tip inside it
  // would vanish silently; reject inputs whose material the rebuilt
  // skeleton does not carry.
  for (int x = xmin; x <= xmax; ++x)
    for (int ylo = ymin; ylo < ymax; ++ylo)
      if (vat(x, ylo) && !mesh.v_unit(x, ylo))
        fail(errc::malformed_partition, "segment end dangles inside a cell");
  for (int xlo = xmin; xlo < xmax; ++xlo)
    for (int y = ymin; y <= ymax; ++y)
      if (hat(xlo, y) && !mesh.h_unit(xlo, y))
        fail(errc::malformed_partition, "segment end dangles inside a cell");
  return mesh;
}

IndexTMesh tp_mesh(int p, int q, int mu, int nu) {
  std::vector<LineSegment> v, h;
  const int xmin = -(p / 2) + 1, xmax = mu + p / 2;
  const int ymin = -(q / 2) + 1, ymax = nu + q / 2;
  for (int l = 2; l < mu; ++l) v.push_back({l, ymin, ymax});
  for (int l = 2; l < nu; ++l) h.push_back({l, xmin, xmax});
  return mesh_from_segments(p, q, mu, nu, v, h);
}

KnotLine::KnotLine(std::vector<double> values, int min_index)
    : values_(std::move(values)), min_index_(min_index) {
  if (values_.empty()) fail(errc::invalid_argument, "knot line must be nonempty");
  for (size_t i = 1; i < values_.size(); ++i)
    if (values_[i] < values_[i - 1])
      fail(errc::invalid_argument, "knot line values must be nondecreasing");
}

double KnotLine::value_at(int index) const {
  if (index < min_index() || index > max_index())
    fail(errc::index_out_of_range, "knot index outside the line");
  return values_[static_cast<size_t>(index - min_index_)];
}

std::vector<double> KnotLine::window(const std::vector<int>& indices) const {
  std::vector<double> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(value_at(i));
  return out;
}

KnotLine uniform_knot_line(int min_index, int max_index) {
  if (max_index < min_index) fail(errc::invalid_argument, "empty knot line");
  std::vector<double> values;
  values.reserve(static_cast<size_t>(max_index - min_index) + 1);
  for (int i = min_index; i <= max_index; ++i) values.push_back(i);
  return KnotLine(std::move(values), min_index);
}

std::vector<int> bar_index_vector(const std::vector<int>& local, const KnotLine& line) {
  if (local.empty()) fail(errc::invalid_argument, "empty local index vector");
  if (!std::is_sorted(local.begin(), local.end()))
    fail(errc::invalid_argument, "local index vector must be sorted");

  std::vector<int> bar;
  for (int i = local.front(); i <= local.back(); ++i) bar.push_back(i);

  const std::vector<double> wl = line.window(local);
  std::vector<double> wb = line.window(bar);

  int drop_front = leading_run(wb) - leading_run(wl);
  int drop_back = trailing_run(wb) - trailing_run(wl);
  if (drop_front < 0 || drop_back < 0 ||
      drop_front + drop_back >= static_cast<int>(bar.size()))
    fail(errc::internal, "bar index vector trim out of balance");
  bar.erase(bar.begin(), bar.begin() + drop_front);
  bar.resize(bar.size() - static_cast<size_t>(drop_back));
  return bar;
}

TMeshSpace::TMeshSpace(IndexTMesh mesh, KnotLine s, KnotLine t, std::vector<SectionCore> cs,
                       std::vector<SectionCore> ct)
    : mesh_(std::move(mesh)),
      s_(std::move(s)),
      t_(std::move(t)),
      cores_s_(std::move(cs)),
      cores_t_(std::move(ct)) {}

TMeshSpace TMeshSpace::build(IndexTMesh mesh, std::vector<double> knots_s,
                             std::vector<double> knots_t, std::vector<SectionCore> cores_s,
                             std::vector<SectionCore> cores_t) {
  const size_t ns = static_cast<size_t>(mesh.xmax() - mesh.xmin()) + 1;
  const size_t nt = static_cast<size_t>(mesh.ymax() - mesh.ymin()) + 1;
  if (knots_s.size() != ns || knots_t.size() != nt)
    fail(errc::dimension_mismatch, "knot line length does not match the index domain");
  if (cores_s.size() != ns - 1 || cores_t.size() != nt - 1)
    fail(errc::dimension_mismatch, "need one section core per unit index interval");

  KnotLine s(std::move(knots_s), mesh.xmin());
  KnotLine t(std::move(knots_t), mesh.ymin());
  auto check_line = [](const KnotLine& line, const std::vector<SectionCore>& cores,
                       int order) {
    int run = 1;
    for (int i = line.min_index() + 1; i <= line.max_index(); ++i) {
      run = line.value_at(i) == line.value_at(i - 1) ? run + 1 : 1;
      if (run > order)
        fail(errc::multiplicity_too_high, "knot value repeated beyond the order");
    }
    for (int i = line.min_index(); i < line.max_index(); ++i) {
      const double a = line.value_at(i);
      const double b = line.value_at(i + 1);
      if (b > a) check_core_on_span(cores[static_cast<size_t>(i - line.min_index())], a, b);
    }
  };
  check_line(s, cores_s, mesh.p());
  check_line(t, cores_t, mesh.q());
  return TMeshSpace(std::move(mesh), std::move(s), std::move(t), std::move(cores_s),
                    std::move(cores_t));
}

const SectionCore& TMeshSpace::core_s(int interval_start) const {
  if (interval_start < mesh_.xmin() || interval_start >= mesh_.xmax())
    fail(errc::index_out_of_range, "interval start outside the s knot line");
  return cores_s_[static_cast<size_t>(interval_start - mesh_.xmin())];
}

const SectionCore& TMeshSpace::core_t(int interval_start) const {
  if (interval_start < mesh_.ymin() || interval_start >= mesh_.ymax())
    fail(errc::index_out_of_range, "interval start outside the t knot line");
  return cores_t_[static_cast<size_t>(interval_start - mesh_.ymin())];
}

GBBasis TMeshSpace::local_basis(const std::vector<int>& local, const KnotLine& line,
                                const std::vector<SectionCore>& cores, int order) const {
  std::vector<double> knots = line.window(local);
  std::vector<SectionCore> span_cores;
  span_cores.reserve(local.size() - 1);
  for (size_t j = 0; j + 1 < local.size(); ++j)
    span_cores.push_back(cores[static_cast<size_t>(local[j] - line.min_index())]);
  return GBBasis::build(KnotVector(std::move(knots), order), std::move(span_cores));
}

GBBasis TMeshSpace::local_basis_s(const Anchor& a) const {
  return local_basis(a.local_s, s_, cores_s_, mesh_.p());
}

GBBasis TMeshSpace::local_basis_t(const Anchor& a) const {
  return local_basis(a.local_t, t_, cores_t_, mesh_.q());
}

}  // namespace gts
