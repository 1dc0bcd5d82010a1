// Maximally stable extremal regions over upper level sets of an 8-bit field.
//
// Pixels are flooded from the brightest gray level down. A union-find forest
// tracks the connected components of {q >= L}; every time a component gains
// pixels at level L a new tree node is created for it, so each node stands
// for one distinct pixel set and its `level` is the highest threshold at
// which that set exists.

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "ecgi/highlight.hpp"

namespace ecgi {

namespace {

struct Node {
  int level = 0;
  int area = 0;
  int parent = -1;
  int first_child = -1;
  int next_sibling = -1;
  int first_pixel = -1;
  double variation = 0.0;
};

class ComponentTree {
 public:
  explicit ComponentTree(const Raster<std::uint8_t>& q) : q_(q) { build(); }

  const std::vector<Node>& nodes() const { return nodes_; }

  /// Pixels of the subtree rooted at `id`, as linear indices.
  std::vector<int> collect_pixels(int id) const {
    std::vector<int> out;
    std::vector<int> stack{id};
    while (!stack.empty()) {
      const int n = stack.back();
      stack.pop_back();
      for (int p = nodes_[n].first_pixel; p != -1; p = pixel_next_[p]) out.push_back(p);
      for (int c = nodes_[n].first_child; c != -1; c = nodes_[c].next_sibling) stack.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Area of the component at threshold `level` that contains node `id`.
  int area_at(int id, int level) const {
    int m = id;
    while (nodes_[m].parent != -1 && nodes_[nodes_[m].parent].level >= level) {
      m = nodes_[m].parent;
    }
    return nodes_[m].area;
  }

 private:
  int find(int p) {
    while (uf_parent_[p] != p) {
      uf_parent_[p] = uf_parent_[uf_parent_[p]];
      p = uf_parent_[p];
    }
    return p;
  }

  // A root touched at the current level no longer matches its last node;
  // that node becomes a child of whatever node the root produces next.
  void open(int root) {
    const int n = node_of_root_[root];
    if (n == -1) return;
    nodes_[n].next_sibling = child_head_[root];
    child_head_[root] = n;
    node_of_root_[root] = -1;
  }

  int unite(int a, int b) {
    if (uf_size_[a] < uf_size_[b]) std::swap(a, b);
    uf_parent_[b] = a;
    uf_size_[a] += uf_size_[b];
    // Splice child lists and own-pixel lists of b onto a.
    if (child_head_[b] != -1) {
      int tail = child_head_[b];
      while (nodes_[tail].next_sibling != -1) tail = nodes_[tail].next_sibling;
      nodes_[tail].next_sibling = child_head_[a];
      child_head_[a] = child_head_[b];
    }
    if (pixel_head_[b] != -1) {
      pixel_next_[pixel_tail_[b]] = pixel_head_[a];
      if (pixel_head_[a] == -1) pixel_tail_[a] = pixel_tail_[b];
      pixel_head_[a] = pixel_head_[b];
    }
    return a;
  }

  void build() {
    const int w = q_.width();
    const int h = q_.height();
    const int n = static_cast<int>(q_.size());

    std::array<int, 257> start{};
    for (std::uint8_t v : q_.pixels()) ++start[v + 1];
    std::partial_sum(start.begin(), start.end(), start.begin());
    std::vector<int> order(n);
    {
      auto cursor = start;
      for (int i = 0; i < n; ++i) order[cursor[q_.pixels()[i]]++] = i;
    }

    uf_parent_.assign(n, -1);
    uf_size_.assign(n, 0);
    node_of_root_.assign(n, -1);
    child_head_.assign(n, -1);
    pixel_head_.assign(n, -1);
    pixel_tail_.assign(n, -1);
    pixel_next_.assign(n, -1);
    std::vector<int> seen_at(n, -1);
    std::vector<int> touched;

    for (int level = 255; level >= 0; --level) {
      touched.clear();
      for (int k = start[level]; k < start[level + 1]; ++k) {
        const int p = order[k];
        uf_parent_[p] = p;
        uf_size_[p] = 1;
        pixel_head_[p] = pixel_tail_[p] = p;
        touched.push_back(p);

        const int x = p % w;
        const int y = p / w;
        const std::array<std::pair<int, int>, 4> nbrs{{{x - 1, y}, {x + 1, y}, {x, y - 1}, {x, y + 1}}};
        for (auto [nx, ny] : nbrs) {
          if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
          const int np = ny * w + nx;
          if (uf_parent_[np] == -1) continue;
          const int ra = find(p);
          const int rb = find(np);
          if (ra == rb) continue;
          open(ra);
          open(rb);
          unite(ra, rb);
        }
      }

      for (int p : touched) {
        const int r = find(p);
        if (seen_at[r] == level) continue;
        seen_at[r] = level;
        open(r);
        Node node;
        node.level = level;
        node.area = uf_size_[r];
        node.first_child = child_head_[r];
        node.first_pixel = pixel_head_[r];
        const int id = static_cast<int>(nodes_.size());
        for (int c = node.first_child; c != -1; c = nodes_[c].next_sibling) nodes_[c].parent = id;
        nodes_.push_back(node);
        node_of_root_[r] = id;
        child_head_[r] = -1;
        pixel_head_[r] = pixel_tail_[r] = -1;
      }
    }
  }

  const Raster<std::uint8_t>& q_;
  std::vector<Node> nodes_;
  std::vector<int> uf_parent_;
  std::vector<int> uf_size_;
  std::vector<int> node_of_root_;
  std::vector<int> child_head_;
  std::vector<int> pixel_head_;
  std::vector<int> pixel_tail_;
  std::vector<int> pixel_next_;
};

}  // namespace

Raster<std::uint8_t> quantize_to_u8(const GradientField& field) {
  Raster<std::uint8_t> q(field.width(), field.height());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double v = std::clamp(field.pixels()[i], 0.0, 1.0);
    q.pixels()[i] = static_cast<std::uint8_t>(std::floor(v * 255.0 + 0.5));
  }
  return q;
}

std::vector<PixelRegion> detect_mser_regions(const GradientField& field,
                                             const HighlightParams& params) {
  params.validate();
  std::vector<PixelRegion> regions;
  if (field.empty()) return regions;

  const Raster<std::uint8_t> q = quantize_to_u8(field);
  const ComponentTree tree(q);
  const auto& nodes = tree.nodes();

  std::vector<double> variation(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int id = static_cast<int>(i);
    const int grown = tree.area_at(id, std::max(nodes[i].level - params.mser_delta, 0));
    variation[i] = static_cast<double>(grown - nodes[i].area) / nodes[i].area;
  }

  const int width = field.width();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Node& node = nodes[i];
    if (node.area < params.area_min || node.area > params.area_max) continue;
    if (variation[i] > params.mser_max_variation) continue;
    if (node.parent != -1 && variation[i] > variation[node.parent]) continue;
    bool local_min = true;
    for (int c = node.first_child; c != -1; c = nodes[c].next_sibling) {
      if (variation[i] > variation[c]) {
        local_min = false;
        break;
      }
    }
    if (!local_min) continue;

    const std::vector<int> members = tree.collect_pixels(static_cast<int>(i));
    const bool valid = std::all_of(members.begin(), members.end(), [&](int p) {
      return field.pixels()[p] > params.validity_threshold;
    });
    if (!valid) continue;

    PixelRegion region;
    region.reserve(members.size());
    for (int p : members) region.push_back({p % width, p / width});
    regions.push_back(std::move(region));
  }
  return regions;
}

}  // namespace ecgi
