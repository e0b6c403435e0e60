#pragma once

#include <random>
#include <set>
#include <vector>

#include <toricmdp/fan.hpp>

namespace fixtures {

using toricmdp::Fan;
using toricmdp::IntVector;

inline Fan p1() { return Fan(1, {IntVector{1}, IntVector{-1}}, {{0}, {1}}); }

inline Fan p2() {
  return Fan(2, {IntVector{1, 0}, IntVector{0, 1}, IntVector{-1, -1}}, {{0, 1}, {1, 2}, {2, 0}});
}

inline Fan p4() {
  std::vector<IntVector> rays = {IntVector{1, 0, 0, 0}, IntVector{0, 1, 0, 0},
                                 IntVector{0, 0, 1, 0}, IntVector{0, 0, 0, 1},
                                 IntVector{-1, -1, -1, -1}};
  std::vector<std::vector<int>> cones;
  for (int skip = 0; skip < 5; ++skip) {
    std::vector<int> c;
    for (int i = 0; i < 5; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return Fan(4, rays, cones);
}

inline Fan f1() {
  return Fan(2, {IntVector{1, 0}, IntVector{0, 1}, IntVector{-1, 1}, IntVector{0, -1}},
             {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

/// (P1)^3: the cube fan with rays +-e_i and the eight octant cones.
inline Fan p1cubed() {
  std::vector<IntVector> rays = {IntVector{1, 0, 0},  IntVector{-1, 0, 0}, IntVector{0, 1, 0},
                                 IntVector{0, -1, 0}, IntVector{0, 0, 1},  IntVector{0, 0, -1}};
  std::vector<std::vector<int>> cones;
  for (int sx = 0; sx < 2; ++sx)
    for (int sy = 0; sy < 2; ++sy)
      for (int sz = 0; sz < 2; ++sz) cones.push_back({sx, 2 + sy, 4 + sz});
  return Fan(3, rays, cones);
}

/// Hexagon fan (del Pezzo of degree 6): property (*) holds but the closed
/// Kahler cone has five generators in rank-4 L*, hence is not regular.
inline Fan dp6() {
  return Fan(2,
             {IntVector{1, 0}, IntVector{0, 1}, IntVector{-1, 1}, IntVector{-1, 0},
              IntVector{0, -1}, IntVector{1, -1}},
             {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
}

/// F1 subdivided twice so that the ray (1,1) ends up strictly inside
/// conv(Sigma(1)); property (*) fails by both criteria.
inline Fan star_fail() {
  return Fan(2,
             {IntVector{1, 0}, IntVector{0, 1}, IntVector{-1, -1}, IntVector{1, 1},
              IntVector{2, 1}, IntVector{1, 2}},
             {{0, 4}, {4, 3}, {3, 5}, {5, 1}, {1, 2}, {2, 0}});
}

/// Subdivide one maximal cone at the sum of its rays; preserves regularity
/// and completeness.
inline Fan stellar_subdivide(const Fan& fan, std::size_t cone_index) {
  std::vector<IntVector> rays = fan.rays();
  const std::vector<int>& cone = fan.max_cones()[cone_index];
  IntVector sum(static_cast<std::size_t>(fan.dim()));
  for (int r : cone) sum = sum + rays[static_cast<std::size_t>(r)];
  int new_index = static_cast<int>(rays.size());
  rays.push_back(sum);
  std::vector<std::vector<int>> cones;
  for (std::size_t k = 0; k < fan.max_cones().size(); ++k) {
    if (k != cone_index) {
      cones.push_back(fan.max_cones()[k]);
      continue;
    }
    for (std::size_t drop = 0; drop < cone.size(); ++drop) {
      std::vector<int> c;
      for (std::size_t i = 0; i < cone.size(); ++i)
        if (i != drop) c.push_back(cone[i]);
      c.push_back(new_index);
      cones.push_back(c);
    }
  }
  return Fan(fan.dim(), rays, cones);
}

/// Deterministic catalog of complete regular 2-d fans from repeated stellar
/// subdivisions of the P2 fan; at least `minimum` distinct instances.
inline std::vector<Fan> stellar_catalog(std::size_t minimum = 20) {
  std::vector<Fan> fans;
  std::set<std::vector<IntVector>> seen;
  auto add = [&](const Fan& fan) {
    std::vector<IntVector> key = fan.rays();
    std::sort(key.begin(), key.end());
    if (seen.insert(key).second) fans.push_back(fan);
  };
  add(p2());
  // depth <= 6 keeps rank(L) = p - 2 <= 7, inside the double-description bound
  for (unsigned seed = 0; fans.size() < minimum + 4 && seed < 64; ++seed) {
    std::mt19937 rng(seed);
    Fan fan = p2();
    int depth = 1 + static_cast<int>(seed % 6);
    for (int step = 0; step < depth; ++step) {
      std::uniform_int_distribution<std::size_t> pick(0, fan.max_cones().size() - 1);
      fan = stellar_subdivide(fan, pick(rng));
    }
    add(fan);
  }
  return fans;
}

inline std::string data_path(const std::string& name) {
  return std::string(TORICMDP_DATA_DIR) + "/" + name;
}

}  // namespace fixtures
