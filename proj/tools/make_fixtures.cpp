// Writes the fixture corpus: voxel spaces and point sets for the pushout.
//   hcf_fixtures [dir]
#include <filesystem>
#include <iostream>

#include "hcf/fixtures.hpp"
#include "hcf/io.hpp"
#include "hcf/json_util.hpp"
#include "hcf/report.hpp"

using namespace hcf;
using nlohmann::json;

namespace {

std::string out_dir = "fixtures";

void save(const std::string& name, const Space& s, std::vector<std::string> tags, double m = 2) {
  json j = space_to_json(s);
  j["name"] = name;
  j["tags"] = tags;
  j["m"] = m;
  write_text_file(out_dir + "/" + name + ".json", dump(j));
}

Space lift(const Space& s, int extra) {
  std::vector<IntPoint> cells;
  for (auto c : s.cells()) {
    for (int i = 0; i < extra; ++i) c.push_back(0);
    cells.push_back(c);
  }
  return Space::voxel(s.dim() + extra, s.delta(), cells);
}

Space from_rows(const std::vector<std::string>& rows, const Rational& delta) {
  std::vector<IntPoint> cells;
  for (std::size_t y = 0; y < rows.size(); ++y)
    for (std::size_t x = 0; x < rows[y].size(); ++x)
      if (rows[y][x] == '#') cells.push_back({static_cast<std::int64_t>(x), static_cast<std::int64_t>(rows.size() - 1 - y)});
  return Space::voxel(2, delta, cells);
}

// Points on a curve or a small cloud inside one unit cube, thickened.
void save_points(const std::string& name, int n, double m, std::uint64_t seed, bool curve) {
  Rng rng(seed);
  json pts = json::array();
  const std::int64_t den = 256;
  int count = 12 + static_cast<int>(rng.uniform(0, 24));
  std::vector<std::int64_t> base(n), step(n);
  for (int d = 0; d < n; ++d) {
    base[d] = rng.uniform(20, 120);
    step[d] = rng.uniform(-3, 3);
  }
  for (int i = 0; i < count; ++i) {
    json c = json::array();
    for (int d = 0; d < n; ++d) {
      std::int64_t x = curve ? base[d] + step[d] * i + rng.uniform(-1, 1) : rng.uniform(8, 248);
      x = std::clamp<std::int64_t>(x, 1, den - 1);
      c.push_back(to_string(frac(x, den)));
    }
    pts.push_back({{"center", c}, {"radius", "1/4096"}});
  }
  json j = {{"variant", "points"}, {"name", name}, {"tags", {"pushout"}}, {"n", n}, {"m", m},
            {"delta", "1/4096"},   {"points", pts}};
  write_text_file(out_dir + "/" + name + ".json", dump(j));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) out_dir = argv[1];
  std::filesystem::create_directories(out_dir);
  const Rational e = frac(1, 8);

  save("cube2_8", unit_cube(2, 8), {"solid"});
  save("square16", full_box({16, 16}, e), {"solid"});
  save("ring16", square_ring(16, e), {"ring"});
  save("ring32", square_ring(32, e), {"ring"});
  save("ring64", square_ring(64, e), {"ring"});
  save("strip2x64", strip(2, 64, e), {"thin"});
  save("dumbbell", dumbbell(4, 8, e), {"thin"});
  save("bulb_strip", bulb_strip(1, 48, 4, 3, e), {"thin", "bulb-strip"});
  save("l_hexomino", l_hexomino(e), {"small"});
  save("plus", from_rows({"..##..", "..##..", "######", "######", "..##..", "..##.."}, e), {"adversarial"});
  save("staircase", from_rows({"#.....", "##....", ".##...", "..##..", "...##.", "....##"}, e), {"adversarial"});
  save("checker", from_rows({"#.#.#.", ".#.#.#", "#.#.#.", ".#.#.#", "#.#.#.", ".#.#.#"}, e), {"adversarial"});
  save("comb", from_rows({"#.#.#.#.#", "#.#.#.#.#", "#.#.#.#.#", "#########"}, e), {"adversarial"});
  save("spiral", from_rows({"#########", "#.......#", "#.#####.#", "#.#...#.#", "#.#.#.#.#", "#.#.###.#",
                            "#.#.....#", "#.#######"},
                           e),
       {"adversarial", "thin"});
  for (std::uint64_t k = 0; k < 3; ++k) save("blob2d_" + std::to_string(k), random_blob(2, 20, 90, 40 + k, e), {"random"});
  for (std::uint64_t k = 0; k < 2; ++k)
    save("subset2d_" + std::to_string(k), random_subset(2, 12, 0.35, 70 + k, e), {"random", "adversarial"});
  save("cube3_4", unit_cube(3, 4), {"solid"});
  save("shell3_6", cube_shell(3, 6), {"shell"});
  save("flat_ring3", lift(square_ring(24, e), 1), {"ring"});
  save("blob3d_0", random_blob(3, 8, 60, 90, e), {"random"});
  save("blob3d_1", random_blob(3, 8, 60, 91, e), {"random"});
  save("cube4_3", unit_cube(4, 3), {"solid"});
  save("blob4d", random_blob(4, 5, 40, 95, e), {"random"});

  save_points("points2d_cloud", 2, 2, 7, false);
  save_points("points3d_curve", 3, 2, 8, true);
  save_points("points3d_cloud", 3, 2.5, 9, false);
  save_points("points4d_curve", 4, 3, 10, true);
  std::cout << "wrote fixtures to " << out_dir << "\n";
  return 0;
}
