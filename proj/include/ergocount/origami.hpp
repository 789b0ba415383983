#ifndef ERGOCOUNT_ORIGAMI_HPP
#define ERGOCOUNT_ORIGAMI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ergocount/region.hpp"
#include "ergocount/siegel.hpp"

namespace ergo {

// Square-tiled translation surface: N unit squares glued by a
// right-neighbor permutation h and an up-neighbor permutation v (both
// 0-indexed internally; the text format is 1-indexed).  The group
// generated by h and v must act transitively (connected surface).
//
// Vertex classes of the glued surface are the cycles of the commutator
// acting on bottom-left corners; a class of cycle length c is a cone
// point of angle 2 pi c.  A class is a zero of the surface iff c > 1,
// except that the single vertex of the one-square torus is treated as a
// marked zero, so its "saddle connections" are the primitive vectors.
class Origami {
public:
  enum class Corner { SW, SE, NW, NE };

  struct VertexClass {
    std::vector<int> squares;  // bottom-left representatives, one per sheet
    int angle_multiple = 0;    // cone angle is 2 pi * angle_multiple
    bool is_zero = false;
  };

  // Holonomy (a, c) realized by `multiplicity` distinct saddle
  // connections.
  struct SpectrumEntry {
    int64_t a = 0;
    int64_t c = 0;
    int64_t multiplicity = 0;
  };

  struct SaddleCount {
    int64_t count = 0;
    std::vector<SpectrumEntry> spectrum;
  };

  Origami(int squares, std::vector<int> h, std::vector<int> v);

  // Text format: line 1 the square count, line 2 the images of 1..N under
  // h, line 3 the same for v; '#' lines are ignored.  Malformed input
  // fails with the offending line number.
  static Origami parse(std::istream& in, const std::string& source_name);
  static Origami load_file(const std::string& path);

  int squares() const { return n_; }
  const std::vector<int>& h() const { return h_; }
  const std::vector<int>& v() const { return v_; }
  const std::vector<VertexClass>& vertex_classes() const { return classes_; }

  // Vertex classes that are zeros of the surface.
  std::vector<VertexClass> cone_points() const;

  // Genus from the angle excess: sum of (c - 1) over classes = 2g - 2.
  int genus() const;

  // Follows the straight line of direction (p, q), gcd(|p|, q) = 1 and
  // q >= 0, from the given corner germ, passing straight through regular
  // vertices, in exact integer arithmetic.  Returns the period multiple k
  // of the first zero hit (holonomy k * (p, q)), or nullopt if none
  // within max_periods.  The germ must sit at a zero and the direction
  // must leave the square through that corner.
  std::optional<int64_t> trace_separatrix(int square, Corner corner,
                                          int64_t p, int64_t q,
                                          int64_t max_periods) const;

  // Saddle connections with holonomy inside the given region (d = 2; the
  // region's rotation stands in for rotating the surface).  Holonomies
  // are grouped by primitive direction and each germ is traced once per
  // direction.  With distinct_holonomies, a holonomy counts once no
  // matter how many connections realize it.
  SaddleCount count_in_region(const ThinningRegion& region,
                              bool distinct_holonomies = false) const;

  // Count over { |x' y'| <= b, 1 <= y' < T } rotated by theta.
  SaddleCount count_saddle_connections(double b, double T, double theta,
                                       bool distinct_holonomies = false) const;

  // Mean of count / (2 b log T) over uniform random rotations; estimates
  // the growth constant of the counting function.
  MCEstimate estimate_sv_constant(double b, int log2T, int theta_samples,
                                  uint64_t master_seed,
                                  uint64_t stream_offset = 0, int threads = 0,
                                  bool distinct_holonomies = false) const;

private:
  int vertex_class_at(int square, Corner corner) const;
  bool class_is_zero(int class_id) const { return classes_[class_id].is_zero; }

  // First-hit periods for all germs in one primitive direction with
  // q >= 1, or q = 0 and p = 1.  Entry k of the result is the number of
  // saddle connections with holonomy (k+1) * (p, q).
  std::vector<int64_t> direction_multiplicities(int64_t p, int64_t q) const;

  int n_;
  std::vector<int> h_, v_, h_inv_, v_inv_;
  std::vector<int> class_of_;  // vertex class of each square's SW corner
  std::vector<VertexClass> classes_;
};

}  // namespace ergo

#endif
