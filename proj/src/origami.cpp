#include "ergocount/origami.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

#include "ergocount/parallel.hpp"
#include "ergocount/random.hpp"

namespace ergo {

namespace {

std::vector<int> invert(const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = static_cast<int>(i);
  return inv;
}

}  // namespace

Origami::Origami(int squares, std::vector<int> h, std::vector<int> v)
    : n_(squares), h_(std::move(h)), v_(std::move(v)) {
  if (n_ < 1) fail(ErrorCode::InvalidArgument, "need at least one square");
  auto check_permutation = [&](const std::vector<int>& p, const char* name) {
    if (static_cast<int>(p.size()) != n_)
      fail(ErrorCode::InvalidArgument,
           std::string(name) + " must list an image for every square");
    std::vector<bool> seen(n_, false);
    for (int image : p) {
      if (image < 0 || image >= n_ || seen[image])
        fail(ErrorCode::InvalidArgument,
             std::string(name) + " is not a permutation");
      seen[image] = true;
    }
  };
  check_permutation(h_, "right-neighbor map");
  check_permutation(v_, "up-neighbor map");
  h_inv_ = invert(h_);
  v_inv_ = invert(v_);

  // Connectivity: the orbit of the group generated by h and v.
  std::vector<bool> reached(n_, false);
  std::vector<int> stack{0};
  reached[0] = true;
  int reached_count = 1;
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int t : {h_[s], v_[s], h_inv_[s], v_inv_[s]}) {
      if (!reached[t]) {
        reached[t] = true;
        ++reached_count;
        stack.push_back(t);
      }
    }
  }
  if (reached_count != n_)
    fail(ErrorCode::InvalidArgument, "surface is disconnected");

  // Vertex classes: one counterclockwise turn around a vertex carries its
  // bottom-left representative s to v(h(v^-1(h^-1(s)))); the cycle length
  // is the cone-angle multiple.
  class_of_.assign(n_, -1);
  for (int s = 0; s < n_; ++s) {
    if (class_of_[s] >= 0) continue;
    VertexClass cls;
    int cur = s;
    do {
      class_of_[cur] = static_cast<int>(classes_.size());
      cls.squares.push_back(cur);
      cur = v_[h_[v_inv_[h_inv_[cur]]]];
    } while (cur != s);
    cls.angle_multiple = static_cast<int>(cls.squares.size());
    classes_.push_back(std::move(cls));
  }
  // A class is a zero iff the angle exceeds 2 pi; the one-square torus
  // instead carries its single vertex as a marked zero.
  const bool torus_marking = classes_.size() == 1;
  for (auto& cls : classes_)
    cls.is_zero = cls.angle_multiple > 1 || torus_marking;
}

Origami Origami::parse(std::istream& in, const std::string& source_name) {
  std::string line;
  int line_number = 0;
  auto next_content_line = [&](std::vector<std::string>& tokens) -> bool {
    while (std::getline(in, line)) {
      ++line_number;
      if (!line.empty() && line[0] == '#') continue;
      std::istringstream tok(line);
      tokens.clear();
      std::string t;
      while (tok >> t) tokens.push_back(t);
      if (!tokens.empty()) return true;
    }
    return false;
  };
  auto parse_error = [&](const std::string& what) -> std::string {
    std::ostringstream msg;
    msg << source_name << ":" << line_number << ": " << what;
    return msg.str();
  };

  std::vector<std::string> tokens;
  if (!next_content_line(tokens))
    fail(ErrorCode::Parse, source_name + ": missing square count");
  if (tokens.size() != 1)
    fail(ErrorCode::Parse, parse_error("expected a single square count"));
  int n = 0;
  try {
    n = std::stoi(tokens[0]);
  } catch (const std::exception&) {
    fail(ErrorCode::Parse, parse_error("square count is not an integer"));
  }
  if (n < 1) fail(ErrorCode::Parse, parse_error("square count must be >= 1"));

  auto read_permutation = [&](const char* name) -> std::vector<int> {
    if (!next_content_line(tokens))
      fail(ErrorCode::Parse,
           source_name + ": missing " + name + " permutation line");
    if (static_cast<int>(tokens.size()) != n)
      fail(ErrorCode::Parse,
           parse_error(std::string("expected ") + std::to_string(n) +
                       " images for the " + name + " permutation"));
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) {
      int image = 0;
      try {
        image = std::stoi(tokens[i]);
      } catch (const std::exception&) {
        fail(ErrorCode::Parse, parse_error("permutation entry is not an integer"));
      }
      if (image < 1 || image > n)
        fail(ErrorCode::Parse,
             parse_error("permutation entry out of range 1.." +
                         std::to_string(n)));
      perm[i] = image - 1;
    }
    return perm;
  };

  std::vector<int> h = read_permutation("right-neighbor");
  const int h_line = line_number;
  std::vector<int> v = read_permutation("up-neighbor");

  try {
    return Origami(n, std::move(h), std::move(v));
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << source_name << ":" << h_line << "-" << line_number << ": "
        << e.what();
    fail(ErrorCode::Parse, msg.str());
  }
}

Origami Origami::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open origami file: " + path);
  return parse(in, path);
}

std::vector<Origami::VertexClass> Origami::cone_points() const {
  std::vector<VertexClass> zeros;
  for (const auto& cls : classes_)
    if (cls.is_zero) zeros.push_back(cls);
  return zeros;
}

int Origami::genus() const {
  int excess = 0;
  for (const auto& cls : classes_) excess += cls.angle_multiple - 1;
  if (excess % 2 != 0)
    fail(ErrorCode::Internal, "odd total angle excess on a closed surface");
  return 1 + excess / 2;
}

int Origami::vertex_class_at(int square, Corner corner) const {
  switch (corner) {
    case Corner::SW: return class_of_[square];
    case Corner::SE: return class_of_[h_[square]];
    case Corner::NW: return class_of_[v_[square]];
    case Corner::NE: return class_of_[v_[h_[square]]];
  }
  fail(ErrorCode::Internal, "bad corner");
}

std::optional<int64_t> Origami::trace_separatrix(int square, Corner corner,
                                                 int64_t p, int64_t q,
                                                 int64_t max_periods) const {
  if (square < 0 || square >= n_)
    fail(ErrorCode::InvalidArgument, "square index out of range");
  if (q < 0 || (p == 0 && q == 0))
    fail(ErrorCode::InvalidArgument,
         "direction must be nonzero with q >= 0");
  if (std::gcd(std::abs(p), q) != 1)
    fail(ErrorCode::InvalidArgument, "direction must be coprime");
  if (max_periods < 1)
    fail(ErrorCode::InvalidArgument, "max_periods must be >= 1");
  if (!class_is_zero(vertex_class_at(square, corner)))
    fail(ErrorCode::InvalidArgument,
         "start corner is not a zero of the surface");

  // Germ geometry: the ray must leave the square through the given
  // corner.  Only the two bottom corners carry upward germs.
  if (corner == Corner::NW || corner == Corner::NE)
    fail(ErrorCode::InvalidArgument,
         "no upward germ at a top corner; use the square above");
  if (corner == Corner::SW && p < 0)
    fail(ErrorCode::InvalidArgument,
         "direction does not leave the square through the SW corner");
  if (corner == Corner::SE && p > 0)
    fail(ErrorCode::InvalidArgument,
         "direction does not leave the square through the SE corner");

  // Edge germs reduce to walks along grid lines.
  if (p == 0) {
    // Up the left edge of the start square (an SE germ rides the right
    // edge, which is the left edge of the square across it).
    int cur = corner == Corner::SW ? square : h_[square];
    for (int64_t k = 1; k <= max_periods; ++k) {
      if (class_is_zero(vertex_class_at(cur, Corner::NW))) return k;
      cur = v_[cur];
    }
    return std::nullopt;
  }
  if (q == 0) {
    int cur = square;
    if (p > 0) {  // rightward along the bottom edge
      for (int64_t k = 1; k <= max_periods; ++k) {
        if (class_is_zero(vertex_class_at(cur, Corner::SE))) return k;
        cur = h_[cur];
      }
    } else {  // leftward along the bottom edge
      for (int64_t k = 1; k <= max_periods; ++k) {
        cur = h_inv_[cur];
        if (class_is_zero(vertex_class_at(cur, Corner::SW))) return k;
      }
    }
    return std::nullopt;
  }

  // Interior walk.  Crossing events of the ray t (p, q): vertical grid
  // lines at t = i/|p|, horizontal ones at t = j/q, compared exactly via
  // i q <=> j |p|.  Both coincide exactly at integer t (coprimality),
  // where the ray meets a grid vertex diagonally.
  const int64_t ap = std::abs(p);
  int64_t i = 1, j = 1;
  int cur = square;
  for (;;) {
    const int64_t lhs = i * q;
    const int64_t rhs = j * ap;
    if (lhs == rhs) {
      const int64_t period = i / ap;
      const int cls = vertex_class_at(
          cur, p > 0 ? Corner::NE : Corner::NW);
      if (class_is_zero(cls)) return period;
      if (period >= max_periods) return std::nullopt;
      // Pass straight through the regular vertex into the diagonal
      // square.
      cur = p > 0 ? v_[h_[cur]] : h_inv_[v_[cur]];
      ++i;
      ++j;
    } else if (lhs < rhs) {
      cur = p > 0 ? h_[cur] : h_inv_[cur];
      ++i;
    } else {
      cur = v_[cur];
      ++j;
    }
  }
}

std::vector<int64_t> Origami::direction_multiplicities(int64_t p,
                                                       int64_t q) const {
  std::vector<int64_t> mult(n_, 0);
  for (const auto& cls : classes_) {
    if (!cls.is_zero) continue;
    for (int sheet : cls.squares) {
      std::optional<int64_t> hit;
      if (q == 0)
        hit = trace_separatrix(sheet, Corner::SW, 1, 0, n_);
      else if (p >= 0)
        hit = trace_separatrix(sheet, Corner::SW, p, q, n_);
      else
        hit = trace_separatrix(h_inv_[sheet], Corner::SE, p, q, n_);
      if (!hit)
        fail(ErrorCode::Internal,
             "separatrix did not terminate within the square count");
      mult[*hit - 1] += 1;
    }
  }
  return mult;
}

Origami::SaddleCount Origami::count_in_region(const ThinningRegion& region,
                                              bool distinct_holonomies) const {
  if (region.m() != 1 || region.n() != 1)
    fail(ErrorCode::InvalidArgument,
         "holonomy counting needs a planar (d = 2) region");

  SaddleCount result;
  bool any_zero = false;
  for (const auto& cls : classes_) any_zero |= cls.is_zero;
  if (!any_zero) return result;

  std::map<std::pair<int64_t, int64_t>, std::vector<int64_t>> memo;
  auto visit = [&](int64_t a, int64_t c) {
    if (!region.contains(SplitVector(Eigen::Vector2d(
            static_cast<double>(a), static_cast<double>(c)), 1, 1)))
      return;
    const int64_t g = std::gcd(std::abs(a), std::abs(c));
    if (g > n_) return;  // first hits never exceed the square count
    int64_t dp = a / g, dq = c / g;
    if (dq < 0 || (dq == 0 && dp < 0)) {
      // Reversal is a bijection on saddle connections, so a holonomy and
      // its negative have the same multiplicity.
      dp = -dp;
      dq = -dq;
    }
    auto [it, fresh] = memo.try_emplace({dp, dq});
    if (fresh) it->second = direction_multiplicities(dp, dq);
    const int64_t multiplicity = it->second[g - 1];
    if (multiplicity == 0) return;
    result.count += distinct_holonomies ? 1 : multiplicity;
    result.spectrum.push_back(SpectrumEntry{a, c, multiplicity});
  };

  const double theta = region.theta();
  if (theta == 0.0) {
    const int64_t c_hi = static_cast<int64_t>(std::ceil(region.y_hi())) - 1;
    for (int64_t c = static_cast<int64_t>(std::floor(region.y_lo()));
         c <= c_hi; ++c) {
      if (c < 1) continue;
      const int64_t a_max =
          static_cast<int64_t>(region.b() / static_cast<double>(c)) + 1;
      for (int64_t a = -a_max; a <= a_max; ++a) visit(a, c);
    }
    return result;
  }

  // Rotated region: scan one ambient axis and solve for the short
  // transverse range |x'| <= x_bound on each grid line, so the work is
  // linear in y_hi instead of quadratic.
  const double cs = std::cos(theta);
  const double sn = std::sin(theta);
  const double bx = region.x_bound();
  const double rows[2] = {region.y_lo(), region.y_hi()};

  if (std::abs(cs) >= std::abs(sn)) {
    double y_min = 1e300, y_max = -1e300;
    for (double xp : {-bx, bx})
      for (double yp : rows) {
        const double y = xp * sn + yp * cs;
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    for (int64_t c = static_cast<int64_t>(std::floor(y_min));
         c <= static_cast<int64_t>(std::ceil(y_max)); ++c) {
      // On the grid line y = c the strip |x'| <= bx occupies
      // x = x'/cos - c tan, a window of width 2 bx / |cos|.
      const double lo = std::min(-bx / cs, bx / cs) - c * sn / cs;
      const double hi = std::max(-bx / cs, bx / cs) - c * sn / cs;
      for (int64_t a = static_cast<int64_t>(std::floor(lo)) - 1;
           a <= static_cast<int64_t>(std::ceil(hi)) + 1; ++a)
        visit(a, c);
    }
  } else {
    double x_min = 1e300, x_max = -1e300;
    for (double xp : {-bx, bx})
      for (double yp : rows) {
        const double x = xp * cs - yp * sn;
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
      }
    for (int64_t a = static_cast<int64_t>(std::floor(x_min));
         a <= static_cast<int64_t>(std::ceil(x_max)); ++a) {
      // On the grid line x = a the strip occupies y = x'/sin - a cot.
      const double lo = std::min(bx / sn, -bx / sn) - a * cs / sn;
      const double hi = std::max(bx / sn, -bx / sn) - a * cs / sn;
      for (int64_t c = static_cast<int64_t>(std::floor(lo)) - 1;
           c <= static_cast<int64_t>(std::ceil(hi)) + 1; ++c)
        visit(a, c);
    }
  }
  return result;
}

Origami::SaddleCount Origami::count_saddle_connections(
    double b, double T, double theta, bool distinct_holonomies) const {
  if (!(T >= 1.0) || !std::isfinite(T))
    fail(ErrorCode::InvalidArgument, "scale T must be >= 1");
  return count_in_region(ThinningRegion(b, 1, 1, 1.0, T, theta),
                         distinct_holonomies);
}

MCEstimate Origami::estimate_sv_constant(double b, int log2T,
                                         int theta_samples,
                                         uint64_t master_seed,
                                         uint64_t stream_offset, int threads,
                                         bool distinct_holonomies) const {
  if (log2T < 6)
    fail(ErrorCode::InvalidArgument, "log2T must be >= 6");
  if (theta_samples < 10)
    fail(ErrorCode::InvalidArgument, "need at least 10 rotation samples");

  const double T = std::ldexp(1.0, log2T);
  const double normalizer = 2.0 * b * std::log(T);

  std::vector<double> values(theta_samples);
  parallel_for(
      theta_samples,
      [&](int64_t i) {
        SeededStream stream(master_seed, stream_offset + i);
        const double theta = 2.0 * M_PI * stream.uniform();
        const auto counted =
            count_saddle_connections(b, T, theta, distinct_holonomies);
        values[i] = static_cast<double>(counted.count) / normalizer;
      },
      threads);

  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < theta_samples; ++i) {
    const double delta = values[i] - mean;
    mean += delta / (i + 1);
    m2 += delta * (values[i] - mean);
  }
  const double variance = m2 / (theta_samples - 1);
  return MCEstimate{mean, std::sqrt(variance / theta_samples),
                    theta_samples};
}

}  // namespace ergo
