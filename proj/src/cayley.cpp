#include "u3/cayley.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <numeric>
#include <unordered_map>

namespace u3 {

std::optional<std::pair<Rat, Rat>> cone2_coefficients(const VecZ& a, const VecZ& b, const VecZ& c) {
  // Solve c = s a + t b via the first nonsingular 2x2 minor, then verify
  // the remaining equation.
  const Int ax[3] = {a.x, a.y, a.z}, bx[3] = {b.x, b.y, b.z}, cx[3] = {c.x, c.y, c.z};
  int r1 = -1, r2 = -1;
  Int det = 0;
  for (int p = 0; p < 3 && r1 < 0; ++p)
    for (int q = p + 1; q < 3; ++q) {
      det = ax[p] * bx[q] - ax[q] * bx[p];
      if (det != 0) {
        r1 = p;
        r2 = q;
        break;
      }
    }
  if (r1 < 0) return std::nullopt;  // a, b proportional
  Rat s(cx[r1] * bx[r2] - cx[r2] * bx[r1], det);
  Rat t(ax[r1] * cx[r2] - ax[r2] * cx[r1], det);
  int r3 = 3 - r1 - r2;
  if (s * Rat(ax[r3]) + t * Rat(bx[r3]) != Rat(cx[r3])) return std::nullopt;
  if (s < 0 || t < 0) return std::nullopt;
  return std::make_pair(std::move(s), std::move(t));
}

std::vector<VecZ> rank2_cone_roots(PlaneIndex& planes, const VecZ& a, const VecZ& b,
                                   const Int& height_bound) {
  if (a == b) throw std::invalid_argument("rank2_cone_roots needs distinct roots");
  std::vector<VecZ> out;
  const RootTable& table = planes.table();
  for (int idx : planes.in_plane(PlaneIndex::plane_key(a, b))) {
    const Root& r = table[idx];
    if (r.height > height_bound) continue;
    if (cone2_coefficients(a, b, r.vec)) out.push_back(r.vec);
  }
  std::sort(out.begin(), out.end());
  return out;
}

LineSystem LineSystem::on_line(const AffLine& L, const RootTable& table) {
  LineSystem sys{L, {}};
  LineParam lp = parametrize(L);
  for (const Root& r : table) {
    if (inner(r.vec, L.normal) != 0) continue;
    sys.ordered.emplace_back(lp.param_of(rescale(r.vec)), r.vec);
  }
  std::sort(sys.ordered.begin(), sys.ordered.end());
  return sys;
}

LineSystem LineSystem::on_face_line(const Face& f, int k) {
  VecZ b1 = boundary_root(f, 1), bm1 = boundary_root(f, -1);
  LineSystem sys{line_through(rescale(b1), rescale(bm1)), {}};
  LineParam lp = parametrize(sys.line);
  for (const WindowEntry& e : boundary_window(f, k))
    sys.ordered.emplace_back(lp.param_of(rescale(e.root)), e.root);
  std::sort(sys.ordered.begin(), sys.ordered.end());
  return sys;
}

namespace {

struct Key3 {
  long long a, b, c;
  bool operator==(const Key3&) const = default;
};

struct Key3Hash {
  std::size_t operator()(const Key3& k) const {
    std::size_t h = std::hash<long long>{}(k.a);
    h = h * 1000003u ^ std::hash<long long>{}(k.b);
    h = h * 1000003u ^ std::hash<long long>{}(k.c);
    return h;
  }
};

}  // namespace

ConePlanes::ConePlanes(const RootTable& table) : table_(&table) { build(); }

ConePlanes::ConePlanes(RootTable&& table) : owned_(std::move(table)), table_(&*owned_) { build(); }

void ConePlanes::build() {
  const RootTable& table = *table_;
  const std::size_t n = table.size();
  // Machine-integer snapshot; heights are bounded, so cross products of
  // coordinate pairs stay far below 2^63.
  std::vector<std::array<long long, 3>> c(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VecZ& v = table[i].vec;
    if (v.x.sign() < 0 || v.x > 1000000 || v.y > 1000000 || v.z > 1000000)
      throw std::invalid_argument("ConePlanes expects a height-bounded table");
    c[i] = {v.x.convert_to<long long>(), v.y.convert_to<long long>(), v.z.convert_to<long long>()};
  }

  std::unordered_map<Key3, int, Key3Hash> ids;
  std::vector<std::vector<int>> members;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      long long kx = c[i][1] * c[j][2] - c[i][2] * c[j][1];
      long long ky = c[i][2] * c[j][0] - c[i][0] * c[j][2];
      long long kz = c[i][0] * c[j][1] - c[i][1] * c[j][0];
      long long g = std::gcd(std::gcd(std::abs(kx), std::abs(ky)), std::abs(kz));
      if (g == 0) throw std::logic_error("proportional roots in table");
      kx /= g;
      ky /= g;
      kz /= g;
      long long lead = kx != 0 ? kx : (ky != 0 ? ky : kz);
      if (lead < 0) {
        kx = -kx;
        ky = -ky;
        kz = -kz;
      }
      auto [it, fresh] = ids.emplace(Key3{kx, ky, kz}, static_cast<int>(members.size()));
      if (fresh) {
        members.push_back({static_cast<int>(i), static_cast<int>(j)});
      } else {
        auto& m = members[it->second];
        m.push_back(static_cast<int>(i));
        m.push_back(static_cast<int>(j));
      }
    }

  incident_.resize(n);
  planes_.reserve(members.size());
  for (auto& m : members) {
    // Deduplicate the i-entries accumulated from multiple pairs.
    std::sort(m.begin(), m.end());
    m.erase(std::unique(m.begin(), m.end()), m.end());
    Plane p;
    p.members = std::move(m);
    AffLine line = line_spanned_by(table[p.members[0]].vec, table[p.members[1]].vec);
    LineParam lp = parametrize(line);
    std::vector<std::pair<Rat, int>> order;
    order.reserve(p.members.size());
    for (int r : p.members) order.emplace_back(lp.param_of(rescale(table[r].vec)), r);
    std::sort(order.begin(), order.end());
    for (std::size_t k = 0; k < order.size(); ++k) p.members[k] = order[k].second;
    p.tangent = classify_line(line) == DiskClass::tangent;
    int pid = static_cast<int>(planes_.size());
    for (int r : p.members) incident_[r].push_back(pid);
    planes_.push_back(std::move(p));
  }
}

int ConePlanes::position_in(int plane, int root) const {
  const auto& m = planes_[plane].members;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (m[k] == root) return static_cast<int>(k);
  return -1;
}

Face find_face_at(const AffinePoint& q, int max_steps) {
  if (disk_position(q) != 0) throw std::invalid_argument("face lookup expects a boundary point");
  ReducedWord w;
  for (int step = 0; step < max_steps; ++step) {
    static constexpr int pairs[3][2] = {{1, 2}, {1, 3}, {2, 3}};
    for (auto [a, b] : pairs) {
      Face f = face_of(w, a, b);
      AffinePoint ideal =
          tangency_point(line_through(rescale(boundary_root(f, 1)), rescale(boundary_root(f, -1))));
      if (ideal == q) return f;
    }
    // Step across the unique wall of T_w separating it from q.
    bool moved = false;
    for (Generator g = 1; g <= 3 && !moved; ++g) {
      if (!w.empty() && w.last() == g) continue;
      VecZ beta = act(w, simple_root(g));
      if (sign(inner(q.v, beta)) > 0) {
        w = w.times(g);
        moved = true;
      }
    }
    if (!moved) throw std::runtime_error("triangle walk stalled; point is not a Farey vertex");
  }
  throw std::runtime_error("no face found within step bound; point too deep or not a Farey vertex");
}

}  // namespace u3
