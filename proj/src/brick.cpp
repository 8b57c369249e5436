#include "heisenbrick/brick.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_map>

namespace hb {

namespace {

void require_compatible(const Brick& a, const Brick& b) {
  if (a.field->p() != b.field->p() || a.n != b.n)
    throw input_error("brick product: parameter mismatch");
}

uint64_t fnv1a(std::span<const uint64_t> words) {
  uint64_t h = 1469598103934665603ull;
  for (uint64_t w : words) {
    for (int k = 0; k < 8; ++k) {
      h ^= (w >> (8 * k)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

// Deduplicates fibers: equal sets share one pool slot.
struct PoolInterner {
  std::vector<ResidueSet>& pool;
  std::unordered_map<uint64_t, std::vector<uint32_t>> buckets;

  uint32_t intern(ResidueSet&& s) {
    const uint64_t h = fnv1a(s.words());
    auto& bucket = buckets[h];
    for (uint32_t idx : bucket)
      if (pool[idx] == s) return idx;
    pool.push_back(std::move(s));
    bucket.push_back(static_cast<uint32_t>(pool.size() - 1));
    return static_cast<uint32_t>(pool.size() - 1);
  }
};

}  // namespace

Brick Brick::make(FieldPtr field, std::vector<ResidueSet> xs, std::vector<ResidueSet> ys,
                  ResidueSet z, bool zero_relaxed) {
  if (xs.empty() || xs.size() != ys.size())
    throw input_error("brick needs n >= 1 with matching X and Y lists");
  const uint32_t p = field->p();
  auto check_component = [&](const ResidueSet& s, const char* which) {
    if (s.p() != p) throw input_error("brick component over a different field");
    if (s.empty()) throw input_error(std::string(which) + " component is empty");
    if (!zero_relaxed && s.contains(0))
      throw input_error(std::string(which) + " component contains 0 (X_i, Y_i must be subsets of F*)");
  };
  for (const auto& s : xs) check_component(s, "X");
  for (const auto& s : ys) check_component(s, "Y");
  if (z.p() != p) throw input_error("Z over a different field");
  if (z.empty()) throw input_error("Z is empty");

  const uint32_t n = static_cast<uint32_t>(xs.size());
  return Brick{std::move(field), n, std::move(xs), std::move(ys), std::move(z),
               zero_relaxed};
}

uint64_t brick_cardinality(const Brick& b) {
  unsigned __int128 c = b.z.cardinality();
  for (uint32_t i = 0; i < b.n; ++i) {
    c *= b.xs[i].cardinality();
    c *= b.ys[i].cardinality();
    if (c > static_cast<unsigned __int128>(~uint64_t{0}))
      throw computation_error("brick cardinality exceeds 64 bits");
  }
  return static_cast<uint64_t>(c);
}

bool brick_contains(const Brick& b, const HeisElement& g) {
  if (g.x.size() != b.n || g.y.size() != b.n) return false;
  for (uint32_t i = 0; i < b.n; ++i)
    if (!b.xs[i].contains(g.x[i]) || !b.ys[i].contains(g.y[i])) return false;
  return b.z.contains(g.z);
}

ElementSet brick_elements(const Brick& b, uint64_t brute_cap) {
  ElementSet out(b.params(), brute_cap);
  std::vector<std::vector<uint16_t>> comps;
  for (uint32_t i = 0; i < b.n; ++i) comps.push_back(b.xs[i].values());
  for (uint32_t i = 0; i < b.n; ++i) comps.push_back(b.ys[i].values());
  const auto zv = b.z.values();

  HeisElement e = identity(b.params());
  std::vector<std::size_t> pos(2 * b.n, 0);
  while (true) {
    for (uint32_t i = 0; i < b.n; ++i) {
      e.x[i] = comps[i][pos[i]];
      e.y[i] = comps[b.n + i][pos[b.n + i]];
    }
    const uint64_t base = element_rank(b.params(), e) - e.z;
    for (uint16_t w : zv) out.insert_rank(base + w);
    std::size_t k = 0;
    while (k < pos.size() && ++pos[k] == comps[k].size()) pos[k++] = 0;
    if (k == pos.size()) break;
  }
  return out;
}

const ResidueSet* FiberedProductSet::fiber(std::span<const uint16_t> u,
                                           std::span<const uint16_t> v) const {
  if (u.size() != n_ || v.size() != n_) throw input_error("fiber: dimension mismatch");
  uint64_t g = 0;
  for (uint32_t i = 0; i < n_; ++i) {
    const auto& list = u_support_[i];
    auto it = std::lower_bound(list.begin(), list.end(), u[i]);
    if (it == list.end() || *it != u[i]) return nullptr;
    g = g * list.size() + static_cast<uint64_t>(it - list.begin());
  }
  for (uint32_t i = 0; i < n_; ++i) {
    const auto& list = v_support_[i];
    auto it = std::lower_bound(list.begin(), list.end(), v[i]);
    if (it == list.end() || *it != v[i]) return nullptr;
    g = g * list.size() + static_cast<uint64_t>(it - list.begin());
  }
  return &pool_[fiber_of_[g]];
}

void FiberedProductSet::decode(uint64_t grid, std::vector<uint16_t>& u,
                               std::vector<uint16_t>& v) const {
  u.resize(n_);
  v.resize(n_);
  for (uint32_t i = n_; i-- > 0;) {
    const auto& list = v_support_[i];
    v[i] = list[grid % list.size()];
    grid /= list.size();
  }
  for (uint32_t i = n_; i-- > 0;) {
    const auto& list = u_support_[i];
    u[i] = list[grid % list.size()];
    grid /= list.size();
  }
}

FiberedProductSet::Projections FiberedProductSet::projections() const {
  Projections pr{{}, {}, ResidueSet(field_)};
  for (uint32_t i = 0; i < n_; ++i) {
    ResidueSet us(field_), vs(field_);
    for (uint16_t x : u_support_[i]) us.insert(x);
    for (uint16_t y : v_support_[i]) vs.insert(y);
    pr.u.push_back(std::move(us));
    pr.v.push_back(std::move(vs));
  }
  for (const auto& f : pool_) pr.w |= f;
  return pr;
}

ElementSet FiberedProductSet::to_element_set(uint64_t brute_cap) const {
  ElementSet out(GroupParams{field_, n_}, brute_cap);
  const uint64_t p = field_->p();
  std::vector<uint16_t> u, v;
  for (uint64_t g = 0; g < fiber_of_.size(); ++g) {
    decode(g, u, v);
    uint64_t base = 0;
    for (uint16_t x : u) base = base * p + x;
    for (uint16_t y : v) base = base * p + y;
    base *= p;
    for (uint16_t w : pool_[fiber_of_[g]].values()) out.insert_rank(base + w);
  }
  return out;
}

FiberedProductSet product_fibered(const Brick& a, const Brick& b, uint64_t fiber_cap) {
  require_compatible(a, b);
  const uint32_t n = a.n;

  FiberedProductSet P;
  P.field_ = a.field;
  P.n_ = n;

  // Support grid: u_i ranges over X_i + X'_i, v_i over Y_i + Y'_i. Each tilde
  // intersection at a support value is nonempty, so the support is exactly
  // this product grid.
  unsigned __int128 count = 1;
  bool count_overflow = false;
  constexpr auto kMax = ~static_cast<unsigned __int128>(0);
  for (uint32_t i = 0; i < n; ++i) {
    P.u_support_.push_back(sumset(a.xs[i], b.xs[i]).values());
    P.v_support_.push_back(sumset(a.ys[i], b.ys[i]).values());
    for (uint64_t s : {P.u_support_[i].size(), P.v_support_[i].size()}) {
      if (count > kMax / s)
        count_overflow = true;
      else
        count *= s;
    }
  }
  if (count_overflow || count > fiber_cap) {
    std::string need = count_overflow
                           ? "more than 10^38"
                           : std::to_string(static_cast<uint64_t>(
                                 count > ~uint64_t{0} ? ~uint64_t{0} : count)) +
                                 (count > ~uint64_t{0} ? "+" : "");
    throw resource_error("fiber cap " + std::to_string(fiber_cap) +
                         " exceeded: the product needs " + need + " fibers");
  }
  const uint64_t fibers = static_cast<uint64_t>(count);
  P.fiber_of_.assign(fibers, 0);

  // Tilde sets per coordinate and support value.
  std::vector<std::vector<ResidueSet>> xt(n), yt(n);
  for (uint32_t i = 0; i < n; ++i) {
    for (uint16_t u : P.u_support_[i])
      xt[i].push_back(a.xs[i] & difference_from(u, b.xs[i]));
    for (uint16_t v : P.v_support_[i])
      yt[i].push_back(b.ys[i] & difference_from(v, a.ys[i]));
  }

  // Strides of the canonical row-major grid over (u_1..u_n, v_1..v_n).
  std::vector<uint64_t> stride_u(n), stride_v(n);
  {
    uint64_t s = 1;
    for (uint32_t i = n; i-- > 0;) {
      stride_v[i] = s;
      s *= P.v_support_[i].size();
    }
    for (uint32_t i = n; i-- > 0;) {
      stride_u[i] = s;
      s *= P.u_support_[i].size();
    }
  }

  // Recursion order: coordinates sorted by descending pair count, so the
  // widest coordinate is streamed (its D sets are each used once and not
  // cached) while narrower coordinates are cached and reused across the grid.
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](uint32_t l, uint32_t r) {
    return P.u_support_[l].size() * P.v_support_[l].size() >
           P.u_support_[r].size() * P.v_support_[r].size();
  });

  std::vector<std::vector<ResidueSet>> dcache(n);
  std::vector<std::vector<bool>> dcached(n);
  for (uint32_t d = 1; d < n; ++d) {
    const uint32_t c = order[d];
    dcache[c].assign(P.u_support_[c].size() * P.v_support_[c].size(),
                     ResidueSet(P.field_));
    dcached[c].assign(dcache[c].size(), false);
  }

  PoolInterner interner{P.pool_, {}};
  const ResidueSet base = sumset(a.z, b.z);

  // Recursive descent over levels; n is small.
  auto rec = [&](auto&& self, uint32_t depth, const ResidueSet& acc,
                 uint64_t grid) -> void {
    const uint32_t c = order[depth];
    const std::size_t nv = P.v_support_[c].size();
    for (std::size_t ju = 0; ju < P.u_support_[c].size(); ++ju) {
      for (std::size_t jv = 0; jv < nv; ++jv) {
        ResidueSet s = [&] {
          if (depth == 0)  // streamed level: each D used exactly once
            return sumset(acc, product_set(xt[c][ju], yt[c][jv]));
          auto& slot = dcache[c][ju * nv + jv];
          if (!dcached[c][ju * nv + jv]) {
            slot = product_set(xt[c][ju], yt[c][jv]);
            dcached[c][ju * nv + jv] = true;
          }
          return sumset(acc, slot);
        }();
        const uint64_t g = grid + ju * stride_u[c] + jv * stride_v[c];
        if (depth + 1 == n) {
          P.total_ += s.cardinality();
          P.fiber_of_[g] = interner.intern(std::move(s));
        } else {
          self(self, depth + 1, s, g);
        }
      }
    }
  };
  rec(rec, 0, base, 0);
  return P;
}

ResidueSet fiber_at(const Brick& a, const Brick& b, std::span<const uint16_t> u,
                    std::span<const uint16_t> v) {
  require_compatible(a, b);
  if (u.size() != a.n || v.size() != a.n)
    throw input_error("fiber_at: dimension mismatch");
  ResidueSet s = sumset(a.z, b.z);
  for (uint32_t i = 0; i < a.n; ++i) {
    const ResidueSet xt = a.xs[i] & difference_from(u[i], b.xs[i]);
    if (xt.empty()) return ResidueSet(a.field);
    const ResidueSet yt = b.ys[i] & difference_from(v[i], a.ys[i]);
    if (yt.empty()) return ResidueSet(a.field);
    s = sumset(s, product_set(xt, yt));
  }
  return s;
}

}  // namespace hb
