#include "heisenbrick/heisenberg.hpp"

#include <string>

namespace hb {

namespace {

void check_element(const GroupParams& gp, const HeisElement& a) {
  if (a.x.size() != gp.n || a.y.size() != gp.n)
    throw input_error("element dimension mismatch (n=" + std::to_string(gp.n) + ")");
  const uint32_t p = gp.p();
  for (uint16_t v : a.x)
    if (v >= p) throw input_error("element coordinate out of range");
  for (uint16_t v : a.y)
    if (v >= p) throw input_error("element coordinate out of range");
  if (a.z >= p) throw input_error("element coordinate out of range");
}

}  // namespace

std::optional<uint64_t> group_order(const GroupParams& gp) {
  unsigned __int128 o = 1;
  for (uint32_t i = 0; i < 2 * gp.n + 1; ++i) {
    o *= gp.p();
    if (o > static_cast<unsigned __int128>(~uint64_t{0})) return std::nullopt;
  }
  return static_cast<uint64_t>(o);
}

HeisElement identity(const GroupParams& gp) {
  HeisElement e;
  e.x.assign(gp.n, 0);
  e.y.assign(gp.n, 0);
  e.z = 0;
  return e;
}

HeisElement mul(const GroupParams& gp, const HeisElement& a, const HeisElement& b) {
  check_element(gp, a);
  check_element(gp, b);
  const auto& f = *gp.field;
  HeisElement r;
  r.x.resize(gp.n);
  r.y.resize(gp.n);
  uint32_t ip = 0;
  for (uint32_t i = 0; i < gp.n; ++i) {
    r.x[i] = static_cast<uint16_t>(f.add(a.x[i], b.x[i]));
    r.y[i] = static_cast<uint16_t>(f.add(a.y[i], b.y[i]));
    ip = f.add(ip, f.mul(a.x[i], b.y[i]));
  }
  r.z = static_cast<uint16_t>(f.add(ip, f.add(a.z, b.z)));
  return r;
}

HeisElement inv(const GroupParams& gp, const HeisElement& a) {
  check_element(gp, a);
  const auto& f = *gp.field;
  HeisElement r;
  r.x.resize(gp.n);
  r.y.resize(gp.n);
  uint32_t ip = 0;
  for (uint32_t i = 0; i < gp.n; ++i) {
    r.x[i] = static_cast<uint16_t>(f.neg(a.x[i]));
    r.y[i] = static_cast<uint16_t>(f.neg(a.y[i]));
    ip = f.add(ip, f.mul(a.x[i], a.y[i]));
  }
  r.z = static_cast<uint16_t>(f.sub(ip, a.z));
  return r;
}

HeisElement commutator(const GroupParams& gp, const HeisElement& a,
                       const HeisElement& b) {
  return mul(gp, mul(gp, mul(gp, a, b), inv(gp, a)), inv(gp, b));
}

bool nilpotency_check(const GroupParams& gp, const HeisElement& a,
                      const HeisElement& b, const HeisElement& c) {
  // a b a^-1 b^-1 c b a b^-1 a^-1 c^-1 = [[a,b],c]
  return commutator(gp, commutator(gp, a, b), c) == identity(gp);
}

uint64_t element_rank(const GroupParams& gp, const HeisElement& a) {
  const uint64_t p = gp.p();
  uint64_t r = 0;
  for (uint16_t v : a.x) r = r * p + v;
  for (uint16_t v : a.y) r = r * p + v;
  return r * p + a.z;
}

HeisElement element_unrank(const GroupParams& gp, uint64_t rank) {
  const uint64_t p = gp.p();
  HeisElement a;
  a.x.resize(gp.n);
  a.y.resize(gp.n);
  a.z = static_cast<uint16_t>(rank % p);
  rank /= p;
  for (uint32_t i = gp.n; i-- > 0;) {
    a.y[i] = static_cast<uint16_t>(rank % p);
    rank /= p;
  }
  for (uint32_t i = gp.n; i-- > 0;) {
    a.x[i] = static_cast<uint16_t>(rank % p);
    rank /= p;
  }
  return a;
}

ElementSet::ElementSet(GroupParams gp, uint64_t brute_cap) : gp_(std::move(gp)) {
  const auto o = group_order(gp_);
  if (!o || *o > brute_cap)
    throw resource_error("group order p^(2n+1) exceeds the brute-force cap " +
                         std::to_string(brute_cap) + " (p=" + std::to_string(gp_.p()) +
                         ", n=" + std::to_string(gp_.n) + ")");
  order_ = *o;
  bits_.assign((order_ + 63) / 64, 0);
}

void ElementSet::insert_rank(uint64_t r) {
  uint64_t& w = bits_[r >> 6];
  const uint64_t bit = uint64_t{1} << (r & 63);
  size_ += !(w & bit);
  w |= bit;
}

std::vector<uint64_t> ElementSet::ranks() const {
  std::vector<uint64_t> out;
  out.reserve(size_);
  for (std::size_t k = 0; k < bits_.size(); ++k) {
    uint64_t w = bits_[k];
    while (w) {
      out.push_back(64 * k + static_cast<unsigned>(__builtin_ctzll(w)));
      w &= w - 1;
    }
  }
  return out;
}

std::vector<HeisElement> ElementSet::elements() const {
  std::vector<HeisElement> out;
  out.reserve(size_);
  for (uint64_t r : ranks()) out.push_back(element_unrank(gp_, r));
  return out;
}

ElementSet full_group(const GroupParams& gp, uint64_t brute_cap) {
  ElementSet s(gp, brute_cap);
  for (uint64_t r = 0; r < s.order(); ++r) s.insert_rank(r);
  return s;
}

ElementSet brute_product_set(const ElementSet& s, const ElementSet& t) {
  if (s.params().p() != t.params().p() || s.params().n != t.params().n)
    throw input_error("brute_product_set: parameter mismatch");
  const auto& gp = s.params();
  ElementSet out(gp, s.order());
  const auto se = s.elements();
  const auto te = t.elements();
  for (const auto& a : se)
    for (const auto& b : te) out.insert(mul(gp, a, b));
  return out;
}

Lemma1Result lemma1_check(const ElementSet& s, const ElementSet& t) {
  Lemma1Result r;
  r.hypothesis_holds = s.size() + t.size() > s.order();
  const auto prod = brute_product_set(s, t);
  r.product_is_full = prod.size() == prod.order();
  r.implication_holds = !r.hypothesis_holds || r.product_is_full;
  return r;
}

ElementSet conjugate_set(const ElementSet& s, const HeisElement& conjugator) {
  const auto& gp = s.params();
  const HeisElement pi = inv(gp, conjugator);
  ElementSet out(gp, s.order());
  for (const auto& a : s.elements())
    out.insert(mul(gp, mul(gp, pi, a), conjugator));
  return out;
}

SubgroupCheck check_subgroup(const ElementSet& s) {
  SubgroupCheck r;
  const auto& gp = s.params();
  if (s.size() == 0) {
    r.reason = "empty set";
    return r;
  }
  if (!s.contains(identity(gp))) {
    r.reason = "identity missing";
    return r;
  }
  const auto es = s.elements();
  for (const auto& a : es) {
    if (!s.contains(inv(gp, a))) {
      r.reason = "inverse missing";
      r.witness = {a, a};
      return r;
    }
  }
  for (const auto& a : es) {
    for (const auto& b : es) {
      if (!s.contains(mul(gp, a, b))) {
        r.reason = "not closed under multiplication";
        r.witness = {a, b};
        return r;
      }
    }
  }
  r.ok = true;
  return r;
}

bool CoordinateSubgroup::closure_ok(const std::vector<Span>& kx,
                                    const std::vector<Span>& ky, Span m) {
  if (m == Span::full) return true;
  for (std::size_t i = 0; i < kx.size(); ++i)
    if (kx[i] == Span::full && ky[i] == Span::full) return false;
  return true;
}

CoordinateSubgroup CoordinateSubgroup::make(std::vector<Span> kx, std::vector<Span> ky,
                                            Span m) {
  if (kx.size() != ky.size() || kx.empty())
    throw input_error("coordinate subgroup: kx/ky length mismatch");
  if (!closure_ok(kx, ky, m))
    throw input_error(
        "coordinate subgroup profile not closed: K_i = L_i = F at some index "
        "forces M = F");
  CoordinateSubgroup g;
  g.kx = std::move(kx);
  g.ky = std::move(ky);
  g.m = m;
  return g;
}

CoordinateSubgroup CoordinateSubgroup::trivial(uint32_t n) {
  return make(std::vector<Span>(n, Span::zero), std::vector<Span>(n, Span::zero),
              Span::zero);
}

CoordinateSubgroup CoordinateSubgroup::center(uint32_t n) {
  return make(std::vector<Span>(n, Span::zero), std::vector<Span>(n, Span::zero),
              Span::full);
}

CoordinateSubgroup CoordinateSubgroup::whole_group(uint32_t n) {
  return make(std::vector<Span>(n, Span::full), std::vector<Span>(n, Span::full),
              Span::full);
}

uint32_t CoordinateSubgroup::full_count() const {
  uint32_t c = m == Span::full ? 1 : 0;
  for (Span s : kx) c += s == Span::full;
  for (Span s : ky) c += s == Span::full;
  return c;
}

std::optional<uint64_t> CoordinateSubgroup::order(uint32_t p) const {
  unsigned __int128 o = 1;
  for (uint32_t i = 0; i < full_count(); ++i) {
    o *= p;
    if (o > static_cast<unsigned __int128>(~uint64_t{0})) return std::nullopt;
  }
  return static_cast<uint64_t>(o);
}

bool CoordinateSubgroup::contained_in(const CoordinateSubgroup& o) const {
  if (kx.size() != o.kx.size()) return false;
  for (std::size_t i = 0; i < kx.size(); ++i) {
    if (kx[i] == Span::full && o.kx[i] != Span::full) return false;
    if (ky[i] == Span::full && o.ky[i] != Span::full) return false;
  }
  return !(m == Span::full && o.m != Span::full);
}

ElementSet materialize_profile(const GroupParams& gp, const std::vector<Span>& kx,
                               const std::vector<Span>& ky, Span m,
                               uint64_t brute_cap) {
  if (kx.size() != gp.n || ky.size() != gp.n)
    throw input_error("profile dimension mismatch");
  ElementSet out(gp, brute_cap);
  const uint32_t p = gp.p();

  // Odometer over the free coordinates.
  std::vector<uint32_t> free_idx;
  for (uint32_t i = 0; i < gp.n; ++i)
    if (kx[i] == Span::full) free_idx.push_back(i);
  const uint32_t nx = static_cast<uint32_t>(free_idx.size());
  for (uint32_t i = 0; i < gp.n; ++i)
    if (ky[i] == Span::full) free_idx.push_back(gp.n + i);
  const bool zfree = m == Span::full;

  HeisElement e = identity(gp);
  std::vector<uint32_t> digits(free_idx.size(), 0);
  while (true) {
    for (std::size_t k = 0; k < free_idx.size(); ++k) {
      const uint32_t idx = free_idx[k];
      if (k < nx)
        e.x[idx] = static_cast<uint16_t>(digits[k]);
      else
        e.y[idx - gp.n] = static_cast<uint16_t>(digits[k]);
    }
    if (zfree) {
      for (uint32_t z = 0; z < p; ++z) {
        e.z = static_cast<uint16_t>(z);
        out.insert(e);
      }
    } else {
      e.z = 0;
      out.insert(e);
    }
    // advance
    std::size_t k = 0;
    while (k < digits.size() && ++digits[k] == p) digits[k++] = 0;
    if (k == digits.size()) break;
  }
  return out;
}

ElementSet coordinate_subgroup_elements(const GroupParams& gp,
                                        const CoordinateSubgroup& g,
                                        uint64_t brute_cap) {
  return materialize_profile(gp, g.kx, g.ky, g.m, brute_cap);
}

}  // namespace hb
