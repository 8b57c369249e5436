#include "heisenbrick/residue_set.hpp"

#include <bit>
#include <cassert>
#include <string>

#include "heisenbrick/kernels.hpp"

namespace hb {

namespace {

std::size_t words_for(uint32_t bits) { return (bits + 63) / 64; }

void require_same_field(const ResidueSet& a, const ResidueSet& b) {
  if (a.p() != b.p())
    throw input_error("field mismatch: F_" + std::to_string(a.p()) + " vs F_" +
                      std::to_string(b.p()));
}

// A length-L bit string laid out twice in a row (bit j and bit j+L agree), so
// that any cyclic rotation is a plain 64-bit window read. One guard word keeps
// the kernels' one-past read in bounds.
struct RotationSource {
  uint32_t length = 0;
  std::vector<uint64_t> words;

  static RotationSource from_words(std::span<const uint64_t> src, uint32_t length) {
    RotationSource d;
    d.length = length;
    d.words.assign(words_for(2 * length) + 1, 0);
    const std::size_t w = words_for(length);
    for (std::size_t k = 0; k < w; ++k) d.words[k] = src[k];
    const std::size_t q = length >> 6;
    const unsigned r = length & 63;
    for (std::size_t k = 0; k < w; ++k) {
      d.words[q + k] |= r ? src[k] << r : src[k];
      if (r) d.words[q + k + 1] |= src[k] >> (64 - r);
    }
    return d;
  }
};

// acc |= rotate(src, amount): result bit j = src bit (j - amount mod L).
void or_rotated(uint64_t* acc, const RotationSource& d, uint32_t amount,
                std::size_t nwords) {
  const uint32_t o = d.length - amount;  // amount in [0, L); o in (0, L]
  kernels::active().or_shifted(acc, d.words.data(), o >> 6, o & 63, nwords);
}

uint64_t and_rotated_popcount(const uint64_t* a, const RotationSource& d,
                              uint32_t amount, std::size_t nwords) {
  const uint32_t o = d.length - amount;
  return kernels::active().and_shifted_popcount(a, d.words.data(), o >> 6, o & 63,
                                                nwords);
}

void mask_tail(std::vector<uint64_t>& words, uint32_t bits) {
  const unsigned r = bits & 63;
  if (r) words.back() &= (uint64_t{1} << r) - 1;
}

}  // namespace

ResidueSet::ResidueSet(FieldPtr field)
    : field_(std::move(field)), words_(words_for(field_->p()), 0) {}

ResidueSet ResidueSet::full(FieldPtr field) {
  ResidueSet s(std::move(field));
  for (auto& w : s.words_) w = ~uint64_t{0};
  mask_tail(s.words_, s.p());
  return s;
}

ResidueSet ResidueSet::units(FieldPtr field) {
  ResidueSet s = full(std::move(field));
  s.erase(0);
  return s;
}

ResidueSet ResidueSet::of(FieldPtr field, std::initializer_list<uint32_t> values) {
  return of(std::move(field), std::vector<uint32_t>(values));
}

ResidueSet ResidueSet::of(FieldPtr field, const std::vector<uint32_t>& values) {
  ResidueSet s(std::move(field));
  for (uint32_t v : values) s.insert(v);
  return s;
}

ResidueSet ResidueSet::interval(FieldPtr field, uint32_t lo, uint32_t hi) {
  if (hi < lo) throw input_error("interval with hi < lo");
  ResidueSet s(std::move(field));
  if (hi - lo > s.p()) throw input_error("interval longer than p");
  for (uint32_t v = lo; v < hi; ++v) s.insert(v % s.p());
  return s;
}

void ResidueSet::insert(uint32_t r) {
  if (r >= p())
    throw input_error("residue " + std::to_string(r) + " out of range for F_" +
                      std::to_string(p()));
  words_[r >> 6] |= uint64_t{1} << (r & 63);
}

void ResidueSet::erase(uint32_t r) {
  if (r >= p()) throw input_error("residue out of range");
  words_[r >> 6] &= ~(uint64_t{1} << (r & 63));
}

uint32_t ResidueSet::cardinality() const {
  uint32_t c = 0;
  for (uint64_t w : words_) c += std::popcount(w);
  return c;
}

std::vector<uint16_t> ResidueSet::values() const {
  std::vector<uint16_t> out;
  out.reserve(cardinality());
  for (std::size_t k = 0; k < words_.size(); ++k) {
    uint64_t w = words_[k];
    while (w) {
      out.push_back(static_cast<uint16_t>(64 * k + std::countr_zero(w)));
      w &= w - 1;
    }
  }
  return out;
}

uint32_t ResidueSet::first_missing() const {
  for (std::size_t k = 0; k < words_.size(); ++k) {
    uint64_t w = ~words_[k];
    if (w) {
      uint32_t r = static_cast<uint32_t>(64 * k + std::countr_zero(w));
      if (r < p()) return r;
    }
  }
  return p();
}

ResidueSet& ResidueSet::operator&=(const ResidueSet& o) {
  require_same_field(*this, o);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
  return *this;
}

ResidueSet& ResidueSet::operator|=(const ResidueSet& o) {
  require_same_field(*this, o);
  for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
  return *this;
}

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b) {
  require_same_field(a, b);
  const uint32_t ca = a.cardinality(), cb = b.cardinality();
  if (ca == 0 || cb == 0) return ResidueSet(a.field());

  const ResidueSet& small = ca <= cb ? a : b;
  const ResidueSet& large = ca <= cb ? b : a;
  const auto d = RotationSource::from_words(large.words(), large.p());

  std::vector<uint64_t> acc(a.word_count(), 0);
  for (uint16_t s : small.values()) or_rotated(acc.data(), d, s, acc.size());
  mask_tail(acc, a.p());

  ResidueSet out(a.field(), std::move(acc));
#ifndef NDEBUG
  // Cauchy-Davenport: |A+B| >= min(p, |A|+|B|-1) for nonempty A, B.
  if (!out.is_full()) assert(out.cardinality() >= ca + cb - 1);
#endif
  return out;
}

ResidueSet dilate(const ResidueSet& a, uint32_t lambda) {
  if (lambda == 0) throw input_error("dilate by 0");
  const auto& f = *a.field();
  ResidueSet out(a.field());
  for (uint16_t v : a.values()) out.insert(f.mul(lambda, v));
  return out;
}

ResidueSet reflect(const ResidueSet& a) {
  const auto& f = *a.field();
  ResidueSet out(a.field());
  for (uint16_t v : a.values()) out.insert(f.neg(v));
  return out;
}

ResidueSet translate(const ResidueSet& a, uint32_t t) {
  if (t >= a.p()) throw input_error("translate amount out of range");
  const auto d = RotationSource::from_words(a.words(), a.p());
  std::vector<uint64_t> acc(a.word_count(), 0);
  or_rotated(acc.data(), d, t, acc.size());
  mask_tail(acc, a.p());
  return ResidueSet(a.field(), std::move(acc));
}

ResidueSet difference_from(uint32_t c, const ResidueSet& a) {
  return translate(reflect(a), c);
}

ResidueSet product_set(const ResidueSet& x, const ResidueSet& y) {
  require_same_field(x, y);
  const auto& f = *x.field();
  const uint32_t p = f.p();
  ResidueSet out(x.field());
  const bool x0 = x.contains(0), y0 = y.contains(0);
  if ((x0 && !y.empty()) || (y0 && !x.empty())) out.insert(0);

  // Nonzero parts multiply as a sumset of discrete logs over Z/(p-1).
  std::vector<uint16_t> lx, ly;
  for (uint16_t v : x.values())
    if (v != 0) lx.push_back(static_cast<uint16_t>(f.dlog(v)));
  for (uint16_t v : y.values())
    if (v != 0) ly.push_back(static_cast<uint16_t>(f.dlog(v)));
  if (lx.empty() || ly.empty()) return out;

  const uint32_t m = p - 1;
  const std::size_t wm = words_for(m);
  std::vector<uint64_t> ybits(wm + 1, 0);
  for (uint16_t k : ly) ybits[k >> 6] |= uint64_t{1} << (k & 63);
  const auto d = RotationSource::from_words({ybits.data(), wm}, m);

  std::vector<uint64_t> acc(wm, 0);
  for (uint16_t k : lx) or_rotated(acc.data(), d, k, wm);
  mask_tail(acc, m);

  for (std::size_t k = 0; k < wm; ++k) {
    uint64_t w = acc[k];
    while (w) {
      out.insert(f.exp(static_cast<uint32_t>(64 * k + std::countr_zero(w))));
      w &= w - 1;
    }
  }
  return out;
}

std::vector<uint64_t> product_count_table(const ResidueSet& x, const ResidueSet& y) {
  require_same_field(x, y);
  if (x.contains(0) || y.contains(0))
    throw input_error("product_count_table requires subsets of F*");
  const auto& f = *x.field();
  std::vector<uint64_t> r(f.p(), 0);
  const auto xv = x.values(), yv = y.values();
  for (uint16_t a : xv)
    for (uint16_t b : yv) ++r[f.mul(a, b)];
  return r;
}

std::vector<uint32_t> shift_intersection_counts(const ResidueSet& x) {
  const uint32_t p = x.p();
  const auto d = RotationSource::from_words(reflect(x).words(), p);
  std::vector<uint32_t> counts(p, 0);
  for (uint32_t a = 0; a < p; ++a)
    counts[a] = static_cast<uint32_t>(
        and_rotated_popcount(x.words().data(), d, a, x.word_count()));
  return counts;
}

}  // namespace hb
