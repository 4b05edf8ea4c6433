#include "prm/enumeration.hpp"

#include <bit>
#include <limits>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "prm/term_library.hpp"

namespace prm {

namespace {

// A natural n stands for the bit string obtained by writing n + 1 in binary
// and dropping the leading 1 (a bijection N <-> {0,1}*).
struct BitString {
  Natural bits;  // value of the string read as binary
  std::size_t length = 0;
};

Natural one_shl(std::size_t k) {
  Natural v = 1;
  return v << static_cast<unsigned>(k);
}

BitString to_bits(const Natural& n) {
  Natural m = n + 1;
  const std::size_t len = boost::multiprecision::msb(m);
  return {m - one_shl(len), len};
}

Natural from_bits(const BitString& s) { return s.bits + one_shl(s.length) - 1; }

BitString concat(const BitString& a, const BitString& b) {
  return {(a.bits << static_cast<unsigned>(b.length)) | b.bits, a.length + b.length};
}

// Elias gamma code of v >= 1: (B - 1) zeros then v in B bits.
BitString gamma(std::size_t v) {
  const std::size_t b = static_cast<std::size_t>(std::bit_width(v));
  return {Natural(v), 2 * b - 1};
}

Natural low_bits(const Natural& v, std::size_t k) { return v & (one_shl(k) - 1); }

}  // namespace

// pair(a, b) = gamma(|s| + 1) ++ s ++ t  for s = str(a), t = str(b).
// Code length is additive in the component lengths, so nested term codes
// stay linear in term size.
Natural code_pair(const Natural& a, const Natural& b) {
  require_natural(a, "pair component");
  require_natural(b, "pair component");
  const BitString s = to_bits(a);
  return from_bits(concat(concat(gamma(s.length + 1), s), to_bits(b)));
}

// Inverse of code_pair on its image. Strings that do not start with a
// complete gamma header and payload are repaired to (0, 0).
std::pair<Natural, Natural> code_unpair(const Natural& z) {
  require_natural(z, "pair code");
  const BitString w = to_bits(z);
  if (w.bits == 0) return {0, 0};
  const std::size_t high = boost::multiprecision::msb(w.bits);
  const std::size_t zeros = w.length - 1 - high;
  const std::size_t header = 2 * zeros + 1;
  if (header > w.length || zeros >= 64) return {0, 0};
  const std::size_t s_len =
      (w.bits >> static_cast<unsigned>(w.length - header)).convert_to<std::size_t>() - 1;
  if (header + s_len > w.length) return {0, 0};
  const std::size_t t_len = w.length - header - s_len;
  BitString s{low_bits(w.bits >> static_cast<unsigned>(t_len), s_len), s_len};
  BitString t{low_bits(w.bits, t_len), t_len};
  return {from_bits(s), from_bits(t)};
}

namespace {

constexpr unsigned kTagCount = 4;

// Decoding small codes is a handful of divisions; only large codes (built by
// the index combinators) are worth caching.
constexpr std::size_t kCacheMinBits = 64;

// A canonical list of k codes needs at least k - 1 bits, so clamping the
// declared inner count to the bit length of the rest leaves canonical codes
// untouched and keeps decode linear in the code length.
std::size_t clamp_inner_count(const Natural& k1, const Natural& rest) {
  const Natural cap = bit_length(rest);
  return (k1 > cap ? cap : k1).convert_to<std::size_t>() + 1;
}

Term decode_uncached(const Natural& code, std::size_t n) {
  const unsigned tag = static_cast<unsigned>(code % kTagCount);
  const Natural body = code / kTagCount;
  if (tag == 3) return Term::zero(n);
  if (n == 1) {
    if (tag == 0) return Term::succ();
    if (tag == 1) return Term::proj(1, 1);
  } else {
    if (tag == 0) {
      const std::size_t i = body >= n ? n : body.convert_to<std::size_t>() + 1;
      return Term::proj(i, n);
    }
    if (tag == 2) {
      auto [bc, sc] = code_unpair(body);
      Term base = decode_at_arity(bc, n - 1);
      Term step = decode_at_arity(sc, n + 1);
      return Term::prim_rec(std::move(base), std::move(step));
    }
  }
  // composition
  auto [k1, rest] = code_unpair(body);
  const std::size_t k = clamp_inner_count(k1, rest);
  auto [oc, lc] = code_unpair(rest);
  Term outer = decode_at_arity(oc, k);
  std::vector<Term> inners;
  inners.reserve(k);
  Natural list = lc;
  for (std::size_t t = 0; t + 1 < k; ++t) {
    auto [head, tail] = code_unpair(list);
    inners.push_back(decode_at_arity(head, n));
    list = std::move(tail);
  }
  inners.push_back(decode_at_arity(list, n));
  return Term::comp(std::move(outer), std::move(inners));
}

struct DecodeCache {
  std::shared_mutex mutex;
  std::unordered_map<Natural, Term, boost::hash<Natural>> by_code;
};

DecodeCache& unary_cache() {
  static DecodeCache cache;
  return cache;
}

unsigned comp_tag(std::size_t n) { return n == 1 ? 2 : 1; }

Natural tagged(const Natural& body, unsigned tag) { return body * kTagCount + tag; }

}  // namespace

Term decode_at_arity(const Natural& code, std::size_t arity) {
  require_natural(code, "code");
  if (arity == 0) throw std::invalid_argument("decode_at_arity: arity must be >= 1");
  return decode_uncached(code, arity);
}

Natural encode_at_arity(const Term& term) {
  const std::size_t n = term.arity();
  switch (term.kind()) {
    case TermKind::Zero:
      return 3;
    case TermKind::Succ:
      return 0;
    case TermKind::Proj:
      return n == 1 ? Natural(1) : tagged(Natural(term.proj_index() - 1), 0);
    case TermKind::Comp: {
      const auto inners = term.inners();
      Natural list = encode_at_arity(inners.back());
      for (std::size_t t = inners.size() - 1; t-- > 0;) {
        list = code_pair(encode_at_arity(inners[t]), list);
      }
      Natural body = code_pair(Natural(inners.size() - 1),
                               code_pair(encode_at_arity(term.outer()), list));
      return tagged(body, comp_tag(n));
    }
    case TermKind::PrimRec:
      return tagged(code_pair(encode_at_arity(term.base()), encode_at_arity(term.step())), 2);
  }
  throw std::logic_error("unreachable");
}

Term decode(const GodelIndex& e) {
  if (bit_length(e.value) < kCacheMinBits) return decode_uncached(e.value, 1);
  DecodeCache& cache = unary_cache();
  {
    std::shared_lock lock(cache.mutex);
    auto it = cache.by_code.find(e.value);
    if (it != cache.by_code.end()) return it->second;
  }
  Term t = decode_uncached(e.value, 1);
  std::unique_lock lock(cache.mutex);
  return cache.by_code.emplace(e.value, std::move(t)).first->second;
}

GodelIndex encode(const Term& term) {
  if (term.arity() != 1) {
    throw ValidationError("", "only unary terms are enumerated (arity " +
                                  std::to_string(term.arity()) + ")");
  }
  return GodelIndex(encode_at_arity(term));
}

EvalOutcome p_outcome(const GodelIndex& e, const Natural& x) { return eval1(decode(e), x); }

Natural p(const GodelIndex& e, const Natural& x) { return p_outcome(e, x).value; }

Natural p_steps(const GodelIndex& e, const Natural& x) { return p_outcome(e, x).steps; }

namespace {
void require_time_index(std::int64_t e) {
  if (e < -1) throw std::invalid_argument("time-bound index must be >= -1");
}
}  // namespace

Natural r(std::int64_t e, const Natural& x) {
  require_time_index(e);
  Natural best = 0;
  for (std::int64_t d = 0; d <= e; ++d) {
    EvalOutcome o = p_outcome(GodelIndex(d), x);
    Natural cand = o.steps + o.value + x;
    if (cand > best) best = std::move(cand);
  }
  return best;
}

Natural r_steps(std::int64_t e, const Natural& x) {
  require_time_index(e);
  Natural total = 1;
  for (std::int64_t d = 0; d <= e; ++d) total += p_steps(GodelIndex(d), x);
  return total;
}

std::optional<Natural> r_steps_within(std::int64_t e, const Natural& x, const Natural& budget) {
  require_time_index(e);
  Natural total = 1;
  if (total > budget) return std::nullopt;
  for (std::int64_t d = 0; d <= e; ++d) {
    BoundedRun run = run_bounded(decode(GodelIndex(d)), std::span<const Natural>(&x, 1),
                                 Budget{budget - total});
    if (!run.outcome) return std::nullopt;
    total += run.outcome->steps;
  }
  return total;
}

std::optional<Natural> phi_approx(const GodelIndex& e, const Natural& x, const Natural& s) {
  auto o = eval1_bounded(decode(e), x, Budget{s});
  if (!o) return std::nullopt;
  return std::move(o->value);
}

bool set_char(const GodelIndex& e, const Natural& x) { return p(e, x) > 0; }

namespace {
// Encode and seed the decode cache, so that combinator indices built here do
// not have to be re-parsed later.
GodelIndex encode_remembered(const Term& t) {
  GodelIndex e = encode(t);
  if (bit_length(e.value) >= kCacheMinBits) {
    DecodeCache& cache = unary_cache();
    std::unique_lock lock(cache.mutex);
    cache.by_code.emplace(e.value, t);
  }
  return e;
}
}  // namespace

GodelIndex index_union(const GodelIndex& i, const GodelIndex& j) {
  return encode_remembered(Term::comp(lib::or2(), {decode(i), decode(j)}));
}

GodelIndex index_intersect(const GodelIndex& i, const GodelIndex& j) {
  return encode_remembered(Term::comp(lib::and2(), {decode(i), decode(j)}));
}

GodelIndex index_complement(const GodelIndex& i) {
  return encode_remembered(lib::after(lib::sgbar(), decode(i)));
}

GodelIndex omega_index() { return encode(lib::constant(1)); }

GodelIndex empty_index() { return encode(lib::zero1()); }

}  // namespace prm
