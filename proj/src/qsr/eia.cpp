#include "cairn/qsr/eia.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cairn/error.hpp"

namespace cairn::qsr {

namespace {

enum class Cmp { lt, eq, gt };

Cmp cmp(double u, double v, double eps_abs) {
  const double d = u - v;
  if (std::abs(d) <= eps_abs) return Cmp::eq;
  return d < 0 ? Cmp::lt : Cmp::gt;
}

// Two-valued endpoint-vs-center comparison; the boundary goes to the >= side.
bool below(double u, double v, double eps_abs) {
  return cmp(u, v, eps_abs) == Cmp::lt;
}

constexpr std::string_view kNames[kEiaCount] = {
    "b",    "m",    "lol",  "mol",  "lom",  "mom",  "ls",  "ms",  "lf",
    "mf",   "hd",   "cd",   "hdr",  "eq",   "bi",   "mi",  "loli", "moli",
    "lomi", "momi", "lsi",  "msi",  "lfi",  "mfi",  "hdi", "cdi",  "hdri"};

}  // namespace

Eia eia_of(const Interval& a, const Interval& b, double eps) {
  if (a.degenerate() || b.degenerate())
    throw Error("eia_of: degenerate interval");
  const double eps_abs = eps * std::max(a.length(), b.length());
  const double ac = a.center(), bc = b.center();

  const Cmp hl = cmp(a.hi, b.lo, eps_abs);
  if (hl == Cmp::lt) return Eia::b;
  if (hl == Cmp::eq) return Eia::m;
  const Cmp lh = cmp(a.lo, b.hi, eps_abs);
  if (lh == Cmp::gt) return Eia::bi;
  if (lh == Cmp::eq) return Eia::mi;

  const Cmp ll = cmp(a.lo, b.lo, eps_abs);
  const Cmp hh = cmp(a.hi, b.hi, eps_abs);

  if (ll == Cmp::eq && hh == Cmp::eq) return Eia::eq;
  if (ll == Cmp::eq)  // shared start
    return hh == Cmp::lt ? (below(a.hi, bc, eps_abs) ? Eia::ls : Eia::ms)
                         : (below(b.hi, ac, eps_abs) ? Eia::lsi : Eia::msi);
  if (hh == Cmp::eq)  // shared finish
    return ll == Cmp::gt ? (below(a.lo, bc, eps_abs) ? Eia::mf : Eia::lf)
                         : (below(b.lo, ac, eps_abs) ? Eia::mfi : Eia::lfi);

  if (ll == Cmp::lt && hh == Cmp::lt) {  // a overlaps b from below
    const bool center_in = !below(ac, b.lo, eps_abs);
    const bool past_mid = !below(a.hi, bc, eps_abs);
    if (!center_in) return past_mid ? Eia::lom : Eia::lol;
    return past_mid ? Eia::mom : Eia::mol;
  }
  if (ll == Cmp::gt && hh == Cmp::gt) {  // converse overlap
    const bool center_in = !below(bc, a.lo, eps_abs);
    const bool past_mid = !below(b.hi, ac, eps_abs);
    if (!center_in) return past_mid ? Eia::lomi : Eia::loli;
    return past_mid ? Eia::momi : Eia::moli;
  }
  if (ll == Cmp::gt && hh == Cmp::lt) {  // a strictly inside b
    const Cmp c = cmp(ac, bc, eps_abs);
    return c == Cmp::lt ? Eia::hd : (c == Cmp::gt ? Eia::hdr : Eia::cd);
  }
  // b strictly inside a
  const Cmp c = cmp(bc, ac, eps_abs);
  return c == Cmp::lt ? Eia::hdi : (c == Cmp::gt ? Eia::hdri : Eia::cdi);
}

std::string_view eia_name(Eia r) { return kNames[static_cast<int>(r)]; }

std::optional<Eia> eia_from_name(std::string_view name) {
  for (int i = 0; i < kEiaCount; ++i)
    if (kNames[i] == name) return static_cast<Eia>(i);
  return std::nullopt;
}

namespace {

// Representatives and the symm/converse tables are generated once from a
// deterministic sweep against the reference interval [0, 1]. The sweep covers
// every arrangement cell of the nine landmark-comparison lines plus the
// boundaries between them, so all 27 relations are realized.
struct EiaTable {
  std::array<EiaRepresentative, kEiaCount> repr;
  std::array<Eia, kEiaCount> symm;
  std::array<Eia, kEiaCount> conv;
  std::array<EiaSignature, kEiaCount> sig;
  std::vector<Eia> order;  // first-seen order of the sweep
};

std::vector<std::pair<Interval, Interval>> sweep_configs() {
  const Interval ref{0.0, 1.0};
  std::vector<std::pair<Interval, Interval>> out;
  for (double len : {0.25, 0.4, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 4.0}) {
    std::vector<double> breaks = {-len,       -len / 2,     0.0,
                                  0.5 - len,  0.5 - len / 2, 1.0 - len,
                                  0.5,        1.0 - len / 2, 1.0};
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    std::vector<double> xs;
    xs.push_back(breaks.front() - 1.0);
    for (std::size_t i = 0; i < breaks.size(); ++i) {
      xs.push_back(breaks[i]);
      if (i + 1 < breaks.size()) xs.push_back(0.5 * (breaks[i] + breaks[i + 1]));
    }
    xs.push_back(breaks.back() + 1.0);
    for (double x : xs) out.push_back({Interval{x, x + len}, ref});
  }
  return out;
}

EiaSignature signature_of(const Interval& a, const Interval& b, double eps) {
  const double eps_abs = eps * std::max(a.length(), b.length());
  const double la[3] = {a.lo, a.center(), a.hi};
  const double lb[3] = {b.lo, b.center(), b.hi};
  EiaSignature s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Cmp c = cmp(la[i], lb[j], eps_abs);
      s[i * 3 + j] = c == Cmp::eq ? 0 : (c == Cmp::lt ? -1 : 1);
    }
  return s;
}

const EiaTable& table() {
  static const EiaTable t = [] {
    EiaTable t;
    std::array<bool, kEiaCount> seen{};
    for (const auto& [a, b] : sweep_configs()) {
      const Eia r = eia_of(a, b);
      const int i = static_cast<int>(r);
      if (!seen[i]) {
        seen[i] = true;
        t.repr[i] = {a, b};
        t.order.push_back(r);
      }
    }
    if (t.order.size() != kEiaCount)
      throw Error("eia: enumeration sweep failed to realize all 27 relations");
    for (int i = 0; i < kEiaCount; ++i) {
      const auto& [a, b] = t.repr[i];
      t.sig[i] = signature_of(a, b, kEiaDefaultEps);
      t.conv[i] = eia_of(b, a);
      const Interval am{-a.hi, -a.lo}, bm{-b.hi, -b.lo};
      t.symm[i] = eia_of(am, bm);
    }
    return t;
  }();
  return t;
}

}  // namespace

Eia eia_converse(Eia r) { return table().conv[static_cast<int>(r)]; }
Eia eia_symm(Eia r) { return table().symm[static_cast<int>(r)]; }
EiaSignature eia_signature(Eia r) { return table().sig[static_cast<int>(r)]; }
EiaRepresentative eia_representative(Eia r) {
  return table().repr[static_cast<int>(r)];
}
const std::vector<Eia>& enumerate_basic_relations() { return table().order; }

}  // namespace cairn::qsr
