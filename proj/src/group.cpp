#include "zsc/group.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "zsc/error.hpp"

namespace zsc {

int omega(long long k) {
  if (k <= 0) throw DomainError("omega: k must be positive, got " + std::to_string(k));
  int count = 0;
  for (long long p = 2; p * p <= k; ++p) {
    while (k % p == 0) {
      k /= p;
      ++count;
    }
  }
  if (k > 1) ++count;
  return count;
}

GroupSpec::GroupSpec(std::vector<int> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw DomainError("group must have at least one cyclic factor");
  long long order = 1;
  for (int f : factors_) {
    if (f < 2) throw DomainError("cyclic factor must be >= 2, got " + std::to_string(f));
    order *= f;
    if (order > (1LL << 30)) throw DomainError("group order too large");
  }
  order_ = static_cast<int>(order);
}

GroupSpec GroupSpec::cyclic(int k) { return GroupSpec({k}); }

GroupElem GroupSpec::add(GroupElem a, GroupElem b) const {
  if (is_cyclic()) {
    int s = a.code + b.code;
    return {s >= order_ ? s - order_ : s};
  }
  int code = 0, stride = 1, x = a.code, y = b.code;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    int f = *it;
    int s = x % f + y % f;
    if (s >= f) s -= f;
    code += s * stride;
    stride *= f;
    x /= f;
    y /= f;
  }
  return {code};
}

GroupElem GroupSpec::neg(GroupElem a) const {
  if (is_cyclic()) return {a.code == 0 ? 0 : order_ - a.code};
  int code = 0, stride = 1, x = a.code;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
    int f = *it;
    int r = x % f;
    code += (r == 0 ? 0 : f - r) * stride;
    stride *= f;
    x /= f;
  }
  return {code};
}

GroupElem GroupSpec::sub(GroupElem a, GroupElem b) const { return add(a, neg(b)); }

GroupElem GroupSpec::times(GroupElem a, long long m) const {
  if (is_cyclic()) {
    long long v = (static_cast<long long>(a.code) * (m % order_)) % order_;
    if (v < 0) v += order_;
    return {static_cast<int>(v)};
  }
  std::vector<int> r = residues(a);
  for (std::size_t i = 0; i < r.size(); ++i) {
    long long v = (static_cast<long long>(r[i]) * (m % factors_[i])) % factors_[i];
    if (v < 0) v += factors_[i];
    r[i] = static_cast<int>(v);
  }
  return from_residues(r);
}

GroupElem GroupSpec::element(long long code) const {
  if (code < 0 || code >= order_) {
    throw DomainError("group element code " + std::to_string(code) + " out of range for " + to_string());
  }
  return {static_cast<int>(code)};
}

GroupElem GroupSpec::from_int(long long value) const {
  if (!is_cyclic()) throw DomainError("from_int requires a cyclic group, got " + to_string());
  long long v = value % order_;
  if (v < 0) v += order_;
  return {static_cast<int>(v)};
}

GroupElem GroupSpec::from_residues(std::span<const int> residues) const {
  if (residues.size() != factors_.size()) {
    throw DomainError("expected " + std::to_string(factors_.size()) + " residues, got " +
                      std::to_string(residues.size()));
  }
  int code = 0;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (residues[i] < 0 || residues[i] >= factors_[i]) {
      throw DomainError("residue " + std::to_string(residues[i]) + " out of range for factor " +
                        std::to_string(factors_[i]));
    }
    code = code * factors_[i] + residues[i];
  }
  return {code};
}

std::vector<int> GroupSpec::residues(GroupElem a) const {
  std::vector<int> r(factors_.size());
  int x = a.code;
  for (std::size_t i = factors_.size(); i-- > 0;) {
    r[i] = x % factors_[i];
    x /= factors_[i];
  }
  return r;
}

int GroupSpec::element_order(GroupElem a) const {
  long long result = 1;
  std::vector<int> r = residues(a);
  for (std::size_t i = 0; i < r.size(); ++i) {
    long long ord = factors_[i] / std::gcd(r[i], factors_[i]);
    result = std::lcm(result, ord);
  }
  return static_cast<int>(result);
}

std::string GroupSpec::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << "+";
    os << "Z" << factors_[i];
  }
  return os.str();
}

ResidueSet::ResidueSet(int k, std::vector<int> members) : k_(k), members_(std::move(members)) {
  if (k_ < 1) throw DomainError("residue set modulus must be >= 1");
  for (int m : members_) {
    if (m < 0 || m >= k_) {
      throw DomainError("residue " + std::to_string(m) + " outside [0," + std::to_string(k_) + ")");
    }
  }
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

ResidueSet ResidueSet::from_mask(int k, std::uint64_t mask) {
  if (k > 64) throw DomainError("from_mask supports k <= 64");
  std::vector<int> members;
  for (int i = 0; i < k; ++i) {
    if (mask >> i & 1U) members.push_back(i);
  }
  return ResidueSet(k, std::move(members));
}

bool ResidueSet::contains(int x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

ResidueSet ResidueSet::shifted(int t) const {
  std::vector<int> out;
  out.reserve(members_.size());
  int s = ((t % k_) + k_) % k_;
  for (int m : members_) out.push_back((m + s) % k_);
  return ResidueSet(k_, std::move(out));
}

namespace {

// B = A minus the element at index `omit`; tests B + x inside A.
bool shift_fits(const ResidueSet& a, std::size_t omit, int x) {
  const auto& m = a.members();
  const int k = a.modulus();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i == omit) continue;
    if (!a.contains((m[i] + x) % k)) return false;
  }
  return true;
}

}  // namespace

ResidueSet shift_set(const ResidueSet& a) {
  if (a.size() == 0) throw DomainError("shift_set requires a nonempty set");
  std::vector<int> out;
  for (int x = 0; x < a.modulus(); ++x) {
    for (std::size_t omit = 0; omit < a.size(); ++omit) {
      if (shift_fits(a, omit, x)) {
        out.push_back(x);
        break;
      }
    }
  }
  return ResidueSet(a.modulus(), std::move(out));
}

std::optional<NearApWitness> is_near_ap(const ResidueSet& a) {
  const int k = a.modulus();
  const auto n = static_cast<int>(a.size());
  if (n < 2 || n > k - 2) return std::nullopt;

  std::optional<NearApWitness> fallback;
  for (int x = 1; x < k; ++x) {
    for (std::size_t omit = 0; omit < a.size(); ++omit) {
      if (!shift_fits(a, omit, x)) continue;
      std::vector<int> base;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (i != omit) base.push_back(a.members()[i]);
      }
      NearApWitness w{ResidueSet(k, std::move(base)), x};
      if (w.base.shifted(x) == w.base) return w;
      if (!fallback) fallback = std::move(w);
    }
  }
  return fallback;
}

bool is_near_ap_witness(const ResidueSet& a, const NearApWitness& w) {
  const int k = a.modulus();
  if (w.base.modulus() != k) return false;
  if (a.size() < 2 || static_cast<int>(a.size()) > k - 2) return false;
  if (w.base.size() + 1 != a.size()) return false;
  if (w.shift % k == 0) return false;
  for (int b : w.base.members()) {
    if (!a.contains(b)) return false;
    if (!a.contains(((b + w.shift) % k + k) % k)) return false;
  }
  return true;
}

NearApClassification classify_near_ap(const ResidueSet& a) {
  NearApClassification out;
  out.witness = is_near_ap(a);
  if (!out.witness) return out;

  const int k = a.modulus();
  ResidueSet shifts = shift_set(a);

  std::vector<int> nonzero;
  for (int x : shifts.members()) {
    if (x != 0) nonzero.push_back(x);
  }

  // {0, a, -a} with a a unit?
  int unit = 0;
  if (!nonzero.empty() && nonzero.size() <= 2) {
    int cand = nonzero.front();
    bool symmetric = nonzero.size() == 1 || nonzero[1] == k - cand;
    if (symmetric && std::gcd(cand, k) == 1) unit = std::min(cand, k - cand);
  }

  for (int d = k - 1; d > 1; --d) {
    if (k % d != 0) continue;
    bool all = std::all_of(shifts.members().begin(), shifts.members().end(),
                           [d](int x) { return x % d == 0; });
    if (all) {
      out.tag = NearApClassification::Tag::kDivisorCase;
      out.divisor = d;
      out.tie = unit != 0;
      out.shifts = std::move(shifts);
      return out;
    }
  }
  if (unit != 0) {
    out.tag = NearApClassification::Tag::kUnitCase;
    out.unit = unit;
    out.shifts = std::move(shifts);
    return out;
  }

  std::ostringstream os;
  os << "near-AP in Z_" << k << " with shift set {";
  for (std::size_t i = 0; i < shifts.members().size(); ++i) os << (i ? "," : "") << shifts.members()[i];
  os << "} fits neither case";
  throw LemmaViolation(os.str());
}

std::string to_string(NearApClassification::Tag tag) {
  switch (tag) {
    case NearApClassification::Tag::kNotNearAp: return "NotNearAP";
    case NearApClassification::Tag::kDivisorCase: return "DivisorCase";
    case NearApClassification::Tag::kUnitCase: return "UnitCase";
  }
  return "?";
}

}  // namespace zsc
