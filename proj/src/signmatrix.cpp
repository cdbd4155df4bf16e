#include "tameconf/signmatrix.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "tameconf/errors.hpp"

namespace tameconf {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

IntMatrix parse_int_matrix(std::string_view text) {
  const auto rows = split(trim(text), ';');
  const auto n = static_cast<Eigen::Index>(rows.size());
  IntMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto cells = split(rows[i], ',');
    if (static_cast<Eigen::Index>(cells.size()) != n) {
      throw InvalidInput("matrix text: row " + std::to_string(i + 1) + " has " +
                         std::to_string(cells.size()) + " entries, expected " + std::to_string(n));
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      std::string cell(cells[j]);
      if (!cell.empty() && cell.front() == '+') cell.erase(0, 1);
      std::size_t used = 0;
      int v = 0;
      try {
        v = std::stoi(cell, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (cell.empty() || used != cell.size()) {
        throw InvalidInput("matrix text: bad entry '" + std::string(cells[j]) + "'");
      }
      m(i, j) = v;
    }
  }
  return m;
}

std::string format_int_matrix(const IntMatrix& m) {
  std::ostringstream out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i) out << ';';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
  }
  return out.str();
}

SignMatrix::SignMatrix(IntMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols()) {
    throw InvalidInput("sign matrix must be square with s >= 1");
  }
  for (Eigen::Index i = 0; i < entries_.rows(); ++i) {
    for (Eigen::Index j = 0; j < entries_.cols(); ++j) {
      const int v = entries_(i, j);
      if (i == j ? v != 0 : (v != 1 && v != -1)) {
        throw InvalidInput("sign matrix entry (" + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + ") = " + std::to_string(v));
      }
    }
  }
}

SignMatrix SignMatrix::parse(std::string_view text) { return SignMatrix(parse_int_matrix(text)); }

SignMatrix SignMatrix::permuted(std::span<const int> perm) const {
  const int s = size();
  if (static_cast<int>(perm.size()) != s) throw InvalidInput("permutation has wrong length");
  IntMatrix out(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) out(i, j) = entries_(perm[i], perm[j]);
  }
  return SignMatrix(std::move(out));
}

bool operator<(const SignMatrix& a, const SignMatrix& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  const auto& x = a.entries_.reshaped<Eigen::RowMajor>();
  const auto& y = b.entries_.reshaped<Eigen::RowMajor>();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

QrVerdict qr_test(const SignMatrix& s) {
  const int n = s.size();
  QrVerdict v;
  const IntMatrix sq = s.matrix() * s.matrix();
  v.diagonal.assign(sq.diagonal().begin(), sq.diagonal().end());
  std::vector<int> sorted = v.diagonal;
  std::sort(sorted.begin(), sorted.end());
  for (int k = 1; k <= n; ++k) {
    std::vector<int> want(n - k, n - 1);
    want.insert(want.end(), k, n - 2 * k + 1);
    std::sort(want.begin(), want.end());
    if (want == sorted) {
      v.is_qr = true;
      v.k = k;
      break;
    }
  }
  return v;
}

SignMatrix qr_matrix_of_primes(std::span<const u64> primes) {
  const int s = static_cast<int>(primes.size());
  if (s == 0) throw InvalidInput("qr_matrix_of_primes: empty prime list");
  for (int i = 0; i < s; ++i) {
    if (primes[i] == 2 || !is_prime(primes[i])) {
      throw InvalidInput("qr_matrix_of_primes: " + std::to_string(primes[i]) + " is not an odd prime");
    }
    for (int j = 0; j < i; ++j) {
      if (primes[i] == primes[j]) throw InvalidInput("qr_matrix_of_primes: repeated prime");
    }
  }
  IntMatrix m = IntMatrix::Zero(s, s);
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (i != j) m(i, j) = legendre(static_cast<i64>(primes[i]), primes[j]);
    }
  }
  return SignMatrix(std::move(m));
}

namespace {

using Bits = std::vector<u64>;

// Per-prime Legendre tables over the candidate list, built on first use.
// row[sigma]: q with (q / p) = sigma; col[sigma]: q with (p / q) = sigma.
class LegendreBitsets {
 public:
  explicit LegendreBitsets(std::vector<u64> primes)
      : primes_(std::move(primes)), words_((primes_.size() + 63) / 64), cache_(primes_.size()) {}

  std::size_t count() const { return primes_.size(); }
  std::size_t words() const { return words_; }
  u64 prime(std::size_t i) const { return primes_[i]; }

  const Bits& row(std::size_t a, int sigma) { return entry(a).row[sigma > 0]; }
  const Bits& col(std::size_t a, int sigma) { return entry(a).col[sigma > 0]; }

 private:
  struct Entry {
    bool ready = false;
    Bits row[2];
    Bits col[2];
  };

  Entry& entry(std::size_t a) {
    Entry& e = cache_[a];
    if (e.ready) return e;
    for (auto* b : {&e.row[0], &e.row[1], &e.col[0], &e.col[1]}) b->assign(words_, 0);
    const u64 p = primes_[a];
    for (std::size_t q = 0; q < primes_.size(); ++q) {
      if (q == a) continue;
      const u64 bit = u64{1} << (q % 64);
      e.row[legendre(static_cast<i64>(primes_[q]), p) > 0][q / 64] |= bit;
      e.col[legendre(static_cast<i64>(p), primes_[q]) > 0][q / 64] |= bit;
    }
    e.ready = true;
    return e;
  }

  std::vector<u64> primes_;
  std::size_t words_;
  std::vector<Entry> cache_;
};

bool search(const SignMatrix& s, LegendreBitsets& tab, std::vector<std::size_t>& chosen) {
  const int t = static_cast<int>(chosen.size());
  if (t == s.size()) return true;
  Bits cand(tab.words(), ~u64{0});
  if (tab.count() % 64) cand.back() = (u64{1} << (tab.count() % 64)) - 1;
  for (int i = 0; i < t; ++i) {
    // (p_t / p_i) = S(t, i) and (p_i / p_t) = S(i, t)
    const Bits& r = tab.row(chosen[i], s(t, i));
    const Bits& c = tab.col(chosen[i], s(i, t));
    for (std::size_t w = 0; w < cand.size(); ++w) cand[w] &= r[w] & c[w];
  }
  for (std::size_t w = 0; w < cand.size(); ++w) {
    u64 bits = cand[w];
    while (bits) {
      const std::size_t q = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
      bits &= bits - 1;
      if (std::find(chosen.begin(), chosen.end(), q) != chosen.end()) continue;
      chosen.push_back(q);
      if (search(s, tab, chosen)) return true;
      chosen.pop_back();
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<u64>> find_primes_for_sign_matrix(const SignMatrix& s, u64 bound) {
  if (bound < 3) throw InvalidInput("find_primes_for_sign_matrix: bound must be >= 3");
  auto all = primes_up_to(bound);
  all.erase(all.begin());  // drop 2
  if (all.size() < static_cast<std::size_t>(s.size())) return std::nullopt;
  LegendreBitsets tab(std::move(all));
  std::vector<std::size_t> chosen;
  if (!search(s, tab, chosen)) return std::nullopt;
  std::vector<u64> out;
  for (std::size_t i : chosen) out.push_back(tab.prime(i));
  return out;
}

SignMatrix inertial_degree_matrix(int s, int r) {
  if (s < 1) throw InvalidInput("inertial_degree_matrix: s must be >= 1");
  const int hi = s == 1 ? 0 : s;
  if (r < 0 || r > hi) {
    throw InvalidInput("inertial_degree_matrix: r = " + std::to_string(r) + " outside [0, " +
                       std::to_string(hi) + "]");
  }
  IntMatrix m = IntMatrix::Ones(s, s);
  m.diagonal().setZero();
  if (r == 1) {
    // A -1 in row i alone makes l_i inert in one quadratic factor.
    m(0, 1) = -1;
  } else if (r >= 2) {
    for (int j = 1; j < r; ++j) m(0, j) = m(j, 0) = -1;
  }
  return SignMatrix(std::move(m));
}

SignMatrix canonical_class(const SignMatrix& s) {
  const int n = s.size();
  if (n > 8) throw ResourceLimit("canonical_class: s > 8 is outside the enumeration cap");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  SignMatrix best = s;
  do {
    SignMatrix c = s.permuted(perm);
    if (c < best) best = std::move(c);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

CensusCounts census(int s) {
  if (s < 1 || s > 5) throw InvalidInput("census: s must lie in [1, 5]");
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < s; ++i) {
    for (int j = 0; j < s; ++j) {
      if (i != j) slots.emplace_back(i, j);
    }
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end())) perms.push_back(perm);

  CensusCounts counts;
  const std::uint64_t total = std::uint64_t{1} << slots.size();
  std::vector<int> a(s * s, 0);
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    for (std::size_t b = 0; b < slots.size(); ++b) {
      a[slots[b].first * s + slots[b].second] = (mask >> b) & 1 ? -1 : 1;
    }
    bool canonical = true;
    for (const auto& p : perms) {
      int cmp = 0;
      for (int idx = 0; idx < s * s && cmp == 0; ++idx) {
        const int v = a[p[idx / s] * s + p[idx % s]];
        cmp = (v > a[idx]) - (v < a[idx]);
      }
      if (cmp < 0) {
        canonical = false;
        break;
      }
    }
    if (!canonical) continue;
    ++counts.sign_classes;
    IntMatrix m(s, s);
    for (int idx = 0; idx < s * s; ++idx) m(idx / s, idx % s) = a[idx];
    if (qr_test(SignMatrix(std::move(m))).is_qr) ++counts.qr_classes;
  }
  return counts;
}

}  // namespace tameconf
