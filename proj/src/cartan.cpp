#include "qcrystal/cartan.hpp"

#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "qcrystal/error.hpp"

namespace qcrystal {

CartanDatum::CartanDatum(std::vector<std::vector<int>> a, std::vector<int> s,
                         std::vector<std::string> labels)
    : a_(std::move(a)), s_(std::move(s)), labels_(std::move(labels)) {
  auto v = validate(a_, s_);
  if (!v.empty()) {
    std::string msg;
    for (const auto& x : v) {
      if (!msg.empty()) msg += "; ";
      msg += "(" + std::to_string(x.row) + "," + std::to_string(x.col) + ") " + x.rule;
    }
    throw Error(ErrorKind::InvalidDatum, msg);
  }
  if (labels_.empty()) {
    for (int i = 0; i < n(); ++i) labels_.push_back(std::to_string(i + 1));
  } else if (static_cast<int>(labels_.size()) != n()) {
    throw Error(ErrorKind::InvalidDatum, "label count does not match matrix size");
  }
}

std::vector<Violation> CartanDatum::validate(const std::vector<std::vector<int>>& a,
                                             const std::vector<int>& s) {
  std::vector<Violation> out;
  const int n = static_cast<int>(a.size());
  if (n == 0) out.push_back({-1, -1, "index set is empty"});
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(a[i].size()) != n) {
      out.push_back({i, -1, "matrix is not square"});
      return out;
    }
  }
  if (static_cast<int>(s.size()) != n) {
    out.push_back({-1, -1, "symmetrizer count does not match matrix size"});
    return out;
  }
  for (int i = 0; i < n; ++i) {
    if (s[i] <= 0) out.push_back({i, i, "symmetrizer s_i must be positive"});
    int d = a[i][i];
    if (!(d == 2 || (d <= 0 && d % 2 == 0)))
      out.push_back({i, i, "a_ii = 2 or a_ii <= 0 and even"});
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a[i][j] > 0) out.push_back({i, j, "a_ij <= 0 for i != j"});
      if ((a[i][j] == 0) != (a[j][i] == 0))
        out.push_back({i, j, "a_ij = 0 if and only if a_ji = 0"});
      if (i < j && static_cast<long>(s[i]) * a[i][j] != static_cast<long>(s[j]) * a[j][i])
        out.push_back({i, j, "s_i a_ij = s_j a_ji"});
    }
  }
  return out;
}

int CartanDatum::c(Index i) const {
  if (is_real(i)) throw Error(ErrorKind::InvalidArgument, "c_i is undefined for a real index");
  return -a_[i][i] / 2;
}

RootVec CartanDatum::simple_root(Index i) const {
  RootVec r(a_.size(), 0);
  r[i] = 1;
  return r;
}

std::string CartanDatum::hash() const {
  // FNV-1a over the integer data.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](long x) {
    for (int b = 0; b < 8; ++b) {
      h ^= static_cast<std::uint64_t>((x >> (8 * b)) & 0xff);
      h *= 1099511628211ull;
    }
  };
  mix(n());
  for (const auto& row : a_)
    for (int x : row) mix(x);
  for (int x : s_) mix(x);
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

CartanDatum CartanDatum::from_json(const nlohmann::json& j) {
  try {
    auto a = j.at("matrix").get<std::vector<std::vector<int>>>();
    std::vector<int> s;
    if (j.contains("symmetrizers")) s = j.at("symmetrizers").get<std::vector<int>>();
    else s.assign(a.size(), 1);
    std::vector<std::string> labels;
    if (j.contains("labels")) {
      for (const auto& l : j.at("labels"))
        labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    }
    CartanDatum d(std::move(a), std::move(s), std::move(labels));
    if (j.contains("name")) d.set_name(j.at("name").get<std::string>());
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("datum: ") + e.what());
  }
}

nlohmann::json CartanDatum::to_json() const {
  nlohmann::json j;
  if (!name_.empty()) j["name"] = name_;
  j["matrix"] = a_;
  j["symmetrizers"] = s_;
  j["labels"] = labels_;
  return j;
}

std::vector<std::string> CartanDatum::builtin_names() {
  return {"sl2", "heis", "imag2", "gkm2", "monster3"};
}

CartanDatum CartanDatum::builtin(const std::string& name) {
  CartanDatum d;
  if (name == "sl2") d = CartanDatum({{2}}, {1});
  else if (name == "heis") d = CartanDatum({{0}}, {1});
  else if (name == "imag2") d = CartanDatum({{-2}}, {1});
  else if (name == "gkm2") d = CartanDatum({{2, -1}, {-1, 0}}, {1, 1});
  else if (name == "monster3") {
    // Indices -1, 1, 2 of the matrix a_ij = -(i+j).
    const int idx[3] = {-1, 1, 2};
    std::vector<std::vector<int>> a(3, std::vector<int>(3));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) a[r][c] = -(idx[r] + idx[c]);
    d = CartanDatum(a, {1, 1, 1}, {"-1", "1", "2"});
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown built-in datum '" + name + "'");
  }
  d.set_name(name);
  return d;
}

CartanDatum CartanDatum::load(const std::string& path_or_builtin) {
  for (const auto& b : builtin_names())
    if (b == path_or_builtin) return builtin(b);
  std::ifstream in(path_or_builtin);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open datum file '" + path_or_builtin + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, path_or_builtin + ": " + e.what());
  }
  CartanDatum d = from_json(j);
  if (d.name().empty()) d.set_name(path_or_builtin);
  return d;
}

int height(const RootVec& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

RootVec add_roots(const RootVec& a, const RootVec& b) {
  RootVec r = a;
  for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
  return r;
}

RootVec sub_roots(const RootVec& a, const RootVec& b) {
  RootVec r = a;
  for (std::size_t k = 0; k < b.size(); ++k) r[k] -= b[k];
  return r;
}

bool is_nonneg(const RootVec& a) {
  for (int x : a)
    if (x < 0) return false;
  return true;
}

std::vector<RootVec> roots_of_height(int n, int h) {
  std::vector<RootVec> out;
  RootVec cur(n, 0);
  // Distribute h among n slots, largest first entry first.
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == n - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int k = left; k >= 0; --k) {
      cur[pos] = k;
      self(self, pos + 1, left - k);
    }
  };
  if (n > 0) rec(rec, 0, h);
  return out;
}

int root_pairing(const CartanDatum& d, Index i, const RootVec& alpha) {
  int s = 0;
  for (int j = 0; j < d.n(); ++j) s += alpha[j] * d.a(i, j);
  return s;
}

int pairing(const CartanDatum& d, Index i, const std::vector<int>& lam, const RootVec& alpha) {
  return lam[i] - root_pairing(d, i, alpha);
}

int pairing(const CartanDatum& d, Index i, const WeightPoint& mu) {
  return pairing(d, i, mu.lam, mu.alpha);
}

int sym_bilinear(const CartanDatum& d, const RootVec& alpha, const WeightPoint& mu) {
  int s = 0;
  for (int i = 0; i < d.n(); ++i)
    if (alpha[i] != 0) s += alpha[i] * d.s(i) * pairing(d, i, mu);
  return s;
}

int sym_roots(const CartanDatum& d, const RootVec& alpha, const RootVec& beta) {
  int s = 0;
  for (int i = 0; i < d.n(); ++i)
    for (int j = 0; j < d.n(); ++j) s += alpha[i] * beta[j] * d.s(i) * d.a(i, j);
  return s;
}

RootVec root_of_word(int n, const Word& w) {
  RootVec r(n, 0);
  for (Index i : w) ++r[i];
  return r;
}

WeightPoint weight_of_word(const CartanDatum& d, const Word& w, const std::vector<int>& lam) {
  return WeightPoint{lam, root_of_word(d.n(), w)};
}

std::string root_to_string(const RootVec& a) {
  std::string s = "(";
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(a[k]);
  }
  return s + ")";
}

}  // namespace qcrystal
