#include "qcrystal/error.hpp"
#include "qcrystal/module.hpp"

namespace qcrystal {

std::size_t StringData::count_at_least(int n) const {
  std::size_t c = 0;
  for (const auto& b : blocks)
    if (b.n >= n) c += b.kernel.size();
  return c;
}

std::vector<std::pair<int, QVector>> StringData::components(const QVector& x) const {
  const QVector c = Sinv * x;
  std::vector<std::pair<int, QVector>> out;
  for (const auto& b : blocks) {
    if (b.kernel.empty()) continue;
    QVector u(b.kernel[0].size());
    for (std::size_t k = 0; k < b.kernel.size(); ++k)
      if (!c[b.offset + k].is_zero()) u = add(u, scale(c[b.offset + k], b.kernel[k]));
    out.emplace_back(b.n, std::move(u));
  }
  return out;
}

namespace {

QMatrix image_columns(const QMatrix& m, const std::vector<QVector>& cols) {
  QMatrix out(m.rows(), cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) out.set_column(k, m * cols[k]);
  return out;
}

}  // namespace

const StringData& GradedModule::strings(Index i, const RootVec& a) {
  auto key = std::make_pair(i, a);
  if (auto it = string_cache_.find(key); it != string_cache_.end()) return *it->second;
  auto sd = std::make_unique<StringData>();
  const std::size_t D = dim(a);
  RootVec up = a, down = a;
  ++up[i];
  --down[i];
  const std::size_t Dup = dim(up);
  const std::size_t Ddown = a[i] > 0 ? dim(down) : 0;

  std::vector<QVector> s_cols, f_cols, e_cols;
  std::vector<std::size_t> sizes;
  for (int n = 0; n <= a[i]; ++n) {
    RootVec beta = a;
    beta[i] -= n;
    const std::size_t db = dim(beta);
    if (db == 0) continue;
    std::vector<QVector> K;
    if (beta[i] == 0) {
      for (std::size_t k = 0; k < db; ++k) {
        QVector e(db);
        e[k] = ScalarQ(1);
        K.push_back(std::move(e));
      }
    } else {
      K = kernel_basis(e_matrix(i, beta));
    }
    if (K.empty()) continue;
    const QMatrix F = image_columns(fpow(i, beta, n), K);
    const std::size_t r = rank(F);
    if (r == 0) continue;
    if (r != K.size())
      throw Error(ErrorKind::ReconstructionFailed,
                  "f^(" + std::to_string(n) + ") is neither injective nor zero on the kernel at " +
                      root_to_string(beta));
    sd->blocks.push_back({n, beta, K, s_cols.size()});
    for (std::size_t k = 0; k < K.size(); ++k) s_cols.push_back(F.column(k));
    const QMatrix Fn1 = image_columns(fpow(i, beta, n + 1), K);
    for (std::size_t k = 0; k < K.size(); ++k) f_cols.push_back(Fn1.column(k));
    if (n == 0) {
      for (std::size_t k = 0; k < K.size(); ++k) e_cols.push_back(QVector(Ddown));
    } else {
      const QMatrix Fm1 = image_columns(fpow(i, beta, n - 1), K);
      for (std::size_t k = 0; k < K.size(); ++k) e_cols.push_back(Fm1.column(k));
    }
  }
  if (s_cols.size() != D)
    throw Error(ErrorKind::ReconstructionFailed, "string blocks have " + std::to_string(s_cols.size()) +
                                                     " columns, weight space " + root_to_string(a) +
                                                     " has dimension " + std::to_string(D));
  sd->S = QMatrix::from_columns(s_cols, D);
  try {
    sd->Sinv = inverse(sd->S);
  } catch (const Error&) {
    throw Error(ErrorKind::ReconstructionFailed, "string blocks are dependent at " + root_to_string(a));
  }
  sd->ftil = QMatrix::from_columns(f_cols, Dup) * sd->Sinv;
  sd->etil = QMatrix::from_columns(e_cols, Ddown) * sd->Sinv;
  if (d_.a(i, i) == 0) {
    QMatrix diag(D, D);
    for (const auto& b : sd->blocks)
      for (std::size_t k = 0; k < b.kernel.size(); ++k) diag.at(b.offset + k, b.offset + k) = ScalarQ(b.n + 1);
    sd->q_op = sd->S * diag * sd->Sinv;
  } else {
    sd->q_op = QMatrix::identity(D);
  }
  return *string_cache_.emplace(key, std::move(sd)).first->second;
}

}  // namespace qcrystal
