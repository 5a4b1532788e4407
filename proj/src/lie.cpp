#include "modsym/lie.hpp"

#include <cmath>
#include <complex>
#include <regex>

#include "modsym/linalg.hpp"

namespace modsym {

namespace {

Eigen::MatrixXd gram_of(const std::vector<Eigen::MatrixXd>& basis) {
  const int d = static_cast<int>(basis.size());
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j <= i; ++j) g(i, j) = g(j, i) = (basis[i].array() * basis[j].array()).sum();
  return g;
}

} // namespace

LieAlgebra::LieAlgebra(std::string name, std::vector<Eigen::MatrixXd> basis, bool complex_embedded,
                       Tolerances tol)
    : name_(std::move(name)), basis_(std::move(basis)), complex_embedded_(complex_embedded) {
  if (basis_.empty()) throw DomainError("LieAlgebra: empty basis");
  ambient_ = static_cast<int>(basis_[0].rows());
  for (const auto& e : basis_)
    if (e.rows() != ambient_ || e.cols() != ambient_)
      throw DomainError("LieAlgebra: basis matrices must be square and of equal size");
  gram_ = gram_of(basis_);
  gram_solver_.compute(gram_);
  const int d = dim();

  structure_.assign(d, Eigen::MatrixXd::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) {
      const Eigen::MatrixXd br = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      const Eigen::VectorXd c = coords_of(br, 1e-8);
      for (int k = 0; k < d; ++k) {
        structure_[k](i, j) = c(k);
        structure_[k](j, i) = -c(k); // antisymmetry exact by construction
      }
    }
  validate(tol);
}

LieAlgebra::LieAlgebra(std::string name, std::vector<Eigen::MatrixXd> basis,
                       const std::vector<Eigen::MatrixXd>& structure, bool complex_embedded,
                       Tolerances tol)
    : name_(std::move(name)), basis_(std::move(basis)), structure_(structure),
      complex_embedded_(complex_embedded) {
  if (basis_.empty()) throw DomainError("LieAlgebra: empty basis");
  ambient_ = static_cast<int>(basis_[0].rows());
  const int d = dim();
  for (const auto& e : basis_)
    if (e.rows() != ambient_ || e.cols() != ambient_)
      throw DomainError("LieAlgebra: basis matrices must be square and of equal size");
  if (static_cast<int>(structure_.size()) != d)
    throw DomainError("LieAlgebra: structure tensor must have dim slices");
  for (const auto& s : structure_)
    if (s.rows() != d || s.cols() != d)
      throw DomainError("LieAlgebra: structure slices must be dim x dim");
  gram_ = gram_of(basis_);
  gram_solver_.compute(gram_);
  validate(tol);
}

void LieAlgebra::validate(Tolerances tol) const {
  const int d = dim();

  // Linear independence: trace Gram matrix must be (numerically) nonsingular.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_);
  const double lam_min = es.eigenvalues()(0), lam_max = es.eigenvalues()(d - 1);
  if (!(lam_min > 1e-12 * std::max(1.0, lam_max)))
    throw NumericalError("LieAlgebra '" + name_ + "': basis is not linearly independent");

  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (structure_[k](i, j) != -structure_[k](j, i))
          throw NumericalError("LieAlgebra '" + name_ +
                               "': structure constants are not antisymmetric as stored");

  // Matrix brackets must reproduce the stored structure constants entrywise.
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) {
      Eigen::MatrixXd expect = Eigen::MatrixXd::Zero(ambient_, ambient_);
      for (int k = 0; k < d; ++k) expect += structure_[k](i, j) * basis_[k];
      const Eigen::MatrixXd br = basis_[i] * basis_[j] - basis_[j] * basis_[i];
      if ((br - expect).cwiseAbs().maxCoeff() > tol.bracket)
        throw NumericalError("LieAlgebra '" + name_ +
                             "': matrix brackets do not match structure constants");
    }

  // Jacobi identity in structure-constant form.
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      for (int k = j + 1; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double s = 0.0;
          for (int m = 0; m < d; ++m)
            s += structure_[m](j, k) * structure_[l](i, m) +
                 structure_[m](k, i) * structure_[l](j, m) +
                 structure_[m](i, j) * structure_[l](k, m);
          if (std::abs(s) > tol.jacobi)
            throw NumericalError("LieAlgebra '" + name_ + "': Jacobi identity violated");
        }
}

Eigen::VectorXd LieAlgebra::coords_of(const Eigen::MatrixXd& m, double span_tol) const {
  if (m.rows() != ambient_ || m.cols() != ambient_)
    throw DomainError("coords_of: matrix has wrong ambient size");
  const int d = dim();
  Eigen::VectorXd b(d);
  for (int i = 0; i < d; ++i) b(i) = (basis_[i].array() * m.array()).sum();
  Eigen::VectorXd x = gram_solver_.solve(b);
  Eigen::MatrixXd recon = Eigen::MatrixXd::Zero(ambient_, ambient_);
  for (int i = 0; i < d; ++i) recon += x(i) * basis_[i];
  if ((recon - m).norm() > span_tol * std::max(1.0, m.norm()))
    throw NumericalError("coords_of: matrix is not in the span of the basis");
  return x;
}

Eigen::MatrixXd LieAlgebra::matrix_of(const Eigen::VectorXd& coords) const {
  if (coords.size() != dim()) throw DomainError("matrix_of: wrong coordinate dimension");
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ambient_, ambient_);
  for (int i = 0; i < dim(); ++i) m += coords(i) * basis_[i];
  return m;
}

Eigen::VectorXd LieAlgebra::bracket_coords(const Eigen::VectorXd& a,
                                           const Eigen::VectorXd& b) const {
  const int d = dim();
  if (a.size() != d || b.size() != d) throw DomainError("bracket_coords: wrong dimension");
  Eigen::VectorXd out(d);
  for (int k = 0; k < d; ++k) out(k) = a.dot(structure_[k] * b);
  return out;
}

AlgebraElement element(AlgebraPtr algebra, const Eigen::VectorXd& coords) {
  if (!algebra) throw DomainError("element: null algebra");
  if (coords.size() != algebra->dim()) throw DomainError("element: wrong coordinate dimension");
  return AlgebraElement{std::move(algebra), coords};
}

AlgebraElement bracket(const AlgebraElement& a, const AlgebraElement& b) {
  if (!a.algebra || !b.algebra || !a.algebra->same_algebra(*b.algebra))
    throw DomainError("bracket: elements belong to different algebras");
  return AlgebraElement{a.algebra, a.algebra->bracket_coords(a.coords, b.coords)};
}

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() != m.cols()) throw DomainError("matrix_exp: matrix must be square");
  if (!(tol > 0.0)) throw DomainError("matrix_exp: tol must be positive");
  if (!m.allFinite()) throw DomainError("matrix_exp: non-finite entries");
  const Eigen::Index n = m.rows();

  const double nrm = m.norm();
  int squarings = 0;
  if (nrm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(nrm / 0.5)));
  const Eigen::MatrixXd x = m / std::ldexp(1.0, squarings);

  // Taylor series of the scaled matrix; with ||x|| <= 1/2 the terms decay
  // faster than 2^-k / k!, so this converges in ~20 terms.
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  const double stop = std::min(tol, 1e-16);
  for (int k = 1; k <= 64; ++k) {
    term = (term * x) / static_cast<double>(k);
    sum += term;
    if (term.norm() <= stop * sum.norm()) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

AlgebraElement adjoint(const Eigen::MatrixXd& g, const AlgebraElement& a, double span_tol) {
  const auto& alg = *a.algebra;
  if (g.rows() != alg.ambient() || g.cols() != alg.ambient())
    throw DomainError("adjoint: g has wrong ambient size");
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible()) throw DomainError("adjoint: g is singular");
  const Eigen::MatrixXd conj = g * a.matrix() * lu.inverse();
  try {
    return AlgebraElement{a.algebra, alg.coords_of(conj, span_tol)};
  } catch (const NumericalError&) {
    throw NumericalError("adjoint: g is not in the normalizer of '" + alg.name() + "'");
  }
}

namespace {

using Cplx = std::complex<double>;

Eigen::MatrixXcd unit_entry(int n, int r, int c, Cplx v) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  m(r, c) = v;
  return m;
}

std::vector<Eigen::MatrixXd> u_basis(int n) {
  const Cplx I(0.0, 1.0);
  std::vector<Eigen::MatrixXcd> b;
  for (int k = 0; k < n; ++k) b.push_back(unit_entry(n, k, k, I));
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      b.push_back(unit_entry(n, j, k, 1.0) + unit_entry(n, k, j, -1.0));
      b.push_back(unit_entry(n, j, k, I) + unit_entry(n, k, j, I));
    }
  std::vector<Eigen::MatrixXd> out;
  out.reserve(b.size());
  for (const auto& m : b) out.push_back(realify(m));
  return out;
}

std::vector<Eigen::MatrixXd> su_basis(int n) {
  const Cplx I(0.0, 1.0);
  std::vector<Eigen::MatrixXcd> b;
  for (int k = 0; k + 1 < n; ++k)
    b.push_back(unit_entry(n, k, k, I) + unit_entry(n, k + 1, k + 1, -I));
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      b.push_back(unit_entry(n, j, k, 1.0) + unit_entry(n, k, j, -1.0));
      b.push_back(unit_entry(n, j, k, I) + unit_entry(n, k, j, I));
    }
  std::vector<Eigen::MatrixXd> out;
  out.reserve(b.size());
  for (const auto& m : b) out.push_back(realify(m));
  return out;
}

std::vector<Eigen::MatrixXd> so_basis(int n) {
  std::vector<Eigen::MatrixXd> b;
  for (int a = 0; a < n; ++a)
    for (int c = a + 1; c < n; ++c) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
      m(a, c) = 1.0;
      m(c, a) = -1.0;
      b.push_back(m);
    }
  return b;
}

std::vector<Eigen::MatrixXd> torus_basis(int k) {
  const Cplx I(0.0, 1.0);
  std::vector<Eigen::MatrixXd> b;
  for (int j = 0; j < k; ++j) b.push_back(realify(unit_entry(k, j, j, I)));
  return b;
}

struct CatalogKey {
  std::string family; // "u", "su", "so", "torus", "r"
  int n = 0;
};

CatalogKey parse_key(const std::string& raw) {
  std::string key;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) key += c;
  if (key == "r" || key == "line") return {"r", 1};
  if (key == "circle") return {"torus", 1};
  static const std::regex re(R"(^(u|su|so|torus)\((\d+)\)$)");
  std::smatch m;
  if (!std::regex_match(key, m, re))
    throw DomainError("builtin_algebra: unknown catalog key '" + raw + "'");
  return {m[1].str(), std::stoi(m[2].str())};
}

} // namespace

AlgebraPtr builtin_algebra(const std::string& key) {
  const CatalogKey k = parse_key(key);
  if (k.family == "r")
    return std::make_shared<LieAlgebra>(
        "r", std::vector<Eigen::MatrixXd>{Eigen::MatrixXd::Ones(1, 1)}, false);
  if (k.family == "torus") {
    if (k.n < 1 || k.n > 4) throw DomainError("builtin_algebra: torus(k) requires 1 <= k <= 4");
    return std::make_shared<LieAlgebra>("torus(" + std::to_string(k.n) + ")", torus_basis(k.n),
                                        true);
  }
  if (k.n < 1 || k.n > 8) throw DomainError("builtin_algebra: requires 1 <= n <= 8");
  const std::string name = k.family + "(" + std::to_string(k.n) + ")";
  if (k.family == "u") return std::make_shared<LieAlgebra>(name, u_basis(k.n), true);
  if (k.family == "su") {
    if (k.n < 2) throw DomainError("builtin_algebra: su(n) requires n >= 2");
    if (k.n == 2) return std::make_shared<LieAlgebra>(name, spin_irrep(1), true);
    return std::make_shared<LieAlgebra>(name, su_basis(k.n), true);
  }
  if (k.family == "so") {
    if (k.n < 2) throw DomainError("builtin_algebra: so(n) requires n >= 2");
    return std::make_shared<LieAlgebra>(name, so_basis(k.n), false);
  }
  throw DomainError("builtin_algebra: unknown catalog key '" + key + "'");
}

bool catalog_key_is_compact(const std::string& key) { return parse_key(key).family != "r"; }

std::vector<Eigen::MatrixXcd> spin_irrep_complex(int two_j) {
  if (two_j < 0) throw DomainError("spin_irrep: two_j must be nonnegative");
  const int n = two_j + 1;
  const double j = 0.5 * two_j;
  const Cplx I(0.0, 1.0);

  // Basis ordered by descending magnetic number m_a = j - a.
  Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < n; ++a) jz(a, a) = j - a;
  for (int a = 1; a < n; ++a) {
    const double m = j - a;
    jp(a - 1, a) = std::sqrt(j * (j + 1) - m * (m + 1));
  }
  const Eigen::MatrixXcd jm = jp.adjoint();
  const Eigen::MatrixXcd jx = 0.5 * (jp + jm);
  const Eigen::MatrixXcd jy = -0.5 * I * (jp - jm);
  return {-I * jx, -I * jy, -I * jz};
}

std::vector<Eigen::MatrixXd> spin_irrep(int two_j) {
  std::vector<Eigen::MatrixXd> out;
  for (const auto& m : spin_irrep_complex(two_j)) out.push_back(realify(m));
  return out;
}

} // namespace modsym
