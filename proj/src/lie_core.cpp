#include "kmvol/lie_core.hpp"

#include "kmvol/errors.hpp"
#include "exact_elimination.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

namespace kmvol {

char to_char(Family f) { return "ABCDEFG"[static_cast<int>(f)]; }

bool is_simply_laced(Family f) {
  return f == Family::A || f == Family::D || f == Family::E;
}

void validate(const AlgebraId& id) {
  const int r = id.rank;
  bool ok = false;
  switch (id.family) {
    case Family::A: ok = r >= 1 && r <= kMaxClassicalRank; break;
    case Family::B: ok = r >= 3 && r <= kMaxClassicalRank; break;
    case Family::C: ok = r >= 2 && r <= kMaxClassicalRank; break;
    case Family::D: ok = r >= 4 && r <= kMaxClassicalRank; break;
    case Family::E: ok = r >= 6 && r <= 8; break;
    case Family::F: ok = r == 4; break;
    case Family::G: ok = r == 2; break;
  }
  if (!ok)
    throw Error(ErrorCode::UnknownAlgebra,
                std::string("no finite algebra ") + to_char(id.family) + std::to_string(r));
  if (id.twist == Twist::twisted && is_simply_laced(id.family))
    throw Error(ErrorCode::TwistUnavailable,
                std::string("family ") + to_char(id.family) + " has no twisted over-extension");
}

std::string name(const AlgebraId& id) {
  std::string out(1, to_char(id.family));
  out += std::to_string(id.rank);
  if (id.twist == Twist::twisted) out += "(2)";
  if (id.extended) out += "++";
  return out;
}

namespace {

IntMatrix chain(int n) {
  IntMatrix a = IntMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 2;
    if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = -1;
  }
  return a;
}

void link(IntMatrix& a, int i, int j) { a(i, j) = a(j, i) = -1; }

// Chain whose last node is short: the last column carries the -2.
IntMatrix short_end_chain(int n) {
  IntMatrix a = chain(n);
  a(n - 2, n - 1) = -2;
  return a;
}

IntVector vec(std::initializer_list<int> xs) {
  IntVector v(static_cast<Eigen::Index>(xs.size()));
  int k = 0;
  for (int x : xs) v(k++) = x;
  return v;
}

IntVector ones_with_twos(int n, int first_ones, int last_ones) {
  IntVector m = IntVector::Constant(n, 2);
  for (int i = 0; i < first_ones; ++i) m(i) = 1;
  for (int i = 0; i < last_ones; ++i) m(n - 1 - i) = 1;
  return m;
}

AlgebraDatum untwisted_entry(const AlgebraId& id) {
  const int n = id.rank;
  switch (id.family) {
    case Family::A:
      return make_datum(id, chain(n), IntVector::Ones(n), "chain 1-2-...-n");
    case Family::B:
      return make_datum(id, short_end_chain(n), ones_with_twos(n, 1, 0),
                        "chain 1-...-n, node n short");
    case Family::C:
      // The Cartan matrix of B_n with unit labels: this reproduces the
      // tabulated S[C_n] = min(i,j)/4 including its node order. The true
      // C_n diagram with marks (2,...,2,1) gives the same S.
      return make_datum(id, short_end_chain(n), IntVector::Ones(n),
                        "chain 1-...-n, node n short; diag(S) = (1/4, 2/4, ..., n/4)");
    case Family::D: {
      IntMatrix a = chain(n - 1);
      a.conservativeResize(n, n);
      a.row(n - 1).setZero();
      a.col(n - 1).setZero();
      a(n - 1, n - 1) = 2;
      link(a, n - 3, n - 1);
      return make_datum(id, a, ones_with_twos(n, 1, 2),
                        "chain 1-...-(n-1), node n attached to node n-2");
    }
    case Family::E: {
      IntMatrix a;
      IntVector m;
      if (n == 6) {
        a = chain(5);
        a.conservativeResize(6, 6);
        a.row(5).setZero();
        a.col(5).setZero();
        a(5, 5) = 2;
        link(a, 2, 5);
        m = vec({1, 2, 3, 2, 1, 2});
        return make_datum(id, a, m, "chain 1-2-3-4-5, node 6 attached to node 3");
      }
      if (n == 7) {
        a = chain(6);
        a.conservativeResize(7, 7);
        a.row(6).setZero();
        a.col(6).setZero();
        a(6, 6) = 2;
        link(a, 2, 6);
        m = vec({2, 3, 4, 3, 2, 1, 2});
        return make_datum(id, a, m, "chain 1-...-6, node 7 attached to node 3");
      }
      a = chain(7);
      a.conservativeResize(8, 8);
      a.row(7).setZero();
      a.col(7).setZero();
      a(7, 7) = 2;
      link(a, 4, 7);
      m = vec({2, 3, 4, 5, 6, 4, 2, 3});
      return make_datum(id, a, m, "chain 1-...-7, node 8 attached to node 5");
    }
    case Family::F: {
      IntMatrix a = chain(4);
      a(1, 2) = -2;
      auto d = make_datum(id, a, vec({2, 3, 4, 2}), "chain 1-2-3-4, nodes 3 and 4 short");
      d.printed_labels = vec({2, 3, 2, 1});
      return d;
    }
    case Family::G: {
      IntMatrix a(2, 2);
      a << 2, -3, -1, 2;
      return make_datum(id, a, vec({2, 3}), "node 2 short");
    }
  }
  throw Error(ErrorCode::UnknownAlgebra, "unreachable family");
}

AlgebraDatum twisted_entry(const AlgebraId& id) {
  const int n = id.rank;
  AlgebraId partner = id;
  partner.twist = Twist::untwisted;
  AlgebraDatum d;
  switch (id.family) {
    case Family::B:
      d = make_datum(id, short_end_chain(n), IntVector::Ones(n),
                     "chain 1-...-n, node n short");
      partner.family = Family::C;
      break;
    case Family::C:
      if (n == 2) {
        // B2 = C2; node order chosen to coincide with the C2 entry.
        d = make_datum(id, short_end_chain(2), IntVector::Ones(2), "node 2 short");
        partner.family = Family::C;
      } else {
        IntMatrix a = chain(n);
        a(n - 1, n - 2) = -2;
        d = make_datum(id, a, ones_with_twos(n, 1, 1), "chain 1-...-n, node n long");
        partner.family = Family::B;
      }
      break;
    case Family::F: {
      IntMatrix a = chain(4);
      a(2, 1) = -2;
      d = make_datum(id, a, vec({2, 3, 2, 1}), "chain 1-2-3-4, nodes 1 and 2 short");
      break;
    }
    case Family::G: {
      IntMatrix a(2, 2);
      a << 2, -1, -3, 2;
      d = make_datum(id, a, vec({2, 1}), "node 1 short");
      break;
    }
    default:
      throw Error(ErrorCode::TwistUnavailable, "no twisted entry for " + name(id));
  }
  d.alias_of = partner;
  return d;
}

}  // namespace

AlgebraDatum make_datum(const AlgebraId& id, IntMatrix cartan, IntVector labels,
                        std::string note) {
  const Eigen::Index n = cartan.rows();
  if (n == 0 || cartan.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "Cartan matrix must be square and non-empty");
  if (labels.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "label vector length differs from rank");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (cartan(i, i) != 2)
      throw Error(ErrorCode::InvalidArgument, "Cartan diagonal entries must equal 2");
    if (labels(i) <= 0) throw Error(ErrorCode::InvalidArgument, "labels must be positive");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      if (cartan(i, j) > 0)
        throw Error(ErrorCode::InvalidArgument, "off-diagonal Cartan entries must be <= 0");
      if ((cartan(i, j) == 0) != (cartan(j, i) == 0))
        throw Error(ErrorCode::NotSymmetrizable, "Cartan zero pattern is not symmetric");
    }
  }
  AlgebraDatum d;
  d.id = id;
  d.cartan = std::move(cartan);
  d.labels = std::move(labels);
  d.node_order_note = std::move(note);
  return d;
}

AlgebraDatum catalog_entry(const AlgebraId& id) {
  validate(id);
  return id.twist == Twist::twisted ? twisted_entry(id) : untwisted_entry(id);
}

CatalogOverrides CatalogOverrides::parse(std::string_view text) {
  CatalogOverrides out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::size_t line_start = offset;
    offset += line.size() + 1;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string family;
    if (!(fields >> family)) continue;
    auto fail = [&](const std::string& why) {
      throw Error(ErrorCode::ParseError, "catalog record: " + why, line_start);
    };
    const std::string families = "ABCDEFG";
    if (family.size() != 1 || families.find(static_cast<char>(std::toupper(family[0]))) ==
                                  std::string::npos)
      fail("unknown family '" + family + "'");
    AlgebraId id;
    id.family = static_cast<Family>(families.find(static_cast<char>(std::toupper(family[0]))));
    std::string twist;
    if (!(fields >> id.rank >> twist) || id.rank < 1) fail("expected rank and twist");
    if (twist == "twisted") id.twist = Twist::twisted;
    else if (twist != "untwisted") fail("twist must be 'untwisted' or 'twisted'");
    validate(id);
    const int n = id.rank;
    IntMatrix a(n, n);
    IntVector m(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!(fields >> a(i, j))) fail("too few Cartan entries");
    for (int i = 0; i < n; ++i)
      if (!(fields >> m(i))) fail("too few labels");
    if (std::string extra; fields >> extra) fail("trailing field '" + extra + "'");
    auto d = make_datum(id, a, m, "user catalog");
    symmetrizer(d.cartan);
    out.entries_[id] = std::move(d);
  }
  return out;
}

CatalogOverrides CatalogOverrides::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read catalog file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

AlgebraDatum CatalogOverrides::entry(const AlgebraId& id) const {
  if (auto it = entries_.find(id); it != entries_.end()) {
    AlgebraDatum d = it->second;
    d.id.extended = id.extended;
    return d;
  }
  return catalog_entry(id);
}

RationalVector symmetrizer(const IntMatrix& cartan) {
  const Eigen::Index n = cartan.rows();
  RationalVector d(n);
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  // Propagate d_j = d_i A(j,i) / A(i,j) over each connected component.
  for (Eigen::Index root = 0; root < n; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    d(root) = 1;
    std::deque<Eigen::Index> queue{root};
    while (!queue.empty()) {
      const Eigen::Index i = queue.front();
      queue.pop_front();
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i || cartan(i, j) == 0) continue;
        const Rational dj = d(i) * Rational(cartan(j, i)) / Rational(cartan(i, j));
        if (!seen[j]) {
          seen[j] = true;
          d(j) = dj;
          queue.push_back(j);
        } else if (d(j) != dj) {
          throw Error(ErrorCode::NotSymmetrizable, "Cartan matrix is not symmetrizable");
        }
      }
    }
  }
  return d;
}

RationalMatrix invert_exact(const RationalMatrix& m) {
  if (m.rows() != m.cols())
    throw Error(ErrorCode::DimensionMismatch, "cannot invert a non-square matrix");
  const Eigen::Index n = m.rows();
  Integer scale;
  const Matrix<Integer> a = detail::clear_denominators(m, scale);
  Matrix<Integer> right;
  Vector<Integer> diag;
  if (!detail::bareiss_gauss_jordan(a, right, diag))
    throw Error(ErrorCode::SingularMatrix, "matrix is singular");
  // inverse(m) = scale * inverse(a)
  RationalMatrix inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) inv(i, j) = Rational(right(i, j) * scale, diag(i));
  return inv;
}

CartanData symmetrize_and_normalize(const AlgebraDatum& datum) {
  const Eigen::Index n = datum.cartan.rows();
  RationalVector d = symmetrizer(datum.cartan);
  const RationalVector m = datum.labels.cast<Rational>();
  const RationalMatrix a = datum.cartan.cast<Rational>();

  // Fix the overall scale of d by (1/2) m^T A diag(d) m = 1.
  const Rational theta2 = Rational(m.transpose() * a * d.asDiagonal() * m) / 2;
  if (theta2 <= 0)
    throw Error(ErrorCode::NotFiniteType, "highest-root norm is not positive");
  d /= theta2;

  CartanData cd;
  cd.datum = datum;
  cd.norms = d;
  cd.B = a * d.asDiagonal();
  if (cd.B != cd.B.transpose())
    throw Error(ErrorCode::NotSymmetrizable, "A diag(d) is not symmetric");
  try {
    cd.Binv = invert_exact(cd.B);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix)
      throw Error(ErrorCode::SingularMatrix, "symmetrized Cartan matrix is singular");
    throw;
  }
  cd.nvec.resize(n);
  for (Eigen::Index j = 0; j < n; ++j) cd.nvec(j) = m(j) * d(j);
  return cd;
}

namespace {

void require_finite_type(const IntMatrix& cartan) {
  const RationalVector d = symmetrizer(cartan);
  const RationalMatrix b = cartan.cast<Rational>() * d.asDiagonal();
  if (!leading_minors_positive(b))
    throw Error(ErrorCode::NotFiniteType, "Cartan matrix is not of finite type");
}

}  // namespace

RootList enumerate_positive_roots(const IntMatrix& cartan) {
  const Eigen::Index n = cartan.rows();
  require_finite_type(cartan);

  auto key = [](const IntVector& v) { return std::vector<int>(v.data(), v.data() + v.size()); };
  std::set<std::vector<int>> seen;
  std::vector<IntVector> roots;
  std::vector<IntVector> level;
  for (Eigen::Index i = 0; i < n; ++i) {
    IntVector e = IntVector::Zero(n);
    e(i) = 1;
    level.push_back(e);
    seen.insert(key(e));
  }
  // Classical types have at most n^2 positive roots; the exceptional
  // ones are covered by 120 (E8).
  const std::size_t bound = static_cast<std::size_t>(std::max<Eigen::Index>(n * n, 120));
  while (!level.empty()) {
    roots.insert(roots.end(), level.begin(), level.end());
    if (roots.size() > bound)
      throw Error(ErrorCode::NotFiniteType, "root generation exceeded the finite-type bound");
    std::vector<IntVector> next;
    for (const IntVector& beta : level) {
      for (Eigen::Index i = 0; i < n; ++i) {
        // p = length of the alpha_i-string below beta.
        int p = 0;
        IntVector down = beta;
        while (true) {
          down(i) -= 1;
          if (!seen.count(key(down))) break;
          ++p;
        }
        int pairing = 0;  // <beta, alpha_i^vee>
        for (Eigen::Index j = 0; j < n; ++j) pairing += beta(j) * cartan(j, i);
        if (p - pairing <= 0) continue;
        IntVector up = beta;
        up(i) += 1;
        if (seen.insert(key(up)).second) next.push_back(up);
      }
    }
    std::sort(next.begin(), next.end(),
              [&](const IntVector& x, const IntVector& y) { return key(x) > key(y); });
    level = std::move(next);
  }
  RootList out;
  out.roots = std::move(roots);
  out.heights.resize(static_cast<Eigen::Index>(out.roots.size()));
  for (std::size_t k = 0; k < out.roots.size(); ++k)
    out.heights(static_cast<Eigen::Index>(k)) = out.roots[k].sum();
  return out;
}

IntVector highest_root_marks(const IntMatrix& cartan) {
  const RootList roots = enumerate_positive_roots(cartan);
  const int top = roots.heights.maxCoeff();
  if ((roots.heights.array() == top).count() != 1)
    throw Error(ErrorCode::NotFiniteType, "no unique highest root (diagram not connected)");
  return roots.highest();
}

}  // namespace kmvol
