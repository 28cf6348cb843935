#include "nordgeom/families.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "nordgeom/connection.hpp"
#include "nordgeom/curvature.hpp"

#ifndef NORDGEOM_GOLDEN_DIR
#define NORDGEOM_GOLDEN_DIR "data/golden"
#endif

namespace nordgeom {

namespace {

std::size_t u(int i) { return static_cast<std::size_t>(i); }

std::vector<int> parse_key(const std::string& key) {
  std::vector<int> idx;
  std::stringstream in(key);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size() || v < 1) throw InputError("");
      idx.push_back(v - 1);
    } catch (const std::exception&) {
      throw InputError("bad index key '" + key + "'");
    }
  }
  return idx;
}

}  // namespace

const ParamList& family_params() {
  static const ParamList params(std::vector<std::string>{"lambda", "mu"});
  return params;
}

PaperFamilyInstance build_paper_family(const std::optional<Assignment>& assignment) {
  const ParamList& params = family_params();
  StructureConstants c = paper_family_constants(Scalar::variable(params, "lambda"), Scalar::variable(params, "mu"));
  if (assignment) {
    if (assignment->size() != 2 || !assignment->count("lambda") || !assignment->count("mu")) {
      throw InputError("a family assignment must bind exactly lambda and mu");
    }
    c = c.substituted(*assignment);
  }
  LieAlgebra algebra(std::move(c));
  if (auto v = w2_condition_check(algebra); !v) throw InternalInconsistencyError(v.describe());
  return PaperFamilyInstance{assignment, GeometrySetup(std::move(algebra), paper_frame())};
}

GoldenTable parse_golden_table(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("golden table is not valid JSON: ") + e.what());
  }
  try {
    GoldenTable t;
    t.name = doc.at("table").get<std::string>();
    t.quantity = doc.at("quantity").get<std::string>();
    t.symmetry_closure = doc.value("symmetry_closure", std::string("none"));
    t.unlisted_zero = doc.value("unlisted", std::string("zero")) == "zero";
    t.params = ParamList(doc.at("parameters").get<std::vector<std::string>>());
    if (doc.contains("entries")) {
      for (const auto& [key, value] : doc.at("entries").items()) {
        t.entries.emplace(parse_key(key), parse_scalar(value.get<std::string>(), t.params));
      }
    }
    if (doc.contains("scalars")) {
      for (const auto& [key, value] : doc.at("scalars").items()) {
        t.scalars.emplace(key, parse_scalar(value.get<std::string>(), t.params));
      }
    }
    static const std::vector<std::string> closures = {"none", "symmetric", "f_symmetries", "riemann"};
    if (std::find(closures.begin(), closures.end(), t.symmetry_closure) == closures.end()) {
      throw InputError("unknown symmetry_closure '" + t.symmetry_closure + "'");
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed golden table: ") + e.what());
  } catch (const ParseError& e) {
    throw InputError(std::string("bad expression in golden table: ") + e.what());
  }
}

GoldenTable load_golden_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read golden table " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_golden_table(buf.str());
}

const std::vector<std::string>& golden_table_names() {
  static const std::vector<std::string> names = {"LC1", "F1", "n2", "R1", "tau1", "s1", "W1"};
  return names;
}

std::vector<GoldenTable> load_golden_tables(const std::filesystem::path& dir) {
  std::vector<GoldenTable> tables;
  for (const auto& name : golden_table_names()) tables.push_back(load_golden_table(dir / (name + ".json")));
  return tables;
}

std::filesystem::path default_golden_dir() { return NORDGEOM_GOLDEN_DIR; }

namespace {

using Entries = std::map<std::vector<int>, Scalar>;

// Signed images of an index tuple under the closure's generators.
std::vector<std::pair<std::vector<int>, int>> generators(const std::string& closure, const std::vector<int>& k,
                                                         const FrameStructure& frame) {
  if (closure == "symmetric") return {{{k[1], k[0]}, 1}};
  if (closure == "riemann") {
    return {{{k[1], k[0], k[2], k[3]}, -1}, {{k[0], k[1], k[3], k[2]}, -1}, {{k[2], k[3], k[0], k[1]}, 1}};
  }
  if (closure == "f_symmetries") {
    // J X_j = s_j X_{j'} for a signed permutation J.
    auto image = [&](int j) {
      for (int a = 0; a < frame.dim(); ++a) {
        if (frame.j()(j, a) != 0) return std::make_pair(a, sgn(frame.j()(j, a)));
      }
      return std::make_pair(j, 0);
    };
    const auto [j2, sj] = image(k[1]);
    const auto [k2, sk] = image(k[2]);
    return {{{k[0], k[2], k[1]}, 1}, {{k[0], j2, k2}, sj * sk}};
  }
  return {};
}

bool signed_permutation(const RationalMatrix& m) {
  for (int i = 0; i < m.size(); ++i) {
    int nonzero = 0;
    for (int j = 0; j < m.size(); ++j) {
      if (m(i, j) == 0) continue;
      if (abs(m(i, j)) != 1) return false;
      ++nonzero;
    }
    if (nonzero != 1) return false;
  }
  return true;
}

}  // namespace

std::map<std::vector<int>, Scalar> expand_closure(const GoldenTable& table, const FrameStructure& frame) {
  if (table.symmetry_closure == "f_symmetries" && !signed_permutation(frame.j())) {
    throw InputError("f_symmetries closure needs J to be a signed permutation of the frame");
  }
  Entries out;
  for (const auto& [key, value] : table.entries) {
    std::deque<std::pair<std::vector<int>, Scalar>> queue{{key, value}};
    while (!queue.empty()) {
      auto [k, v] = std::move(queue.front());
      queue.pop_front();
      auto it = out.find(k);
      if (it != out.end()) {
        if (!(it->second == v)) {
          throw InputError("table " + table.name + " is inconsistent with its symmetries at (" + index_key(k) +
                           "): " + to_string(it->second) + " vs " + to_string(v));
        }
        continue;
      }
      out.emplace(k, v);
      for (auto& [image, sign] : generators(table.symmetry_closure, k, frame)) {
        queue.emplace_back(image, v * Rational(sign));
      }
    }
  }
  return out;
}

namespace {

class TableChecker {
 public:
  TableChecker(const GoldenTable& table, const PaperFamilyInstance& instance)
      : table_(table), instance_(instance), result_{table.name, true, {}} {}

  Scalar expected(const Scalar& s) const {
    if (!(s.params() == instance_.setup.params())) {
      throw InputError("table " + table_.name + " uses a different parameter list");
    }
    return instance_.assignment ? substitute(s, *instance_.assignment) : s;
  }

  void compare(const std::string& key, const Scalar& want, const Scalar& got) {
    const Scalar e = expected(want);
    if (!(e == got)) {
      result_.pass = false;
      result_.diffs.push_back({key, to_string(e), to_string(got)});
    }
  }

  void compare_tensor(const Tensor& computed, const FrameStructure& frame) {
    const Entries full = expand_closure(table_, frame);
    for (const auto& [k, v] : full) {
      if (static_cast<int>(k.size()) != computed.rank()) {
        throw InputError("table " + table_.name + " has an index key of the wrong rank");
      }
    }
    for (std::size_t f = 0; f < computed.size(); ++f) {
      const auto idx = computed.index_of(f);
      auto it = full.find(idx);
      if (it != full.end()) {
        compare(index_key(idx), it->second, computed.flat(f));
      } else if (table_.unlisted_zero) {
        compare(index_key(idx), Scalar::zero(instance_.setup.params()), computed.flat(f));
      }
    }
  }

  void compare_scalar(const std::string& name, const Scalar& computed) {
    auto it = table_.scalars.find(name);
    if (it != table_.scalars.end()) compare(name, it->second, computed);
  }

  TableResult take() { return std::move(result_); }

 private:
  const GoldenTable& table_;
  const PaperFamilyInstance& instance_;
  TableResult result_;
};

}  // namespace

std::vector<TableResult> verify_golden_tables(const PaperFamilyInstance& instance,
                                              const std::vector<GoldenTable>& tables) {
  const GeometrySetup& setup = instance.setup;
  const ConnectionTable conn = levi_civita(setup);
  const FTensor f = f_tensor(setup, conn);
  const CurvatureTensor curv = curvature_tensor(setup, conn);
  const RicciData ricci = ricci_and_scalars(setup, curv);

  std::vector<TableResult> results;
  for (const auto& table : tables) {
    TableChecker check(table, instance);
    try {
      if (table.quantity == "connection") {
        check.compare_tensor(conn.gamma, setup.frame());
      } else if (table.quantity == "F") {
        check.compare_tensor(f.f, setup.frame());
      } else if (table.quantity == "nabla_j_norm") {
        check.compare_scalar("nabla_j_norm", nabla_j_square_norm(setup, f));
      } else if (table.quantity == "curvature") {
        check.compare_tensor(curv.r, setup.frame());
      } else if (table.quantity == "ricci") {
        check.compare_tensor(ricci.rho, setup.frame());
        check.compare_scalar("tau", ricci.tau);
        check.compare_scalar("tau_star", ricci.tau_star);
        check.compare_scalar("tau_star_star", ricci.tau_star_star);
      } else if (table.quantity == "sectional") {
        for (const auto& [key, value] : table.entries) {
          if (key.size() != 2) throw InputError("sectional entries are keyed by a pair of frame indices");
          const auto sec =
              sectional_curvature(setup, curv, basis_vector(setup.params(), setup.dim(), key[0]),
                                  basis_vector(setup.params(), setup.dim(), key[1]));
          check.compare(index_key(key), value, sec.value ? *sec.value : Scalar::zero(setup.params()));
        }
      } else if (table.quantity == "weyl") {
        check.compare_tensor(weyl_tensor(setup, curv, ricci), setup.frame());
      } else {
        throw InputError("unknown table quantity '" + table.quantity + "'");
      }
      results.push_back(check.take());
    } catch (const Error& e) {
      TableResult r = check.take();
      r.pass = false;
      r.diffs.push_back({"(table)", "valid table", e.what()});
      results.push_back(std::move(r));
    }
  }
  return results;
}

namespace {

// Frame change Y_i = sum_a A(i, a) X_a applied to structure constants.
StructureConstants change_frame(const StructureConstants& c, const RationalMatrix& a) {
  const int n = c.dim();
  const RationalMatrix inv = *a.inverse();
  StructureConstants out(n, c.params());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      std::vector<Rational> v(u(n), Rational(0));
      for (int p = 0; p < n; ++p) {
        if (a(i, p) == 0) continue;
        for (int q = 0; q < n; ++q) {
          if (a(j, q) == 0 || p == q) continue;
          for (int r = 0; r < n; ++r) {
            const Scalar& coeff = c(p, q, r);
            if (!coeff.is_zero()) {
              const Rational w = a(i, p) * a(j, q) * coeff.constant_value();
              for (int d = 0; d < n; ++d) v[u(d)] += w * inv(r, d);
            }
          }
        }
      }
      for (int d = 0; d < n; ++d) out.set_bracket(i, j, d, Scalar(c.params(), v[u(d)]));
    }
  }
  return out;
}

// Frame changes of the adapted 4-frame that commute with J and preserve g.
// Y1 = a X1 + b X2, Y2 = -b X1 + a X2 with complex a, b (a^2 + b^2 = 1)
// acting through J, Y3 = J Y1, Y4 = J Y2.
RationalMatrix adapted_rotation(const Rational& ar, const Rational& ai, const Rational& br, const Rational& bi) {
  RationalMatrix m(4);
  // Y1 = ar X1 + ai X3 + br X2 + bi X4
  m(0, 0) = ar;
  m(0, 2) = ai;
  m(0, 1) = br;
  m(0, 3) = bi;
  // Y2 = -br X1 - bi X3 + ar X2 + ai X4
  m(1, 0) = -br;
  m(1, 2) = -bi;
  m(1, 1) = ar;
  m(1, 3) = ai;
  // Y3 = J Y1, Y4 = J Y2 with J X1 = X3, J X3 = -X1, J X2 = X4, J X4 = -X2.
  for (int row = 0; row < 2; ++row) {
    m(row + 2, 0) = -m(row, 2);
    m(row + 2, 2) = m(row, 0);
    m(row + 2, 1) = -m(row, 3);
    m(row + 2, 3) = m(row, 1);
  }
  return m;
}

bool within(const StructureConstants& c, int magnitude) {
  for (std::size_t k = 0; k < c.tensor().size(); ++k) {
    if (abs(c.tensor().flat(k).constant_value()) > magnitude) return false;
  }
  return true;
}

}  // namespace

std::optional<LieAlgebra> random_valid_algebra(std::uint64_t seed, int dim, int magnitude, const ParamList& params) {
  if (dim <= 0 || dim % 2 != 0) throw DimensionError("frame dimension must be even and positive");
  if (magnitude < 0) throw InputError("magnitude must be non-negative");
  if (magnitude == 0) return LieAlgebra(StructureConstants(dim, params));

  std::mt19937_64 rng(seed);
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto value = [&] { return Scalar(params, Rational(uniform(-magnitude, magnitude))); };
  auto nonzero_value = [&] {
    int v = 0;
    while (v == 0) v = uniform(-magnitude, magnitude);
    return Scalar(params, Rational(v));
  };

  constexpr int kAttempts = 200;
  const int strategies = dim == 4 ? 5 : 3;
  const int strategy = uniform(0, strategies - 1);
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    StructureConstants c(dim, params);
    switch (strategy) {
      case 0: {
        // A few random nonzero constants.
        const int count = uniform(1, 5);
        for (int t = 0; t < count; ++t) {
          const int i = uniform(0, dim - 1);
          int j = uniform(0, dim - 2);
          if (j >= i) ++j;
          c.set_bracket(i, j, uniform(0, dim - 1), nonzero_value());
        }
        break;
      }
      case 1: {
        // R x_D R^{dim-1}: one distinguished vector acting on an abelian ideal.
        const int a = uniform(0, dim - 1);
        for (int b = 0; b < dim; ++b) {
          if (b == a) continue;
          for (int k = 0; k < dim; ++k) {
            if (k != a && uniform(0, 2) == 0) c.set_bracket(a, b, k, value());
          }
        }
        break;
      }
      case 2: {
        // Strictly triangular brackets under a random relabelling: nilpotent
        // candidates.
        std::vector<int> perm(u(dim));
        for (int i = 0; i < dim; ++i) perm[u(i)] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int i = 0; i < dim; ++i) {
          for (int j = i + 1; j < dim; ++j) {
            for (int k = j + 1; k < dim; ++k) {
              if (uniform(0, 3) == 0) c.set_bracket(perm[u(i)], perm[u(j)], perm[u(k)], value());
            }
          }
        }
        break;
      }
      case 3: {
        // The two-parameter family in a randomly rotated adapted frame.
        const Rational lambda(uniform(-magnitude, magnitude));
        const Rational mu(uniform(-magnitude, magnitude));
        StructureConstants fam = paper_family_constants(Scalar(params, lambda), Scalar(params, mu));
        static const std::vector<std::array<int, 4>> rotations = {
            // a = ar + i ai, b = br + i bi, in units of 1/den, {ar, ai, br, bi} / den
            {1, 0, 0, 0}, {0, 0, 1, 0}, {3, 0, 4, 0}, {4, 0, -3, 0}, {5, 0, 0, 3}, {5, 0, 0, -3}, {0, 3, 5, 0},
        };
        static const std::vector<int> denominators = {1, 1, 5, 5, 4, 4, 4};
        const std::size_t r = u(uniform(0, static_cast<int>(rotations.size()) - 1));
        const Rational den(denominators[r]);
        const auto& q = rotations[r];
        c = change_frame(fam, adapted_rotation(Rational(q[0]) / den, Rational(q[1]) / den, Rational(q[2]) / den,
                                               Rational(q[3]) / den));
        break;
      }
      default: {
        // Sparse points of the linear W2 conditions; the eight dependent
        // constants are solved for, the rest are free.
        auto free = [&] { return uniform(0, 2) == 0 ? value() : Scalar::zero(params); };
        auto set = [&](int i, int j, int k, const Scalar& v) { c.set_bracket(i - 1, j - 1, k - 1, v); };
        auto get = [&](int i, int j, int k) { return c(i - 1, j - 1, k - 1); };
        const std::vector<std::array<int, 3>> free_slots = {
            {1, 2, 1}, {1, 2, 2}, {1, 2, 3}, {1, 2, 4}, {1, 3, 2}, {1, 3, 4}, {1, 4, 1}, {1, 4, 2},
            {1, 4, 3}, {1, 4, 4}, {2, 3, 1}, {2, 3, 2}, {2, 3, 3}, {2, 3, 4}, {2, 4, 1}, {2, 4, 3}};
        for (const auto& s : free_slots) set(s[0], s[1], s[2], free());
        set(1, 3, 1, get(1, 2, 4) - get(2, 3, 2));
        set(3, 4, 4, get(1, 3, 1) + get(1, 4, 2));
        set(1, 3, 3, -(get(1, 2, 2) + get(2, 3, 4)));
        set(3, 4, 2, -get(1, 3, 3) - get(1, 4, 4));
        set(2, 4, 4, get(1, 2, 1) - get(1, 4, 3));
        set(3, 4, 1, get(2, 4, 4) + get(2, 3, 3));
        set(2, 4, 2, -(get(1, 2, 3) + get(1, 4, 1)));
        set(3, 4, 3, -get(2, 4, 2) - get(2, 3, 1));
        break;
      }
    }
    if (!within(c, magnitude)) continue;
    if (!check_jacobi(c)) continue;
    return LieAlgebra(std::move(c));
  }
  return std::nullopt;
}

std::vector<int> derived_series_dimensions(const LieAlgebra& algebra) {
  const int n = algebra.dim();
  const Tensor& c = algebra.constants().tensor();
  for (std::size_t k = 0; k < c.size(); ++k)
    if (!c.flat(k).is_constant())
    throw InputError("derived series needs numeric structure constants; bind the parameters first");
  auto constant = [&](int i, int j, int k) { return algebra(i, j, k).constant_value(); };
  // Current subalgebra as a list of row vectors in echelon form.
  std::vector<std::vector<Rational>> basis;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> e(u(n), Rational(0));
    e[u(i)] = 1;
    basis.push_back(std::move(e));
  }
  auto reduce = [&](std::vector<std::vector<Rational>> rows) {
    std::vector<std::vector<Rational>> out;
    for (std::size_t col = 0; col < u(n); ++col) {
      std::size_t pivot = out.size();
      while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
      if (pivot >= rows.size()) continue;
      std::swap(rows[pivot], rows[out.size()]);
      auto& p = rows[out.size()];
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (r == out.size() || rows[r][col] == 0) continue;
        const Rational f = rows[r][col] / p[col];
        for (std::size_t k = 0; k < u(n); ++k) rows[r][k] -= f * p[k];
      }
      out.push_back(p);
      if (out.size() == rows.size()) break;
    }
    return out;
  };
  std::vector<int> dims = {n};
  for (;;) {
    std::vector<std::vector<Rational>> brackets;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = a + 1; b < basis.size(); ++b) {
        std::vector<Rational> v(u(n), Rational(0));
        for (int i = 0; i < n; ++i) {
          if (basis[a][u(i)] == 0) continue;
          for (int j = 0; j < n; ++j) {
            if (basis[b][u(j)] == 0 || i == j) continue;
            const Rational w = basis[a][u(i)] * basis[b][u(j)];
            for (int k = 0; k < n; ++k) v[u(k)] += w * constant(i, j, k);
          }
        }
        brackets.push_back(std::move(v));
      }
    }
    auto next = reduce(std::move(brackets));
    if (next.size() == basis.size()) return dims;
    basis = std::move(next);
    dims.push_back(static_cast<int>(basis.size()));
    if (basis.empty()) return dims;
  }
}

}  // namespace nordgeom
