#include "bergman/algebra.hpp"

#include <algorithm>

namespace bergman {

std::string rational_to_string(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

NcPolynomial NcPolynomial::constant(const Rational& c) {
  NcPolynomial p;
  p.add_term({}, c);
  return p;
}

NcPolynomial NcPolynomial::symbol(int32_t id) {
  NcPolynomial p;
  p.add_term({id}, Rational(1));
  return p;
}

void NcPolynomial::add_term(Monomial m, const Rational& c) {
  if (c == Rational(0)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), c);
  } else {
    it->second += c;
    if (it->second == Rational(0)) terms_.erase(it);
  }
}

NcPolynomial NcPolynomial::operator+(const NcPolynomial& o) const {
  NcPolynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

NcPolynomial NcPolynomial::operator-(const NcPolynomial& o) const {
  NcPolynomial r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
  return r;
}

NcPolynomial NcPolynomial::operator*(const NcPolynomial& o) const {
  NcPolynomial r;
  for (const auto& [m1, c1] : terms_) {
    for (const auto& [m2, c2] : o.terms_) {
      Monomial m = m1;
      m.insert(m.end(), m2.begin(), m2.end());
      r.add_term(std::move(m), c1 * c2);
    }
  }
  return r;
}

SymbolicMatrix::SymbolicMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

SymbolicMatrix SymbolicMatrix::identity(int n) {
  SymbolicMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = NcPolynomial::constant(Rational(1));
  return m;
}

NcPolynomial& SymbolicMatrix::at(int r, int c) {
  return entries_[r * cols_ + c];
}

const NcPolynomial& SymbolicMatrix::at(int r, int c) const {
  return entries_[r * cols_ + c];
}

SymbolicMatrix SymbolicMatrix::operator+(const SymbolicMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw PreconditionError("matrix addition: dimension mismatch");
  }
  SymbolicMatrix r(rows_, cols_);
  for (size_t i = 0; i < entries_.size(); ++i) {
    r.entries_[i] = entries_[i] + o.entries_[i];
  }
  return r;
}

SymbolicMatrix SymbolicMatrix::operator-(const SymbolicMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) {
    throw PreconditionError("matrix subtraction: dimension mismatch");
  }
  SymbolicMatrix r(rows_, cols_);
  for (size_t i = 0; i < entries_.size(); ++i) {
    r.entries_[i] = entries_[i] - o.entries_[i];
  }
  return r;
}

SymbolicMatrix SymbolicMatrix::operator*(const SymbolicMatrix& o) const {
  if (cols_ != o.rows_) {
    throw PreconditionError("matrix product: dimension mismatch");
  }
  SymbolicMatrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const NcPolynomial& left = at(i, k);
      if (left.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const NcPolynomial& right = o.at(k, j);
        if (right.is_zero()) continue;
        r.at(i, j) = r.at(i, j) + left * right;
      }
    }
  }
  return r;
}

SymbolicMatrix SymbolicMatrix::direct_sum(const SymbolicMatrix& o) const {
  SymbolicMatrix r(rows_ + o.rows_, cols_ + o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) r.at(i, j) = at(i, j);
  }
  for (int i = 0; i < o.rows_; ++i) {
    for (int j = 0; j < o.cols_; ++j) r.at(rows_ + i, cols_ + j) = o.at(i, j);
  }
  return r;
}

int32_t EpsilonContext::new_symbol(const std::string& name) {
  symbols_.push_back({name});
  return static_cast<int32_t>(symbols_.size()) - 1;
}

EpsilonContext::EpsilonContext(
    const BergmanPresentation& p,
    const std::optional<std::vector<Name>>& ordering)
    : pres_(p) {
  p.require_valid("matrix recipe input");
  if (ordering) {
    if (!is_admissible_ordering(p, *ordering)) {
      throw PreconditionError(
          "matrix recipe: supplied ordering is not admissible");
    }
    ordering_ = *ordering;
  } else {
    ordering_ = *first_admissible_ordering(p);
  }

  // Level 0: base generators. Within every level the declaration order
  // decides which generator becomes the complement block.
  levels_.push_back(p.base_generators());
  for (const auto& label : ordering_) {
    const ColouredRelation* rel = p.find_relation(label);
    std::vector<GeneratorId> level;
    for (const auto& g : p.generators()) {
      if (rel->rhs.multiplicity(g) > 0) level.push_back(g);
    }
    levels_.push_back(std::move(level));
  }

  for (size_t k = 0; k < levels_.size(); ++k) {
    const auto& level = levels_[k];
    if (level.empty()) continue;  // no base generators: empty presentation
    int dim = 1;
    SymbolicMatrix total = SymbolicMatrix::identity(1);
    if (k > 0) {
      const ColouredRelation* rel = pres_.find_relation(ordering_[k - 1]);
      // Admissibility: the lhs only uses generators of earlier levels, so
      // its matrix is already available.
      total = matrix_for(rel->lhs);
      dim = total.rows();
    }
    SymbolicMatrix sum(dim, dim);
    for (size_t l = 0; l + 1 < level.size(); ++l) {
      SymbolicMatrix m(dim, dim);
      for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) {
          m.at(r, c) = NcPolynomial::symbol(new_symbol(
              "eps[" + level[l].str() + "][" + std::to_string(r + 1) + "," +
              std::to_string(c + 1) + "]"));
        }
      }
      sum = sum + m;
      gen_matrix_.emplace(level[l], std::move(m));
      gen_dim_[level[l]] = dim;
    }
    gen_matrix_.emplace(level.back(), total - sum);
    gen_dim_[level.back()] = dim;
  }
}

int EpsilonContext::dimension(const FreeAbelianElement& e) const {
  long long d = 0;
  for (const auto& [g, m] : e.terms()) {
    auto it = gen_dim_.find(g);
    if (it == gen_dim_.end()) {
      throw PreconditionError("matrix recipe: no block for generator '" +
                              g.str() + "'");
    }
    d += m * it->second;
  }
  return static_cast<int>(d);
}

const SymbolicMatrix& EpsilonContext::generator_matrix(
    const GeneratorId& g) const {
  auto it = gen_matrix_.find(g);
  if (it == gen_matrix_.end()) {
    throw PreconditionError("matrix recipe: no block for generator '" +
                            g.str() + "'");
  }
  return it->second;
}

SymbolicMatrix EpsilonContext::matrix_for(const FreeAbelianElement& e) const {
  SymbolicMatrix out(0, 0);
  // Direct sum in declaration order, multiplicity many blocks each.
  for (const auto& g : pres_.generators()) {
    long long m = e.multiplicity(g);
    for (long long i = 0; i < m; ++i) {
      out = out.direct_sum(generator_matrix(g));
    }
  }
  if (out.rows() != dimension(e)) {
    throw InternalError("matrix recipe: block dimensions disagree");
  }
  return out;
}

std::vector<ScalarEquation> expand_matrix_relation(const SymbolicMatrix& lhs,
                                                   const SymbolicMatrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) {
    throw PreconditionError("matrix relation: dimension mismatch (" +
                            std::to_string(lhs.rows()) + "x" +
                            std::to_string(lhs.cols()) + " vs " +
                            std::to_string(rhs.rows()) + "x" +
                            std::to_string(rhs.cols()) + ")");
  }
  std::vector<ScalarEquation> eqs;
  for (int r = 0; r < lhs.rows(); ++r) {
    for (int c = 0; c < lhs.cols(); ++c) {
      eqs.push_back(
          {lhs.at(r, c), rhs.at(r, c), lhs.at(r, c) == rhs.at(r, c)});
    }
  }
  return eqs;
}

AlgebraPresentation build_algebra_presentation(
    const BergmanPresentation& p,
    const std::optional<std::vector<Name>>& ordering) {
  EpsilonContext ctx(p, ordering);
  AlgebraPresentation out;

  struct RedData {
    Name label;
    SymbolicMatrix eps_a, eps_b, sigma, sigma_p;
  };
  std::vector<RedData> reds;
  std::vector<ScalarSymbol> symbols = ctx.symbols_;
  auto new_symbol = [&symbols](const std::string& name) {
    symbols.push_back({name});
    return static_cast<int32_t>(symbols.size()) - 1;
  };

  for (const auto& rel : p.relations()) {
    if (rel.colour != Colour::red) continue;
    RedData rd;
    rd.label = rel.label;
    rd.eps_a = ctx.matrix_for(rel.lhs);
    rd.eps_b = ctx.matrix_for(rel.rhs);
    int da = rd.eps_a.rows(), db = rd.eps_b.rows();
    rd.sigma = SymbolicMatrix(da, db);
    for (int r = 0; r < da; ++r) {
      for (int c = 0; c < db; ++c) {
        rd.sigma.at(r, c) = NcPolynomial::symbol(new_symbol(
            "sig[" + rel.label.str() + "][" + std::to_string(r + 1) + "," +
            std::to_string(c + 1) + "]"));
      }
    }
    rd.sigma_p = SymbolicMatrix(db, da);
    for (int r = 0; r < db; ++r) {
      for (int c = 0; c < da; ++c) {
        rd.sigma_p.at(r, c) = NcPolynomial::symbol(new_symbol(
            "sigp[" + rel.label.str() + "][" + std::to_string(r + 1) + "," +
            std::to_string(c + 1) + "]"));
      }
    }
    reds.push_back(std::move(rd));
  }
  out.symbols = std::move(symbols);

  auto emit = [&out](const SymbolicMatrix& l, const SymbolicMatrix& r) {
    auto eqs = expand_matrix_relation(l, r);
    out.relations.insert(out.relations.end(), eqs.begin(), eqs.end());
  };

  // Orthogonality/idempotence of the symbol blocks, every level.
  for (size_t k = 0; k < ctx.levels_.size(); ++k) {
    const auto& level = ctx.levels_[k];
    if (level.empty()) continue;
    size_t symbol_count = level.size() - 1;
    for (size_t l = 0; l < symbol_count; ++l) {
      for (size_t lp = 0; lp < symbol_count; ++lp) {
        const SymbolicMatrix& a = ctx.generator_matrix(level[l]);
        const SymbolicMatrix& b = ctx.generator_matrix(level[lp]);
        if (l == lp) {
          emit(a * b, a);
        } else {
          emit(a * b, SymbolicMatrix(a.rows(), b.cols()));
        }
      }
    }
  }

  // Conjugation for the blue levels.
  for (size_t k = 1; k < ctx.levels_.size(); ++k) {
    const auto& level = ctx.levels_[k];
    const ColouredRelation* rel = p.find_relation(ctx.ordering_[k - 1]);
    SymbolicMatrix eps_a = ctx.matrix_for(rel->lhs);
    for (size_t l = 0; l + 1 < level.size(); ++l) {
      const SymbolicMatrix& m = ctx.generator_matrix(level[l]);
      emit(eps_a * m * eps_a, m);
    }
  }

  // The four matrix relations per red relation.
  for (const auto& rd : reds) {
    emit(rd.eps_a * rd.sigma * rd.eps_b, rd.sigma);
    emit(rd.eps_b * rd.sigma_p * rd.eps_a, rd.sigma_p);
    emit(rd.sigma * rd.sigma_p, rd.eps_a);
    emit(rd.sigma_p * rd.sigma, rd.eps_b);
  }
  return out;
}

std::string polynomial_to_string(const NcPolynomial& poly,
                                 const std::vector<ScalarSymbol>& symbols) {
  if (poly.is_zero()) return "0";
  std::string s;
  for (const auto& [m, c] : poly.terms()) {
    if (!s.empty()) s += " + ";
    s += rational_to_string(c);
    for (int32_t id : m) {
      s += "*" + symbols.at(id).name;
    }
  }
  return s;
}

std::string algebra_to_string(const AlgebraPresentation& a) {
  std::string s;
  for (const auto& sym : a.symbols) {
    s += "gen " + sym.name + "\n";
  }
  for (const auto& rel : a.relations) {
    s += rel.trivial ? "rel*: " : "rel: ";
    s += polynomial_to_string(rel.lhs, a.symbols);
    s += " = ";
    s += polynomial_to_string(rel.rhs, a.symbols);
    s += "\n";
  }
  return s;
}

}  // namespace bergman
