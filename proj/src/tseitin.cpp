// SPDX-License-Identifier: Apache-2.0

#include "msmp/tseitin.hpp"

namespace msmp {

Var TseitinEncoder::freshAux() {
  Var v = vars_.fresh();
  aux_.push_back(v);
  return v;
}

void TseitinEncoder::emit(std::vector<Lit> lits) {
  // Tautologies carry no constraint.
  if (auto c = Clause::tryMake(lits)) sink_.push_back(*std::move(c));
}

Lit TseitinEncoder::trueLit() {
  if (!true_) {
    true_ = Lit::positive(freshAux());
    emit({*true_});
  }
  return *true_;
}

Lit TseitinEncoder::encode(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
      return f.constantValue() ? trueLit() : ~trueLit();
    case Formula::Kind::Atom:
      return Lit::positive(f.var());
    case Formula::Kind::Not:
      return ~encode(f.children()[0]);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const bool isAnd = f.kind() == Formula::Kind::And;
      std::vector<Lit> kids;
      kids.reserve(f.children().size());
      for (const Formula& c : f.children()) kids.push_back(encode(c));
      Lit t = Lit::positive(freshAux());
      // And: t -> k_i for all i, (k_1 & ... & k_n) -> t.
      // Or is the dual with every literal complemented.
      Lit out = isAnd ? t : ~t;
      std::vector<Lit> big{out};
      for (Lit k : kids) {
        Lit kk = isAnd ? k : ~k;
        emit({~out, kk});
        big.push_back(~kk);
      }
      emit(std::move(big));
      return t;
    }
  }
  return trueLit();
}

void TseitinEncoder::assertFormula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
      if (!f.constantValue()) emit({});
      return;
    case Formula::Kind::And:
      for (const Formula& c : f.children()) assertFormula(c);
      return;
    case Formula::Kind::Or: {
      std::vector<Lit> lits;
      for (const Formula& c : f.children()) {
        if (c.kind() == Formula::Kind::Constant) {
          if (c.constantValue()) return;
          continue;
        }
        lits.push_back(c.isLiteral() ? c.asLiteral() : encode(c));
      }
      emit(std::move(lits));
      return;
    }
    case Formula::Kind::Not:
      if (f.isLiteral()) {
        emit({f.asLiteral()});
        return;
      }
      emit({encode(f)});
      return;
    case Formula::Kind::Atom:
      emit({f.asLiteral()});
      return;
  }
}

Clausification clausify(const Formula& f, std::uint32_t numVars) {
  VarAllocator vars(std::max(numVars, maxVarId(f)));
  Clausification out;
  TseitinEncoder enc(vars, out.cnf.clauses);
  enc.assertFormula(f);
  out.cnf.numVars = vars.numVars();
  out.auxiliaries = enc.auxiliaries();
  return out;
}

}  // namespace msmp
