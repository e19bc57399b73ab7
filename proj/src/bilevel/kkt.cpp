#include "flexsched/bilevel/kkt.hpp"

#include <algorithm>
#include <cmath>

#include "flexsched/milp/lp_format.hpp"

namespace flexsched::bilevel {

using milp::ColId;
using milp::kInf;
using milp::Sense;
using milp::Term;

double stationarity_sign(Sense sense) { return sense == Sense::kGreaterEqual ? -1.0 : 1.0; }
double dual_objective_sign(Sense sense) { return sense == Sense::kGreaterEqual ? 1.0 : -1.0; }

KktSystem derive_kkt(const LowerLevelLp& lp) {
  KktSystem kkt;
  kkt.stationarity.resize(lp.num_vars());
  for (int k = 0; k < lp.num_vars(); ++k) kkt.stationarity[k].var = k;
  for (int r = 0; r < lp.num_rows(); ++r) {
    const LlRow& row = lp.rows[r];
    for (const LlTerm& term : row.terms) {
      if (term.index < 0 || term.index >= lp.num_vars()) {
        throw milp::ModelError(lp.name + ": row " + row.name + " references a missing variable");
      }
      if (term.coef != 0.0) {
        kkt.stationarity[term.index].duals.push_back({r, stationarity_sign(row.sense) * term.coef});
      }
    }
    kkt.dual_nonnegative.push_back(row.sense != Sense::kEqual);
    if (row.sense != Sense::kEqual) kkt.pairs.push_back({r, row.sense});
  }
  for (const StationarityRow& s : kkt.stationarity) {
    if (s.duals.empty()) {
      throw milp::ModelError(lp.name + ": variable " + lp.vars[s.var].name + " appears in no row");
    }
  }
  return kkt;
}

namespace {

// Largest slack of an inequality row over the variable box.
double max_slack(const LowerLevelLp& lp, const LlRow& row) {
  double lo = 0.0, hi = 0.0;
  for (const LlTerm& t : row.terms) {
    const LlVar& v = lp.vars[t.index];
    if (t.coef > 0) {
      lo += t.coef * v.lower;
      hi += t.coef * v.upper;
    } else {
      lo += t.coef * v.upper;
      hi += t.coef * v.lower;
    }
  }
  return row.sense == Sense::kLessEqual ? row.rhs - lo : hi - row.rhs;
}

}  // namespace

BigM default_big_m(const LowerLevelLp& lp, const KktSystem& kkt, double price_cap,
                   std::optional<double> primal_override, std::optional<double> dual_override) {
  BigM m;
  for (const ComplementarityPair& p : kkt.pairs) {
    if (primal_override) {
      m.primal.push_back(*primal_override);
      continue;
    }
    const double range = max_slack(lp, lp.rows[p.row]);
    if (!std::isfinite(range)) {
      throw milp::ModelError(lp.name + ": row " + lp.rows[p.row].name +
                             " has an unbounded slack; set big_m_primal");
    }
    m.primal.push_back(std::max(2.0 * range, 1.0));
  }
  double largest = 0.0;
  for (const LlVar& v : lp.vars) {
    largest = std::max(largest, std::abs(v.cost));
    if (v.price_hour >= 0) largest = std::max(largest, std::abs(price_cap));
  }
  m.dual = dual_override ? *dual_override : 10.0 * std::max(largest, 1.0);
  return m;
}

LlColumns add_ll_primal(milp::MilpModel& model, const LowerLevelLp& lp, const std::string& prefix) {
  LlColumns cols;
  for (const LlVar& v : lp.vars) cols.primal.push_back(model.add_column(prefix + v.name, v.lower, v.upper));
  for (const LlRow& r : lp.rows) {
    std::vector<Term> terms;
    for (const LlTerm& t : r.terms) terms.push_back({cols.primal[t.index], t.coef});
    cols.rows.push_back(model.add_row(prefix + r.name, r.sense, r.rhs, std::move(terms)));
  }
  return cols;
}

KktColumns add_kkt(milp::MilpModel& model, const LowerLevelLp& lp, const KktSystem& kkt,
                   const LlColumns& /*primal*/, const PriceSource& prices, const BigM& big_m,
                   const std::string& prefix) {
  KktColumns out;
  for (int r = 0; r < lp.num_rows(); ++r) {
    const std::string name = prefix + "y_" + lp.rows[r].name;
    out.dual.push_back(kkt.dual_nonnegative[r] ? model.add_column(name, 0.0, big_m.dual)
                                               : model.add_column(name, -kInf, kInf));
  }
  for (const StationarityRow& s : kkt.stationarity) {
    const LlVar& v = lp.vars[s.var];
    std::vector<Term> terms;
    for (const LlTerm& d : s.duals) terms.push_back({out.dual[d.index], d.coef});
    double rhs = -v.cost;
    if (v.price_hour >= 0) {
      if (!prices.columns.empty()) terms.push_back({prices.columns.at(v.price_hour), 1.0});
      else rhs -= prices.values.at(v.price_hour);
    }
    out.stationarity.push_back(model.add_row(prefix + "stat_" + v.name, Sense::kEqual, rhs, std::move(terms)));
  }
  return out;
}

ComplementarityEncoding encode_complementarity(milp::MilpModel& model, const LowerLevelLp& lp,
                                               const KktSystem& kkt, const LlColumns& primal,
                                               const KktColumns& duals, const BigM& big_m,
                                               const std::string& prefix) {
  ComplementarityEncoding enc;
  enc.big_m = big_m;
  for (int p = 0; p < kkt.num_pairs(); ++p) {
    const LlRow& row = lp.rows[kkt.pairs[p].row];
    const double mp = big_m.primal.at(p);
    if (!(mp > 0.0) || !(big_m.dual > 0.0)) throw milp::ModelError("big-M values must be positive");
    ColId u = model.add_binary(prefix + "u_" + row.name);
    enc.binary.push_back(u);
    std::vector<Term> terms;
    for (const LlTerm& t : row.terms) terms.push_back({primal.primal[t.index], t.coef});
    if (row.sense == Sense::kLessEqual) {
      // b - a x <= M_p (1 - u)
      terms.push_back({u, -mp});
      enc.primal_rows.push_back(model.add_row(prefix + "cs_" + row.name, Sense::kGreaterEqual, row.rhs - mp, std::move(terms)));
    } else {
      // a x - b <= M_p (1 - u)
      terms.push_back({u, mp});
      enc.primal_rows.push_back(model.add_row(prefix + "cs_" + row.name, Sense::kLessEqual, row.rhs + mp, std::move(terms)));
    }
    enc.dual_rows.push_back(model.add_row(prefix + "cd_" + row.name, Sense::kLessEqual, 0.0,
                                          {{duals.dual[kkt.pairs[p].row], 1.0}, {u, -big_m.dual}}));
  }
  return enc;
}

double LinearExpr::evaluate(std::span<const double> x) const {
  double v = constant;
  for (const Term& t : terms) v += t.coef * x[t.col.value];
  return v;
}

LinearExpr strong_duality_expr(const LowerLevelLp& lp, const KktSystem& /*kkt*/,
                               const LlColumns& primal, const KktColumns& duals) {
  LinearExpr e;
  for (int r = 0; r < lp.num_rows(); ++r) {
    const LlRow& row = lp.rows[r];
    if (row.rhs != 0.0) e.terms.push_back({duals.dual[r], dual_objective_sign(row.sense) * row.rhs});
  }
  for (int k = 0; k < lp.num_vars(); ++k) {
    if (lp.vars[k].cost != 0.0) e.terms.push_back({primal.primal[k], -lp.vars[k].cost});
  }
  return e;
}

LlKktModel build_ll_kkt_milp(const LowerLevelLp& lp, const std::vector<double>& prices,
                             const BigM& big_m) {
  LlKktModel out;
  KktSystem kkt = derive_kkt(lp);
  out.primal = add_ll_primal(out.model, lp, "");
  PriceSource src;
  src.values = prices;
  out.duals = add_kkt(out.model, lp, kkt, out.primal, src, big_m, "");
  out.encoding = encode_complementarity(out.model, lp, kkt, out.primal, out.duals, big_m, "");
  for (int k = 0; k < lp.num_vars(); ++k) {
    const LlVar& v = lp.vars[k];
    double c = v.cost + (v.price_hour >= 0 ? prices.at(v.price_hour) : 0.0);
    out.model.set_objective(out.primal.primal[k], c);
  }
  return out;
}

std::vector<std::string> big_m_warnings(const milp::MilpModel& /*model*/, const LowerLevelLp& lp,
                                        const KktSystem& kkt, const LlColumns& primal,
                                        const KktColumns& duals,
                                        const ComplementarityEncoding& enc,
                                        std::span<const double> x, double tol) {
  std::vector<std::string> out;
  for (int p = 0; p < kkt.num_pairs(); ++p) {
    const LlRow& row = lp.rows[kkt.pairs[p].row];
    double ax = 0.0;
    for (const LlTerm& t : row.terms) ax += t.coef * x[primal.primal[t.index].value];
    const double slack = row.sense == Sense::kLessEqual ? row.rhs - ax : ax - row.rhs;
    const double dual = x[duals.dual[kkt.pairs[p].row].value];
    if (slack >= enc.big_m.primal[p] - tol) {
      out.push_back(lp.name + " " + row.name + ": slack " + milp::format_number(slack) +
                    " at primal big-M " + milp::format_number(enc.big_m.primal[p]));
    }
    if (dual >= enc.big_m.dual - tol) {
      out.push_back(lp.name + " " + row.name + ": dual " + milp::format_number(dual) +
                    " at dual big-M " + milp::format_number(enc.big_m.dual));
    }
  }
  return out;
}

void write_kkt_audit(const LowerLevelLp& lp, const KktSystem& kkt, const BigM& big_m,
                     std::ostream& out) {
  out << "# " << lp.name << ": " << lp.num_vars() << " variables, " << lp.num_rows() << " rows, "
      << kkt.num_pairs() << " complementarity pairs\n";
  for (const StationarityRow& s : kkt.stationarity) {
    const LlVar& v = lp.vars[s.var];
    out << "stat " << v.name << ": " << milp::format_number(v.cost);
    if (v.price_hour >= 0) out << " + rho(t" << v.price_hour + 1 << ")";
    for (const LlTerm& d : s.duals) {
      out << (d.coef < 0 ? " - " : " + ") << milp::format_number(std::abs(d.coef)) << " y_"
          << lp.rows[d.index].name;
    }
    out << " = 0\n";
  }
  for (int p = 0; p < kkt.num_pairs(); ++p) {
    const LlRow& row = lp.rows[kkt.pairs[p].row];
    out << "pair " << row.name << ": " << (row.sense == Sense::kLessEqual ? "b - a x" : "a x - b")
        << " <= " << milp::format_number(big_m.primal[p]) << " (1 - u), y <= "
        << milp::format_number(big_m.dual) << " u\n";
  }
}

}  // namespace flexsched::bilevel
