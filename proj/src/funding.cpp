#include "bibliorank/funding.hpp"

#include <algorithm>
#include <cmath>

#include "bibliorank/csv.hpp"
#include "bibliorank/errors.hpp"

namespace bibliorank {

FundingOutcome allocate(const RankList& ranklist,
                        const std::map<std::string, double>& staff_by_institution,
                        double budget, const std::array<double, 4>& weights) {
  if (budget <= 0.0) throw ComputationError("budget must be positive");

  FundingOutcome outcome;
  outcome.uda_id = ranklist.uda_id;
  outcome.budget = budget;

  double mass = 0.0;
  for (const RankRow& row : ranklist.rows) {
    auto it = staff_by_institution.find(row.institution_id);
    if (it == staff_by_institution.end())
      throw ValidationError("no staff entry for institution " + row.institution_id);
    FundingRow fr;
    fr.institution_id = row.institution_id;
    fr.quartile_class = row.quartile;
    fr.staff = it->second;
    fr.weight = weights[static_cast<std::size_t>(row.quartile - 1)];
    mass += fr.weight * fr.staff;
    outcome.rows.push_back(std::move(fr));
  }
  if (mass <= 0.0)
    throw ComputationError("no institution carries positive weight x staff");
  for (FundingRow& fr : outcome.rows)
    fr.amount = budget * fr.weight * fr.staff / mass;

  std::sort(outcome.rows.begin(), outcome.rows.end(),
            [](const FundingRow& a, const FundingRow& b) {
              if (a.quartile_class != b.quartile_class)
                return a.quartile_class < b.quartile_class;
              return a.institution_id < b.institution_id;
            });
  return outcome;
}

FundingDelta funding_delta(const FundingOutcome& left, const FundingOutcome& right) {
  if (std::fabs(left.budget - right.budget) >
      1e-9 * std::max(1.0, std::fabs(left.budget)))
    throw ValidationError("budget mismatch between funding outcomes");

  std::map<std::string, double> lamount, ramount;
  std::map<std::string, double> lstaff, rstaff;
  for (const FundingRow& fr : left.rows) {
    lamount[fr.institution_id] = fr.amount;
    lstaff[fr.institution_id] = fr.staff;
  }
  for (const FundingRow& fr : right.rows) {
    ramount[fr.institution_id] = fr.amount;
    rstaff[fr.institution_id] = fr.staff;
  }
  for (const auto& [inst, staff] : lstaff) {
    auto it = rstaff.find(inst);
    if (it != rstaff.end() && it->second != staff)
      throw ValidationError("staff mismatch for institution " + inst);
  }

  FundingDelta delta;
  delta.uda_id = left.uda_id;
  std::map<std::string, bool> all;
  for (const auto& [inst, amt] : lamount) { (void)amt; all[inst] = true; }
  for (const auto& [inst, amt] : ramount) { (void)amt; all[inst] = true; }
  for (const auto& [inst, unused] : all) {
    (void)unused;
    FundingDeltaRow row;
    row.institution_id = inst;
    auto lit = lamount.find(inst);
    auto rit = ramount.find(inst);
    row.amount_left = lit == lamount.end() ? 0.0 : lit->second;
    row.amount_right = rit == ramount.end() ? 0.0 : rit->second;
    row.delta = row.amount_right - row.amount_left;
    if (row.amount_left == 0.0 && row.amount_right > 0.0) {
      row.flag = "zero_left";
      delta.zero_left.push_back(inst);
    } else if (row.amount_right == 0.0 && row.amount_left > 0.0) {
      row.flag = "zero_right";
      delta.zero_right.push_back(inst);
    }
    delta.rows.push_back(std::move(row));
  }
  return delta;
}

std::string funding_csv(const FundingOutcome& outcome) {
  std::string out = "institution_id,class,staff,weight,amount\n";
  for (const FundingRow& fr : outcome.rows)
    out += csv::join_row({fr.institution_id, std::to_string(fr.quartile_class),
                          csv::format_double(fr.staff),
                          csv::format_double(fr.weight),
                          csv::format_double(fr.amount)});
  return out;
}

std::string funding_delta_csv(const FundingDelta& delta) {
  std::string out = "institution_id,amount_left,amount_right,delta,flag\n";
  for (const FundingDeltaRow& row : delta.rows)
    out += csv::join_row({row.institution_id, csv::format_double(row.amount_left),
                          csv::format_double(row.amount_right),
                          csv::format_double(row.delta), row.flag});
  return out;
}

}  // namespace bibliorank
