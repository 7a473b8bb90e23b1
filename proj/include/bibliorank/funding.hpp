#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "bibliorank/ranklab.hpp"

namespace bibliorank {

// Four-class selective funding: institutions are paid budget * w_c * staff
// / sum(w * staff), with class weights defaulting to 9:3:1:0 (first class
// gets three times the second, which gets three times the third; the
// fourth gets nothing).
struct FundingRow {
  std::string institution_id;
  int quartile_class = 0;
  double staff = 0.0;
  double weight = 0.0;
  double amount = 0.0;
};

struct FundingOutcome {
  std::string uda_id;
  double budget = 0.0;
  std::vector<FundingRow> rows;  // by class then institution
};

constexpr std::array<double, 4> kDefaultFundingWeights{9.0, 3.0, 1.0, 0.0};

FundingOutcome allocate(const RankList& ranklist,
                        const std::map<std::string, double>& staff_by_institution,
                        double budget,
                        const std::array<double, 4>& weights = kDefaultFundingWeights);

struct FundingDeltaRow {
  std::string institution_id;
  double amount_left = 0.0;
  double amount_right = 0.0;
  double delta = 0.0;  // right - left
  // "zero_left" / "zero_right": funded on one side, nothing on the other.
  std::string flag;
};

struct FundingDelta {
  std::string uda_id;
  std::vector<FundingDeltaRow> rows;
  std::vector<std::string> zero_left;   // funded right, unfunded left
  std::vector<std::string> zero_right;  // funded left, unfunded right
};

FundingDelta funding_delta(const FundingOutcome& left, const FundingOutcome& right);

// institution_id,class,staff,weight,amount
std::string funding_csv(const FundingOutcome& outcome);
// institution_id,amount_left,amount_right,delta,flag
std::string funding_delta_csv(const FundingDelta& delta);

}  // namespace bibliorank
