#include "sdrl/envs/taxi.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace sdrl {

namespace {

constexpr int kGrid = 5;
constexpr std::pair<int, int> kLandmarks[4] = {{0, 0}, {4, 0}, {0, 4}, {3, 4}};
constexpr std::pair<int, int> kCouponCell = {4, 4};
constexpr std::pair<int, int> kResetCell = {0, 4};

// Vertical walls as {x, y}: wall between (x,y) and (x+1,y).
constexpr std::pair<int, int> kWalls[] = {{1, 0}, {1, 1}, {0, 3}, {2, 3}, {0, 4}, {2, 4}};

}  // namespace

std::pair<int, int> taxi_landmark_cell(int landmark) {
  if (landmark < 0 || landmark > 3) throw std::invalid_argument("bad landmark");
  return kLandmarks[landmark];
}

bool taxi_wall_between(int x, int y, int nx, int ny) {
  if (y != ny) return false;  // walls are vertical only
  int lo = std::min(x, nx);
  if (nx != x + 1 && nx != x - 1) return false;
  for (auto [wx, wy] : kWalls)
    if (wx == lo && wy == y) return true;
  return false;
}

EnvObs TaxiState::encode() const {
  EnvObs o = static_cast<EnvObs>(x);
  o = o * 5 + static_cast<EnvObs>(y);
  o = o * 5 + static_cast<EnvObs>(passenger);
  o = o * 4 + static_cast<EnvObs>(destination);
  o = o * 2 + (coupon_available ? 1 : 0);
  return o;
}

TaxiState TaxiState::decode(EnvObs obs) {
  TaxiState s;
  s.coupon_available = (obs % 2) != 0;
  obs /= 2;
  s.destination = static_cast<int>(obs % 4);
  obs /= 4;
  s.passenger = static_cast<int>(obs % 5);
  obs /= 5;
  s.y = static_cast<int>(obs % 5);
  obs /= 5;
  s.x = static_cast<int>(obs);
  return s;
}

std::tuple<TaxiState, double, bool> taxi_step(const TaxiState& s, int action,
                                              const TaxiParams& params) {
  TaxiState next = s;
  switch (action) {
    case kTaxiNorth:
    case kTaxiSouth:
    case kTaxiEast:
    case kTaxiWest: {
      int nx = s.x, ny = s.y;
      if (action == kTaxiNorth) ny -= 1;
      if (action == kTaxiSouth) ny += 1;
      if (action == kTaxiEast) nx += 1;
      if (action == kTaxiWest) nx -= 1;
      if (nx >= 0 && nx < kGrid && ny >= 0 && ny < kGrid &&
          !taxi_wall_between(s.x, s.y, nx, ny)) {
        next.x = nx;
        next.y = ny;
      }
      return {next, -1.0, false};
    }
    case kTaxiPickup: {
      auto [px, py] = taxi_landmark_cell(params.passenger_source);
      bool proper = s.x == px && s.y == py && s.passenger == params.passenger_source &&
                    !s.coupon_available;
      if (!proper) return {next, -10.0, false};
      next.passenger = kPassengerInTaxi;
      return {next, 0.0, false};
    }
    case kTaxiDropoff: {
      auto [dx, dy] = taxi_landmark_cell(s.destination);
      bool proper = s.x == dx && s.y == dy && s.passenger == kPassengerInTaxi;
      if (!proper) return {next, -10.0, false};
      next.passenger = s.destination;
      return {next, params.dropoff_reward, true};
    }
    case kTaxiCollect: {
      bool proper = s.x == kCouponCell.first && s.y == kCouponCell.second &&
                    s.coupon_available;
      if (!proper) return {next, -10.0, false};
      next.coupon_available = false;
      return {next, 10.0, false};
    }
    default:
      throw std::invalid_argument("invalid taxi action " + std::to_string(action));
  }
}

// Symbolic abstraction: locations the plan cares about, plus progress flags.
// Motion laws prune purposeless driving so planner exploration stays small.
const char* TaxiEnv::domain_text() {
  return R"(sort location = {start, pass_src, dest, coupon_site}
fluent at : location
fluent have_passenger : bool
fluent coupon_taken : bool
fluent delivered : bool
action goto(L : location)
action pickup
action collect
action dropoff
dynamic goto(L) causes at=L
nonexecutable goto(L) if at=L
nonexecutable goto(L) if delivered=true
nonexecutable goto(coupon_site) if coupon_taken=true
nonexecutable goto(pass_src) if have_passenger=true
nonexecutable goto(dest) if have_passenger=false
dynamic pickup causes have_passenger=true
nonexecutable pickup if at=start
nonexecutable pickup if at=dest
nonexecutable pickup if at=coupon_site
nonexecutable pickup if coupon_taken=false
nonexecutable pickup if have_passenger=true
nonexecutable pickup if delivered=true
dynamic collect causes coupon_taken=true
nonexecutable collect if at=start
nonexecutable collect if at=pass_src
nonexecutable collect if at=dest
nonexecutable collect if coupon_taken=true
nonexecutable collect if delivered=true
dynamic dropoff causes delivered=true
dynamic dropoff causes have_passenger=false
nonexecutable dropoff if at=start
nonexecutable dropoff if at=pass_src
nonexecutable dropoff if at=coupon_site
nonexecutable dropoff if have_passenger=false
nonexecutable dropoff if delivered=true
inertial at
inertial have_passenger
inertial coupon_taken
inertial delivered
default have_passenger=false
default coupon_taken=false
default delivered=false
)";
}

TaxiEnv::TaxiEnv(TaxiParams params) : params_(params) {
  description_ = std::make_shared<const ActionDescription>(
      parse_action_description(domain_text()));
  f_at_ = description_->fluent_index("at");
  f_have_passenger_ = description_->fluent_index("have_passenger");
  f_coupon_taken_ = description_->fluent_index("coupon_taken");
  f_delivered_ = description_->fluent_index("delivered");
  reset();
}

EnvObs TaxiEnv::reset() {
  state_ = TaxiState{kResetCell.first, kResetCell.second, params_.passenger_source,
                     params_.destination, true};
  return state_.encode();
}

StepResult TaxiEnv::step(int action) {
  auto [next, reward, done] = taxi_step(state_, action, params_);
  state_ = next;
  return {state_.encode(), reward, done};
}

bool TaxiEnv::grounds(const SymbolicState& sym, EnvObs obs) const {
  const ActionDescription& d = *description_;
  if (sym.values.size() != d.fluents.size())
    throw std::runtime_error("symbolic state does not match the taxi vocabulary");
  TaxiState s = TaxiState::decode(obs);
  for (std::size_t fi = 0; fi < d.fluents.size(); ++fi) {
    const FluentDecl& f = d.fluents[fi];
    const std::string& v = f.domain.at(static_cast<std::size_t>(sym.values.at(fi)));
    bool holds = false;
    if (static_cast<int>(fi) == f_at_) {
      std::pair<int, int> cell;
      if (v == "start") cell = kResetCell;
      else if (v == "pass_src") cell = taxi_landmark_cell(params_.passenger_source);
      else if (v == "dest") cell = taxi_landmark_cell(params_.destination);
      else if (v == "coupon_site") cell = kCouponCell;
      else throw std::runtime_error("unknown location value '" + v + "'");
      holds = s.x == cell.first && s.y == cell.second;
    } else if (static_cast<int>(fi) == f_have_passenger_) {
      holds = (s.passenger == kPassengerInTaxi) == (v == "true");
    } else if (static_cast<int>(fi) == f_coupon_taken_) {
      holds = (!s.coupon_available) == (v == "true");
    } else if (static_cast<int>(fi) == f_delivered_) {
      holds = (s.passenger == s.destination) == (v == "true");
    } else {
      throw std::runtime_error("unknown symbolic fluent '" + f.name + "'");
    }
    if (!holds) return false;
  }
  return true;
}

SymbolicState TaxiEnv::initial_symbolic_state() const {
  return complete_state(*description_, parse_atoms(*description_, "at=start"));
}

GroundingOracle TaxiEnv::grounding_oracle() const {
  return [this](const SymbolicState& s, EnvObs obs) { return grounds(s, obs); };
}

std::string TaxiEnv::render() const {
  std::ostringstream out;
  out << "+---------+\n";
  for (int y = 0; y < kGrid; ++y) {
    out << "|";
    for (int x = 0; x < kGrid; ++x) {
      char c = ' ';
      for (int l = 0; l < 4; ++l)
        if (kLandmarks[l] == std::make_pair(x, y)) c = "RGYB"[l];
      if (std::make_pair(x, y) == kCouponCell && state_.coupon_available) c = 'c';
      if (x == state_.x && y == state_.y) c = 'T';
      out << c;
      if (x + 1 < kGrid) out << (taxi_wall_between(x, y, x + 1, y) ? '|' : ':');
    }
    out << "|\n";
  }
  out << "+---------+\n";
  return out.str();
}

}  // namespace sdrl
