#include "prm/density.hpp"

#include <algorithm>

#include "prm/eval.hpp"
#include "prm/kernels.hpp"

namespace prm {

std::string to_string(ReqState s) {
  switch (s) {
    case ReqState::SatisfiedA: return "satisfied-case-a";
    case ReqState::SatisfiedB: return "satisfied-case-b";
    case ReqState::Pending: return "pending";
  }
  return "?";
}

std::string to_string(Phase p) { return p == Phase::Copying ? "copying" : "flipped"; }

Natural chi_cost(const GodelIndex& x_index, const SparseTrace& trace, std::uint64_t x) {
  auto a = trace.a_decision_cost(Natural(x));
  if (!a) throw OutOfPrefix(Natural(x));
  return p_steps(x_index, Natural(x)) + *a;
}

std::uint64_t least_non_member(const SparseTrace& trace) {
  for (Natural x = 0; x < trace.prefix_end(); ++x)
    if (!trace.a_bits.at(x)) return to_u64(x);
  throw std::runtime_error("no verified non-member of A in the sparse prefix");
}

namespace {

constexpr std::uint64_t kMaxDensityPrefix = std::uint64_t{1} << 24;

// Everything the scheduler needs about one R_i-stage, computed on demand.
struct StageData {
  const SparseTrace& trace;
  Term xt;
  GodelIndex x_index;
  Term pt;
  std::uint64_t P;

  std::uint64_t p_cost(std::uint64_t x) const {
    return to_u64_saturating(eval1(pt, Natural(x)).steps);
  }
  std::uint64_t c_cost(std::uint64_t x) const {
    return to_u64_saturating(chi_cost(x_index, trace, x));
  }
  Natural p_value(std::uint64_t x) const { return eval1(pt, Natural(x)).value; }
  int chi_value(std::uint64_t x) const {
    return (*trace.a_member(Natural(x)) && eval1(xt, Natural(x)).value > 0) ? 1 : 0;
  }
};

}  // namespace

DensityTrace build_dense_subset(const GodelIndex& x_index, const SparseTrace& trace,
                                std::uint64_t max_requirements, std::uint64_t tick_budget) {
  if (trace.stages.empty()) throw std::invalid_argument("density needs a nonempty sparse trace");
  if (trace.prefix_end() > kMaxDensityPrefix)
    throw std::invalid_argument("sparse prefix too long for the density construction");

  DensityTrace dt;
  dt.x_index = x_index;
  dt.max_requirements = max_requirements;
  dt.tick_budget = tick_budget;
  dt.d = least_non_member(trace);
  dt.sparse_ref = sparse_ref(trace);

  const std::uint64_t P = to_u64(trace.prefix_end());
  const Term xt = decode(x_index);
  std::uint64_t T = 0;  // ticks elapsed

  auto extend = [&](std::uint64_t ticks, Phase ph) {
    for (std::uint64_t k = 0; k < ticks && dt.y_bits.size() < P; ++k) {
      const std::uint64_t x = dt.y_bits.size();
      if (ph == Phase::Copying) {
        dt.y_bits.push_back(eval1(xt, Natural(x)).value > 0);
        dt.h_table.push_back(x);
      } else {
        dt.y_bits.push_back(false);
        dt.h_table.push_back(dt.d);
      }
    }
  };

  bool stopped = false;
  for (std::uint64_t i = 0; i < max_requirements && !stopped; ++i) {
    StageData sd{trace, xt, x_index, decode(GodelIndex(i)), P};
    RequirementStatus st;
    st.i = i;
    st.m0 = dt.y_bits.size();
    st.start_tick = T;
    dt.log.push_back({T, i, "start", st.m0});

    bool done = false;
    while (!done) {
      // Point q + k is launched at tick T0 + k + 1 and known once both of its
      // computations are done. Jump straight to the first tick at which a
      // known point satisfies the phase's condition (least point on ties).
      const std::uint64_t T0 = T;
      const std::uint64_t q = dt.y_bits.size();
      struct Costs { std::uint64_t cp, cc; };
      std::vector<Costs> costs;
      std::optional<std::uint64_t> hit;
      std::uint64_t hit_tick = 0, all_done = T0;
      for (std::uint64_t x = q; x < P; ++x) {
        const std::uint64_t launch = T0 + (x - q) + 1;
        if (launch > tick_budget || (hit && launch > hit_tick)) break;
        const Costs c{sd.p_cost(x), sd.c_cost(x)};
        costs.push_back(c);
        const std::uint64_t known = launch + std::max(c.cp, c.cc) - 1;
        all_done = std::max(all_done, known);
        if (known > tick_budget || (hit && known >= hit_tick)) continue;
        const Natural pv = sd.p_value(x);
        const int cv = sd.chi_value(x);
        const bool found = st.phase == Phase::Copying
                               ? ((cv == 0 && pv != 0) || (cv == 1 && pv != 1))
                               : (pv != cv);
        if (found) {
          hit = x;
          hit_tick = known;
        }
      }

      std::uint64_t end;
      bool budget_cut = false;
      if (hit) {
        end = hit_tick;
      } else {
        // No witness in reach: the phase runs until Y reaches the end of the
        // prefix and every launched computation is done, or the budget ends.
        const bool all_launched = q + costs.size() == P;
        budget_cut = !all_launched || all_done > tick_budget;
        end = budget_cut ? tick_budget : std::max(all_done, T0 + (P - q));
      }

      for (std::uint64_t k = 0; k < costs.size(); ++k) {
        const std::uint64_t launch = T0 + k + 1;
        if (launch > end) break;
        ProcessRecord pr{i, st.phase, q + k, launch, std::nullopt, std::nullopt};
        if (launch + costs[k].cp - 1 <= end) pr.p_done = launch + costs[k].cp - 1;
        if (launch + costs[k].cc - 1 <= end) pr.chi_done = launch + costs[k].cc - 1;
        dt.processes.push_back(pr);
      }
      extend(end - T0, st.phase);
      T = end;
      st.ticks_used = T - st.start_tick;

      if (hit && st.phase == Phase::Copying) {
        const std::uint64_t x = *hit;
        if (sd.chi_value(x) == 0) {
          st.state = ReqState::SatisfiedA;
          st.y = x;
          dt.log.push_back({T, i, "case-a", x});
          done = true;
        } else {
          st.z = x;
          st.m1 = dt.y_bits.size();
          st.phase = Phase::Flipped;
          dt.log.push_back({T, i, "case-b", x});
        }
      } else if (hit) {
        st.state = ReqState::SatisfiedB;
        st.z1 = *hit;
        dt.log.push_back({T, i, "satisfied-b", *hit});
        done = true;
      } else {
        if (budget_cut) {
          dt.log.push_back({T, i, "budget", dt.y_bits.size()});
        } else {
          dt.exhausted = true;
          dt.log.push_back({T, i, "stuck", dt.y_bits.size()});
        }
        done = true;
        stopped = true;
      }
    }
    dt.requirements.push_back(st);
  }

  if (!stopped) {
    // Every requirement is met; Y keeps copying X.
    const std::uint64_t need = P - dt.y_bits.size();
    const std::uint64_t ticks = std::min(need, tick_budget - T);
    extend(ticks, Phase::Copying);
    T += ticks;
  }
  dt.ticks_used = T;
  return dt;
}

namespace {

std::string at(std::uint64_t x) { return "x = " + std::to_string(x); }

int chi_ax(const SparseTrace& trace, const Term& xt, std::uint64_t x) {
  return (*trace.a_member(Natural(x)) && eval1(xt, Natural(x)).value > 0) ? 1 : 0;
}

}  // namespace

Report verify_density(const DensityTrace& dt, const SparseTrace& trace) {
  Report rep;
  rep.add("sparse reference", dt.sparse_ref == sparse_ref(trace),
          dt.sparse_ref == sparse_ref(trace) ? "" : "trace was built against another sparse run");
  const Natural P = trace.prefix_end();
  const std::uint64_t n = dt.y_bits.size();
  const bool shape = dt.h_table.size() == n && Natural(n) <= P;
  rep.add("shape", shape, shape ? "" : "Y and h must cover the same points inside the prefix");
  if (!shape) return rep;

  const Term xt = decode(dt.x_index);
  auto flag = [&](auto&& check) { return kernels::first_flagged(0, n, check); };

  {
    auto bad = flag([&](std::uint64_t x) {
      return dt.y_bits[x] && eval1(xt, Natural(x)).value == 0 ? 1 : 0;
    });
    rep.add("Y within X", !bad, bad ? at(bad->x) : "");
  }
  {
    auto bad = flag([&](std::uint64_t x) {
      const std::uint64_t h = dt.h_table[x];
      if (h == x) return 0;
      return (h == dt.d && !dt.y_bits[x]) ? 0 : 1;
    });
    rep.add("h copies or sends to d", !bad, bad ? at(bad->x) : "");
  }
  {
    const bool d_ok = Natural(dt.d) < P && !trace.a_bits.at(Natural(dt.d));
    rep.add("d not in A", d_ok, d_ok ? "" : "d = " + std::to_string(dt.d));
    auto bad = flag([&](std::uint64_t x) {
      const std::uint64_t h = dt.h_table[x];
      if (Natural(h) >= P) return 2;
      const bool lhs = dt.y_bits[x] && *trace.a_member(Natural(x));
      const bool rhs = chi_ax(trace, xt, h) == 1;
      return lhs == rhs ? 0 : 1;
    });
    rep.add("h reduces A&Y to A&X", !bad, bad ? at(bad->x) : "");
  }

  {
    std::string bad;
    auto y_at = [&](std::uint64_t x) -> std::optional<int> {
      if (x >= n) return std::nullopt;
      return dt.y_bits[x] ? 1 : 0;
    };
    for (const RequirementStatus& st : dt.requirements) {
      const Term pt = decode(GodelIndex(st.i));
      auto pv = [&](std::uint64_t x) { return eval1(pt, Natural(x)).value; };
      const std::string who = "R_" + std::to_string(st.i) + ": ";
      if (st.state == ReqState::SatisfiedA) {
        if (!st.y || Natural(*st.y) >= P) { bad = who + "missing witness"; break; }
        const std::uint64_t y = *st.y;
        auto yy = y_at(y);
        if (chi_ax(trace, xt, y) != 0 || pv(y) == 0 || !yy) {
          bad = who + "case (a) witness fails at " + at(y);
          break;
        }
        // x' = x'' = y: y lies in neither A&Y nor A&(X\Y).
      } else if (st.state == ReqState::SatisfiedB) {
        if (!st.z || !st.z1 || Natural(*st.z) >= P || Natural(*st.z1) >= P) {
          bad = who + "missing witness";
          break;
        }
        const std::uint64_t z = *st.z, z1 = *st.z1;
        auto yz = y_at(z), yz1 = y_at(z1);
        if (!yz || !yz1) { bad = who + "witness outside the defined part of Y"; break; }
        const int ay_z = (*yz && *trace.a_member(Natural(z))) ? 1 : 0;
        if (!(ay_z == 1 && pv(z) != 1)) { bad = who + "case (b) witness z fails at " + at(z); break; }
        const int axy_z1 = (!*yz1 && chi_ax(trace, xt, z1) == 1) ? 1 : 0;
        if (Natural(axy_z1) == pv(z1)) { bad = who + "case (b) witness z1 fails at " + at(z1); break; }
      }
    }
    rep.add("requirement witnesses", bad.empty(), bad);
  }

  {
    // Every computation gets one unit per tick from its launch until done:
    // recorded completion ticks must equal launch + cost - 1, and abandoned
    // ones must not have been able to finish before their phase ended.
    std::string bad;
    std::vector<std::uint64_t> stage_end(dt.requirements.size());
    for (std::size_t r = 0; r < dt.requirements.size(); ++r)
      stage_end[r] = dt.requirements[r].start_tick + dt.requirements[r].ticks_used;
    std::optional<std::uint64_t> prev_launch;
    for (const ProcessRecord& pr : dt.processes) {
      if (pr.requirement >= dt.requirements.size() || Natural(pr.x) >= P) {
        bad = "process record outside the run";
        break;
      }
      if (prev_launch && pr.launch != *prev_launch + 1) {
        bad = "launches are not one per tick at " + at(pr.x);
        break;
      }
      prev_launch = pr.launch;
      const std::uint64_t cp = to_u64_saturating(p_steps(GodelIndex(pr.requirement), Natural(pr.x)));
      const std::uint64_t cc = to_u64_saturating(chi_cost(dt.x_index, trace, pr.x));
      const std::uint64_t end = stage_end[pr.requirement];
      auto fair = [&](const std::optional<std::uint64_t>& done, std::uint64_t cost) {
        const std::uint64_t finish = pr.launch + cost - 1;
        return done ? *done == finish : finish > end || finish > dt.ticks_used;
      };
      if (!fair(pr.p_done, cp) || !fair(pr.chi_done, cc)) {
        bad = "R_" + std::to_string(pr.requirement) + ": computation at " + at(pr.x) +
              " did not get one unit per tick";
        break;
      }
    }
    rep.add("scheduler fairness", bad.empty(), bad);
  }

  {
    // Per requirement: start, then case-a | case-b [satisfied-b] | stuck | budget.
    std::string bad;
    std::vector<std::vector<std::string>> seq(dt.requirements.size());
    std::uint64_t last_tick = 0;
    for (const SchedulerEvent& ev : dt.log) {
      if (ev.requirement >= seq.size() || ev.tick < last_tick) { bad = "malformed log"; break; }
      last_tick = ev.tick;
      seq[ev.requirement].push_back(ev.what);
    }
    for (std::size_t i = 0; i < seq.size() && bad.empty(); ++i) {
      const auto& s = seq[i];
      using V = std::vector<std::string>;
      const bool ok = s == V{"start", "case-a"} || s == V{"start", "case-b", "satisfied-b"} ||
                      s == V{"start"} || s == V{"start", "stuck"} || s == V{"start", "budget"} ||
                      s == V{"start", "case-b"} || s == V{"start", "case-b", "stuck"} ||
                      s == V{"start", "case-b", "budget"};
      if (!ok) bad = "R_" + std::to_string(i) + ": phases out of order";
    }
    rep.add("phase monotonicity", bad.empty(), bad);
  }

  {
    std::string bad;
    const DensityTrace again = build_dense_subset(dt.x_index, trace, dt.max_requirements,
                                                  dt.tick_budget);
    if (again.y_bits != dt.y_bits) {
      std::uint64_t x = 0;
      while (x < std::min(again.y_bits.size(), n) && again.y_bits[x] == dt.y_bits[x]) ++x;
      bad = "Y differs at " + at(x);
    } else if (again.h_table != dt.h_table) {
      std::uint64_t x = 0;
      while (again.h_table[x] == dt.h_table[x]) ++x;
      bad = "h differs at " + at(x);
    } else if (again.requirements != dt.requirements) {
      bad = "requirement statuses differ";
    } else if (again.log != dt.log) {
      bad = "scheduler log differs";
    } else if (again.processes != dt.processes) {
      bad = "process records differ";
    } else if (again.d != dt.d || again.ticks_used != dt.ticks_used ||
               again.exhausted != dt.exhausted) {
      bad = "scheduler summary differs";
    }
    rep.add("replay", bad.empty(), bad);
  }
  return rep;
}

namespace {

Json opt_json(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

std::optional<std::uint64_t> opt_from(const Json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::uint64_t>();
}

Phase phase_from(const std::string& s) {
  if (s == "copying") return Phase::Copying;
  if (s == "flipped") return Phase::Flipped;
  throw FormatError("unknown phase '" + s + "'");
}

ReqState req_state_from(const std::string& s) {
  if (s == "satisfied-case-a") return ReqState::SatisfiedA;
  if (s == "satisfied-case-b") return ReqState::SatisfiedB;
  if (s == "pending") return ReqState::Pending;
  throw FormatError("unknown requirement state '" + s + "'");
}

}  // namespace

Json density_to_json(const DensityTrace& dt) {
  Json j;
  j["kind"] = "density";
  j["cost_model_version"] = kCostModelVersion;
  j["x_index"] = natural_to_json(dt.x_index.value);
  j["max_requirements"] = dt.max_requirements;
  j["sparse_ref"] = dt.sparse_ref;
  j["d"] = dt.d;
  j["y_bits_rle"] = rle_encode(dt.y_bits);
  j["h_table"] = dt.h_table;
  j["exhausted"] = dt.exhausted;
  Json reqs = Json::array();
  for (const RequirementStatus& st : dt.requirements) {
    reqs.push_back({{"i", st.i},
                    {"status", to_string(st.state)},
                    {"phase", to_string(st.phase)},
                    {"m0", st.m0},
                    {"m1", opt_json(st.m1)},
                    {"y", opt_json(st.y)},
                    {"z", opt_json(st.z)},
                    {"z1", opt_json(st.z1)},
                    {"start_tick", st.start_tick},
                    {"ticks_used", st.ticks_used}});
  }
  j["requirement_status"] = reqs;
  Json log = Json::array();
  for (const SchedulerEvent& ev : dt.log)
    log.push_back({{"tick", ev.tick}, {"requirement", ev.requirement}, {"what", ev.what},
                   {"x", ev.x}});
  Json procs = Json::array();
  for (const ProcessRecord& pr : dt.processes)
    procs.push_back({{"requirement", pr.requirement}, {"phase", to_string(pr.phase)},
                     {"x", pr.x}, {"launch", pr.launch}, {"p_done", opt_json(pr.p_done)},
                     {"chi_done", opt_json(pr.chi_done)}});
  j["scheduler"] = {{"tick_budget", dt.tick_budget},
                    {"granularity", 1},
                    {"ticks_used", dt.ticks_used},
                    {"log", log},
                    {"processes", procs}};
  return j;
}

DensityTrace density_from_json(const Json& j) {
  if (field(j, "kind") != "density") throw FormatError("not a density trace");
  require_cost_model_version(j);
  DensityTrace dt;
  dt.x_index = GodelIndex(natural_from_json(field(j, "x_index"), "x_index"));
  dt.max_requirements = field(j, "max_requirements").get<std::uint64_t>();
  dt.sparse_ref = field(j, "sparse_ref").get<std::string>();
  dt.d = field(j, "d").get<std::uint64_t>();
  dt.y_bits = rle_decode(field(j, "y_bits_rle").get<std::vector<std::uint64_t>>());
  dt.h_table = field(j, "h_table").get<std::vector<std::uint64_t>>();
  dt.exhausted = field(j, "exhausted").get<bool>();
  for (const Json& r : field(j, "requirement_status")) {
    RequirementStatus st;
    st.i = field(r, "i").get<std::uint64_t>();
    st.state = req_state_from(field(r, "status").get<std::string>());
    st.phase = phase_from(field(r, "phase").get<std::string>());
    st.m0 = field(r, "m0").get<std::uint64_t>();
    st.m1 = opt_from(field(r, "m1"));
    st.y = opt_from(field(r, "y"));
    st.z = opt_from(field(r, "z"));
    st.z1 = opt_from(field(r, "z1"));
    st.start_tick = field(r, "start_tick").get<std::uint64_t>();
    st.ticks_used = field(r, "ticks_used").get<std::uint64_t>();
    dt.requirements.push_back(st);
  }
  const Json& sch = field(j, "scheduler");
  dt.tick_budget = field(sch, "tick_budget").get<std::uint64_t>();
  if (field(sch, "granularity") != 1) throw FormatError("unsupported scheduler granularity");
  dt.ticks_used = field(sch, "ticks_used").get<std::uint64_t>();
  for (const Json& ev : field(sch, "log")) {
    dt.log.push_back({field(ev, "tick").get<std::uint64_t>(),
                      field(ev, "requirement").get<std::uint64_t>(),
                      field(ev, "what").get<std::string>(), field(ev, "x").get<std::uint64_t>()});
  }
  for (const Json& pj : field(sch, "processes")) {
    ProcessRecord pr;
    pr.requirement = field(pj, "requirement").get<std::uint64_t>();
    pr.phase = phase_from(field(pj, "phase").get<std::string>());
    pr.x = field(pj, "x").get<std::uint64_t>();
    pr.launch = field(pj, "launch").get<std::uint64_t>();
    pr.p_done = opt_from(field(pj, "p_done"));
    pr.chi_done = opt_from(field(pj, "chi_done"));
    dt.processes.push_back(pr);
  }
  return dt;
}

}  // namespace prm
