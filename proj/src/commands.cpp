#include "seqlevy/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "seqlevy/parallel.hpp"

namespace seqlevy::cmd {

using nlohmann::json;

namespace {

// Contexts here must not collide with the ones verify.cpp reserves.
constexpr std::uint64_t kSimulateContext = 7;

std::ofstream open_out(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

void write_json(const std::string& dir, const std::string& name, const json& j) {
  std::ofstream out = open_out(dir, name);
  out << j.dump(2) << '\n';
}

const CharTriplet& require_triplet(const io::RunConfig& cfg) {
  if (!cfg.triplet)
    throw std::invalid_argument("invalid triplet: " + cfg.triplet_error);
  return *cfg.triplet;
}

}  // namespace

int run_validate(const io::RunConfig& cfg, const std::string& out_dir) {
  ValidationReport rep;
  if (cfg.triplet) {
    rep = validate(cfg.triplet->levy, cfg.triplet->r);
  } else {
    rep.valid = false;
    rep.origin_mass_zero = false;
    rep.message = cfg.triplet_error;
  }
  write_json(out_dir, "validation.json", io::to_json(rep));
  std::cout << (rep.valid ? "valid" : "invalid") << ": " << rep.message << '\n';
  return rep.valid ? kExitPass : kExitFail;
}

int run_cf(const io::RunConfig& cfg, const std::string& out_dir) {
  const CharTriplet& triplet = require_triplet(cfg);
  std::vector<double> times = cfg.times;
  if (times.empty()) times.push_back(1.0);
  std::ofstream out = open_out(out_dir, "cf.csv");
  out << "t,phi_id,re_eta,im_eta,re_cf,im_cf\n";
  for (std::size_t pi = 0; pi < cfg.phis.size(); ++pi) {
    const std::complex<double> eta = lk_exponent(triplet, cfg.phis[pi]);
    for (const double t : times) {
      if (t < 0.0) throw std::domain_error("cf: negative time in grid");
      const std::complex<double> value = std::exp(t * eta);
      out << io::csv_double(t) << ',' << pi << ',' << io::csv_double(eta.real())
          << ',' << io::csv_double(eta.imag()) << ',' << io::csv_double(value.real())
          << ',' << io::csv_double(value.imag()) << '\n';
    }
  }
  return kExitPass;
}

int run_simulate(const io::RunConfig& cfg, const std::string& out_dir,
                 std::size_t threads) {
  const CharTriplet& triplet = require_triplet(cfg);
  const SimConfig& sim = cfg.sim;
  const LevySimulator simulator(triplet, sim);

  struct ReplicaOut {
    std::string jumps;
    std::string grid;
    std::size_t jump_count = 0;
    std::size_t large_count = 0;
  };
  std::vector<ReplicaOut> slots(sim.replicas);

  parallel_for(sim.replicas, threads, [&](std::size_t i) {
    const PathSkeleton path = simulator.replica(i, kSimulateContext);
    ReplicaOut& slot = slots[i];
    std::string& jrows = slot.jumps;
    for (const JumpRecord& rec : path.jumps) {
      jrows += std::to_string(i);
      jrows += ',';
      jrows += io::csv_double(rec.time);
      jrows += ',';
      jrows += std::to_string(rec.shell);
      for (const double c : rec.mark.coords) {
        jrows += ',';
        jrows += io::csv_double(c);
      }
      jrows += '\n';
      ++slot.jump_count;
      if (rec.is_large()) ++slot.large_count;
    }
    if (!cfg.phis.empty()) {
      const auto values =
          evaluate_components(path, path.wiener.node_times, cfg.phis);
      std::string& grows = slot.grid;
      for (std::size_t ti = 0; ti < path.wiener.node_times.size(); ++ti) {
        for (std::size_t pi = 0; pi < cfg.phis.size(); ++pi) {
          grows += std::to_string(i);
          grows += ',';
          grows += io::csv_double(path.wiener.node_times[ti]);
          grows += ',';
          grows += std::to_string(pi);
          grows += ',';
          grows += io::csv_double(values[ti][pi].total());
          grows += '\n';
        }
      }
    }
  });

  std::size_t total_jumps = 0, total_large = 0;
  {
    std::ofstream jumps = open_out(out_dir, "jumps.csv");
    jumps << "replica,time,shell";
    for (std::size_t n = 0; n < sim.truncation; ++n) jumps << ",coord_" << n;
    jumps << '\n';
    std::ofstream grid = open_out(out_dir, "grid.csv");
    grid << "replica,t,phi_id,value\n";
    for (const ReplicaOut& slot : slots) {
      jumps << slot.jumps;
      grid << slot.grid;
      total_jumps += slot.jump_count;
      total_large += slot.large_count;
    }
  }

  json shells = json::array();
  json compensators = json::array();
  for (const Shell& sh : simulator.shells().shells) {
    shells.push_back(json{{"lo", sh.region.lo},
                          {"hi", sh.region.hi},
                          {"mass", sh.mass},
                          {"second_moment", sh.second_moment}});
    compensators.push_back(sh.compensator.coords);
  }
  const json summary{{"replicas", sim.replicas},
                     {"master_seed", sim.master_seed},
                     {"residual", simulator.residual()},
                     {"tail_mass", simulator.tail_mass()},
                     {"total_jumps", total_jumps},
                     {"large_jumps", total_large},
                     {"shells", shells},
                     {"shell_compensators", compensators}};
  write_json(out_dir, "summary.json", summary);
  return kExitPass;
}

int run_verify(const io::RunConfig& cfg, const std::string& out_dir,
               std::size_t threads) {
  std::vector<TestReport> reports;
  if (!cfg.tests.empty()) {
    const CharTriplet& triplet = require_triplet(cfg);
    const SimConfig& sim = cfg.sim;
    auto phi_at = [&](std::size_t i) -> const TestFunction& {
      if (i >= cfg.phis.size())
        throw std::invalid_argument("verify: phi index out of range");
      return cfg.phis[i];
    };
    for (const io::TestSelector& sel : cfg.tests) {
      if (sel.test == "ecf") {
        // The negative control compares against a variance-corrupted CF.
        std::optional<CharTriplet> wrong;
        if (sel.negative_control)
          wrong.emplace(triplet.mean, triplet.cov.scaled(1.5), triplet.levy,
                        triplet.r);
        reports.push_back(ecf_test(triplet, sel.t, cfg.phis, sim, threads,
                                   wrong ? &*wrong : nullptr));
        if (sel.negative_control) reports.back().name += "(negative-control)";
      } else if (sel.test == "moments") {
        reports.push_back(moment_tests(triplet, sel.t, cfg.phis, sim, threads,
                                       sel.negative_control ? 1.5 : 1.0));
        if (sel.negative_control) reports.back().name += "(negative-control)";
      } else if (sel.test == "independence") {
        reports.push_back(independence_test(triplet, phi_at(sel.phi),
                                            phi_at(sel.psi), sim, threads,
                                            sel.negative_control));
      } else if (sel.test == "semigroup") {
        reports.push_back(semigroup_test(triplet, sel.s, sel.t, cfg.phis, sim,
                                         threads,
                                         sel.negative_control ? 0.5 : 1.0));
        if (sel.negative_control) reports.back().name += "(negative-control)";
      } else if (sel.test == "infdiv") {
        reports.push_back(infdiv_test(triplet, sel.n, cfg.phis, sim, threads,
                                      sel.negative_control));
      } else if (sel.test == "jump_count") {
        const Region region = sel.region
                                  ? sel.region->resolve(triplet.r)
                                  : Region::complement(1.0, triplet.r);
        reports.push_back(jump_count_test(triplet, region, sel.t, sim, threads,
                                          sel.negative_control ? 1.5 : 1.0));
        if (sel.negative_control) reports.back().name += "(negative-control)";
      } else if (sel.test == "fernique") {
        std::vector<unsigned> n_list = sel.n_list;
        if (n_list.empty()) n_list = {1, 2, 4, 8, 16};
        reports.push_back(fernique_check(triplet, SeminormIndex{sel.p_index},
                                         sel.eps, n_list, cfg.phis));
      } else if (sel.test == "minlos") {
        const LevyMeasure mu =
            sel.measure ? io::parse_levy_measure(*sel.measure, triplet.dim())
                        : triplet.levy;
        reports.push_back(minlos_check(mu, SeminormIndex{sel.p_index},
                                       SeminormIndex{sel.q_index}, sel.eps,
                                       triplet.dim()));
      }
    }
  }

  json arr = json::array();
  for (const TestReport& rep : reports) arr.push_back(io::to_json(rep));
  write_json(out_dir, "report.json", arr);
  for (const TestReport& rep : reports) {
    std::cout << (rep.inconclusive ? "INCONCLUSIVE" : (rep.pass ? "PASS" : "FAIL"))
              << ' ' << rep.name << " statistic=" << rep.statistic
              << " threshold=" << rep.threshold << '\n';
  }
  return summary_exit_code(reports);
}

}  // namespace seqlevy::cmd
