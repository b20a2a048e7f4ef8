// Copyright 2026 The cubeshot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cubeshot/ball_canon.hpp"
#include "cubeshot/colouring.hpp"
#include "cubeshot/errors.hpp"
#include "cubeshot/experiment.hpp"
#include "cubeshot/hypercube.hpp"
#include "cubeshot/probability.hpp"
#include "cubeshot/shotgun.hpp"
#include "cubeshot/structure.hpp"

namespace cubeshot::cli {

namespace {

constexpr const char* kFooter = R"(File formats:
  colouring   "cube <n> <q>" then 2^n colour ids in vertex-index order
  balls       "balls <n> <q> <r>" then "<count> <hex-signature>" per line
  bijection   "bij <n>" then the 2^n images in vertex-index order
  experiment  CSV "trial,seed,outcome,value", one row per trial, then
              "summary,<successes>/<trials>,<mean>,<wilson_low>;<wilson_high>"
Exit codes: 0 success, 1 negative verdict, 2 input error, 3 budget exceeded.)";

struct Options {
  int n = 0;
  std::uint32_t q = 2;
  double p = 0.5;
  int r = 2;
  std::uint64_t seed = 0;
  std::uint64_t trials = 100;
  std::string mode;
  std::string in;
  std::string out;
  std::string ref;
  std::string log;
  std::uint64_t budget = kDefaultReconstructionBudget;
  int s = 1;
  int t = 2;
};

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw DomainError("cannot open '" + path + "' for reading");
  return f;
}

// Writes to the named file, or to `fallback` when the path is empty.
template <typename Fn>
void emit(const std::string& path, std::ostream& fallback, Fn&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream f(path);
  if (!f) throw DomainError("cannot open '" + path + "' for writing");
  write(f);
  if (!f) throw DomainError("failed writing '" + path + "'");
}

ColourDistribution distribution(const Options& o, bool q_given, bool p_given) {
  if (q_given && o.q != 2) {
    if (p_given) throw DomainError("--p applies only to two colours");
    return ColourDistribution::uniform(o.q);
  }
  return ColourDistribution::two_point(o.p);
}

Colouring read_colouring_file(const std::string& path) {
  std::ifstream f = open_in(path);
  return read_colouring(f);
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::kEquivalent:
      return kOk;
    case Verdict::kInequivalent:
      return kNegative;
    case Verdict::kUnknown:
      return kBudgetError;
  }
  return kBudgetError;
}

EquivalenceMode pick_mode(const std::string& mode, int n) {
  if (mode.empty()) return n <= 8 ? EquivalenceMode::kExact : EquivalenceMode::kFingerprint;
  if (mode == "exact") return EquivalenceMode::kExact;
  if (mode == "fingerprint") return EquivalenceMode::kFingerprint;
  throw DomainError("--mode must be exact or fingerprint");
}

int cmd_gen(const Options& o, bool q_given, bool p_given, std::ostream& out) {
  const Colouring chi =
      sample_colouring(CubeDim(o.n), distribution(o, q_given, p_given), Seed{o.seed});
  emit(o.out, out, [&](std::ostream& s) { write_colouring(s, chi); });
  return kOk;
}

int cmd_balls(const Options& o, std::ostream& out) {
  const Colouring chi = read_colouring_file(o.in);
  const BallMultiset ms = extract_multiset(chi, o.r);
  emit(o.out, out, [&](std::ostream& s) { write_multiset(s, ms); });
  return kOk;
}

int cmd_reconstruct(const Options& o, bool r_given, std::ostream& out,
                    std::ostream& err) {
  std::ifstream f = open_in(o.in);
  const BallMultiset ms = read_multiset(f);
  if (r_given && ms.radius() != o.r) {
    throw DomainError("--r " + std::to_string(o.r) + " does not match the file's radius " +
                      std::to_string(ms.radius()));
  }
  ReconstructionResult res;
  if (ms.radius() == 3) {
    res = reconstruct_r3(ms, o.budget);
  } else if (ms.radius() == 2) {
    res = reconstruct_r2(ms, o.budget);
  } else {
    throw DomainError("reconstruction needs radius 2 or 3");
  }
  if (!o.log.empty()) emit(o.log, err, [&](std::ostream& s) { write_log(s, res); });
  err << "status " << to_string(res.status) << " placements "
      << res.placements_tried;
  if (!res.message.empty()) err << " (" << res.message << ")";
  err << '\n';
  if (res.colliding) {
    err << "colliding " << res.colliding->first.hex() << ' '
        << res.colliding->second.hex() << '\n';
  }
  if (res.status != ReconstructionStatus::kSuccess) {
    const bool budget = res.message.find("budget") != std::string::npos;
    return budget ? kBudgetError : kNegative;
  }
  emit(o.out, out, [&](std::ostream& s) { write_colouring(s, *res.colouring); });
  if (!o.ref.empty()) {
    const Colouring ref = read_colouring_file(o.ref);
    const EquivalenceResult v =
        verify_equivalence(ref, *res.colouring, pick_mode(o.mode, ref.dim().n()));
    err << "verdict " << to_string(v.verdict) << '\n';
    return verdict_exit(v.verdict);
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const Colouring chi = read_colouring_file(o.in);
  const Colouring lambda = read_colouring_file(o.ref);
  const EquivalenceResult v = verify_equivalence(
      chi, lambda, pick_mode(o.mode, chi.dim().n()),
      o.budget == kDefaultReconstructionBudget ? kDefaultEquivalenceBudget : o.budget);
  out << to_string(v.verdict) << '\n';
  if (!v.reason.empty()) out << "reason " << v.reason << '\n';
  if (v.witness) {
    out << "map";
    for (int c : v.witness->coordinate_map()) out << ' ' << c;
    out << "\ntranslation " << v.witness->translation() << '\n';
  }
  return verdict_exit(v.verdict);
}

int cmd_classify(const Options& o, std::ostream& out) {
  std::ifstream f = open_in(o.in);
  const BijectionTable bij = read_bijection(f);
  const ClassificationReport rep = classify(bij, o.s, o.t);
  emit(o.out, out, [&](std::ostream& s) { write_report(s, rep); });
  return kOk;
}

int cmd_harper(const Options& o, std::ostream& out) {
  if (o.n > 16) throw BudgetError("harper tables support n <= 16");
  const CubeDim dim(o.n);
  const std::vector<Vertex> order = harper_order(dim);
  emit(o.out, out, [&](std::ostream& s) {
    s << "ell closed open harper_bound last\n";
    for (std::uint64_t ell = 0; ell <= dim.order(); ++ell) {
      const VertexSet seg = harper_initial_segment(dim, ell);
      std::uint64_t closed = 0;
      std::uint64_t open = 0;
      std::optional<std::uint64_t> bound;
      if (!seg.empty()) {
        const VertexSet nb = set_neighbourhood(seg);
        const BoundaryBound b = vertex_boundary_bound(seg);
        open = b.actual;
        closed = open + seg.size();
        for (Vertex v : seg) closed -= nb.contains(v) ? 1 : 0;
        bound = b.harper_lower_bound;
      }
      s << ell << ' ' << closed << ' ' << open << ' ';
      if (bound) {
        s << *bound;
      } else {
        s << '-';
      }
      s << ' ';
      if (ell == 0) {
        s << '-';
      } else {
        s << order[ell - 1].index;
      }
      s << '\n';
    }
  });
  return kOk;
}

int cmd_experiment(const Options& o, bool q_given, bool p_given, std::ostream& out) {
  ExperimentConfig c;
  c.n = o.n;
  c.dist = distribution(o, q_given, p_given);
  c.r = o.r;
  c.trials = o.trials;
  c.seed = Seed{o.seed};
  c.statistic = o.mode.empty() ? Statistic::kAllSignaturesDistinct
                               : parse_statistic(o.mode);
  const TrialSummary summary = run_experiment(c);
  emit(o.out, out, [&](std::ostream& s) { write_csv(s, summary); });
  return kOk;
}

int cmd_count_types(const Options& o, std::ostream& out) {
  out << count_ball_types(static_cast<std::uint64_t>(o.n), o.q) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Shotgun reconstruction of hypercube colourings", "cubeshot"};
  app.footer(kFooter);
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "Sample a random colouring");
  auto* balls = app.add_subcommand("balls", "Extract the r-ball multiset of a colouring");
  auto* rec = app.add_subcommand("reconstruct", "Rebuild a colouring from a ball multiset");
  auto* ver = app.add_subcommand("verify", "Decide equivalence of two colourings");
  auto* cls = app.add_subcommand("classify", "Classify a bijection of the cube");
  auto* har = app.add_subcommand("harper", "Harper initial segments and boundary sizes");
  auto* exp = app.add_subcommand("experiment", "Run a seeded Monte Carlo experiment");
  auto* cnt = app.add_subcommand("count-types", "Count coloured 1-ball types");

  std::vector<CLI::Option*> q_opts, p_opts, r_opts;
  for (auto* sub : {gen, har, exp}) {
    sub->add_option("--n", o.n, "Cube dimension")->required()->check(CLI::Range(1, CubeDim::kMax));
  }
  cnt->add_option("--n", o.n, "Cube dimension")->required()->check(CLI::PositiveNumber);
  for (auto* sub : {gen, exp, cnt}) {
    q_opts.push_back(sub->add_option("--q", o.q, "Palette size")->check(CLI::PositiveNumber));
  }
  for (auto* sub : {gen, exp}) {
    p_opts.push_back(sub->add_option("--p", o.p, "Probability of colour 0 (two colours)"));
    sub->add_option("--seed", o.seed, "Master seed")->required();
  }
  for (auto* sub : {balls, rec, exp}) {
    r_opts.push_back(sub->add_option("--r", o.r, "Ball radius")->check(CLI::Range(1, 3)));
  }
  exp->add_option("--trials", o.trials, "Number of trials");
  exp->add_option("--mode", o.mode,
                  "Statistic: all_signatures_distinct, min_pairwise_ball_distance, "
                  "reconstruction_success, psi_event_rate");
  ver->add_option("--mode", o.mode, "exact or fingerprint (default: exact for n <= 8)");
  rec->add_option("--mode", o.mode, "Equivalence mode used with --ref");
  for (auto* sub : {balls, rec, ver, cls}) {
    sub->add_option("--in", o.in, "Input file")->required();
  }
  for (auto* sub : {gen, balls, rec, cls, har, exp}) {
    sub->add_option("--out", o.out, "Output file (default: stdout)");
  }
  rec->add_option("--ref", o.ref, "Reference colouring to verify against");
  ver->add_option("--ref", o.ref, "Second colouring")->required();
  rec->add_option("--budget", o.budget, "Search node budget");
  ver->add_option("--budget", o.budget, "Search node budget (fingerprint mode)");
  rec->add_option("--log", o.log, "Write the placement log to this file");
  cls->add_option("--s", o.s, "Slack s");
  cls->add_option("--t", o.t, "Threshold t");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kInputError;
  }

  auto any_count = [](const std::vector<CLI::Option*>& opts) {
    return std::any_of(opts.begin(), opts.end(), [](CLI::Option* x) { return x->count() > 0; });
  };
  const bool q_given = any_count(q_opts);
  const bool p_given = any_count(p_opts);
  const bool r_given = any_count(r_opts);

  try {
    if (*gen) return cmd_gen(o, q_given, p_given, out);
    if (*balls) return cmd_balls(o, out);
    if (*rec) return cmd_reconstruct(o, r_given, out, err);
    if (*ver) return cmd_verify(o, out);
    if (*cls) return cmd_classify(o, out);
    if (*har) return cmd_harper(o, out);
    if (*exp) return cmd_experiment(o, q_given, p_given, out);
    if (*cnt) return cmd_count_types(o, out);
  } catch (const BudgetError& e) {
    err << "budget: " << e.what() << '\n';
    return kBudgetError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace cubeshot::cli
